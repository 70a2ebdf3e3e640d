//! New algebras from old: tensor products, fiber products, connected sums
//! and cohomological blowups, with the maps and Thom classes they need.

mod blowup;
mod maps;
mod pair;
mod preservation;
mod tensor;

pub use blowup::{blowup, exceptional_divisor, thom_multiple, BlowupAlgebra};
pub use maps::{field_algebra, homomorphism_matrices, thom_class, thom_class_by_contraction, AlgebraMap, ThomClass};
pub use pair::{
    connected_sum, connected_sum_over_field, fiber_product, fiber_product_over_field, pairings_correspond,
    ConnectedSum, PairAlgebra, PrincipalQuotient,
};
pub use preservation::{lefschetz_preservation_report, Hypothesis, ObservedVerdict, PreservationReport, Theorem};
pub use tensor::{convolve, tensor_linear_form, tensor_product};
