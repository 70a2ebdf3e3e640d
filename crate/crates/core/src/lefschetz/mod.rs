//! Weak, strong and narrow strong Lefschetz properties, Jordan types,
//! non-Lefschetz loci and higher Hessians.

mod check;
mod hessian;
mod jordan;
mod nll;
mod operators;
mod report;
mod sequences;
mod symbolic;

pub use check::{
    check_element, check_element_with, check_generic, check_generic_with, planned_maps, ranks_for,
    slp_for_element, slp_generic, slpn_for_element, slpn_generic, wlp_for_element, wlp_generic,
    GenericityConfig, ESCALATE_MAX_DIM, ESCALATE_MAX_LINEAR,
};
pub use hessian::{
    hessian_det, hessian_matrix, hessian_matrix_in_basis, slp_by_hessian, HessianDegree,
    HessianReport, VanishingTest, HESSIAN_EVALUATIONS, SYMBOLIC_HESSIAN_MAX,
};
pub use jordan::{
    conjugate, is_graded_basis, jordan_basis, jordan_type, jordan_type_with, JordanType, Strand,
    StrandShape,
};
pub use nll::{nll_conditions, MapLocus, NllConditions, MAX_MINORS, NLL_DIM_GUARD};
pub use operators::LinearActions;
pub use report::{Certification, LefschetzReport, MapRecord, Mode, Verdict};
pub use sequences::{h_vector, symmetric, unimodal};
#[cfg(test)]
mod tests;

pub use symbolic::{
    generic_rank, kernel_certificate, polynomial_kernel_vector, SymbolicRank,
    ELIMINATION_TERM_BUDGET, KERNEL_MAX_DEGREE, KERNEL_UNKNOWN_BUDGET,
};
