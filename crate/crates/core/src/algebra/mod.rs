//! Graded artinian quotients of polynomial rings, their socles and
//! orientations, and Macaulay duality.

mod description;
mod graded;
mod ideal;
mod ring;
mod structure;

pub use description::{parse_field, AlgebraDescription, Presentation};
pub use graded::GradedAlgebra;
pub use ideal::{ideal_degree_piece, Ideal};
pub use ring::Ring;
pub use structure::{GradedStructure, Homogeneous, Orientation};
