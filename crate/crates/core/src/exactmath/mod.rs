//! Exact scalar arithmetic and linear algebra over ℚ and 𝔽p.

mod echelon;
mod matrix;
mod scalar;

pub use echelon::{axpy, densify, sparsify, Echelon, SparseVec};
pub use matrix::Matrix;
pub use scalar::{binomial, FieldSpec, Scalar, MAX_MODULUS};
