//! Graded artinian algebras in exact arithmetic: Hilbert functions, Macaulay
//! duality, the weak and strong Lefschetz properties, sl2 triples, and
//! constructions such as fiber products, connected sums and blowups.

pub mod error;
pub mod exactmath;
pub mod poly;
pub mod algebra;
pub mod lefschetz;
pub mod sl2;
pub mod constructions;

pub use error::{Error, Result};
