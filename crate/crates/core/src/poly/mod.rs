//! Polynomials, divided-power dual polynomials, and text input/output.

mod dual;
mod gcd;
mod monomial;
mod parse;
mod polymatrix;
mod polynomial;

pub use dual::{
    contract, differentiate, divided_multiply, eval_linear_power, monomial_factorial, DualPoly,
};
pub use gcd::{gcd, gcd_all, lcm, squarefree_part};
pub use monomial::{monomial_basis, weighted_monomial_basis, Monomial};
pub use parse::{dual_names, format_dual, format_poly, infer_variables, parse_dual, parse_poly};
pub use polymatrix::{combinations, count_combinations, PolyMatrix};
pub use polynomial::Poly;
