use crate::algebra::{GradedAlgebra, GradedStructure, Ideal};
use crate::error::Result;
use crate::exactmath::Scalar;

use super::pair::joined_ring;

/// `A ⊗_F B` on the disjoint union of the variables (clashing names of B get
/// a numeric suffix), with ideal `I_A + I_B`. The variables of A come first.
pub fn tensor_product(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    let (ring, ea, eb) = joined_ring(a.ring(), b.ring())?;
    let n = ring.nvars();
    let mut gens: Vec<_> = a.minimal_generators().iter().map(|g| g.embed(n, &ea)).collect();
    gens.extend(b.minimal_generators().iter().map(|g| g.embed(n, &eb)));
    GradedAlgebra::from_ideal(&Ideal::new(&ring, gens)?, Some(a.socle_degree() + b.socle_degree()))
}

/// Coordinates of `L ⊗ 1 + 1 ⊗ L'` in degree one of `tensor_product(a, b)`.
pub fn tensor_linear_form(
    product: &GradedAlgebra,
    a: &GradedAlgebra,
    la: &[Scalar],
    b: &GradedAlgebra,
    lb: &[Scalar],
) -> Result<Vec<Scalar>> {
    let n = product.ring().nvars();
    let na = a.ring().nvars();
    let ea: Vec<usize> = (0..na).collect();
    let eb: Vec<usize> = (na..n).collect();
    let l = a.element(1, la).embed(n, &ea).add(&b.element(1, lb).embed(n, &eb));
    product.coordinates(1, &l)
}

/// `Σ_i h_A(i) h_B(k - i)`.
pub fn convolve(ha: &[usize], hb: &[usize]) -> Vec<usize> {
    let mut out = vec![0; ha.len() + hb.len() - 1];
    for (i, x) in ha.iter().enumerate() {
        for (j, y) in hb.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
