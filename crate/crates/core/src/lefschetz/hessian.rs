use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{GradedAlgebra, GradedStructure, Ring};
use crate::error::{Error, Result};
use crate::exactmath::Scalar;
use crate::poly::{differentiate, DualPoly, Poly, PolyMatrix};

use super::check::GenericityConfig;

/// Hessians up to this size are expanded symbolically.
pub const SYMBOLIC_HESSIAN_MAX: usize = 10;
/// Random evaluations used above that size.
pub const HESSIAN_EVALUATIONS: usize = 8;

fn require_char_zero(ring: &Ring) -> Result<()> {
    let p = ring.field().characteristic();
    if p != 0 {
        return Err(Error::Characteristic {
            characteristic: p,
            reason: "higher Hessians are defined in characteristic zero".into(),
        });
    }
    Ok(())
}

/// `[b_j b_k ∘ F]` for a list of forms `b`, with F read as an ordinary polynomial.
pub fn hessian_matrix_in_basis(ring: &Ring, f: &DualPoly, basis: &[Poly]) -> Result<PolyMatrix> {
    require_char_zero(ring)?;
    let ord = f.to_ordinary()?;
    let n = ring.nvars();
    let mut m = PolyMatrix::zeros(n, ring.field(), basis.len(), basis.len());
    for j in 0..basis.len() {
        for k in j..basis.len() {
            let e = differentiate(&basis[j].mul(&basis[k]), &ord)?;
            m.set(j, k, e.clone());
            m.set(k, j, e);
        }
    }
    Ok(m)
}

/// The i-th Hessian matrix over the standard monomial basis of A_i, A = Ann(F).
pub fn hessian_matrix(ring: &Ring, f: &DualPoly, i: usize) -> Result<PolyMatrix> {
    require_char_zero(ring)?;
    let a = GradedAlgebra::from_dual_generator(ring, f)?;
    hessian_matrix_for(&a, f, i)
}

fn hessian_matrix_for(a: &GradedAlgebra, f: &DualPoly, i: usize) -> Result<PolyMatrix> {
    let basis: Vec<Poly> = a.basis(i).iter().map(|m| a.ring().monomial_poly(m)).collect();
    hessian_matrix_in_basis(a.ring(), f, &basis)
}

/// `hess^i(F)`, expanded exactly.
pub fn hessian_det(ring: &Ring, f: &DualPoly, i: usize) -> Result<Poly> {
    Ok(hessian_matrix(ring, f, i)?.det())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VanishingTest {
    Symbolic,
    /// Declared zero after `evaluations` zero values; the chance that a
    /// nonzero determinant evaluates to zero every time is at most `failure_bound`.
    Evaluated { evaluations: usize, failure_bound: f64 },
    /// A nonzero value at a concrete point proves nonvanishing.
    Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HessianDegree {
    pub i: usize,
    pub size: usize,
    pub vanishes: bool,
    pub test: VanishingTest,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HessianReport {
    pub socle_degree: usize,
    pub degrees: Vec<HessianDegree>,
    pub slp: bool,
}

/// SLP of Ann(F) via nonvanishing of hess^i(F) for 0 <= i <= c/2.
pub fn slp_by_hessian(ring: &Ring, f: &DualPoly, cfg: &GenericityConfig) -> Result<HessianReport> {
    require_char_zero(ring)?;
    let a = GradedAlgebra::from_dual_generator(ring, f)?;
    let c = a.socle_degree();
    let field = ring.field();
    let mut degrees = Vec::new();
    for i in 0..=c / 2 {
        let m = hessian_matrix_for(&a, f, i)?;
        let size = m.rows();
        let entry = if size <= SYMBOLIC_HESSIAN_MAX {
            HessianDegree {
                i,
                size,
                vanishes: m.det().is_zero(),
                test: VanishingTest::Symbolic,
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let mut nonzero = false;
            for _ in 0..HESSIAN_EVALUATIONS {
                let point: Vec<Scalar> = (0..ring.nvars())
                    .map(|_| field.from_i64(rng.gen_range(1..=cfg.bound) as i64))
                    .collect();
                if !m.evaluate(&point).det()?.is_zero() {
                    nonzero = true;
                    break;
                }
            }
            let degree = (size * (c - 2 * i)) as f64;
            HessianDegree {
                i,
                size,
                vanishes: !nonzero,
                test: if nonzero {
                    VanishingTest::Witness
                } else {
                    VanishingTest::Evaluated {
                        evaluations: HESSIAN_EVALUATIONS,
                        failure_bound: (degree / cfg.bound as f64).powi(HESSIAN_EVALUATIONS as i32),
                    }
                },
            }
        };
        degrees.push(entry);
    }
    let slp = degrees.iter().all(|d| !d.vanishes);
    Ok(HessianReport {
        socle_degree: c,
        degrees,
        slp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::FieldSpec;
    use crate::lefschetz::{check_element, Mode};

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names, FieldSpec::RATIONALS).unwrap()
    }

    #[test]
    fn sum_of_squares() {
        let r = ring(&["x", "y", "z"]);
        let f = r.parse_dual("X^2 + Y^2 + Z^2").unwrap();
        assert_eq!(hessian_det(&r, &f, 1).unwrap(), r.constant(FieldSpec::RATIONALS.from_i64(8)));
        assert_eq!(hessian_det(&r, &f, 0).unwrap(), f.to_ordinary().unwrap());
    }

    #[test]
    fn positive_characteristic_is_rejected() {
        let r = Ring::new(&["x"], FieldSpec::prime(5).unwrap()).unwrap();
        let f = r.parse_dual("X^[2]").unwrap();
        assert!(matches!(hessian_det(&r, &f, 0), Err(Error::Characteristic { .. })));
    }

    #[test]
    fn ikeda_second_hessian_vanishes() {
        let r = ring(&["x", "y", "z", "w"]);
        let g = r.parse_dual("X*Y*W^3 + X^3*Z*W + Y^3*Z^2").unwrap();
        assert!(hessian_det(&r, &g, 2).unwrap().is_zero());
        let rep = slp_by_hessian(&r, &g, &GenericityConfig::default()).unwrap();
        assert!(!rep.slp);
        assert_eq!(rep.degrees.iter().filter(|d| d.vanishes).map(|d| d.i).collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn hessian_value_matches_rank_of_the_middle_map() {
        // For Ann(F) and a concrete L = (a), x L^{c-2i}: A_i -> A_{c-i} is
        // bijective iff hess^i(F)(a) != 0.
        let q = FieldSpec::RATIONALS;
        let r = ring(&["x", "y", "z"]);
        for text in ["X^3*Y + Z^4", "X^2*Y^2 + X*Z^3", "X*Y*Z^2"] {
            let f = r.parse_dual(text).unwrap();
            let a = GradedAlgebra::from_dual_generator(&r, &f).unwrap();
            let c = a.socle_degree();
            for point in [[1, 1, 1], [1, 0, 2], [0, 1, 0], [2, -1, 1]] {
                let pt: Vec<Scalar> = point.iter().map(|&x| q.from_i64(x)).collect();
                let l = Poly::linear(q, &pt);
                let coeffs = a.coordinates(1, &l).unwrap();
                let rep = check_element(&a, Mode::Slpn, &coeffs);
                for i in (0..=c / 2).filter(|&i| 2 * i < c) {
                    let h = hessian_det(&r, &f, i).unwrap();
                    let full = rep.maps.iter().find(|m| m.i == i).unwrap().full;
                    assert_eq!(!h.evaluate(&pt).is_zero(), full, "{text} at {point:?}, i = {i}");
                }
            }
        }
    }
}
