use crate::error::{Error, Result};
use crate::poly::{count_combinations, gcd_all, lcm, squarefree_part, Poly};

use super::check::planned_maps;
use super::operators::LinearActions;
use super::report::Mode;

/// Largest number of minors computed for one map.
pub const MAX_MINORS: u128 = 50_000;
/// Default bound on dim A for locus computations.
pub const NLL_DIM_GUARD: usize = 60;

/// Where `L^d : A_i -> A_{i+d}` drops rank: the common zeros of its
/// `expected x expected` minors, written as `gcd * residual`.
#[derive(Clone, Debug, PartialEq)]
pub struct MapLocus {
    pub i: usize,
    pub d: usize,
    pub expected: usize,
    /// Monic gcd of the minors; zero when every minor vanishes identically.
    pub gcd: Poly,
    /// Nonzero minors divided by the gcd.
    pub residual: Vec<Poly>,
}

/// Non-Lefschetz locus in the coefficients of L.
#[derive(Clone, Debug, PartialEq)]
pub struct NllConditions {
    pub maps: Vec<MapLocus>,
    /// Squarefree polynomial whose zero set is the codimension-one part.
    /// The zero polynomial means every L fails.
    pub hypersurface: Poly,
    /// Residual ideals not contained in the hypersurface.
    pub extra: Vec<Vec<Poly>>,
}

impl NllConditions {
    pub fn everything_fails(&self) -> bool {
        self.hypersurface.is_zero()
    }
}

/// `Mode::Wlp` gives the weak locus, any other mode the strong one.
pub fn nll_conditions(actions: &LinearActions, mode: Mode, dim_guard: usize) -> Result<NllConditions> {
    let h = actions.hilbert_function().to_vec();
    let dim: usize = h.iter().sum();
    if dim > dim_guard {
        return Err(Error::TooLarge(format!("dim A = {dim} exceeds {dim_guard}")));
    }
    let n = actions.nparams();
    let field = actions.field();
    let mode = if mode == Mode::Wlp { Mode::Wlp } else { Mode::Slp };
    let mut maps = Vec::new();
    for (i, d, expected, _) in planned_maps(mode, &h) {
        if expected == 0 {
            continue;
        }
        let (rows, cols) = (h[i + d], h[i]);
        let count = count_combinations(rows, expected).saturating_mul(count_combinations(cols, expected));
        if count > MAX_MINORS {
            return Err(Error::TooLarge(format!("{count} minors for L^{d} on degree {i}")));
        }
        let m = actions.symbolic_power(i, d);
        let minors: Vec<Poly> = m
            .minors(expected)
            .into_iter()
            .map(|(_, _, p)| p)
            .filter(|p| !p.is_zero())
            .collect();
        let (gcd, residual) = match gcd_all(&minors) {
            None => (Poly::zero(n, field), Vec::new()),
            Some(g) => {
                let mut res: Vec<Poly> = minors
                    .iter()
                    .map(|p| p.div_exact(&g).expect("gcd divides").monic())
                    .collect();
                res.sort_by(|a, b| {
                    let key = |p: &Poly| p.terms().iter().map(|t| t.0.clone()).collect::<Vec<_>>();
                    a.len().cmp(&b.len()).then_with(|| key(a).cmp(&key(b)))
                });
                res.dedup();
                (g, res)
            }
        };
        maps.push(MapLocus { i, d, expected, gcd, residual });
    }
    let mut hyper = Poly::one(n, field);
    for m in &maps {
        hyper = if m.gcd.is_zero() || hyper.is_zero() {
            Poly::zero(n, field)
        } else {
            lcm(&hyper, &m.gcd)
        };
    }
    let hypersurface = if hyper.is_zero() { hyper } else { squarefree_part(&hyper).monic() };
    let extra = if hypersurface.is_zero() {
        Vec::new()
    } else {
        let mut extra: Vec<Vec<Poly>> = Vec::new();
        for m in &maps {
            if m.residual.iter().any(Poly::is_constant) {
                continue;
            }
            if absorbed(&m.residual, &hypersurface) {
                continue;
            }
            if !extra.contains(&m.residual) {
                extra.push(m.residual.clone());
            }
        }
        extra
    };
    Ok(NllConditions { maps, hypersurface, extra })
}

/// Sufficient test for V(J) inside V(h): some generator of J divides h, or J
/// contains a power of every variable (so V(J) is the origin, which lies on
/// every homogeneous nonconstant hypersurface).
fn absorbed(generators: &[Poly], h: &Poly) -> bool {
    if generators.iter().any(|g| h.div_exact(g).is_some()) {
        return true;
    }
    let n = h.nvars();
    !h.is_constant()
        && (0..n).all(|j| {
            generators.iter().any(|g| {
                g.terms().len() == 1
                    && g.terms()[0]
                        .0
                        .exps()
                        .iter()
                        .enumerate()
                        .all(|(k, &e)| (k == j) == (e > 0))
            })
        })
}
