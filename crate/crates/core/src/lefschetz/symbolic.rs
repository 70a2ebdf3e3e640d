use std::collections::HashMap;

use crate::exactmath::{Echelon, SparseVec};
use crate::poly::{Monomial, Poly, PolyMatrix};

use super::operators::LinearActions;

/// Total term budget for fraction-free elimination over the coefficient ring.
pub const ELIMINATION_TERM_BUDGET: usize = 2_000_000;
/// Largest number of unknowns in a kernel-vector search.
pub const KERNEL_UNKNOWN_BUDGET: usize = 6_000;
pub const KERNEL_MAX_DEGREE: u32 = 4;

/// Outcome of a rank computation over the field of rational functions in the
/// coefficients of a general linear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolicRank {
    /// The exact generic rank.
    Exact(usize, String),
    /// The map is certified not to reach its expected rank.
    Deficient(String),
    /// Neither method finished inside its budget.
    Unknown,
}

/// Generic rank of `L^d : A_i -> A_{i+d}` compared with `expected`.
pub fn generic_rank(actions: &LinearActions, i: usize, d: usize, expected: usize) -> SymbolicRank {
    let m = actions.symbolic_power(i, d);
    if expected == 0 {
        return SymbolicRank::Exact(0, "trivial".into());
    }
    for k in 0..=1 {
        if let Some(method) = kernel_certificate(&m, expected, k) {
            return SymbolicRank::Deficient(method);
        }
    }
    let reduced = if m.nvars() > 1 { m.dehomogenize(0) } else { m.clone() };
    if let Some(r) = reduced.rank_within(ELIMINATION_TERM_BUDGET) {
        return SymbolicRank::Exact(r, "fraction-free elimination".into());
    }
    for k in 2..=KERNEL_MAX_DEGREE {
        if let Some(method) = kernel_certificate(&m, expected, k) {
            return SymbolicRank::Deficient(method);
        }
    }
    SymbolicRank::Unknown
}

/// Searches for a nonzero vector of degree `k` homogeneous polynomials in the
/// kernel of `m` (or of its transpose when `expected` is the row count). Such a
/// vector shows the rank over the rational function field is below `expected`.
pub fn kernel_certificate(m: &PolyMatrix, expected: usize, k: u32) -> Option<String> {
    let m = if expected == m.cols() {
        m.clone()
    } else if expected == m.rows() {
        m.transpose()
    } else {
        return None;
    };
    let v = polynomial_kernel_vector(&m, k)?;
    let n = m.nvars();
    let field = m.field();
    let zero = (0..m.rows()).all(|r| {
        (0..m.cols())
            .fold(Poly::zero(n, field), |acc, c| acc.add(&m.get(r, c).mul(&v[c])))
            .is_zero()
    });
    assert!(zero, "kernel vector must annihilate the matrix");
    Some(format!("polynomial kernel vector of degree {k}"))
}

/// A nonzero `v` with `m v = 0` whose entries are homogeneous of degree `k`,
/// assuming the entries of `m` are homogeneous of a common degree.
pub fn polynomial_kernel_vector(m: &PolyMatrix, k: u32) -> Option<Vec<Poly>> {
    let n = m.nvars();
    let field = m.field();
    let basis = homogeneous_monomials(n, k);
    let unknowns = m.cols() * basis.len();
    if unknowns == 0 || unknowns > KERNEL_UNKNOWN_BUDGET {
        return None;
    }
    // Equation (row r, monomial mu): sum_{c, beta} coeff_{m[r][c]}(mu / beta) v[c][beta] = 0.
    let mut eq_index: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut equations: Vec<SparseVec> = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            for (mono, coef) in m.get(r, c).terms() {
                for (b, beta) in basis.iter().enumerate() {
                    let key = (r, mono.mul(beta));
                    let e = *eq_index.entry(key).or_insert_with(|| {
                        equations.push(Vec::new());
                        equations.len() - 1
                    });
                    equations[e].push((c * basis.len() + b, coef.clone()));
                }
            }
        }
    }
    let mut ech = Echelon::new(field, unknowns);
    for mut eq in equations {
        eq.sort_by_key(|(c, _)| *c);
        let merged = merge(eq);
        ech.insert(&merged);
        if ech.rank() == unknowns {
            return None;
        }
    }
    let free = *ech.non_pivots().first()?;
    let mut coords = vec![field.zero(); unknowns];
    coords[free] = field.one();
    for p in ech.pivots() {
        let row = ech.row_for_pivot(p).expect("pivot row");
        if let Some((_, x)) = row.iter().find(|(c, _)| *c == free) {
            coords[p] = -x;
        }
    }
    Some(
        (0..m.cols())
            .map(|c| {
                Poly::from_terms(
                    n,
                    field,
                    basis
                        .iter()
                        .enumerate()
                        .map(|(b, beta)| (beta.clone(), coords[c * basis.len() + b].clone())),
                )
            })
            .collect(),
    )
}

fn merge(v: SparseVec) -> SparseVec {
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx += &x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

fn homogeneous_monomials(n: usize, k: u32) -> Vec<Monomial> {
    crate::poly::monomial_basis(n, k)
}
