//! sl2 triples, weight spaces, and the weight-grading test for the narrow
//! strong Lefschetz property.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::GradedStructure;
use crate::error::{Error, Result};
use crate::exactmath::{FieldSpec, Matrix, Scalar};
use crate::lefschetz::{jordan_basis, slpn_for_element, LinearActions};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sl2Triple {
    pub e: Matrix,
    pub h: Matrix,
    pub f: Matrix,
}

fn bracket(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

fn require_char_zero(field: FieldSpec) -> Result<()> {
    if field.characteristic() != 0 {
        return Err(Error::Characteristic {
            characteristic: field.characteristic(),
            reason: "sl2 triples are built in characteristic zero".into(),
        });
    }
    Ok(())
}

/// `[E,F] = H`, `[H,E] = 2E`, `[H,F] = -2F`, checked exactly.
pub fn verify_triple(t: &Sl2Triple) -> Result<bool> {
    let n = t.e.rows();
    for m in [&t.e, &t.h, &t.f] {
        if m.rows() != n || m.cols() != n {
            return Err(Error::Dimension("triple matrices must be square of one size".into()));
        }
    }
    let field = t.e.field();
    let two = field.from_i64(2);
    Ok(bracket(&t.e, &t.f)? == t.h
        && bracket(&t.h, &t.e)? == t.e.scale(&two)
        && bracket(&t.h, &t.f)? == t.f.scale(&-&two))
}

/// `E = x d/dy`, `H = x d/dx - y d/dy`, `F = y d/dx` on binary forms of degree d,
/// in the basis `y^d, x y^{d-1}, ..., x^d`.
pub fn model_rep(d: usize) -> Sl2Triple {
    let q = FieldSpec::RATIONALS;
    let n = d + 1;
    let mut e = Matrix::zeros(q, n, n);
    let mut h = Matrix::zeros(q, n, n);
    let mut f = Matrix::zeros(q, n, n);
    // Basis index a holds x^a y^{d-a}.
    for a in 0..n {
        let b = d - a;
        h.set(a, a, q.from_i64(a as i64 - b as i64));
        if b > 0 {
            e.set(a + 1, a, q.from_i64(b as i64));
        }
        if a > 0 {
            f.set(a - 1, a, q.from_i64(a as i64));
        }
    }
    Sl2Triple { e, h, f }
}

/// Offsets of each degree inside the concatenated basis of A.
fn offsets(h: &[usize]) -> Vec<usize> {
    h.iter()
        .scan(0, |acc, &x| {
            let o = *acc;
            *acc += x;
            Some(o)
        })
        .collect()
}

/// x L on all of A, blockwise from degree i to i + 1.
pub fn multiplication_operator(actions: &LinearActions, coeffs: &[Scalar]) -> Matrix {
    let h = actions.hilbert_function();
    let off = offsets(h);
    let dim: usize = h.iter().sum();
    let mut e = Matrix::zeros(actions.field(), dim, dim);
    for i in 0..actions.top() {
        let op = actions.operator(coeffs, i);
        for r in 0..op.rows() {
            for c in 0..op.cols() {
                e.set(off[i + 1] + r, off[i] + c, op.get(r, c).clone());
            }
        }
    }
    e
}

/// A triple with E = x L built from a graded Jordan basis of L, for any L.
/// Along a strand v_0, ..., v_d: `H v_i = (2i - d) v_i`, `F v_i = i(d - i + 1) v_{i-1}`.
pub fn triple_for_element(actions: &LinearActions, coeffs: &[Scalar]) -> Result<Sl2Triple> {
    let field = actions.field();
    require_char_zero(field)?;
    let h = actions.hilbert_function();
    let off = offsets(h);
    let dim: usize = h.iter().sum();
    let strands = jordan_basis(actions, coeffs);
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(dim);
    let mut hd = Matrix::zeros(field, dim, dim);
    let mut fd = Matrix::zeros(field, dim, dim);
    for s in &strands {
        let d = s.shape.length - 1;
        let base = columns.len();
        for (i, v) in s.vectors.iter().enumerate() {
            let deg = s.shape.start + i;
            let mut col = vec![field.zero(); dim];
            for (k, x) in v.iter().enumerate() {
                col[off[deg] + k] = x.clone();
            }
            columns.push(col);
            hd.set(base + i, base + i, field.from_i64(2 * i as i64 - d as i64));
            if i > 0 {
                fd.set(base + i - 1, base + i, field.from_i64((i * (d - i + 1)) as i64));
            }
        }
    }
    let p = Matrix::from_columns(field, dim, &columns);
    let pinv = p
        .inverse()
        .ok_or_else(|| Error::Invalid("strand vectors do not form a basis".into()))?;
    let conj = |m: &Matrix| p.mul(m).and_then(|x| x.mul(&pinv));
    Ok(Sl2Triple {
        e: multiplication_operator(actions, coeffs),
        h: conj(&hd)?,
        f: conj(&fd)?,
    })
}

/// The triple of a narrow strong Lefschetz element; refuses any other L.
pub fn triple_from_lefschetz<A: GradedStructure + ?Sized>(a: &A, coeffs: &[Scalar]) -> Result<Sl2Triple> {
    require_char_zero(a.field())?;
    if !slpn_for_element(a, coeffs).holds() {
        return Err(Error::Invalid("the form is not a narrow strong Lefschetz element".into()));
    }
    triple_for_element(&LinearActions::new(a), coeffs)
}

/// Eigenspaces of H, for H diagonalizable with integer spectrum in [-n, n].
pub type WeightDecomposition = BTreeMap<i64, Vec<Vec<Scalar>>>;

pub fn weight_decomposition(h: &Matrix) -> Result<WeightDecomposition> {
    let n = h.rows();
    let field = h.field();
    let mut out = BTreeMap::new();
    let mut total = 0;
    for w in -(n as i64)..=(n as i64) {
        let shifted = h.sub(&Matrix::identity(field, n).scale(&field.from_i64(w)))?;
        let k = shifted.kernel_basis();
        if !k.is_empty() {
            total += k.len();
            out.insert(w, k);
        }
    }
    if total != n {
        return Err(Error::Invalid("eigenspaces of H do not span".into()));
    }
    Ok(out)
}

/// Weight multiset, ascending.
pub fn weights(decomposition: &WeightDecomposition) -> Vec<i64> {
    decomposition
        .iter()
        .flat_map(|(w, b)| std::iter::repeat(*w).take(b.len()))
        .collect()
}

/// Dimensions of irreducibles, by repeatedly removing the string m, m-2, ..., -m
/// below the largest remaining weight m. Largest first.
pub fn irreducible_decomposition(weights: &[i64]) -> Result<Vec<usize>> {
    let mut count: BTreeMap<i64, usize> = BTreeMap::new();
    for &w in weights {
        *count.entry(w).or_default() += 1;
    }
    let mut dims = Vec::new();
    while let Some((&m, _)) = count.iter().next_back() {
        if m < 0 {
            return Err(Error::Invalid("weights are not symmetric about zero".into()));
        }
        let mut w = m;
        while w >= -m {
            match count.get_mut(&w) {
                Some(c) if *c > 0 => {
                    *c -= 1;
                    if *c == 0 {
                        count.remove(&w);
                    }
                }
                _ => return Err(Error::Invalid(format!("weight {w} missing from the string of {m}"))),
            }
            w -= 2;
        }
        dims.push(m as usize + 1);
    }
    Ok(dims)
}

/// Whether the weight spaces of the triple built from L are the graded pieces,
/// `W_{2i-c} = A_i`.
pub fn slpn_via_weights<A: GradedStructure + ?Sized>(a: &A, coeffs: &[Scalar]) -> Result<bool> {
    let actions = LinearActions::new(a);
    let triple = triple_for_element(&actions, coeffs)?;
    let h = actions.hilbert_function();
    let c = (h.len() - 1) as i64;
    let decomposition = weight_decomposition(&triple.h)?;
    let off = offsets(h);
    let field = a.field();
    for (i, &hi) in h.iter().enumerate() {
        let w = 2 * i as i64 - c;
        let space = decomposition.get(&w).map_or(0, Vec::len);
        if space != hi {
            return Ok(false);
        }
        for k in 0..hi {
            let mut v = vec![field.zero(); triple.h.rows()];
            v[off[i] + k] = field.one();
            let hv = triple.h.mul_vec(&v)?;
            let scaled: Vec<Scalar> = v.iter().map(|x| x * &field.from_i64(w)).collect();
            if hv != scaled {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
