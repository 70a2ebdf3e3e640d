//! Incrementally built reduced row echelon form over sparse rows.
//!
//! Ideal pieces I_d have large ambient dimension but small codimension, so
//! fully reduced rows carry only the pivot plus a few non-pivot entries.

use std::collections::BTreeMap;

use super::matrix::Matrix;
use super::scalar::{FieldSpec, Scalar};

pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: FieldSpec, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.is_pivot(c)).collect()
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// The reduced row whose pivot is `col`.
    pub fn row_for_pivot(&self, col: usize) -> Option<&SparseVec> {
        self.pivot_row[col].map(|r| &self.rows[r])
    }

    /// Remainder of `v` modulo the row space; supported on non-pivot columns only.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, x) in v {
            if x.is_zero() {
                continue;
            }
            match self.pivot_row[*c] {
                Some(r) => {
                    for (c2, y) in &self.rows[r][1..] {
                        let e = acc.entry(*c2).or_insert_with(|| self.field.zero());
                        *e -= &(x * y);
                    }
                }
                None => {
                    let e = acc.entry(*c).or_insert_with(|| self.field.zero());
                    *e += x;
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let red = self.reduce(v);
        let Some((pivot, lead)) = red.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero lead");
        let new_row: SparseVec = red.into_iter().map(|(c, x)| (c, &x * &inv)).collect();
        for row in self.rows.iter_mut() {
            if let Ok(pos) = row.binary_search_by_key(&pivot, |(c, _)| *c) {
                let coef = row[pos].1.clone();
                *row = axpy(row, &(-&coef), &new_row);
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(new_row);
        true
    }

    /// Rows ordered by pivot column.
    pub fn sorted_rows(&self) -> Vec<&SparseVec> {
        (0..self.ncols)
            .filter_map(|c| self.row_for_pivot(c))
            .collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        let rows = self
            .sorted_rows()
            .into_iter()
            .map(|r| densify(self.field, self.ncols, r))
            .collect();
        Matrix::from_rows(self.field, self.ncols, rows)
    }
}

/// `a + c*b` for sorted sparse vectors.
pub fn axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn densify(field: FieldSpec, n: usize, v: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); n];
    for (c, x) in v {
        out[*c] = x.clone();
    }
    out
}

pub fn sparsify(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (c, x.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_dense_rref(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 1..8)) {
            let q = FieldSpec::RATIONALS;
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let dense = Matrix::from_i64(q, &refs);
            let mut e = Echelon::new(q, 6);
            for i in 0..dense.rows() {
                e.insert(&sparsify(dense.row(i)));
            }
            let (r, piv) = dense.rref();
            prop_assert_eq!(e.pivots(), piv.clone());
            prop_assert_eq!(e.to_matrix(), r.select_rows(&(0..piv.len()).collect::<Vec<_>>()));
        }
    }
}
