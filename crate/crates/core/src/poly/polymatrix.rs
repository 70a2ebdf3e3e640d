//! Matrices with polynomial entries, used for symbolic ranks, minors and
//! Hessians.

use crate::exactmath::{FieldSpec, Matrix, Scalar};

use super::polynomial::Poly;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    field: FieldSpec,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(nvars: usize, field: FieldSpec, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            field,
            data: vec![Poly::zero(nvars, field); rows * cols],
        }
    }

    pub fn from_fn(
        nvars: usize,
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Poly,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix {
            rows,
            cols,
            nvars,
            field,
            data,
        }
    }

    /// The pencil `sum_j a_j * mats[j]` with the `a_j` as polynomial variables.
    pub fn linear_pencil(mats: &[Matrix]) -> Self {
        let n = mats.len();
        let field = mats[0].field();
        let (r, c) = (mats[0].rows(), mats[0].cols());
        Self::from_fn(n, field, r, c, |i, j| {
            let coeffs: Vec<Scalar> = mats.iter().map(|m| m.get(i, j).clone()).collect();
            Poly::linear(field, &coeffs)
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn transpose(&self) -> PolyMatrix {
        Self::from_fn(self.nvars, self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.nvars, self.field, self.rows, other.cols, |i, j| {
            let mut acc = Poly::zero(self.nvars, self.field);
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Matrix {
        let rows = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).evaluate(point)).collect())
            .collect();
        Matrix::from_rows(self.field, self.cols, rows)
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        Self::from_fn(self.nvars, self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Fraction-free elimination. Returns the rank over the fraction field and
    /// the last pivot (the determinant up to sign when square of full rank).
    fn bareiss(&self) -> (usize, Poly, bool) {
        self.bareiss_within(usize::MAX).expect("unbounded")
    }

    /// As `bareiss`, giving up once the entries hold more than `max_terms` terms in total.
    fn bareiss_within(&self, max_terms: usize) -> Option<(usize, Poly, bool)> {
        let mut a = self.data.clone();
        let (m, n) = (self.rows, self.cols);
        let mut prev = Poly::one(self.nvars, self.field);
        let mut rank = 0;
        let mut negate = false;
        let mut col = 0;
        while rank < m && col < n {
            let pick = (rank..m)
                .filter(|&i| !a[i * n + col].is_zero())
                .min_by_key(|&i| a[i * n + col].len());
            let Some(p) = pick else {
                col += 1;
                continue;
            };
            if p != rank {
                for j in 0..n {
                    a.swap(p * n + j, rank * n + j);
                }
                negate = !negate;
            }
            let piv = a[rank * n + col].clone();
            for i in rank + 1..m {
                let lead = a[i * n + col].clone();
                for j in col + 1..n {
                    let x = a[i * n + j].mul(&piv);
                    let y = if lead.is_zero() {
                        Poly::zero(self.nvars, self.field)
                    } else {
                        lead.mul(&a[rank * n + j])
                    };
                    a[i * n + j] = x.sub(&y).div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i * n + col] = Poly::zero(self.nvars, self.field);
            }
            prev = piv;
            rank += 1;
            col += 1;
            if max_terms != usize::MAX {
                let total: usize = a.iter().map(Poly::len).sum();
                if total > max_terms {
                    return None;
                }
            }
        }
        Some((rank, prev, negate))
    }

    /// Rank over the field of rational functions, or `None` past the term budget.
    pub fn rank_within(&self, max_terms: usize) -> Option<usize> {
        self.bareiss_within(max_terms).map(|r| r.0)
    }

    /// Substitutes 1 for variable `var` and drops it. Exact for rank tests on
    /// matrices whose minors are homogeneous.
    pub fn dehomogenize(&self, var: usize) -> PolyMatrix {
        assert!(var < self.nvars);
        let m = self.nvars - 1;
        let images: Vec<Poly> = (0..self.nvars)
            .map(|j| match j.cmp(&var) {
                std::cmp::Ordering::Less => Poly::var(m, j, self.field),
                std::cmp::Ordering::Equal => Poly::one(m, self.field),
                std::cmp::Ordering::Greater => Poly::var(m, j - 1, self.field),
            })
            .collect();
        Self::from_fn(m, self.field, self.rows, self.cols, |i, j| self.get(i, j).substitute(&images))
    }

    /// Rank over the field of rational functions.
    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Poly::one(self.nvars, self.field);
        }
        let (rank, last, negate) = self.bareiss();
        if rank < self.rows {
            Poly::zero(self.nvars, self.field)
        } else if negate {
            last.neg()
        } else {
            last
        }
    }

    /// All r x r minors, with their row and column index sets.
    pub fn minors(&self, r: usize) -> Vec<(Vec<usize>, Vec<usize>, Poly)> {
        let mut out = Vec::new();
        for rows in combinations(self.rows, r) {
            for cols in combinations(self.cols, r) {
                let d = self.select(&rows, &cols).det();
                out.push((rows.clone(), cols, d));
            }
        }
        out
    }
}

/// Number of r-subsets of an n-set, saturating.
pub fn count_combinations(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] < n - r + i) else {
            return out;
        };
        cur[i] += 1;
        for k in i + 1..r {
            cur[k] = cur[k - 1] + 1;
        }
    }
}
