//! Dense exact matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{inv_mod, mul_mod, FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Prime used for fast rank lower bounds of rational matrices.
pub(crate) const CHECK_PRIME: u64 = (1 << 61) - 1;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Serialized as a list of rows of exact scalars.
impl serde::Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            field,
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Block matrix `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        Ok(Matrix::from_rows(self.field, self.cols + other.cols, rows))
    }

    /// Block matrix `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(
            self.field,
            self.cols,
            idx.iter().map(|&i| self.row(i).to_vec()).collect(),
        )
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let rows = (0..self.rows)
            .map(|i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        Matrix::from_rows(self.field, idx.len(), rows)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if !rj.is_zero() {
                        let v = m.get(i, j) - &(&f * rj);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let full = self.rows.min(self.cols);
        if full == 0 {
            return 0;
        }
        match self.field.characteristic() {
            0 => {
                // a full rank reduction mod p certifies full rank over ℚ
                if let Some(r) = self.rank_mod_prime(CHECK_PRIME) {
                    if r == full {
                        return r;
                    }
                }
                bareiss_rank(self.integer_rows())
            }
            p => rank_mod(self.residue_rows(), p),
        }
    }

    /// Rank after reduction modulo `p`, a lower bound for the rank over ℚ.
    /// `None` when some denominator vanishes mod `p`.
    pub fn rank_mod_prime(&self, p: u64) -> Option<usize> {
        let pb = BigInt::from(p);
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for x in self.row(i) {
                row.push(match x {
                    Scalar::Rational(q) => {
                        let d = q.denom().mod_floor(&pb).to_u64()?;
                        if d == 0 {
                            return None;
                        }
                        let n = q.numer().mod_floor(&pb).to_u64()?;
                        mul_mod(n, inv_mod(d, p), p)
                    }
                    Scalar::Modular { value, modulus } if *modulus == p => *value,
                    Scalar::Modular { .. } => return None,
                });
            }
            rows.push(row);
        }
        Some(rank_mod(rows, p))
    }

    fn residue_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| match x {
                        Scalar::Modular { value, .. } => *value,
                        Scalar::Rational(_) => unreachable!(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Rows scaled by the lcm of their denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| integer_row(self.row(i)).0).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(k);
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(k, f);
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant: fraction-free Bareiss over ℚ, Gaussian elimination over 𝔽p.
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(self.field.one());
        }
        match self.field.characteristic() {
            0 => {
                let mut scale = BigInt::one();
                let mut rows = Vec::with_capacity(self.rows);
                for i in 0..self.rows {
                    let (row, l) = integer_row(self.row(i));
                    scale *= l;
                    rows.push(row);
                }
                let d = bareiss_det(rows);
                Ok(Scalar::Rational(BigRational::new(d, scale)))
            }
            p => Ok(Scalar::Modular {
                value: det_mod(self.residue_rows(), p),
                modulus: p,
            }),
        }
    }

    /// Some solution of `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]))?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r.get(k, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n)).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(r.select_columns(&idx))
    }
}

/// Clears denominators of a rational row; returns the row and the multiplier used.
pub(crate) fn integer_row(row: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for x in row {
        if let Scalar::Rational(q) = x {
            if !q.denom().is_one() {
                l = l.lcm(q.denom());
            }
        }
    }
    let out = row
        .iter()
        .map(|x| match x {
            Scalar::Rational(q) => q.numer() * (&l / q.denom()),
            Scalar::Modular { value, .. } => BigInt::from(*value),
        })
        .collect();
    (out, l)
}

pub(crate) fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        let pivot_row: Vec<u64> = rows[r].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                if pivot_row[j] != 0 {
                    let t = mul_mod(f, pivot_row[j], p);
                    row[j] = if row[j] >= t { row[j] - t } else { row[j] + p - t };
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

fn det_mod(mut rows: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = rows.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| rows[i][c] != 0) else {
            return 0;
        };
        if piv != c {
            rows.swap(c, piv);
            det = (p - det) % p;
        }
        det = mul_mod(det, rows[c][c], p);
        let inv = inv_mod(rows[c][c], p);
        for i in c + 1..n {
            let f = mul_mod(rows[i][c], inv, p);
            if f == 0 {
                continue;
            }
            for j in c..n {
                let t = mul_mod(f, rows[c][j], p);
                rows[i][j] = if rows[i][j] >= t { rows[i][j] - t } else { rows[i][j] + p - t };
            }
        }
    }
    det
}

/// Fraction-free elimination; every division is exact.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // smallest pivot keeps entries short
        let Some(piv) = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].abs().bits())
        else {
            continue;
        };
        m.swap(r, piv);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    /// Cofactor expansion along the first row.
    fn cofactor_det(m: &Matrix) -> Scalar {
        let n = m.rows();
        if n == 0 {
            return m.field().one();
        }
        let mut acc = m.field().zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = m.select_rows(&rows).select_columns(&cols);
            let term = m.get(0, j) * &cofactor_det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn repeated_row_has_rank_one() {
        let m = Matrix::from_i64(q(), &[&[1], &[1]]);
        let (_, piv) = m.rref();
        assert_eq!(piv, vec![0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn identity_is_its_own_rref() {
        let i = Matrix::identity(q(), 3);
        let (r, piv) = i.rref();
        assert_eq!(r, i);
        assert_eq!(piv, vec![0, 1, 2]);
    }

    #[test]
    fn characteristic_two_drops_rank() {
        let f2 = FieldSpec::prime(2).unwrap();
        let rows: &[&[i64]] = &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]];
        assert_eq!(Matrix::from_i64(f2, rows).rank(), 2);
        assert_eq!(Matrix::from_i64(q(), rows).rank(), 3);
        assert_eq!(Matrix::from_i64(q(), rows).det().unwrap(), q().from_i64(-2));
    }

    #[test]
    fn diagonal_determinant() {
        let m = Matrix::from_i64(q(), &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(m.det().unwrap(), q().from_i64(8));
        assert!(Matrix::zeros(q(), 2, 3).det().is_err());
    }

    #[test]
    fn zero_matrix_and_simple_kernel() {
        assert_eq!(Matrix::zeros(q(), 3, 4).rank(), 0);
        let k = Matrix::from_i64(q(), &[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![q().from_i64(-1), q().from_i64(1)]]);
    }

    #[test]
    fn solve_and_inconsistency() {
        let b = vec![q().from_i64(2)];
        let x = Matrix::from_i64(q(), &[&[1, 1]]).solve(&b).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], q().from_i64(2));
        let m = Matrix::from_i64(q(), &[&[1, 1], &[1, 1]]);
        let b = vec![q().from_i64(1), q().from_i64(2)];
        assert_eq!(m.solve(&b).unwrap(), None);
        assert!(m.solve(&[q().one()]).is_err());
    }

    #[test]
    fn rank_of_rational_matrix_with_dependency() {
        let h = q().from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        let one = q().one();
        let m = Matrix::from_rows(
            q(),
            2,
            vec![vec![h.clone(), one.clone()], vec![one.clone(), &one + &one]],
        );
        assert_eq!(m.rank(), 1);
        assert!(m.det().unwrap().is_zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
            (1..=max, 1..=max).prop_flat_map(|(r, c)| {
                prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
            })
        }

        fn build(field: FieldSpec, rows: &[Vec<i64>]) -> Matrix {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            Matrix::from_i64(field, &refs)
        }

        proptest! {
            #[test]
            fn rref_idempotent_and_kernel_annihilated(rows in small_matrix(5), p in prop::sample::select(vec![0u64, 2, 3, 7])) {
                let field = if p == 0 { FieldSpec::RATIONALS } else { FieldSpec::prime(p).unwrap() };
                let m = build(field, &rows);
                let (r, piv) = m.rref();
                prop_assert_eq!(r.rref().0, r.clone());
                prop_assert_eq!(m.rank(), piv.len());
                let ker = m.kernel_basis();
                prop_assert_eq!(ker.len() + m.rank(), m.cols());
                for k in &ker {
                    prop_assert!(m.mul_vec(k).unwrap().iter().all(Scalar::is_zero));
                }
            }

            #[test]
            fn bareiss_matches_cofactor_expansion(n in 1usize..=4, seed in prop::collection::vec(-5i64..=5, 16)) {
                let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
                let m = build(FieldSpec::RATIONALS, &rows);
                prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
                let f7 = FieldSpec::prime(7).unwrap();
                let m7 = build(f7, &rows);
                prop_assert_eq!(m7.det().unwrap(), cofactor_det(&m7));
            }

            #[test]
            fn scaled_rational_determinant(n in 1usize..=3, seed in prop::collection::vec(1i64..=6, 9)) {
                // entries 1/k exercise the denominator clearing
                let rows: Vec<Vec<Scalar>> = (0..n)
                    .map(|i| (0..n).map(|j| FieldSpec::RATIONALS
                        .from_fraction(&BigInt::from(1 + (i as i64 + j as i64) % 3), &BigInt::from(seed[i * 3 + j]))
                        .unwrap()).collect())
                    .collect();
                let m = Matrix::from_rows(FieldSpec::RATIONALS, n, rows);
                prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
            }
        }
    }
}
