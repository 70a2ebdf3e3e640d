//! Operations shared by every finite graded algebra model: quotients by
//! ideals, fiber products, connected sums and blowups.

use crate::error::{Error, Result};
use crate::exactmath::{Echelon, FieldSpec, Matrix, Scalar, sparsify};

/// Element of a single degree, in coordinates of that degree's basis.
pub type Homogeneous = (usize, Vec<Scalar>);

/// A finite dimensional graded commutative algebra with A_0 = F and a
/// chosen basis in every degree.
pub trait GradedStructure {
    fn field(&self) -> FieldSpec;

    /// (h(0), ..., h(D)) with h(D) > 0.
    fn hilbert_function(&self) -> Vec<usize>;

    /// Product of `u` in degree `i` and `v` in degree `j`, in degree i + j
    /// coordinates (an empty vector beyond the top degree).
    fn multiply(&self, i: usize, u: &[Scalar], j: usize, v: &[Scalar]) -> Vec<Scalar>;

    /// Human-readable names of the basis elements of degree `i`.
    fn basis_labels(&self, i: usize) -> Vec<String>;

    fn socle_degree(&self) -> usize {
        self.hilbert_function().len() - 1
    }

    fn dim(&self) -> usize {
        self.hilbert_function().iter().sum()
    }

    fn dim_of(&self, i: usize) -> usize {
        self.hilbert_function().get(i).copied().unwrap_or(0)
    }

    fn unit(&self) -> Vec<Scalar> {
        vec![self.field().one()]
    }

    fn basis_vector(&self, i: usize, k: usize) -> Vec<Scalar> {
        let f = self.field();
        let mut v = vec![f.zero(); self.dim_of(i)];
        v[k] = f.one();
        v
    }

    /// Matrix of multiplication by `u` (degree `i`) from degree `j` to `i + j`.
    fn multiplication_matrix(&self, i: usize, u: &[Scalar], j: usize) -> Matrix {
        let rows = self.dim_of(i + j);
        let columns: Vec<Vec<Scalar>> = (0..self.dim_of(j))
            .map(|k| {
                let p = self.multiply(i, u, j, &self.basis_vector(j, k));
                if p.is_empty() {
                    vec![self.field().zero(); rows]
                } else {
                    p
                }
            })
            .collect();
        Matrix::from_columns(self.field(), rows, &columns)
    }

    /// Minimal homogeneous algebra generators: in each degree, a basis of a
    /// complement to the span of products of lower positive degrees.
    fn generators(&self) -> Vec<Homogeneous> {
        let h = self.hilbert_function();
        let mut out = Vec::new();
        for i in 1..h.len() {
            let mut span = Echelon::new(self.field(), h[i]);
            for j in 1..i {
                for a in 0..h[j] {
                    let ea = self.basis_vector(j, a);
                    for b in 0..h[i - j] {
                        span.insert(&sparsify(&self.multiply(j, &ea, i - j, &self.basis_vector(i - j, b))));
                    }
                }
            }
            for k in 0..h[i] {
                let e = self.basis_vector(i, k);
                if span.insert(&sparsify(&e)) {
                    out.push((i, e));
                }
            }
        }
        out
    }

    fn generator_degrees(&self) -> Vec<usize> {
        self.generators().into_iter().map(|(d, _)| d).collect()
    }

    /// Generated in degree one.
    fn is_standard_graded(&self) -> bool {
        self.generators().iter().all(|(d, _)| *d == 1)
    }

    /// Basis of the socle part in each degree.
    fn socle(&self) -> Vec<Vec<Vec<Scalar>>> {
        let h = self.hilbert_function();
        let gens = self.generators();
        (0..h.len())
            .map(|i| {
                let blocks: Vec<Matrix> = gens
                    .iter()
                    .filter(|(d, _)| i + d < h.len())
                    .map(|(d, g)| self.multiplication_matrix(*d, g, i))
                    .collect();
                if blocks.is_empty() {
                    return (0..h[i]).map(|k| self.basis_vector(i, k)).collect();
                }
                let mut stacked = blocks[0].clone();
                for b in &blocks[1..] {
                    stacked = stacked.vstack(b).expect("same column count");
                }
                stacked.kernel_basis()
            })
            .collect()
    }

    fn socle_dimensions(&self) -> Vec<usize> {
        self.socle().iter().map(|s| s.len()).collect()
    }

    fn is_gorenstein(&self) -> bool {
        self.socle_dimensions().iter().sum::<usize>() == 1
    }

    /// Socle contained in the top degree.
    fn is_level(&self) -> bool {
        let s = self.socle_dimensions();
        s[..s.len() - 1].iter().all(|&x| x == 0)
    }

    /// Sends the first basis element of the top degree to 1.
    fn default_orientation(&self) -> Orientation {
        let d = self.socle_degree();
        Orientation::new(d, self.basis_vector(d, 0)).expect("nonzero")
    }

    fn integral(&self, orientation: &Orientation, i: usize, u: &[Scalar]) -> Scalar {
        if i == orientation.degree() {
            orientation.integrate(u)
        } else {
            self.field().zero()
        }
    }

    /// Entry (a, b) is the integral of a * b over bases of degrees i and D - i.
    fn pairing_matrix(&self, orientation: &Orientation, i: usize) -> Matrix {
        let d = orientation.degree();
        let j = d - i;
        let rows = (0..self.dim_of(i))
            .map(|a| {
                let ea = self.basis_vector(i, a);
                (0..self.dim_of(j))
                    .map(|b| orientation.integrate(&self.multiply(i, &ea, j, &self.basis_vector(j, b))))
                    .collect()
            })
            .collect();
        Matrix::from_rows(self.field(), self.dim_of(j), rows)
    }

    /// Poincare duality: every pairing matrix is square and nonsingular.
    fn pairing_is_perfect(&self, orientation: &Orientation) -> bool {
        (0..=orientation.degree()).all(|i| {
            let m = self.pairing_matrix(orientation, i);
            m.is_square() && m.rank() == m.rows()
        })
    }

    /// Checks Poincare duality and reports the first failing degree.
    fn check_gorenstein(&self, orientation: &Orientation) -> Result<()> {
        for i in 0..=orientation.degree() {
            let m = self.pairing_matrix(orientation, i);
            if !m.is_square() || m.rank() < m.rows() {
                return Err(Error::NotGorenstein(format!("pairing degenerate in degree {i}")));
            }
        }
        Ok(())
    }
}

/// Linear functional on the top degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Orientation {
    degree: usize,
    functional: Vec<Scalar>,
}

impl Orientation {
    pub fn new(degree: usize, functional: Vec<Scalar>) -> Result<Self> {
        if functional.iter().all(|x| x.is_zero()) {
            return Err(Error::Invalid("orientation must be nonzero on the top degree".into()));
        }
        Ok(Orientation { degree, functional })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn functional(&self) -> &[Scalar] {
        &self.functional
    }

    pub fn integrate(&self, u: &[Scalar]) -> Scalar {
        let field = self.functional[0].field();
        if u.is_empty() {
            return field.zero();
        }
        let mut acc = field.zero();
        for (a, b) in self.functional.iter().zip(u) {
            acc += &(a * b);
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Result<Orientation> {
        Orientation::new(self.degree, self.functional.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, other: &Orientation) -> Result<Orientation> {
        Orientation::new(
            self.degree,
            self.functional
                .iter()
                .zip(&other.functional)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}
