use crate::algebra::{GradedAlgebra, GradedStructure};
use crate::exactmath::{FieldSpec, Matrix, Scalar};
use crate::poly::{Poly, PolyMatrix};

/// Multiplication by each basis element of A_1, in every degree.
#[derive(Clone, Debug)]
pub struct LinearActions {
    field: FieldSpec,
    hilbert: Vec<usize>,
    /// `actions[i][j]` maps A_i to A_{i+1}.
    actions: Vec<Vec<Matrix>>,
}

impl LinearActions {
    pub fn new<A: GradedStructure + ?Sized>(a: &A) -> Self {
        let hilbert = a.hilbert_function();
        let n = hilbert.get(1).copied().unwrap_or(0);
        let top = hilbert.len() - 1;
        let actions = (0..top)
            .map(|i| {
                (0..n)
                    .map(|j| a.multiplication_matrix(1, &a.basis_vector(1, j), i))
                    .collect()
            })
            .collect();
        LinearActions {
            field: a.field(),
            hilbert,
            actions,
        }
    }

    /// Parametrizes linear forms by the coefficients of the weight-one
    /// variables rather than by a basis of A_1.
    pub fn from_variables(a: &GradedAlgebra) -> Self {
        let hilbert = a.hilbert_function();
        let top = hilbert.len() - 1;
        let vars: Vec<usize> = (0..a.ring().nvars())
            .filter(|&j| a.ring().weights()[j] == 1)
            .collect();
        let actions = (0..top)
            .map(|i| vars.iter().map(|&j| a.variable_action(j, i)).collect())
            .collect();
        LinearActions {
            field: a.field(),
            hilbert,
            actions,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn hilbert_function(&self) -> &[usize] {
        &self.hilbert
    }

    pub fn top(&self) -> usize {
        self.hilbert.len() - 1
    }

    /// Number of coefficients of a linear form.
    pub fn nparams(&self) -> usize {
        self.actions.first().map_or(0, Vec::len)
    }

    /// `x L : A_i -> A_{i+1}`.
    pub fn operator(&self, coeffs: &[Scalar], i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.hilbert[i + 1], self.hilbert[i]);
        for (c, a) in coeffs.iter().zip(&self.actions[i]) {
            if !c.is_zero() {
                m = m.add(&a.scale(c)).expect("same shape");
            }
        }
        m
    }

    /// `[L^1, ..., L^dmax]` starting from A_i.
    pub fn powers_from(&self, coeffs: &[Scalar], i: usize, dmax: usize) -> Vec<Matrix> {
        let mut out: Vec<Matrix> = Vec::with_capacity(dmax);
        for d in 1..=dmax {
            let step = self.operator(coeffs, i + d - 1);
            let next = match out.last() {
                None => step,
                Some(prev) => step.mul(prev).expect("composable"),
            };
            out.push(next);
        }
        out
    }

    pub fn power(&self, coeffs: &[Scalar], i: usize, d: usize) -> Matrix {
        if d == 0 {
            return Matrix::identity(self.field, self.hilbert[i]);
        }
        self.powers_from(coeffs, i, d).pop().expect("d >= 1")
    }

    /// `x L` with the coefficients as polynomial variables a_1..a_n.
    pub fn symbolic_operator(&self, i: usize) -> PolyMatrix {
        let n = self.nparams();
        let (r, c) = (self.hilbert[i + 1], self.hilbert[i]);
        PolyMatrix::from_fn(n, self.field, r, c, |a, b| {
            let coeffs: Vec<Scalar> = self.actions[i].iter().map(|m| m.get(a, b).clone()).collect();
            Poly::linear(self.field, &coeffs)
        })
    }

    /// `L^d : A_i -> A_{i+d}` with symbolic coefficients.
    pub fn symbolic_power(&self, i: usize, d: usize) -> PolyMatrix {
        let mut acc = self.symbolic_operator(i);
        for k in 1..d {
            acc = self.symbolic_operator(i + k).mul(&acc);
        }
        acc
    }
}
