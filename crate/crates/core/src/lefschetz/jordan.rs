use serde::Serialize;

use crate::algebra::GradedStructure;
use crate::exactmath::{sparsify, Echelon, Matrix, Scalar};

use super::operators::LinearActions;

/// A Jordan block of multiplication by L, as the degrees it occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StrandShape {
    pub start: usize,
    pub length: usize,
}

impl StrandShape {
    pub fn end(&self) -> usize {
        self.start + self.length - 1
    }
}

/// Block sizes of the nilpotent operator x L, with the degree each block starts in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanType {
    /// Weakly decreasing.
    pub parts: Vec<usize>,
    /// Sorted by length (longest first), then start degree.
    pub strands: Vec<StrandShape>,
}

impl JordanType {
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Every strand is centered on `top / 2`.
    pub fn is_centered(&self, top: usize) -> bool {
        self.strands.iter().all(|s| s.start + s.end() == top)
    }
}

/// The conjugate partition of a sequence of nonnegative integers.
pub fn conjugate(h: &[usize]) -> Vec<usize> {
    let max = h.iter().copied().max().unwrap_or(0);
    (1..=max).map(|k| h.iter().filter(|&&x| x >= k).count()).collect()
}

/// Graded rank table: `r[i][e]` is the rank of `L^e : A_i -> A_{i+e}`, with `r[i][0] = h_i`.
fn rank_table(actions: &LinearActions, coeffs: &[Scalar]) -> Vec<Vec<usize>> {
    let h = actions.hilbert_function();
    let top = actions.top();
    (0..=top)
        .map(|i| {
            let mut row = vec![h[i]];
            row.extend(actions.powers_from(coeffs, i, top - i).iter().map(Matrix::rank));
            row
        })
        .collect()
}

pub fn jordan_type<A: GradedStructure + ?Sized>(a: &A, coeffs: &[Scalar]) -> JordanType {
    jordan_type_with(&LinearActions::new(a), coeffs)
}

pub fn jordan_type_with(actions: &LinearActions, coeffs: &[Scalar]) -> JordanType {
    let r = rank_table(actions, coeffs);
    let top = actions.top();
    let c = |i: isize, e: usize| -> usize {
        if i < 0 {
            return 0;
        }
        r.get(i as usize).and_then(|row| row.get(e)).copied().unwrap_or(0)
    };
    let mut strands = Vec::new();
    for i in 0..=top {
        let s = i as isize;
        for e in 1..=top - i + 1 {
            let at_least = |k: usize| c(s, k - 1) - c(s - 1, k);
            let count = at_least(e) - at_least(e + 1);
            strands.extend(std::iter::repeat(StrandShape { start: i, length: e }).take(count));
        }
    }
    strands.sort_by(|a, b| b.length.cmp(&a.length).then(a.start.cmp(&b.start)));
    JordanType {
        parts: strands.iter().map(|s| s.length).collect(),
        strands,
    }
}

/// A strand with explicit vectors `v, L v, ..., L^{e-1} v` in consecutive degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct Strand {
    pub shape: StrandShape,
    pub vectors: Vec<Vec<Scalar>>,
}

/// A graded Jordan basis for x L: a family of strands whose vectors form a basis of A.
pub fn jordan_basis(actions: &LinearActions, coeffs: &[Scalar]) -> Vec<Strand> {
    let field = actions.field();
    let h = actions.hilbert_function().to_vec();
    let top = actions.top();
    let ops: Vec<Matrix> = (0..top).map(|i| actions.operator(coeffs, i)).collect();
    let apply = |i: usize, v: &[Scalar]| -> Vec<Scalar> {
        if i >= top {
            Vec::new()
        } else {
            ops[i].mul_vec(v).expect("shape")
        }
    };
    // kernels[s][e]: basis of ker(L^e) on A_s, e = 0..=top - s + 1.
    let kernels: Vec<Vec<Vec<Vec<Scalar>>>> = (0..=top)
        .map(|s| {
            let mut out = vec![Vec::new()];
            let mut power = Matrix::identity(field, h[s]);
            for e in 1..=top - s + 1 {
                if s + e > top {
                    out.push(
                        (0..h[s])
                            .map(|k| {
                                let mut v = vec![field.zero(); h[s]];
                                v[k] = field.one();
                                v
                            })
                            .collect(),
                    );
                } else {
                    power = ops[s + e - 1].mul(&power).expect("composable");
                    out.push(power.kernel_basis());
                }
            }
            out
        })
        .collect();
    let mut strands = Vec::new();
    for s in 0..=top {
        for e in 1..=top - s + 1 {
            let mut ech = Echelon::new(field, h[s]);
            for v in &kernels[s][e - 1] {
                ech.insert(&sparsify(v));
            }
            if s > 0 && e + 1 < kernels[s - 1].len() {
                for v in &kernels[s - 1][e + 1] {
                    ech.insert(&sparsify(&apply(s - 1, v)));
                }
            }
            for v in &kernels[s][e] {
                if ech.insert(&sparsify(v)) {
                    let mut vectors = vec![v.clone()];
                    for k in 1..e {
                        let next = apply(s + k - 1, &vectors[k - 1]);
                        vectors.push(next);
                    }
                    strands.push(Strand {
                        shape: StrandShape { start: s, length: e },
                        vectors,
                    });
                }
            }
        }
    }
    strands
}

/// Checks that the strand vectors in each degree form a basis of that degree.
pub fn is_graded_basis(actions: &LinearActions, strands: &[Strand]) -> bool {
    let field = actions.field();
    let h = actions.hilbert_function();
    (0..h.len()).all(|d| {
        let mut ech = Echelon::new(field, h[d]);
        let mut count = 0;
        for s in strands {
            if d >= s.shape.start && d <= s.shape.end() {
                count += 1;
                if !ech.insert(&sparsify(&s.vectors[d - s.shape.start])) {
                    return false;
                }
            }
        }
        count == h[d]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GradedAlgebra, Ideal, Ring};
    use crate::exactmath::FieldSpec;

    fn quotient(names: &[&str], gens: &[&str], field: FieldSpec) -> GradedAlgebra {
        let r = Ring::new(names, field).unwrap();
        GradedAlgebra::from_ideal(&Ideal::parse(&r, gens).unwrap(), None).unwrap()
    }

    /// Oracle: partition from ranks of powers of the full operator on A, with
    /// #blocks of size >= k = rank(N^{k-1}) - rank(N^k).
    fn ungraded_partition(actions: &LinearActions, coeffs: &[Scalar], dim: usize) -> Vec<usize> {
        let field = actions.field();
        let h = actions.hilbert_function();
        let offsets: Vec<usize> = h.iter().scan(0, |acc, &x| {
            let o = *acc;
            *acc += x;
            Some(o)
        }).collect();
        let mut n = Matrix::zeros(field, dim, dim);
        for i in 0..actions.top() {
            let op = actions.operator(coeffs, i);
            for r in 0..op.rows() {
                for c in 0..op.cols() {
                    n.set(offsets[i + 1] + r, offsets[i] + c, op.get(r, c).clone());
                }
            }
        }
        let mut ranks = vec![dim];
        let mut p = Matrix::identity(field, dim);
        while *ranks.last().unwrap() > 0 {
            p = n.mul(&p).unwrap();
            ranks.push(p.rank());
        }
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        let mut parts = Vec::new();
        for k in (1..=at_least.len()).rev() {
            let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            parts.extend(std::iter::repeat(k).take(exact));
        }
        parts
    }

    #[test]
    fn cyclic_algebra_is_one_block() {
        for d in 1..7 {
            let a = quotient(&["x"], &[&format!("x^{d}")], FieldSpec::RATIONALS);
            let jt = jordan_type(&a, &[FieldSpec::RATIONALS.one()]);
            assert_eq!(jt.parts, vec![d]);
        }
    }

    #[test]
    fn two_squares() {
        let q = FieldSpec::RATIONALS;
        let a = quotient(&["x", "y"], &["x^2", "y^2"], q);
        let jt = jordan_type(&a, &[q.one(), q.one()]);
        assert_eq!(jt.parts, vec![3, 1]);
        assert!(jt.is_centered(2));
        assert_eq!(conjugate(&a.hilbert_function()), vec![3, 1]);
        let f2 = FieldSpec::prime(2).unwrap();
        let b = quotient(&["x", "y"], &["x^2", "y^2"], f2);
        assert_eq!(jordan_type(&b, &[f2.one(), f2.one()]).parts, vec![2, 2]);
    }

    #[test]
    fn graded_counts_match_ungraded_oracle_and_basis() {
        let q = FieldSpec::RATIONALS;
        let cases: &[(&[&str], &[&str])] = &[
            (&["x", "y", "z"], &["x^2", "y^2", "z^2"]),
            (&["x", "y"], &["x^2", "x*y", "y^4"]),
            (&["x", "y", "z"], &["x^3", "y^3", "z^3", "x*y*z"]),
            (&["x", "y"], &["x^3", "y^2"]),
        ];
        for (names, gens) in cases {
            let a = quotient(names, gens, q);
            let actions = LinearActions::new(&a);
            for coeffs in [vec![1, 1, 1], vec![1, 0, 0], vec![2, -1, 3]] {
                let c: Vec<Scalar> = coeffs[..actions.nparams()].iter().map(|&x| q.from_i64(x)).collect();
                let jt = jordan_type_with(&actions, &c);
                assert_eq!(jt.total(), a.dim());
                assert_eq!(jt.parts, ungraded_partition(&actions, &c, a.dim()));
                let basis = jordan_basis(&actions, &c);
                assert!(is_graded_basis(&actions, &basis));
                let mut shapes: Vec<StrandShape> = basis.iter().map(|s| s.shape).collect();
                shapes.sort_by(|a, b| b.length.cmp(&a.length).then(a.start.cmp(&b.start)));
                assert_eq!(shapes, jt.strands);
                for s in &basis {
                    let last = s.vectors.last().unwrap();
                    let d = s.shape.end();
                    if d < actions.top() {
                        assert!(actions.operator(&c, d).mul_vec(last).unwrap().iter().all(Scalar::is_zero));
                    }
                }
            }
        }
    }
}
