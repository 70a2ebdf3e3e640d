use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector. Ordered by graded reverse lexicographic order: higher
/// total degree first, ties broken by the smaller exponent in the last
/// differing variable winning.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn new(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect(),
        ))
    }

    /// Concatenation, for disjoint unions of variable sets.
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// All monomials of degree `d` in `n` variables, largest first.
pub fn monomial_basis(n: usize, d: u32) -> Vec<Monomial> {
    weighted_monomial_basis(&vec![1; n], d)
}

/// All monomials of weighted degree `d`, largest first.
pub fn weighted_monomial_basis(weights: &[u32], d: u32) -> Vec<Monomial> {
    let n = weights.len();
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fn rec(i: usize, left: u32, weights: &[u32], cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::new(cur));
            }
            return;
        }
        let w = weights[i];
        let mut e = 0;
        while e * w <= left {
            cur[i] = e as u16;
            rec(i + 1, left - e * w, weights, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    rec(0, d, weights, &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    use crate::exactmath::binomial;

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(3, 0), vec![Monomial::one(3)]);
        assert_eq!(monomial_basis(3, 2).len(), 6);
        for n in 1..5 {
            for d in 0..6 {
                let expect = binomial((n + d - 1) as u64, d as u64).to_usize().unwrap();
                assert_eq!(monomial_basis(n, d as u32).len(), expect);
            }
        }
    }

    #[test]
    fn grevlex_order_in_two_variables() {
        let b = monomial_basis(2, 5);
        let exps: Vec<Vec<u16>> = b.iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(
            exps,
            vec![vec![5, 0], vec![4, 1], vec![3, 2], vec![2, 3], vec![1, 4], vec![0, 5]]
        );
    }

    #[test]
    fn grevlex_three_variables_degree_two() {
        let b = monomial_basis(3, 2);
        let exps: Vec<Vec<u16>> = b.iter().map(|m| m.exps().to_vec()).collect();
        // x^2 > xy > y^2 > xz > yz > z^2
        assert_eq!(
            exps,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn weighted_basis() {
        // |x| = 1, |y| = 3
        let b = weighted_monomial_basis(&[1, 3], 3);
        assert_eq!(b.len(), 2);
        assert!(weighted_monomial_basis(&[2, 2], 3).is_empty());
    }
}
