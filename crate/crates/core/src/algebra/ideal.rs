use std::collections::HashMap;

use crate::error::Result;
use crate::exactmath::{Echelon, Matrix, Scalar, SparseVec};
use crate::poly::{DualPoly, Monomial, Poly};

use super::ring::Ring;

/// Homogeneous ideal given by generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Poly>,
}

impl Ideal {
    /// Zero generators are dropped; every other generator must be homogeneous.
    pub fn new(ring: &Ring, generators: Vec<Poly>) -> Result<Self> {
        let mut kept = Vec::new();
        for g in generators {
            ring.check_member(&g)?;
            if g.is_zero() {
                continue;
            }
            ring.degree_of(&g)?;
            kept.push(g);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: kept,
        })
    }

    pub fn parse(ring: &Ring, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Degree pieces I_0, ..., I_d as reduced echelon forms.
    pub fn pieces(&self, d: usize) -> Vec<PieceData> {
        let mut b = PieceBuilder::new(self);
        (0..=d).map(|_| b.next_piece()).collect()
    }

    /// Basis of (I_d)^perp inside the degree d part of the dual.
    pub fn inverse_system(&self, d: usize) -> Vec<DualPoly> {
        let piece = self.pieces(d).pop().expect("degree d built");
        piece.perp()
    }
}

/// Reduced row basis of I_d over the monomial basis of R_d (largest first).
pub fn ideal_degree_piece(ideal: &Ideal, d: usize) -> Matrix {
    ideal.pieces(d).pop().expect("degree d built").ideal.to_matrix()
}

/// One homogeneous degree of a quotient R/I.
#[derive(Clone, Debug)]
pub struct PieceData {
    pub(crate) ring: Ring,
    pub(crate) monomials: Vec<Monomial>,
    pub(crate) index: HashMap<Monomial, usize>,
    pub(crate) ideal: Echelon,
    pub(crate) standard: Vec<usize>,
    pub(crate) position: HashMap<usize, usize>,
}

impl PieceData {
    pub(crate) fn new(ring: &Ring, monomials: Vec<Monomial>, ideal: Echelon) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let standard = ideal.non_pivots();
        let position = standard.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        PieceData {
            ring: ring.clone(),
            monomials,
            index,
            ideal,
            standard,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn standard_monomials(&self) -> Vec<Monomial> {
        self.standard.iter().map(|&c| self.monomials[c].clone()).collect()
    }

    /// Coordinates of a polynomial all of whose terms lie in this degree.
    pub(crate) fn sparse_of(&self, p: &Poly) -> SparseVec {
        let mut v: SparseVec = p
            .terms()
            .iter()
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        v.sort_by_key(|(c, _)| *c);
        v
    }

    /// Normal form coordinates against the standard monomials.
    pub(crate) fn coords(&self, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let field = self.ring.field();
        let mut out = vec![field.zero(); self.dim()];
        for (c, x) in self.ideal.reduce(v) {
            out[self.position[&c]] = x;
        }
        out
    }

    pub(crate) fn monomial_coords(&self, m: &Monomial) -> Vec<Scalar> {
        self.coords(&[(self.index[m], self.ring.field().one())])
    }

    pub(crate) fn row_poly(&self, row: &[(usize, Scalar)]) -> Poly {
        Poly::from_terms(
            self.ring.nvars(),
            self.ring.field(),
            row.iter().map(|(c, x)| (self.monomials[*c].clone(), x.clone())),
        )
    }

    /// Coordinate functionals of the standard basis, as dual polynomials.
    pub(crate) fn perp(&self) -> Vec<DualPoly> {
        let n = self.ring.nvars();
        let field = self.ring.field();
        let mut terms: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); self.dim()];
        for (c, m) in self.monomials.iter().enumerate() {
            let v = self.coords(&[(c, field.one())]);
            for (k, x) in v.into_iter().enumerate() {
                if !x.is_zero() {
                    terms[k].push((m.clone(), x));
                }
            }
        }
        terms
            .into_iter()
            .map(|t| DualPoly::from_divided(Poly::from_terms(n, field, t)))
            .collect()
    }
}

/// Builds I_d degree by degree from x_j * I_{d - w_j} and the generators of degree d.
pub(crate) struct PieceBuilder {
    ring: Ring,
    generators: Vec<(usize, Poly)>,
    built: Vec<PieceData>,
}

impl PieceBuilder {
    pub(crate) fn new(ideal: &Ideal) -> Self {
        let generators = ideal
            .generators
            .iter()
            .map(|g| (ideal.ring.degree_of(g).expect("checked homogeneous"), g.clone()))
            .collect();
        PieceBuilder {
            ring: ideal.ring.clone(),
            generators,
            built: Vec::new(),
        }
    }

    pub(crate) fn next_piece(&mut self) -> PieceData {
        let d = self.built.len();
        let monomials = self.ring.basis(d);
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let n = self.ring.nvars();
        let mut ech = Echelon::new(self.ring.field(), monomials.len());
        for j in 0..n {
            let w = self.ring.weights()[j] as usize;
            if w > d {
                continue;
            }
            let prev = &self.built[d - w];
            let xj = Monomial::var(n, j);
            for row in prev.ideal.sorted_rows() {
                let mut v: SparseVec = row
                    .iter()
                    .map(|(c, x)| (index[&prev.monomials[*c].mul(&xj)], x.clone()))
                    .collect();
                v.sort_by_key(|(c, _)| *c);
                ech.insert(&v);
            }
        }
        for (e, g) in &self.generators {
            if *e == d {
                let mut v: SparseVec = g
                    .terms()
                    .iter()
                    .map(|(m, c)| (index[m], c.clone()))
                    .collect();
                v.sort_by_key(|(c, _)| *c);
                ech.insert(&v);
            }
        }
        let piece = PieceData::new(&self.ring, monomials, ech);
        self.built.push(piece.clone());
        piece
    }

    pub(crate) fn into_pieces(self) -> Vec<PieceData> {
        self.built
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::FieldSpec;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names, FieldSpec::RATIONALS).unwrap()
    }

    #[test]
    fn degree_piece_ranks() {
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x^2", "y^2", "z^2"]).unwrap();
        assert_eq!(ideal_degree_piece(&i, 2).rows(), 3);
        assert_eq!(ideal_degree_piece(&i, 1).rows(), 0);
    }

    #[test]
    fn degree_piece_matches_product_enumeration() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2", "x*y^2", "y^3"]).unwrap();
        // Oracle: all products m*g with deg m + deg g = 3, row reduced densely.
        let basis = r.basis(3);
        let mut rows = Vec::new();
        for g in i.generators() {
            let dg = r.degree_of(g).unwrap();
            for m in r.basis(3 - dg) {
                let p = g.mul_monomial(&m, &FieldSpec::RATIONALS.one());
                rows.push(basis.iter().map(|b| p.coeff(b)).collect());
            }
        }
        let dense = Matrix::from_rows(FieldSpec::RATIONALS, basis.len(), rows);
        // Every cubic monomial is a multiple of a generator.
        assert_eq!(dense.rank(), 4);
        assert_eq!(ideal_degree_piece(&i, 3), dense.rref().0.select_rows(&[0, 1, 2, 3]));
        assert_eq!(ideal_degree_piece(&i, 2).rows(), 1);
    }

    #[test]
    fn zero_generators_are_dropped_and_inhomogeneous_rejected() {
        let r = ring(&["x", "y"]);
        assert_eq!(Ideal::parse(&r, &["0", "x"]).unwrap().generators().len(), 1);
        assert!(Ideal::parse(&r, &["x + y^2"]).is_err());
    }

    #[test]
    fn inverse_system_of_the_irrelevant_ideal() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x", "y"]).unwrap();
        let inv = i.inverse_system(0);
        assert_eq!(inv.len(), 1);
        assert!(i.inverse_system(1).is_empty());
    }
}
