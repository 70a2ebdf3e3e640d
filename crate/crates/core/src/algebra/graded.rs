use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exactmath::{sparsify, Echelon, FieldSpec, Matrix, Scalar, SparseVec};
use crate::poly::{contract, DualPoly, Monomial, Poly};

use super::ideal::{Ideal, PieceBuilder, PieceData};
use super::ring::Ring;
use super::structure::{GradedStructure, Homogeneous, Orientation};

/// Artinian graded quotient R/I with a standard monomial basis in every degree.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    ring: Ring,
    generators: Vec<Poly>,
    pieces: Vec<PieceData>,
    dual: Option<DualPoly>,
    standard_graded: bool,
}

impl GradedAlgebra {
    /// Builds R/I up to the first run of vanishing degrees long enough to
    /// force every higher degree to vanish.
    pub fn from_ideal(ideal: &Ideal, max_degree: Option<usize>) -> Result<Self> {
        let ring = ideal.ring().clone();
        let gens = ideal.generators();
        let cap = match max_degree {
            Some(c) => c,
            None => {
                if gens.len() < ring.nvars() {
                    return Err(Error::Invalid(
                        "fewer generators than variables: supply a degree cap".into(),
                    ));
                }
                let total: usize = gens.iter().map(|g| ring.degree_of(g).expect("homogeneous")).sum();
                if ring.has_unit_weights() {
                    total - gens.len() + 1
                } else {
                    total + 1
                }
            }
        };
        let wmax = ring.max_weight() as usize;
        let mut builder = PieceBuilder::new(ideal);
        let mut zeros = 0;
        let mut d = 0;
        loop {
            let piece = builder.next_piece();
            if piece.dim() == 0 {
                zeros += 1;
                if zeros >= wmax {
                    break;
                }
            } else {
                zeros = 0;
                if d > cap {
                    return Err(Error::NotArtinian(cap));
                }
            }
            d += 1;
        }
        let mut pieces = builder.into_pieces();
        while pieces.last().is_some_and(|p| p.dim() == 0) {
            pieces.pop();
        }
        if pieces.is_empty() {
            return Err(Error::Invalid("the ideal is the whole ring".into()));
        }
        Ok(Self::assemble(ring, gens.to_vec(), pieces, None))
    }

    /// R/Ann(F) for a nonzero homogeneous F; Ann(F)_d is the kernel of the
    /// catalecticant R_d -> R*_{D-d}, g -> g . F.
    pub fn from_dual_generator(ring: &Ring, f: &DualPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Invalid("dual generator must be nonzero".into()));
        }
        if f.nvars() != ring.nvars() {
            return Err(Error::Dimension("dual generator variable count".into()));
        }
        if f.field() != ring.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", f.field(), ring.field())));
        }
        let top = f
            .divided()
            .homogeneous_degree(ring.weights())
            .ok_or_else(|| Error::NotHomogeneous(ring.format_dual(f)))? as usize;
        let field = ring.field();
        let pieces = (0..=top)
            .map(|d| {
                let monomials = ring.basis(d);
                let images = ring.basis(top - d);
                let img_index: HashMap<Monomial, usize> =
                    images.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
                let offset = images.len();
                let mut tracked = Echelon::new(field, offset + monomials.len());
                for (k, m) in monomials.iter().enumerate() {
                    let g = contract(&ring.monomial_poly(m), f).expect("same ring");
                    let mut v: SparseVec = g
                        .terms()
                        .iter()
                        .map(|(b, c)| (img_index[b], c.clone()))
                        .collect();
                    v.sort_by_key(|(c, _)| *c);
                    v.push((offset + k, field.one()));
                    tracked.insert(&v);
                }
                let mut ideal = Echelon::new(field, monomials.len());
                for row in tracked.sorted_rows() {
                    if row[0].0 >= offset {
                        let shifted: SparseVec =
                            row.iter().map(|(c, x)| (c - offset, x.clone())).collect();
                        ideal.insert(&shifted);
                    }
                }
                PieceData::new(ring, monomials, ideal)
            })
            .collect();
        Ok(Self::assemble(ring.clone(), Vec::new(), pieces, Some(f.clone())))
    }

    fn assemble(ring: Ring, generators: Vec<Poly>, pieces: Vec<PieceData>, dual: Option<DualPoly>) -> Self {
        let mut a = GradedAlgebra {
            standard_graded: true,
            ring,
            generators,
            pieces,
            dual,
        };
        a.standard_graded = a.ring.has_unit_weights()
            || GradedStructure::generators(&a).iter().all(|(d, _)| *d == 1);
        a
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Generators as supplied (empty when built from a dual generator).
    pub fn given_generators(&self) -> &[Poly] {
        &self.generators
    }

    /// The dual generator this algebra was built from, if any.
    pub fn stored_dual_generator(&self) -> Option<&DualPoly> {
        self.dual.as_ref()
    }

    pub fn hilbert_series_text(&self) -> String {
        let mut parts = Vec::new();
        for (i, &h) in self.hilbert_function().iter().enumerate() {
            if h == 0 {
                continue;
            }
            let c = if h == 1 && i > 0 { String::new() } else { h.to_string() };
            parts.push(match i {
                0 => c,
                1 => format!("{c}t"),
                _ => format!("{c}t^{i}"),
            });
        }
        parts.join(" + ")
    }

    /// Standard monomials of degree `d` (empty beyond the top degree).
    pub fn basis(&self, d: usize) -> Vec<Monomial> {
        self.pieces.get(d).map(|p| p.standard_monomials()).unwrap_or_default()
    }

    /// Reduced row basis of I_d over the monomial basis of R_d.
    pub fn ideal_piece(&self, d: usize) -> Matrix {
        match self.pieces.get(d) {
            Some(p) => p.ideal.to_matrix(),
            None => Matrix::identity(self.ring.field(), self.ring.basis(d).len()),
        }
    }

    pub fn ideal_rank(&self, d: usize) -> usize {
        match self.pieces.get(d) {
            Some(p) => p.ideal.rank(),
            None => self.ring.basis(d).len(),
        }
    }

    /// Whether `f` lies in the ideal.
    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).values().all(|v| v.iter().all(|x| x.is_zero()))
    }

    /// Degreewise normal form coordinates; degrees with zero part are omitted.
    pub fn normal_form(&self, f: &Poly) -> BTreeMap<usize, Vec<Scalar>> {
        let mut out = BTreeMap::new();
        for (d, part) in f.homogeneous_components(self.ring.weights()) {
            let d = d as usize;
            if let Some(piece) = self.pieces.get(d) {
                let v = piece.coords(&piece.sparse_of(&part));
                if v.iter().any(|x| !x.is_zero()) {
                    out.insert(d, v);
                }
            }
        }
        out
    }

    /// Coordinates in A_d of a polynomial homogeneous of degree d.
    pub fn coordinates(&self, d: usize, f: &Poly) -> Result<Vec<Scalar>> {
        if !f.is_zero() && self.ring.degree_of(f)? != d {
            return Err(Error::Dimension(format!("expected degree {d}")));
        }
        Ok(match self.pieces.get(d) {
            Some(p) => p.coords(&p.sparse_of(f)),
            None => Vec::new(),
        })
    }

    /// The polynomial sum of coordinates times standard monomials.
    pub fn element(&self, d: usize, coords: &[Scalar]) -> Poly {
        let basis = self.basis(d);
        Poly::from_terms(
            self.ring.nvars(),
            self.ring.field(),
            basis.into_iter().zip(coords.iter().cloned()),
        )
    }

    /// Reduced representative of `f`.
    pub fn reduce(&self, f: &Poly) -> Poly {
        let mut acc = self.ring.zero();
        for (d, v) in self.normal_form(f) {
            acc = acc.add(&self.element(d, &v));
        }
        acc
    }

    /// Matrix of multiplication by homogeneous `f` from A_i to A_{i + deg f}.
    pub fn multiplication_map(&self, f: &Poly, i: usize) -> Result<Matrix> {
        let field = self.ring.field();
        if f.is_zero() {
            return Ok(Matrix::zeros(field, self.dim_of(i), self.dim_of(i)));
        }
        let e = self.ring.degree_of(f)?;
        let top = self.socle_degree();
        if i + e > top || i > top {
            return Err(Error::Dimension(format!(
                "degrees {i} -> {} outside 0..={top}",
                i + e
            )));
        }
        Ok(self.multiply_poly(f, e, i))
    }

    fn multiply_poly(&self, f: &Poly, e: usize, i: usize) -> Matrix {
        let field = self.ring.field();
        let rows = self.dim_of(i + e);
        let Some(target) = self.pieces.get(i + e) else {
            return Matrix::zeros(field, 0, self.dim_of(i));
        };
        let cols: Vec<Vec<Scalar>> = self
            .basis(i)
            .iter()
            .map(|m| {
                let p = f.mul_monomial(m, &field.one());
                let v = target.coords(&target.sparse_of(&p));
                debug_assert_eq!(v.len(), rows);
                v
            })
            .collect();
        Matrix::from_columns(field, rows, &cols)
    }

    /// Multiplication by each variable x_j, from A_i to A_{i + w_j}.
    pub fn variable_action(&self, j: usize, i: usize) -> Matrix {
        self.multiply_poly(&self.ring.var(j), self.ring.weights()[j] as usize, i)
    }

    /// Minimal generators of the ideal, degree by degree up to D + max weight.
    pub fn minimal_generators(&self) -> Vec<Poly> {
        let n = self.ring.nvars();
        let field = self.ring.field();
        let top = self.socle_degree() + self.ring.max_weight() as usize;
        let full: Vec<Option<PieceData>> = (0..=top)
            .map(|d| {
                if d < self.pieces.len() {
                    None
                } else {
                    let mons = self.ring.basis(d);
                    let mut ech = Echelon::new(field, mons.len());
                    for k in 0..mons.len() {
                        ech.insert(&[(k, field.one())]);
                    }
                    Some(PieceData::new(&self.ring, mons, ech))
                }
            })
            .collect();
        let piece = |d: usize| -> &PieceData {
            match &full[d] {
                Some(p) => p,
                None => &self.pieces[d],
            }
        };
        let mut out = Vec::new();
        for d in 1..=top {
            let target = piece(d);
            let mut span = Echelon::new(field, target.monomials.len());
            for j in 0..n {
                let w = self.ring.weights()[j] as usize;
                if w > d {
                    continue;
                }
                let prev = piece(d - w);
                let xj = Monomial::var(n, j);
                for row in prev.ideal.sorted_rows() {
                    let mut v: SparseVec = row
                        .iter()
                        .map(|(c, x)| (target.index[&prev.monomials[*c].mul(&xj)], x.clone()))
                        .collect();
                    v.sort_by_key(|(c, _)| *c);
                    span.insert(&v);
                }
            }
            for row in target.ideal.sorted_rows() {
                if span.insert(row) {
                    out.push(target.row_poly(row));
                }
            }
        }
        out
    }

    /// The ideal generated by the minimal generators.
    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.minimal_generators()).expect("homogeneous generators")
    }

    /// Dual generator spanning (I_D)^perp, normalized to pair to 1 with the
    /// standard monomial of the top degree. Errors unless Gorenstein.
    pub fn dual_generator(&self) -> Result<DualPoly> {
        if let Some(f) = &self.dual {
            return Ok(f.clone());
        }
        if !self.is_gorenstein() {
            return Err(Error::NotGorenstein(format!(
                "socle dimensions {:?}",
                self.socle_dimensions()
            )));
        }
        let top = self.pieces.last().expect("nonempty");
        Ok(top.perp().remove(0))
    }

    /// Basis of (I_d)^perp in the degree d part of the dual.
    pub fn inverse_system(&self, d: usize) -> Vec<DualPoly> {
        match self.pieces.get(d) {
            Some(p) => p.perp(),
            None => Vec::new(),
        }
    }

    /// Minimal generators of the inverse system as an R-module under contraction.
    pub fn inverse_system_generators(&self) -> Vec<DualPoly> {
        let field = self.ring.field();
        let n = self.ring.nvars();
        let mut out = Vec::new();
        for d in (0..self.pieces.len()).rev() {
            let mons = self.ring.basis(d);
            let index: HashMap<Monomial, usize> =
                mons.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            let to_vec = |g: &DualPoly| -> SparseVec {
                let mut v: SparseVec = g.terms().iter().map(|(m, c)| (index[m], c.clone())).collect();
                v.sort_by_key(|(c, _)| *c);
                v
            };
            let mut span = Echelon::new(field, mons.len());
            for j in 0..n {
                let w = self.ring.weights()[j] as usize;
                for g in self.inverse_system(d + w) {
                    let h = contract(&self.ring.var(j), &g).expect("same ring");
                    span.insert(&to_vec(&h));
                }
            }
            for g in self.inverse_system(d) {
                if span.insert(&to_vec(&g)) {
                    out.push(g);
                }
            }
        }
        out
    }

    /// The orientation g -> (g . F)(0) determined by a dual generator.
    pub fn orientation_from_dual(&self, f: &DualPoly) -> Result<Orientation> {
        let d = self.socle_degree();
        let values = self
            .basis(d)
            .iter()
            .map(|m| f.coeff(m))
            .collect::<Vec<_>>();
        Orientation::new(d, values)
    }

    /// Orientation whose value on the top standard monomial is 1; when the
    /// algebra came from a dual generator, the one it determines.
    pub fn orientation(&self) -> Orientation {
        match &self.dual {
            Some(f) => self.orientation_from_dual(f).expect("dual generator pairs nontrivially"),
            None => self.default_orientation(),
        }
    }

    /// Integral of a polynomial under an orientation.
    pub fn integrate(&self, orientation: &Orientation, f: &Poly) -> Scalar {
        match self.normal_form(f).get(&orientation.degree()) {
            Some(v) => orientation.integrate(v),
            None => self.ring.field().zero(),
        }
    }

    /// Normal-form coordinates of a monomial of degree `d`.
    pub(crate) fn monomial_coords(&self, d: usize, m: &Monomial) -> Vec<Scalar> {
        match self.pieces.get(d) {
            Some(p) => p.monomial_coords(m),
            None => Vec::new(),
        }
    }
}

impl GradedStructure for GradedAlgebra {
    fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    fn hilbert_function(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim()).collect()
    }

    fn multiply(&self, i: usize, u: &[Scalar], j: usize, v: &[Scalar]) -> Vec<Scalar> {
        let Some(target) = self.pieces.get(i + j) else {
            return Vec::new();
        };
        let bu = self.basis(i);
        let bv = self.basis(j);
        let mut acc: SparseVec = Vec::new();
        for (a, x) in bu.iter().zip(u) {
            if x.is_zero() {
                continue;
            }
            for (b, y) in bv.iter().zip(v) {
                if y.is_zero() {
                    continue;
                }
                acc.push((target.index[&a.mul(b)], x * y));
            }
        }
        target.coords(&acc)
    }

    fn basis_labels(&self, i: usize) -> Vec<String> {
        self.basis(i).iter().map(|m| self.ring.format_monomial(m)).collect()
    }

    fn multiplication_matrix(&self, i: usize, u: &[Scalar], j: usize) -> Matrix {
        self.multiply_poly(&self.element(i, u), i, j)
    }

    fn generators(&self) -> Vec<Homogeneous> {
        if !self.ring.has_unit_weights() {
            return default_generators(self);
        }
        let n = self.ring.nvars();
        let mut ech = Echelon::new(self.ring.field(), self.dim_of(1));
        (0..n)
            .map(|j| (1, self.monomial_coords(1, &Monomial::var(n, j))))
            .filter(|(_, v)| !v.is_empty() && ech.insert(&sparsify(v)))
            .collect()
    }

    fn is_standard_graded(&self) -> bool {
        self.standard_graded
    }
}

fn default_generators(a: &GradedAlgebra) -> Vec<Homogeneous> {
    struct Plain<'a>(&'a GradedAlgebra);
    impl GradedStructure for Plain<'_> {
        fn field(&self) -> FieldSpec {
            self.0.field()
        }
        fn hilbert_function(&self) -> Vec<usize> {
            self.0.hilbert_function()
        }
        fn multiply(&self, i: usize, u: &[Scalar], j: usize, v: &[Scalar]) -> Vec<Scalar> {
            self.0.multiply(i, u, j, v)
        }
        fn basis_labels(&self, i: usize) -> Vec<String> {
            self.0.basis_labels(i)
        }
    }
    Plain(a).generators()
}
