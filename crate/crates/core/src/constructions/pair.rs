use crate::algebra::{GradedAlgebra, GradedStructure, Ideal, Orientation, Ring};
use crate::error::{Error, Result};
use crate::exactmath::{densify, sparsify, Echelon, FieldSpec, Matrix, Scalar};
use crate::poly::Poly;

use super::maps::{same_algebra, thom_class, AlgebraMap, ThomClass};

/// A graded subalgebra of A ⊕ B with componentwise multiplication. The basis
/// of each degree is the reduced echelon basis of the subspace, in
/// coordinates `[a | b]`; the coordinates of a member are its entries at the
/// pivot columns.
#[derive(Clone, Debug)]
pub struct PairAlgebra {
    a: GradedAlgebra,
    b: GradedAlgebra,
    rows: Vec<Vec<Vec<Scalar>>>,
    pivots: Vec<Vec<usize>>,
}

impl PairAlgebra {
    /// The subspaces are given by spanning sets in each degree.
    fn from_spans(a: &GradedAlgebra, b: &GradedAlgebra, spans: Vec<Vec<Vec<Scalar>>>) -> Self {
        let field = a.field();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for (i, span) in spans.into_iter().enumerate() {
            let width = a.dim_of(i) + b.dim_of(i);
            let mut ech = Echelon::new(field, width);
            for v in &span {
                ech.insert(&sparsify(v));
            }
            rows.push(ech.sorted_rows().into_iter().map(|r| densify(field, width, r)).collect());
            pivots.push(ech.pivots());
        }
        while rows.last().is_some_and(|r: &Vec<Vec<Scalar>>| r.is_empty()) {
            rows.pop();
            pivots.pop();
        }
        PairAlgebra {
            a: a.clone(),
            b: b.clone(),
            rows,
            pivots,
        }
    }

    pub fn first(&self) -> &GradedAlgebra {
        &self.a
    }

    pub fn second(&self) -> &GradedAlgebra {
        &self.b
    }

    /// The pair `(a, b)` of an element of degree i.
    pub fn components(&self, i: usize, u: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let field = self.a.field();
        let ha = self.a.dim_of(i);
        let width = ha + self.b.dim_of(i);
        let mut w = vec![field.zero(); width];
        if let Some(rows) = self.rows.get(i) {
            for (x, r) in u.iter().zip(rows) {
                if x.is_zero() {
                    continue;
                }
                for (acc, y) in w.iter_mut().zip(r) {
                    *acc += &(x * y);
                }
            }
        }
        let b = w.split_off(ha);
        (w, b)
    }

    /// Coordinates of `(a, b)`; errors if the pair is not a member.
    pub fn coordinates(&self, i: usize, a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        let Some(pivots) = self.pivots.get(i) else {
            return if w.iter().all(Scalar::is_zero) {
                Ok(Vec::new())
            } else {
                Err(Error::Invalid(format!("nonzero pair beyond the top degree {i}")))
            };
        };
        let u: Vec<Scalar> = pivots.iter().map(|&p| w[p].clone()).collect();
        let (x, y) = self.components(i, &u);
        if x != a || y != b {
            return Err(Error::Invalid(format!("pair is not in the subalgebra in degree {i}")));
        }
        Ok(u)
    }

    /// Coordinates of `(f, g)` for polynomials of degree i in the two rings.
    pub fn pair(&self, i: usize, f: &Poly, g: &Poly) -> Result<Vec<Scalar>> {
        self.coordinates(i, &self.a.coordinates(i, f)?, &self.b.coordinates(i, g)?)
    }
}

impl GradedStructure for PairAlgebra {
    fn field(&self) -> FieldSpec {
        self.a.field()
    }

    fn hilbert_function(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    fn multiply(&self, i: usize, u: &[Scalar], j: usize, v: &[Scalar]) -> Vec<Scalar> {
        let Some(pivots) = self.pivots.get(i + j) else {
            return Vec::new();
        };
        let (ua, ub) = self.components(i, u);
        let (va, vb) = self.components(j, v);
        let field = self.field();
        let pad = |p: Vec<Scalar>, n: usize| if p.is_empty() { vec![field.zero(); n] } else { p };
        let mut w = pad(self.a.multiply(i, &ua, j, &va), self.a.dim_of(i + j));
        w.extend(pad(self.b.multiply(i, &ub, j, &vb), self.b.dim_of(i + j)));
        pivots.iter().map(|&p| w[p].clone()).collect()
    }

    fn basis_labels(&self, i: usize) -> Vec<String> {
        let n = self.rows.get(i).map_or(0, Vec::len);
        (0..n)
            .map(|k| {
                let (a, b) = self.components(i, &self.basis_vector(i, k));
                format!(
                    "({}, {})",
                    self.a.ring().format(&self.a.element(i, &a)),
                    self.b.ring().format(&self.b.element(i, &b))
                )
            })
            .collect()
    }
}

/// `A ×_T B = {(a, b) : π_A(a) = π_B(b)}`, degreewise the kernel of `π_A - π_B`.
pub fn fiber_product(pa: &AlgebraMap, pb: &AlgebraMap) -> Result<PairAlgebra> {
    if !same_algebra(pa.target(), pb.target()) {
        return Err(Error::Invalid("the two maps have different targets".into()));
    }
    let (a, b, t) = (pa.source(), pb.source(), pa.target());
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field(), b.field())));
    }
    let top = a.socle_degree().max(b.socle_degree());
    let mut spans = Vec::new();
    for i in 0..=top {
        let diff = pa.matrix(i).hstack(&pb.matrix(i).scale(&-a.field().one()))?;
        if diff.rank() < t.dim_of(i) {
            return Err(Error::NotSurjective(format!("π_A - π_B in degree {i}")));
        }
        spans.push(diff.kernel_basis());
    }
    Ok(PairAlgebra::from_spans(a, b, spans))
}

/// The quotient of a graded algebra by the principal ideal of one
/// homogeneous element. The basis in each degree is the set of non-pivot
/// coordinates of the reduced ideal piece.
#[derive(Clone, Debug)]
pub struct PrincipalQuotient<S> {
    parent: S,
    generator: (usize, Vec<Scalar>),
    ideal: Vec<Echelon>,
    basis: Vec<Vec<usize>>,
}

impl<S: GradedStructure> PrincipalQuotient<S> {
    pub fn new(parent: S, degree: usize, generator: Vec<Scalar>) -> Result<Self> {
        if generator.len() != parent.dim_of(degree) {
            return Err(Error::Dimension("generator coordinates".into()));
        }
        let h = parent.hilbert_function();
        let field = parent.field();
        let mut ideal = Vec::new();
        let mut basis = Vec::new();
        for i in 0..h.len() {
            let mut ech = Echelon::new(field, h[i]);
            if i >= degree {
                let m = parent.multiplication_matrix(degree, &generator, i - degree);
                for c in 0..m.cols() {
                    ech.insert(&sparsify(&m.column(c)));
                }
            }
            basis.push(ech.non_pivots());
            ideal.push(ech);
        }
        while basis.last().is_some_and(Vec::is_empty) {
            basis.pop();
        }
        Ok(PrincipalQuotient {
            parent,
            generator: (degree, generator),
            ideal,
            basis,
        })
    }

    pub fn parent(&self) -> &S {
        &self.parent
    }

    pub fn generator(&self) -> (usize, &[Scalar]) {
        (self.generator.0, &self.generator.1)
    }

    /// The class of a parent element.
    pub fn project(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let Some(basis) = self.basis.get(i) else {
            return Vec::new();
        };
        let field = self.parent.field();
        let r = densify(field, v.len(), &self.ideal[i].reduce(&sparsify(v)));
        basis.iter().map(|&c| r[c].clone()).collect()
    }

    /// The parent element supported on the basis coordinates.
    pub fn lift(&self, i: usize, u: &[Scalar]) -> Vec<Scalar> {
        let field = self.parent.field();
        let mut v = vec![field.zero(); self.parent.dim_of(i)];
        if let Some(basis) = self.basis.get(i) {
            for (&c, x) in basis.iter().zip(u) {
                v[c] = x.clone();
            }
        }
        v
    }
}

impl<S: GradedStructure> GradedStructure for PrincipalQuotient<S> {
    fn field(&self) -> FieldSpec {
        self.parent.field()
    }

    fn hilbert_function(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    fn multiply(&self, i: usize, u: &[Scalar], j: usize, v: &[Scalar]) -> Vec<Scalar> {
        if i + j >= self.basis.len() {
            return Vec::new();
        }
        let p = self.parent.multiply(i, &self.lift(i, u), j, &self.lift(j, v));
        self.project(i + j, &p)
    }

    fn basis_labels(&self, i: usize) -> Vec<String> {
        let labels = self.parent.basis_labels(i);
        self.basis
            .get(i)
            .map(|b| b.iter().map(|&c| labels[c].clone()).collect())
            .unwrap_or_default()
    }
}

/// `A #_T B`, the fiber product modulo the pair of Thom classes.
#[derive(Clone, Debug)]
pub struct ConnectedSum {
    pub algebra: PrincipalQuotient<PairAlgebra>,
    pub thom_a: ThomClass,
    pub thom_b: ThomClass,
    orientation: Orientation,
}

impl ConnectedSum {
    /// `∫(a, b) = ∫_A a - ∫_B b`, which vanishes on the ideal.
    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    /// Class of the pair `(f, g)` of polynomials of degree i.
    pub fn class_of(&self, i: usize, f: &Poly, g: &Poly) -> Result<Vec<Scalar>> {
        Ok(self.algebra.project(i, &self.algebra.parent().pair(i, f, g)?))
    }
}

impl GradedStructure for ConnectedSum {
    fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    fn hilbert_function(&self) -> Vec<usize> {
        self.algebra.hilbert_function()
    }

    fn multiply(&self, i: usize, u: &[Scalar], j: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.algebra.multiply(i, u, j, v)
    }

    fn basis_labels(&self, i: usize) -> Vec<String> {
        self.algebra.basis_labels(i)
    }
}

pub fn connected_sum(
    pa: &AlgebraMap,
    pb: &AlgebraMap,
    oa: &Orientation,
    ob: &Orientation,
    ot: &Orientation,
) -> Result<ConnectedSum> {
    let (a, b) = (pa.source(), pb.source());
    if a.socle_degree() != b.socle_degree() {
        return Err(Error::Invalid(format!(
            "socle degrees {} and {} differ",
            a.socle_degree(),
            b.socle_degree()
        )));
    }
    let thom_a = thom_class(pa, oa, ot)?;
    let thom_b = thom_class(pb, ob, ot)?;
    let n = thom_a.degree;
    if pa.apply(n, &thom_a.coordinates) != pb.apply(n, &thom_b.coordinates) {
        return Err(Error::Invalid("π_A(τ_A) and π_B(τ_B) differ".into()));
    }
    let fp = fiber_product(pa, pb)?;
    let g = fp.coordinates(n, &thom_a.coordinates, &thom_b.coordinates)?;
    let algebra = PrincipalQuotient::new(fp, n, g)?;
    let d = a.socle_degree();
    let functional = (0..algebra.dim_of(d))
        .map(|k| {
            let (x, y) = algebra.parent().components(d, &algebra.lift(d, &algebra.basis_vector(d, k)));
            &oa.integrate(&x) - &ob.integrate(&y)
        })
        .collect();
    let orientation = Orientation::new(d, functional)?;
    algebra.check_gorenstein(&orientation)?;
    Ok(ConnectedSum {
        algebra,
        thom_a,
        thom_b,
        orientation,
    })
}

/// Variable names of B made distinct from those of A by a numeric suffix.
pub(crate) fn joined_names(first: &[String], second: &[String]) -> Vec<String> {
    let mut names: Vec<String> = first.to_vec();
    for s in second {
        let mut candidate = s.clone();
        let mut k = 2;
        while names.contains(&candidate) || second.iter().any(|o| o != s && *o == candidate) {
            candidate = format!("{s}_{k}");
            k += 1;
        }
        names.push(candidate);
    }
    names
}

/// The ring on the disjoint union of variables, with the embeddings of both.
pub(crate) fn joined_ring(a: &Ring, b: &Ring) -> Result<(Ring, Vec<usize>, Vec<usize>)> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field(), b.field())));
    }
    let names = joined_names(a.names(), b.names());
    let mut weights = a.weights().to_vec();
    weights.extend_from_slice(b.weights());
    let ring = Ring::with_weights(names, weights, a.field())?;
    let na = a.nvars();
    Ok((ring, (0..na).collect(), (na..na + b.nvars()).collect()))
}

fn presentation_over_field(a: &GradedAlgebra, b: &GradedAlgebra, extra: Option<(&Poly, &Poly)>) -> Result<GradedAlgebra> {
    let (ring, ea, eb) = joined_ring(a.ring(), b.ring())?;
    let n = ring.nvars();
    let mut gens = Vec::new();
    for &i in &ea {
        for &j in &eb {
            gens.push(ring.var(i).mul(&ring.var(j)));
        }
    }
    gens.extend(a.minimal_generators().iter().map(|g| g.embed(n, &ea)));
    gens.extend(b.minimal_generators().iter().map(|g| g.embed(n, &eb)));
    if let Some((ta, tb)) = extra {
        gens.push(ta.embed(n, &ea).add(&tb.embed(n, &eb)));
    }
    let top = a.socle_degree().max(b.socle_degree());
    GradedAlgebra::from_ideal(&Ideal::new(&ring, gens)?, Some(top))
}

/// `F[x, y] / ((x_i y_j) + I + I')`.
pub fn fiber_product_over_field(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    presentation_over_field(a, b, None)
}

/// `F[x, y] / ((x_i y_j) + I + I' + (τ_A + τ_B))`, where τ_A and τ_B are the
/// socle elements of integral one.
pub fn connected_sum_over_field(
    a: &GradedAlgebra,
    b: &GradedAlgebra,
    oa: &Orientation,
    ob: &Orientation,
) -> Result<GradedAlgebra> {
    let d = a.socle_degree();
    if d != b.socle_degree() {
        return Err(Error::Invalid(format!("socle degrees {d} and {} differ", b.socle_degree())));
    }
    let pa = AlgebraMap::augmentation(a);
    let pb = AlgebraMap::augmentation(b);
    let ot = pa.target().default_orientation();
    let ta = thom_class(&pa, oa, &ot)?.element(a);
    let tb = thom_class(&pb, ob, &ot)?.element(b);
    presentation_over_field(a, b, Some((&ta, &tb)))
}

/// The pairing matrices of two oriented algebras agree up to an
/// isomorphism given degreewise by `maps` (from the first to the second).
pub fn pairings_correspond<S: GradedStructure + ?Sized, U: GradedStructure + ?Sized>(
    first: &S,
    o1: &Orientation,
    second: &U,
    o2: &Orientation,
    maps: &[Matrix],
) -> Result<bool> {
    let d = o1.degree();
    if o2.degree() != d || maps.len() <= d {
        return Ok(false);
    }
    for i in 0..=d {
        let p1 = first.pairing_matrix(o1, i);
        let p2 = second.pairing_matrix(o2, i);
        let pulled = maps[i].transpose().mul(&p2)?.mul(&maps[d - i])?;
        if pulled != p1 {
            return Ok(false);
        }
    }
    Ok(true)
}
