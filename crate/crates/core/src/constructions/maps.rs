use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{GradedAlgebra, GradedStructure, Ideal, Orientation, Ring};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar};
use crate::poly::{contract, DualPoly, Monomial, Poly};

/// The algebra F, with no variables.
pub fn field_algebra(field: crate::exactmath::FieldSpec) -> GradedAlgebra {
    let ring = Ring::new(&[], field).expect("empty ring");
    GradedAlgebra::from_ideal(&Ideal::new(&ring, Vec::new()).expect("no generators"), None)
        .expect("F is artinian")
}

/// Same ring and same ideal in every degree.
pub(crate) fn same_algebra(a: &GradedAlgebra, b: &GradedAlgebra) -> bool {
    a.ring() == b.ring()
        && a.hilbert_function() == b.hilbert_function()
        && (0..=a.socle_degree()).all(|d| a.ideal_piece(d) == b.ideal_piece(d))
}

/// Images of monomials of `ring` in `target`, where variable j goes to
/// `images[j]` in degree `weight(j)`. Empty vectors stand for zero beyond the top.
struct Evaluator<'a, S: ?Sized> {
    target: &'a S,
    ring: &'a Ring,
    images: &'a [Vec<Scalar>],
    cache: HashMap<Monomial, Vec<Scalar>>,
}

impl<'a, S: GradedStructure + ?Sized> Evaluator<'a, S> {
    fn new(target: &'a S, ring: &'a Ring, images: &'a [Vec<Scalar>]) -> Self {
        Evaluator {
            target,
            ring,
            images,
            cache: HashMap::new(),
        }
    }

    fn monomial(&mut self, m: &Monomial) -> Vec<Scalar> {
        if let Some(v) = self.cache.get(m) {
            return v.clone();
        }
        let out = match m.exps().iter().position(|&e| e > 0) {
            None => self.target.unit(),
            Some(j) => {
                let rest = Monomial::var(m.nvars(), j).quotient_of(m).expect("divides");
                let r = self.monomial(&rest);
                let w = self.ring.weights()[j] as usize;
                let deg = rest.weighted_degree(self.ring.weights()) as usize;
                if r.is_empty() || self.images[j].is_empty() {
                    Vec::new()
                } else {
                    self.target.multiply(w, &self.images[j], deg, &r)
                }
            }
        };
        self.cache.insert(m.clone(), out.clone());
        out
    }

    /// Image of a homogeneous polynomial of degree `d`, as a vector of length dim_d.
    fn poly(&mut self, d: usize, f: &Poly) -> Vec<Scalar> {
        let field = self.target.field();
        let mut acc = vec![field.zero(); self.target.dim_of(d)];
        for (m, c) in f.terms() {
            let v = self.monomial(m);
            for (a, x) in acc.iter_mut().zip(&v) {
                *a += &(c * x);
            }
        }
        acc
    }
}

/// Per-degree matrices (over the standard monomial bases of `source`) of the
/// homomorphism sending variable j to `images[j]`, an element of degree
/// `weight(j)` of `target`. Errors unless the ideal of `source` maps to zero.
pub fn homomorphism_matrices<S: GradedStructure + ?Sized>(
    source: &GradedAlgebra,
    target: &S,
    images: &[Vec<Scalar>],
) -> Result<Vec<Matrix>> {
    let ring = source.ring();
    let field = ring.field();
    if target.field() != field {
        return Err(Error::FieldMismatch(format!("{} vs {}", field, target.field())));
    }
    if images.len() != ring.nvars() {
        return Err(Error::Dimension(format!(
            "{} images for {} variables",
            images.len(),
            ring.nvars()
        )));
    }
    for (j, v) in images.iter().enumerate() {
        let w = ring.weights()[j] as usize;
        if v.len() != target.dim_of(w) {
            return Err(Error::Dimension(format!(
                "image of `{}` has {} coordinates, degree {w} has {}",
                ring.names()[j],
                v.len(),
                target.dim_of(w)
            )));
        }
    }
    let mut ev = Evaluator::new(target, ring, images);
    let gens = if source.given_generators().is_empty() {
        source.minimal_generators()
    } else {
        source.given_generators().to_vec()
    };
    for g in &gens {
        let d = ring.degree_of(g)?;
        if ev.poly(d, g).iter().any(|x| !x.is_zero()) {
            return Err(Error::IllDefinedMap(format!("{} does not map to zero", ring.format(g))));
        }
    }
    // Everything above the top degree of the source is zero there.
    let top = source.socle_degree();
    let wmax = ring.max_weight() as usize;
    for d in top + 1..=(top + wmax).min(target.socle_degree()) {
        for m in ring.basis(d) {
            if ev.monomial(&m).iter().any(|x| !x.is_zero()) {
                return Err(Error::IllDefinedMap(format!(
                    "{} vanishes in the source but not in the target",
                    ring.format_monomial(&m)
                )));
            }
        }
    }
    Ok((0..=top)
        .map(|i| {
            let columns: Vec<Vec<Scalar>> = source.basis(i).iter().map(|m| ev.monomial(m)).collect();
            let rows = target.dim_of(i);
            let columns: Vec<Vec<Scalar>> = columns
                .into_iter()
                .map(|c| if c.is_empty() { vec![field.zero(); rows] } else { c })
                .collect();
            Matrix::from_columns(field, rows, &columns)
        })
        .collect())
}

/// A graded algebra homomorphism between quotients of polynomial rings.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: GradedAlgebra,
    target: GradedAlgebra,
    images: Vec<Poly>,
    matrices: Vec<Matrix>,
    surjective: bool,
}

impl AlgebraMap {
    /// Sends source variable j to `images[j]`, a polynomial in the target ring
    /// that is zero or homogeneous of the variable's weight.
    pub fn new(source: &GradedAlgebra, target: &GradedAlgebra, images: &[Poly]) -> Result<Self> {
        let ring = source.ring();
        if images.len() != ring.nvars() {
            return Err(Error::Dimension(format!(
                "{} images for {} variables",
                images.len(),
                ring.nvars()
            )));
        }
        let mut coords = Vec::with_capacity(images.len());
        for (j, p) in images.iter().enumerate() {
            target.ring().check_member(p)?;
            let w = ring.weights()[j] as usize;
            if !p.is_zero() && target.ring().degree_of(p)? != w {
                return Err(Error::Dimension(format!(
                    "image of `{}` must have degree {w}",
                    ring.names()[j]
                )));
            }
            coords.push(target.coordinates(w, p)?);
        }
        let matrices = homomorphism_matrices(source, target, &coords)?;
        let surjective = (0..=target.socle_degree())
            .all(|i| matrices.get(i).is_some_and(|m| m.rank() == target.dim_of(i)));
        Ok(AlgebraMap {
            source: source.clone(),
            target: target.clone(),
            images: images.iter().map(|p| target.reduce(p)).collect(),
            matrices,
            surjective,
        })
    }

    /// Parses `x -> z; y -> 0` (an optional `map:` prefix, `;` or newlines
    /// between entries). Every source variable needs an image.
    pub fn parse(source: &GradedAlgebra, target: &GradedAlgebra, text: &str) -> Result<Self> {
        let ring = source.ring();
        let body = text.trim().strip_prefix("map:").unwrap_or(text);
        let mut images: Vec<Option<Poly>> = vec![None; ring.nvars()];
        for (line_no, line) in body.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for entry in line.split(';') {
                let entry = entry.trim();
                if entry.is_empty() {
                    continue;
                }
                let parse_err = |message: String| Error::Parse {
                    line: line_no + 1,
                    column: 1,
                    message,
                };
                let (lhs, rhs) = entry
                    .split_once("->")
                    .ok_or_else(|| parse_err(format!("expected `var -> image` in `{entry}`")))?;
                let name = lhs.trim();
                let j = ring
                    .variable_index(name)
                    .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                if images[j].is_some() {
                    return Err(parse_err(format!("`{name}` mapped twice")));
                }
                images[j] = Some(target.ring().parse(rhs.trim())?);
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(j, p)| p.ok_or_else(|| Error::Invalid(format!("no image for `{}`", ring.names()[j]))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, &images)
    }

    pub fn identity(a: &GradedAlgebra) -> Self {
        let images: Vec<Poly> = (0..a.ring().nvars()).map(|j| a.ring().var(j)).collect();
        Self::new(a, a, &images).expect("identity is well defined")
    }

    /// The canonical projection onto A_0 = F.
    pub fn augmentation(a: &GradedAlgebra) -> Self {
        let f = field_algebra(a.field());
        let images = vec![f.ring().zero(); a.ring().nvars()];
        Self::new(a, &f, &images).expect("augmentation is well defined")
    }

    pub fn source(&self) -> &GradedAlgebra {
        &self.source
    }

    pub fn target(&self) -> &GradedAlgebra {
        &self.target
    }

    /// Reduced images of the source variables.
    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// Matrix from A_i to T_i (zero rows beyond the top of T).
    pub fn matrix(&self, i: usize) -> Matrix {
        match self.matrices.get(i) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.source.field(), self.target.dim_of(i), 0),
        }
    }

    pub fn apply(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        match self.matrices.get(i) {
            Some(m) => m.mul_vec(v).expect("coordinates of the right length"),
            None => Vec::new(),
        }
    }

    /// Image of a polynomial of the source ring, reduced in the target.
    pub fn apply_poly(&self, f: &Poly) -> Poly {
        if self.images.is_empty() {
            return self.target.reduce(&self.target.ring().constant(f.coeff(&Monomial::one(0))));
        }
        self.target.reduce(&f.substitute(&self.images))
    }

    /// Basis of the kernel in degree i.
    pub fn kernel(&self, i: usize) -> Vec<Vec<Scalar>> {
        self.matrix(i).kernel_basis()
    }

    /// A right inverse T_i -> A_i, fixed by the pivot columns of the reduced
    /// echelon form. Requires surjectivity in degree i.
    pub fn section(&self, i: usize) -> Result<Matrix> {
        let m = self.matrix(i);
        let field = self.source.field();
        let (_, pivots) = m.rref();
        if pivots.len() != m.rows() {
            return Err(Error::NotSurjective(format!("degree {i}")));
        }
        let square = m.select_columns(&pivots);
        let inv = square.inverse().expect("pivot columns are independent");
        let mut s = Matrix::zeros(field, m.cols(), m.rows());
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..m.rows() {
                s.set(p, c, inv.get(r, c).clone());
            }
        }
        Ok(s)
    }
}

/// The element τ of A_{d-k} with `∫_A(τ a) = ∫_T(π(a))` for every a.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThomClass {
    pub degree: usize,
    pub coordinates: Vec<Scalar>,
}

impl ThomClass {
    pub fn element(&self, a: &GradedAlgebra) -> Poly {
        a.element(self.degree, &self.coordinates)
    }
}

fn thom_degree(pi: &AlgebraMap, oa: &Orientation, ot: &Orientation) -> Result<(usize, usize)> {
    let (d, k) = (oa.degree(), ot.degree());
    if d != pi.source().socle_degree() || k != pi.target().socle_degree() {
        return Err(Error::Invalid("orientations must live in the top degrees".into()));
    }
    if d < k {
        return Err(Error::Invalid(format!("socle degree {d} of the source is below {k}")));
    }
    Ok((d, k))
}

/// Solves `∫_A(τ a) = ∫_T(π(a))` over the basis a of A_k.
pub fn thom_class(pi: &AlgebraMap, oa: &Orientation, ot: &Orientation) -> Result<ThomClass> {
    let (d, k) = thom_degree(pi, oa, ot)?;
    let a = pi.source();
    let n = d - k;
    let rows = (0..a.dim_of(k))
        .map(|j| {
            let ej = a.basis_vector(k, j);
            (0..a.dim_of(n))
                .map(|s| oa.integrate(&a.multiply(n, &a.basis_vector(n, s), k, &ej)))
                .collect()
        })
        .collect();
    let system = Matrix::from_rows(a.field(), a.dim_of(n), rows);
    let rhs: Vec<Scalar> = (0..a.dim_of(k))
        .map(|j| ot.integrate(&pi.apply(k, &a.basis_vector(k, j))))
        .collect();
    let coordinates = system
        .solve(&rhs)?
        .ok_or_else(|| Error::Inconsistent("no Thom class for these orientations".into()))?;
    let tau = ThomClass { degree: n, coordinates };
    if system.rank() < a.dim_of(n) {
        return Err(Error::NotGorenstein("the Thom class is not unique".into()));
    }
    Ok(tau)
}

/// The same class through contraction: with `F_A = Σ ∫_A(m) X^[m]` over
/// monomials of degree d and `H = Σ ∫_T(π(m)) X^[m]` over degree k,
/// τ is the element of A_{d-k} with `τ . F_A = H`.
pub fn thom_class_by_contraction(pi: &AlgebraMap, oa: &Orientation, ot: &Orientation) -> Result<ThomClass> {
    let (d, k) = thom_degree(pi, oa, ot)?;
    let a = pi.source();
    let ring = a.ring();
    let field = ring.field();
    let n = ring.nvars();
    let dual_of = |deg: usize, value: &dyn Fn(&Poly) -> Scalar| -> DualPoly {
        let terms: Vec<(Monomial, Scalar)> =
            ring.basis(deg).into_iter().map(|m| {
                let v = value(&ring.monomial_poly(&m));
                (m, v)
            }).collect();
        DualPoly::from_divided(Poly::from_terms(n, field, terms))
    };
    let fa = dual_of(d, &|m| a.integrate(oa, m));
    let h = dual_of(k, &|m| {
        let image = pi.apply_poly(m);
        pi.target().integrate(ot, &image)
    });
    let monomials = ring.basis(k);
    let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let as_vector = |g: &DualPoly| -> Vec<Scalar> {
        let mut v = vec![field.zero(); monomials.len()];
        for (m, c) in g.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    let columns: Vec<Vec<Scalar>> = a
        .basis(d - k)
        .iter()
        .map(|s| Ok(as_vector(&contract(&ring.monomial_poly(s), &fa)?)))
        .collect::<Result<_>>()?;
    let system = Matrix::from_columns(field, monomials.len(), &columns);
    let coordinates = system
        .solve(&as_vector(&h))?
        .ok_or_else(|| Error::Inconsistent("no τ with τ . F = H".into()))?;
    Ok(ThomClass { degree: d - k, coordinates })
}
