use crate::algebra::{GradedAlgebra, GradedStructure, Ideal, Orientation, Ring};
use crate::error::{Error, Result};
use crate::exactmath::{FieldSpec, Matrix, Scalar};
use crate::poly::Poly;

use super::maps::{homomorphism_matrices, thom_class, AlgebraMap, ThomClass};
use super::pair::joined_names;

/// `Ã = A[ξ] / (ξ K, ξ^n + a_1 ξ^{n-1} + ... + a_{n-1} ξ + λ τ)` for a
/// surjection π: A -> T with kernel K and Thom class τ of degree n.
///
/// An element of degree m is `(a; c_1, ..., c_{n-1})` with a in A_m and c_j
/// in T_{m-j}, standing for `a + Σ ξ^j lift(c_j)`; this is well defined
/// because ξ K = 0.
#[derive(Clone, Debug)]
pub struct BlowupAlgebra {
    pi: AlgebraMap,
    n: usize,
    /// a_1, ..., a_{n-1} as coordinates in A_i.
    coefficients: Vec<Vec<Scalar>>,
    /// π(a_1), ..., π(a_{n-1}).
    images: Vec<Vec<Scalar>>,
    lambda: Scalar,
    thom: ThomClass,
    /// π(τ) in T_n.
    thom_image: Vec<Scalar>,
    sections: Vec<Matrix>,
    hilbert: Vec<usize>,
    orientation: Orientation,
}

/// The constant coefficient as a multiple of the Thom class, if it is one.
pub fn thom_multiple(a: &GradedAlgebra, thom: &ThomClass, constant: &Poly) -> Result<Scalar> {
    let c = a.coordinates(thom.degree, constant)?;
    let Some(k) = thom.coordinates.iter().position(|x| !x.is_zero()) else {
        return Err(Error::Invalid("zero Thom class".into()));
    };
    let lambda = &c[k] / &thom.coordinates[k];
    if c.iter().zip(&thom.coordinates).any(|(x, t)| *x != &lambda * t) {
        return Err(Error::NotGorenstein(
            "the constant coefficient is not a multiple of the Thom class".into(),
        ));
    }
    Ok(lambda)
}

impl BlowupAlgebra {
    /// `coefficients[i - 1]` is a_i, a polynomial of the source ring of degree
    /// i (or zero), for i = 1, ..., n - 1.
    pub fn new(
        pi: &AlgebraMap,
        oa: &Orientation,
        ot: &Orientation,
        coefficients: &[Poly],
        lambda: &Scalar,
    ) -> Result<Self> {
        let (a, t) = (pi.source(), pi.target());
        let (d, k) = (a.socle_degree(), t.socle_degree());
        if d <= k {
            return Err(Error::Invalid(format!("socle degree {d} must exceed {k}")));
        }
        if !pi.is_surjective() {
            return Err(Error::NotSurjective("the blowup needs a surjection".into()));
        }
        if lambda.is_zero() {
            return Err(Error::NotGorenstein("λ = 0 gives a non-Gorenstein algebra".into()));
        }
        let n = d - k;
        if coefficients.len() != n - 1 {
            return Err(Error::Dimension(format!(
                "{} coefficients given, n - 1 = {}",
                coefficients.len(),
                n - 1
            )));
        }
        let mut coords = Vec::new();
        let mut images = Vec::new();
        for (idx, p) in coefficients.iter().enumerate() {
            let i = idx + 1;
            a.ring().check_member(p)?;
            if !p.is_zero() && a.ring().degree_of(p)? != i {
                return Err(Error::Dimension(format!("a_{i} must have degree {i}")));
            }
            let c = a.coordinates(i, p)?;
            images.push(pi.apply(i, &c));
            coords.push(c);
        }
        let thom = thom_class(pi, oa, ot)?;
        let thom_image = pi.apply(n, &thom.coordinates);
        let sections = (0..=k).map(|i| pi.section(i)).collect::<Result<Vec<_>>>()?;
        let ha = a.hilbert_function();
        let ht = t.hilbert_function();
        let hilbert: Vec<usize> = (0..=d)
            .map(|m| ha[m] + (1..n).filter(|&j| j <= m).map(|j| ht.get(m - j).copied().unwrap_or(0)).sum::<usize>())
            .collect();
        let orientation = Orientation::new(d, oa.functional().to_vec())?;
        let b = BlowupAlgebra {
            pi: pi.clone(),
            n,
            coefficients: coords,
            images,
            lambda: lambda.clone(),
            thom,
            thom_image,
            sections,
            hilbert,
            orientation,
        };
        b.check_gorenstein(&b.orientation)?;
        Ok(b)
    }

    pub fn base(&self) -> &GradedAlgebra {
        self.pi.source()
    }

    pub fn center(&self) -> &GradedAlgebra {
        self.pi.target()
    }

    pub fn map(&self) -> &AlgebraMap {
        &self.pi
    }

    /// n = d - k, the degree of f_A.
    pub fn codimension(&self) -> usize {
        self.n
    }

    pub fn thom_class(&self) -> &ThomClass {
        &self.thom
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    /// The orientation of A, read on the top degree A_d of Ã.
    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    /// Length of the T_{m-j} block (zero outside 0..=k).
    fn t_dim(&self, m: usize, j: usize) -> usize {
        if j > m {
            0
        } else {
            self.center().dim_of(m - j)
        }
    }

    /// Splits a degree m vector into `a` and `c_1, ..., c_{n-1}`.
    fn split(&self, m: usize, u: &[Scalar]) -> (Vec<Scalar>, Vec<Vec<Scalar>>) {
        let ha = self.base().dim_of(m);
        let a = u[..ha].to_vec();
        let mut off = ha;
        let mut cs = Vec::new();
        for j in 1..self.n {
            let len = self.t_dim(m, j);
            cs.push(u[off..off + len].to_vec());
            off += len;
        }
        (a, cs)
    }

    /// Coordinates of `(a; c_1, ..., c_{n-1})` in degree m.
    pub fn join(&self, m: usize, a: &[Scalar], cs: &[Vec<Scalar>]) -> Vec<Scalar> {
        let mut v = a.to_vec();
        for c in cs {
            v.extend_from_slice(c);
        }
        debug_assert_eq!(v.len(), self.dim_of(m));
        v
    }

    /// ξ^j times an element of T_{m-j}, in degree m.
    pub fn xi_power(&self, j: usize, m: usize, c: &[Scalar]) -> Vec<Scalar> {
        let field = self.field();
        let a = vec![field.zero(); self.base().dim_of(m)];
        let cs: Vec<Vec<Scalar>> = (1..self.n)
            .map(|l| if l == j { c.to_vec() } else { vec![field.zero(); self.t_dim(m, l)] })
            .collect();
        self.join(m, &a, &cs)
    }

    fn t_mul(&self, p: usize, u: &[Scalar], q: usize, v: &[Scalar]) -> Vec<Scalar> {
        let t = self.center();
        if p + q > t.socle_degree() || u.is_empty() || v.is_empty() {
            return Vec::new();
        }
        t.multiply(p, u, q, v)
    }

    /// `f_A(ξ)` as a polynomial in the source ring extended by ξ (last variable).
    pub fn relation(&self, ring: &Ring) -> Poly {
        let a = self.base();
        let nv = ring.nvars();
        let pos: Vec<usize> = (0..nv - 1).collect();
        let xi = ring.var(nv - 1);
        let mut f = xi.pow(self.n as u32);
        for (idx, c) in self.coefficients.iter().enumerate() {
            let i = idx + 1;
            let ai = a.element(i, c).embed(nv, &pos);
            f = f.add(&ai.mul(&xi.pow((self.n - i) as u32)));
        }
        f.add(&self.thom.element(a).embed(nv, &pos).scale(&self.lambda))
    }

    /// Presentation `A[ξ] / (ξ K + (f_A))` as a quotient of a polynomial ring,
    /// built from generators and relations independently of the basis model.
    pub fn presentation(&self) -> Result<GradedAlgebra> {
        let a = self.base();
        let ring = extend_ring(a.ring(), "xi")?;
        let nv = ring.nvars();
        let pos: Vec<usize> = (0..nv - 1).collect();
        let xi = ring.var(nv - 1);
        let mut gens: Vec<Poly> = a.minimal_generators().iter().map(|g| g.embed(nv, &pos)).collect();
        for i in 0..=a.socle_degree() {
            for kv in self.pi.kernel(i) {
                gens.push(a.element(i, &kv).embed(nv, &pos).mul(&xi));
            }
        }
        gens.push(self.relation(&ring));
        GradedAlgebra::from_ideal(&Ideal::new(&ring, gens)?, Some(a.socle_degree()))
    }

    /// The matrices of the presentation into the basis model, sending the
    /// variables of A to themselves and ξ to `(0; 1, 0, ...)`.
    pub fn presentation_map(&self, presentation: &GradedAlgebra) -> Result<Vec<Matrix>> {
        let a = self.base();
        let field = self.field();
        let mut images = Vec::new();
        for j in 0..a.ring().nvars() {
            let w = a.ring().weights()[j] as usize;
            let v = a.coordinates(w, &a.ring().var(j))?;
            let cs: Vec<Vec<Scalar>> = (1..self.n).map(|l| vec![field.zero(); self.t_dim(w, l)]).collect();
            images.push(self.join(w, &v, &cs));
        }
        images.push(if self.n > 1 {
            self.xi_power(1, 1, &[field.one()])
        } else {
            // ξ = -λτ when n = 1.
            let tau: Vec<Scalar> = self.thom.coordinates.iter().map(|x| -&(x * &self.lambda)).collect();
            self.join(1, &tau, &[])
        });
        homomorphism_matrices(presentation, self, &images)
    }

    /// `T̃ = T[ξ] / (ξ^n + t_1 ξ^{n-1} + ... + λ π(τ))`.
    pub fn exceptional_divisor(&self) -> Result<GradedAlgebra> {
        let t = self.center();
        let coeffs: Vec<Poly> = self
            .images
            .iter()
            .enumerate()
            .map(|(idx, c)| if c.is_empty() { t.ring().zero() } else { t.element(idx + 1, c) })
            .collect();
        let constant = if self.thom_image.is_empty() {
            t.ring().zero()
        } else {
            t.element(self.n, &self.thom_image).scale(&self.lambda)
        };
        exceptional_divisor(t, &coeffs, &constant)
    }

    /// Checks that `π̂: Ã -> T̃` (x -> π(x), ξ -> ξ) is a well-defined
    /// surjection and that `π̂ ∘ β = β_0 ∘ π` on the variables of A.
    pub fn square_commutes(&self) -> Result<bool> {
        let presentation = self.presentation()?;
        let divisor = self.exceptional_divisor()?;
        let a = self.base();
        let t = self.center();
        let nt = divisor.ring().nvars();
        let tpos: Vec<usize> = (0..nt - 1).collect();
        let mut images = Vec::new();
        for j in 0..a.ring().nvars() {
            let w = a.ring().weights()[j] as usize;
            let img = self.pi.images()[j].embed(nt, &tpos);
            images.push(divisor.coordinates(w, &divisor.reduce(&img))?);
        }
        images.push(divisor.coordinates(1, &divisor.ring().var(nt - 1))?);
        let hat = homomorphism_matrices(&presentation, &divisor, &images)?;
        let surjective = (0..=divisor.socle_degree()).all(|i| hat.get(i).is_some_and(|m| m.rank() == divisor.dim_of(i)));
        let t_images = (0..t.ring().nvars())
            .map(|j| {
                let w = t.ring().weights()[j] as usize;
                divisor.coordinates(w, &divisor.reduce(&divisor.ring().var(j)))
            })
            .collect::<Result<Vec<_>>>()?;
        let beta0 = homomorphism_matrices(t, &divisor, &t_images)?;
        let mut agree = true;
        for j in 0..a.ring().nvars() {
            let w = a.ring().weights()[j] as usize;
            let via_blowup = hat[w].mul_vec(&presentation.coordinates(w, &presentation.ring().var(j))?)?;
            let via_center = match beta0.get(w) {
                Some(b) => b.mul_vec(&t.coordinates(w, &self.pi.images()[j])?)?,
                None => vec![self.field().zero(); divisor.dim_of(w)],
            };
            agree &= via_blowup == via_center;
        }
        Ok(surjective && agree)
    }
}

impl GradedStructure for BlowupAlgebra {
    fn field(&self) -> FieldSpec {
        self.base().field()
    }

    fn hilbert_function(&self) -> Vec<usize> {
        self.hilbert.clone()
    }

    fn multiply(&self, i: usize, u: &[Scalar], j: usize, v: &[Scalar]) -> Vec<Scalar> {
        let m = i + j;
        if m >= self.hilbert.len() {
            return Vec::new();
        }
        let field = self.field();
        let (a, t, n) = (self.base(), self.center(), self.n);
        let (ua, uc) = self.split(i, u);
        let (va, vc) = self.split(j, v);
        let mut prod_a = a.multiply(i, &ua, j, &va);
        if prod_a.is_empty() {
            prod_a = vec![field.zero(); a.dim_of(m)];
        }
        // c[l] is the coefficient of ξ^l, in T_{m-l}, for l = 1, ..., 2n - 2.
        let mut c: Vec<Vec<Scalar>> = (0..2 * n - 1).map(|l| vec![field.zero(); self.t_dim(m, l)]).collect();
        let add = |target: &mut Vec<Scalar>, x: &[Scalar]| {
            for (p, q) in target.iter_mut().zip(x) {
                *p += q;
            }
        };
        let pu = self.pi.apply(i, &ua);
        let pv = self.pi.apply(j, &va);
        for l in 1..n {
            if l <= j {
                add(&mut c[l], &self.t_mul(i, &pu, j - l, &vc[l - 1]));
            }
            if l <= i {
                add(&mut c[l], &self.t_mul(i - l, &uc[l - 1], j, &pv));
            }
            for r in 1..n {
                if l <= i && r <= j {
                    add(&mut c[l + r], &self.t_mul(i - l, &uc[l - 1], j - r, &vc[r - 1]));
                }
            }
        }
        for l in (n..2 * n - 1).rev() {
            if c[l].iter().all(Scalar::is_zero) {
                continue;
            }
            let e = m - l;
            let coeff = std::mem::take(&mut c[l]);
            // ξ^l c = -Σ_i ξ^{l-i} t_i c - λ ξ^{l-n} τ c.
            for (idx, ti) in self.images.iter().enumerate() {
                let s = idx + 1;
                let p = self.t_mul(s, ti, e, &coeff);
                let neg: Vec<Scalar> = p.iter().map(|x| -x).collect();
                add(&mut c[l - s], &neg);
            }
            if l > n {
                let p = self.t_mul(n, &self.thom_image, e, &coeff);
                let scaled: Vec<Scalar> = p.iter().map(|x| -&(x * &self.lambda)).collect();
                add(&mut c[l - n], &scaled);
            } else {
                let lift = self.sections[e].mul_vec(&coeff).expect("section shape");
                let p = a.multiply(n, &self.thom.coordinates, e, &lift);
                let scaled: Vec<Scalar> = p.iter().map(|x| -&(x * &self.lambda)).collect();
                add(&mut prod_a, &scaled);
            }
        }
        let cs: Vec<Vec<Scalar>> = (1..n).map(|l| std::mem::take(&mut c[l])).collect();
        let _ = t;
        self.join(m, &prod_a, &cs)
    }

    fn basis_labels(&self, i: usize) -> Vec<String> {
        let (a, t) = (self.base(), self.center());
        let mut labels = a.basis_labels(i);
        for j in 1..self.n {
            if j > i {
                continue;
            }
            let xi = if j == 1 { "xi".to_string() } else { format!("xi^{j}") };
            for l in t.basis_labels(i - j) {
                labels.push(if l == "1" { xi.clone() } else { format!("{xi}*{l}") });
            }
        }
        labels
    }
}

/// The ring with one more variable of weight one, named `name` unless taken.
pub(crate) fn extend_ring(ring: &Ring, name: &str) -> Result<Ring> {
    let names = joined_names(ring.names(), &[name.to_string()]);
    let mut weights = ring.weights().to_vec();
    weights.push(1);
    Ring::with_weights(names, weights, ring.field())
}

/// `T[ξ] / (ξ^n + t_1 ξ^{n-1} + ... + t_{n-1} ξ + constant)`, where
/// `coefficients[i - 1]` is t_i in degree i and `constant` has degree n.
pub fn exceptional_divisor(t: &GradedAlgebra, coefficients: &[Poly], constant: &Poly) -> Result<GradedAlgebra> {
    let ring = extend_ring(t.ring(), "xi")?;
    let nv = ring.nvars();
    let pos: Vec<usize> = (0..nv - 1).collect();
    let n = coefficients.len() + 1;
    let xi = ring.var(nv - 1);
    let mut f = xi.pow(n as u32);
    for (idx, c) in coefficients.iter().enumerate() {
        let i = idx + 1;
        t.ring().check_member(c)?;
        if !c.is_zero() && t.ring().degree_of(c)? != i {
            return Err(Error::Dimension(format!("t_{i} must have degree {i}")));
        }
        f = f.add(&c.embed(nv, &pos).mul(&xi.pow((n - i) as u32)));
    }
    t.ring().check_member(constant)?;
    if !constant.is_zero() && t.ring().degree_of(constant)? != n {
        return Err(Error::Dimension(format!("the constant term must have degree {n}")));
    }
    f = f.add(&constant.embed(nv, &pos));
    let mut gens: Vec<Poly> = t.minimal_generators().iter().map(|g| g.embed(nv, &pos)).collect();
    gens.push(f);
    GradedAlgebra::from_ideal(&Ideal::new(&ring, gens)?, Some(t.socle_degree() + n - 1))
}

/// Blowup with the constant coefficient given as an element of A_n, which
/// must be a nonzero multiple of the Thom class.
pub fn blowup(
    pi: &AlgebraMap,
    oa: &Orientation,
    ot: &Orientation,
    coefficients: &[Poly],
    constant: &Poly,
) -> Result<BlowupAlgebra> {
    let thom = thom_class(pi, oa, ot)?;
    let lambda = thom_multiple(pi.source(), &thom, constant)?;
    BlowupAlgebra::new(pi, oa, ot, coefficients, &lambda)
}
