use std::collections::{BTreeMap, HashMap};

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::exactmath::{FieldSpec, Scalar};

/// Polynomial with terms sorted largest monomial first and no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    field: FieldSpec,
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero(nvars: usize, field: FieldSpec) -> Self {
        Poly {
            nvars,
            field,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let field = c.field();
        Self::term(Monomial::one(nvars), c).with_field(field)
    }

    fn with_field(mut self, field: FieldSpec) -> Self {
        self.field = field;
        self
    }

    pub fn one(nvars: usize, field: FieldSpec) -> Self {
        Self::constant(nvars, field.one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let field = c.field();
        let nvars = m.nvars();
        let terms = if c.is_zero() { vec![] } else { vec![(m, c)] };
        Poly {
            nvars,
            field,
            terms,
        }
    }

    pub fn var(nvars: usize, i: usize, field: FieldSpec) -> Self {
        Self::term(Monomial::var(nvars, i), field.one())
    }

    /// Linear form Σ cᵢxᵢ.
    pub fn linear(field: FieldSpec, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            field,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    /// Combines like terms and drops zeros.
    pub fn from_terms(
        nvars: usize,
        field: FieldSpec,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(e) => *e += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(nvars, field, acc)
    }

    fn from_map(nvars: usize, field: FieldSpec, acc: HashMap<Monomial, Scalar>) -> Self {
        let mut terms: Vec<(Monomial, Scalar)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly {
            nvars,
            field,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The common weighted degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u32> {
        let d = self.terms.first()?.0.weighted_degree(weights);
        self.terms
            .iter()
            .all(|(m, _)| m.weighted_degree(weights) == d)
            .then_some(d)
    }

    pub fn homogeneous_components(&self, weights: &[u32]) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weighted_degree(weights))
                .or_default()
                .push((m.clone(), c.clone()));
        }
        out.into_iter()
            .map(|(d, terms)| {
                (
                    d,
                    Poly {
                        nvars: self.nvars,
                        field: self.field,
                        terms,
                    },
                )
            })
            .collect()
    }

    pub fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!(
                "{} variables against {}",
                self.nvars, other.nvars
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} and {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.combine(other, true)
    }

    fn combine(&self, other: &Poly, negate: bool) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sign = |c: &Scalar| if negate { -c } else { c.clone() };
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 > b[j].0) {
                terms.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 > a[i].0 {
                terms.push((b[j].0.clone(), sign(&b[j].1)));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    terms.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m, c);
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, self.field, acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars, self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = &t * &x.pow(e as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Replaces variable i by `images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let target_n = images.first().map_or(0, |p| p.nvars);
        let mut acc = Poly::zero(target_n, self.field);
        let mut cache: HashMap<(usize, u16), Poly> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_n, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e as u32))
                    .clone();
                t = t.mul(&p);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Re-indexes variables into a larger ring: variable i goes to `positions[i]`.
    pub fn embed(&self, target_n: usize, positions: &[usize]) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u16; target_n];
            for (i, &x) in m.exps().iter().enumerate() {
                e[positions[i]] = x;
            }
            (Monomial::new(&e), c.clone())
        });
        Poly::from_terms(target_n, self.field, terms)
    }

    pub fn partial_derivative(&self, i: usize) -> Poly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exps()[i];
            if e == 0 {
                return None;
            }
            let mut ex = m.exps().to_vec();
            ex[i] -= 1;
            Some((Monomial::new(&ex), c * &self.field.from_i64(e as i64)))
        });
        Poly::from_terms(self.nvars, self.field, terms)
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.terms.first()?;
        let inv = lc.inv()?;
        let mut r = self.clone();
        let mut q: Vec<(Monomial, Scalar)> = Vec::new();
        while let Some((m, c)) = r.terms.first().cloned() {
            let t = lm.quotient_of(&m)?;
            let coef = &c * &inv;
            r = r.sub(&d.mul_monomial(&t, &coef));
            q.push((t, coef));
        }
        Some(Poly::from_terms(self.nvars, self.field, q))
    }

    pub fn variables_used(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exps()[i]).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn x(i: usize) -> Poly {
        Poly::var(3, i, q())
    }

    #[test]
    fn arithmetic_and_exact_division() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(2).scale(&q().from_i64(2)));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(p.add(&Poly::one(3, q())).div_exact(&a), None);
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn substitution_and_evaluation() {
        let p = x(0).mul(&x(1)).add(&x(2).pow(2));
        let images = vec![x(1), x(1), Poly::zero(3, q())];
        assert_eq!(p.substitute(&images), x(1).pow(2));
        let pt = vec![q().from_i64(2), q().from_i64(3), q().from_i64(-1)];
        assert_eq!(p.evaluate(&pt), q().from_i64(7));
    }

    #[test]
    fn homogeneity() {
        let p = x(0).mul(&x(1)).add(&x(2));
        assert_eq!(p.homogeneous_degree(&[1, 1, 1]), None);
        assert_eq!(p.homogeneous_degree(&[1, 1, 2]), Some(2));
        assert_eq!(p.homogeneous_components(&[1, 1, 1]).len(), 2);
    }
}
