//! The graded dual R* in the divided-power basis, with the contraction and
//! differentiation actions of R.

use super::monomial::Monomial;
use super::polynomial::Poly;
use crate::error::{Error, Result};
use crate::exactmath::{binomial, FieldSpec, Scalar};

/// Element of R*, with coefficients against divided monomials X^[a].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DualPoly(Poly);

impl DualPoly {
    pub fn zero(nvars: usize, field: FieldSpec) -> Self {
        DualPoly(Poly::zero(nvars, field))
    }

    /// Wraps a polynomial whose coefficients are already divided-power coefficients.
    pub fn from_divided(p: Poly) -> Self {
        DualPoly(p)
    }

    pub fn divided(&self) -> &Poly {
        &self.0
    }

    pub fn into_divided(self) -> Poly {
        self.0
    }

    /// Reads an ordinary polynomial in X through X^a = a!·X^[a].
    pub fn from_ordinary(p: &Poly) -> Result<Self> {
        let field = p.field();
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let f = monomial_factorial(field, m);
            if f.is_zero() {
                return Err(Error::Characteristic {
                    characteristic: field.characteristic(),
                    reason: "ordinary power is zero in the divided-power algebra; write X^[k]".into(),
                });
            }
            terms.push((m.clone(), c * &f));
        }
        Ok(DualPoly(Poly::from_terms(p.nvars(), field, terms)))
    }

    /// The ordinary polynomial in X; needs every a! invertible.
    pub fn to_ordinary(&self) -> Result<Poly> {
        let field = self.field();
        let mut terms = Vec::with_capacity(self.0.len());
        for (m, c) in self.0.terms() {
            let f = monomial_factorial(field, m);
            let inv = f.inv().ok_or_else(|| Error::Characteristic {
                characteristic: field.characteristic(),
                reason: format!("exponent factorial of degree {} vanishes", m.degree()),
            })?;
            terms.push((m.clone(), c * &inv));
        }
        Ok(Poly::from_terms(self.0.nvars(), field, terms))
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    pub fn field(&self) -> FieldSpec {
        self.0.field()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        self.0.terms()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.0.coeff(m)
    }

    pub fn add(&self, other: &DualPoly) -> DualPoly {
        DualPoly(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &DualPoly) -> DualPoly {
        DualPoly(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> DualPoly {
        DualPoly(self.0.scale(c))
    }

    pub fn monic(&self) -> DualPoly {
        DualPoly(self.0.monic())
    }

    /// Whether `self = c·other` for some nonzero scalar c.
    pub fn is_proportional(&self, other: &DualPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.monic() == other.monic()
    }
}

/// a! = Π aᵢ! in the field.
pub fn monomial_factorial(field: FieldSpec, m: &Monomial) -> Scalar {
    let mut acc = field.one();
    for &e in m.exps() {
        acc = &acc * &field.factorial(e as u64);
    }
    acc
}

/// x^a • X^[b] = X^[b−a] when a ≤ b, else 0.
pub fn contract(f: &Poly, g: &DualPoly) -> Result<DualPoly> {
    f.check_compatible(g.divided())?;
    let mut terms = Vec::new();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            if let Some(q) = a.quotient_of(b) {
                terms.push((q, ca * cb));
            }
        }
    }
    Ok(DualPoly(Poly::from_terms(g.nvars(), g.field(), terms)))
}

/// x^a ∘ X^b = b!/(b−a)!·X^{b−a} on ordinary polynomials.
pub fn differentiate(f: &Poly, g: &Poly) -> Result<Poly> {
    f.check_compatible(g)?;
    let field = g.field();
    let p = field.characteristic();
    if p != 0 && g.degree().unwrap_or(0) as u64 >= p {
        return Err(Error::Characteristic {
            characteristic: p,
            reason: format!("differentiation needs p > {}", g.degree().unwrap_or(0)),
        });
    }
    let mut terms = Vec::new();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            if let Some(q) = a.quotient_of(b) {
                let mut c = ca * cb;
                for (&bi, &qi) in b.exps().iter().zip(q.exps()) {
                    for k in (qi + 1)..=bi {
                        c = &c * &field.from_i64(k as i64);
                    }
                }
                terms.push((q, c));
            }
        }
    }
    Ok(Poly::from_terms(g.nvars(), field, terms))
}

/// X^[a]·X^[b] = C(a+b, a)·X^[a+b] componentwise.
pub fn divided_multiply(a: &DualPoly, b: &DualPoly) -> Result<DualPoly> {
    a.divided().check_compatible(b.divided())?;
    let field = a.field();
    let mut terms = Vec::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut c = ca * cb;
            for (&x, &y) in ma.exps().iter().zip(mb.exps()) {
                c = &c * &field.from_bigint(&binomial((x + y) as u64, x as u64));
            }
            terms.push((ma.mul(mb), c));
        }
    }
    Ok(DualPoly(Poly::from_terms(a.nvars(), field, terms)))
}

/// c!·F(a₁,…,aₙ) for L = Σ aᵢxᵢ, which equals L^c ∘ F.
pub fn eval_linear_power(l: &Poly, c: u32, f: &DualPoly) -> Result<Scalar> {
    l.check_compatible(f.divided())?;
    let field = f.field();
    let p = field.characteristic();
    if p != 0 && c as u64 >= p {
        return Err(Error::Characteristic {
            characteristic: p,
            reason: format!("c! vanishes for c = {c}"),
        });
    }
    if l.terms().iter().any(|(m, _)| m.degree() != 1) {
        return Err(Error::NotHomogeneous("expected a linear form".into()));
    }
    if f.terms().iter().any(|(m, _)| m.degree() != c) {
        return Err(Error::NotHomogeneous(format!("expected a form of degree {c}")));
    }
    let point: Vec<Scalar> = (0..l.nvars())
        .map(|i| l.coeff(&Monomial::var(l.nvars(), i)))
        .collect();
    Ok(&field.factorial(c as u64) * &f.to_ordinary()?.evaluate(&point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomial::monomial_basis;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn mono(e: &[u16]) -> Monomial {
        Monomial::new(e)
    }

    fn random_poly(field: FieldSpec, n: usize, coeffs: &[(Vec<u16>, i64)]) -> Poly {
        Poly::from_terms(
            n,
            field,
            coeffs.iter().map(|(e, c)| (Monomial::new(e), field.from_i64(*c))),
        )
    }

    #[test]
    fn contraction_rule() {
        let f = Poly::term(mono(&[1]), q().one());
        let g = DualPoly::from_divided(Poly::term(mono(&[3]), q().one()));
        assert_eq!(
            contract(&f, &g).unwrap(),
            DualPoly::from_divided(Poly::term(mono(&[2]), q().one()))
        );
        assert_eq!(contract(&Poly::one(1, q()), &g).unwrap(), g);
    }

    #[test]
    fn contraction_of_sum_of_squares() {
        let g = DualPoly::from_divided(random_poly(
            q(),
            3,
            &[(vec![2, 0, 0], 1), (vec![0, 2, 0], 1), (vec![0, 0, 2], 1)],
        ));
        let x2 = Poly::term(mono(&[2, 0, 0]), q().one());
        let r = contract(&x2, &g).unwrap();
        assert_eq!(r.divided(), &Poly::one(3, q()));
    }

    #[test]
    fn differentiation_examples() {
        let x = Poly::term(mono(&[1]), q().one());
        let x3 = Poly::term(mono(&[3]), q().one());
        assert_eq!(
            differentiate(&x, &x3).unwrap(),
            Poly::term(mono(&[2]), q().from_i64(3))
        );
        let x2y = Poly::term(mono(&[2, 1]), q().one());
        assert_eq!(differentiate(&x2y, &x2y).unwrap(), Poly::constant(2, q().from_i64(2)));
        let f3 = FieldSpec::prime(3).unwrap();
        let g = Poly::term(mono(&[3]), f3.one());
        assert!(differentiate(&Poly::term(mono(&[1]), f3.one()), &g).is_err());
    }

    #[test]
    fn divided_products() {
        let x = DualPoly::from_divided(Poly::term(mono(&[1]), q().one()));
        assert_eq!(
            divided_multiply(&x, &x).unwrap(),
            DualPoly::from_divided(Poly::term(mono(&[2]), q().from_i64(2)))
        );
        let f2 = FieldSpec::prime(2).unwrap();
        let x2 = DualPoly::from_divided(Poly::term(mono(&[1]), f2.one()));
        assert!(divided_multiply(&x2, &x2).unwrap().is_zero());
        let one = DualPoly::from_divided(Poly::one(1, q()));
        assert_eq!(divided_multiply(&one, &x).unwrap(), x);
    }

    #[test]
    fn linear_power_evaluation() {
        let x = Poly::term(mono(&[1]), q().one());
        let x3 = DualPoly::from_ordinary(&Poly::term(mono(&[3]), q().one())).unwrap();
        assert_eq!(eval_linear_power(&x, 3, &x3).unwrap(), q().from_i64(6));
        let l = Poly::linear(q(), &[q().one(), q().one(), q().one()]);
        let f = DualPoly::from_ordinary(&random_poly(
            q(),
            3,
            &[(vec![2, 0, 0], 1), (vec![0, 2, 0], 1), (vec![0, 0, 2], 1)],
        ))
        .unwrap();
        assert_eq!(eval_linear_power(&l, 2, &f).unwrap(), q().from_i64(6));
    }

    #[test]
    fn perfect_pairing_in_each_degree() {
        for d in 0..4 {
            let basis = monomial_basis(3, d);
            for a in &basis {
                for b in &basis {
                    let r = contract(
                        &Poly::term(a.clone(), q().one()),
                        &DualPoly::from_divided(Poly::term(b.clone(), q().one())),
                    )
                    .unwrap();
                    let expected = if a == b { q().one() } else { q().zero() };
                    assert_eq!(r.coeff(&Monomial::one(3)), expected);
                }
            }
        }
    }

    fn term_strategy(n: usize, deg: u16) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
        prop::collection::vec(
            (prop::collection::vec(0..=deg, n), -4i64..=4),
            1..5,
        )
    }

    proptest! {
        #[test]
        fn contraction_is_a_module_action(
            f in term_strategy(2, 2), g in term_strategy(2, 2), h in term_strategy(2, 5)
        ) {
            let f = random_poly(q(), 2, &f);
            let g = random_poly(q(), 2, &g);
            let h = DualPoly::from_divided(random_poly(q(), 2, &h));
            let lhs = contract(&f.mul(&g), &h).unwrap();
            let rhs = contract(&f, &contract(&g, &h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn differentiation_matches_contraction(f in term_strategy(3, 2), g in term_strategy(3, 4)) {
            let f = random_poly(q(), 3, &f);
            let g = random_poly(q(), 3, &g);
            let lhs = DualPoly::from_ordinary(&differentiate(&f, &g).unwrap()).unwrap();
            let rhs = contract(&f, &DualPoly::from_ordinary(&g).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn divided_product_is_ordinary_product(a in term_strategy(2, 3), b in term_strategy(2, 3)) {
            let a = random_poly(q(), 2, &a);
            let b = random_poly(q(), 2, &b);
            let lhs = divided_multiply(
                &DualPoly::from_ordinary(&a).unwrap(),
                &DualPoly::from_ordinary(&b).unwrap(),
            ).unwrap();
            prop_assert_eq!(lhs, DualPoly::from_ordinary(&a.mul(&b)).unwrap());
        }

        #[test]
        fn linear_power_matches_iterated_differentiation(
            a in prop::collection::vec(-5i64..=5, 3),
            f in prop::collection::vec((0u16..=3, 0u16..=3, -3i64..=3), 1..4)
        ) {
            let c = 3u32;
            let terms: Vec<(Vec<u16>, i64)> = f
                .into_iter()
                .filter(|(x, y, _)| x + y <= 3)
                .map(|(x, y, k)| (vec![x, y, 3 - x - y], k))
                .collect();
            let fo = random_poly(q(), 3, &terms);
            let l = Poly::linear(q(), &a.iter().map(|&v| q().from_i64(v)).collect::<Vec<_>>());
            let mut g = fo.clone();
            for _ in 0..c {
                g = differentiate(&l, &g).unwrap();
            }
            let direct = eval_linear_power(&l, c, &DualPoly::from_ordinary(&fo).unwrap()).unwrap();
            prop_assert_eq!(direct, g.coeff(&Monomial::one(3)));
        }
    }
}
