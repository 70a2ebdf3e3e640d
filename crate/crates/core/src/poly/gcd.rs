//! Multivariate gcd by recursive primitive remainder sequences.

use std::collections::BTreeMap;

use super::monomial::Monomial;
use super::polynomial::Poly;

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars(), a.field());
    }
    let used_a = a.variables_used();
    let used_b = b.variables_used();
    let v = (0..a.nvars())
        .find(|&i| used_a[i] || used_b[i])
        .expect("non-constant");
    if !used_a[v] {
        return gcd(a, &content(b, v));
    }
    if !used_b[v] {
        return gcd(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, v);
    c.mul(&g).monic()
}

pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Option<Poly> {
    let mut acc: Option<Poly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.monic(),
            Some(g) => gcd(&g, p),
        });
    }
    acc
}

pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.nvars(), a.field());
    }
    let g = gcd(a, b);
    a.mul(b).div_exact(&g).expect("gcd divides").monic()
}

/// Coefficients of `p` as a polynomial in variable `v`.
fn coefficients(p: &Poly, v: usize) -> BTreeMap<u16, Poly> {
    let mut out: BTreeMap<u16, Vec<(Monomial, _)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut e = m.exps().to_vec();
        let k = e[v];
        e[v] = 0;
        out.entry(k).or_default().push((Monomial::new(&e), c.clone()));
    }
    out.into_iter()
        .map(|(k, t)| (k, Poly::from_terms(p.nvars(), p.field(), t)))
        .collect()
}

fn content(p: &Poly, v: usize) -> Poly {
    let coeffs = coefficients(p, v);
    gcd_all(coeffs.values()).expect("nonzero polynomial")
}

fn primitive_part(p: &Poly, v: usize) -> Poly {
    p.div_exact(&content(p, v)).expect("content divides")
}

fn lead(p: &Poly, v: usize) -> (u16, Poly) {
    let coeffs = coefficients(p, v);
    let (k, c) = coeffs.into_iter().next_back().expect("nonzero");
    (k, c)
}

fn pseudo_remainder(a: &Poly, b: &Poly, v: usize) -> Poly {
    let (db, lb) = lead(b, v);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lr) = lead(&r, v);
        if dr < db {
            break;
        }
        let mut e = vec![0u16; a.nvars()];
        e[v] = dr - db;
        let shift = lr.mul_monomial(&Monomial::new(&e), &a.field().one());
        r = r.mul(&lb).sub(&shift.mul(b));
    }
    r
}

fn primitive_prs(a: Poly, b: Poly, v: usize) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one(a.nvars(), a.field());
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

/// Squarefree part in characteristic 0; returned unchanged in characteristic p.
pub fn squarefree_part(f: &Poly) -> Poly {
    if f.is_zero() || f.is_constant() || !f.field().is_rational() {
        return f.monic();
    }
    let mut g = f.clone();
    for i in 0..f.nvars() {
        g = gcd(&g, &f.partial_derivative(i));
    }
    f.div_exact(&g).expect("gcd divides").monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::FieldSpec;
    use crate::poly::parse::parse_poly;

    fn p(s: &str) -> Poly {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        parse_poly(s, &names, FieldSpec::RATIONALS).unwrap()
    }

    #[test]
    fn gcd_of_products() {
        let g = gcd(&p("a*b*c"), &p("2*a*b + 2*a*c"));
        assert_eq!(g, p("a"));
        let f = p("a^2 - b^2");
        assert_eq!(gcd(&f, &p("a^2 + 2*a*b + b^2")), p("a + b"));
        assert_eq!(gcd(&p("a + 1"), &p("b")), p("1"));
        assert_eq!(gcd(&p("0"), &p("3*a")), p("a"));
    }

    #[test]
    fn gcd_with_shared_multivariate_factor() {
        let common = p("a*b - c^2 + a");
        let x = common.mul(&p("a + b + c"));
        let y = common.mul(&p("a - c")).mul(&p("b"));
        assert_eq!(gcd(&x, &y), common.monic());
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_part(&p("a^3*b^2")), p("a*b"));
        assert_eq!(lcm(&p("a^2*b"), &p("a*c")), p("a^2*b*c"));
    }

    #[test]
    fn modular_gcd() {
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let f7 = FieldSpec::prime(7).unwrap();
        let x = parse_poly("a^2 - b^2", &names, f7).unwrap();
        let y = parse_poly("a*b + b^2", &names, f7).unwrap();
        assert_eq!(gcd(&x, &y), parse_poly("a + b", &names, f7).unwrap());
    }
}
