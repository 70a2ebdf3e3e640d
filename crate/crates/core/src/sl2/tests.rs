use proptest::prelude::*;

use super::*;
use crate::algebra::{GradedAlgebra, Ideal, Ring};
use crate::lefschetz::{jordan_type, slpn_generic, GenericityConfig};

fn q() -> FieldSpec {
    FieldSpec::RATIONALS
}

fn quotient(names: &[&str], gens: &[&str]) -> GradedAlgebra {
    let r = Ring::new(names, q()).unwrap();
    GradedAlgebra::from_ideal(&Ideal::parse(&r, gens).unwrap(), None).unwrap()
}

fn ones(n: usize) -> Vec<Scalar> {
    vec![q().one(); n]
}

fn eigenvalues(h: &Matrix) -> Vec<i64> {
    weights(&weight_decomposition(h).unwrap())
}

#[test]
fn standard_two_dimensional_triple() {
    let t = Sl2Triple {
        e: Matrix::from_i64(q(), &[&[0, 1], &[0, 0]]),
        h: Matrix::from_i64(q(), &[&[1, 0], &[0, -1]]),
        f: Matrix::from_i64(q(), &[&[0, 0], &[1, 0]]),
    };
    assert!(verify_triple(&t).unwrap());
    // The model on linear forms is the same triple in the basis (y, x).
    let m = model_rep(1);
    let swap = Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]);
    let conj = |a: &Matrix| swap.mul(a).unwrap().mul(&swap).unwrap();
    assert_eq!(conj(&m.e), t.e);
    assert_eq!(conj(&m.h), t.h);
    assert_eq!(conj(&m.f), t.f);
    let zero = Sl2Triple {
        e: Matrix::zeros(q(), 1, 1),
        h: Matrix::zeros(q(), 1, 1),
        f: Matrix::zeros(q(), 1, 1),
    };
    assert!(verify_triple(&zero).unwrap());
    let bad = Sl2Triple {
        h: Matrix::zeros(q(), 2, 2),
        ..t.clone()
    };
    assert!(!verify_triple(&bad).unwrap());
    let mismatched = Sl2Triple {
        h: Matrix::zeros(q(), 3, 3),
        ..t
    };
    assert!(verify_triple(&mismatched).is_err());
}

#[test]
fn model_representations() {
    for d in 0..=6 {
        let t = model_rep(d);
        assert!(verify_triple(&t).unwrap());
        // y^d, E y^d, ..., E^d y^d span.
        let mut v = vec![q().zero(); d + 1];
        v[0] = q().one();
        let mut cols = vec![v.clone()];
        for _ in 0..d {
            v = t.e.mul_vec(&v).unwrap();
            cols.push(v.clone());
        }
        assert_eq!(Matrix::from_columns(q(), d + 1, &cols).rank(), d + 1);
    }
    assert_eq!(eigenvalues(&model_rep(3).h), vec![-3, -1, 1, 3]);
    let w = weight_decomposition(&model_rep(2).h).unwrap();
    assert_eq!(w.iter().map(|(k, b)| (*k, b.len())).collect::<Vec<_>>(), vec![(-2, 1), (0, 1), (2, 1)]);
    assert_eq!(eigenvalues(&Matrix::zeros(q(), 1, 1)), vec![0]);
}

#[test]
fn peeling_weights() {
    assert_eq!(irreducible_decomposition(&[2, 1, 1, 0, -1, -1, -2]).unwrap(), vec![3, 2, 2]);
    assert_eq!(irreducible_decomposition(&[0]).unwrap(), vec![1]);
    assert_eq!(irreducible_decomposition(&[-2, 0, 2, 0]).unwrap(), vec![3, 1]);
    assert!(irreducible_decomposition(&[2, 0]).is_err());
    assert!(irreducible_decomposition(&[-1]).is_err());
}

#[test]
fn triples_from_lefschetz_elements() {
    let a = quotient(&["x"], &["x^3"]);
    let t = triple_from_lefschetz(&a, &ones(1)).unwrap();
    assert!(verify_triple(&t).unwrap());
    assert_eq!(eigenvalues(&t.h), vec![-2, 0, 2]);

    let b = quotient(&["x", "y"], &["x^2", "y^2"]);
    let t = triple_from_lefschetz(&b, &ones(2)).unwrap();
    assert!(verify_triple(&t).unwrap());
    assert_eq!(eigenvalues(&t.h), vec![-2, 0, 0, 2]);
    assert_eq!(irreducible_decomposition(&eigenvalues(&t.h)).unwrap(), vec![3, 1]);

    let c = quotient(&["x", "y", "z"], &["x^2", "y^2", "z^2"]);
    let t = triple_from_lefschetz(&c, &ones(3)).unwrap();
    assert_eq!(eigenvalues(&t.h), vec![-3, -1, -1, -1, 1, 1, 1, 3]);

    let d = quotient(&["x", "y"], &["x^2", "x*y", "y^5"]);
    assert!(triple_from_lefschetz(&d, &ones(2)).is_err());
    let f2 = FieldSpec::prime(3).unwrap();
    let r = Ring::new(&["x"], f2).unwrap();
    let e = GradedAlgebra::from_ideal(&Ideal::parse(&r, &["x^2"]).unwrap(), None).unwrap();
    assert!(matches!(triple_from_lefschetz(&e, &[f2.one()]), Err(Error::Characteristic { .. })));
}

#[test]
fn weight_grading_criterion() {
    assert!(slpn_via_weights(&quotient(&["x", "y", "z"], &["x^2", "y^3", "z^3"]), &ones(3)).unwrap());
    assert!(!slpn_via_weights(&quotient(&["x", "y"], &["x^2", "x*y", "y^5"]), &ones(2)).unwrap());
    assert!(slpn_via_weights(&quotient(&["x"], &["x^2"]), &ones(1)).unwrap());
    // A triple exists for any L; only its weights reveal the property.
    let a = quotient(&["x", "y"], &["x^2", "x*y", "y^5"]);
    let t = triple_for_element(&LinearActions::new(&a), &ones(2)).unwrap();
    assert!(verify_triple(&t).unwrap());
}

fn monomial_ci() -> impl Strategy<Value = (Vec<u32>, Vec<i64>)> {
    (1usize..=3).prop_flat_map(|n| {
        (
            prop::collection::vec(2u32..=4, n),
            prop::collection::vec(-2i64..=3, n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn triples_and_weights_agree_with_direct_checks((degrees, coeffs) in monomial_ci()) {
        let names = &["x", "y", "z"][..degrees.len()];
        let gens: Vec<String> = names.iter().zip(&degrees).map(|(x, d)| format!("{x}^{d}")).collect();
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        let a = quotient(names, &refs);
        let l: Vec<Scalar> = coeffs.iter().map(|&c| q().from_i64(c)).collect();
        let direct = slpn_for_element(&a, &l).holds();
        prop_assert_eq!(slpn_via_weights(&a, &l).unwrap(), direct);
        let t = triple_for_element(&LinearActions::new(&a), &l).unwrap();
        prop_assert!(verify_triple(&t).unwrap());
        let w = weight_decomposition(&t.h).unwrap();
        let mut irr = irreducible_decomposition(&weights(&w)).unwrap();
        irr.sort_unstable_by(|x, y| y.cmp(x));
        prop_assert_eq!(irr, jordan_type(&a, &l).parts);
        for (k, basis) in &w {
            prop_assert_eq!(basis.len(), w.get(&-k).map_or(0, Vec::len));
            if *k > 0 {
                // E^k maps W_{-k} isomorphically onto W_k.
                let src = &w[&-k];
                let mut ek = Matrix::identity(q(), t.e.rows());
                for _ in 0..*k {
                    ek = t.e.mul(&ek).unwrap();
                }
                let images: Vec<Vec<Scalar>> = src.iter().map(|v| ek.mul_vec(v).unwrap()).collect();
                prop_assert_eq!(Matrix::from_columns(q(), t.e.rows(), &images).rank(), src.len());
            }
        }
        let dims = |parity: i64| -> Vec<usize> {
            w.iter().filter(|(k, _)| k.rem_euclid(2) == parity).map(|(_, b)| b.len()).collect()
        };
        prop_assert!(crate::lefschetz::unimodal(&dims(0)) && crate::lefschetz::unimodal(&dims(1)));
        if direct {
            prop_assert!(slpn_generic(&a, &GenericityConfig::default()).holds());
        }
    }
}
