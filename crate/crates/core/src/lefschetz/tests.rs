use proptest::prelude::*;

use super::*;
use crate::algebra::{GradedAlgebra, GradedStructure, Ideal, Ring};
use crate::exactmath::{FieldSpec, Matrix, Scalar};

fn q() -> FieldSpec {
    FieldSpec::RATIONALS
}

fn quotient(names: &[&str], gens: &[&str], field: FieldSpec) -> GradedAlgebra {
    let r = Ring::new(names, field).unwrap();
    GradedAlgebra::from_ideal(&Ideal::parse(&r, gens).unwrap(), None).unwrap()
}

fn form(a: &GradedAlgebra, text: &str) -> Vec<Scalar> {
    a.coordinates(1, &a.ring().parse(text).unwrap()).unwrap()
}

fn certify() -> GenericityConfig {
    GenericityConfig {
        certify: true,
        ..Default::default()
    }
}

#[test]
fn two_squares_with_sum_of_variables() {
    let a = quotient(&["x", "y"], &["x^2", "y^2"], q());
    let l = form(&a, "x + y");
    assert!(wlp_for_element(&a, &l).holds());
    assert!(slp_for_element(&a, &l).holds());
    assert!(slpn_for_element(&a, &l).holds());
    let f2 = FieldSpec::prime(2).unwrap();
    let b = quotient(&["x", "y"], &["x^2", "y^2"], f2);
    let rep = slp_for_element(&b, &form(&b, "x + y"));
    assert!(!rep.holds());
    assert_eq!(
        rep.failing_maps().iter().map(|m| (m.i, m.d)).collect::<Vec<_>>(),
        vec![(0, 2)]
    );
    assert_eq!(slp_generic(&b, &certify()).verdict, Verdict::Fails);
}

#[test]
fn three_squares_depend_on_the_characteristic() {
    let a = quotient(&["x", "y", "z"], &["x^2", "y^2", "z^2"], q());
    assert!(wlp_for_element(&a, &form(&a, "x + y + z")).holds());
    let f2 = FieldSpec::prime(2).unwrap();
    let b = quotient(&["x", "y", "z"], &["x^2", "y^2", "z^2"], f2);
    let rep = wlp_for_element(&b, &form(&b, "x + y + z"));
    assert_eq!(rep.failing_maps().iter().map(|m| m.i).collect::<Vec<_>>(), vec![1]);
    let generic = wlp_generic(&b, &certify());
    assert_eq!(generic.verdict, Verdict::Fails);
    assert!(matches!(generic.certification, Certification::Symbolic { .. }));
}

#[test]
fn zero_form_fails() {
    let a = quotient(&["x", "y"], &["x^2", "y^3"], q());
    let rep = wlp_for_element(&a, &[q().zero(), q().zero()]);
    assert_eq!(rep.verdict, Verdict::Fails);
    assert!(rep.maps.iter().all(|m| m.achieved <= m.expected));
}

#[test]
fn nonsymmetric_hilbert_function() {
    for e in 4..7 {
        let a = quotient(&["x", "y"], &["x^2", "x*y", &format!("y^{e}")], q());
        let l = form(&a, "x + y");
        assert!(slp_for_element(&a, &l).holds());
        assert!(!slpn_for_element(&a, &l).holds());
        assert!(!slpn_generic(&a, &GenericityConfig::default()).holds());
    }
}

#[test]
fn monomial_complete_intersection_has_slp() {
    let a = quotient(&["x", "y", "z"], &["x^3", "y^3", "z^3"], q());
    let rep = slp_generic(&a, &GenericityConfig::default());
    assert!(rep.holds());
    assert!(matches!(rep.certification, Certification::Witness { .. }));
}

/// Oracle for dim I_d: rank of all products m * g, listed densely.
fn oracle_hilbert(names: &[&str], gens: &[&str], top: usize) -> Vec<usize> {
    let r = Ring::new(names, q()).unwrap();
    let gens: Vec<_> = gens.iter().map(|g| r.parse(g).unwrap()).collect();
    (0..=top)
        .map(|d| {
            let basis = r.basis(d);
            let mut rows = Vec::new();
            for g in &gens {
                let dg = r.degree_of(g).unwrap();
                if dg > d {
                    continue;
                }
                for m in r.basis(d - dg) {
                    let p = g.mul_monomial(&m, &q().one());
                    rows.push(basis.iter().map(|b| p.coeff(b)).collect());
                }
            }
            basis.len() - Matrix::from_rows(q(), basis.len(), rows).rank()
        })
        .collect()
}

#[test]
fn cubes_with_a_linear_cube_have_wlp_but_not_slp() {
    // The last generator is (x + y + z)^3.
    let expanded = [
        "x^3",
        "y^3",
        "z^3",
        "x^3 + 3*x^2*y + 3*x^2*z + 3*x*y^2 + 6*x*y*z + 3*x*z^2 + y^3 + 3*y^2*z + 3*y*z^2 + z^3",
    ];
    let a = quotient(&["x", "y", "z"], &expanded, q());
    let h = a.hilbert_function();
    let mut oracle = oracle_hilbert(&["x", "y", "z"], &expanded, h.len() + 1);
    while oracle.last() == Some(&0) {
        oracle.pop();
    }
    assert_eq!(h, oracle);
    assert_eq!(h, vec![1, 3, 6, 6, 3]);
    assert!(wlp_generic(&a, &GenericityConfig::default()).holds());
    let slp = slp_generic(&a, &certify());
    assert_eq!(slp.verdict, Verdict::Fails);
    assert!(matches!(slp.certification, Certification::Symbolic { .. }));
}

#[test]
fn perazzo_algebra_fails_wlp() {
    let r = Ring::new(&["x", "y", "z", "u", "v"], q()).unwrap();
    let f = r.parse_dual("X*U^[2] + Y*U*V + Z*V^[2]").unwrap();
    let a = GradedAlgebra::from_dual_generator(&r, &f).unwrap();
    assert_eq!(a.hilbert_function(), vec![1, 5, 5, 1]);
    let rep = wlp_generic(&a, &GenericityConfig::default());
    assert_eq!(rep.verdict, Verdict::Fails);
    assert_eq!(rep.failing_maps()[0].i, 1);
}

#[test]
fn probable_failure_without_escalation() {
    // Over F_2 every L squares to zero in the exterior-like algebra, and
    // dim A_1 = 7 is above the automatic escalation threshold.
    let names = ["a", "b", "c", "d", "e", "f", "g"];
    let squares: Vec<String> = names.iter().map(|x| format!("{x}^2")).collect();
    let refs: Vec<&str> = squares.iter().map(String::as_str).collect();
    let f2 = FieldSpec::prime(2).unwrap();
    let b = quotient(&names, &refs, f2);
    assert_eq!(b.hilbert_function(), vec![1, 7, 21, 35, 35, 21, 7, 1]);
    let rep = wlp_generic(&b, &GenericityConfig::default());
    assert_eq!(rep.verdict, Verdict::ProbablyFails);
    assert!(matches!(rep.certification, Certification::Randomized { .. }));
    let certified = wlp_generic(&b, &certify());
    assert_eq!(certified.verdict, Verdict::Fails);
    let a = quotient(&names, &refs, q());
    assert!(wlp_generic(&a, &GenericityConfig::default()).holds());
}

#[test]
fn report_serializes_with_the_documented_fields() {
    let a = quotient(&["x", "y"], &["x^2", "y^2"], q());
    let rep = slp_for_element(&a, &form(&a, "x + y"));
    let json = serde_json::to_value(&rep).unwrap();
    for key in ["mode", "maps", "verdict", "witness", "certification"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["mode"], "slp");
    assert_eq!(json["maps"][0]["expected"], 1);
}

#[test]
fn jordan_type_of_slpn_algebras_is_the_conjugate() {
    for gens in [&["x^2", "y^2"][..], &["x^3", "y^2", "z^2"], &["x^2", "y^3", "z^4"]] {
        let names = &["x", "y", "z"][..gens.len()];
        let a = quotient(names, gens, q());
        let l: Vec<Scalar> = (0..names.len()).map(|_| q().one()).collect();
        assert!(slpn_for_element(&a, &l).holds());
        let jt = jordan_type(&a, &l);
        assert_eq!(jt.parts, conjugate(&a.hilbert_function()));
        assert!(jt.is_centered(a.socle_degree()));
    }
    // Without the strong property the type is not the conjugate.
    let a = quotient(&["x", "y", "z"], &["x^2", "y^2", "z^2"], FieldSpec::prime(2).unwrap());
    let jt = jordan_type(&a, &form(&a, "x + y + z"));
    assert_ne!(jt.parts, conjugate(&a.hilbert_function()));
}

/// Random small monomial ideals plus a random binomial generator.
fn small_quotient() -> impl Strategy<Value = GradedAlgebra> {
    (
        2usize..=3,
        prop::collection::vec(2u32..=4, 3),
        prop::collection::vec(0u32..=2, 3),
        prop::option::of(0i64..=3),
    )
        .prop_map(|(n, degrees, mixed, coeff)| {
            let names = &["x", "y", "z"][..n];
            let mut gens: Vec<String> = (0..n).map(|i| format!("{}^{}", names[i], degrees[i])).collect();
            if let Some(c) = coeff {
                let e: Vec<String> = (0..n)
                    .filter(|&i| mixed[i] > 0)
                    .map(|i| format!("{}^{}", names[i], mixed[i]))
                    .collect();
                if e.len() >= 2 {
                    let m = e.join("*");
                    let total: u32 = mixed[..n].iter().sum();
                    gens.push(if c == 0 { m } else { format!("{m} - {c}*x^{total}") });
                }
            }
            let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
            quotient(names, &refs, q())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lefschetz_implications(a in small_quotient()) {
        let cfg = GenericityConfig::default();
        let h = a.hilbert_function();
        let wlp = wlp_generic(&a, &cfg);
        let slp = slp_generic(&a, &cfg);
        let slpn = slpn_generic(&a, &cfg);
        prop_assert!(!slp.holds() || wlp.holds());
        prop_assert_eq!(slpn.holds(), slp.holds() && symmetric(&h));
        if wlp.holds() {
            prop_assert!(unimodal(&h));
            // Injective below a single index, surjective from it on.
            let inj: Vec<bool> = wlp.maps.iter().map(|m| m.achieved == h[m.i]).collect();
            let first_non = inj.iter().position(|x| !x).unwrap_or(inj.len());
            for m in &wlp.maps[first_non..] {
                prop_assert_eq!(m.achieved, h[m.i + 1]);
            }
        }
        if let Some(w) = &slp.witness {
            prop_assert!(unimodal(&h));
            let jt = jordan_type(&a, w);
            prop_assert_eq!(jt.total(), a.dim());
        }
        for m in slp.maps.iter().chain(&wlp.maps) {
            prop_assert!(m.achieved <= m.expected);
        }
    }
}
