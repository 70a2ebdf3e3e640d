//! Regression replay of the worked examples, built from the bundled
//! description files.

use anyhow::{Context, Result};
use lefschetz_core::algebra::{AlgebraDescription, GradedAlgebra, GradedStructure, Ideal, Ring};
use lefschetz_core::constructions::{blowup, connected_sum, fiber_product, tensor_product, AlgebraMap};
use lefschetz_core::exactmath::{binomial, FieldSpec};
use lefschetz_core::lefschetz::{
    check_generic, hessian_det, nll_conditions, wlp_for_element, GenericityConfig, LinearActions,
    Mode, NLL_DIM_GUARD,
};
use serde_json::json;

use crate::commands::{element_text, parameter_names, spaced};
use crate::report::Outcome;

macro_rules! bundled {
    ($name:literal) => {
        include_str!(concat!("../examples/", $name))
    };
}

struct Case {
    name: &'static str,
    expected: String,
    actual: String,
}

fn case(name: &'static str, expected: impl Into<String>, actual: impl Into<String>) -> Case {
    Case {
        name,
        expected: expected.into(),
        actual: actual.into(),
    }
}

fn alg(text: &str) -> Result<GradedAlgebra> {
    Ok(AlgebraDescription::parse(text)?.build()?)
}

fn map(a: &GradedAlgebra, t: &GradedAlgebra, text: &str) -> Result<AlgebraMap> {
    Ok(AlgebraMap::parse(a, t, text)?)
}

fn certify() -> GenericityConfig {
    GenericityConfig {
        certify: true,
        ..Default::default()
    }
}

fn verdict(a: &dyn GradedStructure, mode: Mode) -> String {
    let v = check_generic(a, mode, &certify()).verdict;
    format!("{mode} {v}")
}

fn h(a: &dyn GradedStructure) -> String {
    spaced(&a.hilbert_function())
}

fn hilbert_functions() -> Result<Vec<Case>> {
    let mut mismatches = Vec::new();
    for n in 1..=4usize {
        for d in 0..=5usize {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let ring = Ring::with_weights(names, vec![1; n], FieldSpec::RATIONALS)?;
            let gens = ring.basis(d + 1).iter().map(|m| ring.monomial_poly(m)).collect();
            let a = GradedAlgebra::from_ideal(&Ideal::new(&ring, gens)?, None)?;
            let want: Vec<usize> = (0..=d)
                .map(|i| binomial((n + i - 1) as u64, i as u64).try_into().unwrap_or(usize::MAX))
                .collect();
            if a.hilbert_function() != want {
                mismatches.push(format!("n={n} d={d}"));
            }
        }
    }
    Ok(vec![
        case("three squares", "1 3 3 1", h(&alg(bundled!("x2y2z2.alg"))?)),
        case("weighted squares", "1 1 0 1 1", h(&alg(bundled!("nonunimodal.alg"))?)),
        case("Ikeda", "1 4 10 10 4 1", h(&alg(bundled!("ikeda.alg"))?)),
        case(
            "truncated polynomial rings",
            "all match",
            if mismatches.is_empty() { "all match".into() } else { mismatches.join(", ") },
        ),
    ])
}

fn locus(a: &GradedAlgebra, mode: Mode) -> Result<String> {
    let actions = LinearActions::new(a);
    let nll = nll_conditions(&actions, mode, NLL_DIM_GUARD)?;
    let params = Ring::with_weights(parameter_names(actions.nparams()), vec![1; actions.nparams()], a.field())?;
    Ok(params.format(&nll.hypersurface))
}

fn characteristic() -> Result<Vec<Case>> {
    let q3 = alg(bundled!("x2y2z2.alg"))?;
    let f3 = alg(bundled!("x2y2z2_f2.alg"))?;
    let q2 = alg(bundled!("x2y2.alg"))?;
    let f2 = alg(bundled!("x2y2_f2.alg"))?;
    let sum = q3.coordinates(1, &q3.ring().parse("x + y + z")?)?;
    Ok(vec![
        case("three squares, x+y+z over Q", "WLP holds", format!("WLP {}", wlp_for_element(&q3, &sum).verdict)),
        case("three squares over F_2", "WLP fails", verdict(&f3, Mode::Wlp)),
        case("three squares, weak locus", "a*b*c", locus(&q3, Mode::Wlp)?),
        case("two squares over Q", "SLP holds", verdict(&q2, Mode::Slp)),
        case("two squares over F_2", "SLP fails", verdict(&f2, Mode::Slp)),
        case("two squares, strong locus", "a*b", locus(&q2, Mode::Slp)?),
    ])
}

fn lefschetz_examples() -> Result<Vec<Case>> {
    let stanley = alg(bundled!("stanley_333.alg"))?;
    let w = alg(bundled!("wlp_not_slp.alg"))?;
    let squares = alg(bundled!("squares_dual.alg"))?;
    let ikeda = alg(bundled!("ikeda.alg"))?;
    let hess = |a: &GradedAlgebra, i: usize| -> Result<String> {
        let f = a.dual_generator()?;
        Ok(a.ring().format(&hessian_det(a.ring(), &f, i)?))
    };
    Ok(vec![
        case("monomial complete intersection", "SLP holds", verdict(&stanley, Mode::Slp)),
        case(
            "cubes and (x+y+z)^3",
            "WLP holds, SLP fails",
            format!("{}, {}", verdict(&w, Mode::Wlp), verdict(&w, Mode::Slp)),
        ),
        case("hess^1 of X^2+Y^2+Z^2", "8", hess(&squares, 1)?),
        case("Ikeda hess^2", "0", hess(&ikeda, 2)?),
        case("Ikeda", "SLP fails", verdict(&ikeda, Mode::Slp)),
    ])
}

fn gluings() -> Result<Vec<Case>> {
    let (a, b, t) = (alg(bundled!("fp_a.alg"))?, alg(bundled!("fp_b.alg"))?, alg(bundled!("fp_t.alg"))?);
    let pa = map(&a, &t, bundled!("fp_a.map"))?;
    let pb = map(&b, &t, bundled!("fp_b.map"))?;
    let fp = fiber_product(&pa, &pb)?;
    let cs = connected_sum(&pa, &pb, &a.orientation(), &b.orientation(), &t.orientation())?;
    let (na, nb) = (alg(bundled!("ns_a.alg"))?, alg(bundled!("ns_b.alg"))?);
    let pna = map(&na, &t, bundled!("ns_a.map"))?;
    let pnb = map(&nb, &t, bundled!("fp_b.map"))?;
    let c = connected_sum(&pna, &pnb, &na.orientation(), &nb.orientation(), &t.orientation())?;
    let factor = alg(bundled!("tensor_factor.alg"))?;
    let square = tensor_product(&factor, &factor)?;
    let mut cases = vec![
        case("fiber product", "1 3 5 4 2", h(&fp)),
        case("connected sum", "1 3 5 3 1", h(&cs)),
        case("non-standard connected sum", "1 2 2 1", h(&c)),
        case("tensor square", "1 6 11 8 9 8 3 2 1", h(&square)),
    ];
    let t = alg(bundled!("cs_t.alg"))?;
    for (name, fa, fb, hf, v) in [
        ("sum of X^2YZ and XY^2T", bundled!("cs_a.alg"), bundled!("cs_b.alg"), "1 4 6 4 1", "WLP holds"),
        ("sum of X^3YZ and XY^3T", bundled!("cs2_a.alg"), bundled!("cs2_b.alg"), "1 4 7 7 4 1", "WLP fails"),
    ] {
        let (a, b) = (alg(fa)?, alg(fb)?);
        let pa = map(&a, &t, bundled!("cs_a.map"))?;
        let pb = map(&b, &t, bundled!("cs_b.map"))?;
        let cs = connected_sum(&pa, &pb, &a.orientation(), &b.orientation(), &t.orientation())?;
        cases.push(case(name, format!("{hf}; {v}"), format!("{}; {}", h(&cs), verdict(&cs, Mode::Wlp))));
    }
    Ok(cases)
}

fn blowups() -> Result<Vec<Case>> {
    let a = alg(bundled!("notgor_a.alg"))?;
    let t = alg(bundled!("notgor_t.alg"))?;
    let pi = map(&a, &t, bundled!("notgor.map"))?;
    let r = a.ring();
    let bl = blowup(&pi, &a.orientation(), &t.orientation(), &[r.parse("x")?, r.zero()], &r.parse("x*y^2")?)?;
    let socle: Vec<String> = bl
        .socle()
        .iter()
        .enumerate()
        .flat_map(|(i, vs)| vs.iter().map(|v| element_text(&bl.basis_labels(i), v)).collect::<Vec<_>>())
        .collect();
    let mut cases = vec![case(
        "blowup of (x^3, y^3)",
        "1 3 5 3 1; Gorenstein; socle x^2*y^2",
        format!(
            "{}; {}; socle {}",
            h(&bl),
            if bl.is_gorenstein() { "Gorenstein" } else { "not Gorenstein" },
            socle.join(" ")
        ),
    )];

    let a = alg(bundled!("perazzo_a.alg"))?;
    let t = alg(bundled!("perazzo_t.alg"))?;
    let pi = map(&a, &t, bundled!("identity5.map"))?;
    let r = a.ring();
    let bl = blowup(&pi, &a.orientation(), &t.orientation(), &[r.parse("-x")?], &r.parse("u^2")?)?;
    let det = LinearActions::new(&bl).symbolic_power(1, 1).det();
    let monic = match det.terms().first() {
        Some((_, c)) => det.scale(&c.inv().context("zero leading coefficient")?),
        None => det.clone(),
    };
    let params = Ring::with_weights(parameter_names(6), vec![1; 6], bl.field())?;
    cases.push(case("Perazzo blowup", "1 6 6 1", h(&bl)));
    cases.push(case("Perazzo blowup determinant (monic)", "e^4*f^2", params.format(&monic)));
    cases.push(case(
        "Perazzo blowup and base",
        "SLP holds; WLP fails",
        format!("{}; {}", verdict(&bl, Mode::Slp), verdict(&a, Mode::Wlp)),
    ));

    let a = alg(bundled!("bug_a.alg"))?;
    let t = alg(bundled!("bug_t.alg"))?;
    let pi = map(&a, &t, bundled!("identity5.map"))?;
    let r = a.ring();
    let bl = blowup(&pi, &a.orientation(), &t.orientation(), &[r.zero(), r.zero()], &r.parse("-u^3")?)?;
    let both = |x: &GradedAlgebra| format!("{}, {}", verdict(x, Mode::Wlp), verdict(x, Mode::Slp));
    cases.push(case("blowup losing WLP: A", "WLP holds, SLP fails", both(&a)));
    cases.push(case("blowup losing WLP: T", "WLP holds, SLP fails", both(&t)));
    cases.push(case(
        "blowup losing WLP: blowup",
        "1 6 12 17 17 12 6 1; WLP fails",
        format!("{}; {}", h(&bl), verdict(&bl, Mode::Wlp)),
    ));
    Ok(cases)
}

pub fn run() -> Result<Outcome> {
    let groups: [(&str, fn() -> Result<Vec<Case>>); 5] = [
        ("Hilbert functions", hilbert_functions),
        ("characteristic", characteristic),
        ("Lefschetz examples", lefschetz_examples),
        ("gluing", gluings),
        ("blowups", blowups),
    ];
    let mut rows = Vec::new();
    let mut failed = 0;
    let mut total = 0;
    for (group, f) in groups {
        let cases = f().unwrap_or_else(|e| vec![case("setup", "ok", format!("error: {e:#}"))]);
        for c in cases {
            let pass = c.expected == c.actual;
            total += 1;
            if !pass {
                failed += 1;
            }
            rows.push(json!({
                "group": group,
                "case": c.name,
                "expected": c.expected,
                "actual": c.actual,
                "pass": pass,
            }));
        }
    }
    Ok(Outcome {
        summary: format!("{} of {total} cases pass", total - failed),
        results: json!({ "cases": rows }),
        certification: Some(json!(certify_meta())),
        key: if failed == 0 { "pass" } else { "fail" }.into(),
        mismatch: failed > 0,
    })
}

fn certify_meta() -> serde_json::Value {
    let c = certify();
    json!({"seed": c.seed, "trials": c.trials, "bound": c.bound, "certify": c.certify})
}

#[cfg(test)]
mod tests {
    use super::*;
    use lefschetz_core::lefschetz::slp_generic;

    #[test]
    fn every_case_passes() {
        let out = run().unwrap();
        let failures: Vec<_> = out.results["cases"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["pass"] != true)
            .cloned()
            .collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }

    #[test]
    fn slp_generic_agrees_on_bundled_complete_intersection() {
        let a = alg(bundled!("stanley_333.alg")).unwrap();
        assert!(slp_generic(&a, &GenericityConfig::default()).holds());
    }
}
