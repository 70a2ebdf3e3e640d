use std::fmt::Display;
use std::path::Path;

use anyhow::{bail, Context, Result};
use lefschetz_core::algebra::{AlgebraDescription, GradedAlgebra, GradedStructure, Presentation, Ring};
use lefschetz_core::constructions::{
    blowup, connected_sum, connected_sum_over_field, fiber_product, fiber_product_over_field, tensor_product,
    AlgebraMap,
};
use lefschetz_core::exactmath::Scalar;
use lefschetz_core::lefschetz::{
    check_element, check_generic, conjugate, h_vector, hessian_det, jordan_type, nll_conditions, slp_by_hessian,
    slpn_generic, LefschetzReport, LinearActions, Mode, Verdict, NLL_DIM_GUARD,
};
use lefschetz_core::poly::{dual_names, format_poly, DualPoly};
use lefschetz_core::sl2::{irreducible_decomposition, triple_from_lefschetz, verify_triple, weight_decomposition, weights};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::input::Inputs;
use crate::report::Outcome;
use crate::{Command, Genericity, Gluing, ModeArg};

pub fn dispatch(command: &Command, inputs: &mut Inputs) -> Result<Outcome> {
    match command {
        Command::Hilbert { file } => hilbert(&inputs.algebra(file)?),
        Command::Socle { file } => socle(&inputs.algebra(file)?),
        Command::Dualgen { file } => dualgen(&inputs.algebra(file)?),
        Command::Ann { file } => ann(&inputs.description(file)?),
        Command::Check {
            mode,
            element,
            file,
            genericity,
            ..
        } => check(&inputs.algebra(file)?, (*mode).into(), element.as_deref(), genericity),
        Command::Jordan {
            element,
            file,
            genericity,
        } => jordan(&inputs.algebra(file)?, element.as_deref(), genericity),
        Command::Hessian {
            degree,
            file,
            genericity,
        } => hessian(&inputs.algebra(file)?, *degree, genericity),
        Command::Nll { mode, file } => nll(&inputs.algebra(file)?, (*mode).into()),
        Command::Sl2 {
            element,
            file,
            genericity,
        } => sl2(&inputs.algebra(file)?, element.as_deref(), genericity),
        Command::Tensor {
            a,
            b,
            mode,
            genericity,
        } => tensor(&inputs.algebra(a)?, &inputs.algebra(b)?, *mode, genericity),
        Command::FiberProduct(g) => glue(g, inputs, false),
        Command::ConnectSum(g) => glue(g, inputs, true),
        Command::Blowup {
            a,
            t,
            map,
            coefficients,
            constant,
            mode,
            genericity,
        } => {
            let a = inputs.algebra(a)?;
            let t = inputs.algebra(t)?;
            let pi = load_map(inputs, map, &a, &t)?;
            blowup_command(&a, &t, &pi, coefficients, constant, *mode, genericity)
        }
        Command::Hvector { f, dim } => hvector(f, *dim),
        Command::PaperSuite => crate::suite::run(),
    }
}

pub fn spaced<T: Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// `c_1*l_1 + c_2*l_2 + ...` with unit coefficients dropped.
pub fn element_text(labels: &[String], coords: &[Scalar]) -> String {
    let mut out = String::new();
    for (label, c) in labels.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        let (negative, magnitude) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        let term = if magnitude.is_one() && label != "1" {
            label.clone()
        } else if label == "1" {
            magnitude.to_string()
        } else {
            format!("{magnitude}*{label}")
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push_str(&format!("-{term}")),
            (true, false) => out.push_str(&term),
            (false, true) => out.push_str(&format!(" - {term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn linear_form(a: &GradedAlgebra, text: &str) -> Result<Vec<Scalar>> {
    let p = a.ring().parse(text).with_context(|| format!("linear form `{text}`"))?;
    a.coordinates(1, &p).with_context(|| format!("`{text}` is not a linear form"))
}

fn hilbert_json(a: &dyn GradedStructure) -> Value {
    json!(a.hilbert_function())
}

/// Runs a generic or given-element check and describes it.
fn lefschetz(a: &dyn GradedStructure, mode: Mode, element: Option<Vec<Scalar>>, g: &Genericity) -> LefschetzReport {
    match element {
        Some(l) => check_element(a, mode, &l),
        None => check_generic(a, mode, &g.config()),
    }
}

fn verdict_key(v: Verdict) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn verdict_summary(a: &dyn GradedStructure, rep: &LefschetzReport) -> String {
    match (&rep.witness, rep.verdict) {
        (Some(w), Verdict::Holds) => format!("{} holds; witness {}", rep.mode, element_text(&a.basis_labels(1), w)),
        _ => format!("{} {}", rep.mode, rep.verdict),
    }
}

fn lefschetz_outcome(a: &dyn GradedStructure, rep: LefschetzReport) -> Outcome {
    let mut results = Map::new();
    results.insert("hilbert_function".into(), hilbert_json(a));
    results.insert("mode".into(), json!(rep.mode));
    results.insert("verdict".into(), json!(rep.verdict));
    if let Some(w) = &rep.witness {
        results.insert("witness".into(), json!(element_text(&a.basis_labels(1), w)));
    }
    results.insert("maps".into(), json!(rep.maps));
    Outcome {
        summary: verdict_summary(a, &rep),
        results: Value::Object(results),
        certification: Some(json!(rep.certification)),
        key: verdict_key(rep.verdict),
        mismatch: false,
    }
}

/// Adds the verdict of an optional check on a construction's output.
fn with_mode(
    mut outcome: Outcome,
    a: &dyn GradedStructure,
    mode: Option<ModeArg>,
    g: &Genericity,
) -> Outcome {
    let Some(mode) = mode else { return outcome };
    let rep = lefschetz(a, mode.into(), None, g);
    if let Value::Object(map) = &mut outcome.results {
        map.insert("mode".into(), json!(rep.mode));
        map.insert("verdict".into(), json!(rep.verdict));
        if let Some(w) = &rep.witness {
            map.insert("witness".into(), json!(element_text(&a.basis_labels(1), w)));
        }
    }
    outcome.summary = format!("{}; {}", outcome.summary, verdict_summary(a, &rep));
    outcome.key = verdict_key(rep.verdict);
    outcome.certification = Some(json!(rep.certification));
    outcome
}

fn plain(summary: String, results: Value, key: String) -> Outcome {
    Outcome {
        summary,
        results,
        certification: None,
        key,
        mismatch: false,
    }
}

fn hilbert(a: &GradedAlgebra) -> Result<Outcome> {
    let h = a.hilbert_function();
    Ok(plain(
        spaced(&h),
        json!({
            "hilbert_function": h,
            "dim": a.dim(),
            "socle_degree": a.socle_degree(),
            "hilbert_series": a.hilbert_series_text(),
        }),
        spaced(&h),
    ))
}

fn socle(a: &GradedAlgebra) -> Result<Outcome> {
    let dims = a.socle_dimensions();
    let basis: Vec<Value> = a
        .socle()
        .iter()
        .enumerate()
        .filter(|(_, vs)| !vs.is_empty())
        .map(|(i, vs)| {
            let labels = a.basis_labels(i);
            json!({"degree": i, "elements": vs.iter().map(|v| element_text(&labels, v)).collect::<Vec<_>>()})
        })
        .collect();
    let gorenstein = a.is_gorenstein();
    let summary = format!(
        "socle dimensions {}{}",
        spaced(&dims),
        if gorenstein { " (Gorenstein)" } else { "" }
    );
    Ok(plain(
        summary,
        json!({
            "socle_dimensions": dims,
            "socle_basis": basis,
            "gorenstein": gorenstein,
            "level": a.is_level(),
        }),
        spaced(&dims),
    ))
}

fn dual_of(a: &GradedAlgebra) -> Result<DualPoly> {
    a.dual_generator().context("no dual generator")
}

fn dualgen(a: &GradedAlgebra) -> Result<Outcome> {
    let f = dual_of(a)?;
    let text = a.ring().format_dual(&f);
    Ok(plain(
        format!("F = {text}"),
        json!({"dual_generator": text, "socle_degree": a.socle_degree()}),
        text,
    ))
}

fn ann(d: &AlgebraDescription) -> Result<Outcome> {
    let Presentation::DualGenerator(f) = &d.presentation else {
        bail!("`ann` needs a description with a `dualgen:` section");
    };
    let a = GradedAlgebra::from_dual_generator(&d.ring, f)?;
    let gens: Vec<String> = a.minimal_generators().iter().map(|g| d.ring.format(g)).collect();
    let description = AlgebraDescription {
        ring: d.ring.clone(),
        presentation: Presentation::Ideal(a.minimal_generators()),
    };
    let h = a.hilbert_function();
    Ok(plain(
        format!("Ann(F) = ({})", gens.join(", ")),
        json!({
            "generators": gens,
            "hilbert_function": h,
            "description": description.format(),
        }),
        spaced(&h),
    ))
}

fn check(a: &GradedAlgebra, mode: Mode, element: Option<&str>, g: &Genericity) -> Result<Outcome> {
    let l = element.map(|e| linear_form(a, e)).transpose()?;
    Ok(lefschetz_outcome(a, lefschetz(a, mode, l, g)))
}

/// The given form, or the first random form of the configured search.
fn form_or_random(a: &GradedAlgebra, element: Option<&str>, g: &Genericity) -> Result<(Vec<Scalar>, String)> {
    let l = match element {
        Some(e) => linear_form(a, e)?,
        None => g.config().random_form(0, a.dim_of(1), a.field()),
    };
    let text = element_text(&a.basis_labels(1), &l);
    Ok((l, text))
}

fn jordan(a: &GradedAlgebra, element: Option<&str>, g: &Genericity) -> Result<Outcome> {
    let (l, text) = form_or_random(a, element, g)?;
    let jt = jordan_type(a, &l);
    let conj = conjugate(&a.hilbert_function());
    Ok(plain(
        format!("Jordan type of {text}: {}", spaced(&jt.parts)),
        json!({
            "element": text,
            "parts": jt.parts,
            "strands": jt.strands,
            "conjugate_of_hilbert_function": conj,
            "strong_type": jt.parts == conj,
        }),
        spaced(&jt.parts),
    ))
}

fn hessian(a: &GradedAlgebra, degree: Option<usize>, g: &Genericity) -> Result<Outcome> {
    let f = dual_of(a)?;
    let ring = a.ring();
    match degree {
        Some(i) => {
            let det = hessian_det(ring, &f, i)?;
            let text = format_poly(&det, &dual_names(ring.names()));
            Ok(plain(
                format!("hess^{i}(F) = {text}"),
                json!({"degree": i, "determinant": text, "vanishes": det.is_zero()}),
                text,
            ))
        }
        None => {
            let rep = slp_by_hessian(ring, &f, &g.config())?;
            let vanishing: Vec<usize> = rep.degrees.iter().filter(|d| d.vanishes).map(|d| d.i).collect();
            let summary = if rep.slp {
                "SLP holds: no higher Hessian vanishes".to_string()
            } else {
                format!("SLP fails: hess^i vanishes for i = {}", spaced(&vanishing))
            };
            Ok(plain(
                summary,
                json!({"slp": rep.slp, "socle_degree": rep.socle_degree, "degrees": rep.degrees}),
                if rep.slp { "holds" } else { "fails" }.into(),
            ))
        }
    }
}

/// `a, b, c, ...` for at most 26 parameters, `c1, c2, ...` beyond.
pub fn parameter_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("c{i}")).collect()
    }
}

fn nll(a: &GradedAlgebra, mode: Mode) -> Result<Outcome> {
    let actions = LinearActions::new(a);
    let nll = nll_conditions(&actions, mode, NLL_DIM_GUARD)?;
    let names = parameter_names(actions.nparams());
    let params = Ring::with_weights(names.clone(), vec![1; names.len()], a.field())?;
    let labels = a.basis_labels(1);
    let hyper = params.format(&nll.hypersurface);
    let maps: Vec<Value> = nll
        .maps
        .iter()
        .map(|m| json!({"i": m.i, "d": m.d, "expected": m.expected, "gcd": params.format(&m.gcd)}))
        .collect();
    let extra: Vec<Vec<String>> = nll.extra.iter().map(|ps| ps.iter().map(|p| params.format(p)).collect()).collect();
    let kind = if mode == Mode::Wlp { "weak" } else { "strong" };
    let summary = if nll.everything_fails() {
        format!("{kind} non-Lefschetz locus: every linear form")
    } else {
        format!("{kind} non-Lefschetz locus: {hyper} = 0")
    };
    Ok(plain(
        summary,
        json!({
            "parameters": names.iter().zip(&labels).map(|(p, l)| format!("{p} = coefficient of {l}")).collect::<Vec<_>>(),
            "hypersurface": hyper,
            "extra": extra,
            "maps": maps,
        }),
        hyper,
    ))
}

fn sl2(a: &GradedAlgebra, element: Option<&str>, g: &Genericity) -> Result<Outcome> {
    let l = match element {
        Some(e) => linear_form(a, e)?,
        None => match slpn_generic(a, &g.config()).witness {
            Some(w) => w,
            None => {
                return Ok(plain(
                    "no narrow strong Lefschetz element found".into(),
                    json!({"hilbert_function": a.hilbert_function(), "found": false}),
                    "none".into(),
                ))
            }
        },
    };
    let text = element_text(&a.basis_labels(1), &l);
    let triple = triple_from_lefschetz(a, &l)?;
    let verified = verify_triple(&triple)?;
    let decomposition = weight_decomposition(&triple.h)?;
    let ws = weights(&decomposition);
    let irreducibles = irreducible_decomposition(&ws)?;
    let multiplicities: Vec<Value> = decomposition
        .iter()
        .rev()
        .map(|(w, vs)| json!({"weight": w, "multiplicity": vs.len()}))
        .collect();
    Ok(plain(
        format!("sl2 triple from {text}; irreducibles of dimension {}", spaced(&irreducibles)),
        json!({
            "element": text,
            "brackets_verified": verified,
            "weights": multiplicities,
            "irreducible_dimensions": irreducibles,
        }),
        spaced(&irreducibles),
    ))
}

fn description_json(a: &GradedAlgebra) -> Value {
    json!(AlgebraDescription::of(a).format())
}

fn tensor(a: &GradedAlgebra, b: &GradedAlgebra, mode: Option<ModeArg>, g: &Genericity) -> Result<Outcome> {
    let p = tensor_product(a, b)?;
    let h = p.hilbert_function();
    let out = plain(
        format!("A ⊗ B: {}", spaced(&h)),
        json!({"hilbert_function": h, "description": description_json(&p)}),
        spaced(&h),
    );
    Ok(with_mode(out, &p, mode, g))
}

fn load_map(inputs: &mut Inputs, path: &Path, a: &GradedAlgebra, t: &GradedAlgebra) -> Result<AlgebraMap> {
    let text = inputs.read(path)?;
    AlgebraMap::parse(a, t, &text).with_context(|| format!("in {}", path.display()))
}

fn glue(g: &Gluing, inputs: &mut Inputs, sum: bool) -> Result<Outcome> {
    let a = inputs.algebra(&g.a)?;
    let b = inputs.algebra(&g.b)?;
    let name = if sum { "connected sum" } else { "fiber product" };
    let Some(tp) = &g.t else {
        let p = if sum {
            connected_sum_over_field(&a, &b, &a.orientation(), &b.orientation())?
        } else {
            fiber_product_over_field(&a, &b)?
        };
        let h = p.hilbert_function();
        let out = plain(
            format!("{name} over the field: {}", spaced(&h)),
            json!({
                "hilbert_function": h,
                "gorenstein": p.is_gorenstein(),
                "description": description_json(&p),
            }),
            spaced(&h),
        );
        return Ok(with_mode(out, &p, g.mode, &g.genericity));
    };
    let t = inputs.algebra(tp)?;
    let (Some(ma), Some(mb)) = (&g.map_a, &g.map_b) else {
        bail!("gluing over T needs --map-a and --map-b");
    };
    let pa = load_map(inputs, ma, &a, &t)?;
    let pb = load_map(inputs, mb, &b, &t)?;
    if sum {
        let cs = connected_sum(&pa, &pb, &a.orientation(), &b.orientation(), &t.orientation())?;
        let h = cs.hilbert_function();
        let out = plain(
            format!("{name}: {}", spaced(&h)),
            json!({
                "hilbert_function": h,
                "gorenstein": cs.is_gorenstein(),
                "generator_degrees": cs.generator_degrees(),
                "thom_class_a": a.ring().format(&cs.thom_a.element(&a)),
                "thom_class_b": b.ring().format(&cs.thom_b.element(&b)),
            }),
            spaced(&h),
        );
        Ok(with_mode(out, &cs, g.mode, &g.genericity))
    } else {
        let fp = fiber_product(&pa, &pb)?;
        let h = fp.hilbert_function();
        let out = plain(
            format!("{name}: {}", spaced(&h)),
            json!({
                "hilbert_function": h,
                "generator_degrees": fp.generator_degrees(),
                "standard_graded": fp.is_standard_graded(),
                "socle_dimensions": fp.socle_dimensions(),
            }),
            spaced(&h),
        );
        Ok(with_mode(out, &fp, g.mode, &g.genericity))
    }
}

fn blowup_command(
    a: &GradedAlgebra,
    t: &GradedAlgebra,
    pi: &AlgebraMap,
    coefficients: &str,
    constant: &str,
    mode: Option<ModeArg>,
    g: &Genericity,
) -> Result<Outcome> {
    let ring = a.ring();
    let coeffs = coefficients
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| ring.parse(s).with_context(|| format!("coefficient `{s}`")))
        .collect::<Result<Vec<_>>>()?;
    let constant = ring.parse(constant).with_context(|| format!("constant `{constant}`"))?;
    let bl = blowup(pi, &a.orientation(), &t.orientation(), &coeffs, &constant)?;
    let h = bl.hilbert_function();
    let presentation = bl.presentation()?;
    let out = plain(
        format!("blowup: {}", spaced(&h)),
        json!({
            "hilbert_function": h,
            "gorenstein": bl.is_gorenstein(),
            "codimension": bl.codimension(),
            "thom_class": ring.format(&bl.thom_class().element(a)),
            "lambda": bl.lambda().to_string(),
            "presentation": description_json(&presentation),
            "square_commutes": bl.square_commutes()?,
        }),
        spaced(&h),
    );
    Ok(with_mode(out, &bl, mode, g))
}

fn hvector(f: &[String], dim: Option<usize>) -> Result<Outcome> {
    let f = f
        .iter()
        .map(|s| s.trim().parse::<BigInt>().with_context(|| format!("`{s}` is not an integer")))
        .collect::<Result<Vec<_>>>()?;
    let d = dim.unwrap_or(f.len());
    let h = h_vector(&f, d);
    Ok(plain(
        spaced(&h),
        json!({"h_vector": h.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "dimension": d}),
        spaced(&h),
    ))
}
