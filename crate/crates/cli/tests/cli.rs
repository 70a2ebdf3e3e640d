use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lefschetz_core::algebra::AlgebraDescription;
use serde_json::Value;

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn lefschetz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz"))
        .args(args)
        .current_dir(examples())
        .env_remove("LEFSCHETZ_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = lefschetz(&a);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn hilbert_prints_the_function_first() {
    let o = lefschetz(&["hilbert", "x2y2z2.alg"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("1 3 3 1"));
}

#[test]
fn generic_check_echoes_the_witness() {
    let v = json(&["check", "--mode", "slp", "--generic", "--seed", "7", "stanley_333.alg"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["results"]["verdict"], "holds");
    let w = v["results"]["witness"].as_str().unwrap();
    assert!(w.contains('x') && w.contains('y') && w.contains('z'));
    assert_eq!(v["certification"]["kind"], "witness");
    assert_eq!(v["certification"]["seed"], 7);
}

#[test]
fn given_element_is_checked_exactly() {
    let v = json(&["check", "--mode", "wlp", "--element", "x + y + z", "x2y2z2.alg"]);
    assert_eq!(v["results"]["verdict"], "holds");
    assert_eq!(v["certification"]["kind"], "given_element");
    let o = lefschetz(&["check", "--mode", "wlp", "--element", "x^2", "x2y2z2.alg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn expect_sets_the_exit_code() {
    let ok = lefschetz(&["check", "--mode", "wlp", "x2y2z2.alg", "--expect", "holds"]);
    assert_eq!(ok.status.code(), Some(0));
    let negative = lefschetz(&["check", "--mode", "wlp", "x2y2z2_f2.alg"]);
    assert_eq!(negative.status.code(), Some(0));
    let mismatch = lefschetz(&["check", "--mode", "wlp", "x2y2z2_f2.alg", "--expect", "holds"]);
    assert_eq!(mismatch.status.code(), Some(1));
    assert!(stdout(&mismatch).contains("MISMATCH"));
    let h = lefschetz(&["hilbert", "ikeda.alg", "--expect", "1 4 10 10 4 1"]);
    assert_eq!(h.status.code(), Some(0));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("lefschetz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.alg");
    std::fs::write(&bad, "vars: x,y\nideal:\nx^2\ny^^2\n").unwrap();
    let o = lefschetz(&["hilbert", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("4:3"));
    assert_eq!(lefschetz(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lefschetz(&["hilbert", "missing.alg"]).status.code(), Some(2));
    assert_eq!(lefschetz(&["check", "--mode", "xlp", "x2y2.alg"]).status.code(), Some(2));
    // Gluing over T without maps, and mismatched socle degrees.
    assert_eq!(lefschetz(&["connect-sum", "fp_a.alg", "fp_b.alg", "fp_t.alg"]).status.code(), Some(2));
    assert_eq!(lefschetz(&["connect-sum", "x2y2.alg", "fp_b.alg"]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn reports_are_deterministic_and_timing_is_opt_in() {
    let args = ["check", "--mode", "slp", "ikeda.alg", "--json"];
    let first = lefschetz(&args);
    let second = lefschetz(&args);
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert!(v.get("timing_ms").is_none());
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    let timed = json(&["hilbert", "x2y2.alg", "--timing"]);
    assert!(timed["timing_ms"].is_number());
}

#[test]
fn seed_defaults_to_the_environment() {
    let from_env = Command::new(env!("CARGO_BIN_EXE_lefschetz"))
        .args(["check", "--mode", "wlp", "x2y2.alg", "--json"])
        .current_dir(examples())
        .env("LEFSCHETZ_SEED", "11")
        .output()
        .unwrap();
    let a: Value = serde_json::from_slice(&from_env.stdout).unwrap();
    let b = json(&["check", "--mode", "wlp", "x2y2.alg", "--seed", "11"]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["certification"]["seed"], 11);
}

#[test]
fn constructions_from_files() {
    let fp = json(&["fiber-product", "fp_a.alg", "fp_b.alg", "fp_t.alg", "--map-a", "fp_a.map", "--map-b", "fp_b.map"]);
    assert_eq!(fp["results"]["hilbert_function"], serde_json::json!([1, 3, 5, 4, 2]));
    let cs = json(&["connect-sum", "fp_a.alg", "fp_b.alg", "fp_t.alg", "--map-a", "fp_a.map", "--map-b", "fp_b.map"]);
    assert_eq!(cs["results"]["hilbert_function"], serde_json::json!([1, 3, 5, 3, 1]));
    assert_eq!(cs["results"]["thom_class_a"], "y^3");
    assert_eq!(cs["results"]["thom_class_b"], "u*v^2");
    let over_field = json(&["connect-sum", "x2y2.alg", "squares_dual.alg", "--mode", "slp"]);
    assert_eq!(over_field["results"]["hilbert_function"], serde_json::json!([1, 5, 1]));
    assert_eq!(over_field["results"]["gorenstein"], true);
    assert_eq!(over_field["results"]["verdict"], "holds");
    let bl = json(&[
        "blowup",
        "notgor_a.alg",
        "notgor_t.alg",
        "--map",
        "notgor.map",
        "--coefficients",
        "x, 0",
        "--constant",
        "x*y^2",
    ]);
    assert_eq!(bl["results"]["hilbert_function"], serde_json::json!([1, 3, 5, 3, 1]));
    assert_eq!(bl["results"]["gorenstein"], true);
    assert_eq!(bl["results"]["square_commutes"], true);
    let t = lefschetz(&["tensor", "x2y2.alg", "x2y2.alg", "--expect", "1 4 6 4 1"]);
    assert_eq!(t.status.code(), Some(0));
}

#[test]
fn duality_and_hessian_commands() {
    let d = json(&["dualgen", "squares_dual.alg"]);
    assert_eq!(d["results"]["dual_generator"], "X^2 + Y^2 + Z^2");
    let ann = json(&["ann", "squares_dual.alg"]);
    assert_eq!(ann["results"]["hilbert_function"], serde_json::json!([1, 3, 1]));
    let h = lefschetz(&["hessian", "--degree", "1", "squares_dual.alg", "--expect", "8"]);
    assert_eq!(h.status.code(), Some(0));
    let ikeda = json(&["hessian", "ikeda.alg"]);
    assert_eq!(ikeda["results"]["slp"], false);
    let nll = lefschetz(&["nll", "--mode", "wlp", "x2y2z2.alg", "--expect", "a*b*c"]);
    assert_eq!(nll.status.code(), Some(0));
    let sl2 = json(&["sl2", "--element", "x + y", "x2y2.alg"]);
    assert_eq!(sl2["results"]["irreducible_dimensions"], serde_json::json!([3, 1]));
    assert_eq!(sl2["results"]["brackets_verified"], true);
    let none = json(&["sl2", "nonunimodal.alg"]);
    assert_eq!(none["results"]["found"], false);
    let jordan = json(&["jordan", "--element", "x + y", "x2y2.alg"]);
    assert_eq!(jordan["results"]["parts"], serde_json::json!([3, 1]));
    let hv = lefschetz(&["hvector", "6", "12", "8", "--expect", "1 3 3 1"]);
    assert_eq!(hv.status.code(), Some(0));
}

#[test]
fn paper_suite_passes() {
    let o = lefschetz(&["paper-suite"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let first = stdout(&o).lines().next().unwrap().to_string();
    let (passed, rest) = first.split_once(" of ").unwrap();
    assert_eq!(rest.split_whitespace().next(), Some(passed));
}

#[test]
fn bundled_descriptions_round_trip() {
    let mut count = 0;
    for entry in std::fs::read_dir(examples()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("alg") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let d = AlgebraDescription::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let again = AlgebraDescription::parse(&d.format()).unwrap();
        assert_eq!(again, d, "{}", path.display());
        assert_eq!(again.format(), d.format());
        d.build().unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        count += 1;
    }
    assert!(count >= 20);
}
