use serde::Serialize;

use crate::algebra::GradedStructure;
use crate::error::{Error, Result};
use crate::lefschetz::{check_generic, GenericityConfig, Mode, Verdict};

/// Preservation statements whose hypotheses can be checked on concrete inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Inputs A, B: Gorenstein of one socle degree with SLP, so A ×_F B has SLP.
    FiberProductOverField,
    /// Inputs A, B with SLP, so A #_F B has SLP.
    ConnectedSumOverField,
    /// Inputs A, B, T: A and B standard graded Gorenstein of socle degree d
    /// with SLP, T Gorenstein of socle degree k < floor((d - 1) / 2), so the
    /// connected sum over T has WLP.
    ConnectedSumWlp,
    /// Inputs A, T Gorenstein with SLP, characteristic 0 or above d, so every
    /// blowup has SLP.
    BlowupSlp,
    /// Inputs A, T Gorenstein with WLP and d - k <= 2, so every blowup has WLP.
    BlowupWlp,
    /// Inputs A, B with SLPn, so A ⊗ B has SLPn.
    TensorSlpn,
}

impl Theorem {
    fn arity(self) -> usize {
        match self {
            Theorem::ConnectedSumWlp => 3,
            _ => 2,
        }
    }

    /// The property guaranteed for the output.
    pub fn conclusion(self) -> Mode {
        match self {
            Theorem::ConnectedSumWlp | Theorem::BlowupWlp => Mode::Wlp,
            Theorem::TensorSlpn => Mode::Slpn,
            _ => Mode::Slp,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObservedVerdict {
    pub name: String,
    pub mode: Mode,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PreservationReport {
    pub theorem: Theorem,
    pub hypotheses: Vec<Hypothesis>,
    pub hypotheses_hold: bool,
    pub inputs: Vec<ObservedVerdict>,
    pub output: ObservedVerdict,
    /// The hypotheses hold but the output does not have the guaranteed property.
    pub contradiction: bool,
}

/// Runs generic checks on the named inputs and the output and compares them
/// with the theorem's guarantee.
pub fn lefschetz_preservation_report(
    theorem: Theorem,
    inputs: &[(&str, &dyn GradedStructure)],
    output: &dyn GradedStructure,
    cfg: &GenericityConfig,
) -> Result<PreservationReport> {
    if inputs.len() != theorem.arity() {
        return Err(Error::Invalid(format!(
            "{theorem:?} takes {} inputs, got {}",
            theorem.arity(),
            inputs.len()
        )));
    }
    let mut hypotheses = Vec::new();
    let mut observed = Vec::new();
    let mut hyp = |statement: String, holds: bool| hypotheses.push(Hypothesis { statement, holds });
    let mut check = |name: &str, a: &dyn GradedStructure, mode: Mode| -> bool {
        let v = check_generic(a, mode, cfg).verdict;
        observed.push(ObservedVerdict {
            name: name.to_string(),
            mode,
            verdict: v,
        });
        v.holds()
    };
    let socle = |a: &dyn GradedStructure| a.socle_degree();
    match theorem {
        Theorem::FiberProductOverField | Theorem::ConnectedSumOverField | Theorem::TensorSlpn => {
            let mode = if theorem == Theorem::TensorSlpn { Mode::Slpn } else { Mode::Slp };
            for (name, a) in inputs {
                let ok = check(name, *a, mode);
                hyp(format!("{name} has {mode}"), ok);
            }
            if theorem == Theorem::FiberProductOverField {
                for (name, a) in inputs {
                    hyp(format!("{name} is Gorenstein"), a.is_gorenstein());
                }
                hyp(
                    "equal socle degrees".into(),
                    socle(inputs[0].1) == socle(inputs[1].1),
                );
            }
        }
        Theorem::ConnectedSumWlp => {
            let (d, k) = (socle(inputs[0].1), socle(inputs[2].1));
            for (name, a) in &inputs[..2] {
                let ok = check(name, *a, Mode::Slp);
                hyp(format!("{name} has SLP"), ok);
                hyp(format!("{name} is standard graded"), a.is_standard_graded());
                hyp(format!("{name} is Gorenstein"), a.is_gorenstein());
            }
            hyp("equal socle degrees".into(), socle(inputs[1].1) == d);
            hyp(format!("{} is Gorenstein", inputs[2].0), inputs[2].1.is_gorenstein());
            hyp(format!("k = {k} < floor((d - 1) / 2) = {}", d.saturating_sub(1) / 2), d >= 1 && k < (d - 1) / 2);
        }
        Theorem::BlowupSlp | Theorem::BlowupWlp => {
            let (d, k) = (socle(inputs[0].1), socle(inputs[1].1));
            let mode = if theorem == Theorem::BlowupSlp { Mode::Slp } else { Mode::Wlp };
            for (name, a) in inputs {
                let ok = check(name, *a, mode);
                hyp(format!("{name} has {mode}"), ok);
                hyp(format!("{name} is Gorenstein"), a.is_gorenstein());
            }
            hyp(format!("d = {d} > k = {k}"), d > k);
            if theorem == Theorem::BlowupSlp {
                let p = inputs[0].1.field().characteristic();
                hyp(format!("characteristic {p} is 0 or exceeds d"), p == 0 || p > d as u64);
            } else {
                hyp(format!("d - k = {} <= 2", d.saturating_sub(k)), d <= k + 2);
            }
        }
    }
    let mode = theorem.conclusion();
    let verdict = check_generic(output, mode, cfg).verdict;
    let hypotheses_hold = hypotheses.iter().all(|h| h.holds);
    Ok(PreservationReport {
        theorem,
        contradiction: hypotheses_hold && !verdict.holds(),
        hypotheses,
        hypotheses_hold,
        inputs: observed,
        output: ObservedVerdict {
            name: "output".into(),
            mode,
            verdict,
        },
    })
}
