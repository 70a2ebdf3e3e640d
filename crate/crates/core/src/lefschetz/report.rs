use std::fmt;

use serde::Serialize;

use crate::exactmath::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Wlp,
    Slp,
    Slpn,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Wlp => "WLP",
            Mode::Slp => "SLP",
            Mode::Slpn => "SLPn",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "wlp" => Ok(Mode::Wlp),
            "slp" => Ok(Mode::Slp),
            "slpn" => Ok(Mode::Slpn),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// Rank record for `L^d : A_i -> A_{i+d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapRecord {
    pub i: usize,
    pub d: usize,
    pub expected: usize,
    pub achieved: usize,
    pub full: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    ProbablyFails,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::ProbablyFails => "probably fails",
        })
    }
}

/// How a verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certification {
    /// Ranks of a concrete element; exact for that element.
    GivenElement,
    /// A random element of full rank everywhere, found in trial `trial`.
    Witness {
        seed: u64,
        trials: usize,
        bound: u64,
        trial: usize,
    },
    /// Ranks over the field of rational functions in the coefficients.
    Symbolic { method: String },
    /// No witness found and no symbolic check run.
    Randomized { seed: u64, trials: usize, bound: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LefschetzReport {
    pub mode: Mode,
    pub maps: Vec<MapRecord>,
    pub verdict: Verdict,
    /// Coefficients of the witness against the basis of A_1.
    pub witness: Option<Vec<Scalar>>,
    pub certification: Certification,
}

impl LefschetzReport {
    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }

    pub fn failing_maps(&self) -> Vec<&MapRecord> {
        self.maps.iter().filter(|m| !m.full).collect()
    }
}
