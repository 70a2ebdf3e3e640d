//! Text description of an algebra:
//!
//! ```text
//! vars: x,y,z
//! weights: 1,1,1
//! field: QQ
//! ideal:
//! x^2
//! y^2
//! z^2
//! ```
//!
//! `weights:` and `field:` are optional (unit weights, QQ). Instead of
//! `ideal:` with one generator per line, `dualgen:` is followed by a single
//! polynomial in the upper-cased variables. Blank lines and text after `#`
//! are ignored.

use crate::error::{Error, Result};
use crate::exactmath::FieldSpec;
use crate::poly::{DualPoly, Poly};

use super::graded::GradedAlgebra;
use super::ideal::Ideal;
use super::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub enum Presentation {
    Ideal(Vec<Poly>),
    DualGenerator(DualPoly),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraDescription {
    pub ring: Ring,
    pub presentation: Presentation,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Shifts a single-line parse error to its place in the file.
fn relocate(e: Error, line: usize, offset: usize) -> Error {
    match e {
        Error::Parse {
            column, message, ..
        } => parse_error(line, column + offset, message),
        other => other,
    }
}

pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let t = text.trim();
    if t == "QQ" {
        return Ok(FieldSpec::RATIONALS);
    }
    let inner = t
        .strip_prefix("Fp(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Invalid(format!("unknown field `{t}`; expected QQ or Fp(p)")))?;
    let p: u64 = inner
        .trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("bad characteristic `{inner}`")))?;
    FieldSpec::prime(p)
}

impl AlgebraDescription {
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<(usize, Vec<String>)> = None;
        let mut weights: Option<(usize, Vec<u32>)> = None;
        let mut field = FieldSpec::RATIONALS;
        let mut body: Option<(bool, Vec<(usize, usize, String)>)> = None;
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            if let Some((is_ideal, items)) = body.as_mut() {
                let lead = content.len() - content.trim_start().len();
                if !*is_ideal && !items.is_empty() {
                    return Err(parse_error(line_no, lead + 1, "dualgen takes a single polynomial"));
                }
                items.push((line_no, lead, content.trim().to_string()));
                continue;
            }
            let Some((key, value)) = content.split_once(':') else {
                return Err(parse_error(line_no, 1, "expected `key: value`"));
            };
            let value_col = key.len() + 1;
            match key.trim() {
                "vars" => {
                    let v: Vec<String> = value.split(',').map(|s| s.trim().to_string()).collect();
                    names = Some((line_no, v));
                }
                "weights" => {
                    let w = value
                        .split(',')
                        .map(|s| s.trim().parse::<u32>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| parse_error(line_no, value_col + 1, "weights must be positive integers"))?;
                    weights = Some((line_no, w));
                }
                "field" => {
                    field = parse_field(value)
                        .map_err(|e| parse_error(line_no, value_col + 1, e.to_string()))?;
                }
                "ideal" | "dualgen" => {
                    let is_ideal = key.trim() == "ideal";
                    let mut items = Vec::new();
                    if !value.trim().is_empty() {
                        let lead = value.len() - value.trim_start().len();
                        items.push((line_no, value_col + lead, value.trim().to_string()));
                    }
                    body = Some((is_ideal, items));
                }
                other => {
                    return Err(parse_error(line_no, 1, format!("unknown key `{other}`")));
                }
            }
        }
        let (names_line, names) = names.ok_or_else(|| parse_error(1, 1, "missing `vars:` line"))?;
        let weights = match weights {
            Some((line, w)) => {
                if w.len() != names.len() {
                    return Err(parse_error(line, 1, "one weight per variable required"));
                }
                w
            }
            None => vec![1; names.len()],
        };
        let ring = Ring::with_weights(names, weights, field)
            .map_err(|e| parse_error(names_line, 1, e.to_string()))?;
        let (is_ideal, items) =
            body.ok_or_else(|| parse_error(1, 1, "missing `ideal:` or `dualgen:` section"))?;
        let presentation = if is_ideal {
            let gens = items
                .iter()
                .map(|(line, col, t)| ring.parse(t).map_err(|e| relocate(e, *line, *col)))
                .collect::<Result<Vec<_>>>()?;
            Presentation::Ideal(gens)
        } else {
            let (line, col, t) = items
                .first()
                .ok_or_else(|| parse_error(1, 1, "empty `dualgen:` section"))?;
            Presentation::DualGenerator(ring.parse_dual(t).map_err(|e| relocate(e, *line, *col))?)
        };
        Ok(AlgebraDescription { ring, presentation })
    }

    pub fn format(&self) -> String {
        let mut out = format!("vars: {}\n", self.ring.names().join(","));
        if !self.ring.has_unit_weights() {
            let w: Vec<String> = self.ring.weights().iter().map(|w| w.to_string()).collect();
            out.push_str(&format!("weights: {}\n", w.join(",")));
        }
        out.push_str(&format!("field: {}\n", self.ring.field()));
        match &self.presentation {
            Presentation::Ideal(gens) => {
                out.push_str("ideal:\n");
                for g in gens {
                    out.push_str(&self.ring.format(g));
                    out.push('\n');
                }
            }
            Presentation::DualGenerator(f) => {
                out.push_str("dualgen:\n");
                out.push_str(&self.ring.format_dual(f));
                out.push('\n');
            }
        }
        out
    }

    pub fn build(&self) -> Result<GradedAlgebra> {
        match &self.presentation {
            Presentation::Ideal(gens) => {
                GradedAlgebra::from_ideal(&Ideal::new(&self.ring, gens.clone())?, None)
            }
            Presentation::DualGenerator(f) => GradedAlgebra::from_dual_generator(&self.ring, f),
        }
    }

    /// Dual generator when the algebra has one stored, minimal generators otherwise.
    pub fn of(a: &GradedAlgebra) -> Self {
        let presentation = match a.stored_dual_generator() {
            Some(f) => Presentation::DualGenerator(f.clone()),
            None => Presentation::Ideal(a.minimal_generators()),
        };
        AlgebraDescription {
            ring: a.ring().clone(),
            presentation,
        }
    }
}
