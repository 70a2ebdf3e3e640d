use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedStructure;
use crate::exactmath::Scalar;

use super::operators::LinearActions;
use super::report::{Certification, LefschetzReport, MapRecord, Mode, Verdict};
use super::symbolic::{generic_rank, SymbolicRank};

/// Parameters of the random search for Lefschetz elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityConfig {
    pub seed: u64,
    pub trials: usize,
    /// Coefficients are drawn uniformly from 1..=bound.
    pub bound: u64,
    /// Force symbolic certification of negative results.
    pub certify: bool,
}

impl Default for GenericityConfig {
    fn default() -> Self {
        GenericityConfig {
            seed: 0,
            trials: 3,
            bound: 10_000,
            certify: false,
        }
    }
}

/// Automatic symbolic escalation applies when dim A_1 and dim A are at most these.
pub const ESCALATE_MAX_LINEAR: usize = 6;
pub const ESCALATE_MAX_DIM: usize = 60;

impl GenericityConfig {
    /// The bound must exceed the degree of every minor tested, D times the
    /// largest matrix size, so random evaluation keeps a useful margin.
    pub fn margin_ok(&self, hilbert: &[usize]) -> bool {
        let top = hilbert.len().saturating_sub(1) as u64;
        let size = hilbert.iter().copied().max().unwrap_or(0) as u64;
        self.bound > top * size
    }

    pub fn random_form(&self, trial: usize, n: usize, field: crate::exactmath::FieldSpec) -> Vec<Scalar> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        (0..n)
            .map(|_| field.from_i64(rng.gen_range(1..=self.bound) as i64))
            .collect()
    }
}

/// The maps tested by each mode: `(i, d, expected rank, must be square)`.
pub fn planned_maps(mode: Mode, hilbert: &[usize]) -> Vec<(usize, usize, usize, bool)> {
    let top = hilbert.len() - 1;
    let h = |i: usize| hilbert[i];
    match mode {
        Mode::Wlp => (0..top).map(|i| (i, 1, h(i).min(h(i + 1)), false)).collect(),
        Mode::Slp => (1..=top)
            .flat_map(|d| (0..=top - d).map(move |i| (i, d, h(i).min(h(i + d)), false)))
            .collect(),
        Mode::Slpn => (0..=top / 2)
            .filter(|&i| top - 2 * i >= 1)
            .map(|i| (i, top - 2 * i, h(i).min(h(top - i)), true))
            .collect(),
    }
}

fn record(hilbert: &[usize], plan: (usize, usize, usize, bool), achieved: usize) -> MapRecord {
    let (i, d, expected, square) = plan;
    let full = achieved == expected && (!square || hilbert[i] == hilbert[i + d]);
    MapRecord {
        i,
        d,
        expected,
        achieved,
        full,
    }
}

/// Ranks of the planned maps for a concrete linear form.
pub fn ranks_for(actions: &LinearActions, coeffs: &[Scalar], plan: &[(usize, usize, usize, bool)]) -> Vec<usize> {
    let top = actions.top();
    let mut powers: Vec<Option<Vec<crate::exactmath::Matrix>>> = vec![None; top + 1];
    plan.iter()
        .map(|&(i, d, _, _)| {
            let p = powers[i].get_or_insert_with(|| {
                let dmax = plan
                    .iter()
                    .filter(|(j, _, _, _)| *j == i)
                    .map(|(_, e, _, _)| *e)
                    .max()
                    .unwrap_or(0);
                actions.powers_from(coeffs, i, dmax)
            });
            p[d - 1].rank()
        })
        .collect()
}

/// Lefschetz check for a given element with coordinates `coeffs` in A_1.
pub fn check_element<A: GradedStructure + ?Sized>(a: &A, mode: Mode, coeffs: &[Scalar]) -> LefschetzReport {
    let actions = LinearActions::new(a);
    check_element_with(&actions, mode, coeffs)
}

pub fn check_element_with(actions: &LinearActions, mode: Mode, coeffs: &[Scalar]) -> LefschetzReport {
    let h = actions.hilbert_function().to_vec();
    let plan = planned_maps(mode, &h);
    let ranks = ranks_for(actions, coeffs, &plan);
    let maps: Vec<MapRecord> = plan.iter().zip(ranks).map(|(&p, r)| record(&h, p, r)).collect();
    let holds = maps.iter().all(|m| m.full) && (mode != Mode::Slpn || symmetric_ok(&h));
    LefschetzReport {
        mode,
        maps,
        verdict: if holds { Verdict::Holds } else { Verdict::Fails },
        witness: if holds { Some(coeffs.to_vec()) } else { None },
        certification: Certification::GivenElement,
    }
}

fn symmetric_ok(h: &[usize]) -> bool {
    super::sequences::symmetric(h)
}

pub fn wlp_for_element<A: GradedStructure + ?Sized>(a: &A, coeffs: &[Scalar]) -> LefschetzReport {
    check_element(a, Mode::Wlp, coeffs)
}

pub fn slp_for_element<A: GradedStructure + ?Sized>(a: &A, coeffs: &[Scalar]) -> LefschetzReport {
    check_element(a, Mode::Slp, coeffs)
}

pub fn slpn_for_element<A: GradedStructure + ?Sized>(a: &A, coeffs: &[Scalar]) -> LefschetzReport {
    check_element(a, Mode::Slpn, coeffs)
}

/// Random search for a Lefschetz element, escalating negative results to
/// symbolic ranks when the algebra is small or `cfg.certify` is set.
pub fn check_generic<A: GradedStructure + ?Sized>(a: &A, mode: Mode, cfg: &GenericityConfig) -> LefschetzReport {
    let actions = LinearActions::new(a);
    check_generic_with(&actions, mode, cfg)
}

pub fn check_generic_with(actions: &LinearActions, mode: Mode, cfg: &GenericityConfig) -> LefschetzReport {
    let h = actions.hilbert_function().to_vec();
    let plan = planned_maps(mode, &h);
    let n = actions.nparams();
    let mut best = vec![0usize; plan.len()];
    for trial in 0..cfg.trials.max(1) {
        let coeffs = cfg.random_form(trial, n, actions.field());
        let ranks = ranks_for(actions, &coeffs, &plan);
        for (b, r) in best.iter_mut().zip(&ranks) {
            *b = (*b).max(*r);
        }
        let maps: Vec<MapRecord> = plan.iter().zip(&ranks).map(|(&p, &r)| record(&h, p, r)).collect();
        if maps.iter().all(|m| m.full) && (mode != Mode::Slpn || symmetric_ok(&h)) {
            return LefschetzReport {
                mode,
                maps,
                verdict: Verdict::Holds,
                witness: Some(coeffs),
                certification: Certification::Witness {
                    seed: cfg.seed,
                    trials: cfg.trials,
                    bound: cfg.bound,
                    trial,
                },
            };
        }
    }
    let mut maps: Vec<MapRecord> = plan.iter().zip(&best).map(|(&p, &r)| record(&h, p, r)).collect();
    let dim: usize = h.iter().sum();
    let escalate = cfg.certify || (n <= ESCALATE_MAX_LINEAR && dim <= ESCALATE_MAX_DIM);
    if mode == Mode::Slpn && !symmetric_ok(&h) {
        return LefschetzReport {
            mode,
            maps,
            verdict: Verdict::Fails,
            witness: None,
            certification: Certification::Symbolic {
                method: "Hilbert function not symmetric".into(),
            },
        };
    }
    if !escalate {
        return LefschetzReport {
            mode,
            maps,
            verdict: Verdict::ProbablyFails,
            witness: None,
            certification: Certification::Randomized {
                seed: cfg.seed,
                trials: cfg.trials,
                bound: cfg.bound,
            },
        };
    }
    let mut methods: Vec<String> = Vec::new();
    let mut failed = false;
    let mut unknown = false;
    for m in maps.iter_mut().filter(|m| !m.full) {
        let mut certified = m.expected == m.achieved;
        if !certified {
            match generic_rank(actions, m.i, m.d, m.expected) {
                SymbolicRank::Exact(r, method) => {
                    certified = true;
                    m.achieved = r;
                    if !methods.contains(&method) {
                        methods.push(method);
                    }
                }
                SymbolicRank::Deficient(method) => {
                    certified = true;
                    if !methods.contains(&method) {
                        methods.push(method);
                    }
                }
                SymbolicRank::Unknown => {}
            }
        }
        let square = mode == Mode::Slpn;
        let r = m.achieved;
        let now_full = r == m.expected && (!square || h[m.i] == h[m.i + m.d]);
        m.full = now_full;
        if !certified {
            unknown = true;
        } else if !now_full {
            failed = true;
        }
    }
    let verdict = if failed {
        Verdict::Fails
    } else if unknown {
        Verdict::ProbablyFails
    } else {
        Verdict::Holds
    };
    LefschetzReport {
        mode,
        maps,
        verdict,
        witness: None,
        certification: Certification::Symbolic {
            method: methods.join(", "),
        },
    }
}

pub fn wlp_generic<A: GradedStructure + ?Sized>(a: &A, cfg: &GenericityConfig) -> LefschetzReport {
    check_generic(a, Mode::Wlp, cfg)
}

pub fn slp_generic<A: GradedStructure + ?Sized>(a: &A, cfg: &GenericityConfig) -> LefschetzReport {
    check_generic(a, Mode::Slp, cfg)
}

pub fn slpn_generic<A: GradedStructure + ?Sized>(a: &A, cfg: &GenericityConfig) -> LefschetzReport {
    check_generic(a, Mode::Slpn, cfg)
}
