//! Command-line front end: reads algebra and map description files, runs
//! the checks and constructions of `lefschetz-core`, and prints a text or
//! JSON report.

mod commands;
mod input;
pub mod report;
mod suite;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lefschetz_core::lefschetz::{GenericityConfig, Mode};

pub use report::{Outcome, Report};

/// Exit code for success, including mathematical negatives without `--expect`.
pub const EXIT_OK: i32 = 0;
/// `--expect` did not match, or a regression case failed.
pub const EXIT_MISMATCH: i32 = 1;
/// Bad arguments or input files.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lefschetz", version, about = "Lefschetz properties of graded artinian algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Exit with status 1 unless the headline result equals this value.
    #[arg(long, global = true, value_name = "VALUE")]
    pub expect: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Wlp,
    Slp,
    Slpn,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Wlp => Mode::Wlp,
            ModeArg::Slp => Mode::Slp,
            ModeArg::Slpn => Mode::Slpn,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct Genericity {
    /// Seed for random linear forms.
    #[arg(long, env = "LEFSCHETZ_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Random forms tried before giving up.
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    /// Coefficients are drawn from 1..=bound.
    #[arg(long, default_value_t = 10_000)]
    pub bound: u64,
    /// Certify negative results symbolically.
    #[arg(long)]
    pub certify: bool,
}

impl Genericity {
    pub fn config(&self) -> GenericityConfig {
        GenericityConfig {
            seed: self.seed,
            trials: self.trials,
            bound: self.bound,
            certify: self.certify,
        }
    }
}

/// Two algebras glued over a third along maps onto it. Without `T` the
/// construction is taken over the field.
#[derive(Clone, Debug, Args)]
pub struct Gluing {
    pub a: PathBuf,
    pub b: PathBuf,
    pub t: Option<PathBuf>,
    /// Map file for A -> T, lines `x -> image`.
    #[arg(long, requires = "t")]
    pub map_a: Option<PathBuf>,
    /// Map file for B -> T.
    #[arg(long, requires = "t")]
    pub map_b: Option<PathBuf>,
    /// Also check this property of the result.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[command(flatten)]
    pub genericity: Genericity,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert function.
    Hilbert { file: PathBuf },
    /// Socle dimensions and basis.
    Socle { file: PathBuf },
    /// Macaulay dual generator of a Gorenstein algebra.
    Dualgen { file: PathBuf },
    /// Annihilator presentation of a dual generator.
    Ann { file: PathBuf },
    /// WLP, SLP or SLPn for a generic or given linear form.
    Check {
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Search random linear forms (the default).
        #[arg(long, conflicts_with = "element")]
        generic: bool,
        /// Check this linear form instead.
        #[arg(long)]
        element: Option<String>,
        file: PathBuf,
        #[command(flatten)]
        genericity: Genericity,
    },
    /// Jordan type of multiplication by a linear form.
    Jordan {
        #[arg(long)]
        element: Option<String>,
        file: PathBuf,
        #[command(flatten)]
        genericity: Genericity,
    },
    /// Higher Hessians of the dual generator.
    Hessian {
        /// Only hess^i, printed as a polynomial.
        #[arg(long)]
        degree: Option<usize>,
        file: PathBuf,
        #[command(flatten)]
        genericity: Genericity,
    },
    /// Non-Lefschetz locus in the coefficients of L.
    Nll {
        #[arg(long, value_enum, default_value = "wlp")]
        mode: ModeArg,
        file: PathBuf,
    },
    /// sl2 triple and weight decomposition from an SLPn element.
    Sl2 {
        #[arg(long)]
        element: Option<String>,
        file: PathBuf,
        #[command(flatten)]
        genericity: Genericity,
    },
    /// Tensor product over the field.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[command(flatten)]
        genericity: Genericity,
    },
    /// Fiber product of A and B over T.
    FiberProduct(Gluing),
    /// Connected sum of A and B over T.
    ConnectSum(Gluing),
    /// Blowup of A along a surjection onto T.
    Blowup {
        a: PathBuf,
        t: PathBuf,
        /// Map file for A -> T.
        #[arg(long)]
        map: PathBuf,
        /// Comma-separated a_1, ..., a_{n-1} in A with deg a_i = i.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        coefficients: String,
        /// Constant term of the relation; a nonzero multiple of the Thom class.
        #[arg(long, allow_hyphen_values = true)]
        constant: String,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[command(flatten)]
        genericity: Genericity,
    },
    /// h-vector from an f-vector.
    Hvector {
        /// f_0, f_1, ...
        #[arg(required = true, allow_negative_numbers = true)]
        f: Vec<String>,
        /// Dimension d; defaults to the length of the f-vector.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Replay the bundled worked examples.
    PaperSuite,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code with the text for standard output and standard error.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() { (code, String::new(), text) } else { (code, text, String::new()) };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut inputs = input::Inputs::default();
    let start = Instant::now();
    let outcome = match commands::dispatch(&cli.command, &mut inputs) {
        Ok(o) => o,
        Err(e) => return (EXIT_INPUT, String::new(), format!("error: {e:#}\n")),
    };
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let expect = cli.expect.as_ref().map(|want| report::ExpectOutcome {
        expected: want.clone(),
        actual: outcome.key.clone(),
        matched: report::normalize(want) == report::normalize(&outcome.key),
    });
    let report = Report {
        schema: report::SCHEMA,
        command: echo,
        inputs: inputs.digests,
        summary: outcome.summary,
        results: outcome.results,
        certification: outcome.certification,
        expect,
        timing_ms: cli.timing.then_some(elapsed),
    };
    let mismatch = outcome.mismatch || report.expect.as_ref().is_some_and(|e| !e.matched);
    let text = if cli.json { report.to_json() } else { report.to_text() };
    (if mismatch { EXIT_MISMATCH } else { EXIT_OK }, text, String::new())
}
