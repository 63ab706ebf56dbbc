//! `maxcirc PROBLEM.json` — analyses one problem file and writes a JSON
//! report.
//!
//! Exit codes: 0 success, 2 unreadable or invalid input (no report),
//! 3 report written but some theorem hypothesis is not met, 4 internal
//! assertion failure.

mod problem;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use maxcirc::AttractionMode;

use problem::{Problem, ProblemError};
use report::Settings;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    /// Attraction systems with exponent n².
    #[value(name = "exact_n2", alias = "exact-n2")]
    ExactN2,
    /// Attraction systems with exponent T(A).
    #[value(name = "min_transient", alias = "min-transient")]
    MinTransient,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Arithmetic {
    /// Rationals as "p/q" strings.
    Rational,
    /// Rationals as {"exact": "p/q", "decimal": "…"}; the decimal is display only.
    Decimal,
}

#[derive(Debug, Parser)]
#[command(name = "maxcirc", version, about = "Exact max-times analysis of circulant matrices")]
struct Args {
    /// Problem file (JSON).
    problem: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::MinTransient)]
    mode: Mode,
    /// Sampled members per inclusion check.
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = Arithmetic::Rational)]
    arithmetic: Arithmetic,
    /// Report path; standard output when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Seed for the inclusion sampler.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

const EXIT_INPUT: u8 = 2;
const EXIT_HYPOTHESIS: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

fn main() -> ExitCode {
    let args = Args::parse();
    let problem = match std::fs::read_to_string(&args.problem)
        .map_err(|source| ProblemError::Io { path: args.problem.display().to_string(), source })
        .and_then(|text| Problem::parse(&text))
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("maxcirc: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let settings = Settings {
        mode: match args.mode {
            Mode::ExactN2 => AttractionMode::ExactN2,
            Mode::MinTransient => AttractionMode::MinTransient,
        },
        trials: args.trials,
        seed: args.seed,
        decimal: matches!(args.arithmetic, Arithmetic::Decimal),
    };
    let outcome = match report::run(&settings, &problem) {
        Ok(o) => o,
        Err(e @ maxcirc::Error::InternalAssertion(_)) => {
            eprintln!("maxcirc: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
        Err(e) => {
            eprintln!("maxcirc: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let mut text = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
    text.push('\n');
    let written = match &args.output {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("maxcirc: cannot write report: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    if outcome.hypothesis_not_met {
        ExitCode::from(EXIT_HYPOTHESIS)
    } else {
        ExitCode::SUCCESS
    }
}
