//! `sextic`: a command-line front end for the exact non-integrability
//! analysis of H = ½(p_r² + p_z²) + r⁶ + A r²z⁴ + D r³z³ + B r⁴z² + C z⁶.
//!
//! Every subcommand prints a single JSON report to stdout whose shape is
//! pinned by `schema/report.schema.json`. Diagnostics go to stderr. The
//! process exit code is part of the contract:
//!
//! - 0: success;
//! - 2: out-of-scope input (C = 0, where the analysis does not apply);
//! - 3: parse error in arguments, environment, or input files;
//! - 4: a truncation or step cap was exceeded;
//! - 1: any other failure.
//!
//! The recurrence step cap defaults to the library cap and can be raised
//! per invocation with `--step-cap` or globally with the environment
//! variable `SEXTIC_STEP_CAP` (the flag wins).

mod commands;
mod parse;
mod report;

use clap::{Parser, Subcommand};
use commands::{FamilyArg, SeriesEq, ValidateEq};
use sextic_core::frobenius::DEFAULT_STEP_CAP;
use sextic_core::numeric::IntegrationConfig;
use sextic_core::{Error, Result};

const ENV_STEP_CAP: &str = "SEXTIC_STEP_CAP";

const AFTER_HELP: &str = "Exit codes:
  0  success
  2  out-of-scope input (C = 0)
  3  parse error
  4  truncation or step cap exceeded
  1  any other failure

Exact parameters are rational strings like 3/4 or -7; decimals are
rejected. SEXTIC_STEP_CAP overrides the default recurrence step cap
when --step-cap is absent.";

#[derive(Parser)]
#[command(name = "sextic", version, about = "Exact non-integrability analysis for a sextic Hamiltonian family", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide integrability from exact rational parameters (h = 1).
    Check {
        #[arg(long = "A", value_name = "RATIONAL", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", value_name = "RATIONAL", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "C", value_name = "RATIONAL", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "D", value_name = "RATIONAL", allow_hyphen_values = true)]
        d: String,
        /// Recompute residue tables for the realized k values and record
        /// their agreement in the trace.
        #[arg(long)]
        live_residue_check: bool,
        #[arg(long, value_name = "N")]
        step_cap: Option<usize>,
    },
    /// Exponents, monodromy diagonals, and solvability of an associated
    /// Legendre equation.
    Legendre {
        /// Rational or surd, e.g. 1/4 or sqrt(2) or -sqrt(3/2).
        #[arg(long, value_name = "RATIONAL|SURD", allow_hyphen_values = true)]
        p: String,
        #[arg(long, value_name = "RATIONAL|SURD", allow_hyphen_values = true)]
        q: String,
    },
    /// The per-component second-level residue table at one resonance
    /// index k.
    Residues {
        #[arg(long, value_name = "INTEGER", allow_hyphen_values = true)]
        k: i64,
        /// Restrict to one resonance branch; both are reported otherwise.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Also evaluate each residue at this rational coupling h.
        #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
        h: Option<String>,
        #[arg(long, value_name = "N")]
        step_cap: Option<usize>,
    },
    /// A fundamental pair of Frobenius solutions as exact series.
    Series {
        #[arg(long, value_enum)]
        eq: SeriesEq,
        /// Resonance parameter, required for ve1-xi11.
        #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
        tau: Option<String>,
        /// Recurrence steps beyond each exponent.
        #[arg(long, value_name = "N", default_value_t = 2)]
        order: usize,
        #[arg(long, value_name = "N")]
        step_cap: Option<usize>,
    },
    /// Cross-check a series pair against adaptive numerical integration.
    Validate {
        #[arg(long, value_enum)]
        eq: ValidateEq,
        /// Resonance parameter, required for r1.
        #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
        tau: Option<String>,
        /// Comparison window lo:hi in the series variable.
        #[arg(long, value_name = "LO:HI", default_value = "0.01:0.1")]
        window: String,
        /// Coupling constant as an exact rational.
        #[arg(long, value_name = "RATIONAL", default_value = "1", allow_hyphen_values = true)]
        h: String,
        #[arg(long, value_name = "N", default_value_t = 12)]
        order: usize,
        #[arg(long, value_name = "N")]
        step_cap: Option<usize>,
        #[arg(long, value_name = "TOL", default_value_t = IntegrationConfig::default().rel_tol)]
        rel_tol: f64,
        #[arg(long, value_name = "TOL", default_value_t = IntegrationConfig::default().abs_tol)]
        abs_tol: f64,
        #[arg(long, value_name = "N", default_value_t = IntegrationConfig::default().max_steps)]
        max_steps: usize,
        #[arg(long, value_name = "BITS", default_value_t = IntegrationConfig::default().precision_bits)]
        precision_bits: usize,
    },
    /// Decide every row of a parameter CSV (columns A, B, C, D).
    Sweep {
        #[arg(long = "in", value_name = "CSV")]
        input: std::path::PathBuf,
        #[arg(long = "out", value_name = "CSV")]
        output: std::path::PathBuf,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
        }
    };
    match dispatch(cli.command) {
        Ok((report, code)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("reports are plain JSON")
            );
            code
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<(serde_json::Value, i32)> {
    match cmd {
        Cmd::Check {
            a,
            b,
            c,
            d,
            live_residue_check,
            step_cap,
        } => commands::check(&a, &b, &c, &d, live_residue_check, resolve_step_cap(step_cap)?),
        Cmd::Legendre { p, q } => commands::legendre(&p, &q),
        Cmd::Residues {
            k,
            family,
            h,
            step_cap,
        } => commands::residues(k, family, h.as_deref(), resolve_step_cap(step_cap)?),
        Cmd::Series {
            eq,
            tau,
            order,
            step_cap,
        } => commands::series(eq, tau.as_deref(), order, resolve_step_cap(step_cap)?),
        Cmd::Validate {
            eq,
            tau,
            window,
            h,
            order,
            step_cap,
            rel_tol,
            abs_tol,
            max_steps,
            precision_bits,
        } => {
            let config = IntegrationConfig {
                rel_tol,
                abs_tol,
                max_steps,
                precision_bits,
            };
            commands::validate(
                eq,
                tau.as_deref(),
                &window,
                &h,
                order,
                resolve_step_cap(step_cap)?,
                config,
            )
        }
        Cmd::Sweep { input, output } => commands::sweep(&input, &output),
    }
}

/// Flag, then environment, then the library default.
fn resolve_step_cap(flag: Option<usize>) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(ENV_STEP_CAP) {
        Ok(value) => value.trim().parse().map_err(|_| {
            Error::Parse(format!(
                "{ENV_STEP_CAP} must be a non-negative integer, got '{value}'"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_STEP_CAP),
        Err(e) => Err(Error::Parse(format!("{ENV_STEP_CAP}: {e}"))),
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => 3,
        Error::OutOfScope(_) => 2,
        Error::TruncationCap { .. } | Error::StepsExhausted { .. } => 4,
        _ => 1,
    }
}
