//! Command-line front end for `lieflag_core`.
//!
//! Exit codes: 0 success, 1 internal failure, 2 invalid input, 3 errata
//! (a printed formula disagrees with the computation).

// `!(x < tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Tensor code reads best in index notation.
#![allow(clippy::needless_range_loop)]

mod commands;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use lieflag_core::finsler::MetricKind;
use lieflag_core::sampling::DEFAULT_SEED;

pub use report::{RunReport, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ERRATA: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lieflag",
    version,
    about = "Berwald-type Randers and Matsumoto metrics on 3-dimensional Lie groups"
)]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    #[arg(long, global = true, env = "LIEFLAG_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Override the command's default tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Samples per catalog row or random draws.
    #[arg(long, global = true)]
    pub samples: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Levi-Civita connection of a catalog row or an algebra file.
    Connection {
        #[command(flatten)]
        source: Source,
        /// Diff against the printed table row.
        #[arg(long)]
        verify: bool,
    },
    /// Curvature tensor and coordinate-plane sectional curvatures.
    Curvature {
        #[command(flatten)]
        source: Source,
    },
    /// Parallel left-invariant vector fields (and the Berwald test for a
    /// deformation given in the file).
    Parallel {
        #[command(flatten)]
        source: Source,
    },
    /// Search all rows for parallel fields and match the classification.
    Classify,
    /// Flag curvature on the non-unimodular row 11, pipeline against closed form.
    Flag(FlagArgs),
    /// Compare every row with its printed connection.
    VerifyTable,
    /// Dump the catalog as JSON.
    ExportCatalog {
        /// Write to a file instead of standard output.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Catalog row (1-15).
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    pub case: Option<u8>,

    /// Row parameter, repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_param)]
    pub params: Vec<(String, f64)>,

    /// JSON algebra document.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FlagArgs {
    #[arg(long)]
    pub kind: MetricKind,

    #[arg(long, allow_hyphen_values = true)]
    pub p: f64,

    #[arg(long)]
    pub nu: f64,

    /// Flagpole coordinates `a,b,c`.
    #[arg(long = "U", value_parser = parse_triple, allow_hyphen_values = true, requires = "v")]
    pub u: Option<[f64; 3]>,

    /// Transverse coordinates.
    #[arg(long = "V", value_parser = parse_triple, allow_hyphen_values = true, requires = "u")]
    pub v: Option<[f64; 3]>,

    /// Compare on N seeded orthonormal flags instead.
    #[arg(long, value_name = "N", conflicts_with_all = ["u", "v"], required_unless_present = "u")]
    pub random: Option<usize>,
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("`{v}`: {e}"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected a,b,c, got `{s}`"));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.trim().parse().map_err(|e| format!("`{p}`: {e}"))?;
    }
    Ok(out)
}

/// A failed invocation: message for standard error and exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl ToString) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

/// What to print and how to exit.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs a parsed invocation. `echo` is the argument list (without the
/// program name) recorded in the report.
pub fn run(cli: &Cli, echo: Vec<String>) -> Outcome {
    let start = Instant::now();
    let mut report = RunReport::new(echo, cli.seed);
    match commands::dispatch(cli, &mut report) {
        Ok(code) => {
            report.elapsed = start.elapsed();
            let stdout = if cli.json { report.to_json() } else { report.to_text() };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}
