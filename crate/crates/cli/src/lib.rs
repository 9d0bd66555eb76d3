//! Command-line front end: `report`, `scan` and `check-ineq`.
//!
//! Exit status is 0 on success, 2 for usage errors, 3 when an input file or
//! argument does not parse, 4 when a verification fails and 1 for anything
//! else (I/O, internal errors).

pub mod config;
pub mod json;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use genus2_bogomolov::bogomolov::{check_amgm_inequality, decimal, minimize_contribution_ratio};
use genus2_bogomolov::genus2_catalog::FiberType;

use config::{parse_config, parse_rational, ConfigEntry, ConfigFile};
use report::{render_scan, run_report, ReportError, ReportOptions};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "g2bound", version, about = "Local invariants and effective Bogomolov bounds for genus-2 fibrations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-fibre invariants and global bound for a configuration file (or a
    /// JSON report produced by `--json`).
    Report {
        file: PathBuf,
        /// Recompute each e_y with the Green solver and require exact equality.
        #[arg(long)]
        verify_green: bool,
        /// Cross-check e_y against the discretised solver with N subdivisions per edge.
        #[arg(long, value_name = "N")]
        oracle: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Append the extremal-ratio scan for this fibre type.
        #[arg(long, value_name = "TYPE", value_parser = parse_type)]
        scan: Option<FiberType>,
        #[arg(long, value_name = "R", default_value_t = 60)]
        resolution: usize,
    },
    /// Scan contribution/delta over normalised lengths of one fibre type.
    Scan {
        #[arg(long = "type", value_name = "TYPE", value_parser = parse_type)]
        kind: FiberType,
        #[arg(long, value_name = "R", default_value_t = 60)]
        resolution: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check abc/(ab+bc+ca) <= (a+b+c)/9 exactly.
    CheckIneq { a: String, b: String, c: String },
}

fn parse_type(s: &str) -> Result<FiberType, String> {
    s.parse().map_err(|e: genus2_bogomolov::genus2_catalog::SpecError| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Io { .. } | CliError::Other(_) => EXIT_FAILURE,
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Mismatch { .. } => CliError::Verification(e.to_string()),
            ReportError::Scan(b) => CliError::Parse(b.to_string()),
            ReportError::Catalog(c) => CliError::Other(c.to_string()),
        }
    }
}

/// Loads a fibre list from either a configuration file or a JSON report.
pub fn load_input(text: &str) -> Result<ConfigFile, CliError> {
    if text.trim_start().starts_with('{') {
        let parsed = json::parse(text).map_err(|e| CliError::Parse(e.to_string()))?;
        let specs = json::specs(&parsed).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(ConfigFile {
            entries: specs.into_iter().enumerate().map(|(i, spec)| ConfigEntry { line: i + 1, spec }).collect(),
        })
    } else {
        parse_config(text).map_err(|e| CliError::Parse(e.to_string()))
    }
}

/// Runs one command and returns what it prints on success.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Report { file, verify_green, oracle, json, scan, resolution } => {
            let text = std::fs::read_to_string(&file).map_err(|source| CliError::Io { path: file.clone(), source })?;
            let config = load_input(&text)?;
            if oracle.is_some_and(|n| n < 2) {
                return Err(CliError::Parse("--oracle needs at least 2 subdivisions".into()));
            }
            let options = ReportOptions { verify_green, oracle, json, scan: scan.map(|k| (k, resolution)) };
            Ok(run_report(&config, &options)?.output)
        }
        Command::Scan { kind, resolution, json } => {
            let cert = minimize_contribution_ratio(kind, resolution).map_err(|e| CliError::Parse(e.to_string()))?;
            Ok(if json {
                let mut s = serde_json::to_string_pretty(&json::scan_json(&cert)).expect("scan serialises");
                s.push('\n');
                s
            } else {
                render_scan(&cert)
            })
        }
        Command::CheckIneq { a, b, c } => {
            let parse = |s: &str| parse_rational(s).map_err(|e| CliError::Parse(e.to_string()));
            let (a, b, c) = (parse(&a)?, parse(&b)?, parse(&c)?);
            let check = check_amgm_inequality(&a, &b, &c).map_err(|e| CliError::Parse(e.to_string()))?;
            let relation = if check.equality { "equality (a = b = c)" } else if check.holds { "strict" } else { "VIOLATED" };
            let out = format!(
                "abc/(ab+bc+ca) = {} ({})\n(a+b+c)/9      = {} ({})\nholds: {}, {relation}\n",
                check.lhs,
                decimal(&check.lhs),
                check.rhs,
                decimal(&check.rhs),
                check.holds
            );
            if check.holds {
                Ok(out)
            } else {
                Err(CliError::Verification(out))
            }
        }
    }
}
