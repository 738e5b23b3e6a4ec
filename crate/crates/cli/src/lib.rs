//! Command-line front end for `diracline-core`: band tables and diagrams,
//! spectra, fiber eigenvalues, regularized-model sweeps, wave packets and
//! the acceptance suite.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 unsupported regime,
//! 4 failed validation, 1 anything else.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod output;
pub mod svg;
pub mod validate;

use std::io::Write;
use std::path::Path;

use diracline_core::Error;

use config::{Cli, Command, CommandKind, CommonArgs, Extra, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("unsupported regime: {0}")]
    Unsupported(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("{0}")]
    Solver(Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Validation(_) => 4,
            CliError::Solver(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ConfiningRegime | Error::UnsupportedRegime(_) => CliError::Unsupported(e.to_string()),
            Error::InvalidInput(_)
            | Error::InvalidRegime(_)
            | Error::DegenerateContext
            | Error::DomainError { .. }
            | Error::NoBoundState => CliError::Config(e.to_string()),
            Error::CheckFailed { .. } => CliError::Validation(e.to_string()),
            _ => CliError::Solver(e),
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn run_common(kind: CommandKind, args: &CommonArgs, extra: Extra) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(kind, args, extra)?;
    let out = match kind {
        CommandKind::Bands => commands::cmd_bands(&cfg)?,
        CommandKind::Spectrum => commands::cmd_spectrum(&cfg)?,
        CommandKind::Fiber => commands::cmd_fiber(&cfg)?,
        CommandKind::Approx => commands::cmd_approx(&cfg)?,
        CommandKind::ResolventCheck => commands::cmd_resolvent_check(&cfg)?,
        CommandKind::Packet => commands::cmd_packet(&cfg)?,
    };
    write_output(cfg.out.as_deref(), &out.text)?;
    match out.failure {
        Some(msg) => Err(CliError::Validation(msg)),
        None => Ok(()),
    }
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Bands(a) => run_common(CommandKind::Bands, a, Extra::default()),
        Command::Spectrum(a) => run_common(CommandKind::Spectrum, a, Extra::default()),
        Command::Fiber(a) => run_common(CommandKind::Fiber, a, Extra::default()),
        Command::Approx(a) => run_common(CommandKind::Approx, &a.common, a.into()),
        Command::ResolventCheck(a) => run_common(CommandKind::ResolventCheck, a, Extra::default()),
        Command::Packet(a) => run_common(CommandKind::Packet, &a.common, a.into()),
        Command::Validate(a) => {
            let ids: Vec<u32> = match a.only {
                Some(n) if validate::CRITERIA.contains(&n) => vec![n],
                Some(n) => return Err(CliError::Config(format!("no criterion {n}; expected 1 to 10"))),
                None => validate::CRITERIA.to_vec(),
            };
            let mut report = String::new();
            let mut failed = Vec::new();
            for id in ids {
                let r = validate::run_criterion(id);
                report.push_str(&r.line());
                report.push('\n');
                if !r.passed {
                    failed.push(id);
                }
            }
            write_output(a.out.as_deref(), &report)?;
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Validation(format!("criteria {failed:?} failed")))
            }
        }
    }
}
