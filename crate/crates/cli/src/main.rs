//! `zwork`: build branch registries, run the lemma engines, check
//! certificates and query the truncated oracle.

mod args;
mod claims;
mod family;
mod filter;
mod io;
mod oracle;
mod sweep;
mod verify;

use std::process::ExitCode;

use clap::Parser;
use zwork_core::Error;

use args::{Cli, Command};

/// Outcome of a successful run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Verified,
    Refuted,
    Unknown,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Verified => 0,
            Outcome::Refuted => 1,
            Outcome::Unknown => 2,
        }
    }
}

pub const EXIT_USAGE: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;

/// A malformed invocation that clap could not catch.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::ResourceCap { .. }) | Some(Error::Overflow(_)) => EXIT_RESOURCE,
        Some(Error::Unknown(_)) | Some(Error::HypothesisNotCertified(_)) => 2,
        Some(Error::FailureInvalid { .. }) | Some(Error::Rejected(_)) => 1,
        Some(_) => EXIT_USAGE,
        None => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let cfg = cli.config.resolve()?;
    match cli.command {
        Command::Family(cmd) => family::run(&cfg, cmd),
        Command::Verify(cmd) => verify::run(&cfg, cmd),
        Command::Oracle(cmd) => oracle::run(&cfg, cmd),
        Command::Filter(cmd) => filter::run(&cfg, cmd),
        Command::Sweep(cmd) => sweep::run(&cfg, cmd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(err) => {
            let code = exit_code(&err);
            eprintln!("error: {err:#}");
            if let Some(Error::ResourceCap { what, cap, .. }) = err.downcast_ref::<Error>() {
                eprintln!("hint: keep {what} within {cap}; smaller --t/--v bounds reduce enumeration");
            }
            ExitCode::from(code)
        }
    }
}
