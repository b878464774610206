//! CLI binding for the DPP performance-limit models.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when the configured model
//! is infeasible (moments unrealizable or a degenerate N:1 baseline).

use std::ffi::OsString;
use std::fmt;

use clap::error::ErrorKind;
use clap::Parser as _;

pub mod cli;
pub mod config;
pub mod report;

pub use cli::{build_config, Cli};
pub use config::{Command, PartialConfig, RunConfig, SweepConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags or configuration; exit status 1.
    Usage(String),
    /// The model cannot be realized (infeasible moments, zero baseline);
    /// exit status 2.
    Infeasible(String),
    /// Filesystem failure; exit status 1.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Infeasible(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Infeasible(msg) => write!(f, "infeasible model: {msg}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<dpp_core::Error> for CliError {
    fn from(err: dpp_core::Error) -> Self {
        match err {
            dpp_core::Error::InfeasibleMoments { .. } | dpp_core::Error::DegenerateBaseline => {
                CliError::Infeasible(err.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Parses an argument vector into a resolved configuration.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    build_config(cli)
}

/// Renders the report for a resolved configuration.
pub fn execute(cfg: &RunConfig) -> Result<String, CliError> {
    match cfg.command {
        Command::Analyze => report::analyze(cfg),
        Command::Simulate => report::simulate(cfg),
        Command::Compare => report::compare(cfg),
        Command::Sweep => report::sweep(cfg),
    }
}

/// Full command-line entry point; returns the process exit status.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return 0;
            }
            eprint!("{err}");
            return 1;
        }
    };
    let result = build_config(cli).and_then(|cfg| execute(&cfg).map(|out| (cfg, out)));
    match result {
        Ok((cfg, output)) => match cfg.output_path {
            Some(path) => match std::fs::write(&path, &output) {
                Ok(()) => 0,
                Err(err) => {
                    eprintln!("dpp: cannot write {}: {err}", path.display());
                    1
                }
            },
            None => {
                print!("{output}");
                0
            }
        },
        Err(err) => {
            eprintln!("dpp: {err}");
            err.exit_code()
        }
    }
}
