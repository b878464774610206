//! Command-line definitions and conversion into a resolved [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use dpp_core::parse_topology_list;

use crate::config::{Command, Deviation, PartialConfig, RunConfig};
use crate::CliError;

/// Performance limits of differential power processing architectures:
/// closed-form expected losses, Monte Carlo verification, and normalized-loss
/// sweeps for four DPP topologies and an N:1 DAB baseline.
#[derive(Debug, Parser)]
#[command(name = "dpp", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Closed-form report: output resistance, expected loss, scaling factor,
    /// and normalized loss per topology
    Analyze(ModelArgs),
    /// Monte Carlo estimate against the closed form, with agreement verdict
    Simulate(ModelArgs),
    /// Normalized-loss sweep over N, M, or Cv with paired analytic and
    /// simulated series
    Sweep(SweepArgs),
    /// Rank topologies by normalized loss (lowest first)
    Compare(ModelArgs),
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Config file (flat `key = value`, keys mirror flag names); flags win
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Comma-separated topologies: ac,dc,ladder-dab,ladder-bb,dab-n1
    #[arg(long, value_name = "LIST")]
    pub topo: Option<String>,

    /// Number of series-stacked voltage domains N
    #[arg(long, value_name = "N")]
    pub n: Option<u32>,

    /// Number of parallel loads per domain M
    #[arg(long, value_name = "M")]
    pub m: Option<u32>,

    /// Per-domain voltage V0 in volts
    #[arg(long, value_name = "VOLTS")]
    pub v0: Option<f64>,

    /// Normalized semiconductor conductance budget Gsw in siemens
    #[arg(long, value_name = "S")]
    pub gsw: Option<f64>,

    /// Normalized magnetic winding conductance budget Gm in siemens
    #[arg(long, value_name = "S")]
    pub gm: Option<f64>,

    /// Per-port switching-loss shunt conductance Coss*fsw in siemens
    /// (0 disables switching loss)
    #[arg(long = "coss-fsw", value_name = "S")]
    pub coss_fsw: Option<f64>,

    /// Load family: uniform, two-point, log-normal, truncated-normal
    #[arg(long, value_name = "FAMILY")]
    pub family: Option<String>,

    /// Mean load power mu in watts
    #[arg(long, value_name = "WATTS")]
    pub mu: Option<f64>,

    /// Load standard deviation sigma in watts (conflicts with --cv)
    #[arg(long, value_name = "WATTS", conflicts_with = "cv")]
    pub sigma: Option<f64>,

    /// Coefficient of variance sigma/mu (requires mu > 0)
    #[arg(long, value_name = "RATIO")]
    pub cv: Option<f64>,

    /// Monte Carlo trials (at least 2)
    #[arg(long, value_name = "COUNT")]
    pub trials: Option<u64>,

    /// Random seed; defaults to $DPP_SEED, then 42
    #[arg(long, value_name = "SEED")]
    pub seed: Option<u64>,

    /// Output format: text, csv, json, svg (svg is sweep-only)
    #[arg(long, value_name = "FORMAT")]
    pub format: Option<String>,

    /// Write the report to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Sweep axis: n, m, or cv
    #[arg(long, value_name = "AXIS")]
    pub axis: Option<String>,

    /// First grid value (axis-specific default)
    #[arg(long, value_name = "VALUE")]
    pub from: Option<f64>,

    /// Last grid value, inclusive (axis-specific default)
    #[arg(long, value_name = "VALUE")]
    pub to: Option<f64>,

    /// Grid increment (axis-specific default)
    #[arg(long, value_name = "VALUE")]
    pub step: Option<f64>,

    /// Fold switching loss into both sides of the normalized-loss ratio
    #[arg(long)]
    pub include_switching: bool,
}

fn flag_error(flag: &str, err: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{flag}: {err}"))
}

impl ModelArgs {
    fn to_partial(&self) -> Result<PartialConfig, CliError> {
        let mut partial = PartialConfig {
            topologies: match &self.topo {
                Some(list) => Some(parse_topology_list(list).map_err(|e| flag_error("--topo", e))?),
                None => None,
            },
            family: match &self.family {
                Some(name) => Some(name.parse().map_err(|e| flag_error("--family", e))?),
                None => None,
            },
            mu: self.mu,
            n: self.n,
            m: self.m,
            v0: self.v0,
            g_sw: self.gsw,
            g_m: self.gm,
            coss_fsw: self.coss_fsw,
            trials: self.trials,
            seed: self.seed,
            format: match &self.format {
                Some(name) => Some(name.parse().map_err(|e| flag_error("--format", e))?),
                None => None,
            },
            out: self.out.clone(),
            ..Default::default()
        };
        // clap enforces that at most one of --sigma/--cv is present.
        partial.deviation = self
            .sigma
            .map(Deviation::Sigma)
            .or(self.cv.map(Deviation::Cv));
        Ok(partial)
    }
}

/// Resolves parsed arguments into a run configuration: defaults, overlaid by
/// the config file when given, overlaid by explicit flags.
pub fn build_config(cli: Cli) -> Result<RunConfig, CliError> {
    let (command, model, sweep) = match cli.command {
        CliCommand::Analyze(model) => (Command::Analyze, model, None),
        CliCommand::Simulate(model) => (Command::Simulate, model, None),
        CliCommand::Compare(model) => (Command::Compare, model, None),
        CliCommand::Sweep(args) => {
            let sweep = (
                args.axis.clone(),
                args.from,
                args.to,
                args.step,
                args.include_switching,
            );
            (Command::Sweep, args.model, Some(sweep))
        }
    };

    let mut flags = model.to_partial()?;
    if let Some((axis, from, to, step, include_switching)) = sweep {
        flags.axis = match axis {
            Some(name) => Some(name.parse().map_err(|e| flag_error("--axis", e))?),
            None => None,
        };
        flags.from = from;
        flags.to = to;
        flags.step = step;
        // The bare flag can only switch the term on; absence defers to the
        // config file.
        flags.include_switching = include_switching.then_some(true);
    }

    let file = match &model.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Io(format!("cannot read config file {}: {e}", path.display()))
            })?;
            PartialConfig::from_config_text(&text)?
        }
        None => PartialConfig::default(),
    };

    file.overlay(flags).resolve(command)
}
