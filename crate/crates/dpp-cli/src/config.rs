//! Run configuration: defaults, config-file parsing/rendering, and the merge
//! order (command-line flags over config file over environment over
//! defaults).
//!
//! The config file is a flat `key = value` format whose keys mirror the flag
//! names; [`RunConfig::render`] and [`RunConfig::parse`] round-trip exactly.

use std::fmt;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use dpp_core::{
    parse_topology_list, Axis, Family, LoadDistribution, OutputFormat, ResourceBudget, SweepSpec,
    SystemDimensions, Topology,
};

use crate::CliError;

pub const DEFAULT_TRIALS: u64 = 10_000;
pub const DEFAULT_SEED: u64 = 42;
pub const SEED_ENV_VAR: &str = "DPP_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Simulate,
    Sweep,
    Compare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Simulate => "simulate",
            Command::Sweep => "sweep",
            Command::Compare => "compare",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "analyze" => Ok(Command::Analyze),
            "simulate" => Ok(Command::Simulate),
            "sweep" => Ok(Command::Sweep),
            "compare" => Ok(Command::Compare),
            other => Err(CliError::Usage(format!("unknown command {other:?}"))),
        }
    }
}

/// Sweep grid as configured: `from..=to` in `step` increments.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub axis: Axis,
    pub from: f64,
    pub to: f64,
    pub step: f64,
    pub include_switching: bool,
}

impl SweepConfig {
    /// Default grid per axis, bracketing the interesting regimes at desk
    /// runtime.
    pub fn default_grid(axis: Axis) -> (f64, f64, f64) {
        match axis {
            Axis::DomainsN => (2.0, 16.0, 1.0),
            Axis::LoadsM => (1.0, 16.0, 1.0),
            Axis::CoeffVar => (0.1, 2.0, 0.1),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let count = ((self.to - self.from) / self.step).round().max(0.0) as u64;
        (0..=count)
            .map(|k| self.from + k as f64 * self.step)
            .filter(|v| *v <= self.to + 1e-9 * self.step)
            .collect()
    }

    pub fn to_spec(&self, cfg: &RunConfig) -> SweepSpec {
        SweepSpec {
            axis: self.axis,
            values: self.values(),
            dims: cfg.dims,
            dist: cfg.dist,
            budget: cfg.budget,
            topologies: cfg.topologies.clone(),
            trials: cfg.trials,
            seed: cfg.seed,
            include_switching: self.include_switching,
        }
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub dims: SystemDimensions,
    pub dist: LoadDistribution,
    pub budget: ResourceBudget,
    pub topologies: Vec<Topology>,
    pub trials: u64,
    pub seed: u64,
    /// Present exactly for the sweep command.
    pub sweep: Option<SweepConfig>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    /// Renders the flat config-file form; `parse` reads it back exactly.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command = {}", self.command);
        let topos: Vec<&str> = self.topologies.iter().map(|t| t.name()).collect();
        let _ = writeln!(out, "topo = {}", topos.join(","));
        let _ = writeln!(out, "family = {}", self.dist.family);
        let _ = writeln!(out, "mu = {}", self.dist.mu);
        let _ = writeln!(out, "sigma = {}", self.dist.sigma);
        let _ = writeln!(out, "n = {}", self.dims.n_domains);
        let _ = writeln!(out, "m = {}", self.dims.m_loads);
        let _ = writeln!(out, "v0 = {}", self.dims.v0);
        let _ = writeln!(out, "gsw = {}", self.budget.g_sw);
        let _ = writeln!(out, "gm = {}", self.budget.g_m);
        let _ = writeln!(out, "coss-fsw = {}", self.budget.coss_fsw);
        let _ = writeln!(out, "trials = {}", self.trials);
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "format = {}", self.output_format);
        if let Some(path) = &self.output_path {
            let _ = writeln!(out, "out = {}", path.display());
        }
        if let Some(sweep) = &self.sweep {
            let _ = writeln!(out, "axis = {}", sweep.axis);
            let _ = writeln!(out, "from = {}", sweep.from);
            let _ = writeln!(out, "to = {}", sweep.to);
            let _ = writeln!(out, "step = {}", sweep.step);
            let _ = writeln!(out, "include-switching = {}", sweep.include_switching);
        }
        out
    }

    /// Parses the config-file form. The file must carry a `command` key;
    /// seeds and all other keys fall back to the documented defaults.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let partial = PartialConfig::from_config_text(text)?;
        let command = partial
            .command
            .ok_or_else(|| CliError::Usage("config file is missing the command key".into()))?;
        partial.resolve(command)
    }
}

/// Deviation is one logical setting reachable by two flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Deviation {
    Sigma(f64),
    Cv(f64),
}

/// A partially specified configuration from one source (flags or file).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PartialConfig {
    pub command: Option<Command>,
    pub topologies: Option<Vec<Topology>>,
    pub family: Option<Family>,
    pub mu: Option<f64>,
    pub deviation: Option<Deviation>,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub v0: Option<f64>,
    pub g_sw: Option<f64>,
    pub g_m: Option<f64>,
    pub coss_fsw: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub axis: Option<Axis>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub step: Option<f64>,
    pub include_switching: Option<bool>,
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|e| CliError::Usage(format!("config key {key}: {e}")))
}

impl PartialConfig {
    /// Parses the flat `key = value` file format. Unknown keys are errors;
    /// `#` starts a comment.
    pub fn from_config_text(text: &str) -> Result<Self, CliError> {
        let mut cfg = PartialConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key = value", idx + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "command" => cfg.command = Some(value.parse()?),
                "topo" => {
                    cfg.topologies =
                        Some(parse_topology_list(value).map_err(|e| {
                            CliError::Usage(format!("config key topo: {e}"))
                        })?)
                }
                "family" => cfg.family = Some(parse_value(key, value)?),
                "mu" => cfg.mu = Some(parse_value(key, value)?),
                "sigma" => {
                    if matches!(cfg.deviation, Some(Deviation::Cv(_))) {
                        return Err(CliError::Usage(
                            "config file sets both sigma and cv; they are mutually exclusive"
                                .into(),
                        ));
                    }
                    cfg.deviation = Some(Deviation::Sigma(parse_value(key, value)?));
                }
                "cv" => {
                    if matches!(cfg.deviation, Some(Deviation::Sigma(_))) {
                        return Err(CliError::Usage(
                            "config file sets both sigma and cv; they are mutually exclusive"
                                .into(),
                        ));
                    }
                    cfg.deviation = Some(Deviation::Cv(parse_value(key, value)?));
                }
                "n" => cfg.n = Some(parse_value(key, value)?),
                "m" => cfg.m = Some(parse_value(key, value)?),
                "v0" => cfg.v0 = Some(parse_value(key, value)?),
                "gsw" => cfg.g_sw = Some(parse_value(key, value)?),
                "gm" => cfg.g_m = Some(parse_value(key, value)?),
                "coss-fsw" => cfg.coss_fsw = Some(parse_value(key, value)?),
                "trials" => cfg.trials = Some(parse_value(key, value)?),
                "seed" => cfg.seed = Some(parse_value(key, value)?),
                "format" => cfg.format = Some(parse_value(key, value)?),
                "out" => cfg.out = Some(PathBuf::from(value)),
                "axis" => cfg.axis = Some(parse_value(key, value)?),
                "from" => cfg.from = Some(parse_value(key, value)?),
                "to" => cfg.to = Some(parse_value(key, value)?),
                "step" => cfg.step = Some(parse_value(key, value)?),
                "include-switching" => cfg.include_switching = Some(parse_value(key, value)?),
                other => {
                    return Err(CliError::Usage(format!(
                        "config line {}: unknown key {other:?}",
                        idx + 1
                    )))
                }
            }
        }
        Ok(cfg)
    }

    /// Field-wise overlay: values in `over` win.
    pub fn overlay(self, over: PartialConfig) -> PartialConfig {
        PartialConfig {
            command: over.command.or(self.command),
            topologies: over.topologies.or(self.topologies),
            family: over.family.or(self.family),
            mu: over.mu.or(self.mu),
            deviation: over.deviation.or(self.deviation),
            n: over.n.or(self.n),
            m: over.m.or(self.m),
            v0: over.v0.or(self.v0),
            g_sw: over.g_sw.or(self.g_sw),
            g_m: over.g_m.or(self.g_m),
            coss_fsw: over.coss_fsw.or(self.coss_fsw),
            trials: over.trials.or(self.trials),
            seed: over.seed.or(self.seed),
            format: over.format.or(self.format),
            out: over.out.or(self.out),
            axis: over.axis.or(self.axis),
            from: over.from.or(self.from),
            to: over.to.or(self.to),
            step: over.step.or(self.step),
            include_switching: over.include_switching.or(self.include_switching),
        }
    }

    /// Resolves against defaults (and `DPP_SEED` for the seed) into a full
    /// `RunConfig` for `command`.
    pub fn resolve(self, command: Command) -> Result<RunConfig, CliError> {
        let family = self.family.unwrap_or(Family::Uniform);
        let mu = self.mu.unwrap_or(1.0);
        let sigma = match self.deviation.unwrap_or(Deviation::Sigma(0.5)) {
            Deviation::Sigma(s) => s,
            Deviation::Cv(cv) => {
                if mu <= 0.0 {
                    return Err(CliError::Usage("--cv requires mu > 0".into()));
                }
                cv * mu
            }
        };
        let dist = LoadDistribution::new(family, mu, sigma)?;

        let dims = SystemDimensions::new(
            self.n.unwrap_or(8),
            self.m.unwrap_or(4),
            self.v0.unwrap_or(1.0),
        )?;
        let budget = ResourceBudget::new(
            self.g_sw.unwrap_or(1.0),
            self.g_m.unwrap_or(1.0),
            self.coss_fsw.unwrap_or(0.0),
        )?;

        let trials = self.trials.unwrap_or(DEFAULT_TRIALS);
        if trials < 2 {
            return Err(CliError::Usage(format!(
                "--trials must be at least 2, got {trials}"
            )));
        }

        let seed = match self.seed {
            Some(seed) => seed,
            None => match std::env::var(SEED_ENV_VAR) {
                Ok(text) => text.parse().map_err(|_| {
                    CliError::Usage(format!(
                        "{SEED_ENV_VAR} must be an unsigned integer, got {text:?}"
                    ))
                })?,
                Err(_) => DEFAULT_SEED,
            },
        };

        let sweep = if command == Command::Sweep {
            let axis = self.axis.unwrap_or(Axis::DomainsN);
            let defaults = SweepConfig::default_grid(axis);
            let sweep = SweepConfig {
                axis,
                from: self.from.unwrap_or(defaults.0),
                to: self.to.unwrap_or(defaults.1),
                step: self.step.unwrap_or(defaults.2),
                include_switching: self.include_switching.unwrap_or(false),
            };
            if sweep.step <= 0.0 || !sweep.step.is_finite() {
                return Err(CliError::Usage(format!(
                    "--step must be positive, got {}",
                    sweep.step
                )));
            }
            if sweep.to < sweep.from {
                return Err(CliError::Usage(format!(
                    "--to ({}) must not be below --from ({})",
                    sweep.to, sweep.from
                )));
            }
            Some(sweep)
        } else {
            None
        };

        Ok(RunConfig {
            command,
            dims,
            dist,
            budget,
            topologies: self.topologies.unwrap_or_else(|| Topology::ALL.to_vec()),
            trials,
            seed,
            sweep,
            output_format: self.format.unwrap_or(OutputFormat::Text),
            output_path: self.out,
        })
    }
}
