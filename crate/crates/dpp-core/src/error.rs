use thiserror::Error;

use crate::loads::Family;

/// Errors produced by the load models, estimators, and sweep harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The family cannot realize the requested `(mu, sigma)` pair with
    /// nonnegative support.
    #[error("infeasible moments for {family} family: mu={mu}, sigma={sigma} ({reason})")]
    InfeasibleMoments {
        family: Family,
        mu: f64,
        sigma: f64,
        reason: &'static str,
    },

    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("invalid resource budget: {0}")]
    InvalidBudget(String),

    /// The N:1 baseline loss is zero, so normalized loss is undefined.
    #[error("degenerate baseline: the N:1 converter expected loss is zero")]
    DegenerateBaseline,

    #[error("at least 2 trials are required, got {0}")]
    NotEnoughTrials(u64),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("sweep result is empty")]
    EmptySweep,

    #[error("unsupported output format: {0}")]
    UnsupportedFormat(String),

    #[error("unknown topology name {0:?} (expected ac, dc, ladder-dab, ladder-bb, or dab-n1)")]
    UnknownTopology(String),

    #[error("unknown sweep axis {0:?} (expected n, m, or cv)")]
    UnknownAxis(String),

    #[error("unknown distribution family {0:?} (expected uniform, two-point, log-normal, or truncated-normal)")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
