//! Performance limits of differential power processing (DPP) architectures.
//!
//! A DPP converter balances `N` series-stacked voltage domains, each feeding
//! `M` parallel stochastic loads, by processing only the mismatch between
//! domains instead of the full load power. This crate provides:
//!
//! - [`loads`]: moment-matched stochastic load models and reproducible
//!   `(seed, trial)`-keyed array sampling,
//! - [`topology`]: output resistance, loss multiplier, and switching ports of
//!   four DPP topologies plus the N:1 dual-active-bridge baseline under
//!   shared semiconductor/magnetics budgets,
//! - [`analytic`]: closed-form expected losses, scaling factors, normalized
//!   loss, and exact asymptotic limits,
//! - [`montecarlo`]: per-trial instantaneous losses and a parallel,
//!   order-independent Monte Carlo estimator with confidence intervals,
//! - [`sweep`]: normalized-loss sweeps over N, M, or Cv with paired analytic
//!   and simulated series, emitted as CSV, JSON, or SVG.
//!
//! ```
//! use dpp_core::{
//!     expected_loss, normalized_loss, LoadDistribution, ResourceBudget,
//!     SystemDimensions, Topology,
//! };
//!
//! let dims = SystemDimensions::new(8, 4, 1.0)?;
//! let dist = LoadDistribution::uniform(1.0, 0.5)?;
//! let budget = ResourceBudget::normalized();
//!
//! let loss = expected_loss(Topology::AcCoupled, &dims, &dist, &budget);
//! assert_eq!(loss.conduction_w, 672.0);
//!
//! let ratio = normalized_loss(Topology::AcCoupled, &dims, &dist, &budget)?;
//! assert!(ratio < 0.0625);
//! # Ok::<(), dpp_core::Error>(())
//! ```

pub mod analytic;
pub mod error;
pub mod loads;
pub mod montecarlo;
pub mod sweep;
pub mod topology;

pub use analytic::{
    asymptote_large_cv, asymptote_large_n, conduction_with_resistance, expected_loss,
    normalized_loss, normalized_loss_with, scaling_factor, switching_loss,
    switching_loss_for_ports, ExpectedLoss, LargeNLimit, Moment, ScalingFactor,
};
pub use error::{Error, Result};
pub use loads::{
    sample_array, sample_trial, trial_rng, Family, LoadArraySample, LoadDistribution,
    MomentParameters, SystemDimensions,
};
pub use montecarlo::{
    estimate, trial_loss, trial_loss_bulk, trial_loss_fully_coupled, trial_loss_ladder,
    LossEstimate, TrialLoss,
};
pub use sweep::{emit, run_sweep, Axis, OutputFormat, SweepResult, SweepRow, SweepSpec};
pub use topology::{parse_topology_list, ArchitectureClass, ResourceBudget, Topology};
