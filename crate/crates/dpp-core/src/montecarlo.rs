//! Per-trial instantaneous loss evaluation and a seeded, order-independent
//! Monte Carlo estimator with confidence intervals.
//!
//! Each trial draws one load array from its own `(seed, trial)` substream and
//! evaluates the instantaneous conduction loss of the topology under test.
//! Trials are fanned out across the rayon pool, collected in trial-index
//! order, and reduced sequentially, so the estimate is bit-identical for any
//! worker count. The deterministic switching term is added to the mean after
//! reduction.
//!
//! Differential powers are computed relative to the first domain total, so a
//! perfectly uniform array produces exact zeros (and `sigma = 0` therefore
//! yields exactly zero conduction loss in every trial, not merely a small
//! residual).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::switching_loss;
use crate::error::{Error, Result};
use crate::loads::{sample_trial, LoadArraySample, LoadDistribution, SystemDimensions};
use crate::topology::{ArchitectureClass, ResourceBudget, Topology};

/// Instantaneous loss of one sampled load array.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialLoss {
    /// Instantaneous conduction loss, in watts.
    pub conduction_w: f64,
    /// Power processed per port: the N per-domain differential powers for
    /// fully-coupled topologies, the N-1 adjacent-link differential powers
    /// for ladder topologies, and the N per-domain totals carried by the N:1
    /// bulk converter.
    pub differential_powers_w: Vec<f64>,
}

/// Monte Carlo estimate of expected loss.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossEstimate {
    pub mean_w: f64,
    pub std_error_w: f64,
    pub ci95_w: (f64, f64),
    pub trials: u64,
    pub seed: u64,
}

/// Differential powers `P̄ - P_i`, evaluated relative to the first domain so
/// uniform arrays yield exact zeros.
fn fully_coupled_differentials(totals: &[f64]) -> Vec<f64> {
    let shift = totals[0];
    let n = totals.len() as f64;
    let mean = totals.iter().map(|t| t - shift).sum::<f64>() / n;
    totals.iter().map(|t| mean - (t - shift)).collect()
}

/// Adjacent-link differential powers `i*P̄ - sum_{k<=i} P_k` for i = 1..N-1.
fn ladder_differentials(totals: &[f64]) -> Vec<f64> {
    let shift = totals[0];
    let n = totals.len();
    let mean = totals.iter().map(|t| t - shift).sum::<f64>() / n as f64;
    let mut links = Vec::with_capacity(n - 1);
    let mut prefix = 0.0;
    for i in 1..n {
        prefix += totals[i - 1] - shift;
        links.push(i as f64 * mean - prefix);
    }
    links
}

fn squared_sum(values: &[f64]) -> f64 {
    values.iter().map(|v| v * v).sum()
}

/// Instantaneous loss of a fully-coupled topology for one sampled array:
/// `(R_out/V0^2) * sum_i (P_i - P̄)^2`.
pub fn trial_loss_fully_coupled(
    sample: &LoadArraySample,
    dims: &SystemDimensions,
    budget: &ResourceBudget,
    topo: Topology,
) -> TrialLoss {
    assert_eq!(
        topo.architecture_class(),
        ArchitectureClass::FullyCoupled,
        "{topo} is not fully-coupled"
    );
    let r = topo.output_resistance(dims, budget) / (dims.v0 * dims.v0);
    let differentials = fully_coupled_differentials(sample.domain_totals());
    TrialLoss {
        conduction_w: r * squared_sum(&differentials),
        differential_powers_w: differentials,
    }
}

/// Instantaneous loss of a ladder topology for one sampled array:
/// `k * (R_out/V0^2) * sum_i (i*P̄ - sum_{k<=i} P_k)^2` with `k` the
/// topology loss multiplier. A single domain has no cells and zero loss.
pub fn trial_loss_ladder(
    sample: &LoadArraySample,
    dims: &SystemDimensions,
    budget: &ResourceBudget,
    topo: Topology,
) -> TrialLoss {
    assert_eq!(
        topo.architecture_class(),
        ArchitectureClass::Ladder,
        "{topo} is not a ladder topology"
    );
    let r = topo.output_resistance(dims, budget) / (dims.v0 * dims.v0);
    let differentials = ladder_differentials(sample.domain_totals());
    TrialLoss {
        conduction_w: topo.loss_multiplier() * r * squared_sum(&differentials),
        differential_powers_w: differentials,
    }
}

/// Instantaneous loss of the N:1 bulk converter: `(R_out/V0^2) * (sum_i P_i)^2`.
pub fn trial_loss_bulk(
    sample: &LoadArraySample,
    dims: &SystemDimensions,
    budget: &ResourceBudget,
) -> TrialLoss {
    let r = Topology::BulkDabN1.output_resistance(dims, budget) / (dims.v0 * dims.v0);
    let total: f64 = sample.domain_totals().iter().sum();
    TrialLoss {
        conduction_w: r * total * total,
        differential_powers_w: sample.domain_totals().to_vec(),
    }
}

/// Dispatches to the per-class trial loss expression.
pub fn trial_loss(
    topo: Topology,
    sample: &LoadArraySample,
    dims: &SystemDimensions,
    budget: &ResourceBudget,
) -> TrialLoss {
    match topo.architecture_class() {
        ArchitectureClass::FullyCoupled => trial_loss_fully_coupled(sample, dims, budget, topo),
        ArchitectureClass::Ladder => trial_loss_ladder(sample, dims, budget, topo),
        ArchitectureClass::Bulk => trial_loss_bulk(sample, dims, budget),
    }
}

/// Monte Carlo estimate of the expected loss of `topo` over `trials`
/// independent load arrays.
///
/// Deterministic for a fixed seed regardless of worker count or evaluation
/// order; the per-trial substreams make trials order-independent and the
/// reduction runs in trial-index order.
pub fn estimate(
    topo: Topology,
    dims: &SystemDimensions,
    dist: &LoadDistribution,
    budget: &ResourceBudget,
    trials: u64,
    seed: u64,
) -> Result<LossEstimate> {
    if trials < 2 {
        return Err(Error::NotEnoughTrials(trials));
    }
    dist.moment_parameters()?;

    let losses: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let sample = sample_trial(dist, dims, seed, trial).expect("moments validated above");
            trial_loss(topo, &sample, dims, budget).conduction_w
        })
        .collect();

    let count = trials as f64;
    let mean_conduction = losses.iter().sum::<f64>() / count;
    let variance = losses
        .iter()
        .map(|x| (x - mean_conduction) * (x - mean_conduction))
        .sum::<f64>()
        / (count - 1.0);
    let std_error_w = (variance / count).sqrt();

    let mean_w = mean_conduction + switching_loss(topo, dims, budget);
    Ok(LossEstimate {
        mean_w,
        std_error_w,
        ci95_w: (
            mean_w - 1.96 * std_error_w,
            mean_w + 1.96 * std_error_w,
        ),
        trials,
        seed,
    })
}
