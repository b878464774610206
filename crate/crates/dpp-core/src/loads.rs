//! Stochastic load-unit models and reproducible array sampling.
//!
//! Each load unit draws i.i.d. power from a family parameterized directly by
//! its target mean `mu` and standard deviation `sigma`. For the exact families
//! (uniform, two-point, log-normal) the parameterization is moment-matched:
//! the analytic mean and variance of the realized distribution equal
//! `(mu, sigma^2)` exactly, so closed-form loss expressions and Monte Carlo
//! estimates share the same moments. The truncated-normal family is provided
//! for realism but is moment-biased (truncation at zero shifts both moments)
//! and is excluded from exact-moment oracles.
//!
//! Sampling is keyed by `(seed, trial)` substreams: the seed selects a ChaCha
//! key, the trial index selects a distinct keystream. Trials can therefore be
//! evaluated in any order, or in parallel, with bit-identical results.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, LogNormal, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distribution family of an individual load unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "uniform")]
    Uniform,
    #[serde(rename = "two-point")]
    TwoPoint,
    #[serde(rename = "log-normal")]
    LogNormal,
    #[serde(rename = "truncated-normal")]
    TruncatedNormal,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::TwoPoint => "two-point",
            Family::LogNormal => "log-normal",
            Family::TruncatedNormal => "truncated-normal",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Family::Uniform),
            "two-point" | "twopoint" => Ok(Family::TwoPoint),
            "log-normal" | "lognormal" => Ok(Family::LogNormal),
            "truncated-normal" | "truncatednormal" => Ok(Family::TruncatedNormal),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// An i.i.d. load-unit model with target mean `mu` and standard deviation
/// `sigma`, both in watts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoadDistribution {
    pub family: Family,
    pub mu: f64,
    pub sigma: f64,
}

impl LoadDistribution {
    /// Builds a distribution and checks that the family can realize the
    /// requested moments with nonnegative support.
    pub fn new(family: Family, mu: f64, sigma: f64) -> Result<Self> {
        let dist = Self { family, mu, sigma };
        dist.moment_parameters()?;
        Ok(dist)
    }

    pub fn uniform(mu: f64, sigma: f64) -> Result<Self> {
        Self::new(Family::Uniform, mu, sigma)
    }

    pub fn two_point(mu: f64, sigma: f64) -> Result<Self> {
        Self::new(Family::TwoPoint, mu, sigma)
    }

    pub fn log_normal(mu: f64, sigma: f64) -> Result<Self> {
        Self::new(Family::LogNormal, mu, sigma)
    }

    pub fn truncated_normal(mu: f64, sigma: f64) -> Result<Self> {
        Self::new(Family::TruncatedNormal, mu, sigma)
    }

    /// Builds a distribution from a coefficient of variance, `sigma = cv * mu`.
    pub fn from_cv(family: Family, mu: f64, cv: f64) -> Result<Self> {
        if mu <= 0.0 || !mu.is_finite() {
            return Err(Error::InfeasibleMoments {
                family,
                mu,
                sigma: cv * mu,
                reason: "coefficient of variance requires mu > 0",
            });
        }
        Self::new(family, mu, cv * mu)
    }

    /// `sigma / mu`; `None` when `mu` is not positive.
    pub fn coefficient_of_variance(&self) -> Option<f64> {
        (self.mu > 0.0).then(|| self.sigma / self.mu)
    }

    /// Variance `sigma^2`.
    pub fn variance(&self) -> f64 {
        self.sigma * self.sigma
    }

    /// Resolves the family-specific parameters whose analytic mean and
    /// variance reproduce `(mu, sigma^2)`. Fails with
    /// [`Error::InfeasibleMoments`] when the family cannot realize the pair
    /// with nonnegative support.
    pub fn moment_parameters(&self) -> Result<MomentParameters> {
        let (mu, sigma) = (self.mu, self.sigma);
        let infeasible = |reason: &'static str| Error::InfeasibleMoments {
            family: self.family,
            mu,
            sigma,
            reason,
        };
        if !mu.is_finite() || !sigma.is_finite() || mu < 0.0 || sigma < 0.0 {
            return Err(infeasible("mu and sigma must be finite and nonnegative"));
        }
        // A zero-variance load collapses to a point mass in every family.
        if sigma == 0.0 {
            return Ok(MomentParameters::Constant { value: mu });
        }
        match self.family {
            Family::Uniform => {
                let half_width = 3f64.sqrt() * sigma;
                if mu < half_width {
                    Err(infeasible("uniform support requires mu >= sqrt(3)*sigma"))
                } else {
                    Ok(MomentParameters::Uniform {
                        lo: mu - half_width,
                        hi: mu + half_width,
                    })
                }
            }
            Family::TwoPoint => {
                if mu < sigma {
                    Err(infeasible("two-point support requires mu >= sigma"))
                } else {
                    Ok(MomentParameters::TwoPoint {
                        lo: mu - sigma,
                        hi: mu + sigma,
                    })
                }
            }
            Family::LogNormal => {
                if mu <= 0.0 {
                    Err(infeasible("log-normal requires mu > 0"))
                } else {
                    let cv = sigma / mu;
                    let log_var = (1.0 + cv * cv).ln();
                    Ok(MomentParameters::LogNormal {
                        log_mean: mu.ln() - 0.5 * log_var,
                        log_sd: log_var.sqrt(),
                    })
                }
            }
            Family::TruncatedNormal => Ok(MomentParameters::TruncatedNormal {
                parent_mean: mu,
                parent_sd: sigma,
                moment_biased: true,
            }),
        }
    }
}

/// Family-specific parameters realizing a target `(mu, sigma^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentParameters {
    /// Point mass at `value` (any family with `sigma = 0`).
    Constant { value: f64 },
    /// Uniform on `[lo, hi]` with `lo = mu - sqrt(3)*sigma`.
    Uniform { lo: f64, hi: f64 },
    /// `{lo, hi} = {mu - sigma, mu + sigma}`, probability 1/2 each.
    TwoPoint { lo: f64, hi: f64 },
    /// Log-space mean and standard deviation of the underlying normal.
    LogNormal { log_mean: f64, log_sd: f64 },
    /// Parameters of the untruncated parent normal. `moment_biased` records
    /// that rejection below zero shifts the realized mean and variance away
    /// from `(mu, sigma^2)`.
    TruncatedNormal {
        parent_mean: f64,
        parent_sd: f64,
        moment_biased: bool,
    },
}

/// Geometry of the series-stacked load array: `N` voltage domains of `M`
/// parallel loads each, at per-domain voltage `v0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemDimensions {
    pub n_domains: u32,
    pub m_loads: u32,
    pub v0: f64,
}

impl SystemDimensions {
    pub fn new(n_domains: u32, m_loads: u32, v0: f64) -> Result<Self> {
        if n_domains < 1 || m_loads < 1 {
            return Err(Error::InvalidDimensions(format!(
                "need at least one domain and one load per domain, got N={n_domains}, M={m_loads}"
            )));
        }
        if !v0.is_finite() || v0 <= 0.0 {
            return Err(Error::InvalidDimensions(format!(
                "domain voltage must be positive and finite, got V0={v0}"
            )));
        }
        Ok(Self {
            n_domains,
            m_loads,
            v0,
        })
    }

    pub fn total_loads(&self) -> u64 {
        u64::from(self.n_domains) * u64::from(self.m_loads)
    }
}

/// Row/grand accumulation switches to compensated summation above this many
/// load units, which keeps the 1e-12 relative row-sum invariant at scale.
const COMPENSATED_SUM_THRESHOLD: u64 = 10_000;

fn kahan_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for &v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

fn stable_sum(values: &[f64], compensated: bool) -> f64 {
    if compensated {
        kahan_sum(values)
    } else {
        values.iter().sum()
    }
}

/// One draw of the full N x M load array plus derived per-domain statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadArraySample {
    powers: Vec<f64>, // row-major N x M
    n_domains: usize,
    m_loads: usize,
    domain_totals: Vec<f64>,
    grand_mean: f64,
}

impl LoadArraySample {
    fn from_flat(powers: Vec<f64>, n_domains: usize, m_loads: usize) -> Self {
        debug_assert_eq!(powers.len(), n_domains * m_loads);
        let compensated = (n_domains as u64) * (m_loads as u64) > COMPENSATED_SUM_THRESHOLD;
        let domain_totals: Vec<f64> = powers
            .chunks_exact(m_loads)
            .map(|row| stable_sum(row, compensated))
            .collect();
        let grand_mean = stable_sum(&domain_totals, compensated) / n_domains as f64;
        Self {
            powers,
            n_domains,
            m_loads,
            domain_totals,
            grand_mean,
        }
    }

    /// Builds a sample from explicit per-domain rows of load powers.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_domains = rows.len();
        let m_loads = rows.first().map(Vec::len).unwrap_or(0);
        if n_domains == 0 || m_loads == 0 {
            return Err(Error::InvalidDimensions(
                "load array must have at least one domain and one load".into(),
            ));
        }
        if rows.iter().any(|r| r.len() != m_loads) {
            return Err(Error::InvalidDimensions(
                "all domains must hold the same number of loads".into(),
            ));
        }
        let mut powers = Vec::with_capacity(n_domains * m_loads);
        for row in &rows {
            powers.extend_from_slice(row);
        }
        Ok(Self::from_flat(powers, n_domains, m_loads))
    }

    pub fn n_domains(&self) -> usize {
        self.n_domains
    }

    pub fn m_loads(&self) -> usize {
        self.m_loads
    }

    /// Power of load `j` in domain `i`, in watts.
    pub fn power(&self, domain: usize, load: usize) -> f64 {
        self.powers[domain * self.m_loads + load]
    }

    /// Row-major view of all N x M load powers.
    pub fn powers(&self) -> &[f64] {
        &self.powers
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.powers.chunks_exact(self.m_loads)
    }

    /// Per-domain totals `P_i = sum_j P_ij`.
    pub fn domain_totals(&self) -> &[f64] {
        &self.domain_totals
    }

    /// Cross-domain average power.
    pub fn grand_mean(&self) -> f64 {
        self.grand_mean
    }
}

/// Deterministic substream for one Monte Carlo trial. The seed picks the
/// ChaCha key; the trial index selects a distinct keystream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws one N x M array of i.i.d. load powers from `dist`.
pub fn sample_array<R: Rng>(
    dist: &LoadDistribution,
    dims: &SystemDimensions,
    rng: &mut R,
) -> Result<LoadArraySample> {
    let params = dist.moment_parameters()?;
    let n = dims.n_domains as usize;
    let m = dims.m_loads as usize;
    let count = n * m;
    let mut powers = Vec::with_capacity(count);
    match params {
        MomentParameters::Constant { value } => powers.resize(count, value),
        MomentParameters::Uniform { lo, hi } => {
            let width = hi - lo;
            for _ in 0..count {
                powers.push(lo + width * rng.random::<f64>());
            }
        }
        MomentParameters::TwoPoint { lo, hi } => {
            for _ in 0..count {
                powers.push(if rng.random::<f64>() < 0.5 { lo } else { hi });
            }
        }
        MomentParameters::LogNormal { log_mean, log_sd } => {
            let sampler = LogNormal::new(log_mean, log_sd).expect("validated parameters");
            for _ in 0..count {
                powers.push(sampler.sample(rng));
            }
        }
        MomentParameters::TruncatedNormal {
            parent_mean,
            parent_sd,
            ..
        } => {
            // Rejection below zero; the parent mean is nonnegative so this
            // accepts with probability >= 1/2 per draw.
            let sampler = Normal::new(parent_mean, parent_sd).expect("validated parameters");
            for _ in 0..count {
                loop {
                    let x = sampler.sample(rng);
                    if x >= 0.0 {
                        powers.push(x);
                        break;
                    }
                }
            }
        }
    }
    Ok(LoadArraySample::from_flat(powers, n, m))
}

/// Draws the load array for one `(seed, trial)` substream.
pub fn sample_trial(
    dist: &LoadDistribution,
    dims: &SystemDimensions,
    seed: u64,
    trial: u64,
) -> Result<LoadArraySample> {
    sample_array(dist, dims, &mut trial_rng(seed, trial))
}
