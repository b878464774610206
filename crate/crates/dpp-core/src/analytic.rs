//! Closed-form expected losses, scaling factors, normalized-loss figures of
//! merit, and exact asymptotic limits.
//!
//! Expected conduction loss depends on the load model only through its first
//! two moments. With `R = R_out / V0^2` and per-load variance `s^2`:
//!
//! - fully-coupled: `M(N-1) * s^2 * R`
//! - ladder:        `k * M(N-1)(N+1)/6 * s^2 * R` (`k` = topology loss multiplier)
//! - N:1 bulk:      `(M*N*s^2 + M^2*N^2*mu^2) * R`
//!
//! Normalized loss divides a topology's expected loss by the N:1 baseline
//! evaluated under the same dimensions, load model, and budget.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::loads::{LoadDistribution, SystemDimensions};
use crate::topology::{ArchitectureClass, ResourceBudget, Topology};

/// Expected loss split into its conduction and switching parts, in watts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectedLoss {
    pub conduction_w: f64,
    pub switching_w: f64,
    pub total_w: f64,
}

/// Moment of the load distribution that dominates expected-loss growth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Moment {
    /// Grows with the per-load variance sigma^2.
    Variance,
    /// Grows with the squared per-load mean mu^2.
    MeanSquared,
    /// Composite growth in both moments.
    Mixed,
}

/// Dominant growth law of expected loss as the array scales:
/// `S(M^a * N^b * moment)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingFactor {
    pub m_exponent: u32,
    pub n_exponent: u32,
    pub moment: Moment,
}

impl fmt::Display for ScalingFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |base: &str, exp: u32| match exp {
            1 => base.to_string(),
            2 => format!("{base}²"),
            e => format!("{base}^{e}"),
        };
        let moment = match self.moment {
            Moment::Variance => "σ²",
            Moment::MeanSquared => "μ²",
            Moment::Mixed => "σ²,μ²",
        };
        f.pad(&format!(
            "S({}·{}·{moment})",
            power("M", self.m_exponent),
            power("N", self.n_exponent)
        ))
    }
}

/// Dominant scaling law of a topology's expected conduction loss.
pub fn scaling_factor(topo: Topology) -> ScalingFactor {
    match topo.architecture_class() {
        ArchitectureClass::FullyCoupled => ScalingFactor {
            m_exponent: 1,
            n_exponent: 1,
            moment: Moment::Variance,
        },
        ArchitectureClass::Ladder => ScalingFactor {
            m_exponent: 1,
            n_exponent: 2,
            moment: Moment::Variance,
        },
        ArchitectureClass::Bulk => ScalingFactor {
            m_exponent: 2,
            n_exponent: 2,
            moment: Moment::MeanSquared,
        },
    }
}

/// Coefficient multiplying `sigma^2 * R_out/V0^2` in the expected conduction
/// loss. Integer products are formed before the single division so the
/// rational ladder factors carry no avoidable rounding.
fn variance_coefficient(topo: Topology, dims: &SystemDimensions) -> f64 {
    let n = f64::from(dims.n_domains);
    let m = f64::from(dims.m_loads);
    match topo.architecture_class() {
        ArchitectureClass::FullyCoupled => m * (n - 1.0),
        ArchitectureClass::Ladder => topo.loss_multiplier() * (m * (n - 1.0) * (n + 1.0) / 6.0),
        ArchitectureClass::Bulk => m * n,
    }
}

/// Expected conduction loss evaluated against an explicit output resistance.
///
/// This is the resistance-parameterized core of [`expected_loss`]; it also
/// serves tests that pin `R_out` directly instead of deriving it from a
/// budget.
pub fn conduction_with_resistance(
    topo: Topology,
    dims: &SystemDimensions,
    dist: &LoadDistribution,
    r_out: f64,
) -> f64 {
    let r = r_out / (dims.v0 * dims.v0);
    let variance_term = variance_coefficient(topo, dims) * dist.variance() * r;
    match topo.architecture_class() {
        ArchitectureClass::Bulk => {
            let n = f64::from(dims.n_domains);
            let m = f64::from(dims.m_loads);
            variance_term + (m * m * n * n) * (dist.mu * dist.mu) * r
        }
        _ => variance_term,
    }
}

/// Deterministic switching loss: one `V0^2 * Coss*fsw` term per shunted port.
pub fn switching_loss(topo: Topology, dims: &SystemDimensions, budget: &ResourceBudget) -> f64 {
    switching_loss_for_ports(topo.switching_port_count(dims), dims.v0, budget.coss_fsw)
}

/// Switching loss for an explicit port count, for sensitivity studies that
/// override the per-topology port model.
pub fn switching_loss_for_ports(ports: u32, v0: f64, coss_fsw: f64) -> f64 {
    f64::from(ports) * v0 * v0 * coss_fsw
}

/// Closed-form expected loss of `topo` under the given load array geometry,
/// load model, and resource budget.
pub fn expected_loss(
    topo: Topology,
    dims: &SystemDimensions,
    dist: &LoadDistribution,
    budget: &ResourceBudget,
) -> ExpectedLoss {
    let r_out = topo.output_resistance(dims, budget);
    let conduction_w = conduction_with_resistance(topo, dims, dist, r_out);
    let switching_w = switching_loss(topo, dims, budget);
    ExpectedLoss {
        conduction_w,
        switching_w,
        total_w: conduction_w + switching_w,
    }
}

/// Ratio of `topo`'s expected loss to the N:1 baseline at the same operating
/// point. `include_switching` folds the deterministic switching term into
/// both numerator and denominator; the default figure of merit
/// ([`normalized_loss`]) is conduction-only, matching the closed forms.
pub fn normalized_loss_with(
    topo: Topology,
    dims: &SystemDimensions,
    dist: &LoadDistribution,
    budget: &ResourceBudget,
    include_switching: bool,
) -> Result<f64> {
    let pick = |loss: ExpectedLoss| {
        if include_switching {
            loss.total_w
        } else {
            loss.conduction_w
        }
    };
    let baseline = pick(expected_loss(Topology::BulkDabN1, dims, dist, budget));
    if baseline <= 0.0 {
        return Err(Error::DegenerateBaseline);
    }
    Ok(pick(expected_loss(topo, dims, dist, budget)) / baseline)
}

/// Conduction-only normalized loss.
pub fn normalized_loss(
    topo: Topology,
    dims: &SystemDimensions,
    dist: &LoadDistribution,
    budget: &ResourceBudget,
) -> Result<f64> {
    normalized_loss_with(topo, dims, dist, budget, false)
}

/// Limit of a normalized-loss curve as the swept variable grows without
/// bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LargeNLimit {
    Finite(f64),
    Unbounded,
}

impl LargeNLimit {
    pub fn finite(self) -> Option<f64> {
        match self {
            LargeNLimit::Finite(v) => Some(v),
            LargeNLimit::Unbounded => None,
        }
    }
}

impl fmt::Display for LargeNLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LargeNLimit::Finite(v) => write!(f, "{v}"),
            LargeNLimit::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Exact limit of the conduction-only normalized loss as `N -> inf` at fixed
/// `m_loads`, computed from the formula structure rather than numerical
/// extrapolation. Requires `dist.mu > 0`.
///
/// Fully-coupled topologies converge to `Cv^2 * r1 / (M * R_dab)` where `r1`
/// is the per-domain resistance slope (for the ac-coupled topology at equal
/// budgets this is the `Cv^2 / 4M` bound). Ladder topologies grow without
/// bound, and the baseline is identically 1.
pub fn asymptote_large_n(
    topo: Topology,
    m_loads: u32,
    dist: &LoadDistribution,
    budget: &ResourceBudget,
) -> LargeNLimit {
    assert!(
        dist.mu > 0.0,
        "large-N asymptote requires a positive mean load"
    );
    match topo.architecture_class() {
        ArchitectureClass::Bulk => LargeNLimit::Finite(1.0),
        ArchitectureClass::Ladder => {
            if dist.sigma == 0.0 {
                LargeNLimit::Finite(0.0)
            } else {
                LargeNLimit::Unbounded
            }
        }
        ArchitectureClass::FullyCoupled => {
            let slope = match topo {
                Topology::AcCoupled => 8.0 / budget.g_sw + 4.0 / budget.g_m,
                Topology::DcCoupled => 32.0 / budget.g_sw + 16.0 / budget.g_m,
                _ => unreachable!("fully-coupled arm"),
            };
            let r_dab = 32.0 / budget.g_sw + 16.0 / budget.g_m;
            let cv = dist.sigma / dist.mu;
            LargeNLimit::Finite(cv * cv * slope / (f64::from(m_loads) * r_dab))
        }
    }
}

/// Exact limit of the conduction-only normalized loss as `Cv -> inf` at fixed
/// `(M, N)`: the variance terms dominate both numerator and denominator, so
/// the limit is the ratio of variance coefficients weighted by resistance.
pub fn asymptote_large_cv(
    topo: Topology,
    dims: &SystemDimensions,
    budget: &ResourceBudget,
) -> f64 {
    let num = variance_coefficient(topo, dims) * topo.output_resistance(dims, budget);
    let den = variance_coefficient(Topology::BulkDabN1, dims)
        * Topology::BulkDabN1.output_resistance(dims, budget);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loads::Family;
    use approx::assert_relative_eq;

    fn dims(n: u32, m: u32, v0: f64) -> SystemDimensions {
        SystemDimensions::new(n, m, v0).unwrap()
    }

    #[test]
    fn fully_coupled_expected_loss_example() {
        // M=2, N=3, sigma^2=0.25, V0=2, Gsw=2, Gm=4 -> R_out = 15 ohm,
        // conduction = 2 * 2 * 0.25 * 15 / 4 = 3.75 W.
        let d = dims(3, 2, 2.0);
        let dist = LoadDistribution::uniform(1.0, 0.5).unwrap();
        let budget = ResourceBudget::new(2.0, 4.0, 0.0).unwrap();
        assert_eq!(
            Topology::AcCoupled.output_resistance(&d, &budget),
            15.0
        );
        let loss = expected_loss(Topology::AcCoupled, &d, &dist, &budget);
        assert_relative_eq!(loss.conduction_w, 3.75, max_relative = 1e-15);
        assert_eq!(loss.switching_w, 0.0);
        assert_eq!(loss.total_w, loss.conduction_w);
    }

    #[test]
    fn bulk_expected_loss_with_unit_resistance() {
        // M=2, N=2, mu=1, sigma^2=0.25, V0=1, R_out=1:
        // (4 * 0.25 + 16 * 1) * 1 = 17 W.
        let d = dims(2, 2, 1.0);
        let dist = LoadDistribution::uniform(1.0, 0.5).unwrap();
        let w = conduction_with_resistance(Topology::BulkDabN1, &d, &dist, 1.0);
        assert_relative_eq!(w, 17.0, max_relative = 1e-15);
    }

    #[test]
    fn zero_variance_dpp_is_lossless() {
        let d = dims(8, 4, 1.0);
        let budget = ResourceBudget::normalized();
        for family in [Family::Uniform, Family::TwoPoint, Family::TruncatedNormal] {
            let dist = LoadDistribution::new(family, 1.0, 0.0).unwrap();
            for topo in [
                Topology::AcCoupled,
                Topology::DcCoupled,
                Topology::LadderDab,
                Topology::LadderBuckBoost,
            ] {
                assert_eq!(expected_loss(topo, &d, &dist, &budget).conduction_w, 0.0);
            }
        }
    }

    #[test]
    fn single_domain_has_no_differential_loss() {
        let d = dims(1, 5, 1.0);
        let dist = LoadDistribution::uniform(2.0, 0.5).unwrap();
        let budget = ResourceBudget::normalized();
        for topo in [
            Topology::AcCoupled,
            Topology::DcCoupled,
            Topology::LadderDab,
            Topology::LadderBuckBoost,
        ] {
            assert_eq!(expected_loss(topo, &d, &dist, &budget).conduction_w, 0.0);
        }
    }

    #[test]
    fn scaling_factor_mapping() {
        let s = scaling_factor(Topology::AcCoupled);
        assert_eq!((s.m_exponent, s.n_exponent, s.moment), (1, 1, Moment::Variance));
        assert_eq!(s.to_string(), "S(M·N·σ²)");

        let s = scaling_factor(Topology::LadderBuckBoost);
        assert_eq!((s.m_exponent, s.n_exponent, s.moment), (1, 2, Moment::Variance));
        assert_eq!(s.to_string(), "S(M·N²·σ²)");

        let s = scaling_factor(Topology::BulkDabN1);
        assert_eq!(
            (s.m_exponent, s.n_exponent, s.moment),
            (2, 2, Moment::MeanSquared)
        );
        assert_eq!(s.to_string(), "S(M²·N²·μ²)");
    }

    #[test]
    fn normalized_loss_reduction_for_ac_coupled() {
        // M=4, Cv=1, unit budgets: (N-1)/(16N+4).
        let dist = LoadDistribution::two_point(1.0, 1.0).unwrap();
        let budget = ResourceBudget::normalized();
        let d = dims(2, 4, 1.0);
        let value = normalized_loss(Topology::AcCoupled, &d, &dist, &budget).unwrap();
        assert_relative_eq!(value, 1.0 / 36.0, max_relative = 1e-14);
        for n in [2u32, 3, 5, 13, 64] {
            let d = dims(n, 4, 1.0);
            let value = normalized_loss(Topology::AcCoupled, &d, &dist, &budget).unwrap();
            let reduced = f64::from(n - 1) / f64::from(16 * n + 4);
            assert_relative_eq!(value, reduced, max_relative = 1e-14);
        }
    }

    #[test]
    fn normalized_loss_zero_variance_is_zero() {
        let dist = LoadDistribution::uniform(1.0, 0.0).unwrap();
        let budget = ResourceBudget::normalized();
        let d = dims(4, 4, 1.0);
        for topo in [Topology::AcCoupled, Topology::LadderDab] {
            assert_eq!(normalized_loss(topo, &d, &dist, &budget).unwrap(), 0.0);
        }
    }

    #[test]
    fn normalized_loss_degenerate_baseline() {
        let dist = LoadDistribution::uniform(0.0, 0.0).unwrap();
        let budget = ResourceBudget::normalized();
        let d = dims(4, 4, 1.0);
        assert_eq!(
            normalized_loss(Topology::AcCoupled, &d, &dist, &budget),
            Err(Error::DegenerateBaseline)
        );
    }

    #[test]
    fn bulk_normalizes_to_one_identically() {
        let budget = ResourceBudget::new(0.7, 2.3, 0.0).unwrap();
        for (n, m, mu, sigma) in [(2, 1, 1.0, 0.5), (7, 3, 2.0, 1.0), (16, 8, 0.5, 0.1)] {
            let d = dims(n, m, 1.5);
            let dist = LoadDistribution::log_normal(mu, sigma).unwrap();
            assert_eq!(
                normalized_loss(Topology::BulkDabN1, &d, &dist, &budget).unwrap(),
                1.0
            );
        }
    }

    #[test]
    fn large_n_asymptotes() {
        let budget = ResourceBudget::normalized();
        let cv1 = LoadDistribution::two_point(1.0, 1.0).unwrap();

        // Ac-coupled at M=4, Cv=1 converges to Cv^2/(4M) = 1/16.
        let limit = asymptote_large_n(Topology::AcCoupled, 4, &cv1, &budget);
        assert_eq!(limit, LargeNLimit::Finite(0.0625));

        assert_eq!(
            asymptote_large_n(Topology::LadderDab, 4, &cv1, &budget),
            LargeNLimit::Unbounded
        );
        assert_eq!(
            asymptote_large_n(Topology::BulkDabN1, 4, &cv1, &budget),
            LargeNLimit::Finite(1.0)
        );

        // Dc-coupled at M=1, Cv=1 has limit Cv^2/M = 1; numeric check at N=1e6.
        let limit = asymptote_large_n(Topology::DcCoupled, 1, &cv1, &budget)
            .finite()
            .unwrap();
        assert_eq!(limit, 1.0);
        let d = dims(1_000_000, 1, 1.0);
        let numeric = normalized_loss(Topology::DcCoupled, &d, &cv1, &budget).unwrap();
        assert_relative_eq!(numeric, limit, max_relative = 1e-5);

        // Zero variance: the ladder curve is identically zero, not unbounded.
        let flat = LoadDistribution::uniform(1.0, 0.0).unwrap();
        assert_eq!(
            asymptote_large_n(Topology::LadderDab, 4, &flat, &budget),
            LargeNLimit::Finite(0.0)
        );
    }

    #[test]
    fn large_cv_asymptotes() {
        let budget = ResourceBudget::normalized();
        let d = dims(2, 4, 1.0);
        assert_relative_eq!(
            asymptote_large_cv(Topology::AcCoupled, &d, &budget),
            0.25,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            asymptote_large_cv(Topology::LadderDab, &d, &budget),
            0.25,
            max_relative = 1e-15
        );
        assert_eq!(asymptote_large_cv(Topology::BulkDabN1, &d, &budget), 1.0);
        let single = dims(1, 4, 1.0);
        for topo in [Topology::AcCoupled, Topology::LadderDab] {
            assert_eq!(asymptote_large_cv(topo, &single, &budget), 0.0);
        }
    }

    #[test]
    fn expected_loss_depends_only_on_moments() {
        let d = dims(6, 3, 2.0);
        let budget = ResourceBudget::new(1.5, 0.8, 1e-3).unwrap();
        let uniform = LoadDistribution::uniform(2.0, 0.7).unwrap();
        let two_point = LoadDistribution::two_point(2.0, 0.7).unwrap();
        for topo in Topology::ALL {
            assert_eq!(
                expected_loss(topo, &d, &uniform, &budget),
                expected_loss(topo, &d, &two_point, &budget)
            );
        }
    }

    #[test]
    fn conduction_is_linear_in_variance_and_m() {
        let budget = ResourceBudget::normalized();
        let base_dist = LoadDistribution::log_normal(1.0, 0.5).unwrap();
        let double_var = LoadDistribution::log_normal(1.0, 0.5 * 2f64.sqrt()).unwrap();
        for topo in [Topology::AcCoupled, Topology::LadderDab] {
            let d1 = dims(6, 3, 1.0);
            let d2 = dims(6, 6, 1.0);
            let base = expected_loss(topo, &d1, &base_dist, &budget).conduction_w;
            assert_relative_eq!(
                expected_loss(topo, &d1, &double_var, &budget).conduction_w,
                2.0 * base,
                max_relative = 1e-12
            );
            assert_relative_eq!(
                expected_loss(topo, &d2, &base_dist, &budget).conduction_w,
                2.0 * base,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn doubling_n_approaches_class_growth_rates() {
        // Conduction(2N)/Conduction(N) -> 4 for fully-coupled, 8 for ladder.
        let budget = ResourceBudget::normalized();
        let dist = LoadDistribution::log_normal(1.0, 0.5).unwrap();
        let n = 1 << 20;
        let rate = |topo| {
            let at = |n| expected_loss(topo, &dims(n, 2, 1.0), &dist, &budget).conduction_w;
            at(2 * n) / at(n)
        };
        assert_relative_eq!(rate(Topology::AcCoupled), 4.0, max_relative = 1e-5);
        assert_relative_eq!(rate(Topology::LadderDab), 8.0, max_relative = 1e-5);
    }

    #[test]
    fn ac_coupled_stays_below_one_sixteenth_and_increases() {
        let dist = LoadDistribution::two_point(1.0, 1.0).unwrap();
        let budget = ResourceBudget::normalized();
        let mut previous = 0.0;
        for n in 2..=1000 {
            let value =
                normalized_loss(Topology::AcCoupled, &dims(n, 4, 1.0), &dist, &budget).unwrap();
            assert!(value < 0.0625, "N={n}: {value}");
            assert!(value > previous, "not increasing at N={n}");
            previous = value;
        }
    }

    #[test]
    fn fixed_resistance_slope_vs_n_is_near_one_for_fully_coupled() {
        // With R_out pinned, fully-coupled conduction grows ~linearly in N.
        let dist = LoadDistribution::uniform(1.0, 0.5).unwrap();
        let points: Vec<(f64, f64)> = [8u32, 16, 32, 64]
            .iter()
            .map(|&n| {
                let w =
                    conduction_with_resistance(Topology::AcCoupled, &dims(n, 4, 1.0), &dist, 1.0);
                (f64::from(n).ln(), w.ln())
            })
            .collect();
        let slope = least_squares_slope(&points);
        assert!((slope - 1.0).abs() < 0.1, "slope {slope}");
    }

    pub(crate) fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
        let n = points.len() as f64;
        let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
        let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
        let cov = points
            .iter()
            .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
            .sum::<f64>();
        let var = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum::<f64>();
        cov / var
    }
}
