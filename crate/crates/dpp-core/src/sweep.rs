//! Normalized-loss sweeps over N, M, or the coefficient of variance, with
//! paired analytic and Monte Carlo series per topology, and CSV/JSON/SVG
//! emission.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analytic::expected_loss;
use crate::error::{Error, Result};
use crate::loads::{LoadDistribution, SystemDimensions};
use crate::montecarlo::{estimate, LossEstimate};
use crate::topology::{ResourceBudget, Topology};

/// Swept model variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    /// Number of series-stacked voltage domains N.
    #[serde(rename = "n")]
    DomainsN,
    /// Number of parallel loads per domain M.
    #[serde(rename = "m")]
    LoadsM,
    /// Coefficient of variance Cv = sigma/mu (mu held fixed).
    #[serde(rename = "cv")]
    CoeffVar,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::DomainsN => "n",
            Axis::LoadsM => "m",
            Axis::CoeffVar => "cv",
        }
    }

    fn is_integer(self) -> bool {
        matches!(self, Axis::DomainsN | Axis::LoadsM)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n" => Ok(Axis::DomainsN),
            "m" => Ok(Axis::LoadsM),
            "cv" => Ok(Axis::CoeffVar),
            other => Err(Error::UnknownAxis(other.to_string())),
        }
    }
}

/// One sweep experiment: an axis, its grid, and the fixed remainder of the
/// model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: Axis,
    /// Strictly increasing grid; integer-valued for the N and M axes.
    pub values: Vec<f64>,
    /// Dimensions of the array; the swept field is overridden per point.
    pub dims: SystemDimensions,
    /// Load model; `sigma` is overridden per point on the Cv axis.
    pub dist: LoadDistribution,
    pub budget: ResourceBudget,
    pub topologies: Vec<Topology>,
    pub trials: u64,
    pub seed: u64,
    /// Fold the deterministic switching term into both sides of the
    /// normalized-loss ratio. Conduction-only when false.
    pub include_switching: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidSweep("no sweep values given".into()));
        }
        if self.values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSweep(
                "sweep values must be strictly increasing".into(),
            ));
        }
        if self.axis.is_integer() {
            if let Some(v) = self
                .values
                .iter()
                .find(|v| v.fract() != 0.0 || **v < 1.0 || **v > f64::from(u32::MAX))
            {
                return Err(Error::InvalidSweep(format!(
                    "axis {} requires positive integer values, got {v}",
                    self.axis
                )));
            }
        } else if let Some(v) = self.values.iter().find(|v| **v < 0.0 || !v.is_finite()) {
            return Err(Error::InvalidSweep(format!(
                "axis cv requires nonnegative finite values, got {v}"
            )));
        }
        if self.topologies.is_empty() {
            return Err(Error::InvalidSweep("no topologies selected".into()));
        }
        if self.trials < 2 {
            return Err(Error::NotEnoughTrials(self.trials));
        }
        Ok(())
    }

    /// Operating point for one grid value; Cv points re-derive sigma and
    /// re-check family feasibility.
    fn point(&self, value: f64) -> Result<(SystemDimensions, LoadDistribution)> {
        match self.axis {
            Axis::DomainsN => Ok((
                SystemDimensions::new(value as u32, self.dims.m_loads, self.dims.v0)?,
                self.dist,
            )),
            Axis::LoadsM => Ok((
                SystemDimensions::new(self.dims.n_domains, value as u32, self.dims.v0)?,
                self.dist,
            )),
            Axis::CoeffVar => Ok((
                self.dims,
                LoadDistribution::from_cv(self.dist.family, self.dist.mu, value)?,
            )),
        }
    }
}

/// One (axis value, topology) cell of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub topology: Topology,
    pub analytic_normalized: f64,
    pub simulated_normalized: f64,
    pub sim_ci_low: f64,
    pub sim_ci_high: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axis: Axis,
    pub rows: Vec<SweepRow>,
}

/// Standard error of `num/den` by first-order propagation. The paired
/// estimates share load arrays (same seed), which positively correlates
/// them, so ignoring the covariance overstates the error slightly.
fn ratio_std_error(num: f64, num_se: f64, den: f64, den_se: f64) -> f64 {
    let a = num_se / den;
    let b = num * den_se / (den * den);
    (a * a + b * b).sqrt()
}

/// Runs a sweep: per grid value, the analytic normalized loss and a Monte
/// Carlo normalized loss (ratio of estimate means against the N:1 baseline,
/// baseline shared across topologies at the point). Rows are emitted in
/// axis-major, topology-minor order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let budget = if spec.include_switching {
        spec.budget
    } else {
        spec.budget.without_switching()
    };
    let pick = |loss: crate::analytic::ExpectedLoss| {
        if spec.include_switching {
            loss.total_w
        } else {
            loss.conduction_w
        }
    };

    let mut rows = Vec::with_capacity(spec.values.len() * spec.topologies.len());
    for &value in &spec.values {
        let (dims, dist) = spec.point(value)?;
        let baseline_analytic = pick(expected_loss(Topology::BulkDabN1, &dims, &dist, &budget));
        if baseline_analytic <= 0.0 {
            return Err(Error::DegenerateBaseline);
        }
        let baseline_est: LossEstimate =
            estimate(Topology::BulkDabN1, &dims, &dist, &budget, spec.trials, spec.seed)?;

        for &topo in &spec.topologies {
            let analytic_normalized =
                pick(expected_loss(topo, &dims, &dist, &budget)) / baseline_analytic;
            debug_assert!(analytic_normalized.is_finite() && analytic_normalized >= 0.0);
            let est = if topo == Topology::BulkDabN1 {
                baseline_est
            } else {
                estimate(topo, &dims, &dist, &budget, spec.trials, spec.seed)?
            };
            let simulated_normalized = est.mean_w / baseline_est.mean_w;
            let se = ratio_std_error(
                est.mean_w,
                est.std_error_w,
                baseline_est.mean_w,
                baseline_est.std_error_w,
            );
            rows.push(SweepRow {
                value,
                topology: topo,
                analytic_normalized,
                simulated_normalized,
                sim_ci_low: simulated_normalized - 1.96 * se,
                sim_ci_high: simulated_normalized + 1.96 * se,
            });
        }
    }
    Ok(SweepResult {
        axis: spec.axis,
        rows,
    })
}

/// Output encoding for sweep results. `Text` is a human-readable table owned
/// by the CLI layer; [`emit`] rejects it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
    Svg,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Text => "text",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Svg => "svg",
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

/// Serializes a sweep result. CSV numerics are full precision (shortest
/// round-trip representation); JSON mirrors the row records and parses back
/// to an identical `SweepResult`; SVG renders a log-y chart with analytic
/// curves and simulated points.
pub fn emit(result: &SweepResult, format: OutputFormat) -> Result<Vec<u8>> {
    if result.rows.is_empty() {
        return Err(Error::EmptySweep);
    }
    match format {
        OutputFormat::Csv => Ok(emit_csv(result).into_bytes()),
        OutputFormat::Json => {
            Ok(serde_json::to_vec(result).expect("sweep rows are plain data"))
        }
        OutputFormat::Svg => Ok(emit_svg(result).into_bytes()),
        OutputFormat::Text => Err(Error::UnsupportedFormat(
            "text (use csv, json, or svg for emitted sweeps)".into(),
        )),
    }
}

fn emit_csv(result: &SweepResult) -> String {
    let mut out = String::from("axis,value,topology,analytic,simulated,ci_low,ci_high\n");
    for row in &result.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            result.axis,
            row.value,
            row.topology,
            row.analytic_normalized,
            row.simulated_normalized,
            row.sim_ci_low,
            row.sim_ci_high
        )
        .expect("writing to string");
    }
    out
}

const SVG_WIDTH: f64 = 880.0;
const SVG_HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

const SERIES_COLORS: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"];

fn emit_svg(result: &SweepResult) -> String {
    let plot_w = SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

    // Log-y over every positive plotted quantity; zero rows are skipped.
    let mut topologies: Vec<Topology> = Vec::new();
    for row in &result.rows {
        if !topologies.contains(&row.topology) {
            topologies.push(row.topology);
        }
    }
    let xs: Vec<f64> = result.rows.iter().map(|r| r.value).collect();
    let (x_min, x_max) = (
        xs.iter().cloned().fold(f64::INFINITY, f64::min),
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let positives: Vec<f64> = result
        .rows
        .iter()
        .flat_map(|r| [r.analytic_normalized, r.simulated_normalized])
        .filter(|v| *v > 0.0)
        .collect();

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">"
    );
    let _ = writeln!(
        svg,
        "<rect width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" fill=\"white\"/>"
    );
    let _ = writeln!(
        svg,
        "<text x=\"{:.2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">normalized loss vs {}</text>",
        MARGIN_LEFT + plot_w / 2.0,
        result.axis
    );

    if positives.is_empty() || x_max <= x_min {
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">no positive data for log scale</text>",
            MARGIN_LEFT + plot_w / 2.0,
            MARGIN_TOP + plot_h / 2.0
        );
        svg.push_str("</svg>\n");
        return svg;
    }

    let y_lo = positives.iter().cloned().fold(f64::INFINITY, f64::min);
    let y_hi = positives.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let dec_lo = y_lo.log10().floor();
    let dec_hi = y_hi.log10().ceil().max(dec_lo + 1.0);
    let x_pos = |v: f64| MARGIN_LEFT + (v - x_min) / (x_max - x_min) * plot_w;
    let y_pos = |v: f64| MARGIN_TOP + plot_h - (v.log10() - dec_lo) / (dec_hi - dec_lo) * plot_h;

    // Frame and decade gridlines.
    let _ = writeln!(
        svg,
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" fill=\"none\" stroke=\"#333\"/>"
    );
    let mut decade = dec_lo;
    while decade <= dec_hi + 1e-9 {
        let y = y_pos(10f64.powf(decade));
        let _ = writeln!(
            svg,
            "<line x1=\"{MARGIN_LEFT}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#ddd\"/>",
            MARGIN_LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e{}</text>",
            MARGIN_LEFT - 6.0,
            y + 4.0,
            decade as i64
        );
        decade += 1.0;
    }
    // X tick labels at each distinct grid value.
    let mut seen = Vec::new();
    for &x in &xs {
        if seen.contains(&x.to_bits()) {
            continue;
        }
        seen.push(x.to_bits());
        let px = x_pos(x);
        let _ = writeln!(
            svg,
            "<line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"#333\"/>",
            MARGIN_TOP + plot_h,
            MARGIN_TOP + plot_h + 4.0
        );
        let _ = writeln!(
            svg,
            "<text x=\"{px:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{x}</text>",
            MARGIN_TOP + plot_h + 18.0
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
        MARGIN_LEFT + plot_w / 2.0,
        SVG_HEIGHT - 14.0,
        result.axis
    );

    for (idx, &topo) in topologies.iter().enumerate() {
        let color = SERIES_COLORS[idx % SERIES_COLORS.len()];
        // Analytic curve.
        let mut path = String::new();
        for row in result.rows.iter().filter(|r| r.topology == topo) {
            if row.analytic_normalized > 0.0 {
                let cmd = if path.is_empty() { 'M' } else { 'L' };
                let _ = write!(
                    path,
                    "{cmd}{:.2} {:.2} ",
                    x_pos(row.value),
                    y_pos(row.analytic_normalized)
                );
            }
        }
        if !path.is_empty() {
            let _ = writeln!(
                svg,
                "<path d=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>",
                path.trim_end()
            );
        }
        // Simulated points with CI whiskers.
        for row in result.rows.iter().filter(|r| r.topology == topo) {
            if row.simulated_normalized > 0.0 {
                let px = x_pos(row.value);
                let py = y_pos(row.simulated_normalized);
                if row.sim_ci_low > 0.0 {
                    let _ = writeln!(
                        svg,
                        "<line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"{color}\"/>",
                        y_pos(row.sim_ci_high),
                        y_pos(row.sim_ci_low)
                    );
                }
                let _ = writeln!(
                    svg,
                    "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"6\" height=\"6\" fill=\"{color}\"/>",
                    px - 3.0,
                    py - 3.0
                );
            }
        }
        // Legend entry.
        let ly = MARGIN_TOP + 14.0 + 20.0 * idx as f64;
        let lx = MARGIN_LEFT + plot_w + 16.0;
        let _ = writeln!(
            svg,
            "<rect x=\"{lx:.2}\" y=\"{:.2}\" width=\"10\" height=\"10\" fill=\"{color}\"/>",
            ly - 9.0
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{ly:.2}\" font-family=\"sans-serif\" font-size=\"12\">{topo}</text>",
            lx + 16.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn base_spec() -> SweepSpec {
        SweepSpec {
            axis: Axis::DomainsN,
            values: vec![2.0, 4.0, 8.0, 16.0],
            dims: SystemDimensions::new(8, 4, 1.0).unwrap(),
            dist: LoadDistribution::two_point(1.0, 1.0).unwrap(),
            budget: ResourceBudget::normalized(),
            topologies: vec![Topology::AcCoupled],
            trials: 200,
            seed: 1,
            include_switching: false,
        }
    }

    #[test]
    fn analytic_series_matches_reduction() {
        // Ac-coupled, M=4, Cv=1: (N-1)/(16N+4) = 1/36, 3/68, 7/132, 15/260.
        let result = run_sweep(&base_spec()).unwrap();
        let expected = [1.0 / 36.0, 3.0 / 68.0, 7.0 / 132.0, 15.0 / 260.0];
        assert_eq!(result.rows.len(), 4);
        for (row, want) in result.rows.iter().zip(expected) {
            assert_relative_eq!(row.analytic_normalized, want, max_relative = 1e-14);
            assert!(row.analytic_normalized < 0.0625);
        }
        for pair in result.rows.windows(2) {
            assert!(pair[0].analytic_normalized < pair[1].analytic_normalized);
        }
    }

    #[test]
    fn zero_variance_sweep_is_identically_zero() {
        let mut spec = base_spec();
        spec.dist = LoadDistribution::uniform(1.0, 0.0).unwrap();
        let result = run_sweep(&spec).unwrap();
        for row in &result.rows {
            assert_eq!(row.analytic_normalized, 0.0);
            assert_eq!(row.simulated_normalized, 0.0);
        }
    }

    #[test]
    fn large_cv_point_approaches_asymptote() {
        let spec = SweepSpec {
            axis: Axis::CoeffVar,
            values: vec![1.0, 100.0],
            dims: SystemDimensions::new(2, 4, 1.0).unwrap(),
            dist: LoadDistribution::log_normal(1.0, 0.5).unwrap(),
            budget: ResourceBudget::normalized(),
            topologies: vec![Topology::AcCoupled],
            trials: 100,
            seed: 1,
            include_switching: false,
        };
        let result = run_sweep(&spec).unwrap();
        let endpoint = result.rows.last().unwrap().analytic_normalized;
        assert!(
            (endpoint - 0.25).abs() / 0.25 < 0.005,
            "endpoint {endpoint} not within 0.5% of 0.25"
        );
    }

    #[test]
    fn rows_are_axis_major_topology_minor() {
        let mut spec = base_spec();
        spec.values = vec![2.0, 3.0];
        spec.topologies = vec![Topology::AcCoupled, Topology::BulkDabN1];
        let result = run_sweep(&spec).unwrap();
        let order: Vec<(f64, Topology)> =
            result.rows.iter().map(|r| (r.value, r.topology)).collect();
        assert_eq!(
            order,
            vec![
                (2.0, Topology::AcCoupled),
                (2.0, Topology::BulkDabN1),
                (3.0, Topology::AcCoupled),
                (3.0, Topology::BulkDabN1),
            ]
        );
        // The baseline row normalizes against itself.
        assert_eq!(result.rows[1].simulated_normalized, 1.0);
        assert_eq!(result.rows[1].analytic_normalized, 1.0);
    }

    #[test]
    fn csv_has_header_and_one_line_per_row() {
        let mut spec = base_spec();
        spec.values = vec![2.0, 4.0, 8.0];
        spec.topologies = vec![Topology::AcCoupled, Topology::LadderDab];
        let result = run_sweep(&spec).unwrap();
        let csv = String::from_utf8(emit(&result, OutputFormat::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 1 + 6);
        assert_eq!(lines[0], "axis,value,topology,analytic,simulated,ci_low,ci_high");
        assert!(lines[1].starts_with("n,2,ac,"));
    }

    #[test]
    fn json_round_trips_exactly() {
        let mut spec = base_spec();
        spec.topologies = vec![Topology::AcCoupled, Topology::LadderBuckBoost];
        let result = run_sweep(&spec).unwrap();
        let json = emit(&result, OutputFormat::Json).unwrap();
        let parsed: SweepResult = serde_json::from_slice(&json).unwrap();
        assert_eq!(parsed, result);
    }

    #[test]
    fn empty_result_and_text_format_are_rejected() {
        let empty = SweepResult {
            axis: Axis::DomainsN,
            rows: vec![],
        };
        assert_eq!(emit(&empty, OutputFormat::Csv), Err(Error::EmptySweep));

        let result = run_sweep(&base_spec()).unwrap();
        assert!(matches!(
            emit(&result, OutputFormat::Text),
            Err(Error::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn svg_renders_series_for_each_topology() {
        let mut spec = base_spec();
        spec.topologies = vec![Topology::AcCoupled, Topology::LadderDab];
        let result = run_sweep(&spec).unwrap();
        let svg = String::from_utf8(emit(&result, OutputFormat::Svg).unwrap()).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(">ac</text>"));
        assert!(svg.contains(">ladder-dab</text>"));
        assert!(svg.contains("<path"));
    }

    #[test]
    fn validation_rejects_bad_grids() {
        let mut spec = base_spec();
        spec.values = vec![];
        assert!(matches!(run_sweep(&spec), Err(Error::InvalidSweep(_))));

        let mut spec = base_spec();
        spec.values = vec![4.0, 2.0];
        assert!(matches!(run_sweep(&spec), Err(Error::InvalidSweep(_))));

        let mut spec = base_spec();
        spec.values = vec![2.0, 2.5];
        assert!(matches!(run_sweep(&spec), Err(Error::InvalidSweep(_))));

        let mut spec = base_spec();
        spec.topologies = vec![];
        assert!(matches!(run_sweep(&spec), Err(Error::InvalidSweep(_))));
    }

    #[test]
    fn infeasible_cv_point_propagates() {
        let spec = SweepSpec {
            axis: Axis::CoeffVar,
            values: vec![0.1, 1.5],
            dims: SystemDimensions::new(4, 2, 1.0).unwrap(),
            dist: LoadDistribution::uniform(1.0, 0.1).unwrap(),
            budget: ResourceBudget::normalized(),
            topologies: vec![Topology::AcCoupled],
            trials: 10,
            seed: 0,
            include_switching: false,
        };
        // Cv = 1.5 breaks the uniform support bound mu >= sqrt(3) sigma.
        assert!(matches!(
            run_sweep(&spec),
            Err(Error::InfeasibleMoments { .. })
        ));
    }

    #[test]
    fn figure_shape_properties_hold() {
        use crate::analytic::{asymptote_large_cv, asymptote_large_n, LargeNLimit};
        let budget = ResourceBudget::normalized();
        let dist = LoadDistribution::log_normal(1.0, 1.0).unwrap();

        // vs N: fully-coupled increases toward its finite bound, ladder
        // overtakes it from N=3 on and keeps growing.
        let mut spec = base_spec();
        spec.dist = dist;
        spec.values = (2..=16).map(f64::from).collect();
        spec.topologies = vec![Topology::AcCoupled, Topology::LadderDab];
        spec.trials = 50;
        let result = run_sweep(&spec).unwrap();
        let ac: Vec<f64> = result
            .rows
            .iter()
            .filter(|r| r.topology == Topology::AcCoupled)
            .map(|r| r.analytic_normalized)
            .collect();
        let ladder: Vec<f64> = result
            .rows
            .iter()
            .filter(|r| r.topology == Topology::LadderDab)
            .map(|r| r.analytic_normalized)
            .collect();
        let bound = asymptote_large_n(Topology::AcCoupled, 4, &dist, &budget)
            .finite()
            .unwrap();
        for w in ac.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(ac.iter().all(|&v| v < bound));
        assert_eq!(
            asymptote_large_n(Topology::LadderDab, 4, &dist, &budget),
            LargeNLimit::Unbounded
        );
        for (i, (&l, &a)) in ladder.iter().zip(&ac).enumerate() {
            let n = i + 2;
            if n >= 3 {
                assert!(l > a, "ladder should exceed ac at N={n}");
            }
        }
        for w in ladder.windows(2) {
            assert!(w[0] < w[1]);
        }

        // vs M: normalized loss decays toward zero like 1/M.
        let mut spec = base_spec();
        spec.axis = Axis::LoadsM;
        spec.dist = dist;
        spec.values = (1..=16).map(f64::from).collect();
        spec.trials = 50;
        let result = run_sweep(&spec).unwrap();
        let values: Vec<(f64, f64)> = result
            .rows
            .iter()
            .map(|r| (r.value, r.analytic_normalized))
            .collect();
        for w in values.windows(2) {
            assert!(w[1].1 < w[0].1);
        }
        let scaled_first = values.first().unwrap().0 * values.first().unwrap().1;
        let scaled_last = values.last().unwrap().0 * values.last().unwrap().1;
        assert!((scaled_last - scaled_first).abs() / scaled_first < 0.25);

        // vs Cv: increasing and bounded by the large-Cv asymptote.
        let mut spec = base_spec();
        spec.axis = Axis::CoeffVar;
        spec.dist = LoadDistribution::log_normal(1.0, 0.1).unwrap();
        spec.values = (1..=20).map(|k| 0.1 * f64::from(k)).collect();
        spec.trials = 50;
        let result = run_sweep(&spec).unwrap();
        let bound = asymptote_large_cv(
            Topology::AcCoupled,
            &SystemDimensions::new(8, 4, 1.0).unwrap(),
            &budget,
        );
        let series: Vec<f64> = result.rows.iter().map(|r| r.analytic_normalized).collect();
        for w in series.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(series.iter().all(|&v| v < bound));
    }
}
