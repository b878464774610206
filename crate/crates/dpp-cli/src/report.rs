//! Deterministic report rendering for the four commands.

use std::fmt::Write as _;

use serde::Serialize;

use dpp_core::{
    emit, estimate, expected_loss, normalized_loss, run_sweep, scaling_factor, LossEstimate,
    OutputFormat, SweepResult, Topology,
};

use crate::config::RunConfig;
use crate::CliError;

/// Engineering number format for text reports: six fractional digits in a
/// readable range, scientific with six significant digits outside it.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 {
        return "0.000000".to_string();
    }
    let magnitude = x.abs();
    if (1e-3..1e7).contains(&magnitude) {
        format!("{x:.6}")
    } else {
        format!("{x:.5e}")
    }
}

/// Agreement verdict between a Monte Carlo estimate and the closed form.
pub fn verdict(est: &LossEstimate, closed: f64) -> &'static str {
    let diff = (est.mean_w - closed).abs();
    if est.std_error_w == 0.0 && diff == 0.0 {
        "exact match"
    } else if diff <= 3.0 * est.std_error_w {
        "agree"
    } else {
        "disagree"
    }
}

fn model_header(cfg: &RunConfig, with_trials: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dpp {}", cfg.command);
    let _ = writeln!(
        out,
        "  load array : N={} domains x M={} loads, V0={} V",
        cfg.dims.n_domains,
        cfg.dims.m_loads,
        fmt6(cfg.dims.v0)
    );
    let cv = match cfg.dist.coefficient_of_variance() {
        Some(cv) => format!(", Cv={}", fmt6(cv)),
        None => String::new(),
    };
    let _ = writeln!(
        out,
        "  load model : {}, mu={} W, sigma={} W{cv}",
        cfg.dist.family,
        fmt6(cfg.dist.mu),
        fmt6(cfg.dist.sigma)
    );
    let _ = writeln!(
        out,
        "  budget     : Gsw={} S, Gm={} S, Coss*fsw={} S",
        fmt6(cfg.budget.g_sw),
        fmt6(cfg.budget.g_m),
        fmt6(cfg.budget.coss_fsw)
    );
    if with_trials {
        let _ = writeln!(out, "  sampling   : trials={}, seed={}", cfg.trials, cfg.seed);
    }
    out
}

fn unsupported(command: &str, format: OutputFormat) -> CliError {
    CliError::Usage(format!(
        "--format {format} is not supported for {command} (use text, csv, or json)"
    ))
}

// ---------------------------------------------------------------- analyze

#[derive(Serialize)]
struct AnalyzeRow {
    topology: Topology,
    class: String,
    r_out_ohm: f64,
    conduction_w: f64,
    switching_w: f64,
    total_w: f64,
    scaling: String,
    normalized: f64,
}

fn analyze_rows(cfg: &RunConfig) -> Result<Vec<AnalyzeRow>, CliError> {
    cfg.topologies
        .iter()
        .map(|&topo| {
            let loss = expected_loss(topo, &cfg.dims, &cfg.dist, &cfg.budget);
            let normalized = normalized_loss(topo, &cfg.dims, &cfg.dist, &cfg.budget)?;
            Ok(AnalyzeRow {
                topology: topo,
                class: topo.architecture_class().name().to_string(),
                r_out_ohm: topo.output_resistance(&cfg.dims, &cfg.budget),
                conduction_w: loss.conduction_w,
                switching_w: loss.switching_w,
                total_w: loss.total_w,
                scaling: scaling_factor(topo).to_string(),
                normalized,
            })
        })
        .collect()
}

pub fn analyze(cfg: &RunConfig) -> Result<String, CliError> {
    let rows = analyze_rows(cfg)?;
    match cfg.output_format {
        OutputFormat::Text => {
            let mut out = model_header(cfg, false);
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "{:<12}{:<15}{:>14}{:>16}{:>15}{:>16}   {:<14}{:>12}",
                "topology", "class", "R_out (ohm)", "conduction (W)", "switching (W)",
                "total (W)", "scaling", "normalized"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:<12}{:<15}{:>14}{:>16}{:>15}{:>16}   {:<14}{:>12}",
                    r.topology.name(),
                    r.class,
                    fmt6(r.r_out_ohm),
                    fmt6(r.conduction_w),
                    fmt6(r.switching_w),
                    fmt6(r.total_w),
                    r.scaling,
                    fmt6(r.normalized)
                );
            }
            Ok(out)
        }
        OutputFormat::Json => Ok(to_json(&rows)),
        OutputFormat::Csv => {
            let mut out = String::from(
                "topology,class,r_out_ohm,conduction_w,switching_w,total_w,scaling,normalized\n",
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.topology, r.class, r.r_out_ohm, r.conduction_w, r.switching_w, r.total_w,
                    r.scaling, r.normalized
                );
            }
            Ok(out)
        }
        other => Err(unsupported("analyze", other)),
    }
}

// --------------------------------------------------------------- simulate

#[derive(Serialize)]
struct SimulateRow {
    topology: Topology,
    mc_mean_w: f64,
    std_error_w: f64,
    ci95_low_w: f64,
    ci95_high_w: f64,
    closed_form_w: f64,
    verdict: String,
}

pub fn simulate(cfg: &RunConfig) -> Result<String, CliError> {
    let rows: Vec<SimulateRow> = cfg
        .topologies
        .iter()
        .map(|&topo| {
            let est = estimate(topo, &cfg.dims, &cfg.dist, &cfg.budget, cfg.trials, cfg.seed)?;
            let closed = expected_loss(topo, &cfg.dims, &cfg.dist, &cfg.budget).total_w;
            Ok(SimulateRow {
                topology: topo,
                mc_mean_w: est.mean_w,
                std_error_w: est.std_error_w,
                ci95_low_w: est.ci95_w.0,
                ci95_high_w: est.ci95_w.1,
                closed_form_w: closed,
                verdict: verdict(&est, closed).to_string(),
            })
        })
        .collect::<Result<_, CliError>>()?;

    match cfg.output_format {
        OutputFormat::Text => {
            let mut out = model_header(cfg, true);
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "{:<12}{:>16}{:>14}{:>16}{:>16}{:>16}   verdict",
                "topology", "mc mean (W)", "std err (W)", "ci95 low (W)", "ci95 high (W)",
                "closed (W)"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:<12}{:>16}{:>14}{:>16}{:>16}{:>16}   {}",
                    r.topology.name(),
                    fmt6(r.mc_mean_w),
                    fmt6(r.std_error_w),
                    fmt6(r.ci95_low_w),
                    fmt6(r.ci95_high_w),
                    fmt6(r.closed_form_w),
                    r.verdict
                );
            }
            Ok(out)
        }
        OutputFormat::Json => Ok(to_json(&rows)),
        OutputFormat::Csv => {
            let mut out = String::from(
                "topology,mc_mean_w,std_error_w,ci95_low_w,ci95_high_w,closed_form_w,verdict\n",
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.topology,
                    r.mc_mean_w,
                    r.std_error_w,
                    r.ci95_low_w,
                    r.ci95_high_w,
                    r.closed_form_w,
                    r.verdict
                );
            }
            Ok(out)
        }
        other => Err(unsupported("simulate", other)),
    }
}

// ---------------------------------------------------------------- compare

#[derive(Serialize)]
struct CompareRow {
    rank: usize,
    topology: Topology,
    normalized: f64,
    conduction_w: f64,
    total_w: f64,
}

pub fn compare(cfg: &RunConfig) -> Result<String, CliError> {
    let mut ranked: Vec<(Topology, f64)> = cfg
        .topologies
        .iter()
        .map(|&topo| Ok((topo, normalized_loss(topo, &cfg.dims, &cfg.dist, &cfg.budget)?)))
        .collect::<Result<_, CliError>>()?;
    // Stable sort: equal normalized losses keep the canonical input order.
    ranked.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("normalized losses are finite"));

    let rows: Vec<CompareRow> = ranked
        .iter()
        .enumerate()
        .map(|(idx, &(topo, normalized))| {
            let loss = expected_loss(topo, &cfg.dims, &cfg.dist, &cfg.budget);
            CompareRow {
                rank: idx + 1,
                topology: topo,
                normalized,
                conduction_w: loss.conduction_w,
                total_w: loss.total_w,
            }
        })
        .collect();

    match cfg.output_format {
        OutputFormat::Text => {
            let mut out = model_header(cfg, false);
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "{:<6}{:<12}{:>14}{:>16}{:>16}",
                "rank", "topology", "normalized", "conduction (W)", "total (W)"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:<6}{:<12}{:>14}{:>16}{:>16}",
                    r.rank,
                    r.topology.name(),
                    fmt6(r.normalized),
                    fmt6(r.conduction_w),
                    fmt6(r.total_w)
                );
            }
            Ok(out)
        }
        OutputFormat::Json => Ok(to_json(&rows)),
        OutputFormat::Csv => {
            let mut out = String::from("rank,topology,normalized,conduction_w,total_w\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.rank, r.topology, r.normalized, r.conduction_w, r.total_w
                );
            }
            Ok(out)
        }
        other => Err(unsupported("compare", other)),
    }
}

// ------------------------------------------------------------------ sweep

pub fn sweep(cfg: &RunConfig) -> Result<String, CliError> {
    let sweep_cfg = cfg
        .sweep
        .as_ref()
        .expect("sweep command always resolves a sweep config");
    let result = run_sweep(&sweep_cfg.to_spec(cfg))?;
    match cfg.output_format {
        OutputFormat::Text => Ok(sweep_table(cfg, &result)),
        format => {
            let bytes = emit(&result, format)?;
            Ok(String::from_utf8(bytes).expect("emitted sweeps are UTF-8"))
        }
    }
}

fn sweep_table(cfg: &RunConfig, result: &SweepResult) -> String {
    let mut out = model_header(cfg, true);
    let sweep_cfg = cfg.sweep.as_ref().expect("sweep config");
    let _ = writeln!(
        out,
        "  sweep      : axis={}, {} points, {}",
        result.axis,
        result.rows.len() / cfg.topologies.len().max(1),
        if sweep_cfg.include_switching {
            "conduction + switching"
        } else {
            "conduction-only"
        }
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{:<8}{:<12}{:>14}{:>14}{:>14}{:>14}",
        result.axis, "topology", "analytic", "simulated", "ci95 low", "ci95 high"
    );
    for row in &result.rows {
        let _ = writeln!(
            out,
            "{:<8}{:<12}{:>14}{:>14}{:>14}{:>14}",
            row.value,
            row.topology.name(),
            fmt6(row.analytic_normalized),
            fmt6(row.simulated_normalized),
            fmt6(row.sim_ci_low),
            fmt6(row.sim_ci_high)
        );
    }
    out
}

fn to_json<T: Serialize>(rows: &T) -> String {
    let mut text = serde_json::to_string_pretty(rows).expect("report rows are plain data");
    text.push('\n');
    text
}
