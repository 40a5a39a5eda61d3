//! `spanlab sweep`: the full pipeline over a grid of bases and epsilon
//! settings, one row per (grid point, seed), with log-log slope
//! aggregates. Failed points become rows with an error code; the sweep
//! always completes.

use rayon::prelude::*;
use serde::Serialize;

use super::{build_base, error_code, require_base, require_k, CliError};
use crate::config::{ConfigError, ExperimentConfig};
use crate::report::{kendall_tau, loglog_slope, now_unix, render_csv, render_json, JsonReport};
use spanlab_core::construction::{
    build_instance, epsilon_for_base, expected_kill_bound, predicted_lightness, solve_epsilon,
    ConstructionParams,
};
use spanlab_core::spanner::upper_bound_lightness;
use spanlab_core::weight::{format_weight, weight_to_f64};

pub const CSV_COLUMNS: &[&str] = &[
    "grid_index",
    "base",
    "eps_scale",
    "seed",
    "k",
    "n_base",
    "m_base",
    "cycle_nodes",
    "epsilon",
    "surviving_fraction",
    "lightness",
    "predicted_lightness",
    "upper_bound_lightness",
    "gamma_estimate",
    "corollary_scale",
    "threshold_epsilon",
    "above_threshold",
    "expected_kill_bound",
    "kill_within_budget",
    "girth_value",
    "girth_bound",
    "status",
    "error",
    "wall_ms",
];

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub grid_index: usize,
    pub base: String,
    pub eps_scale: u32,
    pub seed: u64,
    pub k: usize,
    pub n_base: usize,
    pub m_base: usize,
    pub cycle_nodes: usize,
    pub epsilon: String,
    pub surviving_fraction: Option<f64>,
    pub lightness: Option<f64>,
    pub predicted_lightness: Option<f64>,
    pub upper_bound_lightness: Option<f64>,
    /// measured edge count of the base, standing in for gamma(n, 2k)
    pub gamma_estimate: Option<f64>,
    /// the conditional lower-bound scale n^(1/k + 1/(k(2k-1)))
    pub corollary_scale: Option<f64>,
    /// the solved epsilon threshold for this base at the configured constant
    pub threshold_epsilon: Option<String>,
    /// qualitative flag: this row runs above its threshold, so heavy
    /// pruning is predicted
    pub above_threshold: Option<bool>,
    /// summed expected killing-cycle bound per embedded edge
    pub expected_kill_bound: Option<f64>,
    /// true when every per-c bound stays within kill_budget^(c+1)
    pub kill_within_budget: Option<bool>,
    pub girth_value: Option<String>,
    pub girth_bound: String,
    pub status: String,
    pub error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl SweepRow {
    fn csv(&self) -> Vec<String> {
        fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        vec![
            self.grid_index.to_string(),
            self.base.clone(),
            self.eps_scale.to_string(),
            self.seed.to_string(),
            self.k.to_string(),
            self.n_base.to_string(),
            self.m_base.to_string(),
            self.cycle_nodes.to_string(),
            self.epsilon.clone(),
            opt(&self.surviving_fraction),
            opt(&self.lightness),
            opt(&self.predicted_lightness),
            opt(&self.upper_bound_lightness),
            opt(&self.gamma_estimate),
            opt(&self.corollary_scale),
            opt(&self.threshold_epsilon),
            opt(&self.above_threshold),
            opt(&self.expected_kill_bound),
            opt(&self.kill_within_budget),
            opt(&self.girth_value),
            self.girth_bound.clone(),
            self.status.clone(),
            self.error.clone(),
            opt(&self.wall_ms),
        ]
    }

    fn failed(
        grid_index: usize,
        base: &str,
        eps_scale: u32,
        seed: u64,
        k: usize,
        e: &spanlab_core::Error,
    ) -> SweepRow {
        SweepRow {
            grid_index,
            base: base.to_string(),
            eps_scale,
            seed,
            k,
            n_base: 0,
            m_base: 0,
            cycle_nodes: 0,
            epsilon: String::new(),
            surviving_fraction: None,
            lightness: None,
            predicted_lightness: None,
            upper_bound_lightness: None,
            gamma_estimate: None,
            corollary_scale: None,
            threshold_epsilon: None,
            above_threshold: None,
            expected_kill_bound: None,
            kill_within_budget: None,
            girth_value: None,
            girth_bound: String::new(),
            status: "error".into(),
            error: error_code(e).into(),
            wall_ms: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SweepAggregates {
    pub rows_ok: usize,
    pub rows_failed: usize,
    /// ln(lightness) vs ln(cycle_nodes) over per-point means.
    pub slope_lightness_vs_n: Option<f64>,
    /// ln(lightness) vs ln(epsilon) over per-point means.
    pub slope_lightness_vs_epsilon: Option<f64>,
    /// per eps_scale multiplier: mean surviving fraction.
    pub mean_surviving_by_scale: Vec<(u32, f64)>,
    /// Kendall tau of (eps_scale, per-scale mean surviving fraction).
    pub surviving_rank_correlation: Option<f64>,
}

pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub aggregates: SweepAggregates,
    pub csv_path: Option<std::path::PathBuf>,
    pub json_path: Option<std::path::PathBuf>,
}

struct GridPoint {
    index: usize,
    base_spec: String,
    eps_scale: u32,
    explicit_r: Option<i64>,
}

fn grid(cfg: &ExperimentConfig) -> Result<Vec<GridPoint>, CliError> {
    let bases: Vec<String> = if cfg.grid_base.is_empty() {
        vec![require_base(cfg)?]
    } else {
        cfg.grid_base.clone()
    };
    let mut points = Vec::new();
    let mut index = 0;
    if !cfg.grid_epsilon.is_empty() {
        for b in &bases {
            for e in &cfg.grid_epsilon {
                points.push(GridPoint {
                    index,
                    base_spec: b.clone(),
                    eps_scale: 1,
                    explicit_r: Some(*e.denom()),
                });
                index += 1;
            }
        }
    } else {
        for b in &bases {
            for &s in &cfg.grid_eps_scale {
                points.push(GridPoint {
                    index,
                    base_spec: b.clone(),
                    eps_scale: s,
                    explicit_r: None,
                });
                index += 1;
            }
        }
    }
    Ok(points)
}

fn run_point(cfg: &ExperimentConfig, k: usize, point: &GridPoint, seed: u64) -> SweepRow {
    let fail = |e: &spanlab_core::Error| {
        SweepRow::failed(point.index, &point.base_spec, point.eps_scale, seed, k, e)
    };
    let started = std::time::Instant::now();
    let base = match build_base(&point.base_spec, seed, cfg.regularize) {
        Ok(b) => b,
        Err(CliError::Core(e)) => return fail(&e),
        Err(_) => unreachable!("build_base only raises core errors"),
    };
    // resolve r for this point: explicit grid entry, fixed epsilon,
    // explicit n_target, or the per-base threshold; then apply the scale
    let solved = match point.explicit_r {
        Some(r) => Ok(r),
        None => match &cfg.epsilon {
            Some(e) => Ok(*e.denom()),
            None => match cfg.n_target {
                Some(n) => solve_epsilon(n, k, cfg.c, cfg.constants.epsilon_constant)
                    .map(|e| *e.denom()),
                None => epsilon_for_base(
                    base.node_count() as u64,
                    k,
                    cfg.c,
                    cfg.constants.epsilon_constant,
                )
                .map(|e| *e.denom()),
            },
        },
    };
    let r_threshold = match solved {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let r = div_ceil_i64(r_threshold, point.eps_scale as i64);
    if r < 2 {
        return fail(&spanlab_core::Error::Parameter(format!(
            "eps_scale {} pushes epsilon to 1/{r} >= 1/2 limit",
            point.eps_scale
        )));
    }
    let params = match ConstructionParams::new(k, r, seed) {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };
    if let Err(e) = params.validate_base(&base) {
        return fail(&e);
    }
    let inst = match build_instance(&base, &params, &point.base_spec) {
        Ok(i) => i,
        Err(e) => return fail(&e),
    };
    let lightness = inst.lightness().ok().map(|l| weight_to_f64(&l));
    let predicted =
        predicted_lightness(inst.sc_edge_count(), k, inst.epsilon()).ok();
    let upper = upper_bound_lightness(
        base.node_count(),
        weight_to_f64(&inst.epsilon()),
        base.edge_count() as f64,
    )
    .ok();
    let kf = k as f64;
    let corollary_scale =
        (base.node_count() as f64).powf(1.0 / kf + 1.0 / (kf * (2.0 * kf - 1.0)));
    // threshold comparison and the expected-kill diagnostic
    let threshold_r = epsilon_for_base(
        base.node_count() as u64,
        k,
        cfg.c,
        cfg.constants.epsilon_constant,
    )
    .ok()
    .map(|e| *e.denom());
    let eps_f = weight_to_f64(&inst.epsilon());
    let econst = weight_to_f64(&cfg.constants.epsilon_constant);
    let c_max = k / r as usize;
    let mut kill_total = 0.0;
    let mut within_budget = true;
    for c in 0..=c_max {
        let bound = expected_kill_bound(k, c, base.node_count(), eps_f, econst);
        kill_total += bound;
        if bound > cfg.constants.kill_budget.powi(c as i32 + 1) {
            within_budget = false;
        }
    }
    SweepRow {
        grid_index: point.index,
        base: point.base_spec.clone(),
        eps_scale: point.eps_scale,
        seed,
        k,
        n_base: base.node_count(),
        m_base: base.edge_count(),
        cycle_nodes: inst.sc_edge_count(),
        epsilon: format_weight(&inst.epsilon()),
        surviving_fraction: inst.surviving_fraction().ok(),
        lightness,
        predicted_lightness: predicted,
        upper_bound_lightness: upper,
        gamma_estimate: Some(base.edge_count() as f64),
        corollary_scale: Some(corollary_scale),
        threshold_epsilon: threshold_r.map(|tr| format!("1/{tr}")),
        above_threshold: threshold_r.map(|tr| r < tr),
        expected_kill_bound: Some(kill_total),
        kill_within_budget: Some(within_budget),
        girth_value: inst.certificate().map(|c| c.value.to_string()),
        girth_bound: format_weight(&inst.girth_bound()),
        status: "ok".into(),
        error: String::new(),
        wall_ms: cfg
            .timings
            .then(|| started.elapsed().as_millis() as u64),
    }
}

fn div_ceil_i64(a: i64, b: i64) -> i64 {
    (a + b - 1) / b
}

pub fn run(cfg: &ExperimentConfig) -> Result<SweepOutput, CliError> {
    let k = require_k(cfg)?;
    let points = grid(cfg)?;
    if points.is_empty() {
        return Err(ConfigError("sweep grid is empty".into()).into());
    }
    let jobs: Vec<(usize, u64)> = points
        .iter()
        .enumerate()
        .flat_map(|(pi, _)| cfg.seeds.iter().map(move |&s| (pi, s)))
        .collect();
    let rows: Vec<SweepRow> = jobs
        .par_iter()
        .map(|&(pi, seed)| run_point(cfg, k, &points[pi], seed))
        .collect();

    let aggregates = aggregate(&rows);
    let mut csv_path = None;
    let mut json_path = None;
    std::fs::create_dir_all(&cfg.out)?;
    let ts = Some(now_unix());
    if cfg.format.wants_csv() {
        let path = cfg.out.join("sweep.csv");
        let body: Vec<Vec<String>> = rows.iter().map(|r| r.csv()).collect();
        std::fs::write(&path, render_csv(ts, CSV_COLUMNS, &body))?;
        csv_path = Some(path);
    }
    if cfg.format.wants_json() {
        let path = cfg.out.join("sweep.json");
        let report = JsonReport {
            schema_version: cfg.schema_version,
            generated_unix: ts,
            command: "sweep".into(),
            config: cfg.echo(),
            rows: rows.clone(),
            aggregates: &aggregates,
        };
        std::fs::write(&path, render_json(&report))?;
        json_path = Some(path);
    }
    Ok(SweepOutput {
        rows,
        aggregates,
        csv_path,
        json_path,
    })
}

fn aggregate(rows: &[SweepRow]) -> SweepAggregates {
    let ok: Vec<&SweepRow> = rows.iter().filter(|r| r.status == "ok").collect();
    // per grid point means
    let mut by_point: std::collections::BTreeMap<usize, Vec<&SweepRow>> = Default::default();
    for r in &ok {
        by_point.entry(r.grid_index).or_default().push(r);
    }
    let mut n_points = Vec::new();
    let mut eps_points = Vec::new();
    for rows in by_point.values() {
        let mean_light: f64 = rows
            .iter()
            .filter_map(|r| r.lightness)
            .sum::<f64>()
            / rows.len() as f64;
        let n = rows[0].cycle_nodes as f64;
        let eps = rows[0]
            .epsilon
            .split('/')
            .next_back()
            .and_then(|d| d.parse::<f64>().ok())
            .map(|d| 1.0 / d);
        if mean_light > 0.0 && n > 0.0 {
            n_points.push((n, mean_light));
        }
        if let Some(e) = eps {
            if mean_light > 0.0 {
                eps_points.push((e, mean_light));
            }
        }
    }
    // per scale mean surviving
    let mut by_scale: std::collections::BTreeMap<u32, Vec<f64>> = Default::default();
    for r in &ok {
        if let Some(s) = r.surviving_fraction {
            by_scale.entry(r.eps_scale).or_default().push(s);
        }
    }
    let mean_surviving_by_scale: Vec<(u32, f64)> = by_scale
        .into_iter()
        .map(|(scale, v)| (scale, v.iter().sum::<f64>() / v.len() as f64))
        .collect();
    let surv_pairs: Vec<(f64, f64)> = mean_surviving_by_scale
        .iter()
        .map(|&(s, m)| (s as f64, m))
        .collect();
    SweepAggregates {
        rows_ok: ok.len(),
        rows_failed: rows.len() - ok.len(),
        slope_lightness_vs_n: loglog_slope(&n_points),
        slope_lightness_vs_epsilon: loglog_slope(&eps_points),
        surviving_rank_correlation: if surv_pairs.len() >= 2 {
            Some(kendall_tau(&surv_pairs))
        } else {
            None
        },
        mean_surviving_by_scale,
    }
}
