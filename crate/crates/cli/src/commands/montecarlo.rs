//! `spanlab montecarlo`: empirical probability that the corresponding
//! cycle of a fixed base cycle of length 2k+2c lands at or below the
//! pruning threshold, swept over epsilon.
//!
//! Trials sample the embedding offsets directly (same draw order and
//! distribution as the full embedding; exact-equivalence is covered by a
//! core test), so millions of trials per point stay cheap.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{require_k, CliError};
use crate::config::{ConfigError, ExperimentConfig};
use crate::report::{loglog_slope, now_unix, render_csv, render_json, wilson_interval, JsonReport};
use spanlab_core::construction::{sample_corresponding_sigma, subseed};

pub const CSV_COLUMNS: &[&str] = &[
    "grid_index",
    "epsilon",
    "inv_epsilon",
    "cycle_len",
    "trials",
    "events",
    "p_hat",
    "wilson_lo",
    "wilson_hi",
    "unit_bound",
];

#[derive(Debug, Clone, Serialize)]
pub struct McRow {
    pub grid_index: usize,
    pub epsilon: String,
    pub inv_epsilon: i64,
    pub cycle_len: usize,
    pub trials: u64,
    pub events: u64,
    pub p_hat: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
    /// epsilon^(2k+2c) / (2k+2c)!, the bound shape with unit constant.
    pub unit_bound: f64,
}

#[derive(Debug, Serialize)]
pub struct McAggregates {
    /// Envelope constant: max over points of p_hat / unit_bound, so that
    /// p_hat <= fitted_constant * unit_bound holds at every point.
    pub fitted_constant: Option<f64>,
    /// Free log-log slope of p_hat vs epsilon over points with events.
    pub slope: Option<f64>,
    /// The exponent the slope should match: 2k + 2c.
    pub slope_target: usize,
}

pub struct McOutput {
    pub rows: Vec<McRow>,
    pub aggregates: McAggregates,
    pub csv_path: Option<std::path::PathBuf>,
    pub json_path: Option<std::path::PathBuf>,
}

/// Runs one grid point: `trials` embeddings with fresh per-trial seeds.
pub fn run_point(
    k: usize,
    c: usize,
    inv_epsilon: i64,
    trials: u64,
    point_seed: u64,
) -> (u64, u64) {
    let len = 2 * k + 2 * c;
    let sigma_max = 2 * k as i64 - 2 * c as i64 * inv_epsilon;
    if sigma_max < 0 {
        return (0, trials);
    }
    let events = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(subseed(point_seed, t));
            let sigma = sample_corresponding_sigma(len, k, inv_epsilon, &mut rng);
            u64::from(sigma as i64 <= sigma_max)
        })
        .sum();
    (events, trials)
}

pub fn run(cfg: &ExperimentConfig) -> Result<McOutput, CliError> {
    let k = require_k(cfg)?;
    if k < 2 {
        return Err(ConfigError(format!("k must be at least 2, got {k}")).into());
    }
    let c = cfg.c;
    if cfg.grid_epsilon.is_empty() {
        return Err(ConfigError("montecarlo needs --grid-epsilon".into()).into());
    }
    if cfg.trials < 1000 {
        return Err(ConfigError("montecarlo needs at least 1000 trials".into()).into());
    }
    let master = cfg.seeds.first().copied().unwrap_or(1);
    let len = 2 * k + 2 * c;
    let mut factorial = 1.0f64;
    for i in 2..=len {
        factorial *= i as f64;
    }

    let mut rows = Vec::new();
    for (idx, eps) in cfg.grid_epsilon.iter().enumerate() {
        let r = *eps.denom();
        let point_seed = subseed(master, 1000 + idx as u64);
        let (events, trials) = run_point(k, c, r, cfg.trials, point_seed);
        let p_hat = events as f64 / trials as f64;
        let (lo, hi) = wilson_interval(events, trials, 1.96);
        let e = 1.0 / r as f64;
        rows.push(McRow {
            grid_index: idx,
            epsilon: format!("1/{r}"),
            inv_epsilon: r,
            cycle_len: len,
            trials,
            events,
            p_hat,
            wilson_lo: lo,
            wilson_hi: hi,
            unit_bound: e.powi(len as i32) / factorial,
        });
    }

    let with_events: Vec<&McRow> = rows.iter().filter(|r| r.events > 0).collect();
    let fitted_constant = with_events
        .iter()
        .map(|r| r.p_hat / r.unit_bound)
        .fold(None, |acc: Option<f64>, c| {
            Some(acc.map_or(c, |a| a.max(c)))
        });
    let slope_points: Vec<(f64, f64)> = with_events
        .iter()
        .map(|r| (1.0 / r.inv_epsilon as f64, r.p_hat))
        .collect();
    let aggregates = McAggregates {
        fitted_constant,
        slope: loglog_slope(&slope_points),
        slope_target: len,
    };

    std::fs::create_dir_all(&cfg.out)?;
    let ts = Some(now_unix());
    let mut csv_path = None;
    let mut json_path = None;
    if cfg.format.wants_csv() {
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.grid_index.to_string(),
                    r.epsilon.clone(),
                    r.inv_epsilon.to_string(),
                    r.cycle_len.to_string(),
                    r.trials.to_string(),
                    r.events.to_string(),
                    r.p_hat.to_string(),
                    r.wilson_lo.to_string(),
                    r.wilson_hi.to_string(),
                    r.unit_bound.to_string(),
                ]
            })
            .collect();
        let path = cfg.out.join("montecarlo.csv");
        std::fs::write(&path, render_csv(ts, CSV_COLUMNS, &body))?;
        csv_path = Some(path);
    }
    if cfg.format.wants_json() {
        let path = cfg.out.join("montecarlo.json");
        let report = JsonReport {
            schema_version: cfg.schema_version,
            generated_unix: ts,
            command: "montecarlo".into(),
            config: cfg.echo(),
            rows: rows.clone(),
            aggregates: &aggregates,
        };
        std::fs::write(&path, render_json(&report))?;
        json_path = Some(path);
    }
    Ok(McOutput {
        rows,
        aggregates,
        csv_path,
        json_path,
    })
}
