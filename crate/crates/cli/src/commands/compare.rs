//! `spanlab compare`: run the greedy spanner against a certified
//! lower-bound instance (where it must keep every edge) or against a
//! plain graph file, and tabulate measured lightness next to the
//! predicted and upper-bound scales.

use std::path::Path;

use serde::Serialize;

use super::CliError;
use crate::config::{ConfigError, ExperimentConfig};
use crate::report::{now_unix, render_csv, render_json, JsonReport};
use spanlab_core::construction::{predicted_lightness, read_instance};
use spanlab_core::io::parse_edge_list;
use spanlab_core::spanner::{greedy_spanner, upper_bound_lightness};
use spanlab_core::weight::{format_weight, parse_weight, w_int, weight_to_f64, Weight};

pub const CSV_COLUMNS: &[&str] = &[
    "input",
    "stretch",
    "edges_total",
    "edges_kept",
    "kept_fraction",
    "lightness",
    "predicted_lightness",
    "upper_bound_lightness",
    "gamma_estimate",
    "spanner_girth",
];

#[derive(Debug, Clone, Serialize)]
pub struct CompareRow {
    pub input: String,
    pub stretch: String,
    pub edges_total: usize,
    pub edges_kept: usize,
    pub kept_fraction: f64,
    pub lightness: f64,
    pub predicted_lightness: Option<f64>,
    pub upper_bound_lightness: Option<f64>,
    /// measured edge count of the base, standing in for gamma(n, 2k)
    pub gamma_estimate: Option<f64>,
    pub spanner_girth: String,
}

pub struct CompareOutput {
    pub row: CompareRow,
    pub csv_path: Option<std::path::PathBuf>,
    pub json_path: Option<std::path::PathBuf>,
}

/// Compare against a certified instance: greedy at t = (1+eps)(2k-1) must
/// keep 100% of the edges; anything less is an invariant violation that
/// signals a girth-certification bug.
pub fn run_instance(cfg: &ExperimentConfig, stem: &Path) -> Result<CompareOutput, CliError> {
    let inst = read_instance(stem)?;
    let k = inst.k() as i64;
    let r = inst.inv_epsilon();
    let t: Weight = w_int((r + 1) * (2 * k - 1)) / w_int(r);
    let (h, _) = inst.current_graph();
    let result = greedy_spanner(&h, t)?;
    std::fs::create_dir_all(&cfg.out)?;
    spanlab_core::spanner::write_spanner_result(&result, &cfg.out.join("spanner"))?;
    let kept_fraction = result.edge_count as f64 / h.edge_count() as f64;
    let row = CompareRow {
        input: stem.display().to_string(),
        stretch: format_weight(&t),
        edges_total: h.edge_count(),
        edges_kept: result.edge_count,
        kept_fraction,
        lightness: weight_to_f64(&inst.lightness()?),
        predicted_lightness: predicted_lightness(inst.sc_edge_count(), inst.k(), inst.epsilon())
            .ok(),
        upper_bound_lightness: upper_bound_lightness(
            inst.base().node_count(),
            weight_to_f64(&inst.epsilon()),
            inst.base().edge_count() as f64,
        )
        .ok(),
        gamma_estimate: Some(inst.base().edge_count() as f64),
        spanner_girth: result.girth.value.to_string(),
    };
    print_row(&row);
    let output = emit(cfg, &row)?;
    if result.edge_count != h.edge_count() {
        return Err(spanlab_core::Error::Certification {
            value: result.girth.value.to_string(),
            bound: format_weight(&t),
            witness: format!(
                "greedy removed {} edges from a certified instance",
                h.edge_count() - result.edge_count
            ),
        }
        .into());
    }
    Ok(output)
}

/// Compare against a plain graph file at an explicit stretch.
pub fn run_graph(cfg: &ExperimentConfig, path: &Path, stretch: &str) -> Result<CompareOutput, CliError> {
    let t = parse_weight(stretch).map_err(|e| ConfigError(format!("bad stretch: {e}")))?;
    let text = std::fs::read_to_string(path)?;
    let g = parse_edge_list(&text, false)?;
    let result = greedy_spanner(&g, t)?;
    std::fs::create_dir_all(&cfg.out)?;
    spanlab_core::spanner::write_spanner_result(&result, &cfg.out.join("spanner"))?;
    let row = CompareRow {
        input: path.display().to_string(),
        stretch: format_weight(&t),
        edges_total: g.edge_count(),
        edges_kept: result.edge_count,
        kept_fraction: result.edge_count as f64 / g.edge_count() as f64,
        lightness: weight_to_f64(&result.lightness),
        predicted_lightness: None,
        upper_bound_lightness: None,
        gamma_estimate: None,
        spanner_girth: result.girth.value.to_string(),
    };
    print_row(&row);
    emit(cfg, &row)
}

fn print_row(row: &CompareRow) {
    println!(
        "{}: t={} kept {}/{} ({:.1}%) lightness={:.4} girth={}",
        row.input,
        row.stretch,
        row.edges_kept,
        row.edges_total,
        row.kept_fraction * 100.0,
        row.lightness,
        row.spanner_girth
    );
    if let (Some(p), Some(u)) = (row.predicted_lightness, row.upper_bound_lightness) {
        println!("  predicted_lightness={p:.4} upper_bound_lightness={u:.4}");
    }
}

fn emit(cfg: &ExperimentConfig, row: &CompareRow) -> Result<CompareOutput, CliError> {
    std::fs::create_dir_all(&cfg.out)?;
    let ts = Some(now_unix());
    let mut csv_path = None;
    let mut json_path = None;
    if cfg.format.wants_csv() {
        fn opt(v: &Option<f64>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        let body = vec![vec![
            row.input.clone(),
            row.stretch.clone(),
            row.edges_total.to_string(),
            row.edges_kept.to_string(),
            row.kept_fraction.to_string(),
            row.lightness.to_string(),
            opt(&row.predicted_lightness),
            opt(&row.upper_bound_lightness),
            opt(&row.gamma_estimate),
            row.spanner_girth.clone(),
        ]];
        let path = cfg.out.join("compare.csv");
        std::fs::write(&path, render_csv(ts, CSV_COLUMNS, &body))?;
        csv_path = Some(path);
    }
    if cfg.format.wants_json() {
        let path = cfg.out.join("compare.json");
        let report = JsonReport {
            schema_version: cfg.schema_version,
            generated_unix: ts,
            command: "compare".into(),
            config: cfg.echo(),
            rows: vec![row.clone()],
            aggregates: serde_json::Value::Null,
        };
        std::fs::write(&path, render_json(&report))?;
        json_path = Some(path);
    }
    Ok(CompareOutput {
        row: row.clone(),
        csv_path,
        json_path,
    })
}
