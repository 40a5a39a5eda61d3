//! Report emission (CSV + JSON) and the small statistics used by sweeps:
//! log-log regression slopes, Wilson intervals, and Kendall rank
//! correlation.
//!
//! Reports are deterministic byte for byte except for one timestamp,
//! which is isolated to a single header line in each format so reruns can
//! be compared by dropping that line.

use std::collections::BTreeMap;

use serde::Serialize;

/// Least-squares slope of ln(y) against ln(x). Points with nonpositive
/// coordinates are skipped; needs at least two distinct x values.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = logs.iter().map(|(_, y)| y).sum::<f64>() / n;
    let var: f64 = logs.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    if var == 0.0 {
        return None;
    }
    let cov: f64 = logs
        .iter()
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    Some(cov / var)
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(events: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = events as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (z / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Kendall tau-a: (concordant - discordant) / all pairs. Ties contribute
/// zero. Returns 0 for fewer than two points.
pub fn kendall_tau(pairs: &[(f64, f64)]) -> f64 {
    let n = pairs.len();
    if n < 2 {
        return 0.0;
    }
    let mut concordant = 0i64;
    let mut discordant = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = pairs[j].0 - pairs[i].0;
            let dy = pairs[j].1 - pairs[i].1;
            let s = dx * dy;
            if s > 0.0 {
                concordant += 1;
            } else if s < 0.0 {
                discordant += 1;
            }
        }
    }
    let total = (n * (n - 1) / 2) as f64;
    (concordant - discordant) as f64 / total
}

/// Writes a CSV: one `# key value`-style timestamp header line, one
/// column-name line, then data rows. Columns are fixed by the caller.
pub fn render_csv(
    generated_unix: Option<u64>,
    columns: &[&str],
    rows: &[Vec<String>],
) -> String {
    let mut out = String::new();
    if let Some(ts) = generated_unix {
        out.push_str(&format!("# generated_unix {ts}\n"));
    }
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), columns.len());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// JSON report envelope; field order is declaration order, so output is
/// deterministic given equal contents.
#[derive(Serialize)]
pub struct JsonReport<R: Serialize, A: Serialize> {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_unix: Option<u64>,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub rows: Vec<R>,
    pub aggregates: A,
}

pub fn render_json<R: Serialize, A: Serialize>(report: &JsonReport<R, A>) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Current unix time in seconds; the only nondeterministic report field.
pub fn now_unix() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_power_law() {
        let pts: Vec<(f64, f64)> = (1..=5).map(|i| (i as f64, (i as f64).powi(3))).collect();
        let s = loglog_slope(&pts).unwrap();
        assert!((s - 3.0).abs() < 1e-12);
    }

    #[test]
    fn slope_needs_two_distinct_points() {
        assert!(loglog_slope(&[(1.0, 2.0)]).is_none());
        assert!(loglog_slope(&[(1.0, 2.0), (1.0, 3.0)]).is_none());
        assert!(loglog_slope(&[(0.0, 2.0), (-1.0, 3.0)]).is_none());
    }

    #[test]
    fn wilson_contains_the_point_estimate() {
        let (lo, hi) = wilson_interval(30, 100, 1.96);
        assert!(lo < 0.3 && 0.3 < hi);
        let (lo0, hi0) = wilson_interval(0, 100, 1.96);
        assert!(lo0 == 0.0 && hi0 > 0.0);
    }

    #[test]
    fn wilson_width_shrinks_with_trials_like_sqrt() {
        let (lo1, hi1) = wilson_interval(100, 1000, 1.96);
        let (lo2, hi2) = wilson_interval(200, 2000, 1.96);
        let ratio = (hi1 - lo1) / (hi2 - lo2);
        assert!((ratio - 2f64.sqrt()).abs() < 0.1, "ratio {ratio}");
    }

    #[test]
    fn kendall_signs() {
        let inc = [(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)];
        let dec = [(1.0, 3.0), (2.0, 2.0), (3.0, 1.0)];
        assert_eq!(kendall_tau(&inc), 1.0);
        assert_eq!(kendall_tau(&dec), -1.0);
        let flat = [(1.0, 1.0), (2.0, 1.0), (3.0, 1.0)];
        assert_eq!(kendall_tau(&flat), 0.0);
    }

    #[test]
    fn csv_layout() {
        let text = render_csv(Some(7), &["a", "b"], &[vec!["1".into(), "2".into()]]);
        assert_eq!(text, "# generated_unix 7\na,b\n1,2\n");
    }
}
