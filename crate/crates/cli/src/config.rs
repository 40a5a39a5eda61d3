//! Experiment configuration: a strict key-value config file merged with
//! command-line flags (flags win). Unknown keys and malformed values are
//! rejected before any work starts, so a bad config never produces
//! partial output.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use spanlab_core::weight::{format_weight, parse_weight, Weight};

pub const SCHEMA_VERSION: u32 = 1;

/// Default output directory; the environment variable is consulted only
/// for this default, never for anything else.
pub const OUT_DIR_ENV: &str = "SPANLAB_OUT";

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Output format selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Both,
}

impl Format {
    pub fn wants_csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }
    pub fn wants_json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
}

impl std::str::FromStr for Format {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "both" => Ok(Format::Both),
            other => Err(ConfigError(format!(
                "unknown format {other:?} (expected csv, json, or both)"
            ))),
        }
    }
}

/// Named constant knobs with their defaults.
#[derive(Debug, Clone)]
pub struct Constants {
    /// Multiplier inside the epsilon threshold formula.
    pub epsilon_constant: Weight,
    /// Per-c expected-kill budget (the 1/4 in 1/4^(c+1)).
    pub kill_budget: f64,
    /// Multiplier for the per-edge cycle-count bound.
    pub count_constant: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            epsilon_constant: spanlab_core::weight::w_int(1),
            kill_budget: 0.25,
            count_constant: 4.0,
        }
    }
}

/// Fully resolved experiment configuration.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub k: Option<usize>,
    /// Explicit epsilon (1/r); `None` means derive from n_target or the base.
    pub epsilon: Option<Weight>,
    pub n_target: Option<u64>,
    pub base: Option<String>,
    pub seeds: Vec<u64>,
    pub constants: Constants,
    pub out: PathBuf,
    pub format: Format,
    pub grid_base: Vec<String>,
    pub grid_epsilon: Vec<Weight>,
    /// Multipliers applied to the solved epsilon threshold (sweep only).
    pub grid_eps_scale: Vec<u32>,
    pub trials: u64,
    pub c: usize,
    pub regularize: bool,
    /// Include wall-clock timings in report files (off keeps reruns
    /// byte-identical).
    pub timings: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            schema_version: SCHEMA_VERSION,
            k: None,
            epsilon: None,
            n_target: None,
            base: None,
            seeds: vec![1],
            constants: Constants::default(),
            out: default_out_dir(),
            format: Format::Both,
            grid_base: Vec::new(),
            grid_epsilon: Vec::new(),
            grid_eps_scale: vec![1],
            trials: 10_000,
            c: 0,
            regularize: false,
            timings: false,
        }
    }
}

pub fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("spanlab-out"))
}

/// Parses "1,2,3" and "1..20" (inclusive) seed lists.
pub fn parse_seeds(s: &str) -> Result<Vec<u64>, ConfigError> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let lo: u64 = a
            .trim()
            .parse()
            .map_err(|_| ConfigError(format!("bad seed range start {a:?}")))?;
        let hi: u64 = b
            .trim()
            .parse()
            .map_err(|_| ConfigError(format!("bad seed range end {b:?}")))?;
        if hi < lo {
            return Err(ConfigError(format!("empty seed range {s:?}")));
        }
        return Ok((lo..=hi).collect());
    }
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| ConfigError(format!("bad seed {t:?}")))
        })
        .collect()
}

fn parse_weight_cfg(s: &str, what: &str) -> Result<Weight, ConfigError> {
    parse_weight(s).map_err(|e| ConfigError(format!("bad {what} {s:?}: {e}")))
}

impl ExperimentConfig {
    /// Loads a key-value config file. Lines are `key value`; blank lines
    /// and lines starting with `#` are ignored. Unknown keys are errors.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = ExperimentConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| ConfigError(format!("line {}: expected `key value`", idx + 1)))?;
            cfg.apply(key, value.trim())
                .map_err(|e| ConfigError(format!("line {}: {}", idx + 1, e.0)))?;
        }
        Ok(cfg)
    }

    /// Applies one key-value pair; shared by the file parser and flag
    /// merging.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "schema_version" => {
                let v: u32 = value
                    .parse()
                    .map_err(|_| ConfigError(format!("bad schema_version {value:?}")))?;
                if v != SCHEMA_VERSION {
                    return Err(ConfigError(format!(
                        "unsupported schema_version {v} (this build speaks {SCHEMA_VERSION})"
                    )));
                }
                self.schema_version = v;
            }
            "k" => {
                self.k = Some(
                    value
                        .parse()
                        .map_err(|_| ConfigError(format!("bad k {value:?}")))?,
                )
            }
            "epsilon" => {
                if value == "auto" {
                    self.epsilon = None;
                } else {
                    let w = parse_weight_cfg(value, "epsilon")?;
                    if *w.numer() != 1 || *w.denom() < 2 {
                        return Err(ConfigError(format!(
                            "epsilon must be 1/r with integer r >= 2, got {}",
                            format_weight(&w)
                        )));
                    }
                    self.epsilon = Some(w);
                }
            }
            "n_target" => {
                self.n_target = Some(
                    value
                        .parse()
                        .map_err(|_| ConfigError(format!("bad n_target {value:?}")))?,
                )
            }
            "base" => self.base = Some(value.to_string()),
            "seeds" => self.seeds = parse_seeds(value)?,
            "constant" => {
                let (name, val) = value.split_once('=').ok_or_else(|| {
                    ConfigError(format!("constant {value:?} is not name=value"))
                })?;
                match name {
                    "epsilon_constant" => {
                        self.constants.epsilon_constant = parse_weight_cfg(val, "epsilon_constant")?
                    }
                    "kill_budget" => {
                        self.constants.kill_budget = val
                            .parse()
                            .map_err(|_| ConfigError(format!("bad kill_budget {val:?}")))?
                    }
                    "count_constant" => {
                        self.constants.count_constant = val
                            .parse()
                            .map_err(|_| ConfigError(format!("bad count_constant {val:?}")))?
                    }
                    other => {
                        return Err(ConfigError(format!("unknown constant {other:?}")));
                    }
                }
            }
            "out" => self.out = PathBuf::from(value),
            "format" => self.format = value.parse()?,
            "grid_base" => {
                self.grid_base = value
                    .split(';')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.trim().to_string())
                    .collect()
            }
            "grid_epsilon" => {
                self.grid_epsilon = value
                    .split(',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        let w = parse_weight_cfg(t.trim(), "grid_epsilon entry")?;
                        if *w.numer() != 1 || *w.denom() < 2 {
                            return Err(ConfigError(format!(
                                "epsilon must be 1/r with integer r >= 2, got {t:?}"
                            )));
                        }
                        Ok(w)
                    })
                    .collect::<Result<_, _>>()?
            }
            "grid_eps_scale" => {
                self.grid_eps_scale = value
                    .split(',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map_err(|_| ConfigError(format!("bad scale {t:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                if self.grid_eps_scale.is_empty() || self.grid_eps_scale.contains(&0) {
                    return Err(ConfigError("grid_eps_scale needs positive entries".into()));
                }
            }
            "trials" => {
                self.trials = value
                    .parse()
                    .map_err(|_| ConfigError(format!("bad trials {value:?}")))?
            }
            "c" => {
                self.c = value
                    .parse()
                    .map_err(|_| ConfigError(format!("bad c {value:?}")))?
            }
            "regularize" => {
                self.regularize = value
                    .parse()
                    .map_err(|_| ConfigError(format!("bad regularize {value:?} (true/false)")))?
            }
            "timings" => {
                self.timings = value
                    .parse()
                    .map_err(|_| ConfigError(format!("bad timings {value:?} (true/false)")))?
            }
            other => {
                return Err(ConfigError(format!("unknown key {other:?}")));
            }
        }
        Ok(())
    }

    /// Deterministic echo of the resolved configuration (sorted keys),
    /// embedded in reports.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        map.insert("schema_version".into(), self.schema_version.to_string());
        if let Some(k) = self.k {
            map.insert("k".into(), k.to_string());
        }
        if let Some(e) = &self.epsilon {
            map.insert("epsilon".into(), format_weight(e));
        }
        if let Some(n) = self.n_target {
            map.insert("n_target".into(), n.to_string());
        }
        if let Some(b) = &self.base {
            map.insert("base".into(), b.clone());
        }
        map.insert(
            "seeds".into(),
            self.seeds
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        map.insert(
            "constant.epsilon_constant".into(),
            format_weight(&self.constants.epsilon_constant),
        );
        map.insert(
            "constant.kill_budget".into(),
            self.constants.kill_budget.to_string(),
        );
        map.insert(
            "constant.count_constant".into(),
            self.constants.count_constant.to_string(),
        );
        if !self.grid_base.is_empty() {
            map.insert("grid_base".into(), self.grid_base.join(";"));
        }
        if !self.grid_epsilon.is_empty() {
            map.insert(
                "grid_epsilon".into(),
                self.grid_epsilon
                    .iter()
                    .map(format_weight)
                    .collect::<Vec<_>>()
                    .join(","),
            );
        }
        map.insert(
            "grid_eps_scale".into(),
            self.grid_eps_scale
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        map.insert("trials".into(), self.trials.to_string());
        map.insert("c".into(), self.c.to_string());
        map.insert("regularize".into(), self.regularize.to_string());
        map.insert("format".into(), format!("{:?}", self.format).to_lowercase());
        map
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_lists_and_ranges() {
        assert_eq!(parse_seeds("1,2,3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_seeds("5..8").unwrap(), vec![5, 6, 7, 8]);
        assert_eq!(parse_seeds("").unwrap(), Vec::<u64>::new());
        assert!(parse_seeds("3..1").is_err());
        assert!(parse_seeds("x").is_err());
    }

    #[test]
    fn unknown_keys_are_named() {
        let mut cfg = ExperimentConfig::default();
        let err = cfg.apply("bogus_key", "1").unwrap_err();
        assert!(err.0.contains("bogus_key"), "{}", err.0);
    }

    #[test]
    fn epsilon_must_have_unit_numerator() {
        let mut cfg = ExperimentConfig::default();
        assert!(cfg.apply("epsilon", "2/3").is_err());
        assert!(cfg.apply("epsilon", "1/6").is_ok());
        assert_eq!(cfg.epsilon, Some(spanlab_core::weight::parse_weight("1/6").unwrap()));
        assert!(cfg.apply("epsilon", "auto").is_ok());
        assert_eq!(cfg.epsilon, None);
    }

    #[test]
    fn unsupported_schema_version_is_rejected() {
        let mut cfg = ExperimentConfig::default();
        assert!(cfg.apply("schema_version", "1").is_ok());
        let err = cfg.apply("schema_version", "2").unwrap_err();
        assert!(err.0.contains("schema_version"), "{}", err.0);
    }

    #[test]
    fn constants_are_validated() {
        let mut cfg = ExperimentConfig::default();
        assert!(cfg.apply("constant", "epsilon_constant=3/2").is_ok());
        assert!(cfg.apply("constant", "nonsense=1").is_err());
        assert!(cfg.apply("constant", "kill_budget").is_err());
    }
}
