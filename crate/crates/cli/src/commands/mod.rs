//! Subcommand implementations, shared plumbing, and the error-to-exit-code
//! mapping.

pub mod compare;
pub mod generate;
pub mod montecarlo;
pub mod sweep;
pub mod verify;

use std::fmt;

use crate::config::{ConfigError, ExperimentConfig};
use spanlab_core::construction::{epsilon_for_base, solve_epsilon, subseed};
use spanlab_core::girth_graphs::{generate_named, regularize, GirthGraph, RegularizeOptions};

/// Harness-level error with a process exit code.
#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Core(spanlab_core::Error),
    Io(std::io::Error),
}

impl CliError {
    /// 0 success, 2 config error, 3 certification failure, 4 generation
    /// failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                spanlab_core::Error::Certification { .. } => 3,
                spanlab_core::Error::GenerationFailure(_)
                | spanlab_core::Error::RegularizationFailure(_)
                | spanlab_core::Error::Disconnected { .. } => 4,
                _ => 2,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<spanlab_core::Error> for CliError {
    fn from(e: spanlab_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Short machine-readable code for failed sweep rows.
pub fn error_code(e: &spanlab_core::Error) -> &'static str {
    use spanlab_core::Error::*;
    match e {
        Certification { .. } => "certification",
        GenerationFailure(_) => "generation",
        RegularizationFailure(_) => "regularization",
        Disconnected { .. } => "disconnected",
        Parameter(_) => "parameter",
        EnumerationBudget { .. } => "budget",
        _ => "other",
    }
}

/// Builds (and optionally regularizes) a base graph from its spec string.
/// The generator stream is derived from the run seed so runs with
/// different seeds draw independent random bases.
pub fn build_base(spec: &str, run_seed: u64, do_regularize: bool) -> Result<GirthGraph, CliError> {
    let base = generate_named(spec, subseed(run_seed, 0))?;
    if do_regularize {
        Ok(regularize(&base, subseed(run_seed, 3), &RegularizeOptions::default())?)
    } else {
        Ok(base)
    }
}

/// Resolves 1/epsilon for a run: explicit epsilon wins, then an explicit
/// target size, then the fixed point for the base's node count.
pub fn resolve_inv_epsilon(
    cfg: &ExperimentConfig,
    k: usize,
    base_nodes: usize,
) -> Result<i64, CliError> {
    if let Some(e) = &cfg.epsilon {
        return Ok(*e.denom());
    }
    let eps = match cfg.n_target {
        Some(n) => solve_epsilon(n, k, cfg.c, cfg.constants.epsilon_constant)?,
        None => epsilon_for_base(
            base_nodes as u64,
            k,
            cfg.c,
            cfg.constants.epsilon_constant,
        )?,
    };
    Ok(*eps.denom())
}

/// k from the config or a config error naming the flag.
pub fn require_k(cfg: &ExperimentConfig) -> Result<usize, CliError> {
    cfg.k
        .ok_or_else(|| CliError::Config(ConfigError("--k is required".into())))
}

/// base spec from the config or a config error naming the flag.
pub fn require_base(cfg: &ExperimentConfig) -> Result<String, CliError> {
    cfg.base
        .clone()
        .ok_or_else(|| CliError::Config(ConfigError("--base is required".into())))
}
