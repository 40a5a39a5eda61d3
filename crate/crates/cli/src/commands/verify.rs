//! `spanlab verify`: recompute an instance's weighted girth from scratch
//! and check it against the claimed bound. Sidecar values are never
//! trusted; only the construction parameters (k, epsilon) are read from
//! the sidecar, and both can be overridden.

use std::path::Path;

use super::CliError;
use crate::config::ConfigError;
use spanlab_core::construction::read_instance;
use spanlab_core::girth::weighted_girth;
use spanlab_core::weight::{format_weight, parse_weight, w_int, Weight};

pub struct VerifyOutcome {
    pub value: String,
    pub bound: Weight,
    pub passed: bool,
}

pub fn run(
    stem: &Path,
    k_override: Option<usize>,
    epsilon_override: Option<&str>,
) -> Result<VerifyOutcome, CliError> {
    let inst = read_instance(stem)?;
    let k = k_override.unwrap_or_else(|| inst.k());
    let r = match epsilon_override {
        Some(text) => {
            let e = parse_weight(text).map_err(|e| ConfigError(format!("bad epsilon: {e}")))?;
            if *e.numer() != 1 || *e.denom() < 2 {
                return Err(ConfigError("epsilon must be 1/r with integer r >= 2".into()).into());
            }
            *e.denom()
        }
        None => inst.inv_epsilon(),
    };
    let bound = w_int(2 * k as i64 * (r + 1)) / w_int(r);
    let (h, _) = inst.current_graph();
    let cert = weighted_girth(&h);
    let passed = cert.value.exceeds(bound);
    let outcome = VerifyOutcome {
        value: cert.value.to_string(),
        bound,
        passed,
    };
    if passed {
        println!(
            "PASS: weighted girth {} > {}",
            outcome.value,
            format_weight(&bound)
        );
        Ok(outcome)
    } else {
        let witness = cert
            .witness
            .map(|c| format!("{:?}", c.nodes()))
            .unwrap_or_else(|| "<none>".into());
        println!(
            "FAIL: weighted girth {} <= {} (witness nodes {witness})",
            outcome.value,
            format_weight(&bound)
        );
        Err(spanlab_core::Error::Certification {
            value: outcome.value.clone(),
            bound: format_weight(&bound),
            witness,
        }
        .into())
    }
}
