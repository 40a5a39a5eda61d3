//! Base graphs with certified girth lower bounds.
//!
//! These play the role of the girth-conjecture graph: unit weights,
//! bipartite where the construction needs it, with a recorded parameter
//! kappa meaning girth > 2*kappa. Instances small enough are certified by
//! an exact girth computation; larger ones carry provenance from the
//! algebraic construction instead.

mod generators;
mod regularize;

pub use generators::{gen_complete_bipartite, gen_projective_plane_incidence, gen_random_high_girth};
pub use regularize::{bipartition_pass, regularize, RegularizeOptions};

use serde::{Deserialize, Serialize};

use crate::cycles::{enumerate_cycles_through_edge_capped, DEFAULT_LENGTH_CAP};
use crate::error::{Error, Result};
use crate::girth::unweighted_girth;
use crate::graph::{EdgeId, WeightedGraph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Node-count threshold below which generator output is girth-checked
/// exactly at construction time.
pub const EXACT_CHECK_NODE_LIMIT: usize = 200;

/// How a [`GirthGraph`]'s girth bound was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// Verified by an exact girth computation.
    Exact,
    /// Trusted from the algebraic construction (instance above the check limit).
    Construction,
}

/// Where a base graph came from; written next to serialized graphs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub params: String,
    pub seed: Option<u64>,
    pub girth_parameter: usize,
    pub certification: Certification,
    pub nodes: usize,
    pub edges: usize,
}

/// Unit-weight base graph with a certified girth bound: girth > 2 * girth_parameter.
#[derive(Debug, Clone)]
pub struct GirthGraph {
    pub graph: WeightedGraph,
    pub girth_parameter: usize,
    pub degree_band: Option<(usize, usize)>,
    pub bipartition: Option<Vec<u8>>,
    pub provenance: Provenance,
}

impl GirthGraph {
    /// Wraps a unit-weight graph, certifying `girth > 2 * girth_parameter`
    /// exactly when the graph is small enough.
    pub fn certify(
        graph: WeightedGraph,
        girth_parameter: usize,
        mut provenance: Provenance,
        bipartition: Option<Vec<u8>>,
        degree_band: Option<(usize, usize)>,
    ) -> Result<GirthGraph> {
        if !graph.is_unit_weight() {
            return Err(Error::Parameter("girth graph must have unit weights".into()));
        }
        provenance.nodes = graph.node_count();
        provenance.edges = graph.edge_count();
        if graph.node_count() <= EXACT_CHECK_NODE_LIMIT {
            if let Some(g) = unweighted_girth(&graph) {
                if g <= 2 * girth_parameter {
                    return Err(Error::GenerationFailure(format!(
                        "girth {g} does not exceed 2*kappa = {}",
                        2 * girth_parameter
                    )));
                }
            }
            provenance.certification = Certification::Exact;
        }
        if let Some(coloring) = &bipartition {
            for e in graph.edges() {
                if coloring[e.u] == coloring[e.v] {
                    return Err(Error::GenerationFailure(format!(
                        "recorded bipartition is not proper at edge ({}, {})",
                        e.u, e.v
                    )));
                }
            }
        }
        if let Some((lo, hi)) = degree_band {
            for v in 0..graph.node_count() {
                let d = graph.degree(v);
                if d < lo || d > hi {
                    return Err(Error::GenerationFailure(format!(
                        "node {v} degree {d} outside the recorded band [{lo}, {hi}]"
                    )));
                }
            }
        }
        Ok(GirthGraph {
            graph,
            girth_parameter,
            degree_band,
            bipartition,
            provenance,
        })
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some() || self.graph.bipartition().is_some()
    }
}

/// Per-edge cycle-count measurement against the structural bound
/// `constant * n^((kappa + 2c + 1) / kappa)` for cycles of length
/// 2*(kappa+1) + 2c (the shortest possible lengths in a bipartite graph of
/// girth > 2*kappa take c = 0).
#[derive(Debug, Clone, Serialize)]
pub struct CycleCountReport {
    pub edge: EdgeId,
    pub cycle_length: usize,
    pub count: usize,
    pub bound: f64,
    pub within_bound: bool,
}

/// Counts cycles of length `2*(kappa+1) + 2c` through each of
/// `sample_edges` uniformly chosen edges (without replacement), comparing
/// against the bound with the given constant.
pub fn count_cycles_per_edge(
    g: &GirthGraph,
    c: usize,
    sample_edges: usize,
    seed: u64,
    constant: f64,
) -> Result<Vec<CycleCountReport>> {
    let kappa = g.girth_parameter;
    if kappa == 0 {
        return Err(Error::Parameter("girth parameter must be at least 1".into()));
    }
    let cycle_length = 2 * (kappa + 1) + 2 * c;
    let n = g.node_count() as f64;
    let exponent = (kappa as f64 + 2.0 * c as f64 + 1.0) / kappa as f64;
    let bound = constant * n.powf(exponent);

    let mut ids: Vec<EdgeId> = (0..g.edge_count()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ids.shuffle(&mut rng);
    ids.truncate(sample_edges.min(ids.len()));
    ids.sort_unstable();

    let mut reports = Vec::with_capacity(ids.len());
    for e in ids {
        let cycles =
            enumerate_cycles_through_edge_capped(&g.graph, e, cycle_length, DEFAULT_LENGTH_CAP)?;
        let count = cycles.len();
        reports.push(CycleCountReport {
            edge: e,
            cycle_length,
            count,
            bound,
            within_bound: (count as f64) <= bound,
        });
    }
    Ok(reports)
}

/// Builds a base graph from a CLI-style spec string:
/// `biclique:side=4`, `pg2:q=3`, or
/// `random-alteration:n=30,kappa=2[,exponent=1.5][,fill=1/2]`.
pub fn generate_named(spec: &str, seed: u64) -> Result<GirthGraph> {
    let (name, params_str) = match spec.split_once(':') {
        Some((n, p)) => (n, p),
        None => (spec, ""),
    };
    let mut params = std::collections::BTreeMap::new();
    for item in params_str.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| {
            Error::Parameter(format!("base parameter {item:?} is not key=value"))
        })?;
        if params.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(Error::Parameter(format!("duplicate base parameter {k:?}")));
        }
    }
    let take_usize = |params: &mut std::collections::BTreeMap<String, String>, key: &str| {
        params
            .remove(key)
            .ok_or_else(|| Error::Parameter(format!("base {name:?} requires parameter {key:?}")))
            .and_then(|v| {
                v.parse::<usize>()
                    .map_err(|_| Error::Parameter(format!("parameter {key}={v:?} is not an integer")))
            })
    };
    let mut params_owned = params;
    let built = match name {
        "biclique" => {
            let side = take_usize(&mut params_owned, "side")?;
            gen_complete_bipartite(side)?
        }
        "pg2" => {
            let q = take_usize(&mut params_owned, "q")?;
            gen_projective_plane_incidence(q)?
        }
        "random-alteration" => {
            let n = take_usize(&mut params_owned, "n")?;
            let kappa = take_usize(&mut params_owned, "kappa")?;
            let exponent = match params_owned.remove("exponent") {
                Some(v) => Some(v.parse::<f64>().map_err(|_| {
                    Error::Parameter(format!("parameter exponent={v:?} is not a number"))
                })?),
                None => None,
            };
            let fill = match params_owned.remove("fill") {
                Some(v) => Some(crate::weight::parse_weight(&v)?),
                None => None,
            };
            gen_random_high_girth(n, kappa, exponent, fill, seed)?
        }
        other => {
            return Err(Error::Parameter(format!(
                "unknown base generator {other:?} (known: biclique, pg2, random-alteration)"
            )))
        }
    };
    if let Some(key) = params_owned.keys().next() {
        return Err(Error::Parameter(format!(
            "unknown parameter {key:?} for base generator {name:?}"
        )));
    }
    Ok(built)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_registry_dispatches() {
        let g = generate_named("biclique:side=3", 0).unwrap();
        assert_eq!(g.node_count(), 6);
        let g = generate_named("pg2:q=2", 0).unwrap();
        assert_eq!(g.node_count(), 14);
        assert!(generate_named("nosuch:x=1", 0).is_err());
        assert!(generate_named("biclique:side=3,bogus=1", 0).is_err());
        assert!(generate_named("biclique:side", 0).is_err());
    }

    #[test]
    fn count_cycles_on_trees_is_zero() {
        let graph = WeightedGraph::from_unit_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let g = GirthGraph::certify(
            graph,
            1,
            Provenance {
                generator: "test".into(),
                params: String::new(),
                seed: None,
                girth_parameter: 1,
                certification: Certification::Construction,
                nodes: 0,
                edges: 0,
            },
            None,
            None,
        )
        .unwrap();
        let reports = count_cycles_per_edge(&g, 0, 10, 1, 1.0).unwrap();
        assert_eq!(reports.len(), 4);
        assert!(reports.iter().all(|r| r.count == 0 && r.within_bound));
    }

    #[test]
    fn k22_has_one_four_cycle_per_edge() {
        let g = gen_complete_bipartite(2).unwrap();
        let reports = count_cycles_per_edge(&g, 0, 4, 9, 4.0).unwrap();
        assert_eq!(reports.len(), 4);
        for r in &reports {
            assert_eq!(r.cycle_length, 4);
            assert_eq!(r.count, 1);
            assert!(r.within_bound);
        }
    }
}
