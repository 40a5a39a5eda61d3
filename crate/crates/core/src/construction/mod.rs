//! The weighted lower-bound instance: a long unit-weight spanning cycle
//! partitioned into clusters and spacers, a high-girth base graph embedded
//! across clusters at weight 1/epsilon, and pruning of every cycle whose
//! normalized weight falls at or below (1+epsilon) * 2k.
//!
//! Epsilon always has an integral reciprocal r, so every weight is 1 or r
//! and all girth comparisons are exact.

mod embed;
mod io;
mod prune;
mod solver;

pub use embed::{
    build_layout, corresponding_cycle, embed_edges, embed_edges_with_positions,
    sample_corresponding_sigma, subseed,
};
pub use io::{read_instance, write_instance};
pub use prune::{light_cycle_scan, prune_light_cycles, LightCycle};
pub use solver::{epsilon_for_base, solve_epsilon};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::girth::GirthCertificate;
use crate::girth_graphs::GirthGraph;
use crate::graph::{EdgeId, NodeId, WeightedGraph};
use crate::mst::mst_weight;
use crate::weight::{w_int, Weight};
use num::rational::Ratio;

/// Parameters of one construction run.
#[derive(Debug, Clone)]
pub struct ConstructionParams {
    pub k: usize,
    /// r = 1/epsilon, always an integer >= 2.
    pub inv_epsilon: i64,
    pub seed: u64,
}

impl ConstructionParams {
    pub fn new(k: usize, inv_epsilon: i64, seed: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
        }
        if inv_epsilon < 2 {
            return Err(Error::Parameter(format!(
                "1/epsilon must be an integer >= 2, got {inv_epsilon} (epsilon must be < 1)"
            )));
        }
        Ok(ConstructionParams {
            k,
            inv_epsilon,
            seed,
        })
    }

    pub fn epsilon(&self) -> Weight {
        Ratio::new(1, self.inv_epsilon)
    }

    /// Checks the base against this run: girth certificate at least as
    /// strong as girth > 2(k-1), and bipartite (the pruning window only
    /// scans even cycle lengths).
    pub fn validate_base(&self, base: &GirthGraph) -> Result<()> {
        if base.girth_parameter + 1 < self.k {
            return Err(Error::Parameter(format!(
                "base girth parameter {} is too weak for k = {} (need girth > {})",
                base.girth_parameter,
                self.k,
                2 * (self.k - 1)
            )));
        }
        if !base.is_bipartite() {
            return Err(Error::Parameter(
                "base graph must be bipartite".into(),
            ));
        }
        Ok(())
    }
}

/// The spanning cycle's cluster/spacer geometry plus the base-node-to-
/// cluster assignment. Clusters have k*r nodes, spacers 3*k*r, tiling all
/// N = 4*k*r*n nodes starting with cluster 0 at position 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleLayout {
    k: usize,
    inv_epsilon: i64,
    /// base node -> cluster index (a bijection)
    assignment: Vec<usize>,
}

impl CycleLayout {
    pub(crate) fn new(k: usize, inv_epsilon: i64, assignment: Vec<usize>) -> Result<Self> {
        let n = assignment.len();
        let mut seen = vec![false; n];
        for &c in &assignment {
            if c >= n || seen[c] {
                return Err(Error::Parameter(
                    "assignment is not a bijection onto clusters".into(),
                ));
            }
            seen[c] = true;
        }
        Ok(CycleLayout {
            k,
            inv_epsilon,
            assignment,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn inv_epsilon(&self) -> i64 {
        self.inv_epsilon
    }

    pub fn epsilon(&self) -> Weight {
        Ratio::new(1, self.inv_epsilon)
    }

    /// Number of clusters (= base nodes).
    pub fn cluster_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn cluster_size(&self) -> usize {
        self.k * self.inv_epsilon as usize
    }

    pub fn spacer_size(&self) -> usize {
        3 * self.cluster_size()
    }

    /// Total nodes on the spanning cycle: N = 4*k*r*n.
    pub fn cycle_len(&self) -> usize {
        (self.cluster_size() + self.spacer_size()) * self.cluster_count()
    }

    /// Half-open node interval of cluster `i`.
    pub fn cluster_interval(&self, i: usize) -> (usize, usize) {
        let period = self.cluster_size() + self.spacer_size();
        (i * period, self.cluster_size())
    }

    /// Half-open node interval of spacer `i` (the one following cluster `i`).
    pub fn spacer_interval(&self, i: usize) -> (usize, usize) {
        let period = self.cluster_size() + self.spacer_size();
        (i * period + self.cluster_size(), self.spacer_size())
    }

    /// Cluster containing spanning-cycle node `pos`, if any.
    pub fn cluster_of_position(&self, pos: usize) -> Option<usize> {
        let period = self.cluster_size() + self.spacer_size();
        if pos % period < self.cluster_size() {
            Some(pos / period)
        } else {
            None
        }
    }

    /// Cluster assigned to a base node.
    pub fn cluster_of_base_node(&self, v: NodeId) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }
}

/// H' (and, after pruning, H): the spanning cycle with embedded edges.
///
/// Spanning-cycle edges occupy ids `0..N` (edge i joins nodes i and i+1
/// mod N, weight 1); embedded edges follow with weight r, one per base
/// edge. `pruned` collects deleted embedded edge ids; the underlying
/// graph keeps every edge so ids stay stable.
#[derive(Debug, Clone)]
pub struct EmbeddedInstance {
    pub(crate) graph: WeightedGraph,
    pub(crate) layout: CycleLayout,
    pub(crate) base: WeightedGraph,
    /// embedded[b] = H' edge id carrying base edge b
    pub(crate) embedded: Vec<EdgeId>,
    pub(crate) pruned: BTreeSet<EdgeId>,
    pub(crate) certificate: Option<GirthCertificate>,
    pub(crate) seed: u64,
    /// informational: generator spec of the base
    pub(crate) base_spec: String,
}

impl EmbeddedInstance {
    /// The full pre-prune graph H'.
    pub fn full_graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn layout(&self) -> &CycleLayout {
        &self.layout
    }

    pub fn base(&self) -> &WeightedGraph {
        &self.base
    }

    pub fn base_spec(&self) -> &str {
        &self.base_spec
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn k(&self) -> usize {
        self.layout.k
    }

    pub fn epsilon(&self) -> Weight {
        self.layout.epsilon()
    }

    pub fn inv_epsilon(&self) -> i64 {
        self.layout.inv_epsilon
    }

    /// Number of spanning-cycle edges (= N).
    pub fn sc_edge_count(&self) -> usize {
        self.layout.cycle_len()
    }

    /// True for embedded (non-SC) edge ids.
    pub fn is_embedded_edge(&self, e: EdgeId) -> bool {
        e >= self.sc_edge_count()
    }

    /// Map base edge id -> H' edge id.
    pub fn embedded(&self) -> &[EdgeId] {
        &self.embedded
    }

    pub fn pruned(&self) -> &BTreeSet<EdgeId> {
        &self.pruned
    }

    pub fn certificate(&self) -> Option<&GirthCertificate> {
        self.certificate.as_ref()
    }

    /// The girth bound the pruned instance must exceed: (1+epsilon) * 2k.
    pub fn girth_bound(&self) -> Weight {
        let k = self.layout.k as i64;
        let r = self.layout.inv_epsilon;
        Ratio::new(2 * k * (r + 1), r)
    }

    /// Materializes the current graph (H' minus pruned edges) together
    /// with a map from new edge ids to H' edge ids.
    pub fn current_graph(&self) -> (WeightedGraph, Vec<EdgeId>) {
        self.graph.without_edges(&self.pruned)
    }

    /// w(H') = N + r * |E(base)| before pruning; drops by r per pruned edge.
    pub fn total_weight(&self) -> Weight {
        let r = w_int(self.layout.inv_epsilon);
        self.graph.total_weight() - r * w_int(self.pruned.len() as i64)
    }

    /// Fraction of embedded edges that survived pruning.
    pub fn surviving_fraction(&self) -> Result<f64> {
        if self.embedded.is_empty() {
            return Err(Error::UndefinedFraction);
        }
        let surviving = self.embedded.len() - self.pruned.len();
        Ok(surviving as f64 / self.embedded.len() as f64)
    }

    /// Lightness of the current graph relative to itself, exact.
    pub fn lightness(&self) -> Result<Weight> {
        let (h, _) = self.current_graph();
        let mst = mst_weight(&h)?;
        Ok(h.total_weight() / mst)
    }
}

/// Predicted lightness scale from the instance parameters:
/// epsilon^(1/(k-1)) * N^(1/(k-1)) / k, with unit constant. The formula
/// presumes a base of density n^(1 + 1/(k-1)); sparser bases land
/// proportionally lower.
pub fn predicted_lightness(n_cycle: usize, k: usize, epsilon: Weight) -> Result<f64> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    let e = crate::weight::weight_to_f64(&epsilon);
    let exp = 1.0 / (k as f64 - 1.0);
    Ok(e.powf(exp) * (n_cycle as f64).powf(exp) / k as f64)
}

/// Expected number of killing cycles through a fixed edge:
/// constant * n^((k+2c)/(k-1)) * (constant * epsilon)^(2k+2c) / (2k+2c)!.
pub fn expected_kill_bound(k: usize, c: usize, n: usize, epsilon: f64, constant: f64) -> f64 {
    let len = (2 * k + 2 * c) as f64;
    let mut factorial = 1.0f64;
    for i in 2..=(2 * k + 2 * c) {
        factorial *= i as f64;
    }
    let node_term = (n as f64).powf((k as f64 + 2.0 * c as f64) / (k as f64 - 1.0));
    constant * node_term * (constant * epsilon).powf(len) / factorial
}

/// Sum over c = 0..=c_max of 4^-(c+1); at most 1/2 for any c_max.
pub fn geometric_kill_sum(c_max: usize) -> Weight {
    let mut total = Ratio::new(0, 1);
    let mut term = Ratio::new(1i64, 4);
    for _ in 0..=c_max {
        total += term;
        term /= w_int(4);
    }
    total
}

#[cfg(test)]
pub(crate) mod testutil {
    use crate::girth_graphs::{Certification, GirthGraph, Provenance};
    use crate::graph::WeightedGraph;

    /// Cycle graph C_len as a certified base (girth = len).
    pub(crate) fn cycle_base(len: usize) -> GirthGraph {
        let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        let graph = WeightedGraph::from_unit_edges(len, &edges).unwrap();
        GirthGraph::certify(
            graph,
            (len - 1) / 2,
            Provenance {
                generator: "cycle".into(),
                params: format!("len={len}"),
                seed: None,
                girth_parameter: (len - 1) / 2,
                certification: Certification::Construction,
                nodes: 0,
                edges: 0,
            },
            None,
            None,
        )
        .unwrap()
    }
}

/// Full pipeline: layout, embedding, pruning, certificate.
pub fn build_instance(
    base: &GirthGraph,
    params: &ConstructionParams,
    base_spec: &str,
) -> Result<EmbeddedInstance> {
    params.validate_base(base)?;
    let layout = build_layout(base, params.k, params.inv_epsilon, subseed(params.seed, 1))?;
    let inst = embed_edges(base, layout, subseed(params.seed, 2), params.seed, base_spec)?;
    prune_light_cycles(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validate_bounds() {
        assert!(ConstructionParams::new(1, 4, 0).is_err());
        assert!(ConstructionParams::new(2, 1, 0).is_err());
        let p = ConstructionParams::new(2, 8, 0).unwrap();
        assert_eq!(p.epsilon(), Ratio::new(1, 8));
    }

    #[test]
    fn predicted_lightness_k2_is_eps_n_over_2() {
        let v = predicted_lightness(1_000_000, 2, Ratio::new(1, 50)).unwrap();
        assert!((v - 10_000.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn predicted_lightness_scales_as_power_law() {
        let eps = Ratio::new(1, 10);
        let a = predicted_lightness(1000, 3, eps).unwrap();
        let b = predicted_lightness(2000, 3, eps).unwrap();
        assert!((b / a - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn predicted_lightness_rejects_small_k() {
        assert!(predicted_lightness(100, 1, Ratio::new(1, 2)).is_err());
    }

    #[test]
    fn kill_bound_vanishes_with_epsilon() {
        let big = expected_kill_bound(2, 0, 100, 0.1, 1.0);
        let small = expected_kill_bound(2, 0, 100, 0.001, 1.0);
        assert!(small < big);
        assert!(small < 1e-9);
    }

    #[test]
    fn kill_bound_k2_c0_instantiation() {
        // n^2 * eps^4 / 24
        let v = expected_kill_bound(2, 0, 10, 0.5, 1.0);
        assert!((v - 100.0 * 0.0625 / 24.0).abs() < 1e-12);
    }

    #[test]
    fn geometric_sum_single_term() {
        assert_eq!(geometric_kill_sum(0), Ratio::new(1, 4));
        assert!(geometric_kill_sum(10) <= Ratio::new(1, 2));
    }
}
