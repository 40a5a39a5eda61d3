//! Independent brute-force reference implementations for differential
//! test suites (feature `oracle`).
//!
//! Everything here is written against the public graph surface only and
//! deliberately takes different algorithmic routes from the library
//! proper: cycles are enumerated from their minimum *node* (the library
//! anchors on the minimum edge) and deduplicated as edge sets, and the
//! girth minimum is a plain scan over the full cycle inventory. Keep it
//! that way; these functions exist to disagree loudly when the fast paths
//! are wrong.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;

use crate::graph::{EdgeId, NodeId, WeightedGraph};
use crate::weight::{w_frac, w_int, Weight};

/// Every node-simple cycle of the graph, as edge-id sets.
pub fn all_simple_cycles(graph: &WeightedGraph) -> Vec<BTreeSet<EdgeId>> {
    let mut found: HashSet<BTreeSet<EdgeId>> = HashSet::new();
    for start in 0..graph.node_count() {
        let mut on_path = vec![false; graph.node_count()];
        on_path[start] = true;
        let mut path_edges = Vec::new();
        explore(graph, start, start, &mut on_path, &mut path_edges, &mut found);
    }
    let mut out: Vec<_> = found.into_iter().collect();
    out.sort();
    out
}

fn explore(
    graph: &WeightedGraph,
    start: NodeId,
    cur: NodeId,
    on_path: &mut Vec<bool>,
    path_edges: &mut Vec<EdgeId>,
    found: &mut HashSet<BTreeSet<EdgeId>>,
) {
    for &(next, edge) in graph.neighbors(cur) {
        if path_edges.contains(&edge) {
            continue;
        }
        if next == start {
            if !path_edges.is_empty() {
                let mut cycle: BTreeSet<EdgeId> = path_edges.iter().copied().collect();
                cycle.insert(edge);
                if cycle.len() >= 2 {
                    found.insert(cycle);
                }
            }
            continue;
        }
        // restrict to nodes above the start so each cycle is seen from its
        // minimum node only
        if next < start || on_path[next] {
            continue;
        }
        on_path[next] = true;
        path_edges.push(edge);
        explore(graph, start, next, on_path, path_edges, found);
        path_edges.pop();
        on_path[next] = false;
    }
}

/// Normalized weight of an edge set, computed directly from the graph.
pub fn normalized_weight_of_set(graph: &WeightedGraph, cycle: &BTreeSet<EdgeId>) -> Weight {
    let mut total = w_int(0);
    let mut max = w_int(0);
    for &e in cycle {
        let w = graph.edges()[e].weight;
        total += w;
        if w > max {
            max = w;
        }
    }
    total / max
}

/// Exhaustive weighted girth: the minimum normalized weight over every
/// simple cycle, with one minimizing edge set.
pub fn weighted_girth_bruteforce(graph: &WeightedGraph) -> Option<(Weight, BTreeSet<EdgeId>)> {
    let mut best: Option<(Weight, BTreeSet<EdgeId>)> = None;
    for cycle in all_simple_cycles(graph) {
        let w = normalized_weight_of_set(graph, &cycle);
        if best.as_ref().is_none_or(|(b, _)| w < *b) {
            best = Some((w, cycle));
        }
    }
    best
}

/// Exhaustive unweighted girth.
pub fn unweighted_girth_bruteforce(graph: &WeightedGraph) -> Option<usize> {
    all_simple_cycles(graph).iter().map(|c| c.len()).min()
}

/// Number of simple cycles of exactly `len` edges containing `e`.
pub fn count_cycles_through_edge_bruteforce(
    graph: &WeightedGraph,
    e: EdgeId,
    len: usize,
) -> usize {
    all_simple_cycles(graph)
        .iter()
        .filter(|c| c.len() == len && c.contains(&e))
        .count()
}

/// Random graph on up to `n_max` nodes and `m_max` edges with small random
/// rational weights; may be disconnected and never has parallel edges.
pub fn random_graph(n_max: usize, m_max: usize, rng: &mut impl Rng) -> WeightedGraph {
    let n = rng.random_range(3..=n_max.max(3));
    let mut g = WeightedGraph::new(n);
    let target = rng.random_range(0..=m_max);
    for _ in 0..target {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v {
            continue;
        }
        let num = rng.random_range(1..=12i64);
        let den = rng.random_range(1..=12i64);
        let _ = g.add_edge(u, v, w_frac(num, den).expect("positive"));
    }
    g
}

/// Random multigraph: like [`random_graph`] but parallel edges are kept,
/// so 2-cycles appear.
pub fn random_multigraph(n_max: usize, m_max: usize, rng: &mut impl Rng) -> WeightedGraph {
    let n = rng.random_range(2..=n_max.max(2));
    let mut g = WeightedGraph::new_multi(n);
    let target = rng.random_range(0..=m_max);
    for _ in 0..target {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v {
            continue;
        }
        let num = rng.random_range(1..=12i64);
        let den = rng.random_range(1..=12i64);
        let _ = g.add_edge(u, v, w_frac(num, den).expect("positive"));
    }
    g
}

/// Random connected graph: a random spanning tree plus extra random edges,
/// with small random rational weights.
pub fn random_connected_graph(n: usize, extra: usize, rng: &mut impl Rng) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    for v in 1..n {
        let u = rng.random_range(0..v);
        let num = rng.random_range(1..=12i64);
        let den = rng.random_range(1..=12i64);
        g.add_edge(u, v, w_frac(num, den).expect("positive"))
            .expect("tree edge");
    }
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v {
            continue;
        }
        let num = rng.random_range(1..=12i64);
        let den = rng.random_range(1..=12i64);
        let _ = g.add_edge(u, v, w_frac(num, den).expect("positive"));
    }
    g
}
