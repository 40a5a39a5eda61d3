//! Exact weighted and unweighted girth.
//!
//! Weighted girth is the minimum of w*(C) = w(C) / max_{e in C} w(e) over
//! all cycles C. Every cycle has a maximum-weight edge, so scanning each
//! edge e as the candidate maximum and asking for the shortest u-v detour
//! over edges of weight <= w(e) (excluding e itself) visits every cycle's
//! optimal decomposition; the minimum candidate is exact. Allowing equal
//! weights on the detour handles ties in the maximum.

use crate::cycles::Cycle;
use crate::graph::WeightedGraph;
use crate::paths::{dijkstra, SearchLimits, SearchScratch};
use crate::weight::{format_weight, w_int, Weight};
use std::collections::VecDeque;

/// Weighted girth value: finite with a witness, or infinite for forests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GirthValue {
    Finite(Weight),
    Infinite,
}

impl GirthValue {
    pub fn as_finite(&self) -> Option<Weight> {
        match self {
            GirthValue::Finite(w) => Some(*w),
            GirthValue::Infinite => None,
        }
    }

    /// True when the girth is strictly above `bound` (infinite girth always is).
    pub fn exceeds(&self, bound: Weight) -> bool {
        match self {
            GirthValue::Finite(w) => *w > bound,
            GirthValue::Infinite => true,
        }
    }
}

impl std::fmt::Display for GirthValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GirthValue::Finite(w) => write!(f, "{}", format_weight(w)),
            GirthValue::Infinite => write!(f, "inf"),
        }
    }
}

/// Result of a weighted-girth computation. When finite, `witness` is a
/// cycle whose normalized weight equals `value` exactly.
#[derive(Debug, Clone)]
pub struct GirthCertificate {
    pub value: GirthValue,
    pub witness: Option<Cycle>,
}

/// Exact weighted girth with witness.
///
/// Edges are scanned in descending weight order so the running minimum
/// tightens the distance bound of later searches as early as possible.
pub fn weighted_girth(graph: &WeightedGraph) -> GirthCertificate {
    let mut order: Vec<usize> = (0..graph.edge_count()).collect();
    order.sort_by(|&a, &b| {
        graph.edges()[b]
            .weight
            .cmp(&graph.edges()[a].weight)
            .then(a.cmp(&b))
    });
    let mut scratch = SearchScratch::new(graph.node_count());
    let mut best: Option<(Weight, Cycle)> = None;
    for e in order {
        let edge = &graph.edges()[e];
        let w = edge.weight;
        // improving candidates satisfy (d + w) / w < best, i.e. d < (best - 1) * w
        let bound = best.as_ref().map(|(b, _)| (*b - w_int(1)) * w);
        let limits = SearchLimits {
            weight_cap: Some(w),
            excluded_edge: Some(e),
            distance_bound: bound,
        };
        if let Some(d) = dijkstra(graph, edge.u, edge.v, &limits, &mut scratch) {
            let value = (d + w) / w;
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                let mut edges = scratch.path_edges(edge.v);
                edges.push(e);
                let cycle = Cycle::from_edge_sequence(graph, edges)
                    .expect("detour plus scanned edge closes a simple cycle");
                debug_assert_eq!(cycle.normalized_weight(), value);
                best = Some((value, cycle));
            }
        }
    }
    match best {
        Some((value, witness)) => GirthCertificate {
            value: GirthValue::Finite(value),
            witness: Some(witness),
        },
        None => GirthCertificate {
            value: GirthValue::Infinite,
            witness: None,
        },
    }
}

/// Unweighted girth (minimum number of edges in any cycle), ignoring
/// weights. `None` for forests.
///
/// BFS from every node, tracking the discovering edge so parallel edges
/// close a 2-cycle correctly. Each root's scan may overshoot on cycles far
/// from the root, but the minimum over all roots is exact.
pub fn unweighted_girth(graph: &WeightedGraph) -> Option<usize> {
    let n = graph.node_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut via_edge = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        queue.clear();
        dist[root] = 0;
        via_edge[root] = usize::MAX;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                // nodes at depth >= b/2 cannot reveal a shorter cycle
                if 2 * dist[u] >= b {
                    continue;
                }
            }
            for &(v, e) in graph.neighbors(u) {
                if e == via_edge[u] {
                    continue;
                }
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    via_edge[v] = e;
                    queue.push_back(v);
                } else {
                    let candidate = dist[u] + dist[v] + 1;
                    if best.is_none_or(|b| candidate < b) {
                        best = Some(candidate);
                    }
                }
            }
        }
    }
    best
}

/// Shortest cycle (by edge count) as an explicit witness, or `None` for
/// forests. Used by generators that must delete an edge from each short
/// cycle. Runs the weighted engine on a unit-reweighted copy, so the
/// result length equals the unweighted girth.
pub fn shortest_cycle_edges(graph: &WeightedGraph) -> Option<Vec<usize>> {
    let mut unit = if graph.allows_parallel() {
        WeightedGraph::new_multi(graph.node_count())
    } else {
        WeightedGraph::new(graph.node_count())
    };
    for e in graph.edges() {
        unit.add_edge(e.u, e.v, w_int(1))
            .expect("copying valid edges");
    }
    let cert = weighted_girth(&unit);
    cert.witness.map(|c| c.edges().to_vec())
}

/// True when `graph` restricted to nodes is 2-colorable; convenience used
/// by generators. See [`WeightedGraph::bipartition`].
pub fn is_bipartite(graph: &WeightedGraph) -> bool {
    graph.bipartition().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::w_frac;

    fn unit_cycle(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        WeightedGraph::from_unit_edges(n, &edges).unwrap()
    }

    #[test]
    fn unit_triangle_weighted_girth_is_three() {
        let cert = weighted_girth(&unit_cycle(3));
        assert_eq!(cert.value, GirthValue::Finite(w_int(3)));
        let w = cert.witness.unwrap();
        assert_eq!(w.normalized_weight(), w_int(3));
    }

    #[test]
    fn heavy_edge_four_cycle_girth_is_two() {
        let mut g = WeightedGraph::new(4);
        g.add_edge(0, 1, w_int(1)).unwrap();
        g.add_edge(1, 2, w_int(1)).unwrap();
        g.add_edge(2, 3, w_int(1)).unwrap();
        g.add_edge(3, 0, w_int(3)).unwrap();
        let cert = weighted_girth(&g);
        assert_eq!(cert.value, GirthValue::Finite(w_int(2)));
    }

    #[test]
    fn forest_has_infinite_girth() {
        let g = WeightedGraph::from_unit_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let cert = weighted_girth(&g);
        assert_eq!(cert.value, GirthValue::Infinite);
        assert!(cert.witness.is_none());
        assert_eq!(unweighted_girth(&g), None);
    }

    #[test]
    fn parallel_pair_girth_is_two() {
        let mut g = WeightedGraph::new_multi(2);
        g.add_edge(0, 1, w_int(5)).unwrap();
        g.add_edge(0, 1, w_int(5)).unwrap();
        let cert = weighted_girth(&g);
        assert_eq!(cert.value, GirthValue::Finite(w_int(2)));
        assert_eq!(unweighted_girth(&g), Some(2));
    }

    #[test]
    fn unweighted_girth_of_small_graphs() {
        assert_eq!(unweighted_girth(&unit_cycle(3)), Some(3));
        let k22 = WeightedGraph::from_unit_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(unweighted_girth(&k22), Some(4));
        assert_eq!(unweighted_girth(&unit_cycle(10)), Some(10));
    }

    #[test]
    fn uniform_weights_match_unweighted_girth() {
        let g = unit_cycle(7);
        let cert = weighted_girth(&g);
        assert_eq!(cert.value, GirthValue::Finite(w_int(7)));
        assert_eq!(unweighted_girth(&g), Some(7));
    }

    #[test]
    fn scaling_invariance() {
        let mut g = WeightedGraph::new(4);
        g.add_edge(0, 1, w_frac(1, 2).unwrap()).unwrap();
        g.add_edge(1, 2, w_int(2)).unwrap();
        g.add_edge(2, 0, w_int(1)).unwrap();
        g.add_edge(2, 3, w_int(4)).unwrap();
        g.add_edge(3, 0, w_int(1)).unwrap();
        let base = weighted_girth(&g);
        let scaled = weighted_girth(&g.scaled(w_frac(3, 7).unwrap()).unwrap());
        assert_eq!(base.value, scaled.value);
        let a: std::collections::BTreeSet<_> =
            base.witness.unwrap().edges().iter().copied().collect();
        let b: std::collections::BTreeSet<_> =
            scaled.witness.unwrap().edges().iter().copied().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn lopsided_cycles_can_dip_below_two() {
        // normalized weight has no universal floor of 2: a cycle whose
        // maximum edge outweighs the rest lands just above 1. A second
        // cycle with value exactly 2 and a heavier maximum is scanned
        // first, so any early exit at 2 would miss the true minimum.
        let mut g = WeightedGraph::new(6);
        g.add_edge(0, 1, w_int(50)).unwrap();
        g.add_edge(1, 2, w_int(50)).unwrap();
        g.add_edge(2, 0, w_int(100)).unwrap(); // w* = 200/100 = 2 exactly
        g.add_edge(3, 4, w_int(1)).unwrap();
        g.add_edge(4, 5, w_int(1)).unwrap();
        g.add_edge(5, 3, w_int(90)).unwrap(); // w* = 92/90 < 2
        let cert = weighted_girth(&g);
        assert_eq!(cert.value, GirthValue::Finite(w_frac(46, 45).unwrap()));
    }

    #[test]
    fn witness_normalized_weight_equals_value() {
        let mut g = WeightedGraph::new(5);
        g.add_edge(0, 1, w_int(1)).unwrap();
        g.add_edge(1, 2, w_frac(3, 2).unwrap()).unwrap();
        g.add_edge(2, 0, w_int(2)).unwrap();
        g.add_edge(2, 3, w_int(1)).unwrap();
        g.add_edge(3, 4, w_int(1)).unwrap();
        g.add_edge(4, 2, w_int(1)).unwrap();
        let cert = weighted_girth(&g);
        let value = cert.value.as_finite().unwrap();
        assert_eq!(cert.witness.unwrap().normalized_weight(), value);
    }
}
