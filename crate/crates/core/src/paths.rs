//! Shortest paths: Dijkstra with optional weight cap, edge exclusion, and
//! distance bound.
//!
//! The weighted-girth scan runs one search per edge, so the engine reuses
//! its scratch buffers across calls and exits early once the frontier
//! passes the caller's bound.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::Result;
use crate::graph::{EdgeId, NodeId, WeightedGraph};
use crate::weight::Weight;

/// Search restrictions. All fields optional; `None` means unrestricted.
#[derive(Debug, Clone, Default)]
pub struct SearchLimits {
    /// Only traverse edges with weight <= this cap.
    pub weight_cap: Option<Weight>,
    /// Skip this edge entirely.
    pub excluded_edge: Option<EdgeId>,
    /// Abandon nodes whose distance would be >= this bound. The target is
    /// still reported if reached strictly below the bound.
    pub distance_bound: Option<Weight>,
}

/// Reusable Dijkstra scratch space. Create once per graph size and feed to
/// repeated [`dijkstra`] calls.
pub struct SearchScratch {
    dist: Vec<Weight>,
    pred: Vec<Option<(NodeId, EdgeId)>>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl SearchScratch {
    pub fn new(node_count: usize) -> Self {
        SearchScratch {
            dist: vec![Weight::from_integer(0); node_count],
            pred: vec![None; node_count],
            stamp: vec![0; node_count],
            epoch: 0,
        }
    }

    fn begin(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            // wrapped: reset stamps so stale entries cannot alias
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }

    fn settled(&self, v: NodeId) -> bool {
        self.stamp[v] == self.epoch
    }

    fn settle(&mut self, v: NodeId, d: Weight, pred: Option<(NodeId, EdgeId)>) {
        self.stamp[v] = self.epoch;
        self.dist[v] = d;
        self.pred[v] = pred;
    }

    /// Edge ids of the found path from source to `target`, in path order.
    /// Only valid right after a successful search that reached `target`.
    pub fn path_edges(&self, target: NodeId) -> Vec<EdgeId> {
        let mut edges = Vec::new();
        let mut cur = target;
        while let Some((prev, e)) = self.pred[cur] {
            edges.push(e);
            cur = prev;
        }
        edges.reverse();
        edges
    }
}

/// Dijkstra from `source`; returns the distance to `target` if it settles
/// within the limits, `None` if unreachable or cut off by the bound.
pub fn dijkstra(
    graph: &WeightedGraph,
    source: NodeId,
    target: NodeId,
    limits: &SearchLimits,
    scratch: &mut SearchScratch,
) -> Option<Weight> {
    scratch.begin();
    let zero = Weight::from_integer(0);
    if let Some(b) = &limits.distance_bound {
        if zero >= *b {
            return None;
        }
    }
    type Entry = (Weight, NodeId, Option<(NodeId, EdgeId)>);
    let mut heap: BinaryHeap<Reverse<Entry>> = BinaryHeap::new();
    heap.push(Reverse((zero, source, None)));
    while let Some(Reverse((d, u, pred))) = heap.pop() {
        if scratch.settled(u) {
            continue;
        }
        scratch.settle(u, d, pred);
        if u == target {
            return Some(d);
        }
        for &(v, e) in graph.neighbors(u) {
            if scratch.settled(v) {
                continue;
            }
            if limits.excluded_edge == Some(e) {
                continue;
            }
            let w = graph.edges()[e].weight;
            if let Some(cap) = &limits.weight_cap {
                if w > *cap {
                    continue;
                }
            }
            let nd = d + w;
            if let Some(b) = &limits.distance_bound {
                if nd >= *b {
                    continue;
                }
            }
            heap.push(Reverse((nd, v, Some((u, e)))));
        }
    }
    None
}

/// Exact shortest-path distance between `s` and `t`, restricted to edges of
/// weight at most `weight_cap` (when given) and skipping `excluded_edge`
/// (when given). Returns `None` for unreachable pairs.
pub fn shortest_path_distance(
    graph: &WeightedGraph,
    s: NodeId,
    t: NodeId,
    weight_cap: Option<Weight>,
    excluded_edge: Option<EdgeId>,
) -> Result<Option<Weight>> {
    graph.check_node(s)?;
    graph.check_node(t)?;
    if let Some(e) = excluded_edge {
        graph.edge(e)?;
    }
    let mut scratch = SearchScratch::new(graph.node_count());
    let limits = SearchLimits {
        weight_cap,
        excluded_edge,
        distance_bound: None,
    };
    Ok(dijkstra(graph, s, t, &limits, &mut scratch))
}
