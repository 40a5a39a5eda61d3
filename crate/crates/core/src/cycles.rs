//! Node-simple cycles: representation, normalized weight, and bounded
//! enumeration.
//!
//! A cycle is stored as its edge ids in cyclic order. Two-edge cycles
//! (a pair of parallel edges) are valid only on graphs built in
//! parallel-edge mode.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, NodeId, WeightedGraph};
use crate::weight::{w_int, Weight};

/// Default cap on cycle lengths accepted by the enumerators.
pub const DEFAULT_LENGTH_CAP: usize = 12;

/// A node-simple cycle with cached total and maximum edge weight.
#[derive(Debug, Clone)]
pub struct Cycle {
    edges: Vec<EdgeId>,
    nodes: Vec<NodeId>,
    total_weight: Weight,
    max_weight: Weight,
}

impl Cycle {
    /// Validates an edge-id sequence as a cycle of `graph`: consecutive
    /// edges share an endpoint, the last edge closes back to the first
    /// node, no node repeats, and the length fits the graph's mode.
    pub fn from_edge_sequence(graph: &WeightedGraph, edges: Vec<EdgeId>) -> Result<Cycle> {
        let len = edges.len();
        let min_len = if graph.allows_parallel() { 2 } else { 3 };
        if len < min_len {
            return Err(Error::InvalidCycle(format!(
                "length {len} below the minimum {min_len}"
            )));
        }
        for &e in &edges {
            graph.edge(e)?;
        }
        {
            let mut sorted = edges.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != len {
                return Err(Error::InvalidCycle("repeated edge".into()));
            }
        }
        // Orient the first edge by the endpoint it shares with the second.
        let first = graph.edge(edges[0])?;
        let second = graph.edge(edges[1])?;
        let start = if first.v == second.u || first.v == second.v {
            first.u
        } else if first.u == second.u || first.u == second.v {
            first.v
        } else {
            return Err(Error::InvalidCycle(
                "first two edges share no endpoint".into(),
            ));
        };
        let mut nodes = Vec::with_capacity(len);
        let mut cur = start;
        for &e in &edges {
            nodes.push(cur);
            let edge = graph.edge(e)?;
            if edge.u != cur && edge.v != cur {
                return Err(Error::InvalidCycle(format!(
                    "edge {e} does not continue the walk at node {cur}"
                )));
            }
            cur = edge.other(cur);
        }
        if cur != start {
            return Err(Error::InvalidCycle("walk does not close".into()));
        }
        {
            let mut seen = nodes.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != nodes.len() {
                return Err(Error::InvalidCycle("node visited twice".into()));
            }
        }
        let mut total = w_int(0);
        let mut max = w_int(0);
        for &e in &edges {
            let w = graph.edges()[e].weight;
            total += w;
            if w > max {
                max = w;
            }
        }
        Ok(Cycle {
            edges,
            nodes,
            total_weight: total,
            max_weight: max,
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edge ids in cyclic order.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Node ids in cyclic order; `nodes()[i]` starts `edges()[i]`.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn total_weight(&self) -> Weight {
        self.total_weight
    }

    pub fn max_edge_weight(&self) -> Weight {
        self.max_weight
    }

    /// Normalized weight w*(C) = w(C) / max edge weight.
    pub fn normalized_weight(&self) -> Weight {
        self.total_weight / self.max_weight
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// Canonical form: the lexicographically smallest rotation over both
    /// traversal directions of the interleaved (node, edge) sequence.
    /// Deterministic, so equal cycles always produce equal keys.
    pub fn canonical_key(&self) -> Vec<(NodeId, EdgeId)> {
        let len = self.edges.len();
        let forward: Vec<(NodeId, EdgeId)> = (0..len).map(|i| (self.nodes[i], self.edges[i])).collect();
        // reversed traversal: nodes in reverse order, edge i-1 leads into node i
        let backward: Vec<(NodeId, EdgeId)> = (0..len)
            .map(|i| {
                let ni = (len - i) % len;
                let ei = (len - 1 + len - i) % len;
                (self.nodes[ni], self.edges[ei])
            })
            .collect();
        let mut best: Option<Vec<(NodeId, EdgeId)>> = None;
        for seq in [forward, backward] {
            for shift in 0..len {
                let rotated: Vec<(NodeId, EdgeId)> =
                    (0..len).map(|i| seq[(i + shift) % len]).collect();
                if best.as_ref().is_none_or(|b| rotated < *b) {
                    best = Some(rotated);
                }
            }
        }
        best.expect("a cycle has at least one rotation")
    }
}

impl PartialEq for Cycle {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}
impl Eq for Cycle {}

/// Normalized weight of a validated cycle of `graph`; the free-function
/// form revalidates, so it also works on untrusted edge sequences.
pub fn normalized_weight(graph: &WeightedGraph, edges: &[EdgeId]) -> Result<Weight> {
    let c = Cycle::from_edge_sequence(graph, edges.to_vec())?;
    Ok(c.normalized_weight())
}

/// All node-simple cycles with exactly `exact_length` edges that contain
/// edge `e`, each reported once. Lengths above `DEFAULT_LENGTH_CAP` are
/// rejected; use [`enumerate_cycles_through_edge_capped`] to override.
pub fn enumerate_cycles_through_edge(
    graph: &WeightedGraph,
    e: EdgeId,
    exact_length: usize,
) -> Result<Vec<Cycle>> {
    enumerate_cycles_through_edge_capped(graph, e, exact_length, DEFAULT_LENGTH_CAP)
}

/// Same as [`enumerate_cycles_through_edge`] with an explicit length cap.
pub fn enumerate_cycles_through_edge_capped(
    graph: &WeightedGraph,
    e: EdgeId,
    exact_length: usize,
    cap: usize,
) -> Result<Vec<Cycle>> {
    if exact_length > cap {
        return Err(Error::EnumerationBudget {
            requested: exact_length,
            cap,
        });
    }
    let min_len = if graph.allows_parallel() { 2 } else { 3 };
    if exact_length < min_len {
        return Err(Error::Parameter(format!(
            "cycle length {exact_length} below the minimum {min_len}"
        )));
    }
    graph.edge(e)?;
    Ok(paths_closing_cycle(graph, e, exact_length, 0))
}

/// All node-simple cycles with exactly `exact_length` edges, each reported
/// once (anchored at the cycle's minimum edge id).
pub fn enumerate_cycles_of_length(
    graph: &WeightedGraph,
    exact_length: usize,
    cap: usize,
) -> Result<Vec<Cycle>> {
    if exact_length > cap {
        return Err(Error::EnumerationBudget {
            requested: exact_length,
            cap,
        });
    }
    let mut out = Vec::new();
    for anchor in 0..graph.edge_count() {
        out.extend(paths_closing_cycle(graph, anchor, exact_length, anchor + 1));
    }
    Ok(out)
}

/// DFS for simple paths of exactly `target_len - 1` edges from `e.v` back
/// to `e.u`, avoiding `e` and (when `min_other_id > 0`) any edge id below
/// `min_other_id`. Each such path closes one distinct cycle through `e`.
fn paths_closing_cycle(
    graph: &WeightedGraph,
    e: EdgeId,
    target_len: usize,
    min_other_id: usize,
) -> Vec<Cycle> {
    let anchor = &graph.edges()[e];
    let (start, goal) = (anchor.v, anchor.u);
    let mut out = Vec::new();
    let mut visited = vec![false; graph.node_count()];
    visited[start] = true;
    let mut path: Vec<EdgeId> = Vec::with_capacity(target_len);
    dfs_exact(
        graph,
        start,
        goal,
        e,
        min_other_id,
        target_len - 1,
        &mut visited,
        &mut path,
        &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs_exact(
    graph: &WeightedGraph,
    cur: NodeId,
    goal: NodeId,
    anchor: EdgeId,
    min_other_id: usize,
    remaining: usize,
    visited: &mut [bool],
    path: &mut Vec<EdgeId>,
    out: &mut Vec<Cycle>,
) {
    for &(next, edge) in graph.neighbors(cur) {
        if edge == anchor || edge < min_other_id {
            continue;
        }
        if remaining == 1 {
            if next == goal {
                let mut edges = Vec::with_capacity(path.len() + 2);
                edges.push(anchor);
                edges.extend(path.iter().copied());
                edges.push(edge);
                let cycle = Cycle::from_edge_sequence(graph, edges)
                    .expect("closed simple path forms a valid cycle");
                out.push(cycle);
            }
            continue;
        }
        if visited[next] || next == goal {
            continue;
        }
        visited[next] = true;
        path.push(edge);
        dfs_exact(
            graph,
            next,
            goal,
            anchor,
            min_other_id,
            remaining - 1,
            visited,
            path,
            out,
        );
        path.pop();
        visited[next] = false;
    }
}

/// All node-simple cycles of total weight at most `budget`, each reported
/// once. Intended for instance scans where the budget keeps the search
/// shallow; there is no length cap.
pub fn enumerate_cycles_within_weight(graph: &WeightedGraph, budget: Weight) -> Vec<Cycle> {
    let mut out = Vec::new();
    let mut visited = vec![false; graph.node_count()];
    for anchor in 0..graph.edge_count() {
        let e = &graph.edges()[anchor];
        if e.weight > budget {
            continue;
        }
        visited[e.v] = true;
        let mut path = Vec::new();
        dfs_budget(
            graph,
            e.v,
            e.u,
            anchor,
            budget - e.weight,
            &mut visited,
            &mut path,
            &mut out,
        );
        visited[e.v] = false;
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs_budget(
    graph: &WeightedGraph,
    cur: NodeId,
    goal: NodeId,
    anchor: EdgeId,
    budget: Weight,
    visited: &mut [bool],
    path: &mut Vec<EdgeId>,
    out: &mut Vec<Cycle>,
) {
    for &(next, edge) in graph.neighbors(cur) {
        if edge <= anchor {
            continue;
        }
        let w = graph.edges()[edge].weight;
        if w > budget {
            continue;
        }
        if next == goal {
            let mut edges = Vec::with_capacity(path.len() + 2);
            edges.push(anchor);
            edges.extend(path.iter().copied());
            edges.push(edge);
            let cycle = Cycle::from_edge_sequence(graph, edges)
                .expect("closed simple path forms a valid cycle");
            out.push(cycle);
            continue;
        }
        if visited[next] {
            continue;
        }
        visited[next] = true;
        path.push(edge);
        dfs_budget(graph, next, goal, anchor, budget - w, visited, path, out);
        path.pop();
        visited[next] = false;
    }
}
