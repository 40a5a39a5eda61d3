//! Undirected weighted multigraph storage.
//!
//! Graphs are built through `add_edge` and treated as read-only by every
//! algorithm in this crate afterwards, so shared references are safe to
//! use across threads.

use crate::error::{Error, Result};
use crate::weight::{format_weight, w_int, Weight};
use std::collections::HashSet;

pub type NodeId = usize;
pub type EdgeId = usize;

/// A single undirected edge. `u < v` is not required; endpoints keep the
/// orientation they were inserted with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: Weight,
}

impl Edge {
    /// Endpoint pair normalized to `(min, max)`.
    pub fn key(&self) -> (NodeId, NodeId) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }

    pub fn other(&self, n: NodeId) -> NodeId {
        if n == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected multigraph with positive rational edge weights.
///
/// Parallel edges are rejected unless the graph was created with
/// [`WeightedGraph::new_multi`]; the lower-bound construction is the one
/// place that turns them on. Self-loops are never allowed.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    node_count: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(NodeId, EdgeId)>>,
    allow_parallel: bool,
    pairs: HashSet<(NodeId, NodeId)>,
}

impl WeightedGraph {
    /// Empty graph on `node_count` nodes, parallel edges disabled.
    pub fn new(node_count: usize) -> Self {
        Self::with_mode(node_count, false)
    }

    /// Empty graph on `node_count` nodes, parallel edges enabled.
    pub fn new_multi(node_count: usize) -> Self {
        Self::with_mode(node_count, true)
    }

    fn with_mode(node_count: usize, allow_parallel: bool) -> Self {
        WeightedGraph {
            node_count,
            edges: Vec::new(),
            adj: vec![Vec::new(); node_count],
            allow_parallel,
            pairs: HashSet::new(),
        }
    }

    /// Adds an undirected edge and returns its id (ids are dense, insertion
    /// ordered).
    pub fn add_edge(&mut self, u: NodeId, v: NodeId, weight: Weight) -> Result<EdgeId> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if weight <= w_int(0) {
            return Err(Error::NonPositiveWeight(format_weight(&weight)));
        }
        let key = if u <= v { (u, v) } else { (v, u) };
        if !self.allow_parallel && !self.pairs.insert(key) {
            return Err(Error::ParallelEdge { u: key.0, v: key.1 });
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, weight });
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        Ok(id)
    }

    /// Convenience constructor from unit-weight edges.
    pub fn from_unit_edges(node_count: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut g = WeightedGraph::new(node_count);
        for &(u, v) in edges {
            g.add_edge(u, v, w_int(1))?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn allows_parallel(&self) -> bool {
        self.allow_parallel
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges.get(id).ok_or(Error::InvalidEdge {
            id,
            count: self.edges.len(),
        })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `u` as `(other endpoint, edge id)` pairs, one entry per
    /// incident edge.
    pub fn neighbors(&self, u: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adj[u]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adj[u].len()
    }

    pub fn total_weight(&self) -> Weight {
        self.edges
            .iter()
            .fold(w_int(0), |acc, e| acc + e.weight)
    }

    pub fn check_node(&self, id: NodeId) -> Result<()> {
        if id < self.node_count {
            Ok(())
        } else {
            Err(Error::InvalidNode {
                id,
                count: self.node_count,
            })
        }
    }

    /// True when every node has every weight equal to 1.
    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.weight == w_int(1))
    }

    /// Graph with all weights multiplied by `alpha > 0`. Edge ids are
    /// preserved.
    pub fn scaled(&self, alpha: Weight) -> Result<Self> {
        if alpha <= w_int(0) {
            return Err(Error::NonPositiveWeight(format_weight(&alpha)));
        }
        let mut g = Self::with_mode(self.node_count, self.allow_parallel);
        for e in &self.edges {
            g.add_edge(e.u, e.v, e.weight * alpha)?;
        }
        Ok(g)
    }

    /// Copy of the graph without the given edges. Returns the new graph and
    /// a map from new edge ids to old ones.
    pub fn without_edges(&self, removed: &std::collections::BTreeSet<EdgeId>) -> (Self, Vec<EdgeId>) {
        let mut g = Self::with_mode(self.node_count, self.allow_parallel);
        let mut old_ids = Vec::with_capacity(self.edges.len().saturating_sub(removed.len()));
        for (id, e) in self.edges.iter().enumerate() {
            if !removed.contains(&id) {
                g.add_edge(e.u, e.v, e.weight)
                    .expect("edges of a valid graph stay valid");
                old_ids.push(id);
            }
        }
        (g, old_ids)
    }

    /// Checks that `h` is a subgraph of `self`: same node count and every
    /// `h` edge matched (with multiplicity) by an edge of `self` with the
    /// same endpoints and weight.
    pub fn contains_subgraph(&self, h: &WeightedGraph) -> Result<()> {
        if h.node_count > self.node_count {
            return Err(Error::InvalidNode {
                id: h.node_count - 1,
                count: self.node_count,
            });
        }
        use std::collections::HashMap;
        let mut pool: HashMap<(NodeId, NodeId, Weight), usize> = HashMap::new();
        for e in &self.edges {
            let (a, b) = e.key();
            *pool.entry((a, b, e.weight)).or_insert(0) += 1;
        }
        for e in &h.edges {
            let (a, b) = e.key();
            let slot = pool.get_mut(&(a, b, e.weight));
            match slot {
                Some(c) if *c > 0 => *c -= 1,
                _ => {
                    return Err(Error::SubgraphViolation {
                        u: a,
                        v: b,
                        weight: format_weight(&e.weight),
                    })
                }
            }
        }
        Ok(())
    }

    /// Proper 2-coloring if the graph is bipartite (unreached nodes get side 0).
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.node_count];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.node_count {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adj[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// True when all nodes are reachable from node 0 (empty graphs count as
    /// connected).
    pub fn is_connected(&self) -> bool {
        self.first_stranded().is_none()
    }

    /// Smallest node unreachable from node 0, if any.
    pub fn first_stranded(&self) -> Option<NodeId> {
        if self.node_count == 0 {
            return None;
        }
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        (0..self.node_count).find(|&v| !seen[v])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::w_frac;

    #[test]
    fn rejects_self_loop() {
        let mut g = WeightedGraph::new(3);
        assert!(matches!(g.add_edge(1, 1, w_int(1)), Err(Error::SelfLoop(1))));
    }

    #[test]
    fn rejects_parallel_in_simple_mode() {
        let mut g = WeightedGraph::new(3);
        g.add_edge(0, 1, w_int(1)).unwrap();
        assert!(matches!(
            g.add_edge(1, 0, w_int(2)),
            Err(Error::ParallelEdge { u: 0, v: 1 })
        ));
    }

    #[test]
    fn allows_parallel_in_multi_mode() {
        let mut g = WeightedGraph::new_multi(2);
        g.add_edge(0, 1, w_int(1)).unwrap();
        g.add_edge(0, 1, w_int(3)).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn rejects_zero_weight() {
        let mut g = WeightedGraph::new(2);
        assert!(g.add_edge(0, 1, w_int(0)).is_err());
    }

    #[test]
    fn adjacency_lists_see_each_edge_once_per_side() {
        let g = WeightedGraph::from_unit_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        for u in 0..3 {
            assert_eq!(g.degree(u), 2);
        }
        let ids: Vec<_> = g.neighbors(0).iter().map(|&(_, e)| e).collect();
        assert_eq!(ids.len(), 2);
        assert_ne!(ids[0], ids[1]);
    }

    #[test]
    fn subgraph_check_matches_weights() {
        let mut g = WeightedGraph::new(3);
        g.add_edge(0, 1, w_frac(3, 2).unwrap()).unwrap();
        g.add_edge(1, 2, w_int(1)).unwrap();
        let mut h = WeightedGraph::new(3);
        h.add_edge(1, 0, w_frac(3, 2).unwrap()).unwrap();
        assert!(g.contains_subgraph(&h).is_ok());
        let mut bad = WeightedGraph::new(3);
        bad.add_edge(0, 1, w_int(1)).unwrap();
        assert!(g.contains_subgraph(&bad).is_err());
    }

    #[test]
    fn bipartition_of_even_cycle() {
        let g = WeightedGraph::from_unit_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let color = g.bipartition().unwrap();
        assert_ne!(color[0], color[1]);
        assert_eq!(color[0], color[2]);
        let odd = WeightedGraph::from_unit_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(odd.bipartition().is_none());
    }

    #[test]
    fn without_edges_keeps_id_map() {
        let g = WeightedGraph::from_unit_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let removed: std::collections::BTreeSet<_> = [1usize].into_iter().collect();
        let (h, old) = g.without_edges(&removed);
        assert_eq!(h.edge_count(), 3);
        assert_eq!(old, vec![0, 2, 3]);
    }
}
