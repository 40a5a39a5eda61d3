//! Minimum spanning tree weight and spanner lightness.
//!
//! Lightness of a subgraph H of G is w(H) / w(mst(G)). The MST weight is
//! unique even when the tree itself is not, so the result does not depend
//! on tie-breaking.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, WeightedGraph};
use crate::weight::{w_int, Weight};

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Edge ids of one minimum spanning tree (Kruskal order, ties by edge id).
/// Fails with the smallest stranded node if the graph is disconnected.
pub fn mst_edge_ids(graph: &WeightedGraph) -> Result<Vec<EdgeId>> {
    if graph.node_count() == 0 {
        return Ok(Vec::new());
    }
    let mut order: Vec<EdgeId> = (0..graph.edge_count()).collect();
    order.sort_by(|&a, &b| {
        graph.edges()[a]
            .weight
            .cmp(&graph.edges()[b].weight)
            .then(a.cmp(&b))
    });
    let mut uf = UnionFind::new(graph.node_count());
    let mut tree = Vec::with_capacity(graph.node_count().saturating_sub(1));
    for id in order {
        let e = &graph.edges()[id];
        if uf.union(e.u, e.v) {
            tree.push(id);
            if tree.len() + 1 == graph.node_count() {
                break;
            }
        }
    }
    if tree.len() + 1 < graph.node_count() {
        let stranded = graph
            .first_stranded()
            .expect("incomplete tree implies a stranded node");
        return Err(Error::Disconnected { stranded });
    }
    Ok(tree)
}

/// Exact MST weight of a connected graph.
pub fn mst_weight(graph: &WeightedGraph) -> Result<Weight> {
    let tree = mst_edge_ids(graph)?;
    Ok(tree
        .iter()
        .fold(w_int(0), |acc, &id| acc + graph.edges()[id].weight))
}

/// Lightness of `h` relative to `g`: w(h) / w(mst(g)).
///
/// `h` must be a subgraph of `g` (pass the same graph twice for the
/// shorthand form) and `g` must be connected.
pub fn lightness(h: &WeightedGraph, g: &WeightedGraph) -> Result<Weight> {
    if !std::ptr::eq(h, g) {
        g.contains_subgraph(h)?;
    }
    let mst = mst_weight(g)?;
    if mst == w_int(0) {
        return Err(Error::Parameter(
            "lightness undefined: mst weight is zero (single-node graph)".into(),
        ));
    }
    Ok(h.total_weight() / mst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::weight::{w_frac, w_int};

    fn unit_cycle(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        WeightedGraph::from_unit_edges(n, &edges).unwrap()
    }

    #[test]
    fn unit_cycle_mst_is_n_minus_one() {
        assert_eq!(mst_weight(&unit_cycle(48)).unwrap(), w_int(47));
    }

    #[test]
    fn unit_triangle_mst_is_two() {
        assert_eq!(mst_weight(&unit_cycle(3)).unwrap(), w_int(2));
    }

    #[test]
    fn disconnected_names_a_stranded_node() {
        let g = WeightedGraph::from_unit_edges(4, &[(0, 1), (2, 3)]).unwrap();
        match mst_weight(&g) {
            Err(Error::Disconnected { stranded }) => assert_eq!(stranded, 2),
            other => panic!("expected disconnected error, got {other:?}"),
        }
    }

    #[test]
    fn mst_weight_ignores_tie_breaking() {
        // two distinct MSTs (equal-weight edges), same weight either way
        let mut g = WeightedGraph::new(3);
        g.add_edge(0, 1, w_int(1)).unwrap();
        g.add_edge(1, 2, w_int(1)).unwrap();
        g.add_edge(2, 0, w_int(1)).unwrap();
        assert_eq!(mst_weight(&g).unwrap(), w_int(2));
    }

    #[test]
    fn lightness_of_self_unit_cycle() {
        let g = unit_cycle(10);
        assert_eq!(lightness(&g, &g).unwrap(), w_frac(10, 9).unwrap());
    }

    #[test]
    fn lightness_of_mst_is_one() {
        let mut g = WeightedGraph::new(4);
        g.add_edge(0, 1, w_int(2)).unwrap();
        g.add_edge(1, 2, w_frac(1, 2).unwrap()).unwrap();
        g.add_edge(2, 3, w_int(3)).unwrap();
        g.add_edge(3, 0, w_int(1)).unwrap();
        let tree_ids = mst_edge_ids(&g).unwrap();
        let mut h = WeightedGraph::new(4);
        for id in tree_ids {
            let e = &g.edges()[id];
            h.add_edge(e.u, e.v, e.weight).unwrap();
        }
        assert_eq!(lightness(&h, &g).unwrap(), w_int(1));
    }

    #[test]
    fn lightness_rejects_non_subgraph() {
        let g = unit_cycle(4);
        let mut h = WeightedGraph::new(4);
        h.add_edge(0, 2, w_int(1)).unwrap();
        assert!(matches!(
            lightness(&h, &g),
            Err(Error::SubgraphViolation { .. })
        ));
    }
}
