//! Bipartization and approximate regularization of base graphs.
//!
//! The preprocessing mirrors the structural normalization of
//! girth-lower-bound bases: make the graph bipartite by deleting edges
//! inside a random vertex bipartition, then repeatedly delete low-degree
//! nodes and split high-degree nodes until all degrees sit strictly
//! between d/4 and d. Neither step can create a cycle, so the girth never
//! decreases.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Certification, GirthGraph, Provenance};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::weight::{w_frac, w_int, Weight};

/// Knobs for [`regularize`].
#[derive(Debug, Clone)]
pub struct RegularizeOptions {
    /// d is set to `degree_factor` times the average degree at loop entry.
    /// The factor of 2 makes d-regular inputs fixed points (their degree
    /// falls strictly inside (d/4, d)).
    pub degree_factor: Weight,
    /// Minimum fraction of the input edges that must survive.
    pub retention: Weight,
}

impl Default for RegularizeOptions {
    fn default() -> Self {
        RegularizeOptions {
            degree_factor: w_int(2),
            retention: w_frac(1, 4).expect("1/4 is a valid weight"),
        }
    }
}

/// Random bipartition pass: assign each node a uniform side and delete
/// every edge with both endpoints on the same side. Returns the surviving
/// graph and the two-coloring. Each edge survives with probability 1/2.
pub fn bipartition_pass(graph: &WeightedGraph, rng: &mut impl Rng) -> (WeightedGraph, Vec<u8>) {
    let sides: Vec<u8> = (0..graph.node_count()).map(|_| rng.random_range(0..2u8)).collect();
    let mut out = WeightedGraph::new(graph.node_count());
    for e in graph.edges() {
        if sides[e.u] != sides[e.v] {
            out.add_edge(e.u, e.v, e.weight)
                .expect("edges of a valid graph stay valid");
        }
    }
    (out, sides)
}

struct Working {
    adj: Vec<Vec<usize>>,
    alive: Vec<bool>,
    color: Vec<u8>,
    trace: Vec<String>,
}

impl Working {
    fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    fn delete_node(&mut self, v: usize) {
        let neighbors = std::mem::take(&mut self.adj[v]);
        for w in neighbors {
            self.adj[w].retain(|&x| x != v);
        }
        self.alive[v] = false;
    }

    /// Splits `v` into two fresh nodes appended at the end, alternating
    /// its incident edges between them in adjacency order.
    fn split_node(&mut self, v: usize) {
        let neighbors = std::mem::take(&mut self.adj[v]);
        self.alive[v] = false;
        let c1 = self.adj.len();
        let c2 = c1 + 1;
        self.adj.push(Vec::new());
        self.adj.push(Vec::new());
        self.alive.push(true);
        self.alive.push(true);
        self.color.push(self.color[v]);
        self.color.push(self.color[v]);
        for (i, w) in neighbors.into_iter().enumerate() {
            let child = if i % 2 == 0 { c1 } else { c2 };
            self.adj[child].push(w);
            for x in self.adj[w].iter_mut() {
                if *x == v {
                    *x = child;
                    break;
                }
            }
        }
        self.trace
            .push(format!("split {v} -> ({c1}, {c2})"));
    }
}

/// Applies the bipartition pass (skipped when the input is already
/// bipartite) followed by the delete/split regularization loop.
///
/// With d fixed to `degree_factor` times the average degree at loop entry,
/// the loop deletes nodes of degree <= d/4 and splits nodes of degree >= d
/// (deletions exhausted first in each sweep) until every degree lies
/// strictly inside (d/4, d). Fails if fewer than `retention` of the input
/// edges survive, or if the loop does not reach a fixed point.
pub fn regularize(g: &GirthGraph, seed: u64, opts: &RegularizeOptions) -> Result<GirthGraph> {
    if g.edge_count() == 0 {
        return Err(Error::Parameter("regularize requires at least one edge".into()));
    }
    let input_edges = g.edge_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace: Vec<String> = Vec::new();

    let (graph, color) = match g.graph.bipartition() {
        Some(color) => {
            trace.push("bipartition pass skipped: input already bipartite".into());
            (g.graph.clone(), color)
        }
        None => {
            let (stripped, color) = bipartition_pass(&g.graph, &mut rng);
            trace.push(format!(
                "bipartition pass kept {}/{} edges",
                stripped.edge_count(),
                g.graph.edge_count()
            ));
            (stripped, color)
        }
    };

    let mut work = Working {
        adj: {
            let mut adj = vec![Vec::new(); graph.node_count()];
            for e in graph.edges() {
                adj[e.u].push(e.v);
                adj[e.v].push(e.u);
            }
            adj
        },
        alive: vec![true; graph.node_count()],
        color,
        trace,
    };

    let m0 = work.edge_count();
    let n0 = work.alive_count();
    if m0 == 0 || n0 == 0 {
        return Err(Error::RegularizationFailure(format!(
            "no edges survive the bipartition pass; trace: {:?}",
            work.trace
        )));
    }
    // d fixed once, at loop entry
    let d = opts.degree_factor * w_frac(2 * m0 as i64, n0 as i64)?;
    let d_quarter = d / w_int(4);
    work.trace.push(format!("d = {}", crate::weight::format_weight(&d)));

    let budget = 20 * (work.adj.len() + m0) + 100;
    let mut steps = 0usize;
    loop {
        let mut acted = false;
        // deletions first, exhaustively
        loop {
            let victim = (0..work.adj.len())
                .find(|&v| work.alive[v] && w_int(work.degree(v) as i64) <= d_quarter);
            match victim {
                Some(v) => {
                    work.trace.push(format!("delete {v} (degree {})", work.degree(v)));
                    work.delete_node(v);
                    acted = true;
                    steps += 1;
                }
                None => break,
            }
            if steps > budget {
                return Err(Error::RegularizationFailure(format!(
                    "no fixed point after {budget} steps; trace tail: {:?}",
                    work.trace.iter().rev().take(8).collect::<Vec<_>>()
                )));
            }
        }
        // then splits
        let split = (0..work.adj.len())
            .find(|&v| work.alive[v] && w_int(work.degree(v) as i64) >= d);
        match split {
            Some(v) => {
                work.split_node(v);
                steps += 1;
            }
            None => {
                if !acted {
                    break;
                }
            }
        }
        if steps > budget {
            return Err(Error::RegularizationFailure(format!(
                "no fixed point after {budget} steps; trace tail: {:?}",
                work.trace.iter().rev().take(8).collect::<Vec<_>>()
            )));
        }
    }

    // compact ids and rebuild
    let mut new_id = vec![usize::MAX; work.adj.len()];
    let mut count = 0usize;
    for (v, id) in new_id.iter_mut().enumerate() {
        if work.alive[v] {
            *id = count;
            count += 1;
        }
    }
    let mut out = WeightedGraph::new(count);
    for v in 0..work.adj.len() {
        if !work.alive[v] {
            continue;
        }
        for &w in &work.adj[v] {
            if new_id[v] < new_id[w] {
                out.add_edge(new_id[v], new_id[w], w_int(1))?;
            }
        }
    }
    let final_edges = out.edge_count();
    if w_int(final_edges as i64) < opts.retention * w_int(input_edges as i64) {
        return Err(Error::RegularizationFailure(format!(
            "retained {final_edges}/{input_edges} edges, below the threshold {}; trace: {:?}",
            crate::weight::format_weight(&opts.retention),
            work.trace
        )));
    }

    let out_color: Vec<u8> = (0..work.adj.len())
        .filter(|&v| work.alive[v])
        .map(|v| work.color[v])
        .collect();
    let (mut dmin, mut dmax) = (usize::MAX, 0usize);
    for v in 0..out.node_count() {
        dmin = dmin.min(out.degree(v));
        dmax = dmax.max(out.degree(v));
    }
    let band = if count > 0 { Some((dmin, dmax)) } else { None };

    GirthGraph::certify(
        out,
        g.girth_parameter,
        Provenance {
            generator: format!("regularize({})", g.provenance.generator),
            params: g.provenance.params.clone(),
            seed: Some(seed),
            girth_parameter: g.girth_parameter,
            certification: Certification::Construction,
            nodes: 0,
            edges: 0,
        },
        Some(out_color),
        band,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::girth::unweighted_girth;
    use crate::girth_graphs::gen_complete_bipartite;

    fn wrap(graph: WeightedGraph, kappa: usize) -> GirthGraph {
        GirthGraph::certify(
            graph,
            kappa,
            Provenance {
                generator: "test".into(),
                params: String::new(),
                seed: None,
                girth_parameter: kappa,
                certification: Certification::Construction,
                nodes: 0,
                edges: 0,
            },
            None,
            None,
        )
        .unwrap()
    }

    #[test]
    fn k33_is_a_fixed_point() {
        let g = gen_complete_bipartite(3).unwrap();
        let r = regularize(&g, 5, &RegularizeOptions::default()).unwrap();
        assert_eq!(r.node_count(), 6);
        assert_eq!(r.edge_count(), 9);
        let before: Vec<_> = g.graph.edges().iter().map(|e| (e.u, e.v)).collect();
        let after: Vec<_> = r.graph.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn star_hub_splits_until_small() {
        // K_{1,8}: hub 0, leaves 1..=8. d = 2 * 16/9; hub splits twice.
        let edges: Vec<_> = (1..=8).map(|i| (0usize, i)).collect();
        let star = WeightedGraph::from_unit_edges(9, &edges).unwrap();
        let r = regularize(&wrap(star, 1), 1, &RegularizeOptions::default()).unwrap();
        // all 8 edges survive; hub becomes four nodes of degree 2
        assert_eq!(r.edge_count(), 8);
        assert_eq!(r.node_count(), 12);
        let mut degs: Vec<_> = (0..r.node_count()).map(|v| r.graph.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2]);
    }

    #[test]
    fn bipartition_pass_on_bipartite_input_deletes_nothing() {
        let g = gen_complete_bipartite(3).unwrap();
        // already bipartite: regularize skips the pass, keeps all 9 edges
        let r = regularize(&g, 42, &RegularizeOptions::default()).unwrap();
        assert_eq!(r.edge_count(), 9);
    }

    #[test]
    fn k5_pass_keeps_about_half_over_seeds() {
        let mut edges = Vec::new();
        for u in 0..5usize {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        let k5 = WeightedGraph::from_unit_edges(5, &edges).unwrap();
        let mut total = 0.0;
        let seeds = 100;
        for seed in 0..seeds {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (kept, _) = bipartition_pass(&k5, &mut rng);
            total += kept.edge_count() as f64 / k5.edge_count() as f64;
        }
        let mean = total / seeds as f64;
        assert!((0.4..=0.6).contains(&mean), "mean retained fraction {mean}");
    }

    #[test]
    fn girth_never_decreases() {
        for seed in 0..10u64 {
            let g = crate::girth_graphs::gen_random_high_girth(20, 1, None, None, seed).unwrap();
            let before = unweighted_girth(&g.graph).map_or(usize::MAX, |x| x);
            match regularize(&g, seed, &RegularizeOptions::default()) {
                Ok(r) => {
                    let after = unweighted_girth(&r.graph).map_or(usize::MAX, |x| x);
                    assert!(after >= before, "seed {seed}: girth {before} -> {after}");
                }
                Err(Error::RegularizationFailure(_)) => {} // retention miss is a valid loud outcome
                Err(other) => panic!("unexpected error: {other}"),
            }
        }
    }

    #[test]
    fn output_degrees_sit_inside_the_band() {
        for seed in [3u64, 17, 99] {
            let g = crate::girth_graphs::gen_random_high_girth(30, 1, None, None, seed).unwrap();
            let m0 = {
                // mirror the internal d computation: pass may or may not run
                let bip = g.graph.bipartition();
                match bip {
                    Some(_) => g.graph.edge_count(),
                    None => {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        bipartition_pass(&g.graph, &mut rng).0.edge_count()
                    }
                }
            };
            if m0 == 0 {
                continue;
            }
            if let Ok(r) = regularize(&g, seed, &RegularizeOptions::default()) {
                let n0 = g.graph.node_count();
                let d = w_int(2) * w_frac(2 * m0 as i64, n0 as i64).unwrap();
                for v in 0..r.node_count() {
                    let deg = w_int(r.graph.degree(v) as i64);
                    assert!(deg > d / w_int(4), "node {v} degree too small");
                    assert!(deg < d, "node {v} degree too large");
                }
            }
        }
    }
}
