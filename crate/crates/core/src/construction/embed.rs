//! Layout of the spanning cycle and the random embedding of base edges.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CycleLayout, EmbeddedInstance};
use crate::cycles::Cycle;
use crate::error::{Error, Result};
use crate::girth_graphs::GirthGraph;
use crate::graph::WeightedGraph;
use crate::weight::w_int;
use num::rational::Ratio;

/// Derives an independent stream seed from a run seed (SplitMix64 step),
/// so layout and embedding consume disjoint randomness.
pub fn subseed(seed: u64, stream: u64) -> u64 {
    let mut z = seed
        .wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Builds the cluster/spacer layout for `base` with a seeded uniform
/// random bijection from base nodes to clusters.
pub fn build_layout(base: &GirthGraph, k: usize, inv_epsilon: i64, seed: u64) -> Result<CycleLayout> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    if inv_epsilon < 2 {
        return Err(Error::Parameter(format!(
            "1/epsilon must be an integer >= 2, got {inv_epsilon}"
        )));
    }
    let n = base.node_count();
    if n == 0 {
        return Err(Error::Parameter("base graph has no nodes".into()));
    }
    // desk-scale sanity cap on N = 4*k*r*n
    const MAX_CYCLE_NODES: u128 = 100_000_000;
    let cycle_nodes = 4u128 * k as u128 * inv_epsilon as u128 * n as u128;
    if cycle_nodes > MAX_CYCLE_NODES {
        return Err(Error::Parameter(format!(
            "spanning cycle would have {cycle_nodes} nodes, above the {MAX_CYCLE_NODES} cap"
        )));
    }
    let mut assignment: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    assignment.shuffle(&mut rng);
    CycleLayout::new(k, inv_epsilon, assignment)
}

/// Embeds every base edge as one weight-r edge between uniform random
/// nodes of its endpoints' clusters, on top of the unit-weight spanning
/// cycle. The embedding draws, for each base edge in id order, first the
/// offset on the `u` side and then the offset on the `v` side.
pub fn embed_edges(
    base: &GirthGraph,
    layout: CycleLayout,
    seed: u64,
    run_seed: u64,
    base_spec: &str,
) -> Result<EmbeddedInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = layout.cluster_size();
    let positions: Vec<(usize, usize)> = base
        .graph
        .edges()
        .iter()
        .map(|_| {
            let a = rng.random_range(0..size);
            let b = rng.random_range(0..size);
            (a, b)
        })
        .collect();
    embed_edges_with_positions(base, layout, &positions, run_seed, base_spec)
}

/// Deterministic embedding with explicit in-cluster offsets, one
/// `(u_offset, v_offset)` pair per base edge. This is the injection point
/// used by tests that need hand-placed images.
pub fn embed_edges_with_positions(
    base: &GirthGraph,
    layout: CycleLayout,
    positions: &[(usize, usize)],
    run_seed: u64,
    base_spec: &str,
) -> Result<EmbeddedInstance> {
    if base.node_count() != layout.cluster_count() {
        return Err(Error::Parameter(format!(
            "layout has {} clusters but base has {} nodes",
            layout.cluster_count(),
            base.node_count()
        )));
    }
    if positions.len() != base.edge_count() {
        return Err(Error::Parameter(format!(
            "{} position pairs for {} base edges",
            positions.len(),
            base.edge_count()
        )));
    }
    let size = layout.cluster_size();
    let n_cycle = layout.cycle_len();
    let r = layout.inv_epsilon();
    let mut graph = WeightedGraph::new_multi(n_cycle);
    for i in 0..n_cycle {
        graph.add_edge(i, (i + 1) % n_cycle, w_int(1))?;
    }
    let mut embedded = Vec::with_capacity(base.edge_count());
    for (b, edge) in base.graph.edges().iter().enumerate() {
        let (off_u, off_v) = positions[b];
        if off_u >= size || off_v >= size {
            return Err(Error::Parameter(format!(
                "offset pair ({off_u}, {off_v}) outside cluster size {size}"
            )));
        }
        let (start_u, _) = layout.cluster_interval(layout.cluster_of_base_node(edge.u));
        let (start_v, _) = layout.cluster_interval(layout.cluster_of_base_node(edge.v));
        let id = graph.add_edge(start_u + off_u, start_v + off_v, Ratio::new(r, 1))?;
        embedded.push(id);
    }
    Ok(EmbeddedInstance {
        graph,
        layout,
        base: base.graph.clone(),
        embedded,
        pruned: std::collections::BTreeSet::new(),
        certificate: None,
        seed: run_seed,
        base_spec: base_spec.to_string(),
    })
}

/// The cycle in H' that carries a base cycle: the image of each base edge
/// plus, inside each shared cluster, the run of spanning-cycle edges
/// joining consecutive images. Returns the cycle and sigma, the number of
/// SC edges used; its normalized weight is |x| + epsilon * sigma.
pub fn corresponding_cycle(
    inst: &EmbeddedInstance,
    x: &Cycle,
) -> Result<(Cycle, usize)> {
    // revalidate against the instance's own base
    let x = Cycle::from_edge_sequence(&inst.base, x.edges().to_vec())
        .map_err(|e| Error::InvalidCycle(format!("not a cycle of the base graph: {e}")))?;
    let layout = &inst.layout;
    let len = x.len();
    // endpoint of each image inside the cluster of the base node it serves
    let mut entry = vec![0usize; len]; // image endpoint in cluster of nodes[i]
    let mut exit = vec![0usize; len]; // image endpoint in cluster of nodes[i+1]
    for i in 0..len {
        let h_edge = inst.embedded[x.edges()[i]];
        let e = &inst.graph.edges()[h_edge];
        let cu = layout.cluster_of_base_node(x.nodes()[i]);
        let a = layout
            .cluster_of_position(e.u)
            .expect("embedded endpoints lie in clusters");
        if a == cu {
            entry[i] = e.u;
            exit[i] = e.v;
        } else {
            entry[i] = e.v;
            exit[i] = e.u;
        }
    }
    let mut edges = Vec::new();
    let mut sigma = 0usize;
    for (i, &exit_node) in exit.iter().enumerate() {
        edges.push(inst.embedded[x.edges()[i]]);
        // connect within the cluster of nodes[i+1]
        let to = entry[(i + 1) % len];
        sigma += sc_run(exit_node, to, &mut edges);
    }
    let cycle = Cycle::from_edge_sequence(&inst.graph, edges)?;
    Ok((cycle, sigma))
}

/// Pushes the spanning-cycle edges from node `from` to node `to` (both in
/// the same cluster interval, so the run never wraps) and returns the run
/// length.
fn sc_run(from: usize, to: usize, edges: &mut Vec<usize>) -> usize {
    if from <= to {
        for p in from..to {
            edges.push(p);
        }
        to - from
    } else {
        for p in (to..from).rev() {
            edges.push(p);
        }
        from - to
    }
}

/// Draws the sigma of the corresponding cycle of a base cycle of length
/// `cycle_len` without materializing the instance: per base edge, one
/// offset pair in draw order identical to [`embed_edges`]. Exact same
/// distribution as the full pipeline (checked by test).
pub fn sample_corresponding_sigma(
    cycle_len: usize,
    k: usize,
    inv_epsilon: i64,
    rng: &mut impl Rng,
) -> u64 {
    let size = k * inv_epsilon as usize;
    let mut a = vec![0usize; cycle_len];
    let mut b = vec![0usize; cycle_len];
    for i in 0..cycle_len {
        a[i] = rng.random_range(0..size);
        b[i] = rng.random_range(0..size);
    }
    let mut sigma = 0u64;
    for (j, &a_j) in a.iter().enumerate() {
        let prev = (j + cycle_len - 1) % cycle_len;
        sigma += a_j.abs_diff(b[prev]) as u64;
    }
    sigma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::testutil::cycle_base;
    use crate::girth_graphs::{gen_complete_bipartite, Certification, GirthGraph, Provenance};
    use crate::mst::mst_weight;
    use crate::weight::w_frac;

    #[test]
    fn layout_arithmetic_worked_example() {
        // k=2, eps=1/2, n=3: N=48, clusters of 4, spacers of 12
        let base = cycle_base(3);
        let layout = build_layout(&base, 2, 2, 7).unwrap();
        assert_eq!(layout.cycle_len(), 48);
        assert_eq!(layout.cluster_size(), 4);
        assert_eq!(layout.spacer_size(), 12);
        assert_eq!(layout.cluster_count(), 3);
    }

    #[test]
    fn layout_arithmetic_second_example() {
        // k=2, eps=1/4, n=10: N=320, clusters of 8, spacers of 24
        let base = cycle_base(10);
        let layout = build_layout(&base, 2, 4, 1).unwrap();
        assert_eq!(layout.cycle_len(), 320);
        assert_eq!(layout.cluster_size(), 8);
        assert_eq!(layout.spacer_size(), 24);
    }

    #[test]
    fn intervals_tile_the_cycle_alternating() {
        let base = cycle_base(5);
        let layout = build_layout(&base, 3, 2, 9).unwrap();
        let mut covered = 0usize;
        for i in 0..layout.cluster_count() {
            let (cs, cl) = layout.cluster_interval(i);
            let (ss, sl) = layout.spacer_interval(i);
            assert_eq!(cs, covered);
            assert_eq!(ss, cs + cl);
            covered = ss + sl;
        }
        assert_eq!(covered, layout.cycle_len());
        // membership agrees with the intervals
        for pos in 0..layout.cycle_len() {
            let period = layout.cluster_size() + layout.spacer_size();
            let expect = if pos % period < layout.cluster_size() {
                Some(pos / period)
            } else {
                None
            };
            assert_eq!(layout.cluster_of_position(pos), expect);
        }
    }

    #[test]
    fn empty_base_embeds_to_the_bare_cycle() {
        let graph = WeightedGraph::new(4);
        let base = GirthGraph::certify(
            graph,
            1,
            Provenance {
                generator: "empty".into(),
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
        let layout = build_layout(&base, 2, 2, 3).unwrap();
        let n = layout.cycle_len();
        let inst = embed_edges(&base, layout, 5, 5, "empty").unwrap();
        assert_eq!(inst.full_graph().edge_count(), n);
        // lightness of the bare unit cycle is N/(N-1)
        let (h, _) = inst.current_graph();
        let l = h.total_weight() / mst_weight(&h).unwrap();
        assert_eq!(l, w_frac(n as i64, n as i64 - 1).unwrap());
    }

    #[test]
    fn total_weight_identity() {
        let base = gen_complete_bipartite(3).unwrap();
        let layout = build_layout(&base, 2, 4, 11).unwrap();
        let n = layout.cycle_len() as i64;
        let m = base.edge_count() as i64;
        let inst = embed_edges(&base, layout, 13, 13, "biclique:side=3").unwrap();
        assert_eq!(inst.total_weight(), w_int(n + 4 * m));
    }

    #[test]
    fn embedded_endpoints_stay_in_their_clusters() {
        let base = gen_complete_bipartite(4).unwrap();
        let layout = build_layout(&base, 2, 3, 21).unwrap();
        let inst = embed_edges(&base, layout, 22, 22, "biclique:side=4").unwrap();
        for (b, &h) in inst.embedded().iter().enumerate() {
            let be = &base.graph.edges()[b];
            let he = &inst.full_graph().edges()[h];
            let cu = inst.layout().cluster_of_base_node(be.u);
            let cv = inst.layout().cluster_of_base_node(be.v);
            let ca = inst.layout().cluster_of_position(he.u).unwrap();
            let cb = inst.layout().cluster_of_position(he.v).unwrap();
            assert_eq!((ca, cb), (cu, cv));
            assert_eq!(he.weight, w_int(3));
        }
    }

    #[test]
    fn corresponding_cycle_with_shared_endpoints_has_sigma_zero() {
        // C_4 base; place every image at offset 0 in each cluster so the
        // images chain directly: sigma = 0 and w* = |x| = 4.
        let base = cycle_base(4);
        let layout = build_layout(&base, 2, 2, 17).unwrap();
        let positions = vec![(0, 0); 4];
        let inst = embed_edges_with_positions(&base, layout, &positions, 17, "cycle:len=4").unwrap();
        let x = Cycle::from_edge_sequence(&inst.base, vec![0, 1, 2, 3]).unwrap();
        let (xp, sigma) = corresponding_cycle(&inst, &x).unwrap();
        assert_eq!(sigma, 0);
        assert_eq!(xp.normalized_weight(), w_int(4));
    }

    #[test]
    fn corresponding_cycle_counts_intra_cluster_arcs() {
        // k=2, eps=1/4 (cluster size 8). Two clusters get image endpoints
        // at in-cluster distances 3 and 5: sigma = 8, w* = 4 + 8/4 = 6.
        let base = cycle_base(4);
        let layout = build_layout(&base, 2, 4, 23).unwrap();
        // edge i runs from node i to node i+1; cluster of node j sees
        // edge j's u-offset and edge (j-1)'s v-offset.
        let positions = vec![(3, 0), (0, 0), (0, 5), (0, 0)];
        // cluster(node 0): a_0=3 vs b_3=0 -> 3; cluster(node 3): a_3=0 vs b_2=5 -> 5
        let inst = embed_edges_with_positions(&base, layout, &positions, 23, "cycle:len=4").unwrap();
        let x = Cycle::from_edge_sequence(&inst.base, vec![0, 1, 2, 3]).unwrap();
        let (xp, sigma) = corresponding_cycle(&inst, &x).unwrap();
        assert_eq!(sigma, 8);
        assert_eq!(xp.normalized_weight(), w_int(4) + w_int(8) / w_int(4));
    }

    #[test]
    fn sigma_is_bounded_by_cluster_spans() {
        let base = cycle_base(6);
        for seed in 0..20u64 {
            let layout = build_layout(&base, 2, 3, subseed(seed, 1)).unwrap();
            let inst =
                embed_edges(&base, layout, subseed(seed, 2), seed, "cycle:len=6").unwrap();
            let x = Cycle::from_edge_sequence(&inst.base, vec![0, 1, 2, 3, 4, 5]).unwrap();
            let (_, sigma) = corresponding_cycle(&inst, &x).unwrap();
            assert!(sigma <= 6 * (inst.layout().cluster_size() - 1));
        }
    }

    #[test]
    fn spacer_crossing_cycles_weigh_at_least_3k() {
        // Build the cycle through two images whose junction cannot stay
        // inside a cluster: a 2-edge base path u-v-w embeds as two images
        // that share the cluster of v, but closing the cycle from X_w
        // back to X_u must run through spacers. Any such cycle weighs at
        // least 3k * (1/eps) in SC edges alone, so w* >= 3k + 2 here.
        let graph = WeightedGraph::from_unit_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let base = GirthGraph::certify(
            graph,
            1,
            Provenance {
                generator: "path".into(),
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
        let k = 2usize;
        let r = 3i64;
        let layout = build_layout(&base, k, r, 31).unwrap();
        let positions = vec![(0, 0), (0, 0)];
        let inst = embed_edges_with_positions(&base, layout, &positions, 31, "path").unwrap();
        // close the walk: image(0), junction in X_v (offset 0 to 0, empty),
        // image(1), then the short SC arc from exit of image(1) back to
        // the entry of image(0) around the spanning cycle
        let h0 = inst.embedded()[0];
        let h1 = inst.embedded()[1];
        let e0 = &inst.full_graph().edges()[h0];
        let e1 = &inst.full_graph().edges()[h1];
        let entry = |e: &crate::graph::Edge, cluster: usize| {
            if inst.layout().cluster_of_position(e.u) == Some(cluster) {
                (e.u, e.v)
            } else {
                (e.v, e.u)
            }
        };
        let cu = inst.layout().cluster_of_base_node(0);
        let cw = inst.layout().cluster_of_base_node(2);
        let (start, _mid0) = entry(e0, cu);
        let (end, _mid1) = entry(e1, cw);
        let mut edges = vec![h0, h1];
        // SC arc from `end` to `start`: walk whichever direction is shorter
        let n = inst.sc_edge_count();
        let fwd = (start + n - end) % n;
        if fwd <= n - fwd {
            // ascending: nodes end, end+1, ..., start
            for i in 0..fwd {
                edges.push((end + i) % n);
            }
        } else {
            // descending: nodes end, end-1, ..., start
            for i in 0..(n - fwd) {
                edges.push((end + n - 1 - i) % n);
            }
        }
        let cycle = Cycle::from_edge_sequence(inst.full_graph(), edges).unwrap();
        let floor = w_int(3 * k as i64); // one spacer forces >= 3k
        assert!(
            cycle.normalized_weight() >= floor,
            "spacer-crossing cycle has w* {} below 3k",
            cycle.normalized_weight()
        );
    }

    #[test]
    fn lightweight_sampler_matches_full_pipeline() {
        let len = 6;
        let base = cycle_base(len);
        for seed in 0..100u64 {
            let layout = build_layout(&base, 2, 4, 999).unwrap();
            let inst = embed_edges(&base, layout, seed, seed, "cycle:len=6").unwrap();
            let x =
                Cycle::from_edge_sequence(&inst.base, (0..len).collect()).unwrap();
            let (_, sigma) = corresponding_cycle(&inst, &x).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sampled = sample_corresponding_sigma(len, 2, 4, &mut rng);
            assert_eq!(sigma as u64, sampled, "seed {seed}");
        }
    }

    #[test]
    fn embedding_marginal_is_uniform_over_the_cluster() {
        // chi-square against uniform over the k*r = 8 offsets of X_u,
        // 10^4 draws; critical value for df=7 at p=0.01 is 18.475.
        let graph = WeightedGraph::from_unit_edges(2, &[(0, 1)]).unwrap();
        let base = GirthGraph::certify(
            graph,
            1,
            Provenance {
                generator: "edge".into(),
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
        let mut counts = [0u64; 8];
        let trials = 10_000u64;
        for seed in 0..trials {
            let layout = build_layout(&base, 2, 4, 42).unwrap();
            let inst = embed_edges(&base, layout, seed, seed, "edge").unwrap();
            let h = &inst.full_graph().edges()[inst.embedded()[0]];
            let cu = inst.layout().cluster_of_base_node(inst.base.edges()[0].u);
            let (start, _) = inst.layout().cluster_interval(cu);
            let endpoint = if inst.layout().cluster_of_position(h.u) == Some(cu) {
                h.u
            } else {
                h.v
            };
            counts[endpoint - start] += 1;
        }
        let expected = trials as f64 / 8.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 < 18.475, "chi-square statistic {chi2}");
    }
}
