//! Property-based invariants over random graphs.

use proptest::prelude::*;

use spanlab_core::girth::{unweighted_girth, weighted_girth, GirthValue};
use spanlab_core::graph::WeightedGraph;
use spanlab_core::io::{parse_edge_list, write_edge_list};
use spanlab_core::mst::{lightness, mst_weight};
use spanlab_core::oracle;
use spanlab_core::spanner::{greedy_spanner, verify_stretch};
use spanlab_core::weight::{w_frac, w_int};

/// Strategy: a connected graph on 3..=10 nodes with random rational weights.
fn connected_graph() -> impl Strategy<Value = WeightedGraph> {
    (3usize..=10, 0usize..=12, any::<u64>()).prop_map(|(n, extra, seed)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        oracle::random_connected_graph(n, extra, &mut rng)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unit_weight_mst_is_n_minus_one(g in connected_graph()) {
        let unit = g.scaled(w_int(1)).unwrap(); // clone
        let mut uniform = WeightedGraph::new(unit.node_count());
        for e in unit.edges() {
            let _ = uniform.add_edge(e.u, e.v, w_int(1));
        }
        prop_assert_eq!(mst_weight(&uniform).unwrap(), w_int(uniform.node_count() as i64 - 1));
    }

    #[test]
    fn lightness_of_spanning_subgraph_is_at_least_one(g in connected_graph()) {
        prop_assert!(lightness(&g, &g).unwrap() >= w_int(1));
        // the greedy output is a connected spanning subgraph as well
        let s = greedy_spanner(&g, w_frac(3, 2).unwrap()).unwrap();
        prop_assert!(s.lightness >= w_int(1));
        prop_assert!(s.lightness <= lightness(&g, &g).unwrap());
    }

    #[test]
    fn uniform_weights_collapse_to_unweighted_girth(g in connected_graph()) {
        let mut uniform = WeightedGraph::new(g.node_count());
        for e in g.edges() {
            let _ = uniform.add_edge(e.u, e.v, w_int(1));
        }
        let w = weighted_girth(&uniform);
        match (w.value, unweighted_girth(&uniform)) {
            (GirthValue::Infinite, None) => {}
            (GirthValue::Finite(a), Some(b)) => prop_assert_eq!(a, w_int(b as i64)),
            (a, b) => return Err(TestCaseError::fail(format!("{a:?} vs {b:?}"))),
        }
    }

    #[test]
    fn weighted_girth_is_scale_invariant(g in connected_graph(), num in 1i64..20, den in 1i64..20) {
        let alpha = w_frac(num, den).unwrap();
        let scaled = g.scaled(alpha).unwrap();
        let a = weighted_girth(&g);
        let b = weighted_girth(&scaled);
        match (a.value, b.value) {
            (GirthValue::Infinite, GirthValue::Infinite) => {}
            (GirthValue::Finite(x), GirthValue::Finite(y)) => {
                prop_assert_eq!(x, y);
                let ea: std::collections::BTreeSet<_> =
                    a.witness.unwrap().edges().iter().copied().collect();
                let eb: std::collections::BTreeSet<_> =
                    b.witness.unwrap().edges().iter().copied().collect();
                prop_assert_eq!(ea, eb);
            }
            (x, y) => return Err(TestCaseError::fail(format!("{x:?} vs {y:?}"))),
        }
    }

    #[test]
    fn greedy_contracts_hold(g in connected_graph(), t_num in 1i64..6) {
        let t = w_int(t_num);
        let result = greedy_spanner(&g, t).unwrap();
        // stretch verified
        prop_assert!(verify_stretch(&g, &result.spanner, t).unwrap().passed());
        // weighted girth beyond t + 1, exactly
        if let GirthValue::Finite(v) = result.girth.value {
            prop_assert!(v > t + w_int(1));
        }
        // idempotent
        let again = greedy_spanner(&result.spanner, t).unwrap();
        prop_assert_eq!(again.edge_count, result.edge_count);
    }

    #[test]
    fn edge_list_round_trips(g in connected_graph()) {
        let text = write_edge_list(&g);
        let parsed = parse_edge_list(&text, false).unwrap();
        prop_assert_eq!(write_edge_list(&parsed), text);
    }

    #[test]
    fn girth_witness_matches_value(g in connected_graph()) {
        let cert = weighted_girth(&g);
        if let GirthValue::Finite(v) = cert.value {
            let w = cert.witness.unwrap();
            prop_assert_eq!(w.normalized_weight(), v);
        }
    }
}
