//! Randomized property checks complementing the exhaustive suites.
#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;

use orleak::algorithms::SilentConvergecast;
use orleak::graph::{disc, spanning_tree, EdgeSet, UnderlyingGraph};
use orleak::leakage::{collision_entropy, leac_det, leak_det, shannon_entropy, Distribution};

/// Random connected graph on 2..=6 nodes: a random spanning tree plus random
/// extra edges.
fn connected_graph() -> impl Strategy<Value = UnderlyingGraph> {
    (2usize..=6).prop_flat_map(|n| {
        let tree_choices: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
        let extra = prop::collection::btree_set((0..n, 0..n), 0..6);
        (tree_choices, extra).prop_map(move |(parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents
                .into_iter()
                .enumerate()
                .map(|(i, p)| (i + 1, p))
                .collect();
            for (u, v) in extra {
                if u != v
                    && !edges
                        .iter()
                        .any(|&(a, b)| (a.min(b), a.max(b)) == (u.min(v), u.max(v)))
                {
                    edges.push((u, v));
                }
            }
            UnderlyingGraph::new(n, edges).expect("tree plus extras is connected")
        })
    })
}

fn distribution() -> impl Strategy<Value = Distribution> {
    prop::collection::vec(1u32..1000, 1..12).prop_map(|counts| {
        let total: u32 = counts.iter().sum();
        Distribution::new(
            counts
                .iter()
                .map(|&c| c as f64 / total as f64)
                .collect::<Vec<_>>(),
        )
        .expect("normalized by construction")
    })
}

proptest! {
    #[test]
    fn shannon_dominates_collision_entropy(d in distribution()) {
        prop_assert!(shannon_entropy(&d) >= collision_entropy(&d) - 1e-12);
    }

    #[test]
    fn disc_bounded_by_distance_and_monotone(g in connected_graph(), mask_a: u64, mask_b: u64) {
        let m = g.edge_count();
        let free = EdgeSet::from_mask(&g, mask_a & ((1 << m) - 1));
        let bigger_mask = (mask_a | mask_b) & ((1 << m) - 1);
        let bigger = EdgeSet::from_mask(&g, bigger_mask);
        let dist = orleak::graph::all_pairs_distance(&g);
        for u in 0..g.node_count() {
            for v in 0..g.node_count() {
                let base = disc(&g, u, v, &free);
                prop_assert!(base <= dist[u][v]);
                prop_assert!(disc(&g, u, v, &bigger) <= base);
            }
        }
    }

    #[test]
    fn leakage_bounded_and_filter_never_gains(g in connected_graph(), mask: u64) {
        let m = g.edge_count();
        let f = EdgeSet::from_mask(&g, mask & ((1 << m) - 1));
        let algo = SilentConvergecast::new(spanning_tree(&g, 0).expect("root 0"));
        let leak = leak_det(&algo, &g, &f).expect("desk scale");
        let leac = leac_det(&algo, &g, &f).expect("desk scale");
        let log_n = (g.node_count() as f64).log2();
        prop_assert!(leak >= -1e-12 && leak <= log_n + 1e-9);
        prop_assert!(leac <= leak + 1e-9);
    }

    #[test]
    fn graph_json_roundtrip(g in connected_graph()) {
        let json = format!(
            r#"{{"nodes": {}, "edges": {:?}}}"#,
            g.node_count(),
            g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>()
        );
        let parsed = UnderlyingGraph::parse(&json).expect("serialized form parses");
        prop_assert_eq!(parsed, g);
    }
}
