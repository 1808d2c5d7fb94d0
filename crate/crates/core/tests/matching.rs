mod common;

use common::*;
use proptest::prelude::*;
use twobar::matching::{max_cardinality_matching, max_weight_matching, WeightedGraph};

#[test]
fn weighted_matches_enumeration_on_small_graphs() {
    let mut r = rng(11);
    for case in 0..400 {
        let n = case % 11;
        let p = [0.2, 0.5, 0.9][case % 3];
        let g = random_graph(&mut r, n, p, [1, 2, 9, 1000][case % 4]);
        let m = max_weight_matching(&g);
        assert!(is_valid_matching(&g, &m), "case {case}");
        assert_eq!(m.total_weight, brute_max_weight(&g), "case {case}: {g:?}");
    }
}

#[test]
fn cardinality_matches_enumeration_on_small_graphs() {
    let mut r = rng(12);
    for case in 0..400 {
        let n = case % 11;
        let g = random_graph(&mut r, n, [0.15, 0.35, 0.7][case % 3], 1);
        let m = max_cardinality_matching(&g);
        assert!(is_valid_matching(&g, &m), "case {case}");
        assert_eq!(m.len(), brute_max_cardinality(&g), "case {case}: {g:?}");
    }
}

#[test]
fn odd_cycles_need_blossoms() {
    // pentagon with a pendant: augmenting through the contracted cycle
    let mut g = WeightedGraph::new(6);
    for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5)] {
        g.add_edge(u, v, 1);
    }
    assert_eq!(max_cardinality_matching(&g).len(), 3);
    assert_eq!(max_weight_matching(&g).total_weight, 3);
}

#[test]
fn larger_graphs_against_each_other() {
    // with unit weights the maximum weight is the maximum cardinality
    let mut r = rng(13);
    for n in [20, 40, 60] {
        let g = random_graph(&mut r, n, 0.1, 1);
        let w = max_weight_matching(&g);
        let c = max_cardinality_matching(&g);
        assert!(is_valid_matching(&g, &w) && is_valid_matching(&g, &c));
        assert_eq!(w.total_weight as usize, c.len());
    }
}

proptest! {
    #[test]
    fn weighted_is_exact(n in 0usize..=9, edges in prop::collection::vec((0usize..9, 0usize..9, 1u32..=3), 0..30)) {
        let mut g = WeightedGraph::new(n);
        for (u, v, w) in edges {
            if u < n && v < n && u != v {
                g.add_edge(u, v, w);
            }
        }
        let m = max_weight_matching(&g);
        prop_assert!(is_valid_matching(&g, &m));
        prop_assert_eq!(m.total_weight, brute_max_weight(&g));
    }

    #[test]
    fn result_is_independent_of_insertion_order(seed in 0u64..500) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, 8, 0.5, 2);
        let mut rev = WeightedGraph::new(8);
        for e in g.edges().iter().rev() {
            rev.add_edge(e.v, e.u, e.weight);
        }
        prop_assert_eq!(max_weight_matching(&g), max_weight_matching(&rev));
        prop_assert_eq!(max_cardinality_matching(&g), max_cardinality_matching(&rev));
    }
}
