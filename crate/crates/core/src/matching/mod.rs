//! Exact matchings on general graphs and the matching-based union
//! algorithms M1_w and M_w.

mod blossom;
mod cardinality;
mod union_graph;

pub use union_graph::{
    build_union_graph, solve_m1w, solve_mw, solve_mw_traced, write_union_graph, MwSolution,
    UnionGraph, UnionRecord,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: u32,
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            edges: Vec::new(),
        }
    }

    /// Adds edge `{u, v}`; panics on loops or out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize, weight: u32) {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.n && v < self.n, "vertex out of range");
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.edges.push(Edge { u, v, weight });
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges sorted by `(u, v)` with parallel edges collapsed to the heaviest.
    fn canonical_edges(&self) -> Vec<Edge> {
        let mut edges = self.edges.clone();
        edges.sort_by_key(|e| (e.u, e.v, std::cmp::Reverse(e.weight)));
        edges.dedup_by_key(|e| (e.u, e.v));
        edges
    }
}

/// Vertex-disjoint edge set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    /// Matched pairs `(u, v)` with `u < v`, sorted.
    pub pairs: Vec<(usize, usize)>,
    pub total_weight: u64,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn from_mates(graph: &WeightedGraph, mates: &[Option<usize>]) -> Matching {
        let pairs: Vec<(usize, usize)> = mates
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect();
        let weights: std::collections::HashMap<(usize, usize), u32> = graph
            .canonical_edges()
            .into_iter()
            .map(|e| ((e.u, e.v), e.weight))
            .collect();
        let weight_of = |u: usize, v: usize| u64::from(weights.get(&(u, v)).copied().unwrap_or(0));
        let total_weight = pairs.iter().map(|&(u, v)| weight_of(u, v)).sum();
        Matching {
            pairs,
            total_weight,
        }
    }
}

/// Exact maximum-weight matching. The result depends only on the graph's
/// canonical `(u, v)`-sorted edge list.
pub fn max_weight_matching(graph: &WeightedGraph) -> Matching {
    let edges: Vec<(usize, usize, i64)> = graph
        .canonical_edges()
        .into_iter()
        .filter(|e| e.weight > 0)
        .map(|e| (e.u, e.v, i64::from(e.weight)))
        .collect();
    let mates = blossom::max_weight_mates(graph.n, &edges);
    Matching::from_mates(graph, &mates)
}

/// Exact maximum-cardinality matching, ignoring weights.
pub fn max_cardinality_matching(graph: &WeightedGraph) -> Matching {
    let mut adj = vec![Vec::new(); graph.n];
    for e in graph.canonical_edges() {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let mates = cardinality::max_cardinality_mates(&adj);
    Matching::from_mates(graph, &mates)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> WeightedGraph {
        let mut g = WeightedGraph::new(n);
        for &(u, v, w) in edges {
            g.add_edge(u, v, w);
        }
        g
    }

    #[test]
    fn weighted_examples() {
        let m = max_weight_matching(&graph(3, &[(0, 1, 2), (1, 2, 1), (2, 0, 1)]));
        assert_eq!(m.pairs, vec![(0, 1)]);
        assert_eq!(m.total_weight, 2);
        let m = max_weight_matching(&graph(4, &[(0, 1, 2), (1, 2, 1), (2, 3, 2)]));
        assert_eq!(m.pairs, vec![(0, 1), (2, 3)]);
        assert_eq!(m.total_weight, 4);
        assert!(max_weight_matching(&WeightedGraph::new(5)).is_empty());
    }

    #[test]
    fn weight_beats_cardinality() {
        // path a-b-c-d: middle edge heavy enough to beat the two outer ones
        let m = max_weight_matching(&graph(4, &[(0, 1, 2), (1, 2, 5), (2, 3, 2)]));
        assert_eq!(m.pairs, vec![(1, 2)]);
        assert_eq!(m.total_weight, 5);
    }

    #[test]
    fn cardinality_examples() {
        let star = graph(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]);
        assert_eq!(max_cardinality_matching(&star).len(), 1);
        let c4 = graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        assert_eq!(max_cardinality_matching(&c4).len(), 2);
    }

    #[test]
    fn blossom_needed_for_cardinality() {
        // triangle with a pendant on every corner; greedy (0,1) must be undone
        let g = graph(
            6,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (2, 0, 1),
                (2, 3, 1),
                (0, 4, 1),
                (1, 5, 1),
            ],
        );
        assert_eq!(max_cardinality_matching(&g).len(), 3);
        assert_eq!(max_weight_matching(&g).len(), 3);
    }
}
