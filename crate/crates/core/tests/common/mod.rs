//! Brute-force oracles and generators shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twobar::matching::{Matching, WeightedGraph};
use twobar::pipeline::ArcDigraph;
use twobar::Instance;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simple graph: each pair is an edge with probability `p`,
/// weight uniform on `1..=wmax`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64, wmax: u32) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v, rng.gen_range(1..=wmax));
            }
        }
    }
    g
}

fn weight_matrix(g: &WeightedGraph) -> Vec<Vec<Option<u64>>> {
    let n = g.vertex_count();
    let mut w = vec![vec![None; n]; n];
    for e in g.edges() {
        let cur: &mut Option<u64> = &mut w[e.u][e.v];
        *cur = Some(cur.unwrap_or(0).max(u64::from(e.weight)));
        w[e.v][e.u] = w[e.u][e.v];
    }
    w
}

/// Best `(weight, size)` over all matchings under `score`, by enumeration.
fn enumerate(w: &[Vec<Option<u64>>], used: &mut [bool], score: &dyn Fn(u64) -> u64) -> u64 {
    let Some(v) = used.iter().position(|&u| !u) else {
        return 0;
    };
    used[v] = true;
    let mut best = enumerate(w, used, score);
    for u in v + 1..used.len() {
        if let (false, Some(wt)) = (used[u], w[v][u]) {
            used[u] = true;
            best = best.max(score(wt) + enumerate(w, used, score));
            used[u] = false;
        }
    }
    used[v] = false;
    best
}

pub fn brute_max_weight(g: &WeightedGraph) -> u64 {
    let w = weight_matrix(g);
    enumerate(&w, &mut vec![false; g.vertex_count()], &|wt| wt)
}

pub fn brute_max_cardinality(g: &WeightedGraph) -> usize {
    let w = weight_matrix(g);
    enumerate(&w, &mut vec![false; g.vertex_count()], &|_| 1) as usize
}

/// Pairs are disjoint edges of `g` and the weight is their sum.
pub fn is_valid_matching(g: &WeightedGraph, m: &Matching) -> bool {
    let w = weight_matrix(g);
    let mut seen = vec![false; g.vertex_count()];
    let mut total = 0;
    for &(u, v) in &m.pairs {
        if u >= v || seen[u] || seen[v] {
            return false;
        }
        seen[u] = true;
        seen[v] = true;
        match w[u][v] {
            Some(x) => total += x,
            None => return false,
        }
    }
    total == m.total_weight
}

/// Maximum number of arcs in a vertex-disjoint path cover, by enumerating
/// successor choices that keep in-degrees at most one and create no cycle.
pub fn brute_path_cover_arcs(g: &ArcDigraph) -> usize {
    fn go(
        g: &ArcDigraph,
        u: usize,
        next: &mut Vec<Option<usize>>,
        has_pred: &mut Vec<bool>,
    ) -> usize {
        if u == next.len() {
            return 0;
        }
        let mut best = go(g, u + 1, next, has_pred);
        for &v in g.successors(u) {
            if has_pred[v] {
                continue;
            }
            // following successors from v must not lead back to u
            let mut w = Some(v);
            let mut cyclic = false;
            while let Some(x) = w {
                if x == u {
                    cyclic = true;
                    break;
                }
                w = next[x];
            }
            if cyclic {
                continue;
            }
            next[u] = Some(v);
            has_pred[v] = true;
            best = best.max(1 + go(g, u + 1, next, has_pred));
            next[u] = None;
            has_pred[v] = false;
        }
        best
    }
    let n = g.vertex_count();
    go(g, 0, &mut vec![None; n], &mut vec![false; n])
}

pub fn random_digraph(rng: &mut impl Rng, n: usize, p: f64) -> ArcDigraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    ArcDigraph::from_arcs(n, &arcs)
}

/// Random instance with numerators uniform on `lo..=den`.
pub fn random_instance(rng: &mut impl Rng, n: usize, den: u64, lo: u64) -> Instance {
    let pairs: Vec<(u64, u64)> = (0..n)
        .map(|_| (rng.gen_range(lo..=den), rng.gen_range(lo..=den)))
        .collect();
    Instance::new(den, &pairs).unwrap()
}
