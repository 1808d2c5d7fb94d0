//! The 1-union digraph and a vertex-disjoint path cover of it.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::model::{BarChart, ChartId};

/// Arc `u -> v` iff chart `u` can sit left of chart `v` in a 1-union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcDigraph {
    pub charts: Vec<ChartId>,
    /// Successors of every vertex, ascending.
    succ: Vec<Vec<usize>>,
}

impl ArcDigraph {
    /// Digraph on `n` vertices from an explicit arc list (no self-loops).
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Self {
        let mut succ = vec![Vec::new(); n];
        for &(u, v) in arcs {
            assert!(u != v && u < n && v < n, "invalid arc {u} -> {v}");
            succ[u].push(v);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        ArcDigraph {
            charts: (1..=n).collect(),
            succ,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.succ[u]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    /// All arcs in `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
    }

    /// Arc list `i j` (chart ids), one per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.arcs() {
            let _ = writeln!(out, "{} {}", self.charts[u], self.charts[v]);
        }
        out
    }
}

pub fn build_arc_digraph(charts: &[BarChart]) -> ArcDigraph {
    let succ = charts
        .iter()
        .enumerate()
        .map(|(u, a)| {
            charts
                .iter()
                .enumerate()
                .filter(|&(v, b)| v != u && a.last() + b.first() <= a.denominator())
                .map(|(v, _)| v)
                .collect()
        })
        .collect();
    ArcDigraph {
        charts: charts.iter().map(BarChart::id).collect(),
        succ,
    }
}

/// Vertex-disjoint directed paths covering every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCover {
    /// Vertex sequences; singletons are isolated vertices.
    pub paths: Vec<Vec<usize>>,
    pub arc_count: usize,
    /// Arcs of the maximum cycle-and-path cover the paths were cut from.
    pub cycle_cover_arcs: usize,
    /// Cycles broken in that cover.
    pub cycles: usize,
}

impl PathCover {
    /// Checks the cover against `g`: every vertex exactly once, every
    /// consecutive pair an arc, and `arc_count` consistent.
    pub fn is_valid_for(&self, g: &ArcDigraph) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        for path in &self.paths {
            for &v in path {
                if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
            if path.windows(2).any(|w| !g.has_arc(w[0], w[1])) {
                return false;
            }
        }
        let arcs: usize = self.paths.iter().map(|p| p.len().saturating_sub(1)).sum();
        seen.into_iter().all(|s| s) && arcs == self.arc_count
    }
}

const NONE: usize = usize::MAX;

/// Hopcroft-Karp on the split graph: left copy = tails, right copy = heads.
/// Returns `next[u]`, the head matched to tail `u`.
fn split_matching(g: &ArcDigraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut match_l = vec![NONE; n];
    let mut match_r = vec![NONE; n];
    let mut dist = vec![0usize; n];
    loop {
        // BFS layers from free tails
        let mut queue = VecDeque::new();
        for u in 0..n {
            if match_l[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in g.successors(u) {
                let w = match_r[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        for u in 0..n {
            if match_l[u] == NONE {
                augment(g, u, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }
    match_l
}

fn augment(
    g: &ArcDigraph,
    u: usize,
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &v in g.successors(u) {
        let w = match_r[v];
        if w == NONE || (dist[w] == dist[u] + 1 && augment(g, w, match_l, match_r, dist)) {
            match_l[u] = v;
            match_r[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Path cover from a maximum cycle-and-path cover: a maximum matching of
/// the split graph gives every vertex at most one successor and one
/// predecessor; each cycle loses its arc with the smallest tail. Path ends
/// are then greedily joined to path starts along remaining arcs.
pub fn path_cover(g: &ArcDigraph) -> PathCover {
    let n = g.vertex_count();
    let mut next = split_matching(g);
    let cycle_cover_arcs = next.iter().filter(|&&v| v != NONE).count();

    let mut prev = vec![NONE; n];
    for (u, &v) in next.iter().enumerate() {
        if v != NONE {
            prev[v] = u;
        }
    }

    // walk paths from their starts; what stays unvisited lies on cycles
    let mut visited = vec![false; n];
    for s in (0..n).filter(|&v| prev[v] == NONE) {
        let mut v = s;
        while v != NONE {
            visited[v] = true;
            v = next[v];
        }
    }
    let mut cycles = 0;
    for s in 0..n {
        if visited[s] {
            continue;
        }
        // `s` is the smallest vertex of its cycle, hence the smallest tail
        cycles += 1;
        let mut v = s;
        while !visited[v] {
            visited[v] = true;
            v = next[v];
        }
        let head = next[s];
        next[s] = NONE;
        prev[head] = NONE;
    }

    // greedy joining of path ends to path starts
    let mut start_of_end: Vec<usize> = vec![NONE; n];
    let mut end_of_start: Vec<usize> = vec![NONE; n];
    for s in (0..n).filter(|&v| prev[v] == NONE) {
        let mut e = s;
        while next[e] != NONE {
            e = next[e];
        }
        start_of_end[e] = s;
        end_of_start[s] = e;
    }
    let mut changed = true;
    while changed {
        changed = false;
        for t in 0..n {
            if next[t] != NONE || start_of_end[t] == NONE {
                continue;
            }
            let own_start = start_of_end[t];
            let target = g
                .successors(t)
                .iter()
                .copied()
                .find(|&h| prev[h] == NONE && h != own_start);
            if let Some(h) = target {
                next[t] = h;
                prev[h] = t;
                let new_end = end_of_start[h];
                start_of_end[t] = NONE;
                end_of_start[h] = NONE;
                start_of_end[new_end] = own_start;
                end_of_start[own_start] = new_end;
                changed = true;
            }
        }
    }

    let mut paths = Vec::new();
    for s in (0..n).filter(|&v| prev[v] == NONE) {
        let mut path = vec![s];
        let mut v = s;
        while next[v] != NONE {
            v = next[v];
            path.push(v);
        }
        paths.push(path);
    }
    let arc_count = n - paths.len();
    PathCover {
        paths,
        arc_count,
        cycle_cover_arcs,
        cycles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Instance;

    fn charts(pairs: &[(u64, u64)]) -> Vec<BarChart> {
        Instance::new(10, pairs).unwrap().charts().to_vec()
    }

    #[test]
    fn digraph_examples() {
        assert_eq!(
            build_arc_digraph(&charts(&[(6, 7), (7, 5)])).arcs().count(),
            0
        );
        let g = build_arc_digraph(&charts(&[(9, 2), (7, 6)]));
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(0, 1)]);
        let g = build_arc_digraph(&charts(&[(9, 2), (7, 6), (8, 3)]));
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (2, 1)]);
        assert_eq!(g.to_text(), "1 2\n1 3\n3 2\n");
    }

    #[test]
    fn three_cycle_loses_one_arc() {
        let g = ArcDigraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]);
        let c = path_cover(&g);
        assert!(c.is_valid_for(&g));
        assert_eq!((c.arc_count, c.cycle_cover_arcs, c.cycles), (2, 3, 1));
        assert_eq!(c.paths, vec![vec![1, 2, 0]]);
    }

    #[test]
    fn out_degree_limits_cover() {
        let g = ArcDigraph::from_arcs(3, &[(0, 1), (0, 2)]);
        let c = path_cover(&g);
        assert!(c.is_valid_for(&g));
        assert_eq!(c.arc_count, 1);
    }

    #[test]
    fn edgeless_cover_is_all_singletons() {
        let g = ArcDigraph::from_arcs(4, &[]);
        let c = path_cover(&g);
        assert_eq!(c.arc_count, 0);
        assert_eq!(c.paths.len(), 4);
    }

    #[test]
    fn broken_cycle_is_rejoined_when_possible() {
        // two 2-cycles {0,1} and {2,3} plus the arc 0 -> 3
        let g = ArcDigraph::from_arcs(4, &[(0, 1), (1, 0), (2, 3), (3, 2), (0, 3)]);
        let c = path_cover(&g);
        assert!(c.is_valid_for(&g));
        assert_eq!((c.cycles, c.arc_count), (2, 3));
        assert_eq!(c.paths, vec![vec![1, 0, 3, 2]]);
    }
}
