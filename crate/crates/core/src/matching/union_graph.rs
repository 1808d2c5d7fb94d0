use std::collections::HashMap;
use std::fmt::Write as _;

use super::{max_weight_matching, WeightedGraph};
use crate::model::{concatenate, BarChart, ChartId, Instance, Solution};
use crate::union::{merge_spec, pair_weight, UnionSpec};

/// Graph of feasible unions among the current charts. Vertex `v` stands for
/// `charts[v]`; edge `k` of `graph` realises `unions[k]`.
#[derive(Clone, Debug)]
pub struct UnionGraph {
    pub charts: Vec<ChartId>,
    pub graph: WeightedGraph,
    pub unions: Vec<UnionSpec>,
}

pub fn build_union_graph(charts: &[BarChart]) -> UnionGraph {
    let mut graph = WeightedGraph::new(charts.len());
    let mut unions = Vec::new();
    for (u, a) in charts.iter().enumerate() {
        for (v, b) in charts.iter().enumerate().skip(u + 1) {
            if let Some(spec) = pair_weight(a, b) {
                graph.add_edge(u, v, spec.t as u32);
                unions.push(spec);
            }
        }
    }
    UnionGraph {
        charts: charts.iter().map(BarChart::id).collect(),
        graph,
        unions,
    }
}

/// Edge list `i j w` (chart ids), one edge per line.
pub fn write_union_graph(g: &UnionGraph) -> String {
    let mut out = String::new();
    for e in g.graph.edges() {
        let _ = writeln!(out, "{} {} {}", g.charts[e.u], g.charts[e.v], e.weight);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnionRecord {
    /// 1-based matching round.
    pub round: usize,
    pub spec: UnionSpec,
}

#[derive(Clone, Debug)]
pub struct MwSolution {
    pub solution: Solution,
    /// Union graphs built, including the final edgeless one.
    pub rounds: usize,
    /// Total matching weight per round that had edges.
    pub round_weights: Vec<u64>,
    pub trace: Vec<UnionRecord>,
}

impl MwSolution {
    /// Matchings actually applied.
    pub fn matchings(&self) -> usize {
        self.round_weights.len()
    }
}

/// One max-weight matching round: returns the merged chart list (sorted by
/// id) and the matching weight, or `None` when the graph has no edges.
fn matching_round(
    charts: &[BarChart],
    round: usize,
    trace: &mut Vec<UnionRecord>,
    hook: &mut impl FnMut(usize, &UnionGraph),
) -> Option<(Vec<BarChart>, u64)> {
    let g = build_union_graph(charts);
    hook(round, &g);
    if g.graph.is_edgeless() {
        return None;
    }
    let spec_of: HashMap<(usize, usize), UnionSpec> = g
        .graph
        .edges()
        .iter()
        .zip(&g.unions)
        .map(|(e, &s)| ((e.u, e.v), s))
        .collect();
    let matching = max_weight_matching(&g.graph);
    let mut used = vec![false; charts.len()];
    let mut next = Vec::with_capacity(charts.len() - matching.len());
    for &(u, v) in &matching.pairs {
        let spec = spec_of[&(u, v)];
        used[u] = true;
        used[v] = true;
        let merged = merge_spec(&charts[u], &charts[v], spec)
            .expect("union graph edges are feasible unions");
        trace.push(UnionRecord { round, spec });
        next.push(merged);
    }
    next.extend(
        charts
            .iter()
            .zip(&used)
            .filter(|(_, &u)| !u)
            .map(|(c, _)| c.clone()),
    );
    next.sort_by_key(BarChart::id);
    Some((next, matching.total_weight))
}

fn run(
    instance: &Instance,
    max_rounds: Option<usize>,
    mut hook: impl FnMut(usize, &UnionGraph),
) -> MwSolution {
    let mut charts = instance.charts().to_vec();
    let mut trace = Vec::new();
    let mut round_weights = Vec::new();
    let mut rounds = 0;
    loop {
        if max_rounds.is_some_and(|m| round_weights.len() >= m) {
            break;
        }
        rounds += 1;
        match matching_round(&charts, rounds, &mut trace, &mut hook) {
            Some((next, weight)) => {
                charts = next;
                round_weights.push(weight);
            }
            None => break,
        }
    }
    MwSolution {
        solution: concatenate(&charts),
        rounds,
        round_weights,
        trace,
    }
}

/// M1_w: a single max-weight matching on the union graph of the instance.
pub fn solve_m1w(instance: &Instance) -> MwSolution {
    run(instance, Some(1), |_, _| {})
}

/// M_w: repeated max-weight matchings until the union graph is edgeless.
pub fn solve_mw(instance: &Instance) -> MwSolution {
    run(instance, None, |_, _| {})
}

/// M_w with a callback receiving every union graph as it is built.
pub fn solve_mw_traced(instance: &Instance, hook: impl FnMut(usize, &UnionGraph)) -> MwSolution {
    run(instance, None, hook)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::evaluate_packing;

    fn inst(pairs: &[(u64, u64)]) -> Instance {
        Instance::new(10, pairs).unwrap()
    }

    fn edges(g: &UnionGraph) -> Vec<(ChartId, ChartId, u32)> {
        g.graph
            .edges()
            .iter()
            .map(|e| (g.charts[e.u], g.charts[e.v], e.weight))
            .collect()
    }

    #[test]
    fn union_graph_examples() {
        let g = build_union_graph(inst(&[(4, 5), (5, 5), (9, 9)]).charts());
        assert_eq!(edges(&g), vec![(1, 2, 2)]);
        let g = build_union_graph(inst(&[(9, 8), (7, 9), (8, 6)]).charts());
        assert!(g.graph.is_edgeless());
        let g = build_union_graph(inst(&[(3, 4), (5, 5), (6, 8)]).charts());
        assert_eq!(edges(&g), vec![(1, 2, 2), (1, 3, 1)]);
        assert_eq!(write_union_graph(&g), "1 2 2\n1 3 1\n");
    }

    #[test]
    fn m1w_examples() {
        let i = inst(&[(3, 4), (5, 5), (6, 8)]);
        let s = solve_m1w(&i);
        assert_eq!(s.solution.length, 4);
        assert_eq!(s.round_weights, vec![2]);
        assert_eq!(
            evaluate_packing(&i, &s.solution.placement).unwrap().length,
            4
        );

        let i = inst(&[(9, 9), (8, 8), (7, 7)]);
        assert_eq!(solve_m1w(&i).solution.length, 6);
        assert_eq!(solve_m1w(&inst(&[(5, 5), (5, 5)])).solution.length, 2);
    }

    #[test]
    fn mw_examples() {
        let s = solve_mw(&inst(&[(3, 4), (5, 5), (6, 8)]));
        assert_eq!((s.solution.length, s.rounds), (4, 2));

        let i = inst(&[(4, 4); 4]);
        let s = solve_mw(&i);
        assert_eq!(s.solution.length, 4);
        assert_eq!(s.round_weights, vec![4]);
        assert!(
            evaluate_packing(&i, &s.solution.placement)
                .unwrap()
                .feasible
        );

        let s = solve_mw(&inst(&[(9, 8), (7, 9), (8, 6)]));
        assert_eq!((s.solution.length, s.rounds), (6, 1));
    }

    #[test]
    fn mw_saved_cells_match_round_weights() {
        let i = inst(&[(6, 3), (6, 8), (2, 1), (1, 2), (4, 1)]);
        let s = solve_mw(&i);
        let saved: u64 = s.round_weights.iter().sum();
        assert_eq!(s.solution.length as u64, 2 * 5 - saved);
        let e = evaluate_packing(&i, &s.solution.placement).unwrap();
        assert!(e.feasible);
        assert_eq!(e.length, s.solution.length);
        assert!(s.trace.iter().all(|r| r.spec.t == 1 || r.spec.t == 2));
    }
}
