//! Algorithms A1 and A2: form big charts, then chain charts through a path
//! cover of the 1-union digraph.

mod digraph;
mod formation;

use std::fmt;

pub use digraph::{build_arc_digraph, path_cover, ArcDigraph, PathCover};
pub use formation::{form_big_matchings, form_big_scan, MatchingFormation, ScanFormation};

use crate::model::{concatenate, BarChart, Instance, Solution};
use crate::union::merge_union;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Single scan with a one-chart buffer.
    A1,
    /// Repeated maximum-cardinality 2-union matchings.
    A2,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::A1 => "A1",
            Variant::A2 => "A2",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PipelineStats {
    /// 2-unions performed while forming big charts.
    pub formation_unions: usize,
    /// Matching rounds (A2) or 1 for the scan (A1).
    pub formation_rounds: usize,
    /// Big charts entering the digraph.
    pub big_charts: usize,
    /// Small charts entering the digraph.
    pub small_charts: usize,
    /// Arcs used by the path cover, one saved cell each.
    pub arc_count: usize,
    pub cycle_cover_arcs: usize,
    pub cycles: usize,
}

#[derive(Clone, Debug)]
pub struct PipelineSolution {
    pub solution: Solution,
    pub stats: PipelineStats,
    pub digraph: ArcDigraph,
    pub cover: PathCover,
}

pub fn solve_big_pipeline(instance: &Instance, variant: Variant) -> PipelineSolution {
    let mut stats = PipelineStats::default();
    let charts: Vec<BarChart> = match variant {
        Variant::A1 => {
            let f = form_big_scan(instance.charts());
            stats.formation_unions = f.unions;
            stats.formation_rounds = 1;
            f.big.into_iter().chain(f.leftover).collect()
        }
        Variant::A2 => {
            let f = form_big_matchings(instance.charts());
            stats.formation_unions = f.unions;
            stats.formation_rounds = f.rounds;
            f.charts
        }
    };
    stats.big_charts = charts.iter().filter(|c| c.is_big()).count();
    stats.small_charts = charts.len() - stats.big_charts;

    let digraph = build_arc_digraph(&charts);
    let cover = path_cover(&digraph);
    stats.arc_count = cover.arc_count;
    stats.cycle_cover_arcs = cover.cycle_cover_arcs;
    stats.cycles = cover.cycles;

    let chained: Vec<BarChart> = cover
        .paths
        .iter()
        .map(|path| {
            let mut acc = charts[path[0]].clone();
            for &v in &path[1..] {
                acc = merge_union(&acc, &charts[v], 1).expect("cover arcs are feasible 1-unions");
            }
            acc
        })
        .collect();

    PipelineSolution {
        solution: concatenate(&chained),
        stats,
        digraph,
        cover,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::evaluate_packing;

    fn inst(pairs: &[(u64, u64)]) -> Instance {
        Instance::new(10, pairs).unwrap()
    }

    #[test]
    fn all_big_chain() {
        let i = inst(&[(9, 2), (7, 6), (8, 3)]);
        for v in [Variant::A1, Variant::A2] {
            let s = solve_big_pipeline(&i, v);
            assert_eq!(s.solution.length, 4, "{v}");
            assert_eq!(s.stats.formation_unions, 0);
            assert_eq!(s.cover.paths, vec![vec![0, 2, 1]]);
            let e = evaluate_packing(&i, &s.solution.placement).unwrap();
            assert!(e.feasible);
            assert_eq!(e.length, 4);
        }
    }

    #[test]
    fn a2_stacks_halves() {
        let s = solve_big_pipeline(&inst(&[(5, 5), (5, 5)]), Variant::A2);
        assert_eq!(s.solution.length, 2);
        assert_eq!(s.stats.big_charts, 1);
    }

    #[test]
    fn edgeless_digraph_sums_widths() {
        let i = inst(&[(9, 9), (8, 8), (7, 7)]);
        let s = solve_big_pipeline(&i, Variant::A1);
        assert_eq!(s.solution.length, 6);
        assert_eq!(s.stats.arc_count, 0);
    }

    #[test]
    fn length_accounting() {
        let i = inst(&[(2, 3), (1, 4), (6, 2), (3, 3), (9, 1), (4, 2), (2, 2)]);
        for v in [Variant::A1, Variant::A2] {
            let s = solve_big_pipeline(&i, v);
            let expected = 2 * i.n() - 2 * s.stats.formation_unions - s.stats.arc_count;
            assert_eq!(s.solution.length, expected);
            let e = evaluate_packing(&i, &s.solution.placement).unwrap();
            assert!(e.feasible);
            assert_eq!(e.length, expected);
        }
    }
}
