//! Turning small two-bar charts into big ones by 2-unions.

use crate::matching::{max_cardinality_matching, WeightedGraph};
use crate::model::BarChart;
use crate::union::{merge_spec, merge_union, two_union};

#[derive(Clone, Debug)]
pub struct ScanFormation {
    /// Big charts in emission order.
    pub big: Vec<BarChart>,
    /// The chart still buffered when the scan ends.
    pub leftover: Option<BarChart>,
    pub unions: usize,
}

/// Single pass in id order with a one-chart buffer: small charts are
/// 2-unioned into the buffer until the merged chart becomes big.
pub fn form_big_scan(charts: &[BarChart]) -> ScanFormation {
    let mut big = Vec::with_capacity(charts.len());
    let mut buffer: Option<BarChart> = None;
    let mut unions = 0;
    for chart in charts {
        if chart.is_big() {
            big.push(chart.clone());
            continue;
        }
        buffer = match buffer.take() {
            None => Some(chart.clone()),
            Some(held) => {
                // both charts have every bar <= 1/2, so the 2-union always fits
                let merged = merge_union(&held, chart, 2).expect("two small charts always 2-union");
                unions += 1;
                if merged.is_big() {
                    big.push(merged);
                    None
                } else {
                    Some(merged)
                }
            }
        };
    }
    ScanFormation {
        big,
        leftover: buffer,
        unions,
    }
}

#[derive(Clone, Debug)]
pub struct MatchingFormation {
    /// Charts sorted by id; may still contain small charts.
    pub charts: Vec<BarChart>,
    pub unions: usize,
    /// Matching rounds that merged at least one pair.
    pub rounds: usize,
}

/// Repeated maximum-cardinality matchings on the graph of feasible 2-unions
/// until no two charts can 2-union.
pub fn form_big_matchings(charts: &[BarChart]) -> MatchingFormation {
    let mut current = charts.to_vec();
    current.sort_by_key(BarChart::id);
    let mut unions = 0;
    let mut rounds = 0;
    loop {
        let mut graph = WeightedGraph::new(current.len());
        for (u, a) in current.iter().enumerate() {
            for (v, b) in current.iter().enumerate().skip(u + 1) {
                if two_union(a, b).is_some() {
                    graph.add_edge(u, v, 1);
                }
            }
        }
        if graph.is_edgeless() {
            break;
        }
        let matching = max_cardinality_matching(&graph);
        rounds += 1;
        let mut used = vec![false; current.len()];
        let mut next = Vec::with_capacity(current.len());
        for &(u, v) in &matching.pairs {
            let spec = two_union(&current[u], &current[v]).expect("edge is a feasible 2-union");
            next.push(merge_spec(&current[u], &current[v], spec).expect("feasible"));
            used[u] = true;
            used[v] = true;
            unions += 1;
        }
        next.extend(
            current
                .iter()
                .zip(&used)
                .filter(|(_, &u)| !u)
                .map(|(c, _)| c.clone()),
        );
        next.sort_by_key(BarChart::id);
        current = next;
    }
    MatchingFormation {
        charts: current,
        unions,
        rounds,
    }
}
