//! GA_LO: lexicographic non-increasing preorder followed by leftmost-fit
//! placement.

use std::cmp::Reverse;

use crate::model::{ChartId, Instance, Placement, Solution};

/// Chart ids sorted so that `(a, b)` is lexicographically non-increasing,
/// ties by ascending id.
pub fn lex_order(instance: &Instance) -> Vec<ChartId> {
    let mut ids: Vec<ChartId> = (1..=instance.n()).collect();
    ids.sort_by_key(|&id| {
        let c = instance.chart(id).expect("ids are 1..=n");
        (Reverse(c.first()), Reverse(c.last()), id)
    });
    ids
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GreedyStats {
    /// Chart/position feasibility checks performed.
    pub probes: u64,
}

pub fn ga_lo(instance: &Instance) -> Solution {
    ga_lo_with_stats(instance).0
}

/// GA_LO with an instrumented probe counter.
///
/// Loads only grow as charts are fixed, so a chart's leftmost feasible cell
/// never moves left. Each unplaced chart keeps a cursor that is re-checked
/// once per step and advanced on failure, which bounds the total number of
/// probes by `O(n^2)`.
pub fn ga_lo_with_stats(instance: &Instance) -> (Solution, GreedyStats) {
    let den = instance.denominator();
    let order = lex_order(instance);
    let bars: Vec<(u64, u64)> = order
        .iter()
        .map(|&id| {
            let c = instance.chart(id).expect("ids are 1..=n");
            (c.first(), c.last())
        })
        .collect();

    // load[c] is the load of cell c + 1
    let mut load: Vec<u64> = Vec::with_capacity(2 * instance.n() + 2);
    let mut cursor = vec![0usize; order.len()];
    let mut placed = vec![false; order.len()];
    let mut placement = Placement::new();
    let mut stats = GreedyStats::default();

    let fits = |load: &[u64], cell: usize, (a, b): (u64, u64)| -> bool {
        let at = |c: usize| load.get(c).copied().unwrap_or(0);
        at(cell) + a <= den && at(cell + 1) + b <= den
    };

    for _ in 0..order.len() {
        let mut best: Option<(usize, usize)> = None;
        for k in 0..order.len() {
            if placed[k] {
                continue;
            }
            loop {
                stats.probes += 1;
                if fits(&load, cursor[k], bars[k]) {
                    break;
                }
                cursor[k] += 1;
            }
            // strict comparison keeps the earliest lex position on ties
            if best.is_none_or(|(cell, _)| cursor[k] < cell) {
                best = Some((cursor[k], k));
            }
        }
        let (cell, k) = best.expect("at least one chart is unplaced");
        if load.len() < cell + 2 {
            load.resize(cell + 2, 0);
        }
        load[cell] += bars[k].0;
        load[cell + 1] += bars[k].1;
        placed[k] = true;
        placement.insert(order[k], cell + 1);
    }

    let length = load.iter().filter(|&&l| l > 0).count();
    (Solution { placement, length }, stats)
}
