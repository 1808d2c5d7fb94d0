//! t-unions: placing two charts so that `t` cells hold bars of both.

use crate::error::{Error, Result};
use crate::model::{BarChart, ChartId, Part};

/// A union of two charts: the last `t` bars of `left` share cells with the
/// first `t` bars of `right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnionSpec {
    pub left: ChartId,
    pub right: ChartId,
    pub t: usize,
}

impl UnionSpec {
    /// Cells saved by the union.
    pub fn weight(&self) -> usize {
        self.t
    }
}

fn check_overlap(left: &BarChart, right: &BarChart, t: usize) -> Result<()> {
    if t == 0 || t > left.width().min(right.width()) {
        return Err(Error::OverlapOutOfRange {
            t,
            left: left.width(),
            right: right.width(),
        });
    }
    if left.denominator() != right.denominator() {
        return Err(Error::DenominatorMismatch(
            left.denominator(),
            right.denominator(),
        ));
    }
    Ok(())
}

/// First overlapped cell (1-based within the overlap) whose load exceeds 1.
fn violation(left: &BarChart, right: &BarChart, t: usize) -> Option<(usize, u64)> {
    let base = left.width() - t;
    let den = left.denominator();
    (0..t).find_map(|j| {
        let sum = left.bars()[base + j] + right.bars()[j];
        (sum > den).then_some((j + 1, sum))
    })
}

/// Fast path for callers that already know `1 <= t <= min widths`.
#[inline]
pub(crate) fn fits(left: &BarChart, right: &BarChart, t: usize) -> bool {
    violation(left, right, t).is_none()
}

pub fn union_feasible(left: &BarChart, right: &BarChart, t: usize) -> Result<bool> {
    check_overlap(left, right, t)?;
    Ok(fits(left, right, t))
}

/// Merges `right` onto the last `t` bars of `left`. The result carries the
/// smaller of the two ids and both charts' parts, with `right`'s offsets
/// shifted by `left.width() - t`.
pub fn merge_union(left: &BarChart, right: &BarChart, t: usize) -> Result<BarChart> {
    check_overlap(left, right, t)?;
    if let Some((cell, sum)) = violation(left, right, t) {
        return Err(Error::InfeasibleUnion {
            cell,
            sum,
            den: left.denominator(),
        });
    }
    let shift = left.width() - t;
    let mut bars = left.bars().to_vec();
    for (j, &h) in right.bars().iter().enumerate() {
        match bars.get_mut(shift + j) {
            Some(slot) => *slot += h,
            None => bars.push(h),
        }
    }
    let parts = left
        .parts()
        .iter()
        .copied()
        .chain(right.parts().iter().map(|p| Part {
            id: p.id,
            offset: p.offset + shift,
        }))
        .collect();
    Ok(BarChart::assemble(
        left.id().min(right.id()),
        bars,
        left.denominator(),
        parts,
    ))
}

/// Best union of a pair with overlap at most 2, or `None` when the charts
/// cannot share any cell. A 2-union beats a 1-union; between orientations
/// feasible at the same overlap the lower id goes left.
pub fn pair_weight(a: &BarChart, b: &BarChart) -> Option<UnionSpec> {
    let (lo, hi) = if a.id() <= b.id() { (a, b) } else { (b, a) };
    let max_t = 2.min(lo.width()).min(hi.width());
    (1..=max_t).rev().find_map(|t| {
        if fits(lo, hi, t) {
            Some(UnionSpec {
                left: lo.id(),
                right: hi.id(),
                t,
            })
        } else if fits(hi, lo, t) {
            Some(UnionSpec {
                left: hi.id(),
                right: lo.id(),
                t,
            })
        } else {
            None
        }
    })
}

/// `pair_weight` restricted to 2-unions of two-bar charts.
pub(crate) fn two_union(a: &BarChart, b: &BarChart) -> Option<UnionSpec> {
    let (lo, hi) = if a.id() <= b.id() { (a, b) } else { (b, a) };
    (lo.width() >= 2 && hi.width() >= 2 && fits(lo, hi, 2)).then(|| UnionSpec {
        left: lo.id(),
        right: hi.id(),
        t: 2,
    })
}

/// Merges two charts per `spec`, whichever argument is the left one.
pub(crate) fn merge_spec(a: &BarChart, b: &BarChart, spec: UnionSpec) -> Result<BarChart> {
    if a.id() == spec.left {
        merge_union(a, b, spec.t)
    } else {
        merge_union(b, a, spec.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(id: ChartId, bars: &[u64]) -> BarChart {
        let parts = vec![Part { id, offset: 0 }];
        BarChart::from_parts(id, bars.to_vec(), 10, parts).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        assert!(union_feasible(&c(1, &[3, 4]), &c(2, &[5, 5]), 2).unwrap());
        assert!(union_feasible(&c(1, &[6, 3]), &c(2, &[6, 8]), 1).unwrap());
        assert!(!union_feasible(&c(1, &[6, 9, 8]), &c(2, &[2, 1]), 2).unwrap());
    }

    #[test]
    fn overlap_out_of_range() {
        let (l, r) = (c(1, &[3, 4]), c(2, &[5, 5]));
        assert!(matches!(
            union_feasible(&l, &r, 0),
            Err(Error::OverlapOutOfRange { .. })
        ));
        assert!(matches!(
            union_feasible(&l, &r, 3),
            Err(Error::OverlapOutOfRange { .. })
        ));
    }

    #[test]
    fn merge_examples() {
        let m = merge_union(&c(1, &[3, 4]), &c(2, &[5, 5]), 2).unwrap();
        assert_eq!(m.bars(), &[8, 9]);
        let m = merge_union(&c(1, &[6, 3]), &c(2, &[6, 8]), 1).unwrap();
        assert_eq!(m.bars(), &[6, 9, 8]);
        assert_eq!(
            m.parts(),
            &[Part { id: 1, offset: 0 }, Part { id: 2, offset: 1 }]
        );
        let m = merge_union(&c(1, &[5, 5]), &c(2, &[5, 5]), 2).unwrap();
        assert_eq!(m.bars(), &[10, 10]);
    }

    #[test]
    fn infeasible_merge_reports_cell() {
        let err = merge_union(&c(1, &[6, 9, 8]), &c(2, &[2, 1]), 2).unwrap_err();
        assert!(matches!(
            err,
            Error::InfeasibleUnion {
                cell: 1,
                sum: 11,
                ..
            }
        ));
    }

    #[test]
    fn pair_weight_examples() {
        let w = pair_weight(&c(1, &[4, 5]), &c(2, &[5, 5])).unwrap();
        assert_eq!(w.t, 2);
        let w = pair_weight(&c(1, &[6, 3]), &c(2, &[6, 8])).unwrap();
        assert_eq!((w.t, w.left, w.right), (1, 1, 2));
        assert!(pair_weight(&c(1, &[9, 9]), &c(2, &[8, 2])).is_none());
    }

    #[test]
    fn pair_weight_reverse_orientation() {
        // only chart 2 on the left works: 0.1 + 0.6 <= 1
        let w = pair_weight(&c(1, &[6, 9]), &c(2, &[8, 1])).unwrap();
        assert_eq!((w.t, w.left, w.right), (1, 2, 1));
        // tie: both orientations fit as 1-unions, lower id left
        let w = pair_weight(&c(2, &[6, 3]), &c(1, &[6, 3])).unwrap();
        assert_eq!((w.t, w.left), (1, 1));
    }

    fn chart_strategy(id: ChartId) -> impl Strategy<Value = BarChart> {
        prop::collection::vec(1u64..=10, 2..5).prop_map(move |bars| c(id, &bars))
    }

    proptest! {
        #[test]
        fn merge_conserves_width_and_mass(l in chart_strategy(1), r in chart_strategy(2), t in 1usize..3) {
            if union_feasible(&l, &r, t).unwrap() {
                let m = merge_union(&l, &r, t).unwrap();
                prop_assert_eq!(m.width(), l.width() + r.width() - t);
                prop_assert_eq!(m.mass(), l.mass() + r.mass());
                prop_assert!(m.bars().iter().all(|&b| b <= 10));
            } else {
                prop_assert!(merge_union(&l, &r, t).is_err());
            }
        }

        #[test]
        fn two_union_of_two_bar_charts_is_symmetric(a in 1u64..=10, b in 1u64..=10, x in 1u64..=10, y in 1u64..=10) {
            let (p, q) = (c(1, &[a, b]), c(2, &[x, y]));
            prop_assert_eq!(union_feasible(&p, &q, 2).unwrap(), union_feasible(&q, &p, 2).unwrap());
        }

        #[test]
        fn pair_weight_prefers_two(l in chart_strategy(1), r in chart_strategy(2)) {
            let two = union_feasible(&l, &r, 2).unwrap() || union_feasible(&r, &l, 2).unwrap();
            let one = union_feasible(&l, &r, 1).unwrap() || union_feasible(&r, &l, 1).unwrap();
            let w = pair_weight(&l, &r).map_or(0, |s| s.weight());
            prop_assert_eq!(w, if two { 2 } else if one { 1 } else { 0 });
        }
    }
}
