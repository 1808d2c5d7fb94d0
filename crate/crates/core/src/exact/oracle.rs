//! Exhaustive optimum for tiny instances, independent of the branch-and-bound.

use crate::error::{Error, Result};
use crate::model::Instance;

pub const ORACLE_MAX_N: usize = 10;

/// Smallest `L` such that every chart fits with both bars inside cells
/// `1..=L`. Every optimal packing compacts into `1..=OPT`, so this equals the
/// optimal length. Each `L` is decided by plain enumeration of positions
/// with capacity checks; a chart identical to an earlier one may not sit
/// further left than it.
pub fn oracle_opt(instance: &Instance) -> Result<usize> {
    let n = instance.n();
    if n > ORACLE_MAX_N {
        return Err(Error::OracleTooLarge {
            n,
            max: ORACLE_MAX_N,
        });
    }
    let den = instance.denominator();
    let pairs: Vec<(u64, u64)> = instance.pairs().collect();
    let twin: Vec<Option<usize>> = (0..n)
        .map(|i| (0..i).rev().find(|&j| pairs[j] == pairs[i]))
        .collect();
    for len in 2..=2 * n {
        let mut load = vec![0u64; len];
        let mut pos = vec![0usize; n];
        if fits(0, &pairs, &twin, den, &mut load, &mut pos) {
            return Ok(len);
        }
    }
    unreachable!("side by side always fits in 2n cells")
}

fn fits(
    i: usize,
    pairs: &[(u64, u64)],
    twin: &[Option<usize>],
    den: u64,
    load: &mut [u64],
    pos: &mut [usize],
) -> bool {
    if i == pairs.len() {
        return true;
    }
    let (a, b) = pairs[i];
    let from = twin[i].map_or(0, |j| pos[j]);
    for p in from..load.len() - 1 {
        if load[p] + a > den || load[p + 1] + b > den {
            continue;
        }
        load[p] += a;
        load[p + 1] += b;
        pos[i] = p;
        let ok = fits(i + 1, pairs, twin, den, load, pos);
        load[p] -= a;
        load[p + 1] -= b;
        if ok {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let opt = |pairs: &[(u64, u64)]| oracle_opt(&Instance::new(10, pairs).unwrap()).unwrap();
        assert_eq!(opt(&[(6, 3)]), 2);
        assert_eq!(opt(&[(3, 7), (8, 3)]), 3);
        assert_eq!(opt(&[(3, 7), (7, 3)]), 2);
        assert_eq!(opt(&[(9, 9), (9, 9)]), 4);
        assert_eq!(opt(&[(5, 5), (5, 5)]), 2);
        assert_eq!(opt(&[(5, 5); 3]), 4);
    }

    #[test]
    fn guard() {
        let i = Instance::new(10, &[(1, 1); 11]).unwrap();
        assert!(matches!(
            oracle_opt(&i),
            Err(Error::OracleTooLarge { n: 11, max: 10 })
        ));
    }
}
