//! Bin-packing inputs and their transformation into chart instances whose
//! optimum is known from the bin-packing optimum.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{evaluate_packing, Family, Instance, Placement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BppInstance {
    pub sizes: Vec<u64>,
    pub capacity: u64,
}

impl BppInstance {
    pub fn new(sizes: Vec<u64>, capacity: u64) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::Config("bin capacity must be positive".into()));
        }
        if let Some((i, &s)) = sizes
            .iter()
            .enumerate()
            .find(|&(_, &s)| s == 0 || s > capacity)
        {
            return Err(Error::Config(format!(
                "item {i} has size {s}, outside 1..={capacity}"
            )));
        }
        Ok(BppInstance { sizes, capacity })
    }

    /// `ceil(sum of sizes / C)`, a lower bound on the bin count.
    pub fn area_bound(&self) -> usize {
        self.sizes.iter().sum::<u64>().div_ceil(self.capacity) as usize
    }
}

/// Bins as lists of zero-based item indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BppSolution {
    pub bins: Vec<Vec<usize>>,
}

impl BppSolution {
    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    /// Checks that the bins partition the items, none is empty and none
    /// exceeds the capacity. Bin `k` is reported on line `k + 2` of the
    /// solution file.
    pub fn validate(&self, bpp: &BppInstance) -> Result<()> {
        let mut seen = vec![false; bpp.sizes.len()];
        for (k, bin) in self.bins.iter().enumerate() {
            let line = k + 2;
            if bin.is_empty() {
                return Err(Error::parse(line, format!("bin {k} is empty")));
            }
            let mut sum = 0;
            for &item in bin {
                if item >= seen.len() {
                    return Err(Error::parse(line, format!("item {item} does not exist")));
                }
                if std::mem::replace(&mut seen[item], true) {
                    return Err(Error::Partition(format!(
                        "item {item} appears twice (line {line})"
                    )));
                }
                sum += bpp.sizes[item];
            }
            if sum > bpp.capacity {
                return Err(Error::Capacity {
                    line,
                    bin: k,
                    sum,
                    capacity: bpp.capacity,
                });
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::Partition(format!("item {missing} is in no bin")));
        }
        Ok(())
    }

    /// Bin count equals the area bound, so the solution is optimal.
    pub fn is_certified(&self, bpp: &BppInstance) -> bool {
        self.bin_count() == bpp.area_bound()
    }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn int<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| {
        Error::parse(
            line,
            format!("expected a non-negative integer, got `{tok}`"),
        )
    })
}

/// Item count, capacity, then one size per line.
pub fn parse_bpp_instance(text: &str) -> Result<BppInstance> {
    let mut it = lines(text);
    let (l, count) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing item count"))?;
    let count: usize = int(count, l)?;
    let (l, cap) = it
        .next()
        .ok_or_else(|| Error::parse(l + 1, "missing capacity"))?;
    let capacity: u64 = int(cap, l)?;
    if capacity == 0 {
        return Err(Error::parse(l, "capacity must be positive"));
    }
    let mut sizes = Vec::with_capacity(count);
    let mut last = l;
    for (l, tok) in it {
        last = l;
        let s: u64 = int(tok, l)?;
        if s == 0 || s > capacity {
            return Err(Error::parse(l, format!("size {s} outside 1..={capacity}")));
        }
        sizes.push(s);
    }
    if sizes.len() != count {
        return Err(Error::parse(
            last,
            format!("expected {count} sizes, found {}", sizes.len()),
        ));
    }
    BppInstance::new(sizes, capacity)
}

/// Bin count, then one line of zero-based item indices per bin.
pub fn parse_bpp_solution(text: &str) -> Result<BppSolution> {
    let mut it = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (l, count) = it
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| Error::parse(1, "missing bin count"))?;
    let count: usize = int(count, l)?;
    let mut bins = Vec::with_capacity(count);
    for (l, line) in it.take(count) {
        let bin = line
            .split_whitespace()
            .map(|tok| int::<usize>(tok, l))
            .collect::<Result<Vec<_>>>()?;
        bins.push(bin);
    }
    if bins.len() != count {
        return Err(Error::parse(
            l + bins.len() + 1,
            format!("expected {count} bins, found {}", bins.len()),
        ));
    }
    Ok(BppSolution { bins })
}

/// Parses both files and validates the solution against the instance.
pub fn parse_bpp(instance_text: &str, solution_text: &str) -> Result<(BppInstance, BppSolution)> {
    let bpp = parse_bpp_instance(instance_text)?;
    let sol = parse_bpp_solution(solution_text)?;
    sol.validate(&bpp)?;
    Ok((bpp, sol))
}

pub fn write_bpp_instance(bpp: &BppInstance) -> String {
    let mut out = format!("{}\n{}\n", bpp.sizes.len(), bpp.capacity);
    for s in &bpp.sizes {
        let _ = writeln!(out, "{s}");
    }
    out
}

pub fn write_bpp_solution(sol: &BppSolution) -> String {
    let mut out = format!("{}\n", sol.bins.len());
    for bin in &sol.bins {
        let items: Vec<String> = bin.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", items.join(" "));
    }
    out
}

/// First Fit Decreasing: items by non-increasing size (ties by index), each
/// into the lowest-index bin with room.
pub fn ffd_bpp(bpp: &BppInstance) -> BppSolution {
    let mut order: Vec<usize> = (0..bpp.sizes.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(bpp.sizes[i]), i));
    let mut bins: Vec<Vec<usize>> = Vec::new();
    let mut free: Vec<u64> = Vec::new();
    for i in order {
        let s = bpp.sizes[i];
        match free.iter().position(|&f| f >= s) {
            Some(k) => {
                bins[k].push(i);
                free[k] -= s;
            }
            None => {
                bins.push(vec![i]);
                free.push(bpp.capacity - s);
            }
        }
    }
    BppSolution { bins }
}

/// Result of the transformation with its bookkeeping.
#[derive(Clone, Debug)]
pub struct BppTransform {
    pub instance: Instance,
    /// Chart `k` placed at the cell of the bin its first bar came from.
    pub witness: Placement,
    /// `r_i`: charts formed between sorted bins `i` and `i + 1`.
    pub residuals: Vec<usize>,
    /// Items of the last bin left unpaired.
    pub removed: usize,
    pub bins: usize,
}

/// Builds charts from an optimal bin packing with `N` bins: bins are sorted
/// by item count (ties by index), `r_1 = n_1` and `r_i = n_i - r_{i-1}`.
/// The `r_i` items of bin `i` that remain after pairing with bin `i - 1`
/// become first bars over `r_i` items of bin `i + 1`. Items within a bin
/// are taken in ascending index order; leftover items of bin `N` are
/// dropped. Heights are `size / C`.
pub fn transform_bpp_detailed(bpp: &BppInstance, sol: &BppSolution) -> Result<BppTransform> {
    sol.validate(bpp)?;
    let nbins = sol.bin_count();
    if nbins < 2 {
        return Err(Error::Config(format!(
            "transformation needs at least 2 bins, got {nbins}"
        )));
    }
    let mut order: Vec<usize> = (0..nbins).collect();
    order.sort_by_key(|&k| (sol.bins[k].len(), k));
    let bins: Vec<Vec<usize>> = order
        .iter()
        .map(|&k| {
            let mut b = sol.bins[k].clone();
            b.sort_unstable();
            b
        })
        .collect();

    let mut pairs = Vec::new();
    let mut cells = Vec::new();
    let mut residuals = Vec::with_capacity(nbins - 1);
    let mut consumed = 0; // items of bin i already used as second bars
    for i in 0..nbins - 1 {
        assert!(
            consumed <= bins[i].len(),
            "sorted bins keep residuals non-negative"
        );
        let r = bins[i].len() - consumed;
        assert!(
            r <= bins[i + 1].len(),
            "sorted bins keep residuals non-negative"
        );
        for k in 0..r {
            let a = bpp.sizes[bins[i][consumed + k]];
            let b = bpp.sizes[bins[i + 1][k]];
            pairs.push((a, b));
            cells.push(i + 1);
        }
        residuals.push(r);
        consumed = r;
    }
    let removed = bins[nbins - 1].len() - consumed;

    let mut instance = Instance::new(bpp.capacity, &pairs)?;
    let witness: Placement = cells.iter().enumerate().map(|(k, &c)| (k + 1, c)).collect();
    let eval = evaluate_packing(&instance, &witness)?;
    assert!(eval.feasible, "bin capacities bound every cell");
    instance.family = Family::Bpp;
    instance.known_opt = Some(nbins as u64 - 1);
    instance.witness_length = Some(eval.length as u64);
    Ok(BppTransform {
        instance,
        witness,
        residuals,
        removed,
        bins: nbins,
    })
}

pub fn transform_bpp(bpp: &BppInstance, sol: &BppSolution) -> Result<Instance> {
    Ok(transform_bpp_detailed(bpp, sol)?.instance)
}

/// Random sizes uniform on `lo..=hi`.
pub fn gen_bpp(
    items: usize,
    capacity: u64,
    lo: u64,
    hi: u64,
    rng: &mut impl Rng,
) -> Result<BppInstance> {
    if lo == 0 || lo > hi || hi > capacity {
        return Err(Error::Config(format!(
            "size range {lo}..={hi} must lie in 1..={capacity}"
        )));
    }
    let sizes = (0..items).map(|_| rng.gen_range(lo..=hi)).collect();
    BppInstance::new(sizes, capacity)
}

/// Draws bin-packing instances from one seeded stream until FFD meets the
/// area bound; returns the instance, its certified-optimal FFD packing and
/// the number of draws, or `None` after `attempts` failures.
pub fn gen_certified_bpp(
    items: usize,
    capacity: u64,
    (lo, hi): (u64, u64),
    seed: u64,
    attempts: usize,
) -> Result<Option<(BppInstance, BppSolution, usize)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for draw in 1..=attempts {
        let bpp = gen_bpp(items, capacity, lo, hi, &mut rng)?;
        let sol = ffd_bpp(&bpp);
        if sol.is_certified(&bpp) && sol.bin_count() >= 2 {
            return Ok(Some((bpp, sol, draw)));
        }
    }
    Ok(None)
}
