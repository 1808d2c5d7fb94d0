//! Charts, instances, placements, and packing evaluation.
//!
//! Heights are stored as integer numerators over an instance-wide
//! denominator `D`, so a cell holding exactly `D` is full and feasibility
//! never depends on floating point rounding.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// 1-based chart identifier.
pub type ChartId = usize;

/// Default denominator for generated instances.
pub const DEFAULT_DENOMINATOR: u64 = 1_000_000;

/// A bar height `num / den` with `0 < num <= den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Height {
    num: u64,
    den: u64,
}

impl Height {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::InvalidHeight { num, den });
        }
        Ok(Height { num, den })
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    /// Strictly taller than one half.
    pub fn is_big(self) -> bool {
        is_big(self.num, self.den)
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[inline]
pub(crate) fn is_big(num: u64, den: u64) -> bool {
    2 * num > den
}

/// One original two-bar chart inside a (possibly merged) chart, with the
/// offset of its first bar relative to the merged chart's first bar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Part {
    pub id: ChartId,
    pub offset: usize,
}

/// A chart of `k >= 1` unit-width bars.
///
/// Raw instance charts have two bars and a single part; unions produce
/// wider charts whose parts record where every original chart sits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarChart {
    id: ChartId,
    bars: Vec<u64>,
    den: u64,
    parts: Vec<Part>,
}

impl BarChart {
    /// A raw two-bar chart with heights `a/den` and `b/den`.
    pub fn two(id: ChartId, a: u64, b: u64, den: u64) -> Result<Self> {
        Height::new(a, den)?;
        Height::new(b, den)?;
        Ok(BarChart {
            id,
            bars: vec![a, b],
            den,
            parts: vec![Part { id, offset: 0 }],
        })
    }

    /// Builds an arbitrary chart; used by union construction and tests.
    pub fn from_parts(id: ChartId, bars: Vec<u64>, den: u64, parts: Vec<Part>) -> Result<Self> {
        if bars.is_empty() {
            return Err(Error::InvalidHeight { num: 0, den });
        }
        for &b in &bars {
            Height::new(b, den)?;
        }
        Ok(BarChart {
            id,
            bars,
            den,
            parts,
        })
    }

    pub fn id(&self) -> ChartId {
        self.id
    }

    pub fn bars(&self) -> &[u64] {
        &self.bars
    }

    pub fn height(&self, i: usize) -> Height {
        Height {
            num: self.bars[i],
            den: self.den,
        }
    }

    pub fn width(&self) -> usize {
        self.bars.len()
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    /// Original chart ids in left-to-right merge order.
    pub fn provenance(&self) -> impl Iterator<Item = ChartId> + '_ {
        self.parts.iter().map(|p| p.id)
    }

    pub fn first(&self) -> u64 {
        self.bars[0]
    }

    pub fn last(&self) -> u64 {
        self.bars[self.bars.len() - 1]
    }

    /// Sum of bar numerators.
    pub fn mass(&self) -> u64 {
        self.bars.iter().sum()
    }

    /// At least one bar taller than one half.
    pub fn is_big(&self) -> bool {
        self.bars.iter().any(|&b| is_big(b, self.den))
    }

    pub(crate) fn assemble(id: ChartId, bars: Vec<u64>, den: u64, parts: Vec<Part>) -> Self {
        BarChart {
            id,
            bars,
            den,
            parts,
        }
    }
}

/// Where an instance came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Arbitrary,
    Big,
    BigNonincreasing,
    Bpp,
    #[default]
    File,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Arbitrary => "arbitrary",
            Family::Big => "big",
            Family::BigNonincreasing => "big_nonincreasing",
            Family::Bpp => "bpp",
            Family::File => "file",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arbitrary" => Ok(Family::Arbitrary),
            "big" => Ok(Family::Big),
            "big_nonincreasing" | "big-nonincreasing" => Ok(Family::BigNonincreasing),
            "bpp" => Ok(Family::Bpp),
            "file" => Ok(Family::File),
            other => Err(Error::Config(format!("unknown family `{other}`"))),
        }
    }
}

/// An ordered set of two-bar charts with ids `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    charts: Vec<BarChart>,
    den: u64,
    pub label: String,
    pub family: Family,
    pub seed: Option<u64>,
    /// Reference optimum recorded by the generator, if any.
    pub known_opt: Option<u64>,
    /// Length of a feasible packing known by construction, if any.
    pub witness_length: Option<u64>,
}

impl Instance {
    /// Builds an instance from `(a, b)` numerator pairs; ids are assigned `1..=n`.
    pub fn new(den: u64, pairs: &[(u64, u64)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyInstance);
        }
        let charts = pairs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| BarChart::two(i + 1, a, b, den))
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance {
            charts,
            den,
            label: String::new(),
            family: Family::File,
            seed: None,
            known_opt: None,
            witness_length: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn charts(&self) -> &[BarChart] {
        &self.charts
    }

    pub fn chart(&self, id: ChartId) -> Option<&BarChart> {
        id.checked_sub(1).and_then(|i| self.charts.get(i))
    }

    pub fn n(&self) -> usize {
        self.charts.len()
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// `(a, b)` numerators in id order.
    pub fn pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.charts.iter().map(|c| (c.bars[0], c.bars[1]))
    }

    pub fn all_big(&self) -> bool {
        self.charts.iter().all(BarChart::is_big)
    }
}

/// Assignment of every chart id to the cell (>= 1) holding its first bar.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Placement {
    pos: BTreeMap<ChartId, usize>,
}

impl Placement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: ChartId, cell: usize) -> Option<usize> {
        self.pos.insert(id, cell)
    }

    pub fn get(&self, id: ChartId) -> Option<usize> {
        self.pos.get(&id).copied()
    }

    pub fn len(&self) -> usize {
        self.pos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty()
    }

    /// `(id, cell)` pairs in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = (ChartId, usize)> + '_ {
        self.pos.iter().map(|(&id, &cell)| (id, cell))
    }

    /// Every position moved right by `by` cells.
    pub fn shifted(&self, by: usize) -> Placement {
        Placement {
            pos: self.pos.iter().map(|(&id, &c)| (id, c + by)).collect(),
        }
    }
}

impl FromIterator<(ChartId, usize)> for Placement {
    fn from_iter<I: IntoIterator<Item = (ChartId, usize)>>(iter: I) -> Self {
        Placement {
            pos: iter.into_iter().collect(),
        }
    }
}

/// Result of laying a placement into the strip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub feasible: bool,
    /// Number of cells holding at least one bar.
    pub length: usize,
    /// Height numerator sum per occupied cell.
    pub occupancy: BTreeMap<usize, u64>,
    pub denominator: u64,
}

impl Evaluation {
    /// First cell whose load exceeds the capacity.
    pub fn first_overflow(&self) -> Option<usize> {
        self.occupancy
            .iter()
            .find(|(_, &load)| load > self.denominator)
            .map(|(&c, _)| c)
    }
}

pub fn evaluate_packing(instance: &Instance, placement: &Placement) -> Result<Evaluation> {
    for (id, cell) in placement.iter() {
        if instance.chart(id).is_none() {
            return Err(Error::UnknownChart(id));
        }
        if cell == 0 {
            return Err(Error::ZeroCell(id));
        }
    }
    let mut occupancy = BTreeMap::new();
    for chart in instance.charts() {
        let cell = placement
            .get(chart.id())
            .ok_or(Error::MissingChart(chart.id()))?;
        for (k, &h) in chart.bars().iter().enumerate() {
            *occupancy.entry(cell + k).or_insert(0) += h;
        }
    }
    let den = instance.denominator();
    Ok(Evaluation {
        feasible: occupancy.values().all(|&load| load <= den),
        length: occupancy.len(),
        occupancy,
        denominator: den,
    })
}

/// Combinatorial lower bounds on the optimal packing length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowerBounds {
    /// Ceiling of the total bar height.
    pub area: usize,
    /// Number of bars taller than one half; no two can share a cell.
    pub big: usize,
    /// Widest chart.
    pub width: usize,
    pub combined: usize,
}

pub fn lower_bounds(instance: &Instance) -> LowerBounds {
    chart_lower_bounds(instance.charts(), instance.denominator())
}

pub(crate) fn chart_lower_bounds(charts: &[BarChart], den: u64) -> LowerBounds {
    let mass: u64 = charts.iter().map(BarChart::mass).sum();
    let area = mass.div_ceil(den) as usize;
    let big = charts
        .iter()
        .flat_map(|c| c.bars().iter())
        .filter(|&&b| is_big(b, den))
        .count();
    let width = charts.iter().map(BarChart::width).max().unwrap_or(0);
    LowerBounds {
        area,
        big,
        width,
        combined: area.max(big).max(width),
    }
}

/// Closes every gap between occupied runs so the packing occupies cells
/// `1..=length`. Charts never straddle a gap, so each run moves rigidly
/// and feasibility and length are preserved.
pub fn compact(instance: &Instance, placement: &Placement) -> Result<Placement> {
    let eval = evaluate_packing(instance, placement)?;
    // new index of every occupied cell
    let remap: BTreeMap<usize, usize> = eval
        .occupancy
        .keys()
        .enumerate()
        .map(|(i, &c)| (c, i + 1))
        .collect();
    Ok(placement
        .iter()
        .map(|(id, cell)| (id, remap[&cell]))
        .collect())
}

/// A packing produced by one of the algorithms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub placement: Placement,
    pub length: usize,
}

/// Lays charts side by side, ordered by their smallest original id, and
/// expands each into positions of its original charts.
pub(crate) fn concatenate(charts: &[BarChart]) -> Solution {
    let mut order: Vec<&BarChart> = charts.iter().collect();
    order.sort_by_key(|c| c.provenance().min().unwrap_or(c.id()));
    let mut placement = Placement::new();
    let mut cursor = 1;
    for chart in order {
        for part in chart.parts() {
            placement.insert(part.id, cursor + part.offset);
        }
        cursor += chart.width();
    }
    Solution {
        placement,
        length: cursor - 1,
    }
}
