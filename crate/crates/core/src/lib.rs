//! Packing two-bar charts into a strip of unit height.
//!
//! A two-bar chart is a pair of bars of heights in `(0, 1]` that must occupy
//! two consecutive cells of the strip. The total height in every cell must
//! not exceed one, and the goal is to minimise the number of occupied cells.
//! Heights are stored as integer numerators over a per-instance denominator.

pub mod error;
pub mod exact;
pub mod format;
pub mod gen;
pub mod greedy;
pub mod harness;
pub mod matching;
pub mod model;
pub mod pipeline;
pub mod union;

pub use error::{Error, Result};
pub use model::{
    compact, evaluate_packing, lower_bounds, BarChart, ChartId, Evaluation, Family, Height,
    Instance, LowerBounds, Placement, Solution, DEFAULT_DENOMINATOR,
};
