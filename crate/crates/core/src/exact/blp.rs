//! Boolean linear program over a finite cell horizon and its LP-text export.
//!
//! Variables: `x_i_j = 1` iff chart `i` has its first bar in cell `j`
//! (`j < J`), `y_j = 1` iff cell `j` is occupied. Minimise `sum y_j` subject
//! to one position per chart and, for every cell, first bars placed in it
//! plus second bars spilling from the previous cell fitting under `y_j`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Instance, Placement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlpModel {
    horizon: usize,
    den: u64,
    a: Vec<u64>,
    b: Vec<u64>,
    /// Adds `y_j >= y_{j+1}` rows (valid because optimal packings compact).
    pub monotone_rows: bool,
}

pub fn build_blp(instance: &Instance, horizon: usize) -> Result<BlpModel> {
    if horizon < 2 {
        return Err(Error::Horizon(horizon));
    }
    let (a, b) = instance.pairs().unzip();
    Ok(BlpModel {
        horizon,
        den: instance.denominator(),
        a,
        b,
        monotone_rows: false,
    })
}

impl BlpModel {
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn x_count(&self) -> usize {
        self.n() * (self.horizon - 1)
    }

    pub fn y_count(&self) -> usize {
        self.horizon
    }

    pub fn variable_count(&self) -> usize {
        self.x_count() + self.y_count()
    }

    pub fn assignment_rows(&self) -> usize {
        self.n()
    }

    pub fn capacity_rows(&self) -> usize {
        self.horizon
    }

    pub fn constraint_count(&self) -> usize {
        let mono = if self.monotone_rows {
            self.horizon - 1
        } else {
            0
        };
        self.assignment_rows() + self.capacity_rows() + mono
    }

    /// Objective value of the 0/1 point induced by `placement`, or `None`
    /// when that point violates a row or leaves the horizon. `y_j` is set
    /// exactly on occupied cells.
    pub fn objective_of(&self, placement: &Placement) -> Option<usize> {
        let j_max = self.horizon;
        let mut load = vec![0u64; j_max + 1];
        if placement.len() != self.n() {
            return None;
        }
        for i in 0..self.n() {
            let cell = placement.get(i + 1)?;
            if cell == 0 || cell > j_max - 1 {
                return None;
            }
            load[cell] += self.a[i];
            load[cell + 1] += self.b[i];
        }
        let mut objective = 0;
        for &l in &load[1..=j_max] {
            let y = u64::from(l > 0);
            if l > self.den * y {
                return None;
            }
            objective += y as usize;
        }
        if self.monotone_rows {
            let occupied: Vec<bool> = load[1..=j_max].iter().map(|&l| l > 0).collect();
            if occupied.windows(2).any(|w| !w[0] && w[1]) {
                return None;
            }
        }
        Some(objective)
    }
}

/// Exact decimal expansion of `num / den`, or `None` if it does not terminate.
fn decimal(num: u64, den: u64) -> Option<String> {
    let g = gcd(num, den);
    let (num, mut den) = (num / g, den / g);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while den % 2 == 0 {
        den /= 2;
        twos += 1;
    }
    while den % 5 == 0 {
        den /= 5;
        fives += 1;
    }
    if den != 1 {
        return None;
    }
    // num / (2^twos 5^fives) = num * 2^(k - twos) * 5^(k - fives) / 10^k
    let k = twos.max(fives);
    let scaled = u128::from(num) * 2u128.pow(k - twos) * 5u128.pow(k - fives);
    let digits = scaled.to_string();
    if k == 0 {
        return Some(digits);
    }
    let k = k as usize;
    let padded = format!("{digits:0>width$}", width = k + 1);
    let (int, frac) = padded.split_at(padded.len() - k);
    Some(format!("{int}.{frac}"))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Writes terms as ` + c v` / ` - c v`, wrapping every eight terms.
fn push_terms(out: &mut String, terms: &[(bool, String, String)]) {
    for (k, (negative, coef, var)) in terms.iter().enumerate() {
        if k > 0 && k % 8 == 0 {
            out.push_str("\n  ");
        }
        let sign = if *negative { "-" } else { "+" };
        if k == 0 && !negative {
            out.push(' ');
        } else {
            let _ = write!(out, " {sign} ");
        }
        if coef != "1" {
            let _ = write!(out, "{coef} ");
        }
        out.push_str(var);
    }
}

/// CPLEX LP text. Capacity coefficients are exact decimals of `num / D`;
/// when some `num / D` has no finite decimal expansion every capacity row
/// is multiplied through by `D` and written with integer coefficients.
pub fn export_lp(model: &BlpModel) -> String {
    let n = model.n();
    let jmax = model.horizon;
    let x = |i: usize, j: usize| format!("x_{i}_{j}");
    let y = |j: usize| format!("y_{j}");

    let exact = model
        .a
        .iter()
        .chain(&model.b)
        .all(|&h| decimal(h, model.den).is_some());
    let coef = |h: u64| {
        if exact {
            decimal(h, model.den).expect("checked above")
        } else {
            h.to_string()
        }
    };
    let y_coef = if exact {
        "1".to_string()
    } else {
        model.den.to_string()
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "\\ two-bar chart packing: n={n} horizon={jmax} denominator={}",
        model.den
    );
    out.push_str("Minimize\n obj:");
    let objective: Vec<_> = (1..=jmax).map(|j| (false, "1".to_string(), y(j))).collect();
    push_terms(&mut out, &objective);
    out.push_str("\nSubject To\n");

    for i in 1..=n {
        let _ = write!(out, " assign_{i}:");
        let terms: Vec<_> = (1..jmax)
            .map(|j| (false, "1".to_string(), x(i, j)))
            .collect();
        push_terms(&mut out, &terms);
        out.push_str(" = 1\n");
    }
    for j in 1..=jmax {
        let _ = write!(out, " cap_{j}:");
        let mut terms = Vec::new();
        if j < jmax {
            terms.extend((1..=n).map(|i| (false, coef(model.a[i - 1]), x(i, j))));
        }
        if j > 1 {
            terms.extend((1..=n).map(|k| (false, coef(model.b[k - 1]), x(k, j - 1))));
        }
        terms.push((true, y_coef.clone(), y(j)));
        push_terms(&mut out, &terms);
        out.push_str(" <= 0\n");
    }
    if model.monotone_rows {
        for j in 1..jmax {
            let _ = writeln!(out, " mono_{j}: {} - {} >= 0", y(j), y(j + 1));
        }
    }

    out.push_str("Binary\n");
    for i in 1..=n {
        for j in 1..jmax {
            let _ = writeln!(out, " {}", x(i, j));
        }
    }
    for j in 1..=jmax {
        let _ = writeln!(out, " {}", y(j));
    }
    out.push_str("End\n");
    out
}
