//! Plain-text instance and placement files.
//!
//! Instance: first line `n D`, then `n` lines `a b` of integer numerators,
//! optionally followed by `opt <int>`. Placement: one `id cell` line per chart.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Instance, Placement};

fn numbers(line: &str, lineno: usize) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| Error::parse(lineno, format!("expected an integer, got `{tok}`")))
        })
        .collect()
}

/// Non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let head = numbers(header, lineno)?;
    let [n, den] = head[..] else {
        return Err(Error::parse(lineno, "header must be `n D`"));
    };
    if den == 0 {
        return Err(Error::parse(lineno, "denominator must be positive"));
    }
    let mut pairs = Vec::with_capacity(n as usize);
    let mut known_opt = None;
    for (lineno, line) in lines {
        if let Some(rest) = line.strip_prefix("opt") {
            if known_opt.is_some() {
                return Err(Error::parse(lineno, "duplicate `opt` line"));
            }
            let v = numbers(rest, lineno)?;
            let [opt] = v[..] else {
                return Err(Error::parse(lineno, "expected `opt <int>`"));
            };
            known_opt = Some(opt);
            continue;
        }
        if known_opt.is_some() {
            return Err(Error::parse(lineno, "`opt` must be the last line"));
        }
        let v = numbers(line, lineno)?;
        let [a, b] = v[..] else {
            return Err(Error::parse(lineno, "expected `a b`"));
        };
        for h in [a, b] {
            if h == 0 || h > den {
                return Err(Error::parse(
                    lineno,
                    format!("height {h}/{den} is outside (0, 1]"),
                ));
            }
        }
        pairs.push((a, b));
    }
    if pairs.len() as u64 != n {
        return Err(Error::parse(
            lineno,
            format!("header announces {n} charts, found {}", pairs.len()),
        ));
    }
    let mut instance = Instance::new(den, &pairs)?;
    instance.known_opt = known_opt;
    Ok(instance)
}

pub fn write_instance(instance: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", instance.n(), instance.denominator());
    for (a, b) in instance.pairs() {
        let _ = writeln!(out, "{a} {b}");
    }
    if let Some(opt) = instance.known_opt {
        let _ = writeln!(out, "opt {opt}");
    }
    out
}

/// Reads an instance file; the label defaults to the file stem.
pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(parse_instance(&text)?.with_label(label))
}

pub fn parse_placement(text: &str) -> Result<Placement> {
    let mut placement = Placement::new();
    for (lineno, line) in content_lines(text) {
        let v = numbers(line, lineno)?;
        let [id, cell] = v[..] else {
            return Err(Error::parse(lineno, "expected `id cell`"));
        };
        if placement.insert(id as usize, cell as usize).is_some() {
            return Err(Error::parse(lineno, format!("chart {id} placed twice")));
        }
    }
    Ok(placement)
}

pub fn write_placement(placement: &Placement) -> String {
    let mut out = String::new();
    for (id, cell) in placement.iter() {
        let _ = writeln!(out, "{id} {cell}");
    }
    out
}
