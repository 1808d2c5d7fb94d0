use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use super::Algorithm;
use crate::error::{Error, Result};
use crate::model::{Family, DEFAULT_DENOMINATOR};

/// How the reference value of an instance is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferencePolicy {
    /// Recorded optimum, else branch-and-bound within budget, else the
    /// combined lower bound.
    #[default]
    Auto,
    /// Brute-force optimum for instances with at most ten charts, `auto`
    /// beyond that.
    Oracle,
    /// Always the combined lower bound.
    LowerBound,
}

/// Which recorded value stands in for the optimum of generated instances.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnownRef {
    #[default]
    Opt,
    Witness,
}

/// Flat benchmark configuration, read from TOML.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    /// Glob patterns of instance files.
    pub instances: Vec<String>,
    /// Generator family; `None` to use only `instances`.
    pub family: Option<String>,
    /// Chart counts (item counts for `bpp`).
    pub sizes: Vec<usize>,
    /// Instances per size.
    pub count: usize,
    /// Instance `k` of a size uses seed `seed + k`.
    pub seed: u64,
    pub denominator: u64,
    /// Algorithm names, or `all` for every approximation algorithm.
    pub algorithms: Vec<String>,
    pub reference: ReferencePolicy,
    pub known_ref: KnownRef,
    /// Branch-and-bound node budget for references and `EXACT`.
    pub exact_nodes: Option<u64>,
    /// Branch-and-bound wall-clock budget; makes results timing dependent.
    pub exact_time_ms: Option<u64>,
    /// Per-record CSV path.
    pub output: Option<String>,
    /// Summary CSV path.
    pub summary: Option<String>,
    /// Write measured times; off keeps CSV output byte-identical across runs.
    pub timing: bool,
    /// Worker threads; 0 picks the available parallelism.
    pub workers: usize,
    pub bpp_capacity: u64,
    pub bpp_min: u64,
    pub bpp_max: u64,
    /// Draws per instance before giving up on FFD certification.
    pub bpp_attempts: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            instances: Vec::new(),
            family: None,
            sizes: Vec::new(),
            count: 1,
            seed: 0,
            denominator: DEFAULT_DENOMINATOR,
            algorithms: vec!["all".into()],
            reference: ReferencePolicy::Auto,
            known_ref: KnownRef::Opt,
            exact_nodes: Some(100_000),
            exact_time_ms: None,
            output: None,
            summary: None,
            timing: false,
            workers: 0,
            bpp_capacity: 1000,
            bpp_min: 100,
            bpp_max: 500,
            bpp_attempts: 200,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let config: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.algorithm_list()?;
        config.family()?;
        Ok(config)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Config::parse(&std::fs::read_to_string(path)?)
    }

    pub fn family(&self) -> Result<Option<Family>> {
        self.family.as_deref().map(Family::from_str).transpose()
    }

    /// Requested algorithms in canonical order, without duplicates.
    pub fn algorithm_list(&self) -> Result<Vec<Algorithm>> {
        let mut algs = Vec::new();
        for name in &self.algorithms {
            if name.eq_ignore_ascii_case("all") {
                algs.extend(Algorithm::APPROXIMATIONS);
            } else {
                algs.push(name.parse()?);
            }
        }
        if algs.is_empty() {
            return Err(Error::Config("no algorithms requested".into()));
        }
        algs.sort();
        algs.dedup();
        Ok(algs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let c = Config::parse("").unwrap();
        assert_eq!(c, Config::default());
        let c = Config::parse(
            r#"
            family = "big"
            sizes = [25, 50]
            count = 3
            seed = 7
            algorithms = ["GA_LO", "mw", "EXACT"]
            reference = "lower_bound"
            known_ref = "witness"
            "#,
        )
        .unwrap();
        assert_eq!(c.family().unwrap(), Some(Family::Big));
        assert_eq!(
            c.algorithm_list().unwrap(),
            vec![Algorithm::GaLo, Algorithm::Mw, Algorithm::Exact]
        );
        assert_eq!(c.reference, ReferencePolicy::LowerBound);
        assert_eq!(c.known_ref, KnownRef::Witness);
    }

    #[test]
    fn rejects_unknown_keys_and_names() {
        assert!(Config::parse("colour = 1").is_err());
        assert!(Config::parse("algorithms = [\"FFD\"]").is_err());
        assert!(Config::parse("family = \"tiny\"").is_err());
        assert!(Config::parse("algorithms = []").is_err());
    }
}
