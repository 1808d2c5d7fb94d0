//! Benchmark orchestration: algorithm dispatch, reference values, audits,
//! summaries and CSV reports.

mod config;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use config::{Config, KnownRef, ReferencePolicy};
pub use report::{summarize, write_records_csv, write_summary_csv, SummaryRow, RECORD_HEADER};

use crate::error::{Error, Result};
use crate::exact::{oracle_opt, solve_exact, ExactResult, ExactStatus, Limits, ORACLE_MAX_N};
use crate::format::read_instance;
use crate::gen::{gen_certified_bpp, gen_random, transform_bpp};
use crate::greedy::ga_lo;
use crate::matching::{solve_m1w, solve_mw};
use crate::model::{evaluate_packing, lower_bounds, Family, Instance, Placement, Solution};
use crate::pipeline::{solve_big_pipeline, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    GaLo,
    M1w,
    Mw,
    A1,
    A2,
    Exact,
}

impl Algorithm {
    pub const APPROXIMATIONS: [Algorithm; 5] = [
        Algorithm::GaLo,
        Algorithm::M1w,
        Algorithm::Mw,
        Algorithm::A1,
        Algorithm::A2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::GaLo => "GA_LO",
            Algorithm::M1w => "M1w",
            Algorithm::Mw => "Mw",
            Algorithm::A1 => "A1",
            Algorithm::A2 => "A2",
            Algorithm::Exact => "EXACT",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '-'))
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "galo" | "greedy" => Ok(Algorithm::GaLo),
            "m1w" => Ok(Algorithm::M1w),
            "mw" => Ok(Algorithm::Mw),
            "a1" => Ok(Algorithm::A1),
            "a2" => Ok(Algorithm::A2),
            "exact" => Ok(Algorithm::Exact),
            _ => Err(Error::Config(format!("unknown algorithm `{s}`"))),
        }
    }
}

/// One algorithm's output on one instance.
#[derive(Clone, Debug)]
pub struct AlgorithmRun {
    pub solution: Solution,
    /// Matching rounds (M1w, Mw), formation rounds (A1, A2), search nodes
    /// (EXACT), 0 for GA_LO.
    pub rounds: u64,
    pub elapsed: Duration,
    pub exact: Option<ExactResult>,
}

pub fn run_algorithm(instance: &Instance, algorithm: Algorithm, limits: &Limits) -> AlgorithmRun {
    let start = Instant::now();
    let (solution, rounds, exact) = match algorithm {
        Algorithm::GaLo => (ga_lo(instance), 0, None),
        Algorithm::M1w => {
            let s = solve_m1w(instance);
            (s.solution, s.rounds as u64, None)
        }
        Algorithm::Mw => {
            let s = solve_mw(instance);
            (s.solution, s.rounds as u64, None)
        }
        Algorithm::A1 | Algorithm::A2 => {
            let v = if algorithm == Algorithm::A1 {
                Variant::A1
            } else {
                Variant::A2
            };
            let s = solve_big_pipeline(instance, v);
            (s.solution, s.stats.formation_rounds as u64, None)
        }
        Algorithm::Exact => {
            let r = solve_exact(instance, limits);
            let solution = Solution {
                placement: r.placement.clone(),
                length: r.best_length,
            };
            (solution, r.node_count, Some(r))
        }
    };
    AlgorithmRun {
        solution,
        rounds,
        elapsed: start.elapsed(),
        exact,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RefKind {
    /// An optimum (proven, brute-forced, or recorded by the generator).
    Opt,
    /// A lower bound.
    Lb,
    /// The length of a packing known by construction.
    Witness,
}

impl fmt::Display for RefKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RefKind::Opt => "OPT",
            RefKind::Lb => "LB",
            RefKind::Witness => "WITNESS",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reference {
    pub value: usize,
    pub kind: RefKind,
}

/// Reference value for `instance` under `policy`. An exact run made along
/// the way is returned so it can be reused.
pub fn reference(
    instance: &Instance,
    policy: ReferencePolicy,
    known: KnownRef,
    limits: &Limits,
) -> (Reference, Option<ExactResult>) {
    let lb = Reference {
        value: lower_bounds(instance).combined,
        kind: RefKind::Lb,
    };
    if policy == ReferencePolicy::LowerBound {
        return (lb, None);
    }
    let recorded = match known {
        KnownRef::Opt => instance.known_opt.map(|v| (v, RefKind::Opt)),
        KnownRef::Witness => instance.witness_length.map(|v| (v, RefKind::Witness)),
    };
    if let Some((value, kind)) = recorded {
        return (
            Reference {
                value: value as usize,
                kind,
            },
            None,
        );
    }
    if policy == ReferencePolicy::Oracle && instance.n() <= ORACLE_MAX_N {
        let value = oracle_opt(instance).expect("size checked");
        return (
            Reference {
                value,
                kind: RefKind::Opt,
            },
            None,
        );
    }
    let r = solve_exact(instance, limits);
    let reference = if r.status == ExactStatus::Optimal {
        Reference {
            value: r.best_length,
            kind: RefKind::Opt,
        }
    } else {
        Reference {
            value: r.lower_bound.max(lb.value),
            kind: RefKind::Lb,
        }
    };
    (reference, Some(r))
}

/// One row of the report.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub label: String,
    pub n: usize,
    pub family: Family,
    pub algorithm: Algorithm,
    pub length: usize,
    pub reference: usize,
    pub ref_kind: RefKind,
    /// `length / reference`.
    pub ratio: f64,
    /// `length - reference`.
    pub abs_error: i64,
    pub elapsed_ms: f64,
    pub rounds: u64,
    pub placement: Placement,
}

/// A per-instance failure; the suite continues past it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceError {
    pub source: String,
    pub message: String,
}

/// Runs every algorithm on `instance`, audits each packing with
/// [`evaluate_packing`] and checks the lengths against the reference.
pub fn run_instance(
    instance: &Instance,
    algorithms: &[Algorithm],
    policy: ReferencePolicy,
    known: KnownRef,
    limits: &Limits,
) -> (Vec<RunRecord>, Vec<InstanceError>) {
    let (reference, mut exact) = reference(instance, policy, known, limits);
    let mut records = Vec::with_capacity(algorithms.len());
    let mut errors = Vec::new();
    let mut fail = |algorithm: Algorithm, msg: String| {
        errors.push(InstanceError {
            source: instance.label.clone(),
            message: Error::Audit {
                label: instance.label.clone(),
                algorithm: algorithm.to_string(),
                msg,
            }
            .to_string(),
        })
    };
    for &algorithm in algorithms {
        let run = match (algorithm, exact.take()) {
            (Algorithm::Exact, Some(r)) => AlgorithmRun {
                solution: Solution {
                    placement: r.placement.clone(),
                    length: r.best_length,
                },
                rounds: r.node_count,
                elapsed: r.elapsed,
                exact: Some(r),
            },
            (_, cached) => {
                exact = cached;
                run_algorithm(instance, algorithm, limits)
            }
        };
        let length = run.solution.length;
        match evaluate_packing(instance, &run.solution.placement) {
            Ok(e) if e.feasible && e.length == length => {}
            Ok(e) if !e.feasible => fail(
                algorithm,
                format!("cell {:?} overflows", e.first_overflow()),
            ),
            Ok(e) => fail(
                algorithm,
                format!("reported length {length}, evaluated {}", e.length),
            ),
            Err(err) => fail(algorithm, err.to_string()),
        }
        if reference.kind == RefKind::Lb && length < reference.value {
            fail(
                algorithm,
                format!("length {length} below lower bound {}", reference.value),
            );
        }
        records.push(RunRecord {
            label: instance.label.clone(),
            n: instance.n(),
            family: instance.family,
            algorithm,
            length,
            reference: reference.value,
            ref_kind: reference.kind,
            ratio: length as f64 / reference.value as f64,
            abs_error: length as i64 - reference.value as i64,
            elapsed_ms: run.elapsed.as_secs_f64() * 1e3,
            rounds: run.rounds,
            placement: run.solution.placement,
        });
    }
    if reference.kind == RefKind::Opt {
        if let Some(best) = records.iter().map(|r| r.length).min() {
            if best < reference.value {
                errors.push(InstanceError {
                    source: instance.label.clone(),
                    message: format!(
                        "{}: best length {best} is below the optimum {}",
                        instance.label, reference.value
                    ),
                });
            }
        }
    }
    (records, errors)
}

/// How instances are dispatched.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Data-parallel over instances; sequential when the `parallel` feature
    /// is off.
    #[default]
    Parallel,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    /// Sorted by `(label, algorithm)`.
    pub records: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
    pub errors: Vec<InstanceError>,
}

impl SuiteReport {
    pub fn records_csv(&self, timing: bool) -> Result<String> {
        let mut out = Vec::new();
        write_records_csv(&self.records, timing, &mut out)?;
        Ok(String::from_utf8(out).expect("csv output is UTF-8"))
    }

    pub fn summary_csv(&self) -> Result<String> {
        let mut out = Vec::new();
        write_summary_csv(&self.summary, &mut out)?;
        Ok(String::from_utf8(out).expect("csv output is UTF-8"))
    }
}

/// Instances named by the configuration: matching files (sorted by path),
/// then generated ones size by size.
pub fn load_instances(config: &Config) -> Result<(Vec<Instance>, Vec<InstanceError>)> {
    let mut instances = Vec::new();
    let mut errors = Vec::new();
    for pattern in &config.instances {
        let paths =
            glob::glob(pattern).map_err(|e| Error::Config(format!("bad glob `{pattern}`: {e}")))?;
        let mut paths: Vec<PathBuf> = paths
            .filter_map(|p| match p {
                Ok(p) => Some(p),
                Err(e) => {
                    errors.push(InstanceError {
                        source: e.path().display().to_string(),
                        message: e.to_string(),
                    });
                    None
                }
            })
            .collect();
        paths.sort();
        for path in paths {
            match read_instance(&path) {
                Ok(i) => instances.push(i),
                Err(e) => errors.push(InstanceError {
                    source: path.display().to_string(),
                    message: e.to_string(),
                }),
            }
        }
    }
    if let Some(family) = config.family()? {
        for &size in &config.sizes {
            for k in 0..config.count {
                let seed = config.seed.wrapping_add(k as u64);
                match generate(config, family, size, seed) {
                    Ok(i) => instances.push(i),
                    Err(e) => errors.push(InstanceError {
                        source: format!("{family}_n{size}_s{seed}"),
                        message: e.to_string(),
                    }),
                }
            }
        }
    }
    Ok((instances, errors))
}

fn generate(config: &Config, family: Family, size: usize, seed: u64) -> Result<Instance> {
    if family != Family::Bpp {
        return gen_random(size, seed, family, config.denominator);
    }
    let range = (config.bpp_min, config.bpp_max);
    let (bpp, sol, _) =
        gen_certified_bpp(size, config.bpp_capacity, range, seed, config.bpp_attempts)?
            .ok_or_else(|| {
                Error::Config(format!(
                    "no FFD-certified packing within {} draws",
                    config.bpp_attempts
                ))
            })?;
    let mut instance = transform_bpp(&bpp, &sol)?.with_label(format!("bpp_m{size}_s{seed}"));
    instance.seed = Some(seed);
    Ok(instance)
}

/// Runs the configured algorithms on a prepared instance list.
pub fn run_instances(
    instances: &[Instance],
    config: &Config,
    execution: Execution,
) -> Result<SuiteReport> {
    let algorithms = config.algorithm_list()?;
    let limits = Limits {
        nodes: config.exact_nodes,
        time: config.exact_time_ms.map(Duration::from_millis),
    };
    let one =
        |i: &Instance| run_instance(i, &algorithms, config.reference, config.known_ref, &limits);
    let results = dispatch(instances, execution, config.workers, one)?;

    let mut report = SuiteReport::default();
    for (records, errors) in results {
        report.records.extend(records);
        report.errors.extend(errors);
    }
    report
        .records
        .sort_by(|a, b| (&a.label, a.algorithm).cmp(&(&b.label, b.algorithm)));
    report.summary = summarize(&report.records);
    Ok(report)
}

/// Loads and runs everything named by `config`.
pub fn run_suite(config: &Config, execution: Execution) -> Result<SuiteReport> {
    let (instances, load_errors) = load_instances(config)?;
    let mut report = run_instances(&instances, config, execution)?;
    report.errors.splice(0..0, load_errors);
    Ok(report)
}

#[cfg(feature = "parallel")]
fn dispatch<T: Send>(
    instances: &[Instance],
    execution: Execution,
    workers: usize,
    f: impl Fn(&Instance) -> T + Sync + Send,
) -> Result<Vec<T>> {
    use rayon::prelude::*;
    match execution {
        Execution::Sequential => Ok(instances.iter().map(f).collect()),
        Execution::Parallel if workers == 0 => Ok(instances.par_iter().map(f).collect()),
        Execution::Parallel => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            Ok(pool.install(|| instances.par_iter().map(f).collect()))
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn dispatch<T: Send>(
    instances: &[Instance],
    _execution: Execution,
    _workers: usize,
    f: impl Fn(&Instance) -> T + Sync + Send,
) -> Result<Vec<T>> {
    Ok(instances.iter().map(f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names() {
        for a in Algorithm::APPROXIMATIONS
            .into_iter()
            .chain([Algorithm::Exact])
        {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!("ga-lo".parse::<Algorithm>().unwrap(), Algorithm::GaLo);
        assert!("ffd".parse::<Algorithm>().is_err());
    }

    #[test]
    fn known_optimum_is_the_reference() {
        let mut i = Instance::new(10, &[(6, 5), (4, 3)]).unwrap();
        i.known_opt = Some(2);
        i.witness_length = Some(3);
        let l = Limits::default();
        let (r, _) = reference(&i, ReferencePolicy::Auto, KnownRef::Opt, &l);
        assert_eq!((r.value, r.kind), (2, RefKind::Opt));
        let (r, _) = reference(&i, ReferencePolicy::Auto, KnownRef::Witness, &l);
        assert_eq!((r.value, r.kind), (3, RefKind::Witness));
        let (r, _) = reference(&i, ReferencePolicy::LowerBound, KnownRef::Opt, &l);
        assert_eq!(r.kind, RefKind::Lb);
    }

    #[test]
    fn structure_of_a_generated_suite() {
        let config = Config::parse(
            "family = \"arbitrary\"\nsizes = [25]\ncount = 50\nseed = 1\nreference = \"lower_bound\"",
        )
        .unwrap();
        let report = run_suite(&config, Execution::Parallel).unwrap();
        assert_eq!(report.records.len(), 250);
        assert_eq!(report.summary.len(), 5);
        assert!(report.errors.is_empty(), "{:?}", report.errors);
        assert!(report.summary.iter().all(|s| s.count == 50));
    }

    #[test]
    fn unreadable_inputs_do_not_stop_the_run() {
        let config = Config {
            instances: vec!["/nonexistent/dir/*.txt".into(), "Cargo.toml".into()],
            family: Some("big".into()),
            sizes: vec![4],
            count: 2,
            ..Config::default()
        };
        let report = run_suite(&config, Execution::Sequential).unwrap();
        assert_eq!(report.errors.len(), 1);
        assert_eq!(report.records.len(), 10);
        assert!(report.records.iter().all(|r| r.ref_kind == RefKind::Opt));
    }
}
