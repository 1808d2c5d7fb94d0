use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use twobar::exact::{build_blp, export_lp, Limits};
use twobar::format::{read_instance, write_instance, write_placement};
use twobar::gen::{ffd_bpp, gen_random, parse_bpp, parse_bpp_instance, transform_bpp_detailed};
use twobar::harness::{run_algorithm, run_suite, Algorithm, Config, Execution};
use twobar::matching::{build_union_graph, write_union_graph};
use twobar::pipeline::{build_arc_digraph, form_big_matchings, form_big_scan};
use twobar::{evaluate_packing, lower_bounds, Family, DEFAULT_DENOMINATOR};

/// Packing two-bar charts into a unit-height strip.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Exit with a non-zero code if any instance fails to load, run or audit.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write seeded random instances, one file per instance.
    Gen {
        #[arg(long, default_value = "arbitrary")]
        family: Family,
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Instance k gets seed + k.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "den", default_value_t = DEFAULT_DENOMINATOR)]
        denominator: u64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Run one algorithm on an instance file.
    Solve {
        instance: PathBuf,
        #[arg(short, long, default_value = "GA_LO")]
        algorithm: Algorithm,
        /// Write the boolean program to this LP file.
        #[arg(long)]
        lp_export: Option<PathBuf>,
        /// Cell horizon of the exported program; defaults to the GA_LO length.
        #[arg(long)]
        horizon: Option<usize>,
        /// Add y_j >= y_{j+1} rows to the exported program.
        #[arg(long)]
        monotone: bool,
        /// Exact-search time budget in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Exact-search node budget.
        #[arg(long)]
        node_limit: Option<u64>,
        /// Write the packing (`id cell` lines) here.
        #[arg(long)]
        placement: Option<PathBuf>,
    },
    /// Run a benchmark configuration and write CSV reports.
    Bench {
        config: PathBuf,
        /// Dispatch instances on the calling thread only.
        #[arg(long)]
        sequential: bool,
        /// Override the configured record CSV path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Turn a bin-packing instance and its solution into a chart instance.
    BppImport {
        instance: PathBuf,
        /// Solution file; FFD is used when omitted.
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Print the union graph (`i j w` lines) of an instance.
    UnionGraph { instance: PathBuf },
    /// Print the 1-union digraph (`i j` lines) after big-chart formation.
    Digraph {
        instance: PathBuf,
        #[arg(long, default_value = "a1")]
        variant: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            family,
            n,
            count,
            seed,
            denominator,
            out_dir,
        } => {
            fs::create_dir_all(&out_dir)?;
            for k in 0..count {
                let i = gen_random(n, seed.wrapping_add(k as u64), family, denominator)?;
                let path = out_dir.join(format!("{}.txt", i.label));
                fs::write(&path, write_instance(&i))?;
                println!("{}", path.display());
            }
        }
        Command::Solve {
            instance,
            algorithm,
            lp_export,
            horizon,
            monotone,
            time_limit,
            node_limit,
            placement,
        } => {
            let inst = read_instance(&instance)?;
            let limits = Limits {
                time: time_limit.map(Duration::from_secs_f64),
                nodes: node_limit,
            };
            let run = run_algorithm(&inst, algorithm, &limits);
            let eval = evaluate_packing(&inst, &run.solution.placement)?;
            if !eval.feasible {
                bail!("{algorithm} produced an infeasible packing");
            }
            let lb = lower_bounds(&inst);
            println!(
                "{} n={} algorithm={algorithm} length={} lb={}",
                inst.label,
                inst.n(),
                run.solution.length,
                lb.combined
            );
            if let Some(r) = &run.exact {
                println!(
                    "{} {} {} {} {}",
                    r.status,
                    r.best_length,
                    r.lower_bound,
                    r.node_count,
                    r.elapsed.as_millis()
                );
            }
            if let Some(path) = placement {
                fs::write(path, write_placement(&run.solution.placement))?;
            }
            if let Some(path) = lp_export {
                let h = horizon.unwrap_or(twobar::greedy::ga_lo(&inst).length);
                let mut model = build_blp(&inst, h)?;
                model.monotone_rows = monotone;
                fs::write(&path, export_lp(&model))?;
            }
        }
        Command::Bench {
            config,
            sequential,
            output,
        } => {
            let mut cfg =
                Config::read(&config).with_context(|| format!("reading {}", config.display()))?;
            if let Some(o) = output {
                cfg.output = Some(o.display().to_string());
            }
            let execution = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let report = run_suite(&cfg, execution)?;
            let records = report.records_csv(cfg.timing)?;
            match &cfg.output {
                Some(p) => fs::write(p, &records)?,
                None => print!("{records}"),
            }
            if let Some(p) = &cfg.summary {
                fs::write(p, report.summary_csv()?)?;
            } else if cfg.output.is_some() {
                print!("{}", report.summary_csv()?);
            }
            for e in &report.errors {
                eprintln!("{}: {}", e.source, e.message);
            }
            if cli.strict && !report.errors.is_empty() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::BppImport {
            instance,
            solution,
            out,
        } => {
            let text = read(&instance)?;
            let (bpp, sol) = match solution {
                Some(s) => parse_bpp(&text, &read(&s)?)?,
                None => {
                    let bpp = parse_bpp_instance(&text)?;
                    let sol = ffd_bpp(&bpp);
                    if !sol.is_certified(&bpp) {
                        eprintln!(
                            "warning: FFD uses {} bins, area bound is {}; optimum not certified",
                            sol.bin_count(),
                            bpp.area_bound()
                        );
                        if cli.strict {
                            return Ok(ExitCode::FAILURE);
                        }
                    }
                    (bpp, sol)
                }
            };
            let t = transform_bpp_detailed(&bpp, &sol)?;
            fs::write(&out, write_instance(&t.instance))?;
            println!(
                "bins={} charts={} removed={} opt={} witness={}",
                t.bins,
                t.instance.n(),
                t.removed,
                t.instance.known_opt.unwrap_or_default(),
                t.instance.witness_length.unwrap_or_default()
            );
        }
        Command::UnionGraph { instance } => {
            let inst = read_instance(&instance)?;
            print!("{}", write_union_graph(&build_union_graph(inst.charts())));
        }
        Command::Digraph { instance, variant } => {
            let inst = read_instance(&instance)?;
            let charts = match variant.to_ascii_lowercase().as_str() {
                "a1" => {
                    let f = form_big_scan(inst.charts());
                    f.big.into_iter().chain(f.leftover).collect()
                }
                "a2" => form_big_matchings(inst.charts()).charts,
                other => bail!("unknown variant `{other}` (expected a1 or a2)"),
            };
            print!("{}", build_arc_digraph(&charts).to_text());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}
