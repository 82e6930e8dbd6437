use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use ibfgs::data::{generate_gaussian_pair, serialize_sparse};
use ibfgs::experiment::{parse_summary, run_experiment, write_profile, ExperimentConfig};
use ibfgs_core::Variant;

#[derive(Parser)]
#[command(name = "ibfgs", version, about = "Incremental BFGS solvers for transductive SVMs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment grid described by a TOML file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Seed for splits, masking and starting points.
        #[arg(long)]
        seed: Option<u64>,
        /// Run only this variant (ibfgs, ibfgs-dc, ibfgs-s, ibfgs-c, ibfgs-sc).
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long)]
        labeled_fraction: Option<f64>,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build performance-profile tables from a summary file.
    Profile {
        #[arg(long)]
        summary: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a synthetic two-Gaussian dataset in sparse format.
    GenData {
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 6.0)]
        separation: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run {
            config,
            seed,
            variant,
            max_iters,
            labeled_fraction,
            out,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(seed) = seed {
                cfg.split.seed = seed;
                cfg.solver.seed = seed;
            }
            if let Some(v) = variant {
                if Variant::from_name(&v).is_none() {
                    bail!("unknown variant `{v}`");
                }
                cfg.variants = vec![v];
                cfg.baseline.enabled = false;
            }
            if let Some(k) = max_iters {
                cfg.solver.max_iters = Some(k);
            }
            if let Some(f) = labeled_fraction {
                cfg.split.labeled_fraction = f;
            }
            if let Some(o) = out {
                cfg.output_dir = o;
            }
            let report = run_experiment(&cfg)?;
            println!(
                "{} cells finished, {} failed; results in {}",
                report.summaries.len(),
                report.failures.len(),
                cfg.output_dir.display()
            );
            for f in &report.failures {
                eprintln!(
                    "failed: dataset {} fold {} C1 {:e} C2 {:e} solver {}: {}",
                    f.dataset, f.fold, f.c1, f.c2, f.solver, f.message
                );
            }
            Ok(report.failures.is_empty())
        }
        Command::Profile { summary, out } => {
            let text = fs::read_to_string(&summary)
                .with_context(|| format!("reading {}", summary.display()))?;
            let rows = parse_summary(&text)?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            write_profile(&rows, &out)?;
            Ok(true)
        }
        Command::GenData {
            n,
            count,
            separation,
            seed,
            out,
        } => {
            if n == 0 || count < 2 {
                bail!("need n >= 1 and count >= 2");
            }
            let samples = generate_gaussian_pair(n, count, separation, seed);
            fs::write(&out, serialize_sparse(&samples))
                .with_context(|| format!("writing {}", out.display()))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
