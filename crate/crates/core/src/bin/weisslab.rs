//! Command-line experiment runner.
//!
//! Usage: `weisslab <experiment> [--config PATH] [--alpha X] [--seed N]
//! [--out PATH] [--set KEY=VALUE ...]`
//!
//! Settings are resolved in three layers: built-in defaults, then
//! command-line flags, then the config file (later layers win). The CSV
//! table goes to `--out` (sidecar JSON next to it) or to stdout; progress
//! and assertion results go to stderr. Exit codes: 0 success, 1 a built-in
//! assertion failed, 2 configuration error, 3 solver non-convergence.
//! `WEISSLAB_THREADS` (positive integer) caps worker parallelism.

use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;
use weisslab::experiment::{run, ExperimentConfig, ExperimentKind};

#[derive(Parser)]
#[command(
    name = "weisslab",
    about = "Numerical experiments on weighted admissibility, capacities, and Hankel norms",
    long_about = None
)]
struct Cli {
    /// One of: capacity-scaling, onebox, halfplane-counterexample,
    /// disk-counterexample, shift-counterexample, verify
    experiment: String,

    /// Config file with `key = value` lines; overrides flags
    #[arg(long)]
    config: Option<PathBuf>,

    /// Weight exponent, where the experiment accepts one
    #[arg(long)]
    alpha: Option<f64>,

    /// Seed for all randomized sweeps (default 0)
    #[arg(long)]
    seed: Option<u64>,

    /// Write the CSV here (JSON sidecar next to it); default is stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Extra KEY=VALUE overrides, repeatable
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn configure_threads() -> Result<(), String> {
    match std::env::var("WEISSLAB_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => match raw.parse::<usize>() {
            Ok(n) if n >= 1 => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| format!("could not size the worker pool: {e}")),
            _ => Err(format!(
                "WEISSLAB_THREADS must be a positive integer, got '{raw}'"
            )),
        },
    }
}

fn execute(cli: &Cli) -> Result<i32, String> {
    configure_threads()?;
    let kind = ExperimentKind::parse(&cli.experiment).map_err(|e| e.to_string())?;
    let mut cfg = ExperimentConfig::new(kind);
    if let Some(alpha) = cli.alpha {
        cfg.set("alpha", &alpha.to_string())
            .map_err(|e| e.to_string())?;
    }
    if let Some(seed) = cli.seed {
        cfg.set("seed", &seed.to_string())
            .map_err(|e| e.to_string())?;
    }
    for pair in &cli.set {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| format!("--set expects KEY=VALUE, got '{pair}'"))?;
        cfg.set(key.trim(), value).map_err(|e| e.to_string())?;
    }
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("could not read config {}: {e}", path.display()))?;
        cfg.apply_config_text(&text).map_err(|e| e.to_string())?;
    }

    let report = run(&cfg).map_err(|e| e.to_string())?;

    for a in &report.assertions {
        eprintln!(
            "[{}] {}: {}",
            if a.passed { "PASS" } else { "FAIL" },
            a.name,
            a.detail
        );
    }
    if !report.converged {
        eprintln!("warning: at least one solver did not reach its tolerance");
    }
    eprintln!(
        "{}: {} rows in {:.1}s (exit {})",
        report.experiment,
        report.rows.len(),
        report.wall_seconds,
        report.exit_code()
    );

    match &cli.out {
        Some(path) => {
            std::fs::write(path, report.csv())
                .map_err(|e| format!("could not write {}: {e}", path.display()))?;
            let sidecar = path.with_extension("json");
            std::fs::write(&sidecar, report.json_sidecar())
                .map_err(|e| format!("could not write {}: {e}", sidecar.display()))?;
        }
        None => print!("{}", report.csv()),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
