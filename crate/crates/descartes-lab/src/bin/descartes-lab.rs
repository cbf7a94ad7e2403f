//! Command-line front end for the experiment harness.
//!
//! ```text
//! descartes-lab <zero-scan | ac-scan | props | density-scan> [--config FILE]
//!               [--n LIST] [--trials N] [--dist SPEC] [--seed N]
//!               [--workers N] [--out PATH] [--format csv|json]
//! ```
//!
//! Configuration precedence: built-in defaults, then the config file
//! (flat `key = value` lines or a JSON object), then CLI flags. Exit
//! codes: 0 success, 1 invariant failure (or a failed computation),
//! 2 configuration error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use descartes_lab::harness::{run_experiment, ExperimentConfig, OutputFormat, ScanOutput};
use descartes_lab::Error;

/// Message for the `config error:` stderr line; strips the redundant
/// prefix that [`Error::Config`] carries in its own display form.
fn config_message(e: Error) -> String {
    match e {
        Error::Config(msg) => msg,
        other => other.to_string(),
    }
}

#[derive(Parser)]
#[command(
    name = "descartes-lab",
    about = "Reproducible experiments on real roots of random polynomials, \
             permutation anti-concentration, and weighted-uniform densities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample polynomials and count real roots exactly by region.
    ZeroScan(RunArgs),
    /// Window probabilities of weighted permutation sums.
    AcScan(RunArgs),
    /// Run the invariant suite (exit 1 if any invariant fails).
    Props(RunArgs),
    /// Evaluate the weighted-uniform density three independent ways.
    DensityScan(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Config file: flat `key = value` lines or a JSON object.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sizes to scan, comma-separated (overrides the config).
    #[arg(long)]
    n: Option<String>,
    /// Monte Carlo trials per size.
    #[arg(long)]
    trials: Option<String>,
    /// Coefficient distribution: gaussian | rademacher | uniform |
    /// cauchy | atom0(P0) | multiset(V1,V2,…).
    #[arg(long)]
    dist: Option<String>,
    /// Master seed (all randomness derives from it).
    #[arg(long)]
    seed: Option<String>,
    /// Worker threads; results are identical for any value.
    #[arg(long)]
    workers: Option<String>,
    /// Output path (default: stdout). CSV output also writes a sibling
    /// .gp gnuplot script.
    #[arg(long)]
    out: Option<String>,
    /// Output format: csv | json.
    #[arg(long)]
    format: Option<String>,
}

impl Command {
    fn experiment(&self) -> &'static str {
        match self {
            Command::ZeroScan(_) => "zero-scan",
            Command::AcScan(_) => "ac-scan",
            Command::Props(_) => "props",
            Command::DensityScan(_) => "density-scan",
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::ZeroScan(a)
            | Command::AcScan(a)
            | Command::Props(a)
            | Command::DensityScan(a) => a,
        }
    }
}

/// Builds the effective configuration: defaults, config file, CLI flags.
fn build_config(experiment: &str, args: &RunArgs) -> Result<ExperimentConfig, String> {
    let mut cfg = ExperimentConfig::default_for(experiment).map_err(config_message)?;
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        cfg.apply_text(&text).map_err(config_message)?;
        if cfg.experiment != experiment {
            return Err(format!(
                "config file names experiment {:?} but the subcommand is {experiment:?}",
                cfg.experiment
            ));
        }
    }
    let overrides = [
        ("n_list", &args.n),
        ("trials", &args.trials),
        ("dist", &args.dist),
        ("seed", &args.seed),
        ("workers", &args.workers),
        ("out", &args.out),
        ("format", &args.format),
    ];
    for (key, value) in overrides {
        if let Some(value) = value {
            cfg.set(key, value).map_err(config_message)?;
        }
    }
    cfg.validate().map_err(config_message)?;
    Ok(cfg)
}

/// Writes the rendered output and any auxiliary files; returns what the
/// gnuplot script should reference.
fn write_outputs(cfg: &ExperimentConfig, out: &ScanOutput) -> std::io::Result<()> {
    let body = out.render(cfg.format);
    match &cfg.out {
        None => {
            print!("{body}");
            if !out.extra_files.is_empty() {
                eprintln!(
                    "note: {} auxiliary grid file(s) are only written when --out is set",
                    out.extra_files.len()
                );
            }
        }
        Some(path) => {
            let path = Path::new(path);
            std::fs::write(path, &body)?;
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("results")
                .to_string();
            let dir = path.parent().unwrap_or(Path::new(""));
            let mut extra_names = Vec::new();
            for (suffix, content) in &out.extra_files {
                let name = format!("{stem}_{suffix}");
                std::fs::write(dir.join(&name), content)?;
                extra_names.push(name);
            }
            if cfg.format == OutputFormat::Csv {
                let csv_name = path
                    .file_name()
                    .and_then(|s| s.to_str())
                    .unwrap_or("results.csv");
                let script = out.gnuplot_script(csv_name, &extra_names);
                std::fs::write(path.with_extension("gp"), script)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let experiment = cli.command.experiment();
    let cfg = match build_config(experiment, cli.command.args()) {
        Ok(cfg) => cfg,
        Err(message) => {
            eprintln!("config error: {message}");
            return ExitCode::from(2);
        }
    };
    let out = match run_experiment(&cfg) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("run failed: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = write_outputs(&cfg, &out) {
        eprintln!("cannot write output: {e}");
        return ExitCode::from(2);
    }
    if out.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        for failure in &out.failures {
            eprintln!("invariant failure: {failure}");
        }
        ExitCode::from(1)
    }
}
