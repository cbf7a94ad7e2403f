//! The experiment harness: reproducible scans over the library's
//! measurement surface, with deterministic scheduling (results are
//! byte-identical for any worker count), self-describing result rows,
//! CSV/JSON rendering, and gnuplot script emission.
//!
//! Four experiments exist:
//!
//! * **zero-scan** — sample polynomials, count real roots exactly by
//!   region, verify the sign-change bounds on every sample.
//! * **ac-scan** — window probabilities of weighted permutation sums,
//!   exact for small n, Monte Carlo beyond, with decay slopes.
//! * **props** — the invariant suite: one pass/fail row per invariant.
//! * **density-scan** — the weighted-uniform density evaluated three
//!   independent ways, with envelope fits and per-size grid files.

mod ac;
mod config;
mod densityscan;
mod props;
mod rows;
mod scheduler;
mod stats;
mod zero;

pub use ac::run_anticoncentration_scan;
pub use config::{ExperimentConfig, OutputFormat, DEFAULT_SEED, EXPERIMENTS};
pub use densityscan::run_density_scan;
pub use props::run_property_suite;
pub use rows::{ResultRow, ScanOutput, RESULT_CSV_HEADER};
pub use zero::run_zero_scan;

use crate::{Error, Result};

/// Runs the experiment named by `cfg.experiment`. The configuration
/// should have been validated first; an unknown name errors.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ScanOutput> {
    cfg.validate()?;
    match cfg.experiment.as_str() {
        "zero-scan" => run_zero_scan(cfg),
        "ac-scan" => run_anticoncentration_scan(cfg),
        "props" => run_property_suite(cfg),
        "density-scan" => run_density_scan(cfg),
        other => Err(Error::Config(format!("unknown experiment {other:?}"))),
    }
}
