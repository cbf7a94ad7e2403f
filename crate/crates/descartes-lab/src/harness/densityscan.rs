//! The density scan: for each size n, evaluate the centered
//! weighted-uniform density three independent ways (closed-form
//! piecewise model, pointwise exact expansion, certified Fourier
//! inversion), fit the exponential envelope, and emit both summary rows
//! and a plottable grid file per size.
//!
//! The scan uses the equal-weight family wᵢ = 1/√n, which keeps the
//! variance fixed at 1/12 across sizes so grids and envelopes are
//! directly comparable.

use std::time::Instant;

use crate::density::{
    density_csv_row, envelope_fit, exact_density, fourier_density_default, logconcavity_check,
    DensityModel, DENSITY_CSV_HEADER, MODEL_CAP,
};
use crate::tolerances::{DENSITY_CROSS, DENSITY_MASS, MONOTONE_DECAY_SLACK};
use crate::Result;

use super::config::ExperimentConfig;
use super::rows::{ResultRow, ScanOutput};
use super::scheduler::map_indexed;

/// Grid resolution of the emitted per-size density files.
const GRID_POINTS: usize = 201;

/// Everything computed for one size.
struct SizeResult {
    rows_data: Vec<(String, f64)>,
    grid_csv: String,
    failures: Vec<String>,
    wall_ms: u64,
}

fn scan_size(n: usize, experiment: &str) -> Result<SizeResult> {
    let start = Instant::now();
    let w: Vec<f64> = vec![1.0 / (n as f64).sqrt(); n];
    let half_span: f64 = w.iter().map(|x| x.abs()).sum::<f64>() / 2.0;
    // Stay strictly inside the support so logs and ratios behave.
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|k| half_span * 0.999 * (2.0 * k as f64 / (GRID_POINTS - 1) as f64 - 1.0))
        .collect();

    let mut rows_data: Vec<(String, f64)> = Vec::new();
    let mut failures = Vec::new();

    let p_exact: Vec<f64> = grid
        .iter()
        .map(|&t| exact_density(&w, t))
        .collect::<Result<_>>()?;
    let p_fourier: Vec<f64> = grid
        .iter()
        .map(|&t| fourier_density_default(&w, t))
        .collect::<Result<_>>()?;
    let max_diff = p_exact
        .iter()
        .zip(&p_fourier)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);

    rows_data.push(("p_at_zero".to_string(), exact_density(&w, 0.0)?));
    rows_data.push(("fourier_max_abs_diff".to_string(), max_diff));
    if max_diff > DENSITY_CROSS {
        failures.push(format!(
            "density-scan n={n}: exact and Fourier evaluations disagree by {max_diff:.3e}"
        ));
    }

    // The envelope constant; from the closed-form model when available,
    // from the evaluated grid beyond the model cap.
    let envelope_c: f64;
    if n <= MODEL_CAP {
        let model = DensityModel::build(&w)?;
        let mass = model.total_mass();
        rows_data.push(("mass".to_string(), mass));
        if (mass - 1.0).abs() > DENSITY_MASS {
            failures.push(format!(
                "density-scan n={n}: model mass {mass} differs from 1 beyond {DENSITY_MASS:.1e}"
            ));
        }
        let fit = envelope_fit(&model);
        envelope_c = fit.c_upper;
        rows_data.push(("envelope_c".to_string(), fit.c_upper));
        if fit.c_gauss.is_finite() {
            rows_data.push(("envelope_c_gauss".to_string(), fit.c_gauss));
        }
        rows_data.push(("decay_violations".to_string(), fit.violations as f64));
        if fit.violations > 0 {
            failures.push(format!(
                "density-scan n={n}: {} monotone-decay violations",
                fit.violations
            ));
        }
        let logconc = logconcavity_check(&model, &grid);
        rows_data.push(("logconcavity_violations".to_string(), logconc as f64));
        if logconc > 0 {
            failures.push(format!(
                "density-scan n={n}: {logconc} log-concavity violations"
            ));
        }
    } else {
        envelope_c = grid
            .iter()
            .zip(&p_exact)
            .map(|(&t, &p)| p * (0.5 * t.abs()).exp())
            .fold(0.0f64, f64::max);
        rows_data.push(("envelope_c".to_string(), envelope_c));
        // Monotone decay away from 0 on the exact grid.
        let peak = p_exact.iter().cloned().fold(0.0f64, f64::max);
        let slack = MONOTONE_DECAY_SLACK * (1.0 + peak);
        let mut decay_violations = 0usize;
        for k in 0..grid.len() - 1 {
            let rising = p_exact[k + 1] > p_exact[k] + slack;
            let falling = p_exact[k] > p_exact[k + 1] + slack;
            if (grid[k] >= 0.0 && rising) || (grid[k + 1] <= 0.0 && falling) {
                decay_violations += 1;
            }
        }
        rows_data.push(("decay_violations".to_string(), decay_violations as f64));
        if decay_violations > 0 {
            failures.push(format!(
                "density-scan n={n}: {decay_violations} monotone-decay violations"
            ));
        }
    }

    let mut grid_csv = String::from(DENSITY_CSV_HEADER);
    grid_csv.push('\n');
    for ((&t, &pe), &pf) in grid.iter().zip(&p_exact).zip(&p_fourier) {
        let env = envelope_c * (-0.5 * t.abs()).exp();
        grid_csv.push_str(&density_csv_row(t, pe, pf, env));
        grid_csv.push('\n');
    }

    let _ = experiment;
    Ok(SizeResult {
        rows_data,
        grid_csv,
        failures,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs the density scan over `cfg.n_list` with the equal-weight family.
pub fn run_density_scan(cfg: &ExperimentConfig) -> Result<ScanOutput> {
    let mut out = ScanOutput {
        metadata: cfg.metadata(),
        ..ScanOutput::default()
    };
    out.metadata.extend([
        ("weights".to_string(), "equal (1/sqrt(n) each)".to_string()),
        ("grid_points".to_string(), GRID_POINTS.to_string()),
        (
            "note".to_string(),
            "per-size grid files use the density CSV schema t,p_exact,p_fourier,envelope_value"
                .to_string(),
        ),
    ]);

    let results = map_indexed(cfg.workers, cfg.n_list.len(), |i| {
        scan_size(cfg.n_list[i], &cfg.experiment)
    });
    for (&n, result) in cfg.n_list.iter().zip(results) {
        let r = result?;
        for (metric, value) in r.rows_data {
            out.rows.push(ResultRow::new(
                &cfg.experiment,
                n,
                metric,
                value,
                None,
                0,
                cfg.seed,
                r.wall_ms,
            ));
        }
        out.failures.extend(r.failures);
        out.extra_files.push((format!("density_n{n}.csv"), r.grid_csv));
    }
    Ok(out)
}
