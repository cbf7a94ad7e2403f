//! The anti-concentration scan: probability that a weighted permutation
//! sum lands in a fixed window, measured exactly (full enumeration) for
//! small n and by Monte Carlo beyond, across three fixed weight-family
//! constructions, a fixed level grid, and the scan's size list.
//!
//! Emitted per (family, n, level): the window probability p and the
//! scale-free product n·p. Per family: the fitted slope of log p against
//! log n at level 0, and per (family, n) the slope of log p against |L|.

use std::time::Instant;

use crate::perm::{
    event_probability_exact, event_probability_mc, normalize_weights, PermEvent,
    DEFAULT_ENUM_CAP,
};
use crate::rng::{chunk_rng, standard_normal, subseed};
use crate::Result;

use super::config::ExperimentConfig;
use super::rows::{fmt_f64, ResultRow, ScanOutput};
use super::scheduler::map_indexed;
use super::stats::ls_slope;

/// The fixed level grid: window centers are L·n.
pub(crate) const AC_L_GRID: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

/// Window half-width.
pub(crate) const AC_H: f64 = 1.0;

/// The weight-family constructions, one rule per size n.
pub(crate) const AC_FAMILIES: [&str; 3] = ["arith", "gauss", "twoatom"];

/// Weights for one family at size n: always centered and unit-norm.
///
/// * `arith` — the normalized arithmetic progression 1, …, n.
/// * `gauss` — one fixed Gaussian draw per (seed, n), normalized.
/// * `twoatom` — alternating ±1, normalized (two distinct values).
pub(crate) fn family_weights(family: &str, n: usize, seed: u64) -> Result<Vec<f64>> {
    let raw: Vec<f64> = match family {
        "arith" => (1..=n).map(|i| i as f64).collect(),
        "gauss" => {
            let mut rng = chunk_rng(seed, "ac_weights_gauss", n as u64, 0);
            (0..n).map(|_| standard_normal(&mut rng)).collect()
        }
        "twoatom" => (0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect(),
        other => {
            return Err(crate::Error::InvalidParameter(format!(
                "unknown weight family {other:?}"
            )))
        }
    };
    Ok(normalize_weights(&raw)?.into_vec())
}

struct Cell {
    family_idx: usize,
    n: usize,
    level_idx: usize,
}

struct CellResult {
    p: f64,
    stderr: Option<f64>,
    trials: u64,
    wall_ms: u64,
}

fn run_cell(cfg: &ExperimentConfig, cell: &Cell) -> Result<CellResult> {
    let start = Instant::now();
    let family = AC_FAMILIES[cell.family_idx];
    let level = AC_L_GRID[cell.level_idx];
    let w = family_weights(family, cell.n, cfg.seed)?;
    let event = PermEvent::Window {
        l: level,
        h: AC_H,
        w,
    };
    let est = if cell.n <= DEFAULT_ENUM_CAP {
        event_probability_exact(&event, cell.n)?
    } else {
        let cell_seed = subseed(
            cfg.seed,
            "ac_cell",
            (cell.family_idx * AC_L_GRID.len() + cell.level_idx) as u64,
            cell.n as u64,
        );
        event_probability_mc(&event, cell.n, cfg.trials, cell_seed)?
    };
    let exact = est.exact.is_some();
    Ok(CellResult {
        p: est.p_hat,
        stderr: if exact { None } else { Some(est.stderr) },
        trials: est.trials,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs the anti-concentration scan. Exact enumeration is used for
/// n ≤ [`DEFAULT_ENUM_CAP`], Monte Carlo with `cfg.trials` beyond.
pub fn run_anticoncentration_scan(cfg: &ExperimentConfig) -> Result<ScanOutput> {
    let mut out = ScanOutput {
        metadata: cfg.metadata(),
        ..ScanOutput::default()
    };
    out.metadata.extend([
        (
            "l_grid".to_string(),
            AC_L_GRID.map(fmt_f64).join(","),
        ),
        ("h".to_string(), fmt_f64(AC_H)),
        ("families".to_string(), AC_FAMILIES.join(",")),
        ("enum_cap".to_string(), DEFAULT_ENUM_CAP.to_string()),
        (
            "note".to_string(),
            "exact rows have empty stderr and trials=0; n=0 rows aggregate over n_list"
                .to_string(),
        ),
    ]);

    let mut cells = Vec::new();
    for family_idx in 0..AC_FAMILIES.len() {
        for &n in &cfg.n_list {
            for level_idx in 0..AC_L_GRID.len() {
                cells.push(Cell {
                    family_idx,
                    n,
                    level_idx,
                });
            }
        }
    }
    let results = map_indexed(cfg.workers, cells.len(), |i| run_cell(cfg, &cells[i]));

    let exp = cfg.experiment.as_str();
    let mut probs = vec![0.0f64; cells.len()];
    for (idx, (cell, result)) in cells.iter().zip(results).enumerate() {
        let r = result?;
        probs[idx] = r.p;
        let family = AC_FAMILIES[cell.family_idx];
        let level_tag = fmt_f64(AC_L_GRID[cell.level_idx]);
        out.rows.push(ResultRow::new(
            exp,
            cell.n,
            format!("p_{family}_L{level_tag}"),
            r.p,
            r.stderr,
            r.trials,
            cfg.seed,
            r.wall_ms,
        ));
        out.rows.push(ResultRow::new(
            exp,
            cell.n,
            format!("np_{family}_L{level_tag}"),
            cell.n as f64 * r.p,
            r.stderr.map(|se| cell.n as f64 * se),
            r.trials,
            cfg.seed,
            r.wall_ms,
        ));
    }

    // Cross-size summaries. Cell index layout: family-major, then n,
    // then level.
    let cell_index = |family_idx: usize, n_idx: usize, level_idx: usize| {
        (family_idx * cfg.n_list.len() + n_idx) * AC_L_GRID.len() + level_idx
    };
    for (family_idx, family) in AC_FAMILIES.iter().enumerate() {
        // Slope of log p vs log n at L = 0 (decay exponent of the window
        // probability; anti-concentration predicts ≤ −1 + o(1)).
        let pts: Vec<(f64, f64)> = cfg
            .n_list
            .iter()
            .enumerate()
            .filter_map(|(n_idx, &n)| {
                let p = probs[cell_index(family_idx, n_idx, 0)];
                (p > 0.0).then(|| ((n as f64).ln(), p.ln()))
            })
            .collect();
        if let Some(slope) = ls_slope(&pts) {
            out.rows.push(ResultRow::new(
                exp,
                0,
                format!("slope_loglog_{family}_L0"),
                slope,
                None,
                0,
                cfg.seed,
                0,
            ));
        }
        // Slope of log p vs |L| at each fixed n (level decay).
        for (n_idx, &n) in cfg.n_list.iter().enumerate() {
            let pts: Vec<(f64, f64)> = AC_L_GRID
                .iter()
                .enumerate()
                .filter_map(|(level_idx, &level)| {
                    let p = probs[cell_index(family_idx, n_idx, level_idx)];
                    (p > 0.0).then(|| (level.abs(), p.ln()))
                })
                .collect();
            if let Some(slope) = ls_slope(&pts) {
                out.rows.push(ResultRow::new(
                    exp,
                    n,
                    format!("slope_logp_absl_{family}"),
                    slope,
                    None,
                    0,
                    cfg.seed,
                    0,
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg_with(n_list: &str, trials: &str, seed: u64) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::default_for("ac-scan").unwrap();
        cfg.set("n_list", n_list).unwrap();
        cfg.set("trials", trials).unwrap();
        cfg.seed = seed;
        cfg.validate().unwrap();
        cfg
    }

    fn row<'a>(out: &'a ScanOutput, n: usize, metric: &str) -> &'a ResultRow {
        out.rows
            .iter()
            .find(|r| r.n == n && r.metric == metric)
            .unwrap_or_else(|| panic!("missing row {metric} for n={n}"))
    }

    #[test]
    fn arithmetic_family_exact_anchor() {
        // Normalized (1,2,3) with a unit window at level 0 admits 4 of
        // the 6 permutations: p = 2/3 exactly.
        let out = run_anticoncentration_scan(&cfg_with("3,4", "100", 2)).unwrap();
        let p = row(&out, 3, "p_arith_L0");
        assert!((p.value - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(p.stderr, None, "exact cells carry no stderr");
        assert_eq!(p.trials, 0);
        let np = row(&out, 3, "np_arith_L0");
        assert!((np.value - 2.0).abs() < 1e-14);
        assert!(out.failures.is_empty());
    }

    #[test]
    fn probability_vanishes_beyond_the_support() {
        // arith, n = 8: max_π Σ wᵢπ(i) = √42 ≈ 6.5, so the window at
        // L·n = 16 is empty and the exact probability is 0.
        let out = run_anticoncentration_scan(&cfg_with("8", "100", 2)).unwrap();
        assert_eq!(row(&out, 8, "p_arith_L2").value, 0.0);
        // The |L|-slope at n=8 still exists from the surviving levels.
        let slope = row(&out, 8, "slope_logp_absl_arith");
        assert!(slope.value < 0.0, "decay in |L| expected, got {}", slope.value);
    }

    #[test]
    fn loglog_slope_shows_window_decay() {
        let out = run_anticoncentration_scan(&cfg_with("4,5,6,7,8", "100", 2)).unwrap();
        for family in AC_FAMILIES {
            let slope = row(&out, 0, &format!("slope_loglog_{family}_L0"));
            assert!(
                slope.value < -0.7,
                "{family}: slope {} not ≤ −0.7",
                slope.value
            );
        }
    }

    #[test]
    fn monte_carlo_matches_exact_enumeration() {
        // n = 9 runs exactly; re-estimate the same event by forcing the
        // MC branch through a larger n list is not possible, so call the
        // estimator directly against the exact cell.
        let w = family_weights("arith", 9, 2).unwrap();
        let event = PermEvent::Window {
            l: 0.0,
            h: AC_H,
            w,
        };
        let exact = event_probability_exact(&event, 9).unwrap().p_hat;
        let mc = event_probability_mc(&event, 9, 40_000, 77).unwrap();
        assert!(
            (mc.p_hat - exact).abs() < 4.0 * mc.stderr.max(1e-4),
            "MC {} vs exact {exact}",
            mc.p_hat
        );
    }

    #[test]
    fn worker_count_does_not_change_rows() {
        let mut cfg = cfg_with("4,12", "2000", 5);
        let reference = run_anticoncentration_scan(&cfg).unwrap();
        cfg.workers = 3;
        let got = run_anticoncentration_scan(&cfg).unwrap();
        assert_eq!(got.rows.len(), reference.rows.len());
        for (a, b) in got.rows.iter().zip(&reference.rows) {
            assert_eq!(a.metric, b.metric);
            assert_eq!(a.value.to_bits(), b.value.to_bits(), "{}", a.metric);
        }
    }

    #[test]
    fn family_weights_are_normalized_and_shaped() {
        for family in AC_FAMILIES {
            for n in [2, 5, 8] {
                let w = family_weights(family, n, 9).unwrap();
                assert_eq!(w.len(), n);
                assert!(w.iter().sum::<f64>().abs() < 1e-9);
                assert!((w.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-9);
            }
        }
        // Two-atom really has exactly two distinct values.
        let w = family_weights("twoatom", 7, 9).unwrap();
        let mut vals: Vec<u64> = w.iter().map(|x| x.to_bits()).collect();
        vals.sort_unstable();
        vals.dedup();
        assert_eq!(vals.len(), 2);
        assert!(family_weights("cubic", 5, 9).is_err());
    }
}
