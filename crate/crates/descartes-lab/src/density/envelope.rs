//! Exponential envelope fitting, log-concavity counting, and the
//! sub-Gaussian tail bound for weighted sign sums.

use super::model::DensityModel;
use crate::tolerances::{LOGCONCAVITY_MARGIN, MONOTONE_DECAY_SLACK};
use crate::{Error, Result};

/// Result of an envelope fit against p(t) ≤ C·e^{−c|t|}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeFit {
    /// Smallest C making the envelope hold on the evaluation grid.
    pub c_upper: f64,
    /// The fixed probe exponent (1/2); reported, never fitted, because
    /// joint (C, c) exponential fits are ill-conditioned.
    pub probe_exponent: f64,
    /// Gaussian-decay exponent from regressing ln p on t² over grid
    /// points with |t| ≥ 1; NaN when fewer than two such points exist
    /// (e.g. the support ends before 1).
    pub c_gauss: f64,
    /// Grid points where decay away from zero fails (beyond slack);
    /// must be 0 for any weighted-uniform-sum density.
    pub violations: usize,
}

const PROBE_EXPONENT: f64 = 0.5;
const DEFAULT_GRID: usize = 801;

/// Envelope fit on the default 801-point uniform grid over the support.
pub fn envelope_fit(model: &DensityModel) -> EnvelopeFit {
    let (lo, hi) = model.support();
    let grid: Vec<f64> = (0..DEFAULT_GRID)
        .map(|k| lo + (hi - lo) * k as f64 / (DEFAULT_GRID - 1) as f64)
        .collect();
    envelope_fit_on_grid(model, &grid).expect("internal grid is valid")
}

/// Envelope fit on a caller-supplied ascending grid. A single-point
/// grid degenerates to C = p(t₀)·e^{|t₀|/2} (so C = p(0) at t₀ = 0).
pub fn envelope_fit_on_grid(model: &DensityModel, grid: &[f64]) -> Result<EnvelopeFit> {
    if grid.is_empty() {
        return Err(Error::LengthTooSmall { len: 0, min: 1 });
    }
    if grid.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidParameter(
            "envelope grid must be strictly ascending".into(),
        ));
    }
    let p: Vec<f64> = grid.iter().map(|&t| model.eval(t)).collect();
    let mut c_upper = 0.0f64;
    for (&t, &pt) in grid.iter().zip(&p) {
        c_upper = c_upper.max(pt * (PROBE_EXPONENT * t.abs()).exp());
    }
    // Monotone decay away from zero: p must not increase as |t| grows.
    let mut violations = 0usize;
    let scale = p.iter().cloned().fold(0.0f64, f64::max);
    for k in 0..grid.len().saturating_sub(1) {
        let (t0, t1) = (grid[k], grid[k + 1]);
        let (p0, p1) = (p[k], p[k + 1]);
        let slack = MONOTONE_DECAY_SLACK * (1.0 + scale);
        if t0 >= 0.0 {
            if p1 > p0 + slack {
                violations += 1;
            }
        } else if t1 <= 0.0 && p0 > p1 + slack {
            violations += 1;
        }
    }
    // ln p vs t² regression on |t| ≥ 1 (positive density only).
    let pts: Vec<(f64, f64)> = grid
        .iter()
        .zip(&p)
        .filter(|(t, &pt)| t.abs() >= 1.0 && pt > 0.0)
        .map(|(&t, &pt)| (t * t, pt.ln()))
        .collect();
    let c_gauss = if pts.len() < 2 {
        f64::NAN
    } else {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        if sxx == 0.0 {
            f64::NAN
        } else {
            -(sxy / sxx)
        }
    };
    Ok(EnvelopeFit {
        c_upper,
        probe_exponent: PROBE_EXPONENT,
        c_gauss,
        violations,
    })
}

/// Counts consecutive grid triples where the second difference of ln p
/// exceeds +[`LOGCONCAVITY_MARGIN`] — i.e. where log-concavity fails
/// beyond numerical slack. The grid should be (near-)uniform and inside
/// the open support; triples touching p ≤ 0 are skipped.
pub fn logconcavity_check(model: &DensityModel, grid: &[f64]) -> usize {
    debug_assert!(
        grid.windows(2).all(|p| p[0] < p[1]),
        "grid must be ascending"
    );
    let lp: Vec<f64> = grid
        .iter()
        .map(|&t| {
            let p = model.eval(t);
            if p > 0.0 {
                p.ln()
            } else {
                f64::NAN
            }
        })
        .collect();
    let mut violations = 0;
    for k in 1..lp.len().saturating_sub(1) {
        let d2 = lp[k - 1] - 2.0 * lp[k] + lp[k + 1];
        if d2.is_finite() && d2 > LOGCONCAVITY_MARGIN {
            violations += 1;
        }
    }
    violations
}

/// The sub-Gaussian tail bound exp(−t²/(2Σaᵢ²)) for P{Σaᵢεᵢ ≥ t} with
/// independent signs εᵢ = ±1. Requires t ≥ 0, entries nonnegative, and
/// some aᵢ > 0 ([`Error::AllZero`] otherwise).
pub fn hoeffding_bound(a: &[f64], t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "threshold must be nonnegative and finite, got {t}"
        )));
    }
    let mut ssq = 0.0f64;
    for (i, &x) in a.iter().enumerate() {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "entry {i} must be a nonnegative finite float, got {x}"
            )));
        }
        ssq += x * x;
    }
    if ssq == 0.0 {
        return Err(Error::AllZero);
    }
    Ok((-t * t / (2.0 * ssq)).exp())
}
