//! Piecewise-polynomial model of the weighted-uniform-sum density: knot
//! breakpoints, per-piece coefficient rows in the local shifted basis,
//! and the exactly integrated total mass.

use serde::Serialize;

use super::dd::Dd;
use super::exact::validated_half_widths;
use crate::tolerances::{DENSITY_MASS, DENSITY_SYMMETRY};
use crate::{Error, Result};

/// Model-building cap: the knot set is the 2ⁿ subset sums.
pub const MODEL_CAP: usize = 12;

/// Header of the density scan CSV.
pub const DENSITY_CSV_HEADER: &str = "t,p_exact,p_fourier,envelope_value";

/// One row of the density scan CSV.
pub fn density_csv_row(t: f64, p_exact: f64, p_fourier: f64, envelope_value: f64) -> String {
    format!("{t},{p_exact},{p_fourier},{envelope_value}")
}

/// The density of Σ wᵢUᵢ as an explicit spline: on
/// [breakpoints[j], breakpoints[j+1]] the density is
/// Σ_k pieces[j][k]·(t − breakpoints[j])^k, and zero outside
/// [breakpoints.first, breakpoints.last].
#[derive(Debug, Clone)]
pub struct DensityModel {
    n: usize,
    weights: Vec<f64>,
    breakpoints: Vec<f64>,
    pieces: Vec<Vec<f64>>,
    total_mass: f64,
}

#[derive(Serialize)]
struct JsonView<'a> {
    n: usize,
    weights: &'a [f64],
    breakpoints: &'a [f64],
    pieces: &'a [Vec<f64>],
}

impl DensityModel {
    /// Builds the exact spline for the density of Σ wᵢUᵢ
    /// (Uᵢ iid uniform on [−1/2, 1/2]). Requires n ≤ [`MODEL_CAP`],
    /// all wᵢ ≠ 0 and finite.
    ///
    /// Construction walks every subset once per piece in double-double
    /// precision, then verifies the unit-mass, symmetry, and
    /// nonnegativity invariants before returning.
    pub fn build(w: &[f64]) -> Result<DensityModel> {
        let a = validated_half_widths(w, MODEL_CAP)?;
        let n = a.len();
        let mut r = Dd::from_f64(0.0);
        for &ai in &a {
            r = r.add_f64(ai);
        }
        // Knot of subset S in the t domain: w_S − R (subset sums over
        // the full-width weights 2aᵢ).
        let total: u64 = 1 << n;
        let neg_r = r.neg();
        let mut knots: Vec<(f64, Dd, bool)> = Vec::with_capacity(total as usize);
        for mask in 0..total {
            let mut w_s = neg_r;
            for (i, &ai) in a.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    w_s = w_s.add_f64(2.0 * ai);
                }
            }
            knots.push((w_s.to_f64(), w_s, mask.count_ones() % 2 == 1));
        }
        knots.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut breakpoints: Vec<f64> = Vec::new();
        for k in &knots {
            if breakpoints.last() != Some(&k.0) {
                breakpoints.push(k.0);
            }
        }
        let mut denom = 1.0f64;
        for k in 1..n {
            denom *= k as f64;
        }
        for &ai in &a {
            denom *= 2.0 * ai;
        }
        let power = n - 1;
        // Binomial row C(n−1, k).
        let mut binom = vec![1.0f64; power + 1];
        for k in 1..=power {
            binom[k] = binom[k - 1] * (power - k + 1) as f64 / k as f64;
        }
        let mut pieces: Vec<Vec<f64>> = Vec::with_capacity(breakpoints.len() - 1);
        let mut mass = Dd::from_f64(0.0);
        let mut active_end = 0usize; // knots[..active_end] have knot ≤ piece start
        for j in 0..breakpoints.len() - 1 {
            let left = breakpoints[j];
            let width = breakpoints[j + 1] - left;
            while active_end < knots.len() && knots[active_end].0 <= left {
                active_end += 1;
            }
            // q_j(s) = (1/D)·Σ_active sign·(s + d_S)^{n−1} expanded in s,
            // d_S = left − knot_S ≥ 0.
            let mut coeffs = vec![Dd::from_f64(0.0); power + 1];
            for knot in &knots[..active_end] {
                let d = Dd::from_f64(left).sub(knot.1);
                // d^{power−k} for k = power..0, accumulated incrementally.
                let mut dpow = Dd::from_f64(1.0);
                for k in (0..=power).rev() {
                    let contrib = dpow.mul_f64(binom[k]);
                    coeffs[k] = if knot.2 {
                        coeffs[k].sub(contrib)
                    } else {
                        coeffs[k].add(contrib)
                    };
                    dpow = dpow.mul(d);
                }
            }
            let row: Vec<f64> = coeffs.iter().map(|c| c.div_f64(denom).to_f64()).collect();
            // ∫₀^width q_j = Σ c_k width^{k+1}/(k+1), in double-double.
            let mut wp = Dd::from_f64(width);
            for (k, c) in coeffs.iter().enumerate() {
                mass = mass.add(c.mul(wp).div_f64(denom * (k + 1) as f64));
                wp = wp.mul_f64(width);
            }
            pieces.push(row);
        }
        let model = DensityModel {
            n,
            weights: w.to_vec(),
            breakpoints,
            pieces,
            total_mass: mass.to_f64(),
        };
        model.validate()?;
        Ok(model)
    }

    /// Invariant guard: unit mass, even symmetry, nonnegativity. These
    /// hold by construction; a failure signals an internal defect.
    fn validate(&self) -> Result<()> {
        if (self.total_mass - 1.0).abs() > DENSITY_MASS {
            return Err(Error::InternalLimit("density model mass drifted from 1"));
        }
        let (lo, hi) = self.support();
        let grid = 257;
        let mut peak = 0.0f64;
        for k in 0..grid {
            let t = lo + (hi - lo) * k as f64 / (grid - 1) as f64;
            peak = peak.max(self.eval(t));
        }
        for k in 0..grid {
            let t = lo + (hi - lo) * k as f64 / (grid - 1) as f64;
            let p = self.eval(t);
            let q = self.eval(-t);
            if (p - q).abs() > DENSITY_SYMMETRY * (1.0 + peak) {
                return Err(Error::InternalLimit("density model lost symmetry"));
            }
            if p < -1e-12 * (1.0 + peak) {
                return Err(Error::InternalLimit("density model went negative"));
            }
        }
        Ok(())
    }

    /// Density value at t (0 outside the support).
    pub fn eval(&self, t: f64) -> f64 {
        let k = self.breakpoints.len();
        if t < self.breakpoints[0] || t > self.breakpoints[k - 1] {
            return 0.0;
        }
        // Piece index: last j with breakpoints[j] ≤ t, clamped to a real
        // piece so the right endpoint uses the final piece.
        let j = self
            .breakpoints
            .partition_point(|b| *b <= t)
            .saturating_sub(1)
            .min(self.pieces.len() - 1);
        let s = t - self.breakpoints[j];
        let row = &self.pieces[j];
        let mut acc = 0.0;
        for &c in row.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    /// Support interval (first and last breakpoints).
    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Vec<f64>] {
        &self.pieces
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// JSON form: {"n": …, "weights": […], "breakpoints": […],
    /// "pieces": [[…], …]}.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&JsonView {
            n: self.n,
            weights: &self.weights,
            breakpoints: &self.breakpoints,
            pieces: &self.pieces,
        })
        .expect("plain numeric arrays always serialize")
    }
}
