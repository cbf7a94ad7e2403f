//! Quadrature oracle for the expected number of real roots of a random
//! polynomial with iid standard Gaussian coefficients.
//!
//! This module is deliberately independent of the exact root-counting code:
//! it evaluates Kac's expectation integral
//!
//! ```text
//! E[N(ℝ)] = (1/π) ∫_ℝ √(A(x)C(x) − B(x)²) / A(x) dx
//! ```
//!
//! with A = Σ x^{2j}, B = Σ j x^{2j−1}, C = Σ j² x^{2j−2}, in the variance
//! form: writing t = x² and letting J be the random index on {0, …, n} with
//! P{J = j} ∝ t^j, the integrand is √Var(J)/x. The map x ↦ 1/x sends J to
//! n − J, so the density of real roots is symmetric under inversion and
//!
//! ```text
//! E[N(ℝ)] = (4/π) ∫₀¹ √Var(J_{x²}) / x dx,
//! ```
//!
//! an integral of a smooth, bounded integrand: it tends to 1 as x → 0⁺ and
//! equals √(n(n+2)/12) at x = 1 (J uniform on {0..n}). The growth scans
//! compare their Monte Carlo means against this value.

use crate::tolerances::KAC_QUAD_TOL;

/// Variance of the index J on {0..n} with P{J = j} ∝ t^j, for t ∈ [0, 1].
///
/// Two-pass computation over the (all-positive) weights: first the mean,
/// then the centered second moment — no cancellation anywhere.
fn index_variance(n: usize, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let mut s0 = 0.0f64;
    let mut s1 = 0.0f64;
    let mut pow = 1.0f64;
    for j in 0..=n {
        s0 += pow;
        s1 += j as f64 * pow;
        pow *= t;
    }
    let mu = s1 / s0;
    let mut var_sum = 0.0f64;
    pow = 1.0;
    for j in 0..=n {
        let d = j as f64 - mu;
        var_sum += d * d * pow;
        pow *= t;
    }
    var_sum / s0
}

/// The [0, 1] integrand √Var(J_{x²})/x, extended by its limit 1 at x = 0.
fn integrand(n: usize, x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    index_variance(n, x * x).sqrt() / x
}

/// Adaptive Simpson refinement with the classic 1/15 error estimate.
fn simpson_adaptive<F: Fn(f64) -> f64 + Copy>(
    f: F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let h = b - a;
    let left = h / 12.0 * (fa + 4.0 * flm + fm);
    let right = h / 12.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_adaptive(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1)
        + simpson_adaptive(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1)
}

/// Integrates `f` over [a, b] to absolute tolerance `tol`.
fn integrate<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_adaptive(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Expected total number of real roots of a degree-`n` polynomial with iid
/// standard Gaussian coefficients (all n+1 coefficients present).
///
/// Grows like (2/π)·ln n plus a constant; exact value 1 at n = 1.
pub fn expected_real_roots_gaussian(n: usize) -> f64 {
    assert!(n >= 1, "degree must be at least 1");
    let g = |x: f64| integrand(n, x);
    4.0 / std::f64::consts::PI * integrate(g, 0.0, 1.0, KAC_QUAD_TOL)
}
