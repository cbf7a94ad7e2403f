//! Density by certified Fourier inversion of the characteristic
//! function. For X = Σ wᵢUᵢ with Uᵢ uniform on [−1/2, 1/2] the
//! characteristic function is the product of the per-factor transforms
//! sin(λwᵢ/2)/(λwᵢ/2) — half-width-one uniforms would drop the halves —
//! so
//!
//!   p(t) = (1/π) ∫₀^∞ cos(λt) · Π sin(aᵢλ)/(aᵢλ) dλ,  aᵢ = |wᵢ|/2.
//!
//! Every error source is bounded, not estimated. The head integral uses
//! composite Simpson whose panel error is controlled by the rigorous
//! derivative bound |g⁗| ≤ (|t| + Σaᵢ)⁴ (g is a mixture of cosines of
//! frequencies at most |t| + Σaᵢ). The tail beyond the cutoff Λ is
//! integrated in closed form when the factor count is small: expanding
//! cos(λt)·Π sin(aᵢλ) into 2^{n+1} complex exponentials reduces it to
//! ∫_Λ^∞ e^{iωλ}λ^{−n} dλ, which integration by parts lowers to the sine
//! and cosine integrals; only that evaluation's floating error (which is
//! itself bounded alongside the values) enters the certificate. With many
//! factors the tail is instead bounded by (Π_{i∈K} 1/aᵢ)·Λ^{1−k}/(k−1)
//! over the k largest half-widths. If the certified total exceeds the
//! requested tolerance the call fails rather than returning an
//! uncertified value.

use super::exact::validated_half_widths;
use super::sici::{ci, si};
use crate::tolerances::{FOURIER_DEFAULT_LAMBDA_MAX, FOURIER_DEFAULT_TOL};
use crate::{Error, Result};

use std::f64::consts::{FRAC_PI_2, PI};

const PANEL_CAP: usize = 4_000_000;
/// Largest factor count evaluated by the 2^{n+1}-term closed-form tail.
const TAIL_EXACT_MAX: usize = 8;
/// Head/tail split point when the tail is closed-form.
const TAIL_SPLIT: f64 = 40.0;

fn kahan_add(v: f64, sum: &mut f64, comp: &mut f64) {
    let yv = v - *comp;
    let tv = *sum + yv;
    *comp = (tv - *sum) - yv;
    *sum = tv;
}

/// Re[(−i)ⁿ·Eₙ(ω, Λ)] with Eₙ = ∫_Λ^∞ e^{iωλ}λ^{−n} dλ, together with an
/// absolute bound on the floating error of the returned value.
///
/// Integration by parts gives Eₖ = Λ^{1−k}e^{iωΛ}/(k−1) + (iω/(k−1))E_{k−1}
/// down to E₁ = −Ci(|ω|Λ) + i·sgn(ω)(π/2 − Si(|ω|Λ)); magnitude and error
/// bounds are propagated through the same recursion.
fn e_tail_re(n: usize, omega: f64, lambda: f64) -> (f64, f64) {
    let eps = f64::EPSILON;
    if omega == 0.0 {
        // Sₖ(0) = 0, so odd-k terms vanish; Cₖ(0) = Λ^{1−k}/(k−1), k ≥ 2.
        if n == 1 {
            return (0.0, 0.0);
        }
        let c = lambda.powi(1 - n as i32) / (n as f64 - 1.0);
        let re = match n % 4 {
            0 => c,
            2 => -c,
            _ => 0.0,
        };
        return (re, eps * (n as f64 + 4.0) * c.abs());
    }
    let am = omega.abs();
    let x = am * lambda;
    let mut e = (-ci(x), omega.signum() * (FRAC_PI_2 - si(x)));
    // mag bounds both components of Eₖ; err bounds their absolute error.
    let mut mag = e.0.abs() + e.1.abs();
    let mut err = eps * 100.0 * (mag + 1.0);
    let mut mag_prev = mag;
    for k in 2..=n {
        let km1 = (k - 1) as f64;
        let boundary = lambda.powi(1 - k as i32) / km1;
        let (c, s) = ((omega * lambda).cos(), (omega * lambda).sin());
        let next = (
            boundary * c - omega / km1 * e.1,
            boundary * s + omega / km1 * e.0,
        );
        mag_prev = mag;
        mag = boundary + am / km1 * mag;
        // boundary·trig carries the argument-rounding error eps·x; the
        // propagated part scales by |ω|/(k−1); fresh ops add O(eps·mag).
        err = eps * (x + 8.0) * boundary + am / km1 * err + 4.0 * eps * mag;
        e = next;
    }
    let re = match n % 4 {
        0 => e.0,
        1 => e.1,
        2 => -e.0,
        _ => -e.1,
    };
    // Frequency rounding: ω itself carries ~(n+1)·eps·(|ω|+|t|-scale)
    // relative slop from the subset sum; |dEₙ/dω| = |E_{n−1}| ≤ mag_prev.
    let freq_err = (n as f64 + 2.0) * eps * (1.0 + am) * mag_prev;
    (re, err + freq_err)
}

/// Exact tail ∫_Λ^∞ cos(tλ)·Π sin(aᵢλ)/(aᵢλ) dλ for n ≤ TAIL_EXACT_MAX
/// factors, with a certified bound on its floating evaluation error.
///
/// Expansion: Π sin(aᵢλ) = (2i)^{−n} Σ_ε σ_ε e^{iλΣεᵢaᵢ} over sign
/// patterns ε with σ_ε = Πεᵢ, and cos(tλ) = ½Σ_{τ=±1} e^{iτtλ}, so the
/// tail is (Πaᵢ)⁻¹ 2^{−(n+1)} Σ_{ε,τ} σ_ε·Re[(−i)ⁿ Eₙ(Σεa + τt, Λ)].
fn exact_tail(a: &[f64], t: f64, lambda: f64) -> (f64, f64) {
    let n = a.len();
    let inv_prod: f64 = a.iter().map(|ai| 1.0 / ai).product();
    let scale = inv_prod / 2.0f64.powi(n as i32 + 1);
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut err_sum = 0.0f64;
    let mut abs_sum = 0.0f64;
    for pattern in 0..(1u32 << n) {
        let mut a_sum = 0.0;
        let mut sigma = 1.0;
        for (i, &ai) in a.iter().enumerate() {
            if pattern >> i & 1 == 1 {
                a_sum += ai;
            } else {
                a_sum -= ai;
                sigma = -sigma;
            }
        }
        for tau in [1.0, -1.0] {
            let omega = a_sum + tau * t;
            let (re, err) = e_tail_re(n, omega, lambda);
            kahan_add(sigma * re, &mut sum, &mut comp);
            err_sum += err;
            abs_sum += re.abs();
        }
    }
    let value = scale * sum;
    let eval_err = scale * (err_sum + 4.0 * f64::EPSILON * abs_sum)
        + f64::EPSILON * value.abs();
    (value, eval_err)
}

/// [`fourier_density`] with the default cutoff and tolerance.
pub fn fourier_density_default(w: &[f64], t: f64) -> Result<f64> {
    fourier_density(w, t, FOURIER_DEFAULT_LAMBDA_MAX, FOURIER_DEFAULT_TOL)
}

/// Density of Σ wᵢUᵢ at t by characteristic-function inversion,
/// certified to |error| ≤ tol. `lambda_max` caps the quadrature cutoff;
/// if no certificate at or below that cutoff reaches `tol`, the call
/// returns [`Error::QuadratureFailure`].
pub fn fourier_density(w: &[f64], t: f64, lambda_max: f64, tol: f64) -> Result<f64> {
    let a = validated_half_widths(w, usize::MAX)?;
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "evaluation point must be finite, got {t}"
        )));
    }
    if !(lambda_max > 0.0) || !lambda_max.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "lambda_max must be positive and finite, got {lambda_max}"
        )));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tol must be positive and finite, got {tol}"
        )));
    }
    let n = a.len();
    let r: f64 = a.iter().sum();
    let m_freq = t.abs() + r; // |g^{(4)}| ≤ m_freq⁴

    // Choose the cutoff; evaluate or bound the tail beyond it.
    let (lambda, tail_value, tail_err) = if n <= TAIL_EXACT_MAX {
        let lambda = lambda_max.min(TAIL_SPLIT);
        let (tv, te) = exact_tail(&a, t, lambda);
        if !tv.is_finite() || !(te < tol) {
            return Err(Error::QuadratureFailure {
                tol,
                reason: "tail evaluation accuracy alone exceeds the tolerance",
            });
        }
        (lambda, tv, te)
    } else {
        // |Π sinc| ≤ Π min(1, 1/(aᵢλ)) ≤ (Π_{i∈K} 1/aᵢ)·λ^{−k} for the k
        // largest half-widths, so the tail beyond Λ is at most
        // P_k·Λ^{1−k}/(k−1). Pick the k minimizing the required Λ.
        let budget = 0.5 * tol;
        let mut sorted = a.clone();
        sorted.sort_by(|x, y| y.total_cmp(x));
        let mut best = f64::INFINITY;
        let mut p_k = 1.0f64;
        for (k0, &ai) in sorted.iter().enumerate() {
            p_k /= ai;
            let k = k0 + 1;
            if k < 2 {
                continue;
            }
            let need = (p_k / ((k - 1) as f64 * budget)).powf(1.0 / (k - 1) as f64);
            best = best.min(need);
        }
        if !(best <= lambda_max) {
            return Err(Error::QuadratureFailure {
                tol,
                reason: "characteristic-function tail not certifiable below lambda_max",
            });
        }
        (best.max(1e-9), 0.0, budget)
    };

    // Panel width targeting the remaining budget, then the actual bound.
    let quad_budget = (tol - tail_err) * 0.95;
    if quad_budget <= 0.0 {
        return Err(Error::QuadratureFailure {
            tol,
            reason: "tail evaluation accuracy alone exceeds the tolerance",
        });
    }
    let m4 = m_freq.powi(4);
    let panels = if m4 == 0.0 {
        1
    } else {
        let ell = (2880.0 * quad_budget / (lambda * m4)).powf(0.25);
        (lambda / ell).ceil() as usize
    }
    .max(1);
    if panels > PANEL_CAP {
        return Err(Error::QuadratureFailure {
            tol,
            reason: "quadrature panel budget exceeded",
        });
    }
    let ell = lambda / panels as f64;
    let quad_err = lambda * ell.powi(4) * m4 / 2880.0;
    let round_err = 1e-13 * (1.0 + lambda);
    if quad_err + tail_err + round_err > tol {
        return Err(Error::QuadratureFailure {
            tol,
            reason: "certified error bound exceeds the tolerance",
        });
    }

    // Composite Simpson over [0, lambda] with Kahan accumulation.
    let g = |lam: f64| -> f64 {
        let mut prod = (lam * t).cos();
        for &ai in &a {
            let x = ai * lam;
            prod *= if x.abs() < 1e-4 {
                1.0 - x * x / 6.0 + x.powi(4) / 120.0
            } else {
                x.sin() / x
            };
        }
        prod
    };
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut left = g(0.0);
    for j in 0..panels {
        let x0 = j as f64 * ell;
        let mid = g(x0 + 0.5 * ell);
        let right = if j + 1 == panels {
            g(lambda)
        } else {
            g(x0 + ell)
        };
        kahan_add(left + 4.0 * mid + right, &mut sum, &mut comp);
        left = right;
    }
    let head = sum * ell / 6.0;

    Ok((head + tail_value) / PI)
}

#[cfg(test)]
mod tests {
    use super::super::exact::{exact_density, exact_density_rational_from_f64s};
    use super::*;
    use crate::rng::chunk_rng;
    use num_traits::ToPrimitive;
    use rand::Rng;

    #[test]
    fn single_uniform_inverts_cleanly() {
        let tol = 1e-8;
        let p = fourier_density(&[1.0], 0.0, 1e5, tol).unwrap();
        assert!((p - 1.0).abs() <= tol, "{p}");
        let p = fourier_density(&[1.0], 0.3, 1e5, tol).unwrap();
        assert!((p - 1.0).abs() <= tol, "{p}");
        let p = fourier_density(&[1.0], 0.6, 1e5, tol).unwrap();
        assert!(p.abs() <= tol, "{p}");
    }

    #[test]
    fn tiny_cutoff_still_certifies_small_n() {
        // With few factors the tail is closed-form, so even a minuscule
        // cutoff yields a certified value.
        let p = fourier_density(&[1.0], 0.0, 0.5, 1e-8).unwrap();
        assert!((p - 1.0).abs() <= 1e-8, "{p}");
        let r = 1.0 / 2.0_f64.sqrt();
        let p = fourier_density(&[r, r], 0.0, 2.0, 1e-8).unwrap();
        assert!((p - 2.0_f64.sqrt()).abs() <= 1e-8, "{p}");
        let s = 1.0 / 3.0_f64.sqrt();
        let want = exact_density(&[s, s, s], 0.1).unwrap();
        let p = fourier_density(&[s, s, s], 0.1, 2.0, 1e-8).unwrap();
        assert!((p - want).abs() <= 1e-8, "{p} vs {want}");
    }

    #[test]
    fn triangular_density_matches() {
        let r = 1.0 / 2.0_f64.sqrt();
        let tol = 1e-8;
        for t in [0.0, 0.2, -0.45, 0.6] {
            let want = exact_density(&[r, r], t).unwrap();
            let got = fourier_density(&[r, r], t, 1e5, tol).unwrap();
            assert!((got - want).abs() <= tol, "t={t}: {got} vs {want}");
        }
    }

    #[test]
    fn equal_weight_twelve_fold_cross_oracle() {
        let w = vec![1.0 / 12f64.sqrt(); 12];
        let tol = FOURIER_DEFAULT_TOL;
        let got = fourier_density_default(&w, 0.0).unwrap();
        let want = exact_density(&w, 0.0).unwrap();
        assert!((got - want).abs() <= tol, "{got} vs {want}");
    }

    #[test]
    fn certified_tolerance_is_honest_against_rational_oracle() {
        let mut rng = chunk_rng(0xF0042, "fourier-honesty", 0, 0);
        for case in 0..8 {
            let n = rng.gen_range(3..=6);
            let w: Vec<f64> = (0..n)
                .map(|_| {
                    let v: f64 = rng.gen_range(0.1..1.0);
                    if rng.gen::<bool>() {
                        v
                    } else {
                        -v
                    }
                })
                .collect();
            let r: f64 = w.iter().map(|x| x.abs()).sum::<f64>() / 2.0;
            let tol = 1e-9;
            for k in 0..5 {
                let t = -0.9 * r + 1.8 * r * k as f64 / 4.0;
                let got = fourier_density(&w, t, 1e7, tol).unwrap();
                let want = exact_density_rational_from_f64s(&w, t)
                    .unwrap()
                    .to_f64()
                    .unwrap();
                assert!(
                    (got - want).abs() <= tol,
                    "case {case} t={t}: |{got} − {want}| > {tol}"
                );
            }
        }
        // Larger factor counts at a looser certified tolerance.
        for n in [7usize, 8] {
            let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
            let r: f64 = w.iter().map(|x| x.abs()).sum::<f64>() / 2.0;
            for k in 0..3 {
                let t = -0.8 * r + 1.6 * r * k as f64 / 2.0;
                let tol = 1e-8;
                let got = fourier_density(&w, t, 1e7, tol).unwrap();
                let want = exact_density_rational_from_f64s(&w, t)
                    .unwrap()
                    .to_f64()
                    .unwrap();
                assert!((got - want).abs() <= tol, "n={n} t={t}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn random_weights_agree_with_exact_density() {
        let mut rng = chunk_rng(0xF0042, "fourier-vs-exact", 0, 0);
        for _ in 0..10 {
            let n = rng.gen_range(1..=10);
            let w: Vec<f64> = (0..n)
                .map(|_| {
                    let v: f64 = rng.gen_range(0.08..1.2);
                    if rng.gen::<bool>() {
                        v
                    } else {
                        -v
                    }
                })
                .collect();
            let r: f64 = w.iter().map(|x| x.abs()).sum::<f64>() / 2.0;
            for k in 0..8 {
                let t = -r + 2.0 * r * (k as f64 + 0.5) / 8.0;
                let got = fourier_density(&w, t, 1e6, 5e-7).unwrap();
                let want = exact_density(&w, t).unwrap();
                assert!(
                    (got - want).abs() <= 1e-6,
                    "n={n} t={t}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn refuses_uncertifiable_requests() {
        // Many factors, tight tolerance, tiny cutoff: the product tail
        // bound cannot close below lambda_max.
        let e = fourier_density(&[0.5; 9], 0.0, 2.0, 1e-10);
        assert!(matches!(e, Err(Error::QuadratureFailure { .. })), "{e:?}");
        // Absurd tolerance: the certified floating slop alone exceeds it.
        let e = fourier_density(&[0.5, 0.5, 0.5, 0.5], 0.0, 1e9, 1e-15);
        assert!(matches!(e, Err(Error::QuadratureFailure { .. })), "{e:?}");
        // Bad parameters.
        assert!(fourier_density(&[1.0], 0.0, -1.0, 1e-6).is_err());
        assert!(fourier_density(&[1.0], 0.0, 1e5, 0.0).is_err());
        assert!(fourier_density(&[1.0, 0.0], 0.0, 1e5, 1e-6).is_err());
    }
}
