//! Numeric helpers for the experiment harness: sample mean / standard
//! error from streaming sums, least-squares slopes, and the regularized
//! upper incomplete gamma function behind chi-square p-values.

/// Sample mean and standard error of the mean from the streaming sums
/// Σx and Σx². With fewer than two samples the standard error is 0.
pub(crate) fn mean_stderr(sum: f64, sumsq: f64, count: u64) -> (f64, f64) {
    if count == 0 {
        return (f64::NAN, 0.0);
    }
    let n = count as f64;
    let mean = sum / n;
    if count < 2 {
        return (mean, 0.0);
    }
    // Sample variance, clamped against roundoff cancellation.
    let var = ((sumsq - n * mean * mean) / (n - 1.0)).max(0.0);
    (mean, (var / n).sqrt())
}

/// Least-squares slope of y against x. `None` when fewer than two points
/// are given or all x coincide.
pub(crate) fn ls_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

/// Upper-tail p-value of a chi-square statistic with `df` degrees of
/// freedom: Q(df/2, stat/2). Degenerate inputs (df = 0 or stat ≤ 0)
/// return 1.
pub(crate) fn chi_square_pvalue(stat: f64, df: usize) -> f64 {
    if df == 0 || !(stat > 0.0) {
        return 1.0;
    }
    gamma_q(df as f64 / 2.0, stat / 2.0)
}

/// Lanczos (g = 7, 9-term) log-gamma for x ≥ 0.5, which is all the
/// p-value path ever needs (a = df/2 ≥ 1/2).
fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x >= 0.5, "ln_gamma is only implemented for x ≥ 0.5");
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let mut acc = COEF[0];
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x - 1.0 + i as f64);
    }
    let t = x + 6.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x - 0.5) * t.ln() - t + acc.ln()
}

const GAMMA_ITMAX: usize = 500;
const GAMMA_EPS: f64 = 3.0e-16;
const GAMMA_FPMIN: f64 = 1.0e-300;

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x)/Γ(a) for a > 0,
/// x ≥ 0, by the classic series / continued-fraction split at x = a + 1.
pub(crate) fn gamma_q(a: f64, x: f64) -> f64 {
    debug_assert!(a > 0.0 && x >= 0.0, "gamma_q needs a > 0, x ≥ 0");
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_contfrac(a, x)
    }
}

/// Lower regularized gamma P(a, x) by its power series; converges fast
/// for x < a + 1.
fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..GAMMA_ITMAX {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * GAMMA_EPS {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Upper regularized gamma Q(a, x) by modified-Lentz continued fraction;
/// converges fast for x ≥ a + 1.
fn gamma_q_contfrac(a: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / GAMMA_FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=GAMMA_ITMAX {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < GAMMA_FPMIN {
            d = GAMMA_FPMIN;
        }
        c = b + an / c;
        if c.abs() < GAMMA_FPMIN {
            c = GAMMA_FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < GAMMA_EPS {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_stderr_hand_case() {
        // Samples 1, 2, 3: mean 2, sample variance 1, stderr 1/√3.
        let (m, se) = mean_stderr(6.0, 14.0, 3);
        assert!((m - 2.0).abs() < 1e-15);
        assert!((se - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        // Constant samples: zero stderr even with cancellation noise.
        let (m, se) = mean_stderr(5.0 * 7.0, 5.0 * 49.0, 5);
        assert!((m - 7.0).abs() < 1e-15);
        assert!(se >= 0.0 && se < 1e-12);
        assert_eq!(mean_stderr(4.0, 16.0, 1).1, 0.0);
    }

    #[test]
    fn slope_recovers_exact_line() {
        let pts: Vec<(f64, f64)> = (0..7).map(|k| (k as f64, 3.0 - 2.5 * k as f64)).collect();
        let s = ls_slope(&pts).unwrap();
        assert!((s + 2.5).abs() < 1e-14);
        assert!(ls_slope(&pts[..1]).is_none());
        assert!(ls_slope(&[(1.0, 2.0), (1.0, 3.0)]).is_none());
    }

    #[test]
    fn ln_gamma_reference_values() {
        // Γ(1) = Γ(2) = 1, Γ(5) = 24, Γ(1/2) = √π.
        assert!(ln_gamma(1.0).abs() < 1e-13);
        assert!(ln_gamma(2.0).abs() < 1e-13);
        assert!((ln_gamma(5.0) - 24.0f64.ln()).abs() < 1e-12);
        assert!((ln_gamma(0.5) - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-13);
    }

    #[test]
    fn chi_square_df2_is_exponential() {
        // df = 2: Q = e^{−stat/2} exactly.
        for stat in [0.1, 1.0, 2.0, 5.0, 20.0] {
            let p = chi_square_pvalue(stat, 2);
            assert!((p - (-stat / 2.0f64).exp()).abs() < 1e-12, "stat={stat}");
        }
    }

    #[test]
    fn chi_square_quantile_anchors() {
        // Standard 5% critical values: χ²₀.₀₅(1) = 3.841459, χ²₀.₀₅(10) = 18.307038.
        assert!((chi_square_pvalue(3.841_458_820_694_124, 1) - 0.05).abs() < 1e-9);
        assert!((chi_square_pvalue(18.307_038_053_275_146, 10) - 0.05).abs() < 1e-9);
        // Both continued-fraction and series branches are exercised above
        // (stat/2 vs df/2 + 1 on either side).
        assert_eq!(chi_square_pvalue(0.0, 4), 1.0);
        assert_eq!(chi_square_pvalue(5.0, 0), 1.0);
    }

    #[test]
    fn gamma_q_matches_quadrature() {
        // Q(a, x) = ∫ₓ^∞ t^{a−1}e^{−t} dt / Γ(a), cross-checked by Simpson
        // on a truncated range for a few (a, x) pairs.
        for &(a, x) in &[(0.5, 0.3), (1.5, 2.0), (4.0, 7.5), (12.0, 6.0)] {
            let hi: f64 = x + 60.0 + 10.0 * a;
            let m = 40_000;
            let hstep = (hi - x) / m as f64;
            let f = |t: f64| t.powf(a - 1.0) * (-t).exp();
            let mut s = f(x) + f(hi);
            for k in 1..m {
                let t = x + k as f64 * hstep;
                s += f(t) * if k % 2 == 1 { 4.0 } else { 2.0 };
            }
            let integral = s * hstep / 3.0;
            let q = integral / ln_gamma(a).exp().max(f64::MIN_POSITIVE);
            let got = gamma_q(a, x);
            assert!(
                (got - q).abs() < 1e-8 * (1.0 + q.abs()),
                "a={a}, x={x}: got {got}, quadrature {q}"
            );
        }
    }

    #[test]
    fn gamma_q_is_monotone_in_x() {
        let a = 3.5;
        let mut prev = 1.0;
        for k in 1..200 {
            let q = gamma_q(a, k as f64 * 0.1);
            assert!(q <= prev + 1e-14, "Q must decrease in x");
            prev = q;
        }
        assert!(prev < 1e-4);
    }
}
