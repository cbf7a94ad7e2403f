//! The sine and cosine integrals Si(x) = ∫₀ˣ sin(u)/u du and
//! Ci(x) = γ + ln x + ∫₀ˣ (cos(u) − 1)/u du, accurate to ~1e−13.
//!
//! They close the oscillatory tails ∫_Λ^∞ e^{iωλ}/λⁿ dλ of the Fourier
//! inversion integral in closed form (via integration by parts down to
//! n = 1), where the absolute integrand bound is not summable.

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Machine-precision-ish sine integral; odd in x.
pub(crate) fn si(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= 4.0 {
        si_series(ax)
    } else {
        sici_continued_fraction(ax).0
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// Cosine integral for x > 0 (diverges to −∞ at 0).
pub(crate) fn ci(x: f64) -> f64 {
    assert!(x > 0.0, "Ci needs a positive argument, got {x}");
    if x <= 4.0 {
        ci_series(x)
    } else {
        sici_continued_fraction(x).1
    }
}

/// Power series Σ (−1)ᵏ x^{2k+1}/((2k+1)(2k+1)!), fine up to x ≈ 4 where
/// the largest term is ~x and cancellation is mild.
fn si_series(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let x2 = x * x;
    // u_k = x^{2k+1}/(2k+1)!; the summand is u_k/(2k+1).
    let mut u = x;
    let mut sum = x;
    let mut sign = 1.0;
    for k in 1..200 {
        u *= x2 / ((2 * k) as f64 * (2 * k + 1) as f64);
        sign = -sign;
        let term = sign * u / (2 * k + 1) as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Ci(x) = γ + ln x + Σ_{k≥1} (−1)ᵏ x^{2k}/((2k)(2k)!), for 0 < x ≤ 4.
fn ci_series(x: f64) -> f64 {
    let x2 = x * x;
    // u_k = x^{2k}/(2k)!; the summand is u_k/(2k).
    let mut u = 1.0;
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..200 {
        u *= x2 / ((2 * k - 1) as f64 * (2 * k) as f64);
        sign = -sign;
        let term = sign * u / (2 * k) as f64;
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    EULER_GAMMA + x.ln() + sum
}

/// For x > 4: E₁(−ix) = e^{ix}·h with h from the modified Lentz continued
/// fraction E₁(z) = e^{−z}/(z+1− 1²/(z+3− 2²/(z+5− ···))), and then
/// Si(x) = π/2 − Im E₁(−ix), Ci(x) = −Re E₁(−ix).
fn sici_continued_fraction(x: f64) -> (f64, f64) {
    // Complex scalars as (re, im) pairs; z = −ix.
    let z = (0.0, -x);
    const FPMIN: f64 = 1e-290;
    let cadd = |a: (f64, f64), b: (f64, f64)| (a.0 + b.0, a.1 + b.1);
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let cinv = |a: (f64, f64)| {
        let d = a.0 * a.0 + a.1 * a.1;
        (a.0 / d, -a.1 / d)
    };
    let mut b = cadd(z, (1.0, 0.0));
    let mut c = (1.0 / FPMIN, 0.0);
    let mut d = cinv(b);
    let mut h = d;
    for k in 1..200 {
        let a = -((k * k) as f64);
        b = cadd(b, (2.0, 0.0));
        // d = 1/(a·d + b)
        d = cinv(cadd(cmul((a, 0.0), d), b));
        // c = b + a/c
        c = cadd(b, cmul((a, 0.0), cinv(c)));
        let del = cmul(c, d);
        h = cmul(h, del);
        if (del.0 - 1.0).abs() + del.1.abs() < 1e-16 {
            break;
        }
    }
    let e = (x.cos(), x.sin());
    let e1 = cmul(e, h);
    (std::f64::consts::FRAC_PI_2 - e1.1, -e1.0)
}
