//! Centered decompositions of the alternating first-moment sum
//! Σⱼ (−1)ʲ·j·ξⱼ, the balance ("goodness") condition on sign patterns,
//! and its exact binomial tail.
//!
//! The decompositions rewrite the alternating sum as a centered linear
//! form plus a multiple of a single aggregate, which is what makes
//! anti-concentration arguments on random relabelings tractable. Both
//! parities satisfy an exact algebraic identity; `alt_decompose` reports
//! the floating-point residual of that identity so callers can verify it
//! to roundoff on concrete data.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Indicator of the relative window event for the *identity* labeling:
/// |Σⱼ sⱼ·j·ξⱼ| ≤ |Σⱼ sⱼ·ξⱼ| with 1-based j, where sⱼ ≡ 1 in plain mode
/// and sⱼ = (−1)ʲ when `alternate` is set. Comparisons are closed.
///
/// Panics on empty input.
pub fn relative_event_indicator(xi: &[f64], alternate: bool) -> bool {
    assert!(!xi.is_empty(), "relative event needs at least one entry");
    let mut weighted = 0.0;
    let mut plain = 0.0;
    for (j0, &x) in xi.iter().enumerate() {
        let sign = if alternate && j0 % 2 == 0 { -1.0 } else { 1.0 };
        weighted += sign * (j0 + 1) as f64 * x;
        plain += sign * x;
    }
    weighted.abs() <= plain.abs()
}

/// Result of [`alt_decompose`]: the alternating sum Σ(−1)ʲjξⱼ rewritten
/// through centered residuals, with the reconstruction residual.
#[derive(Debug, Clone, PartialEq)]
pub enum AltDecomposition {
    /// Odd length k = 2m−1 (so m ≥ 2): the entries split into m−1
    /// even-indexed and m odd-indexed ones, each group centered
    /// separately.
    Odd {
        m: usize,
        /// Sum of even-indexed entries ξ₂, ξ₄, …, ξ₂ₘ₋₂.
        s_e: f64,
        /// Sum of odd-indexed entries ξ₁, ξ₃, …, ξ₂ₘ₋₁.
        s_o: f64,
        /// s_e − s_o.
        s: f64,
        /// Σⱼ j·(ξ₂ⱼ − s_e/(m−1)) over j = 1, …, m−1.
        t_e: f64,
        /// Σⱼ j·(ξ₂ⱼ₋₁ − s_o/m) over j = 1, …, m.
        t_o: f64,
        /// t_e − t_o; the identity is Σ(−1)ʲjξⱼ = 2t + m·s.
        t: f64,
        /// |Σ(−1)ʲjξⱼ − (2t + m·s)| in floating point.
        residual: f64,
    },
    /// Even length k = 2m: consecutive differences ηⱼ = ξ₂ⱼ − ξ₂ⱼ₋₁ are
    /// centered, and the leftover collapses into one aggregate Λ.
    Even {
        m: usize,
        /// ηⱼ = ξ₂ⱼ − ξ₂ⱼ₋₁.
        eta: Vec<f64>,
        /// η′ⱼ = ηⱼ − s/m (so Ση′ⱼ = 0 up to roundoff).
        eta_prime: Vec<f64>,
        /// Σηⱼ.
        s: f64,
        /// Λ = (1 + 1/m)·s + (1/m)·Σⱼ ξ₂ⱼ₋₁; the identity is
        /// Σ(−1)ʲjξⱼ = 2Σⱼ j·η′ⱼ + m·Λ.
        lambda: f64,
        /// |Σ(−1)ʲjξⱼ − (2Σj·η′ⱼ + m·Λ)| in floating point.
        residual: f64,
    },
}

impl AltDecomposition {
    /// Group count m (k = 2m−1 or k = 2m).
    pub fn m(&self) -> usize {
        match self {
            AltDecomposition::Odd { m, .. } | AltDecomposition::Even { m, .. } => *m,
        }
    }

    /// Floating-point residual of the reconstruction identity. Expected
    /// to be ≤ 1e−10 · (1 + max|ξ|·k²) for finite data.
    pub fn residual(&self) -> f64 {
        match self {
            AltDecomposition::Odd { residual, .. }
            | AltDecomposition::Even { residual, .. } => *residual,
        }
    }
}

/// Decomposes the alternating sum Σⱼ₌₁ᵏ (−1)ʲ·j·ξⱼ (1-based j) into the
/// parity-appropriate centered form and reports the reconstruction
/// residual. Requires k ≥ 2.
pub fn alt_decompose(xi: &[f64]) -> Result<AltDecomposition> {
    let k = xi.len();
    if k < 2 {
        return Err(Error::LengthTooSmall { len: k, min: 2 });
    }
    if let Some(bad) = xi.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "entries must be finite, got {bad}"
        )));
    }
    let mut lhs = 0.0;
    for (j0, &x) in xi.iter().enumerate() {
        let sign = if j0 % 2 == 0 { -1.0 } else { 1.0 };
        lhs += sign * (j0 + 1) as f64 * x;
    }
    if k % 2 == 1 {
        // k = 2m − 1; even-indexed entries ξ₂ⱼ sit at 0-based 2j−1.
        let m = (k + 1) / 2;
        let mut s_e = 0.0;
        let mut s_o = 0.0;
        for (j0, &x) in xi.iter().enumerate() {
            if j0 % 2 == 1 {
                s_e += x;
            } else {
                s_o += x;
            }
        }
        let mean_e = s_e / (m - 1) as f64;
        let mean_o = s_o / m as f64;
        let mut t_e = 0.0;
        let mut t_o = 0.0;
        for j in 1..=m - 1 {
            t_e += j as f64 * (xi[2 * j - 1] - mean_e);
        }
        for j in 1..=m {
            t_o += j as f64 * (xi[2 * j - 2] - mean_o);
        }
        let s = s_e - s_o;
        let t = t_e - t_o;
        let recon = 2.0 * t + m as f64 * s;
        Ok(AltDecomposition::Odd {
            m,
            s_e,
            s_o,
            s,
            t_e,
            t_o,
            t,
            residual: (lhs - recon).abs(),
        })
    } else {
        let m = k / 2;
        let eta: Vec<f64> = (1..=m).map(|j| xi[2 * j - 1] - xi[2 * j - 2]).collect();
        let s: f64 = eta.iter().sum();
        let mean = s / m as f64;
        let eta_prime: Vec<f64> = eta.iter().map(|&e| e - mean).collect();
        let odd_sum: f64 = (1..=m).map(|j| xi[2 * j - 2]).sum();
        let lambda = (1.0 + 1.0 / m as f64) * s + odd_sum / m as f64;
        let centered: f64 = eta_prime
            .iter()
            .enumerate()
            .map(|(j0, &e)| (j0 + 1) as f64 * e)
            .sum();
        let recon = 2.0 * centered + m as f64 * lambda;
        Ok(AltDecomposition::Even {
            m,
            eta,
            eta_prime,
            s,
            lambda,
            residual: (lhs - recon).abs(),
        })
    }
}

/// Balance check of a ±1 sign pattern against a difference vector η:
/// with pos = #{j : signsⱼ·ηⱼ > 0}, the pattern is *good* when
/// m/4 ≤ pos ≤ 3m/4 (closed bounds). Returns (β², B², good) where
/// B² = Σηⱼ² and β² = B² − (Σ signsⱼ·ηⱼ)²/m.
///
/// For good patterns β² is provably within [B²/5, B²]; this holds
/// deterministically, not just on average, and is asserted in debug
/// builds.
///
/// Panics when lengths differ, the input is empty, or a sign is not ±1.
pub fn beta_b_check(eta: &[f64], signs: &[i8]) -> (f64, f64, bool) {
    assert_eq!(eta.len(), signs.len(), "eta and signs must align");
    assert!(!eta.is_empty(), "need at least one difference");
    assert!(
        signs.iter().all(|&s| s == 1 || s == -1),
        "signs must be ±1"
    );
    let m = eta.len();
    let mut b_sq = 0.0;
    let mut s_signed = 0.0;
    let mut pos = 0usize;
    for (&e, &s) in eta.iter().zip(signs) {
        b_sq += e * e;
        let se = s as f64 * e;
        s_signed += se;
        if se > 0.0 {
            pos += 1;
        }
    }
    let beta_sq = b_sq - s_signed * s_signed / m as f64;
    let good = 4 * pos >= m && 4 * pos <= 3 * m;
    if good {
        debug_assert!(
            5.0 * beta_sq >= b_sq * (1.0 - 1e-9),
            "good pattern must keep beta² ≥ B²/5: beta²={beta_sq}, B²={b_sq}"
        );
        debug_assert!(
            beta_sq <= b_sq * (1.0 + 1e-9) + f64::MIN_POSITIVE,
            "beta² cannot exceed B²: beta²={beta_sq}, B²={b_sq}"
        );
    }
    (beta_sq, b_sq, good)
}

/// Exact probability that a uniform ±1 pattern of length m is *bad*
/// (fails the balance condition of [`beta_b_check`]) when no ηⱼ
/// vanishes: 2⁻ᵐ · Σ C(m, j) over j with 4j < m or 4j > 3m.
///
/// The tail is at most 2·e^(−m/8) for every m.
pub fn local_goodness_tail(m: usize) -> BigRational {
    let mut bad = BigInt::zero();
    for j in 0..=m {
        if 4 * j < m || 4 * j > 3 * m {
            bad += num_integer::binomial(BigInt::from(m), BigInt::from(j));
        }
    }
    BigRational::new(bad, BigInt::one() << m)
}
