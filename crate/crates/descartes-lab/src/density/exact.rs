//! Closed-form density of X = Σ wᵢUᵢ with independent Uᵢ uniform on
//! [−1/2, 1/2], by the signed truncated-power (inclusion–exclusion)
//! formula for a weighted sum of uniforms.
//!
//! Shifting by R = Σ|wᵢ|/2 reduces X to a positively-weighted sum of
//! uniforms on [0, 1] (negative weights fold away because Uᵢ is
//! symmetric), whose density at y is
//!
//!   f(y) = (1/((n−1)!·Π|wᵢ|)) · Σ_{S ⊆ [n]} (−1)^{|S|} (y − w_S)₊^{n−1},
//!
//! with w_S the subset sum of |wᵢ|. The alternating sum cancels
//! catastrophically near the support edges, so the subset walk keeps all
//! running quantities in double-double precision; the rational-arithmetic
//! twin below is the ground truth the floating path is tested against.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dd::Dd;
use crate::{Error, Result};

/// Inclusion–exclusion cap for the floating-point path (2ⁿ terms).
pub const EXACT_TERM_CAP: usize = 20;

/// Cap for the rational-arithmetic path.
pub const EXACT_RATIONAL_CAP: usize = 12;

pub(crate) fn validated_half_widths(w: &[f64], cap: usize) -> Result<Vec<f64>> {
    if w.is_empty() {
        return Err(Error::LengthTooSmall { len: 0, min: 1 });
    }
    if w.len() > cap {
        return Err(Error::TooManyTerms { n: w.len(), cap });
    }
    let mut a = Vec::with_capacity(w.len());
    for (i, &x) in w.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "weight {i} must be finite, got {x}"
            )));
        }
        if x == 0.0 {
            return Err(Error::ZeroWeight(i));
        }
        a.push(x.abs() / 2.0);
    }
    Ok(a)
}

/// Density of Σ wᵢUᵢ at t (Uᵢ iid uniform on [−1/2, 1/2]).
///
/// Exactly zero outside the support [−Σ|wᵢ|/2, Σ|wᵢ|/2]; values at the
/// measure-zero knot points follow the strict-positivity convention of
/// the truncated power. Requires n ≤ [`EXACT_TERM_CAP`] and all wᵢ ≠ 0.
pub fn exact_density(w: &[f64], t: f64) -> Result<f64> {
    let a = validated_half_widths(w, EXACT_TERM_CAP)?;
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "evaluation point must be finite, got {t}"
        )));
    }
    let n = a.len();
    // Half-widths aᵢ = |wᵢ|/2; the shifted variable uses weights 2aᵢ.
    let mut r = Dd::from_f64(0.0);
    for &ai in &a {
        r = r.add_f64(ai);
    }
    let y = r.add_f64(t); // t + R
    if y.hi < 0.0 || y.hi > 2.0 * r.to_f64() {
        return Ok(0.0);
    }
    // Denominator (n−1)!·Π(2aᵢ).
    let mut denom = 1.0f64;
    for k in 1..n {
        denom *= k as f64;
    }
    for &ai in &a {
        denom *= 2.0 * ai;
    }
    let power = (n - 1) as u32;
    // Gray-code walk over subsets: one weight flips per step, so the
    // subset sum stays exact in double-double precision.
    let mut acc = Dd::from_f64(0.0);
    let mut w_s = Dd::from_f64(0.0);
    let mut parity_neg = false;
    let total: u64 = 1 << n;
    for k in 0..total {
        let base = y.sub(w_s);
        if base.hi > 0.0 {
            let term = base.powi(power);
            acc = if parity_neg { acc.sub(term) } else { acc.add(term) };
        }
        if k + 1 < total {
            // Gray code flips exactly one membership bit per step; the
            // flipped bit's new state decides add vs remove.
            let bit = (k + 1).trailing_zeros() as usize;
            let next_gray = (k + 1) ^ ((k + 1) >> 1);
            let weight = 2.0 * a[bit];
            if next_gray & (1u64 << bit) != 0 {
                w_s = w_s.add_f64(weight);
            } else {
                w_s = w_s.add_f64(-weight);
            }
            parity_neg = !parity_neg;
        }
    }
    Ok(acc.to_f64() / denom)
}

/// Rational-arithmetic twin of [`exact_density`]: the same closed form
/// with every operation exact. Capped at n ≤ [`EXACT_RATIONAL_CAP`]
/// because subset sums of big rationals are costly.
pub fn exact_density_rational(w: &[BigRational], t: &BigRational) -> Result<BigRational> {
    if w.is_empty() {
        return Err(Error::LengthTooSmall { len: 0, min: 1 });
    }
    if w.len() > EXACT_RATIONAL_CAP {
        return Err(Error::TooManyTerms {
            n: w.len(),
            cap: EXACT_RATIONAL_CAP,
        });
    }
    for (i, x) in w.iter().enumerate() {
        if x.is_zero() {
            return Err(Error::ZeroWeight(i));
        }
    }
    let n = w.len();
    let widths: Vec<BigRational> = w.iter().map(|x| x.abs()).collect();
    let total: BigRational = widths.iter().sum();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let y = t + &total * &half;
    if y < BigRational::zero() || y > total {
        return Ok(BigRational::zero());
    }
    let mut denom = BigRational::one();
    for k in 1..n {
        denom *= BigRational::from_integer(BigInt::from(k));
    }
    for x in &widths {
        denom *= x;
    }
    let mut acc = BigRational::zero();
    for mask in 0u64..(1 << n) {
        let mut w_s = BigRational::zero();
        for (i, x) in widths.iter().enumerate() {
            if mask >> i & 1 == 1 {
                w_s += x;
            }
        }
        let base = &y - &w_s;
        if base > BigRational::zero() {
            let mut pow = BigRational::one();
            for _ in 0..n - 1 {
                pow *= &base;
            }
            if mask.count_ones() % 2 == 0 {
                acc += pow;
            } else {
                acc -= pow;
            }
        }
    }
    Ok(acc / denom)
}

/// Captures floats as exact dyadic rationals and runs the rational path.
pub fn exact_density_rational_from_f64s(w: &[f64], t: f64) -> Result<BigRational> {
    let wr = w
        .iter()
        .map(|&x| {
            BigRational::from_float(x)
                .ok_or(Error::ExactnessRequired("weights must be finite floats"))
        })
        .collect::<Result<Vec<_>>>()?;
    let tr = BigRational::from_float(t)
        .ok_or(Error::ExactnessRequired("evaluation point must be finite"))?;
    exact_density_rational(&wr, &tr)
}
