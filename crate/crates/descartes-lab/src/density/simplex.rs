//! Uniform order statistics: exact spacing moments, the variance of a
//! weighted order-statistic sum on a fixed order simplex, and the
//! quadratic functional F that ties the weighted empirical process to
//! the simplex geometry.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::perm::{is_permutation_one_based, sigma_tail_sums};
use crate::{Error, Result};

/// Exact first and second moments of uniform spacings X₁, X₂ from n iid
/// uniforms on [0, 1] (the n+1 gaps are exchangeable Dirichlet).
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingMoments {
    pub n: usize,
    /// E[X₁] = 1/(n+1).
    pub e_x1: BigRational,
    /// E[X₁²] = 2/((n+1)(n+2)).
    pub e_x1sq: BigRational,
    /// E[X₁X₂] = 1/((n+1)(n+2)).
    pub e_x1x2: BigRational,
}

impl SpacingMoments {
    /// The exact closure identity (n+1)E[X₁²] + n(n+1)E[X₁X₂] = 1,
    /// equivalent to E[(ΣXⱼ)²] = 1 by exchangeability.
    pub fn consistency_holds(&self) -> bool {
        let np1 = BigRational::from_integer(BigInt::from(self.n + 1));
        let n = BigRational::from_integer(BigInt::from(self.n));
        &np1 * &self.e_x1sq + n * &np1 * &self.e_x1x2 == BigRational::one()
    }
}

/// Exact spacing moments for n ≥ 1 sample points.
pub fn spacing_moments(n: usize) -> Result<SpacingMoments> {
    if n < 1 {
        return Err(Error::InvalidParameter(
            "spacing moments need at least one sample point".into(),
        ));
    }
    let np1 = BigInt::from(n + 1);
    let np1np2 = BigInt::from(n + 1) * BigInt::from(n + 2);
    Ok(SpacingMoments {
        n,
        e_x1: BigRational::new(BigInt::one(), np1),
        e_x1sq: BigRational::new(BigInt::from(2), np1np2.clone()),
        e_x1x2: BigRational::new(BigInt::one(), np1np2),
    })
}

/// Variance of Y = Σⱼ w_{σ(j)}·V₍ⱼ₎ (ascending order statistics of n iid
/// uniforms), via the closed form over the tail sums αⱼ of w along σ:
///
///   Var Y = Σαⱼ²/((n+1)(n+2)) − (Σαⱼ)²/((n+1)²(n+2)),
///
/// returned together with the bound Σαⱼ²/((n+1)(n+2)) = w(σ)²/((n+1)(n+2)).
/// The exact value never exceeds the bound: the subtracted term is a
/// square, and both values share the computed first term, so the
/// comparison also holds in floating point.
pub fn simplex_variance(w: &[f64], sigma: &[usize]) -> Result<(f64, f64)> {
    if w.is_empty() {
        return Err(Error::LengthTooSmall { len: 0, min: 1 });
    }
    if w.len() != sigma.len() {
        return Err(Error::LengthMismatch {
            left: w.len(),
            right: sigma.len(),
        });
    }
    if let Some(bad) = w.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "weights must be finite, got {bad}"
        )));
    }
    if !is_permutation_one_based(sigma, w.len()) {
        return Err(Error::InvalidParameter(
            "sigma must be a permutation of 1..=n".into(),
        ));
    }
    let n = w.len();
    let alpha = sigma_tail_sums(w, sigma);
    let ssq: f64 = alpha.iter().map(|a| a * a).sum();
    let s: f64 = alpha.iter().sum();
    let bound = ssq / ((n + 1) as f64 * (n + 2) as f64);
    let exact = bound - s * s / (((n + 1) * (n + 1)) as f64 * (n + 2) as f64);
    Ok((exact, bound))
}

fn validate_cube_point(x: &[f64], w: &[f64]) -> Result<Vec<usize>> {
    if x.is_empty() {
        return Err(Error::LengthTooSmall { len: 0, min: 1 });
    }
    if x.len() != w.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: w.len(),
        });
    }
    for (i, &xi) in x.iter().enumerate() {
        if !xi.is_finite() || !(0.0..=1.0).contains(&xi) {
            return Err(Error::InvalidParameter(format!(
                "coordinate {i} must lie in [0, 1], got {xi}"
            )));
        }
    }
    if let Some(bad) = w.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "weights must be finite, got {bad}"
        )));
    }
    // π lists coordinate indices in ascending x order.
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| x[i].total_cmp(&x[j]));
    for k in 0..order.len() - 1 {
        let (i, j) = (order[k], order[k + 1]);
        if x[i] == x[j] {
            return Err(Error::TiedCoordinates(i.min(j), i.max(j)));
        }
    }
    Ok(order)
}

/// Both evaluations of the simplex functional at x:
/// the ordered-gap form Σⱼ (w_{π(j)} + … + w_{π(n)})²·(x_{π(j)} − x_{π(j−1)})
/// with x_{π(0)} := 0, and the independent level-set integral
/// ∫₀¹ (Σⱼ wⱼ·1{xⱼ > t})² dt evaluated by exact piecewise-constant
/// summation. They agree to ~1e−10; ties are rejected because the order
/// simplices cover the cube up to measure zero.
pub fn simplex_f_forms(x: &[f64], w: &[f64]) -> Result<(f64, f64)> {
    let order = validate_cube_point(x, w)?;
    let n = x.len();
    // Ordered-gap form via suffix sums of w along π.
    let mut tail = vec![0.0f64; n + 1];
    for k in (0..n).rev() {
        tail[k] = tail[k + 1] + w[order[k]];
    }
    let mut gap_form = 0.0;
    let mut prev = 0.0;
    for k in 0..n {
        let xk = x[order[k]];
        gap_form += tail[k] * tail[k] * (xk - prev);
        prev = xk;
    }
    // Level-set form: on each segment between consecutive sorted
    // coordinates, G(t) = Σ wⱼ1{xⱼ > t} is constant; recompute it from
    // scratch per segment so the two forms share no arithmetic.
    let mut cuts = Vec::with_capacity(n + 2);
    cuts.push(0.0);
    for &k in &order {
        cuts.push(x[k]);
    }
    cuts.push(1.0);
    let mut level_form = 0.0;
    for seg in 0..cuts.len() - 1 {
        let width = cuts[seg + 1] - cuts[seg];
        if width <= 0.0 {
            continue;
        }
        let mid = 0.5 * (cuts[seg] + cuts[seg + 1]);
        let g: f64 = x
            .iter()
            .zip(w)
            .map(|(&xj, &wj)| if xj > mid { wj } else { 0.0 })
            .sum();
        level_form += g * g * width;
    }
    Ok((gap_form, level_form))
}

/// The simplex functional (ordered-gap form). See [`simplex_f_forms`].
pub fn simplex_f(x: &[f64], w: &[f64]) -> Result<f64> {
    let (gap_form, level_form) = simplex_f_forms(x, w)?;
    debug_assert!(
        (gap_form - level_form).abs() <= 1e-10 * (1.0 + gap_form.abs()),
        "form mismatch: {gap_form} vs {level_form}"
    );
    Ok(gap_form)
}
