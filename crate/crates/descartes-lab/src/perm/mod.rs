//! Permutation statistics: normalized weight vectors, exact and Monte
//! Carlo probabilities of permutation events, the alternating-sum
//! decompositions, and the tail-sum diagnostics used by the variance and
//! classification arguments.
//!
//! Throughout, a permutation σ of {1, …, n} is a `&[usize]` of length n
//! holding the values σ(1), …, σ(n) (1-based values in 0-based slots).

mod altdecomp;
mod events;

pub use altdecomp::{
    alt_decompose, beta_b_check, local_goodness_tail, relative_event_indicator,
    AltDecomposition,
};
pub use events::{
    event_csv_row, event_probability_exact, event_probability_exact_with_cap,
    event_probability_mc, factorial_u64, PermEvent, ProbEstimate, DEFAULT_ENUM_CAP,
    EVENT_CSV_HEADER,
};

use crate::tolerances::WEIGHT_NORMALIZATION_SLACK_PER_ENTRY;
use crate::{Error, Result};

/// A centered, unit-norm weight vector: Σ wᵢ = 0 and Σ wᵢ² = 1, both up
/// to a floating slack that scales with the length.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    w: Vec<f64>,
}

impl WeightVector {
    /// Validates the centering and normalization invariants and wraps the
    /// vector. Use [`normalize_weights`] to build one from raw data.
    pub fn new(w: Vec<f64>) -> Result<Self> {
        let n = w.len();
        if n < 2 {
            return Err(Error::LengthTooSmall { len: n, min: 2 });
        }
        if let Some(bad) = w.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "weight vector contains a non-finite entry: {bad}"
            )));
        }
        let slack = WEIGHT_NORMALIZATION_SLACK_PER_ENTRY * n as f64;
        let sum: f64 = w.iter().sum();
        if sum.abs() > slack {
            return Err(Error::InvalidParameter(format!(
                "weights not centered: |Σw| = {:.3e} > {slack:.3e}",
                sum.abs()
            )));
        }
        let sumsq: f64 = w.iter().map(|x| x * x).sum();
        if (sumsq - 1.0).abs() > slack {
            return Err(Error::InvalidParameter(format!(
                "weights not unit-norm: |Σw² − 1| = {:.3e} > {slack:.3e}",
                (sumsq - 1.0).abs()
            )));
        }
        Ok(WeightVector { w })
    }

    /// The weights.
    pub fn as_slice(&self) -> &[f64] {
        &self.w
    }

    /// Number of weights.
    pub fn len(&self) -> usize {
        self.w.len()
    }

    /// Never true: construction requires at least two entries.
    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    /// Consumes the wrapper.
    pub fn into_vec(self) -> Vec<f64> {
        self.w
    }
}

/// Centers and rescales raw data to a [`WeightVector`]: wᵢ = (uᵢ − ū)/σ
/// with ū the mean and σ = √Σ(uᵢ − ū)², so the affine relation
/// uᵢ = ū + σ·wᵢ holds with σ > 0.
///
/// Errors with [`Error::AllEqual`] when every entry is the same (σ = 0)
/// and rejects vectors shorter than 2.
pub fn normalize_weights(u: &[f64]) -> Result<WeightVector> {
    let n = u.len();
    if n < 2 {
        return Err(Error::LengthTooSmall { len: n, min: 2 });
    }
    if let Some(bad) = u.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "cannot normalize non-finite data: {bad}"
        )));
    }
    let max = u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = u.iter().cloned().fold(f64::INFINITY, f64::min);
    if max == min {
        return Err(Error::AllEqual);
    }
    let mean = u.iter().sum::<f64>() / n as f64;
    let sigma = u.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>().sqrt();
    let w: Vec<f64> = u.iter().map(|x| (x - mean) / sigma).collect();
    WeightVector::new(w)
}

/// True when `sigma` holds each value of {1, …, n} exactly once.
pub(crate) fn is_permutation_one_based(sigma: &[usize], n: usize) -> bool {
    if sigma.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in sigma {
        if v == 0 || v > n || seen[v - 1] {
            return false;
        }
        seen[v - 1] = true;
    }
    true
}

/// The tail sums α_j = w_{σ(j)} + … + w_{σ(n)} for j = 1, …, n.
///
/// α_1 is the full sum (≈ 0 for centered weights) and Σ α_j² is the
/// tail-sum statistic [`w_sigma_sq`].
pub fn sigma_tail_sums(w: &[f64], sigma: &[usize]) -> Vec<f64> {
    debug_assert!(
        is_permutation_one_based(sigma, w.len()),
        "sigma must be a permutation of 1..=n"
    );
    let n = w.len();
    let mut tails = vec![0.0; n];
    let mut acc = 0.0;
    for j in (0..n).rev() {
        acc += w[sigma[j] - 1];
        tails[j] = acc;
    }
    tails
}

/// The tail-sum statistic w(σ)² = Σ_j (w_{σ(j)} + … + w_{σ(n)})².
///
/// Always within [0, n²]: each tail is at most √n in absolute value by
/// Cauchy–Schwarz and the unit normalization, and there are n of them.
pub fn w_sigma_sq(w: &WeightVector, sigma: &[usize]) -> f64 {
    sigma_tail_sums(w.as_slice(), sigma)
        .iter()
        .map(|a| a * a)
        .sum()
}

/// Dyadic classification of a permutation by its tail-sum statistic:
/// class 0 when w(σ) ≤ 4(|L| + Q)√n (boundary included), otherwise the
/// unique ℓ with 2^{ℓ−1} < w(σ) ≤ 2^ℓ.
///
/// Requires Q ≥ 10 (the standing assumption of the classification).
pub fn sym_ell_classify(w: &WeightVector, sigma: &[usize], l: f64, q: f64) -> Result<i32> {
    if !(q >= 10.0) {
        return Err(Error::InvalidParameter(format!(
            "classification constant Q must be ≥ 10, got {q}"
        )));
    }
    if !l.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite level L: {l}")));
    }
    let n = w.len() as f64;
    let ws = w_sigma_sq(w, sigma).sqrt();
    let threshold = 4.0 * (l.abs() + q) * n.sqrt();
    Ok(classify_level(ws, threshold))
}

/// Pure decision kernel of [`sym_ell_classify`]: 0 iff `w_sigma` is at or
/// below `threshold` (ties to class 0), else the unique ℓ with
/// 2^{ℓ−1} < w_sigma ≤ 2^ℓ.
pub(crate) fn classify_level(w_sigma: f64, threshold: f64) -> i32 {
    debug_assert!(w_sigma >= 0.0 && threshold >= 0.0);
    if w_sigma <= threshold {
        return 0;
    }
    // w_sigma > threshold ≥ 0 here, so log2 is finite.
    let mut ell = w_sigma.log2().ceil() as i32;
    while f64::exp2(f64::from(ell)) < w_sigma {
        ell += 1;
    }
    while f64::exp2(f64::from(ell - 1)) >= w_sigma {
        ell -= 1;
    }
    debug_assert!(
        f64::exp2(f64::from(ell - 1)) < w_sigma && w_sigma <= f64::exp2(f64::from(ell))
    );
    ell
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{chunk_rng, random_permutation, standard_normal};

    fn identity(n: usize) -> Vec<usize> {
        (1..=n).collect()
    }

    #[test]
    fn normalization_matches_hand_values() {
        let w = normalize_weights(&[1.0, 2.0, 3.0]).unwrap();
        let r = 1.0 / 2.0_f64.sqrt();
        let expect = [-r, 0.0, r];
        for (a, b) in w.as_slice().iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-15, "{a} vs {b}");
        }

        let w = normalize_weights(&[0.0, 1.0]).unwrap();
        assert!((w.as_slice()[0] + r).abs() < 1e-15);
        assert!((w.as_slice()[1] - r).abs() < 1e-15);
    }

    #[test]
    fn normalization_rejects_degenerate_input() {
        assert_eq!(normalize_weights(&[5.0, 5.0, 5.0]), Err(crate::Error::AllEqual));
        assert!(matches!(
            normalize_weights(&[1.0]),
            Err(crate::Error::LengthTooSmall { .. })
        ));
        assert!(normalize_weights(&[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn weight_vector_validates_invariants() {
        assert!(WeightVector::new(vec![0.5, 0.5]).is_err()); // not centered
        assert!(WeightVector::new(vec![1.0, -1.0]).is_err()); // norm √2
        let r = 1.0 / 2.0_f64.sqrt();
        assert!(WeightVector::new(vec![r, -r]).is_ok());
        assert!(WeightVector::new(vec![r]).is_err());
    }

    #[test]
    fn tail_sum_statistic_matches_hand_value() {
        let w = normalize_weights(&[1.0, 2.0, 3.0]).unwrap();
        // Tails for the identity: (w1+w2+w3, w2+w3, w3) = (0, 1/√2, 1/√2),
        // so the statistic is 0 + 1/2 + 1/2 = 1.
        let v = w_sigma_sq(&w, &identity(3));
        assert!((v - 1.0).abs() < 1e-12, "{v}");
        let tails = sigma_tail_sums(w.as_slice(), &identity(3));
        assert!(tails[0].abs() < 1e-15);
    }

    #[test]
    fn tail_sums_respect_the_permutation() {
        let w = normalize_weights(&[1.0, 2.0, 3.0]).unwrap();
        // σ = (3, 1, 2): tails (w3+w1+w2, w1+w2, w2) = (0, −1/√2, 0).
        let tails = sigma_tail_sums(w.as_slice(), &[3, 1, 2]);
        assert!(tails[0].abs() < 1e-15);
        assert!((tails[1] + 1.0 / 2.0_f64.sqrt()).abs() < 1e-15);
        assert!(tails[2].abs() < 1e-15);
        let v = w_sigma_sq(&w, &[3, 1, 2]);
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn statistic_is_bounded_by_n_squared_on_random_input() {
        let mut rng = chunk_rng(0xA11CE, "tail-bound", 0, 0);
        for n in [2usize, 5, 9, 16] {
            for _ in 0..25 {
                let raw: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
                let Ok(w) = normalize_weights(&raw) else {
                    continue;
                };
                let sigma: Vec<usize> = random_permutation(n, &mut rng)
                    .into_iter()
                    .map(|v| v + 1)
                    .collect();
                let v = w_sigma_sq(&w, &sigma);
                assert!(v >= 0.0);
                assert!(v <= (n * n) as f64 * (1.0 + 1e-9), "n={n}, v={v}");
            }
        }
    }

    #[test]
    fn classification_sends_small_statistics_to_class_zero() {
        let w = normalize_weights(&[1.0, 2.0, 3.0]).unwrap();
        // w(σ) ≤ √(n²) = 3 while the threshold is 4·10·√3 ≈ 69.
        assert_eq!(sym_ell_classify(&w, &identity(3), 0.0, 10.0).unwrap(), 0);
        assert_eq!(sym_ell_classify(&w, &[3, 1, 2], 2.0, 10.0).unwrap(), 0);
        assert!(sym_ell_classify(&w, &identity(3), 0.0, 9.0).is_err());
    }

    #[test]
    fn classification_boundary_ties_to_class_zero() {
        assert_eq!(classify_level(123.456, 123.456), 0);
        assert_eq!(classify_level(0.0, 0.0), 0);
        // Just above the threshold: lands on the dyadic grid.
        let ell = classify_level(123.456, 100.0);
        assert_eq!(ell, 7); // 2^6 = 64 < 123.456 ≤ 128 = 2^7
    }

    #[test]
    fn classification_respects_the_dyadic_grid() {
        let mut rng = chunk_rng(0xD7AD1C, "dyadic", 0, 0);
        use rand::Rng;
        for _ in 0..500 {
            let ws: f64 = rng.gen_range(1.0..1.0e6);
            let ell = classify_level(ws, 0.5);
            assert!(
                f64::exp2(f64::from(ell - 1)) < ws && ws <= f64::exp2(f64::from(ell)),
                "ws={ws}, ell={ell}"
            );
        }
        // Exact powers of two sit at the top of their class.
        assert_eq!(classify_level(8.0, 1.0), 3);
        assert_eq!(classify_level(8.000001, 1.0), 4);
    }

    #[test]
    fn large_n_reaches_a_nonzero_class_with_top_class_bounded() {
        // Engineer a near-maximal statistic. The tail sums T_j of a
        // zero-sum weight vector form a chain grounded at both ends
        // (T_1 = Σw = 0 and the final drop w_n = T_n costs T_n² of
        // norm), so the best profile is the half sine T_j = sin(πj/n),
        // giving w(σ) ≈ n/π after rescaling to unit norm. That clears
        // the class-0 threshold 40√n once n ≫ (40π)² ≈ 1.6e4.
        let n = 1_000_000usize;
        let t = |j: usize| -> f64 { ((j as f64) * std::f64::consts::PI / n as f64).sin() };
        let mut raw: Vec<f64> = (0..n)
            .map(|j0| t(j0) - if j0 + 1 < n { t(j0 + 1) } else { 0.0 })
            .collect();
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in raw.iter_mut() {
            *x /= norm;
        }
        let w = WeightVector::new(raw).unwrap();
        let sigma = identity(n);
        let ws = w_sigma_sq(&w, &sigma).sqrt();
        let threshold = 4.0 * 10.0 * (n as f64).sqrt();
        assert!(
            ws > threshold,
            "construction should clear the threshold: ws={ws}, thr={threshold}"
        );
        let ell = sym_ell_classify(&w, &sigma, 0.0, 10.0).unwrap();
        assert!(ell > 0);
        assert!(f64::exp2(f64::from(ell - 1)) < ws && ws <= f64::exp2(f64::from(ell)));
        // The top dyadic class never exceeds 2n.
        assert!(f64::exp2(f64::from(ell)) <= 2.0 * n as f64);
    }

    #[test]
    fn permutation_validation_catches_malformed_input() {
        assert!(is_permutation_one_based(&[1, 2, 3], 3));
        assert!(is_permutation_one_based(&[3, 1, 2], 3));
        assert!(!is_permutation_one_based(&[0, 1, 2], 3));
        assert!(!is_permutation_one_based(&[1, 1, 3], 3));
        assert!(!is_permutation_one_based(&[1, 2, 4], 3));
        assert!(!is_permutation_one_based(&[1, 2], 3));
    }
}
