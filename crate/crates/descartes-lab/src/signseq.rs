//! Sign-change counting and the cumulative-sum diagnostics that bound how
//! many roots a polynomial has in the open unit intervals.
//!
//! For a coefficient sequence λ_0..λ_n, let S_k = λ_0 + … + λ_k and
//! T_k = S_0 + … + S_k.  The number of roots of P in (0, 1), counted with
//! multiplicity, is at most 1 + S(T_0..T_n), where S(·) is the number of
//! strict sign alternations of a sequence.  Replacing λ_j by (−1)^j λ_j
//! gives sequences S′, T′ that bound the count in (−1, 0) the same way.
//! [`bound_check`] evaluates both sides of the two inequalities exactly.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::{root_tally, Polynomial, RootTally};
use crate::Result;

/// Three-valued sign used by [`sign_changes`].
///
/// A floating-point value counts as zero only when it is bit-exactly zero;
/// no epsilon is applied, because sign changes are defined through strict
/// inequalities and a tolerance would silently change the count.  NaN
/// carries no sign and is skipped like a zero.
pub trait ThreeWaySign {
    /// Returns −1, 0, or +1.
    fn three_way_sign(&self) -> i8;
}

impl ThreeWaySign for f64 {
    fn three_way_sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
}

impl ThreeWaySign for BigRational {
    fn three_way_sign(&self) -> i8 {
        // Denominators are kept positive by the rational normalization, so
        // the numerator carries the sign.
        match self.numer().sign() {
            Sign::Plus => 1,
            Sign::NoSign => 0,
            Sign::Minus => -1,
        }
    }
}

impl ThreeWaySign for BigInt {
    fn three_way_sign(&self) -> i8 {
        match self.sign() {
            Sign::Plus => 1,
            Sign::NoSign => 0,
            Sign::Minus => -1,
        }
    }
}

impl ThreeWaySign for i64 {
    fn three_way_sign(&self) -> i8 {
        self.signum() as i8
    }
}

/// Counts the strict sign alternations of a sequence: the largest k such
/// that some subsequence b_{i_0}, …, b_{i_k} has consecutive terms of
/// strictly opposite sign.  Equivalently: drop the zero terms, then count
/// adjacent flips.  Empty and all-zero sequences have zero changes.
pub fn sign_changes<T: ThreeWaySign>(b: &[T]) -> usize {
    let mut last: i8 = 0;
    let mut count = 0usize;
    for v in b {
        let s = v.three_way_sign();
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Largest input length for which the O(n²) closed-form cross-check of the
/// T sequence runs under `debug_assertions`.  Longer inputs (deep scans)
/// skip it; the identity is also exercised directly by tests.
const CLOSED_FORM_CHECK_MAX_LEN: usize = 128;

/// T_k by the closed form Σ_{j≤k} (k+1−j)·(±1)^j·λ_j — an independent
/// route to the same sequence, used to cross-check the running-sum code.
fn t_closed_form(lambda: &[BigRational], alternate: bool) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(lambda.len());
    for k in 0..lambda.len() {
        let mut acc = BigRational::zero();
        for (j, l) in lambda.iter().enumerate().take(k + 1) {
            let weight = BigInt::from((k + 1 - j) as u64);
            let term = l * BigRational::from_integer(weight);
            if alternate && j % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        out.push(acc);
    }
    out
}

fn running_sums(lambda: &[BigRational], alternate: bool) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(
        !lambda.is_empty(),
        "cumulative sums need at least one coefficient"
    );
    let mut s = Vec::with_capacity(lambda.len());
    let mut t = Vec::with_capacity(lambda.len());
    let mut s_acc = BigRational::zero();
    let mut t_acc = BigRational::zero();
    for (j, l) in lambda.iter().enumerate() {
        if alternate && j % 2 == 1 {
            s_acc -= l;
        } else {
            s_acc += l;
        }
        t_acc += &s_acc;
        s.push(s_acc.clone());
        t.push(t_acc.clone());
    }
    if cfg!(debug_assertions) && lambda.len() <= CLOSED_FORM_CHECK_MAX_LEN {
        debug_assert_eq!(
            t,
            t_closed_form(lambda, alternate),
            "running T sequence disagrees with its closed form"
        );
    }
    (s, t)
}

/// The cumulative sums S_k = λ_0 + … + λ_k and T_k = S_0 + … + S_k,
/// returned as `(S, T)` with the same length as the input.
pub fn partial_sum_sequences(lambda: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    running_sums(lambda, false)
}

/// The alternating variants S′_k = Σ_{j≤k} (−1)^j λ_j and
/// T′_k = S′_0 + … + S′_k, returned as `(S′, T′)`.
pub fn alternating_sum_sequences(
    lambda: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    running_sums(lambda, true)
}

/// Both sides of the unit-interval root bounds for one polynomial, plus
/// the indicator sequence 1{|T_k| ≤ |S_k|} that witnesses each potential
/// sign change of T (a flip at step k forces |T_k| ≤ |S_k|).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSeqReport {
    /// Largest coefficient index: the report covers λ_0..λ_n as stored,
    /// trailing zero slots included.
    pub n: usize,
    /// S(T_0..T_n), the sign-change count of the T sequence.
    pub s_changes: usize,
    /// S(T′_0..T′_n) for the alternating variant.
    pub s_changes_alt: usize,
    /// 1 + `s_changes`: the bound on roots in (0, 1).
    pub bound_pos: usize,
    /// 1 + `s_changes_alt`: the bound on roots in (−1, 0).
    pub bound_neg: usize,
    /// Exact number of roots in (0, 1), with multiplicity.
    pub actual_pos: usize,
    /// Exact number of roots in (−1, 0), with multiplicity.
    pub actual_neg: usize,
    /// `(actual_pos ≤ bound_pos, actual_neg ≤ bound_neg)`.
    pub holds: (bool, bool),
    /// witness[k] = (|T_k| ≤ |S_k|); Σ_k witness[k] ≥ `s_changes`.
    pub witness: Vec<bool>,
}

impl SignSeqReport {
    /// Column names matching [`SignSeqReport::to_csv_row`].
    pub const CSV_HEADER: &'static str =
        "n,s_changes,s_changes_alt,actual_pos,actual_neg,holds_pos,holds_neg";

    /// One CSV row in [`SignSeqReport::CSV_HEADER`] order.
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.s_changes,
            self.s_changes_alt,
            self.actual_pos,
            self.actual_neg,
            self.holds.0,
            self.holds.1
        )
    }
}

/// Evaluates the two root bounds for `p` exactly: counts the roots in
/// (0, 1) and (−1, 0) with multiplicity, computes the sign-change bounds
/// from the T and T′ sequences, and reports whether each inequality holds
/// (they always do; the report records the margin evidence).
///
/// Errors with [`crate::Error::ZeroPolynomial`] when every coefficient
/// vanishes.
pub fn bound_check(p: &Polynomial) -> Result<SignSeqReport> {
    let tally = root_tally(p)?;
    report_from_tally(p, &tally)
}

/// [`bound_check`] for a caller that already holds the root tally of `p`;
/// avoids re-running the root count inside sampling loops.
pub fn report_from_tally(p: &Polynomial, tally: &RootTally) -> Result<SignSeqReport> {
    p.require_nonzero()?;
    let lambda = p.coeffs();
    let (s, t) = partial_sum_sequences(lambda);
    let (_s_alt, t_alt) = alternating_sum_sequences(lambda);
    let s_changes = sign_changes(&t);
    let s_changes_alt = sign_changes(&t_alt);
    let bound_pos = 1 + s_changes;
    let bound_neg = 1 + s_changes_alt;
    let actual_pos = tally.in_pos_unit;
    let actual_neg = tally.in_neg_unit;
    let witness: Vec<bool> = t
        .iter()
        .zip(s.iter())
        .map(|(tk, sk)| tk.abs() <= sk.abs())
        .collect();
    Ok(SignSeqReport {
        n: lambda.len() - 1,
        s_changes,
        s_changes_alt,
        bound_pos,
        bound_neg,
        actual_pos,
        actual_neg,
        holds: (actual_pos <= bound_pos, actual_neg <= bound_neg),
        witness,
    })
}
