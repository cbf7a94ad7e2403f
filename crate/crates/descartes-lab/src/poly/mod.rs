//! Exact polynomials over the rationals and the region bookkeeping for
//! real-root counting.
//!
//! A [`Polynomial`] stores its full coefficient sequence λ_0..λ_n exactly as
//! arbitrary-precision rationals; sampled floating-point coefficients are
//! captured losslessly (every finite f64 is a dyadic rational), so every
//! count produced here is exact for the sampled object — there is no
//! floating-point root-finding anywhere in the counting pipeline.
//!
//! Submodules: integer-polynomial machinery ([`zz`]), Sturm chains
//! ([`sturm`]), the certified bisection counter ([`vca`]), and the public
//! counting operations ([`tally`], re-exported here).

mod sturm;
mod tally;
mod vca;
mod zz;

pub use tally::{
    count_with_multiplicity, descartes_bound, root_tally, squarefree_decompose,
    sturm_count_distinct, RootTally,
};

use num_bigint::BigInt;
use num_rational::BigRational;
#[cfg(test)]
use num_traits::ToPrimitive;
use num_traits::Zero;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A polynomial λ_0 + λ_1 x + … + λ_n x^n with exact rational coefficients.
///
/// The stored length is preserved even when leading coefficients vanish
/// (the coefficient slots are part of the object's identity); [`degree`]
/// reports the largest index with a nonzero coefficient.
///
/// [`degree`]: Polynomial::degree
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    /// Wraps a coefficient sequence (index k holds the x^k coefficient).
    /// An empty sequence denotes the zero polynomial.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Polynomial { coeffs }
    }

    /// Exact capture of floating coefficients as dyadic rationals.
    /// Rejects non-finite values.
    pub fn from_f64s(coeffs: &[f64]) -> Result<Self> {
        let mut qs = Vec::with_capacity(coeffs.len());
        for (i, &c) in coeffs.iter().enumerate() {
            let q = BigRational::from_float(c).ok_or_else(|| {
                Error::InvalidParameter(format!("coefficient {i} is not finite: {c}"))
            })?;
            qs.push(q);
        }
        Ok(Polynomial::new(qs))
    }

    /// Convenience constructor from small integers (mostly for tests).
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// The coefficient slots as given, including any leading zeros.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Number of stored slots (n + 1 for a sequence λ_0..λ_n).
    pub fn stored_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest index with a nonzero coefficient; `None` for the zero
    /// polynomial (all slots zero or no slots).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// True when every stored coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Errors with [`Error::ZeroPolynomial`] unless some coefficient is
    /// nonzero; returns the degree otherwise.
    pub(crate) fn require_nonzero(&self) -> Result<usize> {
        self.degree().ok_or(Error::ZeroPolynomial)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical one-line text form: `p/q` rationals separated by single
    /// spaces, one per coefficient slot, denominators always written.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}/{}", c.numer(), c.denom())?;
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses the one-line text form; accepts `p/q` rationals or bare
    /// integers, rejects empty lines.
    fn from_str(line: &str) -> Result<Self> {
        let line = line.trim();
        if line.is_empty() {
            return Err(Error::Config("empty polynomial line".into()));
        }
        let coeffs = line
            .split_ascii_whitespace()
            .map(crate::rng::parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

/// An endpoint of a counting interval: a rational or ±∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Endpoint {
    fn rank(&self) -> i8 {
        match self {
            Endpoint::NegInf => -1,
            Endpoint::Finite(_) => 0,
            Endpoint::PosInf => 1,
        }
    }

    /// Strict order on extended rationals.
    pub fn lt(&self, other: &Endpoint) -> bool {
        match (self, other) {
            (Endpoint::Finite(a), Endpoint::Finite(b)) => a < b,
            _ => self.rank() < other.rank(),
        }
    }
}

/// A half-open interval (lo, hi] over the extended rationals, the unit of
/// all interval root counts: half-open intervals partition ℝ exactly, so
/// region counts add without double-counting endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Endpoint,
    hi: Endpoint,
}

impl Interval {
    /// Builds (lo, hi], requiring lo < hi.
    pub fn new(lo: Endpoint, hi: Endpoint) -> Result<Self> {
        if lo.lt(&hi) {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::InvalidParameter(format!(
                "interval endpoints not ordered: {lo:?} vs {hi:?}"
            )))
        }
    }

    /// (lo, hi] with finite rational endpoints.
    pub fn finite(lo: BigRational, hi: BigRational) -> Result<Self> {
        Interval::new(Endpoint::Finite(lo), Endpoint::Finite(hi))
    }

    /// (lo, hi] with small-integer endpoints (test convenience).
    pub fn from_ints(lo: i64, hi: i64) -> Self {
        Interval::finite(
            BigRational::from_integer(BigInt::from(lo)),
            BigRational::from_integer(BigInt::from(hi)),
        )
        .expect("ordered integer endpoints")
    }

    /// The whole line (−∞, +∞].
    pub fn all() -> Self {
        Interval { lo: Endpoint::NegInf, hi: Endpoint::PosInf }
    }

    pub fn lo(&self) -> &Endpoint {
        &self.lo
    }

    pub fn hi(&self) -> &Endpoint {
        &self.hi
    }
}

/// Where to count roots: a half-open interval or a single point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Region {
    Interval(Interval),
    Point(BigRational),
}

/// Converts an exact rational to (f64 value, absolute error bound).
///
/// If the conversion round-trips exactly (dyadic values within f64 range),
/// the error is 0 and downstream interval arithmetic can treat the float as
/// the exact coefficient; otherwise a conservative 3-ulp bound is returned.
#[cfg(test)]
pub(crate) fn rational_to_f64_exactish(q: &BigRational) -> (f64, f64) {
    let v = q.to_f64().unwrap_or(f64::NAN);
    if !v.is_finite() {
        // Out of f64 range: the caller must fall back to exact arithmetic;
        // signal with an infinite error bound.
        return (0.0, f64::INFINITY);
    }
    match BigRational::from_float(v) {
        Some(back) if &back == q => (v, 0.0),
        _ => {
            let mag = v.abs();
            // ≥ 3 ulp covers to_f64's rounding plus the subnormal edge.
            let err = if mag > 1e-290 { mag * 6.7e-16 } else { 1e-305 };
            (v, err)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn degree_ignores_leading_zeros_but_length_is_kept() {
        let p = Polynomial::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.stored_len(), 4);
        let z = Polynomial::from_ints(&[0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn eval_matches_hand_computation() {
        // 1 − 6x + 8x² at x = 1/2 → 0; at x = 1 → 3.
        let p = Polynomial::from_ints(&[1, -6, 8]);
        assert!(p.eval(&q(1, 2)).is_zero());
        assert_eq!(p.eval(&q(1, 1)), q(3, 1));
        assert_eq!(p.eval(&q(0, 1)), q(1, 1));
    }

    #[test]
    fn text_format_round_trips() {
        let p = Polynomial::new(vec![q(1, 1), q(-6, 1), q(8, 1), q(1, 3)]);
        let line = p.to_string();
        assert_eq!(line, "1/1 -6/1 8/1 1/3");
        let back: Polynomial = line.parse().unwrap();
        assert_eq!(back, p);
        // Parser accepts bare integers too.
        let alt: Polynomial = "1 -6 8 1/3".parse().unwrap();
        assert_eq!(alt, p);
        assert!("".parse::<Polynomial>().is_err());
        assert!("  ".parse::<Polynomial>().is_err());
        assert!("1 two 3".parse::<Polynomial>().is_err());
    }

    #[test]
    fn float_capture_is_exact() {
        let p = Polynomial::from_f64s(&[0.1, -3.5, 1e-300, 2.0f64.powi(60)]).unwrap();
        // 0.1 is not 1/10: it is the dyadic 3602879701896397/2^55.
        assert_eq!(
            p.coeffs()[0],
            BigRational::new(
                BigInt::from(3602879701896397u64),
                BigInt::from(1u64) << 55
            )
        );
        assert_eq!(p.coeffs()[1], q(-7, 2));
        assert!(Polynomial::from_f64s(&[f64::NAN]).is_err());
        assert!(Polynomial::from_f64s(&[f64::INFINITY]).is_err());
    }

    #[test]
    fn interval_ordering_enforced() {
        assert!(Interval::finite(q(1, 1), q(1, 1)).is_err());
        assert!(Interval::finite(q(2, 1), q(1, 1)).is_err());
        assert!(Interval::new(Endpoint::PosInf, Endpoint::NegInf).is_err());
        assert!(Interval::new(Endpoint::NegInf, Endpoint::Finite(q(0, 1))).is_ok());
        let i = Interval::all();
        assert!(i.lo().lt(i.hi()));
    }

    #[test]
    fn exactish_conversion_flags_exactness() {
        let (v, e) = rational_to_f64_exactish(&q(-7, 2));
        assert_eq!(v, -3.5);
        assert_eq!(e, 0.0);
        let (v, e) = rational_to_f64_exactish(&q(1, 3));
        assert!((v - 1.0 / 3.0).abs() < 1e-17);
        assert!(e > 0.0 && e < 1e-15);
        // Out-of-range rationals are flagged with an infinite bound.
        let huge = BigRational::from_integer(BigInt::from(1) << 1100);
        assert_eq!(rational_to_f64_exactish(&huge).1, f64::INFINITY);
    }
}
