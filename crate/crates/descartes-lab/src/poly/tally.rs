//! Public root-counting operations: square-free decomposition, Sturm
//! interval counts, multiplicity-aware counts, the region tally, and the
//! coefficient sign-change bound.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::sturm::count_distinct_half_open;
use super::vca::count_open_unit;
use super::zz::{self, ZPoly};
use super::{Interval, Polynomial, Region};
use crate::error::Result;

/// Exact decomposition of the real roots of a polynomial by region:
/// the four open regions cut by {−1, 0, 1}, the three special points,
/// and the grand total `n_star` of all real roots with multiplicity
/// except those at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootTally {
    pub at_zero: usize,
    pub at_one: usize,
    pub at_minus_one: usize,
    /// Roots in (0, 1), with multiplicity.
    pub in_pos_unit: usize,
    /// Roots in (−1, 0), with multiplicity.
    pub in_neg_unit: usize,
    /// Roots in (1, ∞), with multiplicity.
    pub pos_outside: usize,
    /// Roots in (−∞, −1), with multiplicity.
    pub neg_outside: usize,
    /// at_one + at_minus_one + in_pos_unit + in_neg_unit + pos_outside +
    /// neg_outside (every real root except those at 0).
    pub n_star: usize,
}

fn zz_to_polynomial(z: &ZPoly) -> Polynomial {
    Polynomial::new(z.c.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

/// Square-free factors with multiplicities: the product of
/// factor^multiplicity equals the input up to a nonzero rational
/// constant. Factors are primitive integer polynomials with positive
/// leading coefficient; multiplicities are strictly increasing. A nonzero
/// constant input yields the empty list.
pub fn squarefree_decompose(p: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    p.require_nonzero()?;
    let z = ZPoly::from_rationals(p.coeffs());
    Ok(zz::yun(&z)
        .into_iter()
        .map(|(f, m)| (zz_to_polynomial(&f), m))
        .collect())
}

/// Exact number of distinct real roots in the half-open interval
/// (lo, hi]. Multiple roots count once; a root exactly at `hi` counts, one
/// exactly at `lo` does not.
pub fn sturm_count_distinct(p: &Polynomial, interval: &Interval) -> Result<usize> {
    p.require_nonzero()?;
    let z = ZPoly::from_rationals(p.coeffs());
    Ok(count_distinct_half_open(&z, interval.lo(), interval.hi()))
}

/// Largest k such that (x − a)^k divides p (0 when a is not a root).
fn multiplicity_at_point(z: &ZPoly, a: &BigRational) -> usize {
    // x − a over ℚ corresponds to the primitive integer divisor
    // den·x − num (the rational is stored reduced).
    let d = ZPoly::new(vec![-a.numer().clone(), a.denom().clone()]);
    let mut k = 0usize;
    let mut cur = z.clone();
    while let Some(q) = zz::exact_div(&cur, &d) {
        k += 1;
        cur = q;
        if cur.degree().is_none() {
            break;
        }
    }
    k
}

/// Real roots counted **with multiplicity** in a region: for an interval,
/// the half-open (lo, hi] convention applies; for a point a, the result is
/// the largest k with (x − a)^k dividing p.
pub fn count_with_multiplicity(p: &Polynomial, region: &Region) -> Result<usize> {
    p.require_nonzero()?;
    let z = ZPoly::from_rationals(p.coeffs());
    match region {
        Region::Point(a) => Ok(multiplicity_at_point(&z, a)),
        Region::Interval(i) => {
            let mut total = 0usize;
            for (f, m) in zz::yun(&z) {
                total += m * count_distinct_half_open(&f, i.lo(), i.hi());
            }
            Ok(total)
        }
    }
}

/// Number of sign changes in the coefficient sequence (zeros skipped).
/// This bounds the number of roots in (0, ∞) counted with multiplicity,
/// and matches its parity.
pub fn descartes_bound(p: &Polynomial) -> Result<usize> {
    p.require_nonzero()?;
    let mut last: i8 = 0;
    let mut count = 0usize;
    for c in p.coeffs() {
        let s = if c.is_zero() {
            0
        } else if c.numer().is_positive() {
            1
        } else {
            -1
        };
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    Ok(count)
}

/// Exact tally of all real roots by region, with multiplicity.
///
/// Strategy: strip the power of x (roots at 0), certify square-freeness by
/// a sound modular check (falling back to the exact square-free
/// decomposition when the certificate does not apply), peel the roots at
/// ±1 by synthetic division, and count each open region by certified
/// bisection. Region (1,∞) is mapped onto (0,1) by coefficient reversal
/// and the negative axis by x ↦ −x.
pub fn root_tally(p: &Polynomial) -> Result<RootTally> {
    p.require_nonzero()?;
    let z0 = ZPoly::from_rationals(p.coeffs());
    let (z1, at_zero) = z0.strip_zero_root();
    let mut t = RootTally {
        at_zero,
        at_one: 0,
        at_minus_one: 0,
        in_pos_unit: 0,
        in_neg_unit: 0,
        pos_outside: 0,
        neg_outside: 0,
        n_star: 0,
    };
    if z1.degree() == Some(0) {
        return Ok(t);
    }
    let factors: Vec<(ZPoly, usize)> = if zz::is_squarefree_certified(&z1) {
        vec![(z1, 1)]
    } else {
        zz::yun(&z1)
    };
    for (f, m) in factors {
        let mut f2 = f;
        if let Some(q) = f2.div_root_at_one() {
            t.at_one += m;
            f2 = q;
            debug_assert!(f2.div_root_at_one().is_none(), "square-free factor");
        }
        if let Some(q) = f2.div_root_at_minus_one() {
            t.at_minus_one += m;
            f2 = q;
            debug_assert!(f2.div_root_at_minus_one().is_none(), "square-free factor");
        }
        if f2.degree().map_or(true, |d| d == 0) {
            continue;
        }
        let neg = f2.neg_arg();
        t.in_pos_unit += m * count_open_unit(&f2);
        t.pos_outside += m * count_open_unit(&f2.reversed());
        t.in_neg_unit += m * count_open_unit(&neg);
        t.neg_outside += m * count_open_unit(&neg.reversed());
    }
    t.n_star = t.at_one
        + t.at_minus_one
        + t.in_pos_unit
        + t.in_neg_unit
        + t.pos_outside
        + t.neg_outside;
    Ok(t)
}
