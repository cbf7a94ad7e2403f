//! Sturm chains over ℤ[x] with exact sign evaluation.
//!
//! The chain is built on the square-free part of the input, so consecutive
//! elements never share a root and the variation count V(t) is
//! right-continuous. With zeros skipped during counting this yields the
//! half-open convention used throughout the crate:
//!
//!   V(a) − V(b) = number of distinct real roots in (a, b].
//!
//! A root exactly at the lower endpoint is excluded; one at the upper
//! endpoint is included. Infinite endpoints take signs from leading
//! coefficients.

use num_traits::Signed;

use super::zz::{self, ZPoly};
use super::Endpoint;

/// Sturm chain of the square-free part of a nonzero polynomial.
pub(crate) struct SturmChain {
    polys: Vec<ZPoly>,
}

impl SturmChain {
    /// Builds the chain for the square-free part of `p` (p nonzero).
    pub fn new(p: &ZPoly) -> SturmChain {
        let deg = p.degree().expect("nonzero polynomial");
        if deg == 0 {
            return SturmChain { polys: vec![p.primitive()] };
        }
        let p_prim = p.primitive();
        let dp = p_prim.derivative();
        let g = zz::gcd(&p_prim, &dp);
        let sf = if g.degree() == Some(0) {
            p_prim
        } else {
            zz::exact_div(&p_prim, &g).expect("gcd divides p")
        };
        let mut polys = vec![sf.clone()];
        if sf.degree() == Some(0) {
            return SturmChain { polys };
        }
        polys.push(sf.derivative().primitive());
        loop {
            let k = polys.len();
            let r = zz::prem_pos(&polys[k - 2], &polys[k - 1]);
            if r.is_zero() {
                break;
            }
            // Sturm sign rule: next element is MINUS the remainder; prem_pos
            // returns a positive multiple, so plain negation is sign-exact.
            let neg = ZPoly { c: r.c.iter().map(|x| -x).collect() };
            polys.push(neg.primitive());
        }
        SturmChain { polys }
    }

    /// Number of sign variations of the chain at a point, zeros skipped.
    pub fn variations_at(&self, at: &Endpoint) -> usize {
        let mut last: i8 = 0;
        let mut count = 0usize;
        for q in &self.polys {
            let s = match at {
                Endpoint::NegInf => q.sign_at_neg_inf(),
                Endpoint::PosInf => q.sign_at_pos_inf(),
                Endpoint::Finite(x) => {
                    debug_assert!(x.denom().is_positive());
                    q.sign_at_rational(x.numer(), x.denom())
                }
            };
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

    /// Distinct roots in the half-open interval (lo, hi].
    pub fn count_half_open(&self, lo: &Endpoint, hi: &Endpoint) -> usize {
        let va = self.variations_at(lo);
        let vb = self.variations_at(hi);
        debug_assert!(va >= vb, "variation count must be non-increasing");
        va - vb
    }
}

/// Distinct real roots of `p` in (lo, hi]; `p` must be nonzero.
pub(crate) fn count_distinct_half_open(p: &ZPoly, lo: &Endpoint, hi: &Endpoint) -> usize {
    SturmChain::new(p).count_half_open(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn zp(c: &[i64]) -> ZPoly {
        ZPoly::from_ints(c)
    }

    fn fin(n: i64, d: i64) -> Endpoint {
        Endpoint::Finite(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn count(p: &ZPoly, lo: Endpoint, hi: Endpoint) -> usize {
        count_distinct_half_open(p, &lo, &hi)
    }

    #[test]
    fn quadratic_with_two_roots() {
        let p = zp(&[-2, 0, 1]); // x² − 2, roots ±√2
        assert_eq!(count(&p, Endpoint::NegInf, Endpoint::PosInf), 2);
        assert_eq!(count(&p, fin(1, 1), fin(2, 1)), 1);
        assert_eq!(count(&p, fin(-2, 1), fin(0, 1)), 1);
        assert_eq!(count(&p, fin(0, 1), fin(1, 1)), 0);
    }

    #[test]
    fn half_open_endpoint_conventions() {
        let p = zp(&[-1, 0, 1]); // (x−1)(x+1)
        // Root at the upper endpoint is included.
        assert_eq!(count(&p, fin(0, 1), fin(1, 1)), 1);
        // Root at the lower endpoint is excluded.
        assert_eq!(count(&p, fin(1, 1), fin(2, 1)), 0);
        assert_eq!(count(&p, fin(-1, 1), fin(0, 1)), 0);
        assert_eq!(count(&p, fin(-2, 1), fin(-1, 1)), 1);
        // Both roots.
        assert_eq!(count(&p, fin(-1, 1), fin(1, 1)), 1);
        assert_eq!(count(&p, fin(-2, 1), fin(1, 1)), 2);
    }

    #[test]
    fn rational_endpoints() {
        let p = zp(&[-1, 2]); // 2x − 1
        assert_eq!(count(&p, fin(0, 1), fin(1, 2)), 1);
        assert_eq!(count(&p, fin(1, 2), fin(1, 1)), 0);
        assert_eq!(count(&p, fin(1, 3), fin(2, 5)), 0);
        assert_eq!(count(&p, fin(49, 100), fin(51, 100)), 1);
    }

    #[test]
    fn multiple_roots_counted_once() {
        // (x−1)²(x+2) = x³ − 3x + 2.
        let p = zp(&[2, -3, 0, 1]);
        assert_eq!(count(&p, Endpoint::NegInf, Endpoint::PosInf), 2);
        assert_eq!(count(&p, fin(0, 1), fin(1, 1)), 1);
        assert_eq!(count(&p, fin(1, 1), fin(5, 1)), 0);
        // Evaluating exactly AT the double root endpoint stays consistent.
        assert_eq!(count(&p, fin(-3, 1), fin(1, 1)), 2);
        // (x−1)⁴: one distinct root.
        let q = zp(&[1, -4, 6, -4, 1]);
        assert_eq!(count(&q, Endpoint::NegInf, Endpoint::PosInf), 1);
        assert_eq!(count(&q, fin(0, 1), fin(1, 1)), 1);
        assert_eq!(count(&q, fin(1, 1), Endpoint::PosInf), 0);
    }

    #[test]
    fn dense_product_of_linear_factors() {
        // Π_{k=1..10} (x − k): ten integer roots.
        let mut p = zp(&[1]);
        for k in 1..=10i64 {
            p = zz::mul(&p, &zp(&[-k, 1]));
        }
        assert_eq!(count(&p, Endpoint::NegInf, Endpoint::PosInf), 10);
        assert_eq!(count(&p, fin(5, 2), fin(15, 2)), 5); // roots 3..7
        assert_eq!(count(&p, fin(0, 1), fin(10, 1)), 10);
        assert_eq!(count(&p, fin(1, 1), fin(10, 1)), 9); // 1 excluded at lo
    }

    #[test]
    fn no_real_roots() {
        let p = zp(&[1, 0, 1]); // x² + 1
        assert_eq!(count(&p, Endpoint::NegInf, Endpoint::PosInf), 0);
        let c = zp(&[5]);
        assert_eq!(count(&c, Endpoint::NegInf, Endpoint::PosInf), 0);
    }

    #[test]
    fn unbounded_sides() {
        // x³ − x: roots −1, 0, 1.
        let p = zp(&[0, -1, 0, 1]);
        assert_eq!(count(&p, Endpoint::NegInf, fin(0, 1)), 2); // −1 and 0
        assert_eq!(count(&p, fin(0, 1), Endpoint::PosInf), 1); // just 1
    }
}
