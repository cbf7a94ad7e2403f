//! Certified counting of real roots in the open unit interval by interval
//! bisection driven by coefficient sign-variation bounds.
//!
//! Preconditions for [`count_open_unit`]: the polynomial is a nonzero
//! square-free integer polynomial with no root at 0 or 1. The count is the
//! number of distinct roots in (0,1), which for square-free input equals
//! the count with multiplicity.
//!
//! Three levels, each sound on its own:
//!
//! 1. **Float-ball level.** Every coefficient is carried as a pair
//!    (value, absolute error bound). Sign queries answer Pos/Neg only when
//!    the ball excludes zero, "exactly zero" only when the error is zero
//!    (every operation on that path was provably exact in f64), and
//!    Unknown otherwise. Unknown signs make the variation DP take the
//!    maximum over all sign choices, so the computed bound is always a
//!    true upper bound. Anything the level cannot decide escalates.
//! 2. **Integer level.** The same tree walk with exact big-integer
//!    coefficients; a depth cap escalates further.
//! 3. **Sturm level.** The final authority; never wrong, never fast.
//!
//! Per node, a cheap O(deg) "ray test" runs first: the raw coefficient
//! variation count bounds the roots on all of (0, ∞) ⊇ (0, 1), which
//! settles most Monte-Carlo nodes without the O(deg²) basis change. The
//! basis change maps (0,1) onto (0,∞) by x ↦ 1/(1+x) (reverse, then shift
//! by one), after which the bound has the usual parity property: a bound
//! of 1 certifies exactly one root when the endpoint signs differ.
//!
//! Roots exactly at bisection midpoints are detected by an exact zero of
//! the right child's constant term, counted once, and removed: the right
//! child strips its constant term; the left child carries a
//! "root at right endpoint" flag so its leaf rules use the derivative
//! sign there instead of the (zero) value.

use num_traits::{One, Signed, Zero};

use super::sturm;
use super::zz::{sgn, ZPoly};
use super::Endpoint;

const BALL_DEPTH_CAP: u32 = 48;
const ZZ_DEPTH_CAP: u32 = 200;
const NODE_CAP: usize = 120_000;
const EPS: f64 = f64::EPSILON;

// ════════════════════════════════════════════════════════════════════════
// Power-of-two scaling that survives the full f64 exponent range
// ════════════════════════════════════════════════════════════════════════

/// 2^k for |k| ≤ 1023 via direct bit assembly (exact).
fn pow2i(k: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

/// v · 2^k with chunked multiplication. Scaling down through the
/// subnormal range is monotone, so intermediate steps never flush to zero
/// unless the true result is below the smallest subnormal.
fn mul_pow2(mut v: f64, mut k: i32) -> f64 {
    while k > 900 {
        v *= pow2i(900);
        k -= 900;
    }
    while k < -900 {
        v *= pow2i(-900);
        k += 900;
    }
    v * pow2i(k)
}

// ════════════════════════════════════════════════════════════════════════
// Ball polynomials
// ════════════════════════════════════════════════════════════════════════

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum BSign {
    Pos,
    Neg,
    /// Provably exactly zero (error bound is zero).
    Zero,
    Unknown,
}

fn ball_sign(v: f64, e: f64) -> BSign {
    if e == 0.0 {
        if v == 0.0 {
            BSign::Zero
        } else if v > 0.0 {
            BSign::Pos
        } else {
            BSign::Neg
        }
    } else if v - e > 0.0 {
        BSign::Pos
    } else if v + e < 0.0 {
        BSign::Neg
    } else {
        BSign::Unknown
    }
}

#[derive(Clone)]
struct Ball {
    v: Vec<f64>,
    e: Vec<f64>,
}

impl Ball {
    fn deg(&self) -> usize {
        self.v.len() - 1
    }

    fn is_finite(&self) -> bool {
        self.v.iter().all(|x| x.is_finite()) && self.e.iter().all(|x| x.is_finite())
    }

    fn sign(&self, k: usize) -> BSign {
        ball_sign(self.v[k], self.e[k])
    }

    fn signs(&self) -> impl Iterator<Item = BSign> + '_ {
        self.v.iter().zip(&self.e).map(|(&v, &e)| ball_sign(v, e))
    }

    /// Scales every entry by 2^k, tracking any precision lost to the
    /// subnormal range in the error bounds.
    fn scale(&mut self, k: i32) {
        if k == 0 {
            return;
        }
        for i in 0..self.v.len() {
            let v0 = self.v[i];
            let vn = mul_pow2(v0, k);
            let exact = mul_pow2(vn, -k) == v0;
            let mut en = mul_pow2(self.e[i], k);
            if self.e[i] > 0.0 && en < 5e-324 {
                en = 5e-324;
            }
            if !exact {
                // A flushed power-of-two product is off by at most one
                // subnormal step plus the flushed magnitude (< 2^-1073).
                en += 1e-323;
            }
            self.v[i] = vn;
            self.e[i] = en;
        }
    }

    /// Rescales so the largest magnitude has binary exponent ≈ `target`.
    fn renorm(&mut self, target: i32) {
        let m = self
            .v
            .iter()
            .zip(&self.e)
            .map(|(v, e)| v.abs().max(*e))
            .fold(0.0f64, f64::max);
        if m == 0.0 || !m.is_finite() {
            return; // degenerate; callers detect via is_finite / signs
        }
        let exp = m.log2().floor() as i32;
        self.scale(target - exp);
    }

    /// Left-child basis: p(x/2), i.e. coefficient k scaled by 2^−k.
    /// Call on a high-renormalized ball so results stay in range.
    fn halve(&mut self) {
        for i in 1..self.v.len() {
            let v0 = self.v[i];
            let vn = mul_pow2(v0, -(i as i32));
            let exact = mul_pow2(vn, i as i32) == v0;
            let mut en = mul_pow2(self.e[i], -(i as i32));
            if self.e[i] > 0.0 && en < 5e-324 {
                en = 5e-324;
            }
            if !exact {
                en += 1e-323;
            }
            self.v[i] = vn;
            self.e[i] = en;
        }
    }

    /// In-place Taylor shift x ↦ x+1 with error propagation. Additions
    /// that are exact in f64 contribute no rounding term, so chains of
    /// small-integer coefficients keep error exactly zero.
    fn shift1(&mut self) {
        let n = self.v.len();
        for i in (0..n).rev() {
            for j in i..n - 1 {
                let a = self.v[j];
                let b = self.v[j + 1];
                let s = a + b;
                let mut err = self.e[j] + self.e[j + 1];
                if (s - a) != b || (s - b) != a {
                    err += s.abs() * EPS;
                }
                self.v[j] = s;
                self.e[j] = err;
            }
        }
    }

    fn reverse(&mut self) {
        self.v.reverse();
        self.e.reverse();
    }

    /// Drops the constant term (divides by x). Only valid when the true
    /// constant term is exactly zero.
    fn strip_constant(&mut self) {
        self.v.remove(0);
        self.e.remove(0);
    }

    /// Sign of the coefficient sum (= value at 1), with rounding tracked.
    fn sum_sign(&self) -> BSign {
        let mut s = 0.0f64;
        let mut err = 0.0f64;
        for (&v, &e) in self.v.iter().zip(&self.e) {
            let t = s + v;
            if (t - s) != v || (t - v) != s {
                err += t.abs() * EPS;
            }
            s = t;
            err += e;
        }
        if !s.is_finite() || !err.is_finite() {
            return BSign::Unknown;
        }
        ball_sign(s, err)
    }
}

// ════════════════════════════════════════════════════════════════════════
// Variation bound DP
// ════════════════════════════════════════════════════════════════════════

fn opt_max(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Maximum possible number of sign variations over all resolutions of the
/// Unknown entries (each may be +, −, or 0). This dominates the true
/// variation count, so Descartes-style conclusions from it are sound.
fn variation_upper(signs: impl Iterator<Item = BSign>) -> usize {
    let mut none: Option<usize> = Some(0);
    let mut pos: Option<usize> = None;
    let mut neg: Option<usize> = None;
    for s in signs {
        match s {
            BSign::Zero => {}
            BSign::Pos => {
                let best = opt_max(opt_max(none, pos), neg.map(|x| x + 1));
                pos = best;
                neg = None;
                none = None;
            }
            BSign::Neg => {
                let best = opt_max(opt_max(none, neg), pos.map(|x| x + 1));
                neg = best;
                pos = None;
                none = None;
            }
            BSign::Unknown => {
                let new_pos = opt_max(opt_max(none, pos), neg.map(|x| x + 1));
                let new_neg = opt_max(opt_max(none, neg), pos.map(|x| x + 1));
                pos = opt_max(pos, new_pos);
                neg = opt_max(neg, new_neg);
            }
        }
    }
    opt_max(opt_max(none, pos), neg).unwrap_or(0)
}

/// Exact variation count of integer coefficients (zeros skipped).
fn variation_exact(p: &ZPoly) -> usize {
    let mut last: i8 = 0;
    let mut count = 0;
    for c in &p.c {
        let s = sgn(c);
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

// ════════════════════════════════════════════════════════════════════════
// Float-ball tree walk
// ════════════════════════════════════════════════════════════════════════

struct Node {
    b: Ball,
    depth: u32,
    /// Interval is (j/2^depth, (j+1)/2^depth) in the original frame.
    j: u64,
    /// True when the right endpoint is a proven root of the original
    /// polynomial (detected at a parent's midpoint).
    root_at_right: bool,
}

/// Certified count via the float-ball walk; None means "escalate".
fn ball_count(q0: &ZPoly, deriv: &ZPoly) -> Option<usize> {
    let (v, e) = q0.to_f64_balls();
    if e.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let deg = q0.degree().unwrap();
    debug_assert!(deg >= 1);

    // Exact sign of q0 at the dyadic point j/2^d (resolver of last resort
    // for Unknown ball signs).
    let exact_at = |j: u64, d: u32| -> i8 { q0.sign_at_dyadic(j, d) };
    let exact_deriv_at = |j: u64, d: u32| -> i8 { deriv.sign_at_dyadic(j, d) };
    // Sign of the node polynomial at its LEFT endpoint. When that endpoint
    // is a previously stripped midpoint root, the node polynomial has the
    // vanishing linear factor divided out, and its (nonzero) value there
    // has the sign of q0's derivative at the root.
    let exact_left = |j: u64, d: u32| -> i8 {
        let s = q0.sign_at_dyadic(j, d);
        if s != 0 {
            s
        } else {
            deriv.sign_at_dyadic(j, d)
        }
    };

    let mut stack = vec![Node {
        b: Ball { v, e },
        depth: 0,
        j: 0,
        root_at_right: false,
    }];
    let mut count = 0usize;
    let mut processed = 0usize;

    while let Some(node) = stack.pop() {
        processed += 1;
        if processed > NODE_CAP {
            return None;
        }
        if !node.b.is_finite() {
            return None;
        }
        let nd = node.b.deg();
        if nd == 0 {
            debug_assert!(!node.root_at_right);
            continue;
        }

        // Endpoints of this node in the original frame.
        let (a_j, a_d) = (node.j, node.depth);
        let (b_j, b_d) = (node.j + 1, node.depth);

        // ---- Ray test: variations bound the roots on all of (0, ∞).
        let hi_ray = variation_upper(node.b.signs());
        if hi_ray == 0 {
            debug_assert!(!node.root_at_right);
            continue;
        }
        if hi_ray == 1 {
            if node.root_at_right {
                // The unique positive-axis root is the right endpoint
                // itself, which is counted at the split that found it.
                continue;
            }
            let s0 = match node.b.sign(0) {
                BSign::Pos => 1,
                BSign::Neg => -1,
                BSign::Unknown => exact_left(a_j, a_d),
                BSign::Zero => 0,
            };
            let s1 = match node.b.sum_sign() {
                BSign::Pos => 1,
                BSign::Neg => -1,
                BSign::Unknown => exact_at(b_j, b_d),
                BSign::Zero => 0,
            };
            if s0 == 0 || s1 == 0 {
                // Roots at node endpoints are stripped or flagged before a
                // node is created, so this is unreachable; escalate rather
                // than risk a wrong leaf.
                debug_assert!(false, "unexpected exact zero at node endpoint");
                return None;
            }
            if s0 != s1 {
                count += 1;
            }
            continue;
        }

        // ---- Basis change to (0,1) via x ↦ 1/(1+x).
        let mut m = node.b.clone();
        m.renorm(1000 - nd as i32);
        m.reverse();
        m.shift1();
        if !m.is_finite() {
            return None;
        }
        if node.root_at_right {
            // True constant term is exactly p(right endpoint) = 0.
            m.v[0] = 0.0;
            m.e[0] = 0.0;
            m.strip_constant();
        }
        let hi_m = variation_upper(m.signs());
        if hi_m == 0 {
            continue;
        }
        if hi_m == 1 {
            // Parity: the positive-axis root count of m is odd exactly
            // when m(0) and its leading coefficient differ in sign.
            let s_end = match m.sign(0) {
                BSign::Pos => 1,
                BSign::Neg => -1,
                BSign::Unknown => {
                    if node.root_at_right {
                        // m(0) = −p'(right endpoint) up to positive scale.
                        -exact_deriv_at(b_j, b_d)
                    } else {
                        exact_at(b_j, b_d)
                    }
                }
                BSign::Zero => 0,
            };
            let s_lead = match m.sign(m.deg()) {
                BSign::Pos => 1,
                BSign::Neg => -1,
                BSign::Unknown => exact_left(a_j, a_d),
                BSign::Zero => 0,
            };
            if s_end == 0 || s_lead == 0 {
                debug_assert!(false, "unexpected exact zero in parity leaf");
                return None;
            }
            if s_end != s_lead {
                count += 1;
            }
            continue;
        }

        // ---- Split at the midpoint.
        if node.depth + 1 > BALL_DEPTH_CAP {
            return None;
        }
        let mut left = node.b.clone();
        left.renorm(1000);
        left.halve();
        let mut right = left.clone();
        right.renorm(1000 - nd as i32);
        right.shift1();
        if !left.is_finite() || !right.is_finite() {
            return None;
        }
        let mid = match right.sign(0) {
            BSign::Pos => 1,
            BSign::Neg => -1,
            BSign::Zero => 0,
            BSign::Unknown => exact_at(2 * node.j + 1, node.depth + 1),
        };
        let mut left_flag = false;
        if mid == 0 {
            count += 1;
            left_flag = true;
            right.v[0] = 0.0;
            right.e[0] = 0.0;
            right.strip_constant();
        }
        stack.push(Node {
            b: left,
            depth: node.depth + 1,
            j: 2 * node.j,
            root_at_right: left_flag,
        });
        stack.push(Node {
            b: right,
            depth: node.depth + 1,
            j: 2 * node.j + 1,
            root_at_right: node.root_at_right,
        });
    }
    Some(count)
}

// ════════════════════════════════════════════════════════════════════════
// Exact integer tree walk
// ════════════════════════════════════════════════════════════════════════

/// Left-child basis, exactly: 2^deg · p(x/2) (coefficient k shifted left
/// by deg − k bits; the positive scale preserves all signs).
fn halve_zz(p: &ZPoly) -> ZPoly {
    let d = p.degree().unwrap();
    ZPoly::new(
        p.c
            .iter()
            .enumerate()
            .map(|(k, c)| c << (d - k))
            .collect(),
    )
}

fn zz_rec(p: ZPoly, depth: u32, root_at_right: bool, total: &mut usize) -> Option<()> {
    let deg = match p.degree() {
        None | Some(0) => {
            debug_assert!(!root_at_right || p.degree().is_some());
            return Some(());
        }
        Some(d) => d,
    };
    let _ = deg;

    let v_ray = variation_exact(&p);
    if v_ray == 0 {
        debug_assert!(!root_at_right);
        return Some(());
    }
    if v_ray == 1 {
        if root_at_right {
            return Some(());
        }
        let s0 = sgn(&p.c[0]);
        let s1 = sgn(&p.c.iter().sum::<num_bigint::BigInt>());
        if s0 == 0 || s1 == 0 {
            debug_assert!(false, "unexpected zero at node endpoint");
            return None;
        }
        if s0 != s1 {
            *total += 1;
        }
        return Some(());
    }

    let mut m = p.reversed();
    m.shift1_inplace();
    if root_at_right {
        debug_assert!(m.c[0].is_zero());
        let (m2, k) = m.strip_zero_root();
        debug_assert!(k == 1, "square-free input has simple boundary roots");
        if k != 1 {
            return None;
        }
        m = m2;
    }
    let v_m = variation_exact(&m);
    if v_m == 0 {
        return Some(());
    }
    if v_m == 1 {
        let s_end = sgn(&m.c[0]);
        let s_lead = sgn(m.lc());
        if s_end == 0 {
            debug_assert!(false, "unexpected zero in parity leaf");
            return None;
        }
        if s_end != s_lead {
            *total += 1;
        }
        return Some(());
    }

    if depth + 1 > ZZ_DEPTH_CAP {
        return None;
    }
    let mut left = halve_zz(&p);
    left.strip_pow2();
    let mut right = left.clone();
    right.shift1_inplace();
    right.strip_pow2();
    let mut left_flag = false;
    if right.c[0].is_zero() {
        *total += 1;
        left_flag = true;
        let (r2, k) = right.strip_zero_root();
        debug_assert!(k == 1);
        if k != 1 {
            return None;
        }
        right = r2;
    }
    zz_rec(left, depth + 1, left_flag, total)?;
    zz_rec(right, depth + 1, root_at_right, total)
}

fn zz_count(q0: &ZPoly) -> Option<usize> {
    let mut total = 0usize;
    zz_rec(q0.clone(), 0, false, &mut total)?;
    Some(total)
}

// ════════════════════════════════════════════════════════════════════════
// Entry point
// ════════════════════════════════════════════════════════════════════════

/// Number of distinct roots of a square-free integer polynomial in the
/// open interval (0, 1). Requires q(0) ≠ 0 and q(1) ≠ 0.
pub(crate) fn count_open_unit(q: &ZPoly) -> usize {
    let deg = match q.degree() {
        None | Some(0) => return 0,
        Some(d) => d,
    };
    debug_assert!(!q.c[0].is_zero(), "no root at 0 allowed");
    debug_assert!(
        !q.c.iter().sum::<num_bigint::BigInt>().is_zero(),
        "no root at 1 allowed"
    );
    if deg >= 1 {
        let deriv = q.derivative();
        if let Some(n) = ball_count(q, &deriv) {
            return n;
        }
        if let Some(n) = zz_count(q) {
            return n;
        }
    }
    // Final authority. q(1) ≠ 0, so (0, 1] and (0, 1) coincide.
    sturm::count_distinct_half_open(
        q,
        &Endpoint::Finite(num_rational::BigRational::zero()),
        &Endpoint::Finite(num_rational::BigRational::one()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::zz;
    use num_traits::One;

    fn zp(c: &[i64]) -> ZPoly {
        ZPoly::from_ints(c)
    }

    /// Independent reference: Sturm count on (0,1] (equal to (0,1) when
    /// q(1) ≠ 0, which all fixtures satisfy).
    fn sturm_unit(q: &ZPoly) -> usize {
        sturm::count_distinct_half_open(
            q,
            &Endpoint::Finite(num_rational::BigRational::zero()),
            &Endpoint::Finite(num_rational::BigRational::one()),
        )
    }

    #[test]
    fn pow2_scaling_is_exact_in_normal_range() {
        assert_eq!(pow2i(0), 1.0);
        assert_eq!(pow2i(10), 1024.0);
        assert_eq!(pow2i(-10), 1.0 / 1024.0);
        assert_eq!(mul_pow2(3.0, 5), 96.0);
        assert_eq!(mul_pow2(96.0, -5), 3.0);
        assert_eq!(mul_pow2(1.5, 2000), f64::INFINITY);
        assert_eq!(mul_pow2(1.5, -3000), 0.0);
        // Deep downscale then back loses nothing while normal.
        let v = 1.2345678901234567;
        assert_eq!(mul_pow2(mul_pow2(v, -800), 800), v);
    }

    #[test]
    fn variation_dp_matches_exact_on_certain_signs() {
        use BSign::*;
        assert_eq!(variation_upper([Pos, Neg, Pos].into_iter()), 2);
        assert_eq!(variation_upper([Pos, Zero, Pos].into_iter()), 0);
        assert_eq!(variation_upper([Pos, Zero, Neg].into_iter()), 1);
        assert_eq!(variation_upper([].into_iter()), 0);
        assert_eq!(variation_upper([Neg].into_iter()), 0);
    }

    #[test]
    fn variation_dp_maximizes_over_unknowns() {
        use BSign::*;
        // (+, U, +): unknown as − gives 2.
        assert_eq!(variation_upper([Pos, Unknown, Pos].into_iter()), 2);
        // (+, U, U, +): best is 2.
        assert_eq!(variation_upper([Pos, Unknown, Unknown, Pos].into_iter()), 2);
        // (U, U): at most 1.
        assert_eq!(variation_upper([Unknown, Unknown].into_iter()), 1);
        // Unknowns can also be skipped: (+, U) is at most 1, never forced.
        assert_eq!(variation_upper([Pos, Unknown].into_iter()), 1);
    }

    #[test]
    fn counts_simple_rational_roots() {
        // (2x−1)(3x−1)(5x−2): roots 1/2, 1/3, 2/5.
        let p = zp(&[-2, 15, -37, 30]);
        assert_eq!(count_open_unit(&p), 3);
        // No roots in (0,1): x²+1 and (x−2)(x−3).
        assert_eq!(count_open_unit(&zp(&[1, 0, 1])), 0);
        assert_eq!(count_open_unit(&zp(&[6, -5, 1])), 0);
        // One root: 2x−1.
        assert_eq!(count_open_unit(&zp(&[-1, 2])), 1);
    }

    #[test]
    fn counts_exact_midpoint_roots() {
        // Root exactly at 1/2 (the first midpoint): (2x−1)(x²+1).
        let p = zp(&[-1, 2, -1, 2]);
        assert_eq!(count_open_unit(&p), 1);
        // Roots at 1/4 and 3/4: (4x−1)(4x−3) = 16x² − 16x + 3.
        let q = zp(&[3, -16, 16]);
        assert_eq!(count_open_unit(&q), 2);
        // Root at 1/2 plus irrational pair: (2x−1)(x²−3x+1); x²−3x+1 has
        // one root ≈ 0.382 in (0,1).
        let r = zz::mul(&zp(&[-1, 2]), &zp(&[1, -3, 1]));
        assert_eq!(count_open_unit(&r), 2);
    }

    #[test]
    fn counts_tight_clusters() {
        // Roots 1/2 ± 2^−11: disc of 2^20x² − 2^20x + 2^18 − 1 is 2^22.
        let p = ZPoly::new(vec![
            (num_bigint::BigInt::one() << 18usize) - 1,
            -(num_bigint::BigInt::one() << 20usize),
            num_bigint::BigInt::one() << 20usize,
        ]);
        assert_eq!(count_open_unit(&p), 2);
        assert_eq!(sturm_unit(&p), 2);
    }

    #[test]
    fn escalation_ladder_reaches_exact_levels() {
        // Pair of roots 2^−60 apart near 1/2: needs depth ≈ 60 > the ball
        // cap, so the integer level must resolve it.
        let a = num_bigint::BigInt::one() << 60usize;
        let b = num_bigint::BigInt::one() << 59usize;
        let f1 = ZPoly::new(vec![-b.clone(), a.clone()]);
        let f2 = ZPoly::new(vec![-(b.clone() + 1i64), a.clone()]);
        let p = zz::mul(&f1, &f2);
        assert_eq!(count_open_unit(&p), 2);
        // Pair 2^−220 apart: beyond the integer depth cap too; only the
        // Sturm fallback can answer.
        let a = num_bigint::BigInt::one() << 220usize;
        let b = num_bigint::BigInt::one() << 219usize;
        let g1 = ZPoly::new(vec![-b.clone(), a.clone()]);
        let g2 = ZPoly::new(vec![-(b.clone() + 1i64), a.clone()]);
        let q = zz::mul(&g1, &g2);
        assert_eq!(count_open_unit(&q), 2);
    }

    #[test]
    fn dense_roots_inside_unit_interval() {
        // Π_{k=1..20} (21x − k): twenty equally spaced roots in (0,1).
        let mut p = zp(&[1]);
        for k in 1..=20i64 {
            p = zz::mul(&p, &zp(&[-k, 21]));
        }
        assert_eq!(count_open_unit(&p), 20);
    }

    #[test]
    fn agrees_with_sturm_on_random_square_free_inputs() {
        // Deterministic xorshift sweep over small random integer polys.
        let mut state = 0x243F6A8885A308D3u64;
        let mut next = |m: i64| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % (2 * m as u64 + 1)) as i64 - m
        };
        let mut checked = 0;
        for _ in 0..400 {
            let deg = 1 + (next(100).unsigned_abs() as usize % 12);
            let mut c: Vec<i64> = (0..=deg).map(|_| next(9)).collect();
            if c[deg] == 0 {
                c[deg] = 1;
            }
            if c[0] == 0 {
                c[0] = -1;
            }
            let p = ZPoly::from_ints(&c);
            // Preconditions: square-free, no root at 0 or 1.
            if p.eval_int(&num_bigint::BigInt::one()).is_zero() {
                continue;
            }
            if !zz::yun(&p).iter().all(|(_, m)| *m == 1) {
                continue;
            }
            assert_eq!(count_open_unit(&p), sturm_unit(&p), "poly {c:?}");
            checked += 1;
        }
        assert!(checked > 300, "sweep degenerated: only {checked} cases");
    }

    #[test]
    fn rademacher_style_inputs_agree_with_sturm() {
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut bit = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if state & 1 == 0 {
                -1i64
            } else {
                1i64
            }
        };
        let mut checked = 0;
        for _ in 0..200 {
            let deg = 16;
            let c: Vec<i64> = (0..=deg).map(|_| bit()).collect();
            let p = ZPoly::from_ints(&c);
            if p.eval_int(&num_bigint::BigInt::one()).is_zero() {
                continue;
            }
            if !zz::is_squarefree_certified(&p) && !zz::yun(&p).iter().all(|(_, m)| *m == 1) {
                continue;
            }
            assert_eq!(count_open_unit(&p), sturm_unit(&p));
            checked += 1;
        }
        assert!(checked > 100);
    }

    #[test]
    fn ball_level_handles_large_degree_quickly() {
        // Smoke test that degree ~200 random-sign input terminates at the
        // ball level and matches Sturm.
        let mut state = 0xD1B54A32D192ED03u64;
        let mut bit = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if state & 1 == 0 {
                -1i64
            } else {
                1i64
            }
        };
        let c: Vec<i64> = (0..=200).map(|_| bit()).collect();
        let p = ZPoly::from_ints(&c);
        if p.eval_int(&num_bigint::BigInt::one()).is_zero() {
            return;
        }
        assert_eq!(count_open_unit(&p), sturm_unit(&p));
    }
}
