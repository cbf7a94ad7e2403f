//! Integer-polynomial machinery: clearing denominators, contents and
//! primitive parts, sign-safe pseudo-remainders, primitive-PRS gcd, Yun
//! square-free decomposition, exact evaluation signs, and a modular
//! square-freeness certificate.
//!
//! Everything here is exact. Rational polynomials are scaled by the LCM of
//! their denominators on entry (roots are unchanged by positive scaling),
//! and all later normalizations divide by positive contents only, so sign
//! information — which the Sturm theory depends on — is never corrupted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Sign of a big integer as −1/0/+1.
pub(crate) fn sgn(x: &BigInt) -> i8 {
    match x.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Dense integer polynomial, constant term first, leading coefficient
/// nonzero (the zero polynomial is the empty vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ZPoly {
    pub c: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    /// Normalizes by stripping zero leading coefficients.
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    #[cfg(test)]
    pub fn from_ints(c: &[i64]) -> Self {
        ZPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Clears denominators: returns the integer polynomial lcm(denoms)·p,
    /// which has exactly the roots of p.
    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        let mut l = BigInt::one();
        for q in coeffs {
            l = l.lcm(q.denom());
        }
        ZPoly::new(
            coeffs
                .iter()
                .map(|q| q.numer() * (&l / q.denom()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn lc(&self) -> &BigInt {
        self.c.last().expect("nonzero polynomial")
    }

    /// GCD of all coefficients (positive; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the (positive) content, preserving all signs.
    pub fn primitive(&self) -> ZPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        ZPoly { c: self.c.iter().map(|x| x / &g).collect() }
    }

    /// Flips the overall sign so the leading coefficient is positive
    /// (used only where the polynomial is a factor, not a Sturm element).
    pub fn with_positive_lc(&self) -> ZPoly {
        if self.is_zero() || self.lc().is_positive() {
            self.clone()
        } else {
            ZPoly { c: self.c.iter().map(|x| -x).collect() }
        }
    }

    pub fn derivative(&self) -> ZPoly {
        if self.c.len() <= 1 {
            return ZPoly::zero();
        }
        ZPoly::new(
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(i, x)| x * BigInt::from(i + 1))
                .collect(),
        )
    }

    /// p(−x): negates odd-degree coefficients.
    pub fn neg_arg(&self) -> ZPoly {
        ZPoly::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() })
                .collect(),
        )
    }

    /// x^deg · p(1/x): coefficient reversal. For p(0) ≠ 0 this bijects the
    /// roots in (0,1) with those in (1,∞) and preserves square-freeness.
    pub fn reversed(&self) -> ZPoly {
        let mut c = self.c.clone();
        c.reverse();
        ZPoly::new(c)
    }

    /// Splits off the root at 0: returns (p / x^k, k) with the new constant
    /// term nonzero.
    pub fn strip_zero_root(&self) -> (ZPoly, usize) {
        if self.is_zero() {
            return (ZPoly::zero(), 0);
        }
        let k = self.c.iter().position(|x| !x.is_zero()).unwrap();
        (ZPoly { c: self.c[k..].to_vec() }, k)
    }

    /// Exact evaluation at an integer point.
    #[cfg(test)]
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of p(num/den) for den > 0, via the homogeneous form
    /// Σ c_k num^k den^(n−k) (exact, no rounding).
    pub fn sign_at_rational(&self, num: &BigInt, den: &BigInt) -> i8 {
        debug_assert!(den.is_positive());
        if self.is_zero() {
            return 0;
        }
        // Homogeneous Horner: acc = Σ c_k num^k den^(n−k).
        let n = self.c.len() - 1;
        let mut acc = self.c[n].clone();
        let mut den_pow = BigInt::one();
        for k in (0..n).rev() {
            den_pow *= den;
            acc = acc * num + &self.c[k] * &den_pow;
        }
        sgn(&acc)
    }

    /// Sign of p(j / 2^d) for a dyadic point with j ≥ 0.
    pub fn sign_at_dyadic(&self, j: u64, d: u32) -> i8 {
        // Reduce j/2^d to lowest terms to keep the homogeneous powers small.
        let tz = if j == 0 { d } else { j.trailing_zeros().min(d) };
        let num = BigInt::from(j >> tz);
        let den = BigInt::one() << (d - tz) as usize;
        self.sign_at_rational(&num, &den)
    }

    /// Sign at +∞ (leading coefficient).
    pub fn sign_at_pos_inf(&self) -> i8 {
        if self.is_zero() {
            0
        } else {
            sgn(self.lc())
        }
    }

    /// Sign at −∞: sign(lc)·(−1)^degree.
    pub fn sign_at_neg_inf(&self) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = sgn(self.lc());
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    /// Exact division by (x − 1) if 1 is a root (synthetic division).
    pub fn div_root_at_one(&self) -> Option<ZPoly> {
        let n = self.degree()?;
        if n == 0 {
            return None;
        }
        let mut q = vec![BigInt::zero(); n];
        q[n - 1] = self.c[n].clone();
        for k in (1..n).rev() {
            q[k - 1] = &self.c[k] + &q[k];
        }
        let rem = &self.c[0] + &q[0];
        if rem.is_zero() {
            Some(ZPoly::new(q))
        } else {
            None
        }
    }

    /// Exact division by (x + 1) if −1 is a root.
    pub fn div_root_at_minus_one(&self) -> Option<ZPoly> {
        let n = self.degree()?;
        if n == 0 {
            return None;
        }
        let mut q = vec![BigInt::zero(); n];
        q[n - 1] = self.c[n].clone();
        for k in (1..n).rev() {
            q[k - 1] = &self.c[k] - &q[k];
        }
        let rem = &self.c[0] - &q[0];
        if rem.is_zero() {
            Some(ZPoly::new(q))
        } else {
            None
        }
    }

    /// In-place Taylor shift x ↦ x + 1 (exact cascade of additions).
    pub fn shift1_inplace(&mut self) {
        let n = self.c.len();
        for i in (0..n).rev() {
            // After this pass, c[j] for j ≥ i holds the shift of the tail.
            for j in i..n.saturating_sub(1) {
                let (a, b) = self.c.split_at_mut(j + 1);
                a[j] += &b[0];
            }
        }
    }

    /// Divides every coefficient by the largest common power of two
    /// (controls growth in the exact bisection counter).
    pub fn strip_pow2(&mut self) {
        let mut min_tz = u64::MAX;
        for x in &self.c {
            if let Some(tz) = x.trailing_zeros() {
                min_tz = min_tz.min(tz);
                if min_tz == 0 {
                    return;
                }
            }
        }
        if min_tz == u64::MAX || min_tz == 0 {
            return;
        }
        for x in &mut self.c {
            *x >>= min_tz as usize;
        }
    }

    /// f64 interval images of the coefficients: (value, absolute error).
    /// Error 0 marks an exact conversion; +∞ marks out-of-range.
    pub fn to_f64_balls(&self) -> (Vec<f64>, Vec<f64>) {
        let mut vs = Vec::with_capacity(self.c.len());
        let mut es = Vec::with_capacity(self.c.len());
        for x in &self.c {
            let v = x.to_f64().unwrap_or(f64::INFINITY);
            if !v.is_finite() {
                vs.push(0.0);
                es.push(f64::INFINITY);
                continue;
            }
            let exact = BigInt::from_f64_round(v).map_or(false, |b| &b == x);
            vs.push(v);
            es.push(if exact { 0.0 } else { v.abs() * 6.7e-16 + 1e-305 });
        }
        (vs, es)
    }
}

/// BigInt from an integral f64 (exact when |v| < 2^63 scaled; used only as
/// an exactness probe, never for values).
trait FromF64Round {
    fn from_f64_round(v: f64) -> Option<BigInt>;
}

impl FromF64Round for BigInt {
    fn from_f64_round(v: f64) -> Option<BigInt> {
        if v != v.trunc() {
            return None;
        }
        num_traits::FromPrimitive::from_f64(v)
    }
}

/// Positive-multiple pseudo-remainder: returns r with r = m·(f mod g) for
/// some rational m > 0 (Knuth's multiply-through scheme with a final sign
/// fix). Only the signs of r matter downstream, and positive multiples
/// preserve them.
pub(crate) fn prem_pos(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let dg = g.degree().expect("nonzero divisor");
    let lg = g.lc().clone();
    let mut r = f.clone();
    let mut mults: u32 = 0;
    while let Some(dr) = r.degree() {
        if dr < dg {
            break;
        }
        let shift = dr - dg;
        let lr = r.c[dr].clone();
        // r ← lg·r − lr·x^shift·g (degree strictly drops).
        for x in &mut r.c {
            *x *= &lg;
        }
        for k in 0..=dg {
            let t = &g.c[k] * &lr;
            r.c[k + shift] -= t;
        }
        mults += 1;
        r = ZPoly::new(r.c);
        debug_assert!(r.degree().map_or(true, |d| d < dr));
    }
    // Total multiplier is lg^mults; if negative, flip to keep it positive.
    if lg.is_negative() && mults % 2 == 1 {
        r = ZPoly { c: r.c.iter().map(|x| -x).collect() };
    }
    r
}

/// Exact division in ℤ[x]: Some(q) iff g divides f with integer quotient.
pub(crate) fn exact_div(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let dg = g.degree()?;
    if f.is_zero() {
        return Some(ZPoly::zero());
    }
    let df = f.degree().unwrap();
    if df < dg {
        return None;
    }
    let mut r = f.c.clone();
    let mut q = vec![BigInt::zero(); df - dg + 1];
    for k in (0..=df - dg).rev() {
        let lead = std::mem::take(&mut r[k + dg]);
        if lead.is_zero() {
            continue;
        }
        let (quot, rem) = lead.div_rem(g.lc());
        if !rem.is_zero() {
            return None;
        }
        for i in 0..dg {
            let t = &g.c[i] * &quot;
            r[k + i] -= t;
        }
        q[k] = quot;
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(ZPoly::new(q))
    } else {
        None
    }
}

/// Primitive-PRS polynomial gcd; the result is primitive with positive
/// leading coefficient. gcd(f, 0) = primitive(f).
pub(crate) fn gcd(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let mut a = f.primitive().with_positive_lc();
    let mut b = g.primitive().with_positive_lc();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if b.degree() == Some(0) {
            return ZPoly { c: vec![BigInt::one()] };
        }
        let r = prem_pos(&a, &b).primitive();
        a = b;
        b = r;
    }
    a.with_positive_lc()
}

/// Yun's square-free decomposition: returns [(factor_i, i)] with
/// f = const · Π factor_i^i, each factor square-free and primitive with
/// positive leading coefficient, multiplicities strictly increasing.
pub(crate) fn yun(f: &ZPoly) -> Vec<(ZPoly, usize)> {
    let deg = f.degree().expect("nonzero polynomial");
    if deg == 0 {
        return Vec::new();
    }
    let f1 = f.primitive();
    let df = f1.derivative();
    let g = gcd(&f1, &df);
    if g.degree() == Some(0) {
        return vec![(f1.with_positive_lc(), 1)];
    }
    // Gauss's lemma: a primitive divisor of an integer polynomial divides
    // it in ℤ[x], so these exact divisions cannot fail.
    let mut w = exact_div(&f1, &g).expect("gcd divides f");
    let mut y = exact_div(&df, &g).expect("gcd divides f'");
    let mut out = Vec::new();
    let mut i = 1usize;
    while w.degree().map_or(false, |d| d > 0) {
        let z = {
            let wd = w.derivative();
            let mut c = y.c.clone();
            c.resize(c.len().max(wd.c.len()), BigInt::zero());
            for (k, x) in wd.c.iter().enumerate() {
                c[k] -= x;
            }
            ZPoly::new(c)
        };
        let a = if z.is_zero() { w.clone().with_positive_lc() } else { gcd(&w, &z) };
        if a.degree().map_or(false, |d| d > 0) {
            out.push((a.with_positive_lc(), i));
        }
        w = exact_div(&w, &a).expect("factor divides w");
        y = if z.is_zero() {
            ZPoly::zero()
        } else {
            exact_div(&z, &a).expect("factor divides z")
        };
        i += 1;
        if y.is_zero() && w.degree().map_or(true, |d| d == 0) {
            break;
        }
    }
    out
}

/// Schoolbook product (used for building fixtures and cross-checks; the
/// hot paths never multiply big polynomials).
#[cfg(test)]
pub(crate) fn mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() || b.is_zero() {
        return ZPoly::zero();
    }
    let mut c = vec![BigInt::zero(); a.c.len() + b.c.len() - 1];
    for (i, x) in a.c.iter().enumerate() {
        for (j, y) in b.c.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    ZPoly::new(c)
}

// ════════════════════════════════════════════════════════════════════════
// Modular square-freeness certificate
// ════════════════════════════════════════════════════════════════════════

/// Fixed certification primes (all > any supported degree). If p does not
/// divide the leading coefficient and gcd(f mod p, f′ mod p) is constant,
/// then gcd(f, f′) is constant over ℚ — degree can only drop under
/// reduction — so f is square-free. The converse can fail, in which case
/// the caller falls back to the exact decomposition.
const CERT_PRIMES: [u64; 3] = [
    2_305_843_009_213_693_951, // 2^61 − 1 (Mersenne prime)
    999_999_999_999_999_989,   // largest prime below 10^18
    67_280_421_310_721,        // prime factor of 2^64 + 1
];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn bigint_mod_u64(x: &BigInt, p: u64) -> u64 {
    let m = x.mod_floor(&BigInt::from(p));
    m.to_u64().expect("mod_floor of positive modulus fits")
}

/// Degree of gcd(f mod p, f′ mod p) over F_p, or None when the reduction
/// is degenerate (p divides the leading coefficient).
fn gcd_deg_modp(f: &ZPoly, p: u64) -> Option<usize> {
    let n = f.degree()?;
    if n == 0 {
        return Some(0);
    }
    let a: Vec<u64> = f.c.iter().map(|x| bigint_mod_u64(x, p)).collect();
    if a[n] == 0 {
        return None; // leading coefficient killed: certificate invalid
    }
    let mut b: Vec<u64> = (1..=n).map(|k| mulmod(k as u64 % p, a[k], p)).collect();
    while b.last() == Some(&0) {
        b.pop();
    }
    let mut r0 = a;
    let mut r1 = b;
    while !r1.is_empty() {
        // r0 ← r0 mod r1 over F_p.
        let d1 = r1.len() - 1;
        let inv = powmod(r1[d1], p - 2, p);
        while r0.len() > d1 {
            let d0 = r0.len() - 1;
            let coef = mulmod(r0[d0], inv, p);
            if coef != 0 {
                for i in 0..=d1 {
                    let t = mulmod(coef, r1[i], p);
                    let idx = d0 - d1 + i;
                    r0[idx] = (r0[idx] + p - t) % p;
                }
            }
            while r0.last() == Some(&0) {
                r0.pop();
            }
            if r0.len() <= d1 {
                break;
            }
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    Some(r0.len().saturating_sub(1))
}

/// Sound square-freeness certificate: `true` is a proof; `false` means
/// "could not certify" (run the exact decomposition to decide).
pub(crate) fn is_squarefree_certified(f: &ZPoly) -> bool {
    match f.degree() {
        None => false,
        Some(0) => true,
        Some(d) => {
            for &p in &CERT_PRIMES {
                if (d as u64) >= p {
                    continue;
                }
                match gcd_deg_modp(f, p) {
                    Some(0) => return true,
                    Some(_) => return false, // genuine modular common factor: decide exactly
                    None => continue,        // bad prime for this input
                }
            }
            false
        }
    }
}
