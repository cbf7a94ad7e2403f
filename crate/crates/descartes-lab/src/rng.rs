//! Deterministic randomness plumbing: counter-derived sub-seeds, chunked
//! ChaCha8 streams, coefficient laws, and permutation/uniform samplers.
//!
//! Every Monte Carlo estimator in the crate draws from a stream derived as
//! `subseed(master, domain, a, b)`, where `domain` is a fixed label and
//! `(a, b)` index the work unit (e.g. degree and chunk number). Work units
//! are merged in index order, so results are bit-identical for any worker
//! count or scheduling order. The generator stack is identified by
//! [`RNG_ID`], which estimators record in their output metadata.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::distributions::Distribution;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Version pin for the generator stack. Bump when the derivation scheme,
/// generator algorithm, or upstream `rand` sampling algorithms change.
pub const RNG_ID: &str = "fnv1a64+splitmix64/chacha8/rand-0.8/v1";

/// One splitmix64 step: the standard 64-bit finalizer-based generator.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// FNV-1a hash of a domain label, used to separate sampling domains.
fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Derives a 64-bit sub-seed from a master seed, a domain label, and two
/// work-unit indices, by chaining splitmix64 over the components.
pub fn subseed(master: u64, domain: &str, a: u64, b: u64) -> u64 {
    let mut state = master ^ fnv1a64(domain.as_bytes());
    let mut s = splitmix64(&mut state);
    state ^= a;
    s ^= splitmix64(&mut state);
    state ^= b;
    s ^ splitmix64(&mut state)
}

/// ChaCha8 stream for one work unit; see [`subseed`].
pub fn chunk_rng(master: u64, domain: &str, a: u64, b: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(subseed(master, domain, a, b))
}

/// Uniform random permutation of {0, …, n−1} by an unbiased in-place
/// Fisher–Yates shuffle.
pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}

/// Sorts n iid U[0,1) draws in place and returns them (the order statistics
/// of a uniform sample; their gaps are the exchangeable spacings).
pub fn sorted_uniforms<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut xs: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("uniform draws are finite"));
    xs
}

/// Standard normal draw (ziggurat via `rand_distr`).
pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    rand_distr::StandardNormal.sample(rng)
}

/// Coefficient law for sampled polynomials.
///
/// Floating draws are later captured exactly as dyadic rationals, so each
/// sampled polynomial is an exact object; `Multiset` carries exact rational
/// values directly (cycled to the required length, then uniformly permuted).
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffDist {
    /// iid ±1 with equal probability.
    Rademacher,
    /// iid standard normal.
    Gaussian,
    /// iid uniform on [−1, 1].
    Uniform,
    /// iid standard Cauchy (no moments; exercises distribution-free claims).
    Cauchy,
    /// iid: 0 with probability `p0`, otherwise standard normal.
    Atom0 { p0: f64 },
    /// Fixed multiset of exact rational values, cycled to length n+1 and
    /// uniformly permuted — the exchangeable (non-iid) coefficient setting.
    Multiset { values: Vec<BigRational> },
}

impl CoeffDist {
    /// Parses the CLI/config syntax:
    /// `gaussian | rademacher | uniform | cauchy | atom0(P0) | multiset(V1,V2,…)`
    /// where each `V` is an integer or `p/q` rational.
    pub fn parse(s: &str) -> Result<CoeffDist> {
        let s = s.trim();
        match s {
            "gaussian" => return Ok(CoeffDist::Gaussian),
            "rademacher" => return Ok(CoeffDist::Rademacher),
            "uniform" => return Ok(CoeffDist::Uniform),
            "cauchy" => return Ok(CoeffDist::Cauchy),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("atom0(").and_then(|r| r.strip_suffix(')')) {
            let p0: f64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad atom0 probability: {rest:?}")))?;
            if !(0.0..1.0).contains(&p0) {
                return Err(Error::Config(format!("atom0 probability {p0} outside [0, 1)")));
            }
            return Ok(CoeffDist::Atom0 { p0 });
        }
        if let Some(rest) = s.strip_prefix("multiset(").and_then(|r| r.strip_suffix(')')) {
            let values = rest
                .split(',')
                .map(|v| parse_rational(v.trim()))
                .collect::<Result<Vec<_>>>()?;
            if values.is_empty() {
                return Err(Error::Config("multiset needs at least one value".into()));
            }
            return Ok(CoeffDist::Multiset { values });
        }
        Err(Error::Config(format!("unknown coefficient law: {s:?}")))
    }

    /// Canonical string form (inverse of [`CoeffDist::parse`]).
    pub fn canonical(&self) -> String {
        match self {
            CoeffDist::Rademacher => "rademacher".into(),
            CoeffDist::Gaussian => "gaussian".into(),
            CoeffDist::Uniform => "uniform".into(),
            CoeffDist::Cauchy => "cauchy".into(),
            CoeffDist::Atom0 { p0 } => format!("atom0({p0})"),
            CoeffDist::Multiset { values } => {
                let vs: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                format!("multiset({})", vs.join(","))
            }
        }
    }

    /// Samples `len` coefficients as exact rationals (dyadic capture of the
    /// floating draws; multiset values cycled then uniformly permuted).
    pub fn sample_coeffs<R: Rng>(&self, len: usize, rng: &mut R) -> Vec<BigRational> {
        match self {
            CoeffDist::Multiset { values } => {
                let mut cycled: Vec<BigRational> =
                    (0..len).map(|i| values[i % values.len()].clone()).collect();
                // Uniform random permutation of the cycled multiset.
                for i in (1..len).rev() {
                    let j = rng.gen_range(0..=i);
                    cycled.swap(i, j);
                }
                cycled
            }
            _ => (0..len)
                .map(|_| {
                    let x = self.sample_f64(rng);
                    BigRational::from_float(x).expect("finite float capture")
                })
                .collect(),
        }
    }

    /// One floating draw from the law (not valid for `Multiset`).
    fn sample_f64<R: Rng>(&self, rng: &mut R) -> f64 {
        match self {
            CoeffDist::Rademacher => {
                if rng.gen::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            CoeffDist::Gaussian => standard_normal(rng),
            CoeffDist::Uniform => 2.0 * rng.gen::<f64>() - 1.0,
            CoeffDist::Cauchy => {
                // tan(π(U − 1/2)); f64 π/2 is not a dyadic pole, so the
                // result is always finite.
                let u: f64 = rng.gen();
                (std::f64::consts::PI * (u - 0.5)).tan()
            }
            CoeffDist::Atom0 { p0 } => {
                if rng.gen::<f64>() < *p0 {
                    0.0
                } else {
                    standard_normal(rng)
                }
            }
            CoeffDist::Multiset { .. } => unreachable!("multiset sampled as rationals"),
        }
    }
}

/// Parses an exact rational written as `p/q` or a bare integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Config(format!("bad rational: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(Error::Config(format!("zero denominator: {s:?}")));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.trim().parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}
