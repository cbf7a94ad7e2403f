//! Permutation events and their probabilities: exact values by full
//! enumeration of the symmetric group, Monte Carlo estimates by unbiased
//! shuffling, and the CSV row format shared by both.
//!
//! Boundary discipline: all window/threshold comparisons are closed
//! (boundary hits count as inside) and are decided *exactly*. The fast
//! path evaluates the statistic in floating point with a certified error
//! band; any permutation landing inside the band is re-decided in exact
//! rational arithmetic, so float roundoff can never flip an outcome.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rng::{chunk_rng, RNG_ID};
use crate::{Error, Result};

/// Default exhaustive-enumeration cap: 10! = 3,628,800 permutations.
pub const DEFAULT_ENUM_CAP: usize = 10;

/// Trials per Monte Carlo chunk. Chunk c draws from the sub-seed
/// (master, c), and chunk tallies are merged by addition, so estimates
/// do not depend on worker count or scheduling.
const MC_CHUNK: u64 = 8192;

/// An event about a uniform random permutation π of {1, …, n}, carrying
/// the data sequence it reads.
#[derive(Debug, Clone, PartialEq)]
pub enum PermEvent {
    /// |Σᵢ wᵢ·π(i) − L·n| ≤ h, with h > 0. The window is closed:
    /// boundary hits count as inside.
    Window { l: f64, h: f64, w: Vec<f64> },
    /// Σᵢ uᵢ·π(i) = x, decided in exact rational arithmetic.
    Atom { x: BigRational, u: Vec<BigRational> },
    /// |Σᵢ uᵢ·π(i)| ≤ |Σᵢ uᵢ|.
    Shepp { u: Vec<f64> },
    /// |Σⱼ j·ξ_{π(j)}| ≤ |Σⱼ ξⱼ| — the relative-window event for a fixed
    /// data vector under random relabeling.
    Relative { xi: Vec<f64> },
    /// |Σⱼ (−1)ʲ·j·ξ_{π(j)}| ≤ |Σⱼ (−1)ʲ·ξ_{π(j)}| — the alternating
    /// variant (both sides move with the relabeling).
    RelativeAlt { xi: Vec<f64> },
}

impl PermEvent {
    /// Builds an atom event from floating data by exact dyadic capture.
    /// Errors with [`Error::ExactnessRequired`] on non-finite input,
    /// which has no exact value.
    pub fn atom_from_f64s(x: f64, u: &[f64]) -> Result<Self> {
        let cap = |v: f64, what: &'static str| {
            BigRational::from_float(v).ok_or(Error::ExactnessRequired(what))
        };
        let x = cap(x, "atom target must be a finite float or exact rational")?;
        let u = u
            .iter()
            .map(|&v| cap(v, "atom data must be finite floats or exact rationals"))
            .collect::<Result<Vec<_>>>()?;
        Ok(PermEvent::Atom { x, u })
    }

    /// Short lowercase tag used in CSV output.
    pub fn kind(&self) -> &'static str {
        match self {
            PermEvent::Window { .. } => "window",
            PermEvent::Atom { .. } => "atom",
            PermEvent::Shepp { .. } => "shepp",
            PermEvent::Relative { .. } => "relative",
            PermEvent::RelativeAlt { .. } => "relative_alt",
        }
    }

    /// Length of the data sequence the event reads.
    pub fn data_len(&self) -> usize {
        match self {
            PermEvent::Window { w, .. } => w.len(),
            PermEvent::Atom { u, .. } => u.len(),
            PermEvent::Shepp { u } => u.len(),
            PermEvent::Relative { xi } | PermEvent::RelativeAlt { xi } => xi.len(),
        }
    }

    /// The window parameters (L, h) when this is a window event.
    pub fn window_params(&self) -> Option<(f64, f64)> {
        match self {
            PermEvent::Window { l, h, .. } => Some((*l, *h)),
            _ => None,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::LengthTooSmall { len: 0, min: 1 });
        }
        if self.data_len() != n {
            return Err(Error::LengthMismatch {
                left: self.data_len(),
                right: n,
            });
        }
        match self {
            PermEvent::Window { l, h, w } => {
                if !(*h > 0.0) || !h.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "window half-width must be positive and finite, got {h}"
                    )));
                }
                if !l.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "window level must be finite, got {l}"
                    )));
                }
                if let Some(bad) = w.iter().find(|x| !x.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "window weights must be finite, got {bad}"
                    )));
                }
            }
            PermEvent::Shepp { u } => {
                if let Some(bad) = u.iter().find(|x| !x.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "event data must be finite, got {bad}"
                    )));
                }
            }
            PermEvent::Relative { xi } | PermEvent::RelativeAlt { xi } => {
                if let Some(bad) = xi.iter().find(|x| !x.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "event data must be finite, got {bad}"
                    )));
                }
            }
            PermEvent::Atom { .. } => {}
        }
        Ok(())
    }
}

/// A probability, exact or estimated.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbEstimate {
    /// Point value in [0, 1] (the exact value rounded to f64 when
    /// `exact` is present).
    pub p_hat: f64,
    /// √(p̂(1−p̂)/trials) for Monte Carlo; 0 for exact results.
    pub stderr: f64,
    /// Monte Carlo sample size; 0 for exact results.
    pub trials: u64,
    /// Exact rational probability when computed by enumeration.
    pub exact: Option<BigRational>,
    /// Master seed of the Monte Carlo stream; 0 for exact results.
    pub seed: u64,
}

/// Header for [`event_csv_row`].
pub const EVENT_CSV_HEADER: &str =
    "event_kind,n,L,h,trials,p_hat,stderr,exact_num,exact_den,seed,rng_id";

/// One CSV row describing an event probability result. Non-window events
/// leave the L and h columns empty; Monte Carlo results leave the exact
/// columns empty.
pub fn event_csv_row(event: &PermEvent, n: usize, est: &ProbEstimate) -> String {
    let (l, h) = match event.window_params() {
        Some((l, h)) => (format!("{l}"), format!("{h}")),
        None => (String::new(), String::new()),
    };
    let (num, den) = match &est.exact {
        Some(q) => (q.numer().to_string(), q.denom().to_string()),
        None => (String::new(), String::new()),
    };
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        event.kind(),
        n,
        l,
        h,
        est.trials,
        est.p_hat,
        est.stderr,
        num,
        den,
        est.seed,
        RNG_ID
    )
}

// ───────────────────────────────────────────────────────────────────────
// Permutation enumeration primitives
// ───────────────────────────────────────────────────────────────────────

/// n! as a u64 (valid for n ≤ 20).
pub fn factorial_u64(n: usize) -> u64 {
    assert!(n <= 20, "factorial_u64 overflows above 20!");
    (1..=n as u64).product()
}

/// Advances `p` to its lexicographic successor in place; returns false
/// (leaving `p` unchanged) when `p` is already the last arrangement.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The permutation of {1, …, n} at lexicographic `rank` (0-based), by
/// factorial-base unranking.
pub(crate) fn nth_permutation(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial_u64(i);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}

// ───────────────────────────────────────────────────────────────────────
// Event predicates (hybrid float/exact decision)
// ───────────────────────────────────────────────────────────────────────

/// Compiled decision procedure for one event at a fixed n.
///
/// `holds` evaluates the statistic in f64 and compares against the
/// threshold with a rigorous rounding band; permutations inside the band
/// fall through to an exact rational decision.
enum Pred {
    Window {
        w: Vec<f64>,
        target: f64, // L·n
        h: f64,
        w_exact: Vec<BigRational>,
        target_exact: BigRational,
        h_exact: BigRational,
    },
    /// Integer form after clearing denominators: Σ aᵢ·π(i) = t.
    AtomSmall { a: Vec<i128>, t: i128 },
    AtomBig { a: Vec<BigInt>, t: BigInt },
    /// Impossible atom: the target is not expressible over the data's
    /// common denominator.
    AtomNever,
    Shepp {
        u: Vec<f64>,
        rhs: f64,
        u_exact: Vec<BigRational>,
        rhs_exact: BigRational,
    },
    Relative {
        xi: Vec<f64>,
        rhs: f64,
        xi_exact: Vec<BigRational>,
        rhs_exact: BigRational,
    },
    RelativeAlt {
        xi: Vec<f64>,
        xi_exact: Vec<BigRational>,
    },
}

/// Error-band coefficient for a length-n floating dot product: each of
/// the ~n+2 roundings contributes ≤ ε of the running absolute mass.
fn dot_error_band(n: usize, abs_mass: f64) -> f64 {
    2.0 * (n as f64 + 4.0) * f64::EPSILON * (abs_mass + 1.0)
}

fn capture(v: f64) -> BigRational {
    BigRational::from_float(v).expect("validated finite float")
}

impl Pred {
    fn compile(event: &PermEvent, n: usize) -> Pred {
        match event {
            PermEvent::Window { l, h, w } => Pred::Window {
                w: w.clone(),
                target: l * n as f64,
                h: *h,
                w_exact: w.iter().map(|&x| capture(x)).collect(),
                target_exact: capture(*l) * BigRational::from_integer(BigInt::from(n)),
                h_exact: capture(*h),
            },
            PermEvent::Atom { x, u } => {
                // Clear denominators: Σ uᵢπ(i) = x ⇔ Σ aᵢπ(i) = t with
                // aᵢ = uᵢ·D and t = x·D over the common denominator D.
                let mut d = BigInt::one();
                for q in u.iter().chain(std::iter::once(x)) {
                    d = num_integer::lcm(d, q.denom().clone());
                }
                let a: Vec<BigInt> = u.iter().map(|q| (q * &d).to_integer()).collect();
                let t_rat = x * &d;
                if !t_rat.is_integer() {
                    return Pred::AtomNever;
                }
                let t = t_rat.to_integer();
                let small: Option<(Vec<i128>, i128)> = (|| {
                    let mut sa = Vec::with_capacity(a.len());
                    for v in &a {
                        let s = v.to_i128()?;
                        // Room for Σ|aᵢ|·n without overflow.
                        if s.unsigned_abs() > (i128::MAX as u128) / (2 * (n as u128 + 1).pow(2))
                        {
                            return None;
                        }
                        sa.push(s);
                    }
                    Some((sa, t.to_i128()?))
                })();
                match small {
                    Some((a, t)) => Pred::AtomSmall { a, t },
                    None => Pred::AtomBig { a, t },
                }
            }
            PermEvent::Shepp { u } => {
                let u_exact: Vec<BigRational> = u.iter().map(|&x| capture(x)).collect();
                let rhs_exact: BigRational = u_exact.iter().sum::<BigRational>().abs();
                let rhs = u.iter().sum::<f64>().abs();
                Pred::Shepp {
                    u: u.clone(),
                    rhs,
                    u_exact,
                    rhs_exact,
                }
            }
            PermEvent::Relative { xi } => {
                let xi_exact: Vec<BigRational> = xi.iter().map(|&x| capture(x)).collect();
                let rhs_exact: BigRational = xi_exact.iter().sum::<BigRational>().abs();
                let rhs = xi.iter().sum::<f64>().abs();
                Pred::Relative {
                    xi: xi.clone(),
                    rhs,
                    xi_exact,
                    rhs_exact,
                }
            }
            PermEvent::RelativeAlt { xi } => Pred::RelativeAlt {
                xi: xi.clone(),
                xi_exact: xi.iter().map(|&x| capture(x)).collect(),
            },
        }
    }

    /// Decides the event for π given as 1-based values.
    fn holds(&self, perm: &[usize]) -> bool {
        match self {
            Pred::Window {
                w,
                target,
                h,
                w_exact,
                target_exact,
                h_exact,
            } => {
                let mut s = 0.0;
                let mut mass = 0.0;
                for (i, &p) in perm.iter().enumerate() {
                    let t = w[i] * p as f64;
                    s += t;
                    mass += t.abs();
                }
                let d = (s - target).abs();
                let band = dot_error_band(perm.len(), mass + target.abs());
                if d <= h - band {
                    true
                } else if d > h + band {
                    false
                } else {
                    let mut se = BigRational::zero();
                    for (i, &p) in perm.iter().enumerate() {
                        se += &w_exact[i] * BigRational::from_integer(BigInt::from(p));
                    }
                    (se - target_exact).abs() <= *h_exact
                }
            }
            Pred::AtomSmall { a, t } => {
                let mut s: i128 = 0;
                for (i, &p) in perm.iter().enumerate() {
                    s += a[i] * p as i128;
                }
                s == *t
            }
            Pred::AtomBig { a, t } => {
                let mut s = BigInt::zero();
                for (i, &p) in perm.iter().enumerate() {
                    s += &a[i] * BigInt::from(p);
                }
                s == *t
            }
            Pred::AtomNever => false,
            Pred::Shepp {
                u,
                rhs,
                u_exact,
                rhs_exact,
            } => {
                let mut s = 0.0;
                let mut mass = 0.0;
                for (i, &p) in perm.iter().enumerate() {
                    let t = u[i] * p as f64;
                    s += t;
                    mass += t.abs();
                }
                let d = s.abs();
                let band = dot_error_band(perm.len(), mass + rhs.abs());
                if d <= rhs - band {
                    true
                } else if d > rhs + band {
                    false
                } else {
                    let mut se = BigRational::zero();
                    for (i, &p) in perm.iter().enumerate() {
                        se += &u_exact[i] * BigRational::from_integer(BigInt::from(p));
                    }
                    se.abs() <= *rhs_exact
                }
            }
            Pred::Relative {
                xi,
                rhs,
                xi_exact,
                rhs_exact,
            } => {
                // Values are relabeled: position j reads ξ_{π(j)}.
                let mut s = 0.0;
                let mut mass = 0.0;
                for (j, &p) in perm.iter().enumerate() {
                    let t = (j + 1) as f64 * xi[p - 1];
                    s += t;
                    mass += t.abs();
                }
                let d = s.abs();
                let band = dot_error_band(perm.len(), mass + rhs.abs());
                if d <= rhs - band {
                    true
                } else if d > rhs + band {
                    false
                } else {
                    let mut se = BigRational::zero();
                    for (j, &p) in perm.iter().enumerate() {
                        se += &xi_exact[p - 1]
                            * BigRational::from_integer(BigInt::from(j + 1));
                    }
                    se.abs() <= *rhs_exact
                }
            }
            Pred::RelativeAlt { xi, xi_exact } => {
                // Both sides move with the relabeling: j is 1-based, the
                // sign is (−1)^j.
                let mut lhs = 0.0;
                let mut rhs = 0.0;
                let mut mass = 0.0;
                for (j0, &p) in perm.iter().enumerate() {
                    let sign = if j0 % 2 == 0 { -1.0 } else { 1.0 };
                    let v = xi[p - 1];
                    lhs += sign * (j0 + 1) as f64 * v;
                    rhs += sign * v;
                    mass += ((j0 + 1) as f64 * v).abs();
                }
                let band = dot_error_band(perm.len(), mass + rhs.abs());
                let d = lhs.abs() - rhs.abs();
                if d <= -band {
                    true
                } else if d > band {
                    false
                } else {
                    let mut le = BigRational::zero();
                    let mut re = BigRational::zero();
                    for (j0, &p) in perm.iter().enumerate() {
                        let term = &xi_exact[p - 1]
                            * BigRational::from_integer(BigInt::from(j0 + 1));
                        let unit = xi_exact[p - 1].clone();
                        if j0 % 2 == 0 {
                            le -= term;
                            re -= unit;
                        } else {
                            le += term;
                            re += unit;
                        }
                    }
                    le.abs() <= re.abs()
                }
            }
        }
    }
}

// ───────────────────────────────────────────────────────────────────────
// Exact enumeration and Monte Carlo estimation
// ───────────────────────────────────────────────────────────────────────

/// Exact probability of `event` under a uniform permutation of
/// {1, …, n}, by full enumeration with the default cap
/// [`DEFAULT_ENUM_CAP`].
pub fn event_probability_exact(event: &PermEvent, n: usize) -> Result<ProbEstimate> {
    event_probability_exact_with_cap(event, n, DEFAULT_ENUM_CAP)
}

/// [`event_probability_exact`] with an explicit enumeration cap.
///
/// The n! arrangements are split into n lexicographic ranges (one per
/// leading value); each range is walked by the in-place successor and
/// the per-range tallies are merged by addition in range order, so the
/// count is deterministic and independent of any scheduling.
pub fn event_probability_exact_with_cap(
    event: &PermEvent,
    n: usize,
    cap: usize,
) -> Result<ProbEstimate> {
    event.validate(n)?;
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let pred = Pred::compile(event, n);
    let total = factorial_u64(n);
    let per_range = total / n as u64;
    let mut count: u64 = 0;
    for range in 0..n as u64 {
        let mut perm = nth_permutation(n, range * per_range);
        let mut range_count = 0u64;
        for step in 0..per_range {
            if pred.holds(&perm) {
                range_count += 1;
            }
            if step + 1 < per_range {
                let advanced = next_permutation(&mut perm);
                debug_assert!(advanced, "range shorter than (n-1)!");
            }
        }
        count += range_count;
    }
    let exact = BigRational::new(BigInt::from(count), BigInt::from(total));
    let p_hat = count as f64 / total as f64;
    Ok(ProbEstimate {
        p_hat,
        stderr: 0.0,
        trials: 0,
        exact: Some(exact),
        seed: 0,
    })
}

/// Monte Carlo estimate of `event` over `trials` uniform permutations
/// (unbiased Fisher–Yates), deterministic given (seed, trials): the
/// trial stream is split into fixed chunks with counter-derived
/// sub-seeds and chunk tallies merge by addition.
pub fn event_probability_mc(
    event: &PermEvent,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<ProbEstimate> {
    event.validate(n)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be ≥ 1".into()));
    }
    let pred = Pred::compile(event, n);
    let identity: Vec<usize> = (1..=n).collect();
    let mut perm = vec![0usize; n];
    let chunks = trials.div_ceil(MC_CHUNK);
    let mut hits: u64 = 0;
    for c in 0..chunks {
        let mut rng = chunk_rng(seed, "perm_event_mc", c, 0);
        let in_chunk = MC_CHUNK.min(trials - c * MC_CHUNK);
        for _ in 0..in_chunk {
            perm.copy_from_slice(&identity);
            // In-place Fisher–Yates on the 1-based identity.
            for i in (1..n).rev() {
                let j = rand::Rng::gen_range(&mut rng, 0..=i);
                perm.swap(i, j);
            }
            if pred.holds(&perm) {
                hits += 1;
            }
        }
    }
    let p_hat = hits as f64 / trials as f64;
    let stderr = (p_hat * (1.0 - p_hat) / trials as f64).sqrt();
    Ok(ProbEstimate {
        p_hat,
        stderr,
        trials,
        exact: None,
        seed,
    })
}
