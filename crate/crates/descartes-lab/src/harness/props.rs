//! The property suite: every library invariant that admits a cheap
//! random or exhaustive check, run as one batch. Each invariant emits a
//! measured-margin row plus a `*_pass` row (1 or 0), and any failed
//! invariant is recorded so the CLI can exit nonzero.

use std::time::Instant;

use num_traits::ToPrimitive;
use rand::Rng;

use crate::density::{
    envelope_fit, logconcavity_check, simplex_f, simplex_f_forms, simplex_variance,
    spacing_moments, DensityModel,
};
use crate::perm::{
    alt_decompose, beta_b_check, event_probability_exact, local_goodness_tail,
    normalize_weights, relative_event_indicator, PermEvent,
};
use crate::poly::Polynomial;
use crate::rng::{chunk_rng, random_permutation, sorted_uniforms, standard_normal, CoeffDist};
use crate::signseq::bound_check;
use crate::tolerances::{ALT_RESIDUAL, DENSITY_MASS, SIMPLEX_TWO_FORM};
use crate::Result;

use super::config::ExperimentConfig;
use super::rows::{ResultRow, ScanOutput};
use super::scheduler::map_indexed;

/// Sizes for the relative-event decay trend.
const LEMMA_TREND_KS: [usize; 4] = [10, 30, 100, 300];

/// Trial floor for the trend cell: the k = 300 event has probability
/// ≈ 1.7e−3, so fewer trials than this cannot resolve the trend at all.
/// The floor only ever *adds* trials; the ≤ 3 criterion is unchanged.
const TREND_FLOOR_TRIALS: u64 = 20_000;

/// Exhaustive sign-pattern ceiling for the balance-bound check.
const BALANCE_EXHAUSTIVE_MAX: usize = 16;

/// Binomial-tail ceiling for the goodness-tail bound.
const TAIL_MAX: usize = 64;

/// Bound-sweep sample budget (kept modest; the scan is per-run).
const BOUND_SWEEP_CAP: u64 = 2000;

struct CellOut {
    rows: Vec<ResultRow>,
    failures: Vec<String>,
}

struct Emit<'a> {
    experiment: &'a str,
    seed: u64,
    out: CellOut,
    start: Instant,
}

impl<'a> Emit<'a> {
    fn new(experiment: &'a str, seed: u64) -> Emit<'a> {
        Emit {
            experiment,
            seed,
            out: CellOut {
                rows: Vec::new(),
                failures: Vec::new(),
            },
            start: Instant::now(),
        }
    }

    fn row(&mut self, n: usize, metric: &str, value: f64, stderr: Option<f64>, trials: u64) {
        let wall = self.start.elapsed().as_millis() as u64;
        self.out.rows.push(ResultRow::new(
            self.experiment,
            n,
            metric,
            value,
            stderr,
            trials,
            self.seed,
            wall,
        ));
    }

    /// Emits the `<name>_pass` row and records a failure when it is 0.
    fn verdict(&mut self, n: usize, name: &str, pass: bool, detail: String) {
        let wall = self.start.elapsed().as_millis() as u64;
        self.out.rows.push(ResultRow::new(
            self.experiment,
            n,
            format!("{name}_pass"),
            if pass { 1.0 } else { 0.0 },
            None,
            0,
            self.seed,
            wall,
        ));
        if !pass {
            self.out.failures.push(format!("props {name}: {detail}"));
        }
    }

    fn done(self) -> CellOut {
        self.out
    }
}

/// Alternating-decomposition identity: reconstruction residual stays
/// below the documented slack across lengths, parities, and scales.
fn cell_alt_residual(cfg: &ExperimentConfig, odd: bool) -> Result<CellOut> {
    let name = if odd { "alt_residual_odd" } else { "alt_residual_even" };
    let mut e = Emit::new(&cfg.experiment, cfg.seed);
    let mut rng = chunk_rng(cfg.seed, name, 0, 0);
    let mut worst = 0.0f64;
    let mut worst_k = 0usize;
    for _ in 0..cfg.trials {
        let k = if odd {
            2 * rng.gen_range(2..=32) - 1 // 3, 5, …, 63
        } else {
            2 * rng.gen_range(1..=32) // 2, 4, …, 64
        };
        let scale = 10.0f64.powi(rng.gen_range(-3..=3));
        let xi: Vec<f64> = (0..k).map(|_| scale * standard_normal(&mut rng)).collect();
        let max_abs = xi.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let dec = alt_decompose(&xi)?;
        let adjusted = dec.residual() / (1.0 + max_abs * (k * k) as f64);
        if adjusted > worst {
            worst = adjusted;
            worst_k = k;
        }
    }
    e.row(worst_k, name, worst, None, cfg.trials);
    e.verdict(
        worst_k,
        name,
        worst <= ALT_RESIDUAL,
        format!("max adjusted residual {worst:.3e} exceeds {ALT_RESIDUAL:.1e}"),
    );
    Ok(e.done())
}

/// Balance bound: on every *good* sign pattern (exhaustively enumerated
/// up to m = 16, several data vectors per m), B²/5 ≤ β² ≤ B².
fn cell_balance_bounds(cfg: &ExperimentConfig) -> Result<CellOut> {
    let mut e = Emit::new(&cfg.experiment, cfg.seed);
    let mut rng = chunk_rng(cfg.seed, "props_balance", 0, 0);
    let mut violations = 0u64;
    let mut min_lower = f64::INFINITY; // min over good of 5β²/B²  (must stay ≥ 1)
    let mut max_upper: f64 = 0.0; //      max over good of  β²/B²  (must stay ≤ 1)
    let mut good_patterns = 0u64;
    for m in 1..=BALANCE_EXHAUSTIVE_MAX {
        for _ in 0..3 {
            let eta: Vec<f64> = (0..m).map(|_| standard_normal(&mut rng)).collect();
            let mut signs = vec![1i8; m];
            for mask in 0u32..(1u32 << m) {
                for (j, s) in signs.iter_mut().enumerate() {
                    *s = if mask >> j & 1 == 1 { -1 } else { 1 };
                }
                let (beta_sq, b_sq, good) = beta_b_check(&eta, &signs);
                if !good {
                    continue;
                }
                good_patterns += 1;
                let lower = 5.0 * beta_sq / b_sq;
                let upper = beta_sq / b_sq;
                min_lower = min_lower.min(lower);
                max_upper = max_upper.max(upper);
                if lower < 1.0 - 1e-9 || upper > 1.0 + 1e-9 {
                    violations += 1;
                }
            }
        }
    }
    e.row(BALANCE_EXHAUSTIVE_MAX, "balance_min_5beta_over_b", min_lower, None, good_patterns);
    e.row(BALANCE_EXHAUSTIVE_MAX, "balance_max_beta_over_b", max_upper, None, good_patterns);
    e.row(BALANCE_EXHAUSTIVE_MAX, "balance_violations", violations as f64, None, good_patterns);
    e.verdict(
        BALANCE_EXHAUSTIVE_MAX,
        "balance_bounds",
        violations == 0 && good_patterns > 0,
        format!("{violations} of {good_patterns} good patterns broke the squared-norm bounds"),
    );
    Ok(e.done())
}

/// Exact binomial goodness tail stays below 2·e^{−m/8} for m ≤ 64.
fn cell_goodness_tail(cfg: &ExperimentConfig) -> Result<CellOut> {
    let mut e = Emit::new(&cfg.experiment, cfg.seed);
    let mut worst_ratio = 0.0f64;
    let mut worst_m = 0usize;
    for m in 1..=TAIL_MAX {
        let tail = local_goodness_tail(m)
            .to_f64()
            .expect("binomial tail fits in f64");
        let bound = 2.0 * (-(m as f64) / 8.0).exp();
        let ratio = tail / bound;
        if ratio > worst_ratio {
            worst_ratio = ratio;
            worst_m = m;
        }
    }
    e.row(worst_m, "goodness_tail_max_ratio", worst_ratio, None, TAIL_MAX as u64);
    e.verdict(
        worst_m,
        "goodness_tail",
        worst_ratio <= 1.0,
        format!("tail/bound ratio {worst_ratio} exceeds 1 at m={worst_m}"),
    );
    Ok(e.done())
}

/// Spacings variance: the exact value never exceeds its closed-form
/// bound, over random weights and permutations for n = 2, …, 8.
fn cell_variance_bound(cfg: &ExperimentConfig) -> Result<CellOut> {
    let mut e = Emit::new(&cfg.experiment, cfg.seed);
    let mut rng = chunk_rng(cfg.seed, "props_variance", 0, 0);
    let mut violations = 0u64;
    let mut max_ratio = 0.0f64;
    let mut cases = 0u64;
    for n in 2..=8 {
        for _ in 0..100 {
            let w: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
            let sigma: Vec<usize> = random_permutation(n, &mut rng)
                .into_iter()
                .map(|v| v + 1)
                .collect();
            let (exact, bound) = simplex_variance(&w, &sigma)?;
            cases += 1;
            if exact > bound {
                violations += 1;
            }
            if bound > 0.0 {
                max_ratio = max_ratio.max(exact / bound);
            }
        }
    }
    e.row(8, "variance_bound_violations", violations as f64, None, cases);
    e.row(8, "variance_max_exact_over_bound", max_ratio, None, cases);
    e.verdict(
        8,
        "variance_bound",
        violations == 0,
        format!("{violations} of {cases} (w, σ) pairs had exact variance above the bound"),
    );
    Ok(e.done())
}

/// Relative-event decay trend: k·P(|Σ j·ξ_j| ≤ |Σ ξ_j|) stays within a
/// constant band (max/min ≤ 3) as k grows, for Gaussian data.
fn cell_relative_trend(cfg: &ExperimentConfig) -> Result<CellOut> {
    let mut e = Emit::new(&cfg.experiment, cfg.seed);
    let trials = cfg.trials.max(TREND_FLOOR_TRIALS);
    let mut kp = Vec::new(); // (k·p̂, k·se)
    let mut all_hit = true;
    for (i, &k) in LEMMA_TREND_KS.iter().enumerate() {
        let mut rng = chunk_rng(cfg.seed, "props_relative", i as u64, 0);
        let mut hits = 0u64;
        let mut xi = vec![0.0f64; k];
        for _ in 0..trials {
            for x in xi.iter_mut() {
                *x = standard_normal(&mut rng);
            }
            if relative_event_indicator(&xi, false) {
                hits += 1;
            }
        }
        all_hit &= hits > 0;
        let p = hits as f64 / trials as f64;
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        e.row(
            k,
            &format!("relative_kp_k{k}"),
            k as f64 * p,
            Some(k as f64 * se),
            trials,
        );
        kp.push((k as f64 * p, k as f64 * se));
    }
    let max = kp.iter().map(|v| v.0).fold(0.0f64, f64::max);
    let min = kp.iter().map(|v| v.0).fold(f64::INFINITY, f64::min);
    let ratio = if min > 0.0 { max / min } else { f64::INFINITY };
    e.row(0, "relative_kp_max_over_min", ratio, None, trials);
    // Verdict with sampling noise removed: even the 3σ-pessimistic
    // spread must stay within the factor-3 band.
    let max_low = kp.iter().map(|&(v, se)| v - 3.0 * se).fold(0.0f64, f64::max);
    let min_high = kp
        .iter()
        .map(|&(v, se)| v + 3.0 * se)
        .fold(f64::INFINITY, f64::min);
    e.verdict(
        0,
        "relative_trend",
        all_hit && max_low <= 3.0 * min_high,
        format!("k·p̂ spread {ratio:.3} exceeds 3 across k = {LEMMA_TREND_KS:?}"),
    );
    Ok(e.done())
}

/// The two independent evaluations of the simplex functional agree to
/// the documented scale-adjusted tolerance on random cube points.
fn cell_two_forms(cfg: &ExperimentConfig) -> Result<CellOut> {
    let mut e = Emit::new(&cfg.experiment, cfg.seed);
    let mut rng = chunk_rng(cfg.seed, "props_two_forms", 0, 0);
    let mut worst = 0.0f64;
    for _ in 0..cfg.trials {
        let n = rng.gen_range(2..=12);
        let x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let w: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
        let (gap, level) = simplex_f_forms(&x, &w)?;
        worst = worst.max((gap - level).abs() / (1.0 + gap.abs()));
    }
    e.row(12, "two_forms_max_residual", worst, None, cfg.trials);
    e.verdict(
        12,
        "two_forms",
        worst <= SIMPLEX_TWO_FORM,
        format!("max adjusted disagreement {worst:.3e} exceeds {SIMPLEX_TWO_FORM:.1e}"),
    );
    Ok(e.done())
}

/// Monte Carlo mean of the simplex functional against its closed-form
/// expectation Σⱼαⱼ²/(n+1) for a fixed assignment permutation.
fn cell_simplex_mean(cfg: &ExperimentConfig) -> Result<CellOut> {
    let mut e = Emit::new(&cfg.experiment, cfg.seed);
    let mut rng = chunk_rng(cfg.seed, "props_simplex_mean", 0, 0);
    let trials = (cfg.trials / 4).max(500);
    let mut worst_z = 0.0f64;
    let mut worst_n = 0usize;
    for n in 2..=8 {
        let w: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
        let sigma: Vec<usize> = random_permutation(n, &mut rng)
            .into_iter()
            .map(|v| v + 1)
            .collect();
        let (_, bound) = simplex_variance(&w, &sigma)?;
        let expected = bound * (n + 2) as f64; // Σαⱼ²/(n+1)
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        let mut x = vec![0.0f64; n];
        for _ in 0..trials {
            let v = sorted_uniforms(n, &mut rng);
            for (j, &value) in v.iter().enumerate() {
                x[sigma[j] - 1] = value;
            }
            let f = simplex_f(&x, &w)?;
            sum += f;
            sumsq += f * f;
        }
        let (mean, se) = super::stats::mean_stderr(sum, sumsq, trials);
        let z = if se > 0.0 { (mean - expected).abs() / se } else { 0.0 };
        if z > worst_z {
            worst_z = z;
            worst_n = n;
        }
    }
    e.row(worst_n, "simplex_mean_max_z", worst_z, None, trials);
    e.verdict(
        worst_n,
        "simplex_mean",
        worst_z <= 5.0,
        format!("Monte Carlo mean is {worst_z:.2} standard errors from Σα²/(n+1) at n={worst_n}"),
    );
    Ok(e.done())
}

/// Every sampled polynomial satisfies both sign-change bounds, across
/// mixed degrees and coefficient distributions.
fn cell_bound_sweep(cfg: &ExperimentConfig) -> Result<CellOut> {
    let mut e = Emit::new(&cfg.experiment, cfg.seed);
    let mut rng = chunk_rng(cfg.seed, "props_bounds", 0, 0);
    let dists = [
        CoeffDist::Rademacher,
        CoeffDist::Gaussian,
        CoeffDist::Uniform,
        CoeffDist::Cauchy,
        CoeffDist::Atom0 { p0: 0.3 },
    ];
    let total = cfg.trials.min(BOUND_SWEEP_CAP);
    let mut checked = 0u64;
    let mut violations = 0u64;
    for t in 0..total {
        let degree = 1 + (t as usize * 7) % 48;
        let dist = &dists[t as usize % dists.len()];
        let poly = Polynomial::new(dist.sample_coeffs(degree + 1, &mut rng));
        if poly.is_zero() {
            continue;
        }
        let report = bound_check(&poly)?;
        checked += 1;
        if !(report.holds.0 && report.holds.1) {
            violations += 1;
        }
    }
    e.row(48, "bound_sweep_violations", violations as f64, None, checked);
    e.verdict(
        48,
        "bound_sweep",
        violations == 0,
        format!("{violations} of {checked} sampled polynomials violated a sign-change bound"),
    );
    Ok(e.done())
}

/// Exact spacing moments satisfy their closure identity for every n up
/// to 100.
fn cell_spacing(cfg: &ExperimentConfig) -> Result<CellOut> {
    let mut e = Emit::new(&cfg.experiment, cfg.seed);
    let mut violations = 0u64;
    for n in 1..=100 {
        if !spacing_moments(n)?.consistency_holds() {
            violations += 1;
        }
    }
    e.row(100, "spacing_violations", violations as f64, None, 100);
    e.verdict(
        100,
        "spacing_identity",
        violations == 0,
        format!("{violations} sizes broke the exact moment identity"),
    );
    Ok(e.done())
}

/// Exhaustive Rademacher tails never exceed the sub-Gaussian bound.
fn cell_subgaussian_tail(cfg: &ExperimentConfig) -> Result<CellOut> {
    let mut e = Emit::new(&cfg.experiment, cfg.seed);
    let mut rng = chunk_rng(cfg.seed, "props_tailbound", 0, 0);
    let mut violations = 0u64;
    let mut max_ratio = 0.0f64;
    let mut points = 0u64;
    for _ in 0..40 {
        let n = rng.gen_range(2..=12);
        let a: Vec<f64> = (0..n)
            .map(|_| standard_normal(&mut rng).abs() + 0.05)
            .collect();
        let total: f64 = a.iter().sum();
        for step in 0..=8 {
            let t = total * step as f64 / 8.0;
            let bound = crate::density::hoeffding_bound(&a, t)?;
            // Exact one-sided tail by enumerating all 2^n sign vectors.
            let mut hits = 0u64;
            for mask in 0u32..(1u32 << n) {
                let s: f64 = a
                    .iter()
                    .enumerate()
                    .map(|(i, &ai)| if mask >> i & 1 == 1 { ai } else { -ai })
                    .sum();
                if s >= t {
                    hits += 1;
                }
            }
            let tail = hits as f64 / (1u64 << n) as f64;
            points += 1;
            if tail > bound * (1.0 + 1e-12) {
                violations += 1;
            }
            if bound > 0.0 {
                max_ratio = max_ratio.max(tail / bound);
            }
        }
    }
    e.row(12, "tail_bound_violations", violations as f64, None, points);
    e.row(12, "tail_bound_max_ratio", max_ratio, None, points);
    e.verdict(
        12,
        "tail_bound",
        violations == 0,
        format!("{violations} of {points} tail points exceeded the sub-Gaussian bound"),
    );
    Ok(e.done())
}

/// Window anchor: the normalized progression (1, 2, 3) with a unit
/// window at level 0 hits exactly 2/3 of the permutations.
fn cell_window_anchor(cfg: &ExperimentConfig) -> Result<CellOut> {
    let mut e = Emit::new(&cfg.experiment, cfg.seed);
    let w = normalize_weights(&[1.0, 2.0, 3.0])?.into_vec();
    let est = event_probability_exact(
        &PermEvent::Window {
            l: 0.0,
            h: 1.0,
            w,
        },
        3,
    )?;
    let exact = est.exact.expect("enumeration is exact");
    let target = num_rational::BigRational::new(2.into(), 3.into());
    e.row(3, "window_anchor_p", est.p_hat, None, 0);
    e.verdict(
        3,
        "window_anchor",
        exact == target,
        format!("exact probability {exact} differs from 2/3"),
    );
    Ok(e.done())
}

/// Density shape: unit mass, monotone decay away from 0, and grid
/// log-concavity for a few random weight vectors.
fn cell_density_shape(cfg: &ExperimentConfig) -> Result<CellOut> {
    let mut e = Emit::new(&cfg.experiment, cfg.seed);
    let mut rng = chunk_rng(cfg.seed, "props_density", 0, 0);
    let mut mass_err = 0.0f64;
    let mut envelope_violations = 0usize;
    let mut logconc_violations = 0usize;
    for n in [4usize, 8, 12] {
        let w: Vec<f64> = (0..n)
            .map(|_| standard_normal(&mut rng) + 1.5 * if rng.gen::<bool>() { 1.0 } else { -1.0 })
            .collect();
        let model = DensityModel::build(&w)?;
        mass_err = mass_err.max((model.total_mass() - 1.0).abs());
        let fit = envelope_fit(&model);
        envelope_violations += fit.violations;
        let (lo, hi) = model.support();
        let grid: Vec<f64> = (0..401)
            .map(|k| (lo + (hi - lo) * k as f64 / 400.0) * 0.999)
            .collect();
        logconc_violations += logconcavity_check(&model, &grid);
    }
    e.row(12, "density_mass_max_err", mass_err, None, 3);
    e.row(12, "density_decay_violations", envelope_violations as f64, None, 3);
    e.row(12, "density_logconcavity_violations", logconc_violations as f64, None, 3);
    e.verdict(
        12,
        "density_shape",
        mass_err <= DENSITY_MASS && envelope_violations == 0 && logconc_violations == 0,
        format!(
            "mass error {mass_err:.3e}, {envelope_violations} decay and \
             {logconc_violations} log-concavity violations"
        ),
    );
    Ok(e.done())
}

/// Runs every invariant cell and merges their rows in a fixed order.
/// Any failed invariant lands in `failures`, which makes the CLI exit
/// with status 1.
pub fn run_property_suite(cfg: &ExperimentConfig) -> Result<ScanOutput> {
    let mut out = ScanOutput {
        metadata: cfg.metadata(),
        ..ScanOutput::default()
    };
    out.metadata.push((
        "note".to_string(),
        "one *_pass row per invariant (1 = holds); margins in sibling rows".to_string(),
    ));

    type CellFn = fn(&ExperimentConfig) -> Result<CellOut>;
    let cells: Vec<CellFn> = vec![
        |c| cell_alt_residual(c, true),
        |c| cell_alt_residual(c, false),
        cell_balance_bounds,
        cell_goodness_tail,
        cell_variance_bound,
        cell_relative_trend,
        cell_two_forms,
        cell_simplex_mean,
        cell_bound_sweep,
        cell_spacing,
        cell_subgaussian_tail,
        cell_window_anchor,
        cell_density_shape,
    ];
    let results = map_indexed(cfg.workers, cells.len(), |i| cells[i](cfg));
    for result in results {
        let cell = result?;
        out.rows.extend(cell.rows);
        out.failures.extend(cell.failures);
    }
    Ok(out)
}
