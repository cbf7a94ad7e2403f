//! Acceptance suite: ten end-to-end criteria covering exact window
//! enumeration, Monte Carlo scans of real-root counts, the unit-interval
//! sign-change bounds, order-statistic variance and functional
//! identities, the alternating decomposition, density evaluation, and
//! bit-identical parallelism. Each test prints one `criterion N:
//! PASS/FAIL` line on the process's real stdout, so the verdicts appear
//! in plain `cargo test` output even with capture enabled.
//!
//! Statistical gates use pinned seeds chosen before the first run. Gates
//! of the form "within 3 standard errors" are fixed-significance tests:
//! a true hypothesis still fails such a gate ~0.3% of the time per cell,
//! so purely statistical cells grant one independent retest at four
//! times the sample size; a genuine discrepancy fails both stages.

use std::time::Instant;

use descartes_lab::density::{
    exact_density, fourier_density_default, hoeffding_bound, logconcavity_check, simplex_f,
    simplex_variance, DensityModel,
};
use descartes_lab::harness::{run_experiment, ExperimentConfig, ScanOutput};
use descartes_lab::perm::{alt_decompose, beta_b_check, local_goodness_tail, normalize_weights};
use descartes_lab::poly::Polynomial;
use descartes_lab::rng::{chunk_rng, random_permutation, sorted_uniforms, standard_normal, CoeffDist};
use descartes_lab::signseq::bound_check;
use num_traits::ToPrimitive;
use rand::Rng;

const FAMILIES: [&str; 3] = ["arith", "gauss", "twoatom"];

/// Prints the per-criterion verdict line, then enforces it. The line is
/// written to `/dev/stdout` directly because the test harness captures
/// `println!` output from passing tests; the raw write keeps one verdict
/// line per criterion visible in ordinary `cargo test` runs.
fn report(id: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("criterion {id}: {verdict} — {detail}\n");
    let raw = std::fs::OpenOptions::new()
        .append(true)
        .open("/dev/stdout")
        .and_then(|mut f| std::io::Write::write_all(&mut f, line.as_bytes()));
    if raw.is_err() {
        print!("{line}");
    }
    assert!(pass, "criterion {id}: {detail}");
}

fn scan(experiment: &str, n_list: &[usize], trials: u64, dist: &str, seed: u64) -> ScanOutput {
    let mut cfg = ExperimentConfig::default_for(experiment).unwrap();
    cfg.n_list = n_list.to_vec();
    cfg.trials = trials;
    cfg.dist = CoeffDist::parse(dist).unwrap();
    cfg.seed = seed;
    cfg.workers = 1;
    cfg.validate().unwrap();
    run_experiment(&cfg).unwrap()
}

fn find<'a>(out: &'a ScanOutput, n: usize, metric: &str) -> &'a descartes_lab::harness::ResultRow {
    out.rows
        .iter()
        .find(|r| r.n == n && r.metric == metric)
        .unwrap_or_else(|| panic!("missing row n={n} metric={metric}"))
}

fn val(out: &ScanOutput, n: usize, metric: &str) -> f64 {
    find(out, n, metric).value
}

fn se(out: &ScanOutput, n: usize, metric: &str) -> f64 {
    find(out, n, metric)
        .stderr
        .unwrap_or_else(|| panic!("row n={n} metric={metric} has no stderr"))
}

/// Criterion 1: exact window probabilities at L = 0 by full permutation
/// enumeration for n = 4..=10 and three weight families; the log–log
/// slope of p against n must be at most −0.7 for every family, within
/// two minutes.
#[test]
fn criterion_01_window_decay_slopes() {
    let t0 = Instant::now();
    let out = scan("ac-scan", &[4, 5, 6, 7, 8, 9, 10], 1000, "rademacher", 101);
    // Every probability in this range must come from the exact
    // enumeration branch (trials = 0 and a recorded stderr-free value).
    let mut exact_rows = 0usize;
    for n in 4..=10 {
        for fam in FAMILIES {
            let row = find(&out, n, &format!("p_{fam}_L0"));
            assert_eq!(row.trials, 0, "n={n} {fam}: expected exact enumeration");
            exact_rows += 1;
        }
    }
    let slopes: Vec<(String, f64)> = FAMILIES
        .iter()
        .map(|fam| {
            (
                fam.to_string(),
                val(&out, 0, &format!("slope_loglog_{fam}_L0")),
            )
        })
        .collect();
    let elapsed = t0.elapsed().as_secs_f64();
    let steep = slopes.iter().all(|(_, s)| *s <= -0.7);
    let detail = format!(
        "{exact_rows} exact cells; log–log slopes {} (all ≤ −0.7: {steep}); {elapsed:.1}s ≤ 120s",
        slopes
            .iter()
            .map(|(f, s)| format!("{f} {s:.3}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    report(1, steep && elapsed <= 120.0, &detail);
}

/// Criterion 2: at n = 9 the exact window probability is non-increasing
/// in |L| over {0, 1/2, 1, 2} and hits exactly 0 once the window leaves
/// the bounded support; Monte Carlo at n = 200 with 10^6 trials per
/// window shows a negative slope of log p against |L|. Five minutes.
#[test]
fn criterion_02_window_location_decay() {
    let t0 = Instant::now();
    let out = scan("ac-scan", &[9, 200], 1_000_000, "rademacher", 102);
    let tags = ["0", "0.5", "1", "2"];
    let exact: Vec<f64> = tags
        .iter()
        .map(|tag| {
            let row = find(&out, 9, &format!("p_arith_L{tag}"));
            assert_eq!(row.trials, 0, "n=9 L={tag}: expected exact enumeration");
            row.value
        })
        .collect();
    let non_increasing = exact.windows(2).all(|w| w[0] >= w[1]);
    let reaches_zero = *exact.last().unwrap() == 0.0;
    let slope = val(&out, 200, "slope_logp_absl_arith");
    let elapsed = t0.elapsed().as_secs_f64();
    let pass = non_increasing && reaches_zero && slope < 0.0 && elapsed <= 300.0;
    let detail = format!(
        "exact p(L) at n=9: {exact:?} (non-increasing: {non_increasing}, reaches 0: \
         {reaches_zero}); MC slope of log p vs |L| at n=200: {slope:.3}; {elapsed:.1}s ≤ 300s"
    );
    report(2, pass, &detail);
}

/// Criterion 3: Gaussian scans over n = 16..1024 with at least 2000
/// trials per size put the mean real-root count within 2% of the
/// Gaussian double-integral oracle at every size, and the mean count
/// away from zero divided by ln n stays within a factor 1.5 across sizes
/// for Gaussian, Rademacher, and Cauchy coefficients. Thirty minutes.
#[test]
fn criterion_03_root_count_growth() {
    let t0 = Instant::now();
    let small = [16usize, 32, 64, 128, 256];
    let large = [512usize, 1024];
    let all: Vec<usize> = small.iter().chain(large.iter()).copied().collect();

    let g_small = scan("zero-scan", &small, 20_000, "gaussian", 103);
    let g_large = scan("zero-scan", &large, 5_000, "gaussian", 104);
    assert!(g_small.failures.is_empty(), "{:?}", g_small.failures);
    assert!(g_large.failures.is_empty(), "{:?}", g_large.failures);

    let gaussian_at = |n: usize, metric: &str| -> f64 {
        if small.contains(&n) {
            val(&g_small, n, metric)
        } else {
            val(&g_large, n, metric)
        }
    };
    let mut worst_rel = 0.0f64;
    for &n in &all {
        let mean = gaussian_at(n, "mean_total_roots");
        let oracle = gaussian_at(n, "kac_expected");
        let rel = (mean - oracle).abs() / oracle;
        if rel > worst_rel {
            worst_rel = rel;
        }
    }

    let rade = scan("zero-scan", &all, 2_000, "rademacher", 105);
    let cauchy = scan("zero-scan", &all, 2_000, "cauchy", 106);
    assert!(rade.failures.is_empty(), "{:?}", rade.failures);
    assert!(cauchy.failures.is_empty(), "{:?}", cauchy.failures);

    let spread = |get: &dyn Fn(usize) -> f64| -> f64 {
        let ratios: Vec<f64> = all.iter().map(|&n| get(n)).collect();
        let max = ratios.iter().fold(f64::MIN, |m, &r| m.max(r));
        let min = ratios.iter().fold(f64::MAX, |m, &r| m.min(r));
        max / min
    };
    let spread_g = spread(&|n| gaussian_at(n, "n_star_over_ln_n"));
    let spread_r = spread(&|n| val(&rade, n, "n_star_over_ln_n"));
    let spread_c = spread(&|n| val(&cauchy, n, "n_star_over_ln_n"));

    let elapsed = t0.elapsed().as_secs_f64();
    let pass = worst_rel <= 0.02
        && spread_g <= 1.5
        && spread_r <= 1.5
        && spread_c <= 1.5
        && elapsed <= 1800.0;
    let detail = format!(
        "gaussian mean vs oracle: worst relative gap {:.2}% (≤ 2%); N*/ln n max/min spreads \
         gaussian {spread_g:.3}, rademacher {spread_r:.3}, cauchy {spread_c:.3} (all ≤ 1.5); \
         {elapsed:.0}s ≤ 1800s",
        100.0 * worst_rel
    );
    report(3, pass, &detail);
}

/// Criterion 4: across 10^4 exactly-counted random polynomials of degree
/// up to 64 (five coefficient distributions), the sign-change bounds on
/// unit-interval root counts hold with zero violations.
#[test]
fn criterion_04_unit_interval_bounds() {
    let dists = ["gaussian", "rademacher", "uniform", "cauchy", "atom0(0.3)"]
        .map(|s| CoeffDist::parse(s).unwrap());
    let mut checked = 0u64;
    let mut violations = 0u64;
    let mut draw = 0u64;
    while checked < 10_000 {
        let deg = 1 + (draw % 64) as usize;
        let dist = &dists[(draw % 5) as usize];
        let mut rng = chunk_rng(107, "acceptance_bound_sweep", draw, 0);
        draw += 1;
        let p = Polynomial::new(dist.sample_coeffs(deg + 1, &mut rng));
        if p.is_zero() {
            continue; // the atom distribution can produce the zero polynomial
        }
        let rep = bound_check(&p).unwrap();
        if !rep.holds.0 {
            violations += 1;
        }
        if !rep.holds.1 {
            violations += 1;
        }
        checked += 1;
    }
    let detail = format!(
        "{checked} polynomials (degrees 1..=64, 5 distributions): {violations} bound violations"
    );
    report(4, violations == 0, &detail);
}

/// Criterion 5: with coefficients that vanish with probability 0.3, the
/// mean root multiplicity at the origin over nonzero degree-50 samples
/// stays within 3 standard errors of (and below the untruncated bound
/// for) the truncated-geometric prediction, across 10^4 trials.
#[test]
fn criterion_05_atom_multiplicity_at_zero() {
    let out = scan("zero-scan", &[50], 10_000, "atom0(0.3)", 108);
    assert!(out.failures.is_empty(), "{:?}", out.failures);
    let mean = val(&out, 50, "mean_mult0");
    let stderr = se(&out, 50, "mean_mult0");
    let geometric = val(&out, 50, "mult0_expected_geometric"); // p0/(1−p0) = 3/7
    let truncated = val(&out, 50, "mult0_expected_truncated");
    let chi_p = val(&out, 50, "mult0_chi_square_p");
    let below_bound = mean <= geometric + 3.0 * stderr;
    let matches_truncated = (mean - truncated).abs() <= 3.0 * stderr;
    let pass = below_bound && matches_truncated && chi_p > 0.001;
    let detail = format!(
        "mean multiplicity {mean:.4} ± {stderr:.4} vs geometric {geometric:.4} and truncated \
         {truncated:.4}; shape χ² p-value {chi_p:.3}"
    );
    report(5, pass, &detail);
}

/// Criterion 6: the closed-form variance of a weighted order-statistic
/// sum never exceeds its tail-sum bound across a 700-case sweep, and a
/// 10^6-trial Monte Carlo over sorted uniforms reproduces the exact
/// variance within 3 standard errors.
#[test]
fn criterion_06_order_statistic_variance() {
    let mut cases = 0u64;
    let mut violations = 0u64;
    for n in 2..=8usize {
        for rep in 0..100u64 {
            let mut rng = chunk_rng(109, "acceptance_var_sweep", n as u64, rep);
            let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let Ok(w) = normalize_weights(&raw) else {
                continue;
            };
            let sigma: Vec<usize> = random_permutation(n, &mut rng)
                .into_iter()
                .map(|v| v + 1)
                .collect();
            let (exact, bound) = simplex_variance(w.as_slice(), &sigma).unwrap();
            if !(0.0..=bound).contains(&exact) {
                violations += 1;
            }
            cases += 1;
        }
    }

    let raw = [1.0, -0.4, 0.7, 0.2, -1.3];
    let w = normalize_weights(&raw).unwrap();
    let sigma = [3usize, 1, 5, 2, 4];
    let (exact, _) = simplex_variance(w.as_slice(), &sigma).unwrap();
    let mut mc_pass = false;
    let mut mc_detail = String::new();
    for (stage, trials) in [(0u64, 1_000_000u64), (1, 4_000_000)] {
        let mut rng = chunk_rng(109, "acceptance_var_mc", stage, 0);
        let (mut s1, mut s2, mut s3, mut s4) = (0.0f64, 0.0, 0.0, 0.0);
        for _ in 0..trials {
            let v = sorted_uniforms(5, &mut rng);
            let y: f64 = (0..5).map(|j| w.as_slice()[sigma[j] - 1] * v[j]).sum();
            s1 += y;
            let y2 = y * y;
            s2 += y2;
            s3 += y2 * y;
            s4 += y2 * y2;
        }
        let t = trials as f64;
        let mean = s1 / t;
        let var = s2 / t - mean * mean;
        let m4 = s4 / t - 4.0 * mean * s3 / t + 6.0 * mean * mean * s2 / t
            - 3.0 * mean * mean * mean * mean;
        let se_var = ((m4 - var * var).max(0.0) / t).sqrt();
        let z = (var - exact).abs() / se_var;
        mc_detail = format!("MC variance {var:.6e} vs exact {exact:.6e} (z = {z:.2}, stage {stage})");
        if z <= 3.0 {
            mc_pass = true;
            break;
        }
    }
    let pass = violations == 0 && mc_pass;
    let detail =
        format!("{cases} sweep cases, {violations} bound violations; {mc_detail} within 3 se");
    report(6, pass, &detail);
}

/// Criterion 7: the two independent evaluations of the simplex
/// functional agree to 1e−10 (scale-adjusted) on 10^4 random points, and
/// for every n in 2..=12 the Monte Carlo mean over a fixed-order simplex
/// matches the tail-sum identity within 3 standard errors.
#[test]
fn criterion_07_simplex_functional() {
    let mut rng = chunk_rng(110, "acceptance_two_forms", 0, 0);
    let mut worst = 0.0f64;
    for t in 0..10_000usize {
        let n = 1 + t % 12;
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let (gap, level) = descartes_lab::density::simplex_f_forms(&x, &w).unwrap();
        let rel = (gap - level).abs() / (1.0 + gap.abs());
        if rel > worst {
            worst = rel;
        }
    }
    let forms_ok = worst <= 1e-10;

    let mut mean_ok = true;
    let mut worst_z = 0.0f64;
    for n in 2..=12usize {
        let mut setup = chunk_rng(110, "acceptance_f_mean", n as u64, 0);
        let w: Vec<f64> = (0..n).map(|_| setup.gen_range(-2.0..2.0)).collect();
        let sigma: Vec<usize> = random_permutation(n, &mut setup)
            .into_iter()
            .map(|v| v + 1)
            .collect();
        let (_, bound) = simplex_variance(&w, &sigma).unwrap();
        let want = bound * (n + 2) as f64; // Σ tail² / (n+1)
        let mut cell_ok = false;
        for (stage, trials) in [(1u64, 20_000u64), (2, 80_000)] {
            let mut rng = chunk_rng(110, "acceptance_f_mean", n as u64, stage);
            let (mut sum, mut sumsq) = (0.0f64, 0.0f64);
            for _ in 0..trials {
                let v = sorted_uniforms(n, &mut rng);
                let mut x = vec![0.0f64; n];
                for (j, &s) in sigma.iter().enumerate() {
                    x[s - 1] = v[j];
                }
                let f = simplex_f(&x, &w).unwrap();
                sum += f;
                sumsq += f * f;
            }
            let t = trials as f64;
            let mean = sum / t;
            let se = ((sumsq / t - mean * mean).max(0.0) / t).sqrt();
            let z = (mean - want).abs() / se;
            if z > worst_z {
                worst_z = z;
            }
            if z <= 3.0 {
                cell_ok = true;
                break;
            }
        }
        mean_ok &= cell_ok;
    }
    let pass = forms_ok && mean_ok;
    let detail = format!(
        "max scale-adjusted form gap {worst:.2e} over 10^4 points (≤ 1e−10); mean identity held \
         for n = 2..=12 (worst z {worst_z:.2})"
    );
    report(7, pass, &detail);
}

/// Criterion 8: the alternating decomposition reconstructs its input to
/// 1e−10 (scale-adjusted) on 10^5 vectors per parity; exhaustively over
/// all sign patterns for m ≤ 16, balanced patterns keep β² within
/// [B²/5, B²]; and the balance tail bound 2e^{−m/8} holds exactly for
/// m ≤ 64.
#[test]
fn criterion_08_alternating_decomposition() {
    let mut worst = [0.0f64; 2];
    for (slot, odd) in [(0usize, false), (1, true)] {
        let domain = if odd {
            "acceptance_alt_odd"
        } else {
            "acceptance_alt_even"
        };
        let mut rng = chunk_rng(111, domain, 0, 0);
        for _ in 0..100_000u32 {
            let k = if odd {
                2 * rng.gen_range(2..=32) - 1
            } else {
                2 * rng.gen_range(1..=32)
            };
            let scale = 10.0f64.powi(rng.gen_range(-3..=3));
            let xi: Vec<f64> = (0..k).map(|_| scale * standard_normal(&mut rng)).collect();
            let max_abs = xi.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let dec = alt_decompose(&xi).unwrap();
            let adjusted = dec.residual() / (1.0 + max_abs * (k * k) as f64);
            if adjusted > worst[slot] {
                worst[slot] = adjusted;
            }
        }
    }
    let residuals_ok = worst[0] <= 1e-10 && worst[1] <= 1e-10;

    let mut balanced = 0u64;
    let mut balance_violations = 0u64;
    for m in 1..=16usize {
        for rep in 0..2u64 {
            let mut rng = chunk_rng(111, "acceptance_balance", m as u64, rep);
            let eta: Vec<f64> = (0..m).map(|_| standard_normal(&mut rng)).collect();
            for mask in 0u32..(1u32 << m) {
                let signs: Vec<i8> = (0..m)
                    .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
                    .collect();
                let (beta_sq, cap_sq, good) = beta_b_check(&eta, &signs);
                if !good {
                    continue;
                }
                balanced += 1;
                let slack = 1e-9 * cap_sq.max(1e-300);
                if beta_sq < cap_sq / 5.0 - slack || beta_sq > cap_sq + slack {
                    balance_violations += 1;
                }
            }
        }
    }

    let mut tail_ok = true;
    let mut worst_tail_ratio = 0.0f64;
    for m in 1..=64usize {
        let tail = local_goodness_tail(m).to_f64().unwrap();
        let bound = 2.0 * (-(m as f64) / 8.0).exp();
        let ratio = tail / bound;
        if ratio > worst_tail_ratio {
            worst_tail_ratio = ratio;
        }
        if tail > bound * (1.0 + 1e-12) {
            tail_ok = false;
        }
    }

    let pass = residuals_ok && balance_violations == 0 && balanced > 0 && tail_ok;
    let detail = format!(
        "max adjusted residuals even {:.2e} / odd {:.2e} (≤ 1e−10); {balanced} balanced sign \
         patterns, {balance_violations} outside [B²/5, B²]; balance tail ≤ 2e^(−m/8) for m ≤ 64 \
         (max ratio {worst_tail_ratio:.3})",
        worst[0], worst[1]
    );
    report(8, pass, &detail);
}

/// Criterion 9: on 50 random weight vectors (n ≤ 15, 200-point grids)
/// the exact piecewise density and its Fourier evaluation agree to
/// 1e−6, the density is log-concave/unimodal with zero violations, and
/// exhaustively-enumerated Rademacher tails never exceed the
/// sub-Gaussian bound.
#[test]
fn criterion_09_density_three_ways() {
    let mut rng = chunk_rng(112, "acceptance_density", 0, 0);
    let mut worst_cross = 0.0f64;
    let mut logconcavity_violations = 0usize;
    let mut decay_violations = 0usize;
    for case in 0..50usize {
        let n = 1 + case % 15;
        let w: Vec<f64> = (0..n)
            .map(|_| {
                let magnitude = rng.gen_range(0.2..2.0);
                if rng.gen::<bool>() {
                    magnitude
                } else {
                    -magnitude
                }
            })
            .collect();
        let half_support: f64 = w.iter().map(|x| x.abs()).sum::<f64>() / 2.0;
        let lo = -0.999 * half_support;
        let step = 2.0 * 0.999 * half_support / 199.0;
        let grid: Vec<f64> = (0..200).map(|i| lo + step * i as f64).collect();
        let mut exact_on_grid = Vec::with_capacity(grid.len());
        for &t in &grid {
            let pe = exact_density(&w, t).unwrap();
            let pf = fourier_density_default(&w, t).unwrap();
            let diff = (pe - pf).abs();
            if diff > worst_cross {
                worst_cross = diff;
            }
            exact_on_grid.push(pe);
        }
        if n <= 12 {
            let model = DensityModel::build(&w).unwrap();
            logconcavity_violations += logconcavity_check(&model, &grid);
        } else {
            // Beyond the spline cap, check unimodality directly: the
            // exact values must not increase while moving away from 0.
            for i in 0..grid.len() - 1 {
                if grid[i] >= 0.0 && exact_on_grid[i + 1] > exact_on_grid[i] + 1e-9 {
                    decay_violations += 1;
                }
                if grid[i + 1] <= 0.0 && exact_on_grid[i] > exact_on_grid[i + 1] + 1e-9 {
                    decay_violations += 1;
                }
            }
        }
    }

    let mut tail_violations = 0usize;
    let mut tails_checked = 0usize;
    for case in 0..50u64 {
        let mut rng = chunk_rng(112, "acceptance_tails", case, 0);
        let n = 2 + (case % 15) as usize; // 2..=16
        let a: Vec<f64> = (0..n)
            .map(|_| {
                let magnitude = rng.gen_range(0.2..2.0);
                if rng.gen::<bool>() {
                    magnitude
                } else {
                    -magnitude
                }
            })
            .collect();
        let sigma = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        for t_mul in [0.5f64, 1.0, 2.0] {
            let t = t_mul * sigma;
            let mut hits = 0u64;
            for mask in 0u64..(1u64 << n) {
                let s: f64 = a
                    .iter()
                    .enumerate()
                    .map(|(i, &ai)| if mask >> i & 1 == 1 { ai } else { -ai })
                    .sum();
                if s >= t {
                    hits += 1;
                }
            }
            let exact_tail = hits as f64 / (1u64 << n) as f64;
            // The sum is distribution-equal under sign flips of the
            // coefficients, and the bound takes magnitudes.
            let magnitudes: Vec<f64> = a.iter().map(|x| x.abs()).collect();
            let bound = hoeffding_bound(&magnitudes, t).unwrap();
            tails_checked += 1;
            if exact_tail > bound * (1.0 + 1e-12) {
                tail_violations += 1;
            }
        }
    }

    let pass = worst_cross <= 1e-6
        && logconcavity_violations == 0
        && decay_violations == 0
        && tail_violations == 0;
    let detail = format!(
        "max |exact − fourier| {worst_cross:.2e} over 50×200 points (≤ 1e−6); \
         {logconcavity_violations} log-concavity and {decay_violations} unimodality violations; \
         {tail_violations}/{tails_checked} enumerated tails above the sub-Gaussian bound"
    );
    report(9, pass, &detail);
}

/// Criterion 10: running the CLI with 1, 4, and 16 workers at the same
/// seed yields byte-identical CSV bodies (wall-clock column excluded)
/// for every experiment.
#[test]
fn criterion_10_worker_independence() {
    let exe = env!("CARGO_BIN_EXE_descartes-lab");
    let dir = tempfile::tempdir().unwrap();
    let runs: [(&str, &[&str]); 4] = [
        (
            "zero-scan",
            &["--n", "8,16", "--trials", "512", "--dist", "gaussian"],
        ),
        ("ac-scan", &["--n", "4,40", "--trials", "30000"]),
        ("props", &["--trials", "400"]),
        ("density-scan", &["--n", "2,6"]),
    ];
    let mut compared = 0usize;
    for (sub, extra) in runs {
        let mut bodies: Vec<String> = Vec::new();
        for workers in ["1", "4", "16"] {
            let out_path = dir.path().join(format!("{sub}_w{workers}.csv"));
            let status = std::process::Command::new(exe)
                .arg(sub)
                .args(extra)
                .args(["--seed", "424242", "--workers", workers])
                .arg("--out")
                .arg(&out_path)
                .status()
                .unwrap();
            assert!(status.success(), "{sub} with {workers} workers failed");
            let text = std::fs::read_to_string(&out_path).unwrap();
            bodies.push(strip_wall_ms(&text));
        }
        assert_eq!(bodies[0], bodies[1], "{sub}: 1 vs 4 workers");
        assert_eq!(bodies[0], bodies[2], "{sub}: 1 vs 16 workers");
        compared += 1;
    }
    report(
        10,
        compared == 4,
        "zero-scan, ac-scan, props, and density-scan CSV bodies are identical for 1/4/16 workers",
    );
}

/// Drops the wall-clock column (the last CSV field) from data rows.
fn strip_wall_ms(csv: &str) -> String {
    csv.lines()
        .map(|line| {
            if line.starts_with('#') || line.starts_with("experiment,") || line.is_empty() {
                line.to_string()
            } else {
                match line.rfind(',') {
                    Some(pos) => line[..pos].to_string(),
                    None => line.to_string(),
                }
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}
