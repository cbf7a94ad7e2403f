//! Central registry of every numeric tolerance the crate asserts against.
//!
//! Each constant documents where the number comes from, so a reviewer can
//! audit a failing check without chasing magic literals through the code.
//! Exact-arithmetic checks (root counts, enumeration probabilities, rational
//! identities) use no tolerance at all and do not appear here.

// ═══════════════════════════════════════════════════════════════════════
// Weight normalization
// ═══════════════════════════════════════════════════════════════════════

/// Slack for the centered/unit-norm weight invariants |Σw| and |Σw² − 1|,
/// scaled by n. Each of the ~n floating adds contributes ≤ 1 ulp of the
/// running magnitude, so 1e−12·n leaves three orders of headroom over
/// f64 epsilon while still catching any real normalization bug.
pub const WEIGHT_NORMALIZATION_SLACK_PER_ENTRY: f64 = 1e-12;

// ═══════════════════════════════════════════════════════════════════════
// Alternating-sum decompositions
// ═══════════════════════════════════════════════════════════════════════

/// Residual bound for the alternating-decomposition identities, scaled by
/// (1 + max|ξ|·k²). The identity rearranges O(k²)-weighted sums, so the
/// natural error unit is max|ξ|·k² ulps; 1e−10 sits ~5 orders above that
/// for k ≤ 10^3 while remaining far below any genuine algebra error.
pub const ALT_RESIDUAL: f64 = 1e-10;

// ═══════════════════════════════════════════════════════════════════════
// Simplex functionals
// ═══════════════════════════════════════════════════════════════════════

/// Agreement between the ordered-region form and the piecewise-constant
/// integral form of the simplex functional F. Both are O(n) exact-real
/// rearrangements of the same sum; 1e−10 absolute (inputs are unit-scale)
/// is ~6 orders above accumulated f64 rounding at n ≤ 12.
pub const SIMPLEX_TWO_FORM: f64 = 1e-10;

// ═══════════════════════════════════════════════════════════════════════
// Densities
// ═══════════════════════════════════════════════════════════════════════

/// Cross-agreement between the inclusion–exclusion density and the
/// Fourier-inversion density on evaluation grids. The Fourier side is
/// certified to half this budget; the closed form with compensated
/// summation holds the other half comfortably for n ≤ 15.
pub const DENSITY_CROSS: f64 = 1e-6;

/// Default certified tolerance requested from the Fourier evaluator when
/// cross-checking against the closed form (half of [`DENSITY_CROSS`]).
pub const FOURIER_DEFAULT_TOL: f64 = 5e-7;

/// Default frequency budget for the Fourier evaluator. The certified
/// truncation for unit-norm weights needs at most a few thousand rad/s;
/// 1e5 leaves two orders of headroom before QuadratureFailure.
pub const FOURIER_DEFAULT_LAMBDA_MAX: f64 = 1e5;

/// Total-mass defect allowed for the piecewise-polynomial density model
/// (exact piecewise integration, f64 accumulation over ≤ 2^16 pieces).
pub const DENSITY_MASS: f64 = 1e-9;

/// Symmetry defect p(t) vs p(−t) allowed for the density model; both
/// evaluations traverse the same piece table mirrored, so only rounding
/// separates them.
pub const DENSITY_SYMMETRY: f64 = 1e-12;

/// Second difference of log-density must stay below this for the
/// log-concavity verdict. Weighted-uniform-sum densities are strictly
/// log-concave inside their support; 1e−9 absorbs log-evaluation noise
/// without masking a real convexity violation.
pub const LOGCONCAVITY_MARGIN: f64 = 1e-9;

/// Slack when checking monotone decay of the density away from 0 on a
/// grid: adjacent evaluations may differ by rounding even on a flat
/// plateau (e.g. the single-uniform box density).
pub const MONOTONE_DECAY_SLACK: f64 = 1e-12;

// ═══════════════════════════════════════════════════════════════════════
// Monte Carlo statistics
// ═══════════════════════════════════════════════════════════════════════

/// Number of standard errors a Monte Carlo estimate may sit from its
/// exact reference. 3σ two-sided → ~0.27% false-alarm rate per
/// comparison; suites pin seeds so a passing configuration stays green.
pub const MC_SIGMA: f64 = 3.0;

// ═══════════════════════════════════════════════════════════════════════
// Growth-scan acceptance
// ═══════════════════════════════════════════════════════════════════════

/// Relative agreement demanded between the mean root count under iid
/// Gaussian coefficients and the quadrature oracle (2%; the scan's
/// trial counts are sized so 3 standard errors of the mean stay below
/// this at every degree in the list).
pub const KAC_REL: f64 = 0.02;

/// Max/min ratio allowed for mean(non-origin roots)/ln n across the
/// degree list; logarithmic growth predicts a slowly drifting constant,
/// and 1.5 tolerates the known small-degree transient.
pub const GROWTH_RATIO_MAX: f64 = 1.5;

/// Upper bound on the fitted log-log slope of the exact window
/// probability versus n (decay like 1/n predicts −1; −0.7 rejects any
/// sub-polynomial alternative while tolerating lattice wobble).
pub const WINDOW_DECAY_SLOPE_MAX: f64 = -0.7;

/// Quadrature oracle absolute tolerance (adaptive Simpson refinement
/// threshold for the expected-root-count integral).
pub const KAC_QUAD_TOL: f64 = 1e-9;
