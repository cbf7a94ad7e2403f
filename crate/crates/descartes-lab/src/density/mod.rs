//! Density of a weighted sum of independent centered uniforms, and the
//! simplex geometry underlying it.
//!
//! For weights w₁, …, wₙ and U₁, …, Uₙ iid uniform on [−1/2, 1/2], the sum
//! S = Σ wᵢUᵢ has a piecewise-polynomial, even, log-concave density. This
//! module evaluates that density three independent ways — truncated-power
//! inclusion–exclusion ([`exact_density`], with an exact-rational twin for
//! cross-checking), a closed spline form ([`DensityModel`]), and certified
//! Fourier inversion of the characteristic function ([`fourier_density`]) —
//! plus envelope/log-concavity diagnostics, a Hoeffding tail bound, and the
//! order-statistics machinery ([`spacing_moments`], [`simplex_variance`],
//! [`simplex_f`]) used by the experiment harness.

mod dd;
mod envelope;
mod exact;
mod fourier;
mod model;
mod sici;
mod simplex;

pub use envelope::{
    envelope_fit, envelope_fit_on_grid, hoeffding_bound, logconcavity_check, EnvelopeFit,
};
pub use exact::{
    exact_density, exact_density_rational, exact_density_rational_from_f64s, EXACT_RATIONAL_CAP,
    EXACT_TERM_CAP,
};
pub use fourier::{fourier_density, fourier_density_default};
pub use model::{density_csv_row, DensityModel, DENSITY_CSV_HEADER, MODEL_CAP};
pub use simplex::{
    simplex_f, simplex_f_forms, simplex_variance, spacing_moments, SpacingMoments,
};
