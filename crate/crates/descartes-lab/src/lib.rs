//! Exact and statistical analysis of real roots of polynomials with
//! random coefficients.
//!
//! The crate provides:
//!
//! - exact root counting and region tallies for polynomials with rational
//!   coefficients ([`poly`]);
//! - sign-change sequences and the associated root-count bounds
//!   ([`signseq`]);
//! - exact and Monte-Carlo probabilities of permutation events for
//!   exchangeable coefficient vectors ([`perm`]);
//! - exact piecewise-polynomial densities of weighted sums of uniforms,
//!   their Fourier evaluation, and envelope fits ([`density`]);
//! - reproducible experiment drivers with deterministic parallelism
//!   ([`harness`]).
//!
//! Floating-point samples are captured exactly as dyadic rationals, so
//! every root count downstream of sampling is exact, not approximate.

pub mod density;
pub mod error;
pub mod harness;
pub mod kac;
pub mod poly;
pub mod perm;
pub mod rng;
pub mod signseq;
pub mod tolerances;

pub use error::{Error, Result};
