//! C ABI for the `descartes-lab` crate: opaque polynomial handles with
//! exact root tallies, sign-change bounds, permutation window
//! probabilities, and weighted-uniform density evaluation.
//!
//! Conventions:
//!
//! - every function returns a [`DlStatus`]; out-parameters are written
//!   only when the call returns [`DlStatus::Ok`];
//! - polynomial handles are created by [`dl_poly_from_f64`] or
//!   [`dl_poly_from_str`] and must be released with [`dl_poly_free`];
//! - panics never unwind across the boundary (they become
//!   [`DlStatus::Internal`]);
//! - the generated header lives at `include/descartes_lab.h` and is
//!   refreshed by the build script.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use descartes_lab::density::{exact_density, fourier_density_default};
use descartes_lab::kac::expected_real_roots_gaussian;
use descartes_lab::perm::{event_probability_exact, event_probability_mc, PermEvent};
use descartes_lab::poly::{descartes_bound, root_tally, Polynomial};
use descartes_lab::rng::parse_rational;
use descartes_lab::signseq::bound_check;
use descartes_lab::Error;

/// Status code returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlStatus {
    /// Success; out-parameters are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument violated a documented precondition.
    InvalidArgument = 2,
    /// The operation is undefined for the identically-zero polynomial.
    ZeroPolynomial = 3,
    /// The request exceeds an exhaustive-computation cap.
    TooLarge = 4,
    /// Numerical evaluation could not certify the requested accuracy.
    Numeric = 5,
    /// Internal defect (iteration limit or panic); never expected on
    /// valid input.
    Internal = 6,
}

fn status_of(e: &Error) -> DlStatus {
    match e {
        Error::ZeroPolynomial => DlStatus::ZeroPolynomial,
        Error::TooLarge { .. } | Error::TooManyTerms { .. } => DlStatus::TooLarge,
        Error::QuadratureFailure { .. } => DlStatus::Numeric,
        Error::InternalLimit(_) | Error::Io(_) => DlStatus::Internal,
        _ => DlStatus::InvalidArgument,
    }
}

/// Runs `f` with panics converted to [`DlStatus::Internal`].
fn guarded<F: FnOnce() -> DlStatus>(f: F) -> DlStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(DlStatus::Internal)
}

/// Opaque handle to a polynomial with exact rational coefficients.
pub struct DlPoly(Polynomial);

/// Exact root counts by region, each with multiplicity.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DlRootTally {
    pub at_zero: u64,
    pub at_one: u64,
    pub at_minus_one: u64,
    /// Roots in (0, 1).
    pub in_pos_unit: u64,
    /// Roots in (−1, 0).
    pub in_neg_unit: u64,
    /// Roots in (1, ∞).
    pub pos_outside: u64,
    /// Roots in (−∞, −1).
    pub neg_outside: u64,
    /// Every real root except those at 0.
    pub n_star: u64,
}

/// Both unit-interval sign-change bounds next to the exact counts.
/// `holds_*` are 1 when the bound is satisfied (always, on valid input).
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DlBoundReport {
    pub s_changes: u64,
    pub s_changes_alt: u64,
    /// 1 + `s_changes`, bounding roots in (0, 1).
    pub bound_pos: u64,
    /// 1 + `s_changes_alt`, bounding roots in (−1, 0).
    pub bound_neg: u64,
    pub actual_pos: u64,
    pub actual_neg: u64,
    pub holds_pos: u8,
    pub holds_neg: u8,
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Creates a polynomial from `len` coefficients in ascending power
/// order. Each finite double is captured exactly as a dyadic rational,
/// so downstream root counts are exact. `len` may be 0 (the zero
/// polynomial, on which counting operations report
/// [`DlStatus::ZeroPolynomial`]).
///
/// # Safety
/// `coeffs` must point to `len` readable doubles and `out` must be a
/// valid destination for one pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_poly_from_f64(
    coeffs: *const f64,
    len: usize,
    out: *mut *mut DlPoly,
) -> DlStatus {
    if out.is_null() || (coeffs.is_null() && len > 0) {
        return DlStatus::NullPointer;
    }
    let slice = if len == 0 {
        &[][..]
    } else {
        std::slice::from_raw_parts(coeffs, len)
    };
    guarded(|| match Polynomial::from_f64s(slice) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(DlPoly(p)));
            DlStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Creates a polynomial from a NUL-terminated UTF-8 string of
/// coefficients in ascending power order, separated by commas or
/// whitespace. Each token is an exact rational such as `3`, `-1/2`, or
/// `0.25`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid
/// destination for one pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_poly_from_str(text: *const c_char, out: *mut *mut DlPoly) -> DlStatus {
    if text.is_null() || out.is_null() {
        return DlStatus::NullPointer;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return DlStatus::InvalidArgument;
    };
    guarded(|| {
        let mut coeffs = Vec::new();
        for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            match parse_rational(token) {
                Ok(r) => coeffs.push(r),
                Err(e) => return status_of(&e),
            }
        }
        *out = Box::into_raw(Box::new(DlPoly(Polynomial::new(coeffs))));
        DlStatus::Ok
    })
}

/// Releases a polynomial handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle returned by this library that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn dl_poly_free(p: *mut DlPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Writes the degree of `p` (−1 for the zero polynomial).
///
/// # Safety
/// `p` must be a live handle and `out` a valid destination.
#[no_mangle]
pub unsafe extern "C" fn dl_poly_degree(p: *const DlPoly, out: *mut i64) -> DlStatus {
    if p.is_null() || out.is_null() {
        return DlStatus::NullPointer;
    }
    let poly = &(*p).0;
    guarded(|| {
        *out = poly.degree().map_or(-1, |d| d as i64);
        DlStatus::Ok
    })
}

/// Counts the real roots of `p` exactly, by region and with
/// multiplicity.
///
/// # Safety
/// `p` must be a live handle and `out` a valid destination.
#[no_mangle]
pub unsafe extern "C" fn dl_root_tally(p: *const DlPoly, out: *mut DlRootTally) -> DlStatus {
    if p.is_null() || out.is_null() {
        return DlStatus::NullPointer;
    }
    let poly = &(*p).0;
    guarded(|| match root_tally(poly) {
        Ok(t) => {
            *out = DlRootTally {
                at_zero: t.at_zero as u64,
                at_one: t.at_one as u64,
                at_minus_one: t.at_minus_one as u64,
                in_pos_unit: t.in_pos_unit as u64,
                in_neg_unit: t.in_neg_unit as u64,
                pos_outside: t.pos_outside as u64,
                neg_outside: t.neg_outside as u64,
                n_star: t.n_star as u64,
            };
            DlStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Writes the classical sign-change bound on the number of positive
/// real roots of `p` (counted with multiplicity).
///
/// # Safety
/// `p` must be a live handle and `out` a valid destination.
#[no_mangle]
pub unsafe extern "C" fn dl_descartes_bound(p: *const DlPoly, out: *mut u64) -> DlStatus {
    if p.is_null() || out.is_null() {
        return DlStatus::NullPointer;
    }
    let poly = &(*p).0;
    guarded(|| match descartes_bound(poly) {
        Ok(b) => {
            *out = b as u64;
            DlStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Evaluates both unit-interval sign-change bounds for `p` together
/// with the exact root counts they dominate.
///
/// # Safety
/// `p` must be a live handle and `out` a valid destination.
#[no_mangle]
pub unsafe extern "C" fn dl_bound_check(p: *const DlPoly, out: *mut DlBoundReport) -> DlStatus {
    if p.is_null() || out.is_null() {
        return DlStatus::NullPointer;
    }
    let poly = &(*p).0;
    guarded(|| match bound_check(poly) {
        Ok(r) => {
            *out = DlBoundReport {
                s_changes: r.s_changes as u64,
                s_changes_alt: r.s_changes_alt as u64,
                bound_pos: r.bound_pos as u64,
                bound_neg: r.bound_neg as u64,
                actual_pos: r.actual_pos as u64,
                actual_neg: r.actual_neg as u64,
                holds_pos: r.holds.0 as u8,
                holds_neg: r.holds.1 as u8,
            };
            DlStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Exact probability, over a uniformly random permutation π of
/// {1, …, n}, of the closed window event |Σᵢ wᵢ·π(i) − l·n| ≤ h, by
/// full enumeration (n capped; see [`DlStatus::TooLarge`]).
///
/// # Safety
/// `w` must point to `n` readable doubles and `p_out` must be a valid
/// destination.
#[no_mangle]
pub unsafe extern "C" fn dl_window_probability_exact(
    w: *const f64,
    n: usize,
    l: f64,
    h: f64,
    p_out: *mut f64,
) -> DlStatus {
    if w.is_null() || p_out.is_null() {
        return DlStatus::NullPointer;
    }
    let w = std::slice::from_raw_parts(w, n).to_vec();
    guarded(|| {
        let event = PermEvent::Window { l, h, w };
        match event_probability_exact(&event, n) {
            Ok(est) => {
                *p_out = est.p_hat;
                DlStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Monte Carlo estimate of the same window event from `trials`
/// independent permutations drawn from `seed`. Writes the point
/// estimate and, when `stderr_out` is non-null, its standard error.
///
/// # Safety
/// `w` must point to `n` readable doubles; `p_out` must be valid;
/// `stderr_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn dl_window_probability_mc(
    w: *const f64,
    n: usize,
    l: f64,
    h: f64,
    trials: u64,
    seed: u64,
    p_out: *mut f64,
    stderr_out: *mut f64,
) -> DlStatus {
    if w.is_null() || p_out.is_null() {
        return DlStatus::NullPointer;
    }
    let w = std::slice::from_raw_parts(w, n).to_vec();
    guarded(|| {
        let event = PermEvent::Window { l, h, w };
        match event_probability_mc(&event, n, trials, seed) {
            Ok(est) => {
                *p_out = est.p_hat;
                if !stderr_out.is_null() {
                    *stderr_out = est.stderr;
                }
                DlStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Density of Σᵢ wᵢ·Uᵢ (Uᵢ iid uniform on [−1/2, 1/2]) at `t`,
/// evaluated from the exact piecewise-polynomial form. All weights must
/// be nonzero and n is capped (see [`DlStatus::TooLarge`]).
///
/// # Safety
/// `w` must point to `n` readable doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dl_exact_density(
    w: *const f64,
    n: usize,
    t: f64,
    out: *mut f64,
) -> DlStatus {
    if w.is_null() || out.is_null() {
        return DlStatus::NullPointer;
    }
    let w = std::slice::from_raw_parts(w, n).to_vec();
    guarded(|| match exact_density(&w, t) {
        Ok(v) => {
            *out = v;
            DlStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// The same density evaluated independently by certified numerical
/// inversion of the characteristic function.
///
/// # Safety
/// `w` must point to `n` readable doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dl_fourier_density(
    w: *const f64,
    n: usize,
    t: f64,
    out: *mut f64,
) -> DlStatus {
    if w.is_null() || out.is_null() {
        return DlStatus::NullPointer;
    }
    let w = std::slice::from_raw_parts(w, n).to_vec();
    guarded(|| match fourier_density_default(&w, t) {
        Ok(v) => {
            *out = v;
            DlStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Expected number of real roots of a degree-`n` polynomial with iid
/// standard Gaussian coefficients (double-integral oracle).
#[no_mangle]
pub extern "C" fn dl_kac_expected_roots(n: u64) -> f64 {
    catch_unwind(|| expected_real_roots_gaussian(n as usize)).unwrap_or(f64::NAN)
}
