/* C interface to descartes-lab: exact real-root tallies, sign-change bounds,
   permutation window probabilities, and weighted-uniform densities.
   Generated by cbindgen from crates/descartes-lab-ffi; do not edit by hand. */

#ifndef DESCARTES_LAB_H
#define DESCARTES_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every entry point.
typedef enum {
  // Success; out-parameters are valid.
  DL_STATUS_OK = 0,
  // A required pointer argument was null.
  DL_STATUS_NULL_POINTER = 1,
  // An argument violated a documented precondition.
  DL_STATUS_INVALID_ARGUMENT = 2,
  // The operation is undefined for the identically-zero polynomial.
  DL_STATUS_ZERO_POLYNOMIAL = 3,
  // The request exceeds an exhaustive-computation cap.
  DL_STATUS_TOO_LARGE = 4,
  // Numerical evaluation could not certify the requested accuracy.
  DL_STATUS_NUMERIC = 5,
  // Internal defect (iteration limit or panic); never expected on
  // valid input.
  DL_STATUS_INTERNAL = 6,
} DlStatus;

// Opaque handle to a polynomial with exact rational coefficients.
typedef struct DlPoly DlPoly;

// Exact root counts by region, each with multiplicity.
typedef struct {
  uint64_t at_zero;
  uint64_t at_one;
  uint64_t at_minus_one;
  // Roots in (0, 1).
  uint64_t in_pos_unit;
  // Roots in (−1, 0).
  uint64_t in_neg_unit;
  // Roots in (1, ∞).
  uint64_t pos_outside;
  // Roots in (−∞, −1).
  uint64_t neg_outside;
  // Every real root except those at 0.
  uint64_t n_star;
} DlRootTally;

// Both unit-interval sign-change bounds next to the exact counts.
// `holds_*` are 1 when the bound is satisfied (always, on valid input).
typedef struct {
  uint64_t s_changes;
  uint64_t s_changes_alt;
  // 1 + `s_changes`, bounding roots in (0, 1).
  uint64_t bound_pos;
  // 1 + `s_changes_alt`, bounding roots in (−1, 0).
  uint64_t bound_neg;
  uint64_t actual_pos;
  uint64_t actual_neg;
  uint8_t holds_pos;
  uint8_t holds_neg;
} DlBoundReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *dl_version(void);

// Creates a polynomial from `len` coefficients in ascending power
// order. Each finite double is captured exactly as a dyadic rational,
// so downstream root counts are exact. `len` may be 0 (the zero
// polynomial, on which counting operations report
// [`DlStatus::ZeroPolynomial`]).
//
// # Safety
// `coeffs` must point to `len` readable doubles and `out` must be a
// valid destination for one pointer.
DlStatus dl_poly_from_f64(const double *coeffs, size_t len, DlPoly **out);

// Creates a polynomial from a NUL-terminated UTF-8 string of
// coefficients in ascending power order, separated by commas or
// whitespace. Each token is an exact rational such as `3`, `-1/2`, or
// `0.25`.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid
// destination for one pointer.
DlStatus dl_poly_from_str(const char *text, DlPoly **out);

// Releases a polynomial handle. Null is ignored.
//
// # Safety
// `p` must be null or a handle returned by this library that has not
// been freed already.
void dl_poly_free(DlPoly *p);

// Writes the degree of `p` (−1 for the zero polynomial).
//
// # Safety
// `p` must be a live handle and `out` a valid destination.
DlStatus dl_poly_degree(const DlPoly *p, int64_t *out);

// Counts the real roots of `p` exactly, by region and with
// multiplicity.
//
// # Safety
// `p` must be a live handle and `out` a valid destination.
DlStatus dl_root_tally(const DlPoly *p, DlRootTally *out);

// Writes the classical sign-change bound on the number of positive
// real roots of `p` (counted with multiplicity).
//
// # Safety
// `p` must be a live handle and `out` a valid destination.
DlStatus dl_descartes_bound(const DlPoly *p, uint64_t *out);

// Evaluates both unit-interval sign-change bounds for `p` together
// with the exact root counts they dominate.
//
// # Safety
// `p` must be a live handle and `out` a valid destination.
DlStatus dl_bound_check(const DlPoly *p, DlBoundReport *out);

// Exact probability, over a uniformly random permutation π of
// {1, …, n}, of the closed window event |Σᵢ wᵢ·π(i) − l·n| ≤ h, by
// full enumeration (n capped; see [`DlStatus::TooLarge`]).
//
// # Safety
// `w` must point to `n` readable doubles and `p_out` must be a valid
// destination.
DlStatus dl_window_probability_exact(const double *w, size_t n, double l, double h, double *p_out);

// Monte Carlo estimate of the same window event from `trials`
// independent permutations drawn from `seed`. Writes the point
// estimate and, when `stderr_out` is non-null, its standard error.
//
// # Safety
// `w` must point to `n` readable doubles; `p_out` must be valid;
// `stderr_out` may be null.
DlStatus dl_window_probability_mc(const double *w,
                                  size_t n,
                                  double l,
                                  double h,
                                  uint64_t trials,
                                  uint64_t seed,
                                  double *p_out,
                                  double *stderr_out);

// Density of Σᵢ wᵢ·Uᵢ (Uᵢ iid uniform on [−1/2, 1/2]) at `t`,
// evaluated from the exact piecewise-polynomial form. All weights must
// be nonzero and n is capped (see [`DlStatus::TooLarge`]).
//
// # Safety
// `w` must point to `n` readable doubles and `out` must be valid.
DlStatus dl_exact_density(const double *w, size_t n, double t, double *out);

// The same density evaluated independently by certified numerical
// inversion of the characteristic function.
//
// # Safety
// `w` must point to `n` readable doubles and `out` must be valid.
DlStatus dl_fourier_density(const double *w, size_t n, double t, double *out);

// Expected number of real roots of a degree-`n` polynomial with iid
// standard Gaussian coefficients (double-integral oracle).
double dl_kac_expected_roots(uint64_t n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DESCARTES_LAB_H */
