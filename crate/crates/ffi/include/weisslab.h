/* C interface to the weisslab numerical laboratory. Generated by cbindgen; do not edit. */

#ifndef WEISSLAB_H
#define WEISSLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum wl_status {
  /**
   * Success; `out` parameters hold results.
   */
  WL_OK = 0,
  /**
   * A required pointer argument was null.
   */
  WL_ERR_NULL_POINTER = 1,
  /**
   * A numeric or combinatorial argument was outside its documented domain.
   */
  WL_ERR_INVALID_ARGUMENT = 2,
  /**
   * A half-plane measure was passed to a disk routine or vice versa.
   */
  WL_ERR_AMBIENT_MISMATCH = 3,
  /**
   * A text payload failed to parse.
   */
  WL_ERR_PARSE = 4,
  /**
   * Filesystem failure.
   */
  WL_ERR_IO = 5,
  /**
   * Internal invariant violation (caught panic).
   */
  WL_ERR_INTERNAL = 6,
} wl_status;

/**
 * Which boundary the atoms of a measure live on.
 */
typedef enum wl_ambient {
  /**
   * Closed upper half-plane; atoms sit at `x + iy`, `y >= 0`.
   */
  WL_AMBIENT_HALFPLANE = 0,
  /**
   * Closed unit disk; atoms sit at `x + iy`, `|x + iy| <= 1`.
   */
  WL_AMBIENT_DISK = 1,
} wl_ambient;

/**
 * Diagonal normal discrete-time system built from a disk measure.
 */
typedef struct wl_disk_system wl_disk_system;

/**
 * Diagonal normal semigroup system built from a half-plane measure.
 */
typedef struct wl_halfplane_system wl_halfplane_system;

/**
 * Finitely many weighted point masses on the half-plane or the disk.
 */
typedef struct wl_measure wl_measure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static nul-terminated name of a status code, e.g. `"WL_OK"`.
 */
const char *wl_status_name(enum wl_status status);

/**
 * Static nul-terminated library version string.
 */
const char *wl_version(void);

/**
 * Builds the level-`levels` Cantor measure with dissection ratio `ratio`
 * (one atom per surviving interval, equal weights, unit total mass).
 *
 * # Safety
 * `out` must be a valid pointer. On `WL_OK` it receives a handle that must be
 * released with [`wl_measure_free`].
 */
enum wl_status wl_measure_cantor(double ratio,
                                 size_t levels,
                                 enum wl_ambient ambient,
                                 struct wl_measure **out);

/**
 * Builds the layered Cantor measure: layer `m = 1..=layers` carries a copy
 * of the level-`levels` Cantor measure with weight `1/m^2`, displaced from
 * the boundary by one third of the level-`m` cover interval length
 * (half-plane: height above the line; disk: depth below the circle).
 *
 * # Safety
 * `out` must be a valid pointer. On `WL_OK` it receives a handle that must be
 * released with [`wl_measure_free`].
 */
enum wl_status wl_measure_cantor_stacked(double ratio,
                                         size_t levels,
                                         size_t layers,
                                         enum wl_ambient ambient,
                                         struct wl_measure **out);

/**
 * Builds a measure from parallel arrays of atom coordinates and weights.
 * Weights must be positive; positions must lie in the chosen ambient.
 *
 * # Safety
 * `xs`, `ys`, `weights` must point to `len` doubles each (null is allowed
 * when `len == 0`); `out` must be a valid pointer. On `WL_OK` it receives a
 * handle that must be released with [`wl_measure_free`].
 */
enum wl_status wl_measure_from_atoms(enum wl_ambient ambient,
                                     const double *xs,
                                     const double *ys,
                                     const double *weights,
                                     size_t len,
                                     struct wl_measure **out);

/**
 * Releases a measure handle. Passing null is a no-op.
 *
 * # Safety
 * `m` must be null or a handle previously returned by a `wl_measure_*`
 * constructor that has not been freed yet.
 */
void wl_measure_free(struct wl_measure *m);

/**
 * Number of atoms.
 *
 * # Safety
 * `m` must be a live measure handle; `out` must be a valid pointer.
 */
enum wl_status wl_measure_len(const struct wl_measure *m, size_t *out);

/**
 * Sum of atom weights.
 *
 * # Safety
 * `m` must be a live measure handle; `out` must be a valid pointer.
 */
enum wl_status wl_measure_total_mass(const struct wl_measure *m, double *out);

/**
 * One-box (Carleson) constant: the supremum of `mu(box) / side^exponent`
 * over a dyadic probe family refined to `depth` scales.
 *
 * # Safety
 * `m` must be a live measure handle; `out` must be a valid pointer.
 */
enum wl_status wl_measure_one_box_constant(const struct wl_measure *m,
                                           double exponent,
                                           size_t depth,
                                           double *out);

/**
 * Builds a continuous-time diagonal system from a half-plane measure.
 *
 * # Safety
 * `m` must be a live measure handle; `out` must be a valid pointer. On
 * `WL_OK` it receives a handle that must be released with
 * [`wl_halfplane_system_free`].
 */
enum wl_status wl_halfplane_system_new(const struct wl_measure *m,
                                       struct wl_halfplane_system **out);

/**
 * Releases a half-plane system handle. Passing null is a no-op.
 *
 * # Safety
 * `sys` must be null or a handle from [`wl_halfplane_system_new`] that has
 * not been freed yet.
 */
void wl_halfplane_system_free(struct wl_halfplane_system *sys);

/**
 * Weighted admissibility constant `M(alpha)`: the best bound in
 * `integral t^alpha |C T(t) x|^2 dt <= M^2 |x|^2`, computed exactly from the
 * finite Gram matrix. Requires `-1 < alpha < 1`.
 *
 * # Safety
 * `sys` must be a live system handle; `out` must be a valid pointer.
 */
enum wl_status wl_halfplane_admissibility(const struct wl_halfplane_system *sys,
                                          double alpha,
                                          double *out);

/**
 * Supremum of the weighted resolvent test
 * `(2 Re lambda)^((1+alpha)/2) |C (lambda - A)^{-1}|` over a standard grid
 * in the right half-plane.
 *
 * # Safety
 * `sys` must be a live system handle; `out` must be a valid pointer.
 */
enum wl_status wl_halfplane_resolvent_sup(const struct wl_halfplane_system *sys,
                                          double alpha,
                                          double *out);

/**
 * Builds a discrete-time diagonal system from a disk measure.
 *
 * # Safety
 * `m` must be a live measure handle; `out` must be a valid pointer. On
 * `WL_OK` it receives a handle that must be released with
 * [`wl_disk_system_free`].
 */
enum wl_status wl_disk_system_new(const struct wl_measure *m, struct wl_disk_system **out);

/**
 * Releases a disk system handle. Passing null is a no-op.
 *
 * # Safety
 * `sys` must be null or a handle from [`wl_disk_system_new`] that has not
 * been freed yet.
 */
void wl_disk_system_free(struct wl_disk_system *sys);

/**
 * Supremum of the disk resolvent test
 * `(1-|w|^2)^((1-alpha)/2) (integral d mu(z) / |1 - conj(w) z|^2)^(1/2)`
 * over a standard grid of `w` in the open disk.
 *
 * # Safety
 * `sys` must be a live system handle; `out` must be a valid pointer.
 */
enum wl_status wl_disk_resolvent_sup(const struct wl_disk_system *sys, double alpha, double *out);

/**
 * Discrete admissibility constant: the best bound in
 * `sum_n (1+n)^alpha |C A^n x|^2 <= M |x|^2`, estimated by truncating the
 * sum at `n_trunc` terms. `out_relative_change` reports the relative change
 * between the half and full truncations (a convergence diagnostic).
 *
 * # Safety
 * `sys` must be a live system handle; `out_value` and `out_relative_change`
 * must be valid pointers.
 */
enum wl_status wl_disk_admissibility(const struct wl_disk_system *sys,
                                     double alpha,
                                     size_t n_trunc,
                                     double *out_value,
                                     double *out_relative_change);

/**
 * Upper bound for the Riesz capacity of a finite union of open intervals,
 * computed with the penalized-energy solver on a uniform grid spanning
 * `[grid_left, grid_right]` with `grid_cells` cells. Passing zero for
 * `max_iter` or `tolerance <= 0` selects the solver defaults.
 * `out_converged` reports whether the final residual met the tolerance;
 * the value is still written when it did not.
 *
 * # Safety
 * `lefts` and `rights` must point to `count` doubles each; `out_value` and
 * `out_converged` must be valid pointers.
 */
enum wl_status wl_capacity_upper(double beta,
                                 const double *lefts,
                                 const double *rights,
                                 size_t count,
                                 double grid_left,
                                 double grid_right,
                                 size_t grid_cells,
                                 size_t max_iter,
                                 double tolerance,
                                 double *out_value,
                                 bool *out_converged);

/**
 * Operator norm of the weighted Hankel matrix with entries
 * `(1+n)^(alpha/2) c[n+m]`, truncated to `truncation` rows and columns.
 * `im` may be null for real symbol coefficients. Requires `0 <= alpha < 1`.
 *
 * # Safety
 * `re` (and `im` when non-null) must point to `len` doubles; `out` must be a
 * valid pointer.
 */
enum wl_status wl_hankel_norm(const double *re,
                              const double *im,
                              size_t len,
                              double alpha,
                              size_t truncation,
                              double *out);

/**
 * Norm of the resolvent-type observation sequence of the unilateral shift:
 * the Taylor coefficients of `z -> c(z)/(1 - conj(omega) z)` truncated at
 * `n_trunc`, measured in plain `l^2`. Requires `|omega| < 1`.
 * `im` may be null for real symbol coefficients.
 *
 * # Safety
 * `re` (and `im` when non-null) must point to `len` doubles; `out` must be a
 * valid pointer.
 */
enum wl_status wl_shift_resolvent_norm(const double *re,
                                       const double *im,
                                       size_t len,
                                       double omega_re,
                                       double omega_im,
                                       size_t n_trunc,
                                       double *out);

/**
 * Lacunary symbol with `blocks` dyadic blocks adapted to weight exponent
 * `alpha` (the symbol used by the shift experiments). Two-call pattern:
 * pass a null `out_re` to query the coefficient count in `out_len`, then
 * call again with buffers of that capacity. `out_im` may be null; the
 * coefficients are real. Requires `0 < alpha < 1`.
 *
 * # Safety
 * `out_len` must be a valid pointer. When `out_re` is non-null, `out_re`
 * (and `out_im` when non-null) must point to `cap` writable doubles.
 */
enum wl_status wl_lacunary_witness(double alpha,
                                   size_t blocks,
                                   double *out_re,
                                   double *out_im,
                                   size_t cap,
                                   size_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEISSLAB_H */
