#ifndef ZETALAB_H
#define ZETALAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZlStatus {
  ZL_STATUS_OK = 0,
  ZL_STATUS_NULL_POINTER = 1,
  ZL_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The argument is the pole of ζ at s = 1.
   */
  ZL_STATUS_POLE = 3,
  /**
   * A value was produced but misses the accuracy target; it is still
   * written to the out-pointer.
   */
  ZL_STATUS_PRECISION_LOSS = 4,
  ZL_STATUS_DOMAIN = 5,
  ZL_STATUS_CONTOUR_CLIPPED = 6,
  ZL_STATUS_NOT_CONVERGED = 7,
  ZL_STATUS_UNKNOWN_IDENTITY = 8,
  /**
   * Verification ran and at least one point failed.
   */
  ZL_STATUS_VERIFICATION_FAILED = 9,
  ZL_STATUS_INTERNAL = 10,
} ZlStatus;

typedef enum ZlTrig {
  ZL_TRIG_SIN = 0,
  ZL_TRIG_COS = 1,
} ZlTrig;

typedef enum ZlCharacter {
  /**
   * n = 1, 2, 3, …
   */
  ZL_CHARACTER_TRIVIAL = 0,
  /**
   * n = 1, 3, 5, … with alternating sign.
   */
  ZL_CHARACTER_BETA = 1,
} ZlCharacter;

/**
 * Opaque divisibility matrix.
 */
typedef struct ZlMatrix ZlMatrix;

/**
 * Opaque exact rational.
 */
typedef struct ZlRational ZlRational;

typedef struct ZlComplex {
  double re;
  double im;
} ZlComplex;

/**
 * A function value with its error estimate.
 */
typedef struct ZlEval {
  struct ZlComplex value;
  double abs_error_estimate;
  bool is_pole;
} ZlEval;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Riemann ζ(s). At s = 1 the result has `is_pole` set and status `Ok`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ZlStatus zl_zeta(struct ZlComplex s, struct ZlEval *out);

/**
 * Hurwitz ζ(s, a) for 0 < a ≤ 1.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ZlStatus zl_hurwitz_zeta(struct ZlComplex s, double a, struct ZlEval *out);

/**
 * Dirichlet β(s).
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ZlStatus zl_dirichlet_beta(struct ZlComplex s, struct ZlEval *out);

/**
 * ζ(s) from the Hankel contour integral, Re s < 1.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ZlStatus zl_hankel_zeta(struct ZlComplex s, struct ZlEval *out);

/**
 * Σ e^{inx}/n^s from the Hankel contour integral, 0 < x < 2π.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ZlStatus zl_lerch_hankel(struct ZlComplex s, double x, struct ZlEval *out);

/**
 * 1/Γ(s), entire.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ZlStatus zl_recip_gamma(struct ZlComplex s, struct ZlComplex *out);

/**
 * B_n (with B_1 = −1/2) as a new rational handle.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ZlStatus zl_bernoulli_number(uint32_t n, struct ZlRational **out);

/**
 * Euler number E_n as a new rational handle.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ZlStatus zl_euler_number(uint32_t n, struct ZlRational **out);

/**
 * ζ(−n) exactly.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ZlStatus zl_zeta_neg_int(uint32_t n, struct ZlRational **out);

/**
 * "p/q" (or "p") as a new string; release with [`zl_string_free`].
 *
 * # Safety
 * `r` must be null or a live handle; `out` must be null or valid for writes.
 */
enum ZlStatus zl_rational_to_string(const struct ZlRational *r, char **out);

/**
 * Nearest double.
 *
 * # Safety
 * `r` must be null or a live handle; `out` must be null or valid for writes.
 */
enum ZlStatus zl_rational_to_f64(const struct ZlRational *r, double *out);

/**
 * # Safety
 * `r` must be null or a handle not yet freed.
 */
void zl_rational_free(struct ZlRational *r);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void zl_string_free(char *s);

/**
 * The size × size matrix of ζ(1 − iD) in the sine basis.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ZlStatus zl_matrix_build(size_t size, struct ZlMatrix **out);

/**
 * # Safety
 * `m` must be null or a live handle; `out` must be null or valid for writes.
 */
enum ZlStatus zl_matrix_nnz(const struct ZlMatrix *m, size_t *out);

/**
 * Entry (row, col), 1-based, as num/den. Absent entries give 0/1 with
 * `present` false.
 *
 * # Safety
 * `m` must be null or a live handle; the out-pointers must be null or valid
 * for writes.
 */
enum ZlStatus zl_matrix_entry(const struct ZlMatrix *m,
                              size_t row,
                              size_t col,
                              int64_t *num,
                              int64_t *den,
                              bool *present);

/**
 * out = A·v for vectors of length `len` (the matrix size). The product is
 * exact on the doubles given and rounded once at the end.
 *
 * # Safety
 * `v` and `out` must be null or point to `len` doubles.
 */
enum ZlStatus zl_matrix_apply(const struct ZlMatrix *m, const double *v, size_t len, double *out);

/**
 * # Safety
 * `m` must be null or a handle not yet freed.
 */
void zl_matrix_free(struct ZlMatrix *m);

/**
 * Runs the stored verification profile of an identity (every member for a
 * family id). Returns `VerificationFailed` when it runs but does not pass;
 * `max_abs_deviation` is written either way. `json` may be null; otherwise
 * it receives the reports as a JSON array, to be freed with
 * [`zl_string_free`].
 *
 * # Safety
 * `id` must be null or a NUL-terminated string; the out-pointers must be
 * null or valid for writes.
 */
enum ZlStatus zl_verify(const char *id, double *max_abs_deviation, char **json);

/**
 * Abel sum of Σ χ(n) trig(nx)/n^exponent: the registered closed form when
 * there is one, otherwise extrapolation in r → 1.
 *
 * # Safety
 * The out-pointers must be null or valid for writes.
 */
enum ZlStatus zl_abel_value(enum ZlTrig trig,
                            int32_t exponent,
                            enum ZlCharacter character,
                            double x,
                            double *value,
                            double *abs_error_estimate);

/**
 * Message for the last failing call on this thread, or null. The pointer
 * stays valid until the next call into the library from this thread.
 */
const char *zl_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZETALAB_H */
