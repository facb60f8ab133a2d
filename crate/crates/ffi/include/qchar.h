#ifndef QCHAR_H
#define QCHAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QcharStatus {
  QCHAR_STATUS_OK = 0,
  QCHAR_STATUS_NULL_POINTER = 1,
  QCHAR_STATUS_INVALID_UTF8 = 2,
  QCHAR_STATUS_PARSE = 3,
  QCHAR_STATUS_INVALID_ARGUMENT = 4,
  QCHAR_STATUS_TOO_LARGE = 5,
  QCHAR_STATUS_ARITHMETIC = 6,
  QCHAR_STATUS_INTERNAL = 7,
} QcharStatus;

/**
 * Opaque square matrix of scalars.
 */
typedef struct QcharMatrix QcharMatrix;

/**
 * Opaque exact scalar.
 */
typedef struct QcharScalar QcharScalar;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success. Owned by the library.
 */
const char *qchar_last_error(void);

/**
 * Library version, a static string.
 */
const char *qchar_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed; null is ignored.
 */
void qchar_string_free(char *s);

/**
 * Parses a scalar such as `(q^2 - 1)/q` or `a*b + t`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum QcharStatus qchar_scalar_parse(const char *text, struct QcharScalar **out);

/**
 * # Safety
 * `s` must come from this library and not have been freed; null is ignored.
 */
void qchar_scalar_free(struct QcharScalar *s);

/**
 * Canonical rendering of a scalar; release with `qchar_string_free`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum QcharStatus qchar_scalar_to_string(const struct QcharScalar *s, char **out);

/**
 * `out = a + b`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum QcharStatus qchar_scalar_add(const struct QcharScalar *a,
                                  const struct QcharScalar *b,
                                  struct QcharScalar **out);

/**
 * `out = a · b`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum QcharStatus qchar_scalar_mul(const struct QcharScalar *a,
                                  const struct QcharScalar *b,
                                  struct QcharScalar **out);

/**
 * `out = a / b`; fails with `QCHAR_STATUS_ARITHMETIC` when `b` is zero.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum QcharStatus qchar_scalar_div(const struct QcharScalar *a,
                                  const struct QcharScalar *b,
                                  struct QcharScalar **out);

/**
 * Whether two scalars are equal as rational functions.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum QcharStatus qchar_scalar_equal(const struct QcharScalar *a,
                                    const struct QcharScalar *b,
                                    bool *out);

/**
 * Reads a matrix from JSON `{"n": 2, "entries": [["a", "0"], ["0", "0"]]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum QcharStatus qchar_matrix_from_json(const char *json, struct QcharMatrix **out);

/**
 * The braided R-matrix `S` for `n`, an `n² × n²` matrix.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QcharStatus qchar_matrix_braided_r(size_t n, struct QcharMatrix **out);

/**
 * # Safety
 * `m` must come from this library and not have been freed; null is ignored.
 */
void qchar_matrix_free(struct QcharMatrix *m);

/**
 * Size of the matrix, or 0 for a null handle.
 *
 * # Safety
 * `m` must be a live handle or null.
 */
size_t qchar_matrix_dim(const struct QcharMatrix *m);

/**
 * Entry at 0-based `(row, col)` as a new scalar handle.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum QcharStatus qchar_matrix_get(const struct QcharMatrix *m,
                                  size_t row,
                                  size_t col,
                                  struct QcharScalar **out);

/**
 * JSON rendering `{n, entries}`; release with `qchar_string_free`.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum QcharStatus qchar_matrix_to_json(const struct QcharMatrix *m, char **out);

/**
 * Whether the matrix solves the numerical reflection equation.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum QcharStatus qchar_matrix_check_re(const struct QcharMatrix *m, bool *out);

/**
 * `Tr(D·M)` with `D = diag(1, q⁻², …)`.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum QcharStatus qchar_matrix_quantum_trace(const struct QcharMatrix *m, struct QcharScalar **out);

/**
 * Runs checks described by a JSON run configuration, e.g. `{"task": {"suite": "tensor"}}`,
 * and returns the JSON report. Failing checks still give `QCHAR_STATUS_OK`; read the summary.
 *
 * # Safety
 * `config_json` must be a nul-terminated string and `out` a valid pointer.
 */
enum QcharStatus qchar_run_suite(const char *config_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCHAR_H */
