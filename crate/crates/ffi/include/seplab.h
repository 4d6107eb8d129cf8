#ifndef SEPLAB_H
#define SEPLAB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by all entry points.
 */
typedef enum {
  SEPLAB_STATUS_OK = 0,
  SEPLAB_STATUS_NULL_POINTER = 1,
  SEPLAB_STATUS_INVALID_UTF8 = 2,
  SEPLAB_STATUS_INVALID_ARGUMENT = 3,
  SEPLAB_STATUS_FAMILY_RANGE = 4,
  SEPLAB_STATUS_NOT_SQUAREFREE = 5,
  SEPLAB_STATUS_DEGREE_TOO_SMALL = 6,
  SEPLAB_STATUS_PRECISION_EXHAUSTED = 7,
  SEPLAB_STATUS_COMPUTATION = 8,
  SEPLAB_STATUS_PANIC = 9,
} SeplabStatus;

typedef enum {
  SEPLAB_VERDICT_IRREDUCIBLE = 0,
  SEPLAB_VERDICT_REDUCIBLE = 1,
  SEPLAB_VERDICT_INCONCLUSIVE = 2,
} SeplabVerdict;

/**
 * Opaque integer polynomial.
 */
typedef struct SeplabPoly SeplabPoly;

/**
 * Certified separation measurement. Endpoints are rounded outward to `double`.
 */
typedef struct {
  double sep_lo;
  double sep_hi;
  double e_lo;
  double e_hi;
  uint32_t precision_bits;
} SeplabSeparation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next `seplab_*` call on the same thread.
 */
const char *seplab_last_error(void);

/**
 * Family member at a concrete `n` (decimal string). Pass a negative `d` or
 * `h` when the family takes no such parameter.
 *
 * # Safety
 * `tag` and `n` must be NUL-terminated strings; `out` must be writable.
 */
SeplabStatus seplab_poly_from_family(const char *tag,
                                     int64_t d,
                                     int64_t h,
                                     uint32_t pad,
                                     const char *n,
                                     bool explore,
                                     SeplabPoly **out);

/**
 * Polynomial from `len` ascending machine-integer coefficients.
 *
 * # Safety
 * `coeffs` must point to `len` readable values; `out` must be writable.
 */
SeplabStatus seplab_poly_from_coeffs(const int64_t *coeffs, size_t len, SeplabPoly **out);

/**
 * Polynomial from whitespace-separated ascending decimal coefficients.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
SeplabStatus seplab_poly_from_string(const char *text, SeplabPoly **out);

/**
 * # Safety
 * `poly` must be null or a handle from this library not yet freed.
 */
void seplab_poly_free(SeplabPoly *poly);

/**
 * Degree; the zero polynomial is an error.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
SeplabStatus seplab_poly_degree(const SeplabPoly *poly, size_t *out);

/**
 * Coefficients as `"[c0, c1, ...]"`.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
SeplabStatus seplab_poly_coeffs(const SeplabPoly *poly, char **out);

/**
 * Height as a decimal string.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
SeplabStatus seplab_poly_height(const SeplabPoly *poly, char **out);

/**
 * Certified separation and exponent interval. Zero for either precision
 * argument selects the default (start 128 bits, cap 8192 bits).
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
SeplabStatus seplab_separation(const SeplabPoly *poly,
                               uint32_t prec_start,
                               uint32_t prec_cap,
                               SeplabSeparation *out);

/**
 * Irreducibility verdict using up to `prime_budget` good primes. When
 * `certificate_json` is non-null the full certificate is written there.
 *
 * # Safety
 * `poly` must be a live handle; `verdict` must be writable;
 * `certificate_json` must be null or writable.
 */
SeplabStatus seplab_certify(const SeplabPoly *poly,
                            uint32_t prime_budget,
                            SeplabVerdict *verdict,
                            char **certificate_json);

/**
 * Runs every identity check with symbolic degree bound `d_max` and writes
 * the number of failing checks.
 *
 * # Safety
 * `failures` must be writable.
 */
SeplabStatus seplab_verify_suite(uint32_t d_max, uint32_t *failures);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void seplab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEPLAB_H */
