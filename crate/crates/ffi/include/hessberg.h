#ifndef HESSBERG_H
#define HESSBERG_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  HB_STATUS_OK = 0,
  HB_STATUS_NULL_POINTER = 1,
  HB_STATUS_INVALID_UTF8 = 2,
  HB_STATUS_PARSE = 3,
  HB_STATUS_UNSUPPORTED_TYPE = 4,
  HB_STATUS_ARITY = 5,
  HB_STATUS_INVALID_HESS_FN = 6,
  HB_STATUS_NOT_ARTINIAN = 7,
  HB_STATUS_RING_MISMATCH = 8,
  HB_STATUS_INCLUSION = 9,
  HB_STATUS_CEILING_EXCEEDED = 10,
  HB_STATUS_BUFFER_TOO_SMALL = 11,
  HB_STATUS_CHECK_FAILED = 12,
  HB_STATUS_OUT_OF_RANGE = 13,
  HB_STATUS_INTERNAL = 14,
  HB_STATUS_PANIC = 15,
} HbStatus;

/**
 * Opaque quotient ring together with the function that presents it.
 */
typedef struct HbQuotient HbQuotient;

typedef struct {
  size_t count;
  size_t dim;
  size_t rank;
  bool is_basis;
} HbBasisReport;

typedef struct {
  size_t count;
  size_t rank;
  bool independent;
  bool extends_to_basis;
} HbDualsReport;

typedef struct {
  size_t dim_sub;
  size_t dim;
  size_t degree_shift;
  size_t rank;
  bool injective;
  bool well_defined;
  bool degrees_ok;
} HbGysinReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, statically allocated.
 */
const char *hb_version(void);

/**
 * Message for the last failing call on this thread, or NULL.
 * Valid until the next call into the library on this thread.
 */
const char *hb_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void hb_string_free(char *s);

/**
 * Check the defining conditions for a function such as `"B3:5,5,4"`.
 * Sets `*valid`; a violation is not an error.
 *
 * # Safety
 * `h` must be a NUL-terminated string, `valid` a writable pointer.
 */
HbStatus hb_validate(const char *h, bool *valid);

/**
 * Build the cohomology ring for `h`. Free with [`hb_quotient_free`].
 *
 * # Safety
 * `h` must be a NUL-terminated string, `out_q` a writable pointer.
 */
HbStatus hb_quotient_new(const char *h, HbQuotient **out_q);

/**
 * # Safety
 * `q` must be NULL or a handle from [`hb_quotient_new`], freed once.
 */
void hb_quotient_free(HbQuotient *q);

/**
 * Vector-space dimension, 0 for a NULL handle.
 *
 * # Safety
 * `q` must be NULL or a live handle.
 */
size_t hb_quotient_dim(const HbQuotient *q);

/**
 * Number of variables, 0 for a NULL handle.
 *
 * # Safety
 * `q` must be NULL or a live handle.
 */
size_t hb_quotient_nvars(const HbQuotient *q);

/**
 * Write the Hilbert series coefficients into `buf`. `*len` receives the
 * full length even when `cap` is too small.
 *
 * # Safety
 * `buf` must hold `cap` elements (may be NULL when `cap` is 0).
 */
HbStatus hb_quotient_hilbert(const HbQuotient *q, size_t *buf, size_t cap, size_t *len);

/**
 * Normal form of `poly` (e.g. `"x1^2 - 3*x2"`) as a new string.
 *
 * # Safety
 * `q` a live handle, `poly` NUL-terminated, `out_s` writable.
 */
HbStatus hb_quotient_normal_form(const HbQuotient *q, const char *poly, char **out_s);

/**
 * Coordinates of `poly` in the standard-monomial basis as a JSON object
 * `{"monomials": [...], "coordinates": ["p/q", ...]}`.
 *
 * # Safety
 * `q` a live handle, `poly` NUL-terminated, `out_s` writable.
 */
HbStatus hb_quotient_coordinates_json(const HbQuotient *q, const char *poly, char **out_s);

/**
 * Check the default product basis of the ring.
 *
 * # Safety
 * `q` a live handle, `report` writable.
 */
HbStatus hb_quotient_verify_basis(const HbQuotient *q, HbBasisReport *report);

/**
 * Check the Poincare dual classes of all sub-functions.
 *
 * # Safety
 * `q` a live handle, `report` writable.
 */
HbStatus hb_quotient_verify_duals(const HbQuotient *q, HbDualsReport *report);

/**
 * Push-forward from the ring of `sub` into the ring of `q`.
 *
 * # Safety
 * Both handles live, `report` writable.
 */
HbStatus hb_gysin(const HbQuotient *sub, const HbQuotient *q, HbGysinReport *report);

/**
 * Run the full suite for a type such as `"B3"` and return the JSON report.
 * `jobs` of 0 means one thread.
 *
 * # Safety
 * `ty` NUL-terminated, `out_s` writable.
 */
HbStatus hb_suite_json(const char *ty, uint64_t seed, size_t jobs, char **out_s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HESSBERG_H */
