#ifndef CIRCULANT_H
#define CIRCULANT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which polynomial [`circ_expand`] returns.
 */
typedef enum CircExpandMode {
  CIRC_EXPAND_MODE_DET = 0,
  CIRC_EXPAND_MODE_PER = 1,
} CircExpandMode;

/**
 * Which algorithm [`circ_per_eval`] uses.
 */
typedef enum CircPerMethod {
  CIRC_PER_METHOD_RYSER = 0,
  CIRC_PER_METHOD_INTERP = 1,
} CircPerMethod;

/**
 * Status codes. Values 0 to 3 match the exit codes of the `circulant` tool.
 */
typedef enum CircStatus {
  CIRC_STATUS_OK = 0,
  CIRC_STATUS_INTERNAL = 1,
  CIRC_STATUS_CONTRACT = 2,
  CIRC_STATUS_RESOURCE_LIMIT = 3,
  CIRC_STATUS_NULL_POINTER = 4,
  CIRC_STATUS_INVALID_UTF8 = 5,
  CIRC_STATUS_PANIC = 6,
} CircStatus;

/**
 * Opaque polynomial handle. Free with [`circ_poly_free`].
 */
typedef struct CircPoly CircPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * `det Circ(d; 0, a, b)` by interpolation.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum CircStatus circ_det_poly_interpolate(size_t d, size_t a, size_t b, struct CircPoly **out);

/**
 * Exhaustive det or per of `Circ(d; shifts)`.
 *
 * # Safety
 * `shifts` must point to `n_shifts` readable values; `out` as above.
 */
enum CircStatus circ_expand(size_t d,
                            const size_t *shifts,
                            size_t n_shifts,
                            enum CircExpandMode mode,
                            struct CircPoly **out);

/**
 * Number of nonzero terms; 0 for a null handle.
 *
 * # Safety
 * `poly` must be null or a live handle.
 */
size_t circ_poly_num_terms(const struct CircPoly *poly);

/**
 * Canonical JSON term list. Free the string with [`circ_string_free`].
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum CircStatus circ_poly_to_json(const struct CircPoly *poly, char **out);

/**
 * # Safety
 * `poly` must be null or a handle from this library, freed at most once.
 */
void circ_poly_free(struct CircPoly *poly);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed at most once.
 */
void circ_string_free(char *s);

/**
 * Coefficient report for `x^(d-A-B) y^A z^B` in `det Circ(d; 0, a, b)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CircStatus circ_coeff_report_json(uint64_t d,
                                       uint64_t a,
                                       uint64_t b,
                                       uint64_t a_exp,
                                       uint64_t b_exp,
                                       char **out);

/**
 * GT-system report for `(d, a, b)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CircStatus circ_gt_report_json(uint64_t d, uint64_t a, uint64_t b, char **out);

/**
 * Permanent of `Circ(d; 0, a, b)` at integer point `(x, y, z)` given as
 * decimal strings. The result is a decimal string.
 *
 * # Safety
 * `x`, `y`, `z` must be NUL-terminated strings; `out` writable.
 */
enum CircStatus circ_per_eval(size_t d,
                              size_t a,
                              size_t b,
                              const char *x,
                              const char *y,
                              const char *z,
                              enum CircPerMethod method,
                              char **out);

/**
 * Message for the last failure on this thread, or null if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *circ_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CIRCULANT_H */
