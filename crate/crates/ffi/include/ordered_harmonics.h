#ifndef ORDERED_HARMONICS_H
#define ORDERED_HARMONICS_H

/* Generated by cbindgen from the ordered-harmonics-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum OhStatus {
  OhStatus_Ok = 0,
  OhStatus_NullPointer = 1,
  OhStatus_InvalidUtf8 = 2,
  OhStatus_InvalidArgument = 3,
  OhStatus_DimensionMismatch = 4,
  /**
   * The order's positive cone has no least element.
   */
  OhStatus_NoMinimalPositive = 5,
  OhStatus_WrongCone = 6,
  OhStatus_NotAnalytic = 7,
  OhStatus_NoConvergence = 8,
  OhStatus_NonFinite = 9,
  OhStatus_ParseError = 10,
  OhStatus_InequalityViolated = 11,
} OhStatus;

/**
 * Opaque handle to a lattice order.
 */
typedef struct OhOrder OhOrder;

/**
 * Opaque handle to a sparse trigonometric polynomial.
 */
typedef struct OhPoly OhPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null.
 */
const char *oh_status_message(enum OhStatus status);

/**
 * Copy the last error detail into `buf` (NUL-terminated, truncated to
 * `len` bytes) and return the full message length in bytes. Passing a null
 * or empty buffer just queries the length.
 *
 * # Safety
 * `buf`, when non-null, must point to at least `len` writable bytes.
 */
size_t oh_last_error_message(char *buf, size_t len);

/**
 * Create a lexicographic order on the lattice of the given dimension.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum OhStatus oh_order_lex(size_t n, struct OhOrder **out);

/**
 * Create a linear-functional order from `n` coefficients.
 *
 * # Safety
 * `alpha` must point to `n` readable doubles; `out` must be valid.
 */
enum OhStatus oh_order_functional(const double *alpha, size_t n, struct OhOrder **out);

/**
 * # Safety
 * `order` must be a handle from this library, not yet freed, or null.
 */
void oh_order_free(struct OhOrder *order);

/**
 * Dimension of the order's lattice; 0 for a null handle.
 *
 * # Safety
 * `order` must be a live handle or null.
 */
size_t oh_order_dim(const struct OhOrder *order);

/**
 * Cone sign of the index `k` (-1, 0 or +1), written to `out`.
 *
 * # Safety
 * `k` must point to `len` readable i64; `order` and `out` must be valid.
 */
enum OhStatus oh_order_cone_sign(const struct OhOrder *order,
                                 const int64_t *k,
                                 size_t len,
                                 int32_t *out);

/**
 * Least positive element of the order, written into `out_coords`
 * (`oh_order_dim` entries).
 *
 * # Safety
 * `out_coords` must point to `oh_order_dim(order)` writable i64.
 */
enum OhStatus oh_order_minimal_positive(const struct OhOrder *order, int64_t *out_coords);

/**
 * Empty polynomial of the given dimension.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum OhStatus oh_poly_new(size_t n, struct OhPoly **out);

/**
 * # Safety
 * `poly` must be a handle from this library, not yet freed, or null.
 */
void oh_poly_free(struct OhPoly *poly);

/**
 * # Safety
 * `poly` must be a live handle or null.
 */
size_t oh_poly_dim(const struct OhPoly *poly);

/**
 * # Safety
 * `poly` must be a live handle or null.
 */
size_t oh_poly_term_count(const struct OhPoly *poly);

/**
 * Set (or, with 0, remove) the coefficient at index `k`.
 *
 * # Safety
 * `poly` must be a live handle; `k` must point to `len` readable i64.
 */
enum OhStatus oh_poly_set_term(struct OhPoly *poly,
                               const int64_t *k,
                               size_t len,
                               double re,
                               double im);

/**
 * Read the coefficient at index `k` (zero when absent).
 *
 * # Safety
 * `poly` must be live; `k` must point to `len` readable i64; `re`/`im`
 * must be writable.
 */
enum OhStatus oh_poly_coeff(const struct OhPoly *poly,
                            const int64_t *k,
                            size_t len,
                            double *re,
                            double *im);

/**
 * Parse a symbol file (`{"n":1,"terms":[{"k":[-1],"re":1.0,"im":0.0}]}`).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid.
 */
enum OhStatus oh_poly_parse_json(const char *text, struct OhPoly **out);

/**
 * Serialize a polynomial to its symbol-file JSON. The returned string must
 * be released with `oh_string_free`.
 *
 * # Safety
 * `poly` must be live; `out` must be valid.
 */
enum OhStatus oh_poly_to_json(const struct OhPoly *poly, char **out);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void oh_string_free(char *s);

/**
 * Conjugate-function transform (`-i * sign` multiplier) of `poly`.
 *
 * # Safety
 * `order` and `poly` must be live handles; `out` must be valid.
 */
enum OhStatus oh_hilbert(const struct OhOrder *order,
                         const struct OhPoly *poly,
                         struct OhPoly **out);

/**
 * Projection onto the nonnegative cone.
 *
 * # Safety
 * `order` and `poly` must be live handles; `out` must be valid.
 */
enum OhStatus oh_p_plus(const struct OhOrder *order,
                        const struct OhPoly *poly,
                        struct OhPoly **out);

/**
 * Projection onto the strictly negative cone.
 *
 * # Safety
 * `order` and `poly` must be live handles; `out` must be valid.
 */
enum OhStatus oh_p_minus(const struct OhOrder *order,
                         const struct OhPoly *poly,
                         struct OhPoly **out);

/**
 * Grid lower bound of the sup norm on `grid_points` samples per dimension.
 *
 * # Safety
 * `poly` must be live; `out` must be writable.
 */
enum OhStatus oh_sup_norm_lower(const struct OhPoly *poly, size_t grid_points, double *out);

/**
 * Truncated Hankel norms over the symmetric box of the given radius:
 * writes the direct norm and the conjugate-symbol norm. Both are certified
 * lower bounds of the untruncated operator norms.
 *
 * # Safety
 * `order` and `poly` must be live handles; the out pointers writable.
 */
enum OhStatus oh_hankel_norms(const struct OhOrder *order,
                              const struct OhPoly *poly,
                              int64_t box_radius,
                              double tol,
                              size_t max_iters,
                              double *out_direct,
                              double *out_conj);

/**
 * Full norm-sandwich report as a JSON string (release with
 * `oh_string_free`). Requires an order with a least positive element.
 *
 * # Safety
 * `order` and `poly` must be live handles; `out` must be valid.
 */
enum OhStatus oh_bmo_report_json(const struct OhOrder *order,
                                 const struct OhPoly *poly,
                                 int64_t box_radius,
                                 size_t grid_points,
                                 size_t solver_iters,
                                 char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORDERED_HARMONICS_H */
