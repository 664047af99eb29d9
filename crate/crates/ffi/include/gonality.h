#ifndef GONALITY_H
#define GONALITY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum {
  GON_STATUS_OK = 0,
  GON_STATUS_NULL_POINTER = 1,
  GON_STATUS_INVALID_UTF8 = 2,
  GON_STATUS_PARSE = 3,
  GON_STATUS_DOMAIN = 4,
  GON_STATUS_BUDGET_EXCEEDED = 5,
  GON_STATUS_PANIC = 6,
} GonStatus;

/**
 * Opaque admissible cover.
 */
typedef struct GonCover GonCover;

/**
 * Opaque dual graph.
 */
typedef struct GonCurve GonCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread. Valid until the next call
 * into this library from the same thread; never NULL.
 */
const char *gon_last_error_message(void);

/**
 * # Safety
 * `s` is NULL or a string returned by this library and not yet freed.
 */
void gon_string_free(char *s);

/**
 * Parses a curve from JSON into `*out`.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
GonStatus gon_curve_from_json(const char *json, GonCurve **out);

/**
 * # Safety
 * `curve` is NULL or a handle from this library not yet freed.
 */
void gon_curve_free(GonCurve *curve);

/**
 * Arithmetic genus of a connected curve.
 *
 * # Safety
 * `curve` is a live handle; `out` is writable.
 */
GonStatus gon_curve_genus(const GonCurve *curve, uint32_t *out);

/**
 * # Safety
 * `curve` is a live handle; `out` is writable.
 */
GonStatus gon_curve_is_stable(const GonCurve *curve, bool *out);

/**
 * Parses a cover from JSON into `*out`.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
GonStatus gon_cover_from_json(const char *json, GonCover **out);

/**
 * # Safety
 * `cover` is NULL or a handle from this library not yet freed.
 */
void gon_cover_free(GonCover *cover);

/**
 * Validates in strict (`strict != 0`) or relaxed mode. When invalid, the
 * report is available from `gon_last_error_message`.
 *
 * # Safety
 * `cover` is a live handle; `valid` is writable.
 */
GonStatus gon_cover_validate(const GonCover *cover, bool strict, bool *valid);

/**
 * # Safety
 * `cover` is a live handle; `out` is writable.
 */
GonStatus gon_cover_degree(const GonCover *cover, uint32_t *out);

/**
 * Arithmetic genus of the source curve.
 *
 * # Safety
 * `cover` is a live handle; `out` is writable.
 */
GonStatus gon_cover_genus(const GonCover *cover, uint32_t *out);

/**
 * Number of branch points, checked against `2g + 2k - 2` in strict mode.
 *
 * # Safety
 * `cover` is a live handle; `out` is writable.
 */
GonStatus gon_cover_branch_count(const GonCover *cover, bool strict, uint32_t *out);

/**
 * # Safety
 * `cover` is a live handle; `out` is writable.
 */
GonStatus gon_cover_to_json(const GonCover *cover, char **out);

/**
 * Glues the marked points `first` and `second`, which lie over distinct
 * target points, into a node. The degree goes up by one.
 *
 * # Safety
 * `cover` is a live handle, the labels are NUL-terminated, `out` is writable.
 */
GonStatus gon_glue_distinct(const GonCover *cover,
                            const char *first,
                            const char *second,
                            GonCover **out);

/**
 * Glues the marked points `first` and `second`, which lie over the same
 * target point, into a node. The degree is unchanged.
 *
 * # Safety
 * `cover` is a live handle, the labels are NUL-terminated, `out` is writable.
 */
GonStatus gon_glue_equal(const GonCover *cover,
                         const char *first,
                         const char *second,
                         GonCover **out);

/**
 * Applies a JSON construction descriptor (`{"op": "join", ...}`).
 *
 * # Safety
 * `descriptor` is NUL-terminated; `out` is writable.
 */
GonStatus gon_construct_json(const char *descriptor, GonCover **out);

/**
 * Boundary stratum of a strictly valid cover, as JSON.
 *
 * # Safety
 * `cover` is a live handle; `out` is writable.
 */
GonStatus gon_classify_stratum_json(const GonCover *cover, char **out);

/**
 * `2g + 2k - 5`.
 */
int64_t gon_hurwitz_dim(uint32_t k, uint32_t g);

/**
 * `2g + 2k - 5 + n`.
 */
int64_t gon_pointed_hurwitz_dim(uint32_t k, uint32_t g, uint32_t n);

/**
 * Smallest `k <= kmax` with a cover of a curve stably equivalent to
 * `curve`, using at most `rational` added rational components and
 * `target_vertices` target components. Writes 0 to `k_out` and NULL to
 * `certificate` when nothing is found; `certificate` may be NULL.
 *
 * # Safety
 * `curve` is a live handle; `k_out` is writable; `certificate` is NULL or
 * writable.
 */
GonStatus gon_min_gonality_search(const GonCurve *curve,
                                  uint32_t kmax,
                                  uint32_t rational,
                                  uint32_t target_vertices,
                                  uint32_t *k_out,
                                  GonCover **certificate);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GONALITY_H */
