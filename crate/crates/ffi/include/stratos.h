#ifndef STRATOS_H
#define STRATOS_H

/* Generated by cbindgen from crates/ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StratosStatus {
  STRATOS_STATUS_OK = 0,
  STRATOS_STATUS_NULL_ARGUMENT = 1,
  STRATOS_STATUS_INVALID_UTF8 = 2,
  STRATOS_STATUS_PARSE = 3,
  STRATOS_STATUS_VALIDATION = 4,
  STRATOS_STATUS_CONTRACT = 5,
  STRATOS_STATUS_THEOREM_FAILED = 6,
  STRATOS_STATUS_INTERNAL = 7,
} StratosStatus;

/**
 * Opaque handle to a validated space.
 */
typedef struct StratosSpace StratosSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread; empty after a success. The
 * pointer stays valid until the next call on the same thread.
 */
const char *stratos_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *stratos_version(void);

/**
 * Parses and validates `.ssp` text.
 *
 * # Safety
 * `ssp` must be a NUL-terminated string and the out pointer writable.
 */
enum StratosStatus stratos_space_parse(const char *ssp, struct StratosSpace **out_space);

/**
 * Builds a catalog space from an expression such as `glue(cone(s3),cone(s3))`.
 *
 * # Safety
 * `expression` must be a NUL-terminated string and the out pointer writable.
 */
enum StratosStatus stratos_space_make(const char *expression, struct StratosSpace **out_space);

/**
 * # Safety
 * `space` must be null or a handle from this library not yet freed.
 */
void stratos_space_free(struct StratosSpace *space);

/**
 * Dimension of the space, or `-1` for a null handle.
 *
 * # Safety
 * `space` must be null or a live handle.
 */
int64_t stratos_space_dim(const struct StratosSpace *space);

/**
 * # Safety
 * `space` must be a live handle and the out pointer writable.
 */
enum StratosStatus stratos_space_euler(const struct StratosSpace *space_ptr, int64_t *out_euler);

/**
 * `.ssp` text of the space; free it with [`stratos_string_free`].
 *
 * # Safety
 * `space` must be a live handle and the out pointer writable.
 */
enum StratosStatus stratos_space_emit(const struct StratosSpace *space_ptr, char **out_text);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void stratos_string_free(char *s);

/**
 * `dim I^p H_degree`, or `dim I^{q/p} H_degree` when `q` is non-null;
 * `relative` divides out the boundary.
 *
 * # Safety
 * `space` must be a live handle, `p` a NUL-terminated string, `q` null or
 * NUL-terminated, and the out pointer writable.
 */
enum StratosStatus stratos_ih_dim(const struct StratosSpace *space_ptr,
                                  const char *p,
                                  const char *q,
                                  size_t degree,
                                  bool relative,
                                  size_t *out_dim);

/**
 * Signature of the middle pairing, relative to the boundary when there is one.
 *
 * # Safety
 * `space` must be a live handle, `p` and `q` NUL-terminated, and the out pointer writable.
 */
enum StratosStatus stratos_signature(const struct StratosSpace *space_ptr,
                                     const char *p,
                                     const char *q,
                                     size_t max_subdivisions,
                                     int64_t *out_sigma);

/**
 * Maslov index of the column spans of `a`, `b`, `c` in the skew form
 * `form`, all given in the plain-text matrix format.
 *
 * # Safety
 * All strings must be NUL-terminated and the out pointer writable.
 */
enum StratosStatus stratos_maslov(const char *form,
                                  const char *a,
                                  const char *b,
                                  const char *c,
                                  int64_t *out_index);

/**
 * Non-additivity check on a closed space split along its bicollar. Writes
 * the residual; returns [`StratosStatus::TheoremFailed`] when the check
 * does not hold (the residual is still written).
 *
 * # Safety
 * `space` must be a live handle, `p` and `q` NUL-terminated, and the out pointer writable.
 */
enum StratosStatus stratos_wall_verify(const struct StratosSpace *space_ptr,
                                       const char *p,
                                       const char *q,
                                       size_t max_subdivisions,
                                       int64_t *out_residual);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRATOS_H */
