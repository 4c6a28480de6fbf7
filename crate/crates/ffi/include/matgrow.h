#ifndef MATGROW_H
#define MATGROW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MgStatus {
  MG_STATUS_OK = 0,
  MG_STATUS_NULL_POINTER = 1,
  MG_STATUS_INVALID_ARGUMENT = 2,
  MG_STATUS_PARSE = 3,
  MG_STATUS_TOO_LARGE = 4,
  MG_STATUS_BUDGET = 5,
  MG_STATUS_INTERNAL = 6,
} MgStatus;

// Opaque matroid handle.
typedef struct MgMatroid MgMatroid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Owned by the
// library; valid until the next call.
const char *mg_last_error(void);

// PG(n − 1, q).
//
// # Safety
// `out` must be valid for writes.
enum MgStatus mg_pg(size_t n, uint32_t q, struct MgMatroid **out);

// A named matroid, such as "fano", "u24" or "pg(3,2)".
//
// # Safety
// `name` must be a nul-terminated string; `out` must be valid for writes.
enum MgStatus mg_builtin(const char *name, struct MgMatroid **out);

// Parses one matroid block in the text format.
//
// # Safety
// `src` must be a nul-terminated string; `out` must be valid for writes.
enum MgStatus mg_parse(const char *src, struct MgMatroid **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `m` must come from this library and not be used afterwards.
void mg_free(struct MgMatroid *m);

// Number of elements.
//
// # Safety
// `m` must be a live handle; `out` must be valid for writes.
enum MgStatus mg_size(const struct MgMatroid *m, size_t *out);

// Rank of the set whose bit i stands for element i.
//
// # Safety
// `m` must be a live handle; `out` must be valid for writes.
enum MgStatus mg_rank(const struct MgMatroid *m, uint64_t set, size_t *out);

// Number of points (rank-1 flats).
//
// # Safety
// `m` must be a live handle; `out` must be valid for writes.
enum MgStatus mg_epsilon(const struct MgMatroid *m, size_t *out);

// Whether `m` has a minor isomorphic to `n`, searching at most `budget`
// nodes.
//
// # Safety
// `m` and `n` must be live handles; `out` must be valid for writes.
enum MgStatus mg_has_minor(const struct MgMatroid *m,
                           const struct MgMatroid *n,
                           uint64_t budget,
                           bool *out);

// Whether `m` is GF(q)-representable.
//
// # Safety
// `m` must be a live handle; `out` must be valid for writes.
enum MgStatus mg_is_representable(const struct MgMatroid *m, uint32_t q, bool *out);

// (q^{n+k} − 1)/(q − 1) − q·d.
//
// # Safety
// `out` must be valid for writes.
enum MgStatus mg_grf_formula(uint32_t q, size_t k, uint64_t d, size_t n, int64_t *out);

// The text form of `m`. Release the string with `mg_string_free`.
//
// # Safety
// `m` must be a live handle; `out` must be valid for writes.
enum MgStatus mg_to_text(const struct MgMatroid *m, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void mg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MATGROW_H */
