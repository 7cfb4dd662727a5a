#ifndef NESTFILL_H
#define NESTFILL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call.
typedef enum NfStatus {
  NF_STATUS_OK = 0,
  // A required pointer was null or a string was not UTF-8.
  NF_STATUS_NULL_OR_INVALID = 1,
  // Unknown construction or bad parameter.
  NF_STATUS_BAD_PARAMETER = 2,
  // A checker found a violation.
  NF_STATUS_VERIFY_FAILED = 3,
  // Reading or writing files failed.
  NF_STATUS_IO = 4,
  // An index was out of range or a buffer too small.
  NF_STATUS_OUT_OF_RANGE = 5,
  // Internal error; the library caught a panic.
  NF_STATUS_INTERNAL = 6,
} NfStatus;

// Placement of points inside their cells.
typedef enum NfJitter {
  NF_JITTER_MIDPOINT = 0,
  NF_JITTER_UNIFORM = 1,
} NfJitter;

// The low- and high-accuracy point sets of a nested design.
typedef struct NfDesign NfDesign;

// A built construction and its nesting, if any.
typedef struct NfNested NfNested;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until
// the next call on the same thread.
const char *nf_last_error(void);

// Library version as a static string.
const char *nf_version(void);

// Builds a construction such as `"qtw s1=8 s2=4 k=2"`. `plan` is TOML
// text for the mixed constructions, or null. The result is verified; a
// failing construction returns `VerifyFailed` and no handle.
//
// # Safety
// `invocation` and a non-null `plan` must be nul-terminated strings;
// `out` must be writable.
enum NfStatus nf_construct(const char *invocation, const char *plan, struct NfNested **out);

// Releases a handle from [`nf_construct`]. Null is ignored.
//
// # Safety
// `h` must come from [`nf_construct`] and not be used afterwards.
void nf_nested_free(struct NfNested *h);

// Rows and columns of the parent array, and the number of child rows
// (zero when the construction has no nesting).
//
// # Safety
// `h` must be a live handle; each non-null output must be writable.
enum NfStatus nf_nested_shape(const struct NfNested *h,
                              size_t *rows,
                              size_t *cols,
                              size_t *child_rows);

// Level index of parent cell `(row, col)`, zero-based.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum NfStatus nf_nested_level(const struct NfNested *h, size_t row, size_t col, uint32_t *out);

// Copies the zero-based child row indices into `buf`, which must hold at
// least the child row count.
//
// # Safety
// `h` must be a live handle and `buf` valid for `len` writes.
enum NfStatus nf_nested_child_rows(const struct NfNested *h, size_t *buf, size_t len);

// Reruns the checkers. Returns `VerifyFailed` with the witness in
// [`nf_last_error`] on failure.
//
// # Safety
// `h` must be a live handle.
enum NfStatus nf_nested_verify(const struct NfNested *h);

// Writes `<prefix>.csv` and `<prefix>.json`.
//
// # Safety
// `h` must be a live handle and `prefix` a nul-terminated string.
enum NfStatus nf_nested_save(const struct NfNested *h, const char *prefix);

// Generates a nested Latin hypercube design. `jitter` is an [`NfJitter`]
// value; `seed` drives uniform jitter and is ignored for midpoints. Ranks
// follow row order.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum NfStatus nf_design_new(const struct NfNested *h,
                            uint32_t jitter,
                            uint64_t seed,
                            struct NfDesign **out);

// Releases a design. Null is ignored.
//
// # Safety
// `d` must come from [`nf_design_new`] and not be used afterwards.
void nf_design_free(struct NfDesign *d);

// Point count and dimension of the low (`high = false`) or high set.
//
// # Safety
// `d` must be a live design; each non-null output must be writable.
enum NfStatus nf_design_shape(const struct NfDesign *d, bool high, size_t *rows, size_t *cols);

// Copies a point set row-major into `buf` of `len` doubles.
//
// # Safety
// `d` must be a live design and `buf` valid for `len` writes.
enum NfStatus nf_design_copy(const struct NfDesign *d, bool high, double *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NESTFILL_H */
