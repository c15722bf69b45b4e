#ifndef SPATIAL_QUANDLE_H
#define SPATIAL_QUANDLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum SqStatus {
  SQ_STATUS_OK = 0,
  SQ_STATUS_NULL_POINTER = 1,
  SQ_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed diagram, quandle, group or cocycle input.
   */
  SQ_STATUS_INVALID_INPUT = 3,
  /**
   * A search exceeded its budget.
   */
  SQ_STATUS_BUDGET = 4,
  /**
   * The cocycle fails the conditions the invariant needs.
   */
  SQ_STATUS_INCOMPATIBLE = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  SQ_STATUS_INTERNAL = 6,
} SqStatus;

typedef struct SqCocycle SqCocycle;

typedef struct SqDiagram SqDiagram;

typedef struct SqGroup SqGroup;

typedef struct SqQuandle SqQuandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty if none. Valid until the
 * next failing call on the same thread.
 */
const char *sq_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void sq_string_free(char *s);

/**
 * Parses diagram text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SqStatus sq_diagram_parse(const char *text_ptr, struct SqDiagram **out);

/**
 * Loads a bundled fixture such as `"trefoil"` or `"t9"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SqStatus sq_diagram_fixture(const char *name, struct SqDiagram **out);

/**
 * # Safety
 * `d` must be a valid handle and `out` a valid pointer.
 */
enum SqStatus sq_diagram_mirror(const struct SqDiagram *d, struct SqDiagram **out);

/**
 * # Safety
 * `d` must be a valid handle and `out` a valid pointer.
 */
enum SqStatus sq_diagram_crossing_count(const struct SqDiagram *d, uintptr_t *out);

/**
 * Serialized diagram text; free with `sq_string_free`.
 *
 * # Safety
 * `d` must be a valid handle and `out` a valid pointer.
 */
enum SqStatus sq_diagram_to_text(const struct SqDiagram *d, char **out);

/**
 * # Safety
 * `d` must come from this library or be null; it is invalid afterwards.
 */
void sq_diagram_free(struct SqDiagram *d);

/**
 * Builds a quandle from a spec such as `"dihedral:3"` or `"paper5"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SqStatus sq_quandle_new(const char *spec, struct SqQuandle **out);

/**
 * # Safety
 * `q` must be a valid handle and `out` a valid pointer.
 */
enum SqStatus sq_quandle_size(const struct SqQuandle *q, uintptr_t *out);

/**
 * # Safety
 * `q` must come from this library or be null.
 */
void sq_quandle_free(struct SqQuandle *q);

/**
 * Builds a group from `"sym:n"` or `"cyc:n"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SqStatus sq_group_new(const char *spec, struct SqGroup **out);

/**
 * # Safety
 * `h` must come from this library or be null.
 */
void sq_group_free(struct SqGroup *h);

/**
 * Parses `phi(x,y) = g` lines; a null `text` gives the shipped S3 cocycle on `paper5`.
 *
 * # Safety
 * Handles must be valid, `text` null or NUL-terminated, `out` a valid pointer.
 */
enum SqStatus sq_cocycle_parse(const struct SqQuandle *q,
                               const struct SqGroup *h,
                               const char *text_ptr,
                               struct SqCocycle **out);

/**
 * Writes whether `phi` satisfies the cocycle identity and the stability condition.
 *
 * # Safety
 * Handles must be valid and the output pointers valid.
 */
enum SqStatus sq_cocycle_check(const struct SqQuandle *q,
                               const struct SqGroup *h,
                               const struct SqCocycle *phi,
                               bool *out_cocycle,
                               bool *out_stable);

/**
 * # Safety
 * `phi` must come from this library or be null.
 */
void sq_cocycle_free(struct SqCocycle *phi);

/**
 * Number of colorings, or of special colorings when `special` is set.
 *
 * # Safety
 * Handles must be valid and `out` a valid pointer.
 */
enum SqStatus sq_coloring_count(const struct SqDiagram *d,
                                const struct SqQuandle *q,
                                bool special,
                                uint64_t budget,
                                uint64_t *out);

/**
 * The multiset `Ψ_q` for walks `from -> to` of length at most `max_len`,
 * in canonical text form such as `{(), (1,2,3)}`; free with `sq_string_free`.
 *
 * # Safety
 * Handles must be valid, strings NUL-terminated and `out` a valid pointer.
 */
enum SqStatus sq_psi(const struct SqDiagram *d,
                     const struct SqQuandle *q,
                     const struct SqGroup *h,
                     const struct SqCocycle *phi,
                     const char *color,
                     const char *from,
                     const char *to,
                     uintptr_t max_len,
                     char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPATIAL_QUANDLE_H */
