#ifndef TRIVALENT_H
#define TRIVALENT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TvlRelation {
  TVL_RELATION_SS = 0,
  TVL_RELATION_TT = 1,
  TVL_RELATION_ST = 2,
  TVL_RELATION_TS = 3,
  TVL_RELATION_SS_TT = 4,
} TvlRelation;

/**
 * Result of every fallible call.
 */
typedef enum TvlStatus {
  TVL_STATUS_OK = 0,
  TVL_STATUS_NULL_POINTER = 1,
  /**
   * Scheme, sequent or text could not be parsed.
   */
  TVL_STATUS_PARSE_ERROR = 2,
  TVL_STATUS_INVALID_ARGUMENT = 3,
  /**
   * A panic was caught at the boundary.
   */
  TVL_STATUS_INTERNAL = 4,
} TvlStatus;

/**
 * Opaque scheme handle.
 */
typedef struct TvlScheme TvlScheme;

typedef struct TvlClassification {
  bool boolean_normal;
  bool monotonic;
  bool truth_collapsible;
  bool falsity_collapsible;
} TvlClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * Owned by the library.
 */
const char *tvl_last_error_message(void);

/**
 * Parses a scheme from a name, the text encoding or the JSON form.
 *
 * # Safety
 * `text` is a NUL-terminated string and `out` a writable pointer.
 */
enum TvlStatus tvl_scheme_parse(const char *text_ptr, struct TvlScheme **out);

/**
 * Looks up `sk`, `wk`, `cantwell` or an alias.
 *
 * # Safety
 * As [`tvl_scheme_parse`].
 */
enum TvlStatus tvl_scheme_named(const char *name, struct TvlScheme **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `s` is null or a handle not yet freed.
 */
void tvl_scheme_free(struct TvlScheme *s);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library not yet freed.
 */
void tvl_string_free(char *s);

/**
 * Writes the `NEG:..;AND:..;OR:..` encoding to `*out`.
 *
 * # Safety
 * `s` is a live handle and `out` a writable pointer.
 */
enum TvlStatus tvl_scheme_encode(const struct TvlScheme *s, char **out);

/**
 * # Safety
 * `s` is a live handle and `out` a writable pointer.
 */
enum TvlStatus tvl_classify(const struct TvlScheme *s, struct TvlClassification *out);

/**
 * Whether the scheme under `relation` is classical.
 *
 * # Safety
 * `s` is a live handle and `out` a writable pointer.
 */
enum TvlStatus tvl_decide(const struct TvlScheme *s, enum TvlRelation relation, bool *out);

/**
 * The full verdict with witness as a JSON string, released with
 * `tvl_string_free`.
 *
 * # Safety
 * `s` is a live handle and `out` a writable pointer.
 */
enum TvlStatus tvl_decide_json(const struct TvlScheme *s, enum TvlRelation relation, char **out);

/**
 * Validity of a sequent such as `p, q |- p & q`.
 *
 * # Safety
 * `s` is a live handle, `sequent` a NUL-terminated string and `out` a
 * writable pointer.
 */
enum TvlStatus tvl_sequent_valid(const struct TvlScheme *s,
                                 enum TvlRelation relation,
                                 const char *sequent,
                                 bool *out);

/**
 * Number of schemes classical under `relation`.
 *
 * # Safety
 * `out` is a writable pointer.
 */
enum TvlStatus tvl_count_classical(enum TvlRelation relation, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIVALENT_H */
