#ifndef DTNV_H
#define DTNV_H

/* Generated by cbindgen from the dtnv-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function in this API.
 */
typedef enum {
  /**
   * The call succeeded.
   */
  DTNV_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  DTNV_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  DTNV_STATUS_INVALID_UTF8 = 2,
  /**
   * The model text failed to parse.
   */
  DTNV_STATUS_PARSE_ERROR = 3,
  /**
   * A numeric argument was outside its documented range.
   */
  DTNV_STATUS_INVALID_ARGUMENT = 4,
  /**
   * Solving failed, e.g. because the search horizon is unbounded.
   */
  DTNV_STATUS_SOLVE_ERROR = 5,
  /**
   * Flooding certification failed, so no cutoff could be produced.
   */
  DTNV_STATUS_CERTIFY_ERROR = 6,
  /**
   * The minreach handle was not solved from the given model.
   */
  DTNV_STATUS_MODEL_MISMATCH = 7,
  /**
   * An internal invariant was violated.
   */
  DTNV_STATUS_INTERNAL = 8,
} DtnvStatus;

/**
 * Opaque handle to the solved minimum reach times of a model.
 */
typedef struct DtnvMinReach DtnvMinReach;

/**
 * Opaque handle to a parsed or generated model.
 */
typedef struct DtnvModel DtnvModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *dtnv_version(void);

/**
 * Message for the most recent failure on this thread, or null if no
 * call has failed yet. The pointer stays valid until the next failing
 * call on the same thread; do not free it.
 */
const char *dtnv_last_error_message(void);

/**
 * Parse a model from its textual format into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid
 * pointer to write a handle through.
 */
DtnvStatus dtnv_model_parse(const char *text, DtnvModel **out);

/**
 * Generate the guard-chain ring benchmark with `k >= 2` rings, with or
 * without invariants on the guard locations.
 *
 * # Safety
 * `out` must be a valid pointer to write a handle through.
 */
DtnvStatus dtnv_gen_gcs(uint32_t k, bool with_invariants, DtnvModel **out);

/**
 * Generate the star benchmark with `k >= 1` branches.
 *
 * # Safety
 * `out` must be a valid pointer to write a handle through.
 */
DtnvStatus dtnv_gen_star(uint32_t k, DtnvModel **out);

/**
 * Generate a seeded random model; `persistent` restricts generation to
 * models whose guard locations have no invariants.
 *
 * # Safety
 * `out` must be a valid pointer to write a handle through.
 */
DtnvStatus dtnv_gen_random(uint64_t seed, bool persistent, DtnvModel **out);

/**
 * Release a model handle. Passing null is a no-op.
 *
 * # Safety
 * `model` must be null or a handle obtained from this API that has not
 * been freed yet.
 */
void dtnv_model_free(DtnvModel *model);

/**
 * Render a model back into its textual format.
 *
 * # Safety
 * `model` must be a live handle; `out` must be a valid pointer to
 * write a string through.
 */
DtnvStatus dtnv_model_write(const DtnvModel *model, char **out);

/**
 * Render a model as a Graphviz digraph.
 *
 * # Safety
 * `model` must be a live handle; `out` must be a valid pointer to
 * write a string through.
 */
DtnvStatus dtnv_model_dot(const DtnvModel *model, char **out);

/**
 * Compute the minimum time at which each location becomes reachable in
 * some network of copies of the model.
 *
 * # Safety
 * `model` must be a live handle; `out` must be a valid pointer to
 * write a handle through.
 */
DtnvStatus dtnv_minreach_solve(const DtnvModel *model, DtnvMinReach **out);

/**
 * Release a minreach handle. Passing null is a no-op.
 *
 * # Safety
 * `minreach` must be null or a handle obtained from this API that has
 * not been freed yet.
 */
void dtnv_minreach_free(DtnvMinReach *minreach);

/**
 * Serialize solved minimum reach times as a JSON document, optionally
 * including one minimal-time witness path per reachable location.
 *
 * # Safety
 * `minreach` must be a live handle; `out` must be a valid pointer to
 * write a string through.
 */
DtnvStatus dtnv_minreach_json(const DtnvMinReach *minreach, bool witnesses, char **out);

/**
 * Look up the minimum reach time of one location by name. On success
 * `*reachable` says whether the location can be reached at all; when it
 * is true, `*value` and `*strict` describe the bound (`> value` for a
 * strict bound, `>= value` reaching exactly at `value` otherwise).
 * Unreachable locations leave `*value` and `*strict` zeroed.
 *
 * # Safety
 * `minreach` must be a live handle; `location` must be a
 * NUL-terminated string; `reachable`, `value`, and `strict` must be
 * valid pointers.
 */
DtnvStatus dtnv_minreach_bound(const DtnvMinReach *minreach,
                               const char *location,
                               bool *reachable,
                               uint64_t *value,
                               bool *strict);

/**
 * Build the summary automaton of a model from its solved minimum reach
 * times and render it, prefixed with a `# soundness:` line. The
 * summary is certified where possible; `*sound` (optional, may be
 * null) reports whether the rendered summary is known to be exact.
 *
 * # Safety
 * `model` and `minreach` must be live handles; `out` must be a valid
 * pointer to write a string through.
 */
DtnvStatus dtnv_summary_build(const DtnvModel *model,
                              const DtnvMinReach *minreach,
                              bool *sound,
                              char **out);

/**
 * Compute a cutoff: a network size such that any reachability property
 * over `m` observed processes that holds in the cutoff-sized network
 * holds in every larger one. Models whose guard locations carry
 * invariants need flooding certificates, so this can fail with
 * `DTNV_STATUS_CERTIFY_ERROR`.
 *
 * # Safety
 * `model` and `minreach` must be live handles; `out` must be a valid
 * pointer to write the cutoff through.
 */
DtnvStatus dtnv_cutoff(const DtnvModel *model,
                       const DtnvMinReach *minreach,
                       uint64_t m,
                       uint64_t *out);

/**
 * Release a string returned by this API. Passing null is a no-op.
 *
 * # Safety
 * `s` must be null or a string obtained from this API that has not
 * been freed yet.
 */
void dtnv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DTNV_H */
