#ifndef MIDCONV_H
#define MIDCONV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MidconvStatus {
  MIDCONV_STATUS_OK = 0,
  MIDCONV_STATUS_NULL_ARGUMENT = 1,
  MIDCONV_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON or rational literal.
   */
  MIDCONV_STATUS_PARSE = 3,
  /**
   * Well-formed input that does not describe a valid tuple or shift.
   */
  MIDCONV_STATUS_VALIDATION = 4,
  /**
   * Middle convolution would produce the zero tuple.
   */
  MIDCONV_STATUS_DEGENERATE = 5,
  MIDCONV_STATUS_PANIC = 6,
} MidconvStatus;

typedef enum MidconvVerdict {
  MIDCONV_VERDICT_REDUCED_TO_RANK_ONE = 0,
  MIDCONV_VERDICT_TERMINAL = 1,
  MIDCONV_VERDICT_ASSUMPTION_VIOLATED = 2,
} MidconvVerdict;

/**
 * Opaque tuple handle.
 */
typedef struct MidconvTuple MidconvTuple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a tuple document. On success `*out` holds a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum MidconvStatus midconv_tuple_from_json(const char *json, struct MidconvTuple **out);

/**
 * Serializes a tuple. Free the result with `midconv_string_free`.
 *
 * # Safety
 * `t` must be a live handle and `out` a writable pointer.
 */
enum MidconvStatus midconv_tuple_to_json(const struct MidconvTuple *t, char **out);

/**
 * # Safety
 * `t` must be null or a handle not yet freed.
 */
void midconv_tuple_free(struct MidconvTuple *t);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void midconv_string_free(char *s);

/**
 * Matrix size n.
 *
 * # Safety
 * `t` must be a live handle and `out` a writable pointer.
 */
enum MidconvStatus midconv_tuple_size(const struct MidconvTuple *t, size_t *out);

/**
 * # Safety
 * `t` must be a live handle and `out` a writable pointer.
 */
enum MidconvStatus midconv_index_of_rigidity(const struct MidconvTuple *t, int64_t *out);

/**
 * # Safety
 * `t` must be a live handle and `out` a writable pointer.
 */
enum MidconvStatus midconv_is_irreducible(const struct MidconvTuple *t, bool *out);

/**
 * Middle convolution with parameter `mu`, a rational literal such as `"-2/3"`.
 *
 * # Safety
 * `t` must be a live handle, `mu` a NUL-terminated string and `out` writable.
 */
enum MidconvStatus midconv_middle_convolution(const struct MidconvTuple *t,
                                              const char *mu,
                                              struct MidconvTuple **out);

/**
 * Addition by a comma-separated shift vector, one entry per slot.
 *
 * # Safety
 * `t` must be a live handle, `shift` a NUL-terminated string and `out` writable.
 */
enum MidconvStatus midconv_addition(const struct MidconvTuple *t,
                                    const char *shift,
                                    struct MidconvTuple **out);

/**
 * Runs the reduction to completion. `out_terminal` may be null; otherwise it
 * receives the last tuple reached.
 *
 * # Safety
 * `t` must be a live handle and `out_verdict` writable.
 */
enum MidconvStatus midconv_reduce(const struct MidconvTuple *t,
                                  enum MidconvVerdict *out_verdict,
                                  struct MidconvTuple **out_terminal);

/**
 * The rank-two hypergeometric example tuple. Parameters are rational literals.
 *
 * # Safety
 * All string arguments must be NUL-terminated and `out` writable.
 */
enum MidconvStatus midconv_hypergeometric(const char *nu,
                                          const char *gamma,
                                          const char *alpha,
                                          const char *k,
                                          struct MidconvTuple **out);

/**
 * Message for the last failure on this thread, or an empty string. Valid
 * until the next call into the library from the same thread.
 */
const char *midconv_last_error_message(void);

const char *midconv_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIDCONV_H */
