#ifndef SLIMCODE_H
#define SLIMCODE_H

/* Generated by cbindgen from the slimcode-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Category bit for method-signature members, for [`SlimcodeOptions::categories`].
 */
#define SLIMCODE_CATEGORY_SIGNATURE (1 << 0)

/**
 * Category bit for identifiers.
 */
#define SLIMCODE_CATEGORY_IDENTIFIER (1 << 1)

/**
 * Category bit for control-structure spans.
 */
#define SLIMCODE_CATEGORY_CONTROL (1 << 2)

/**
 * Category bit for method-invocation spans.
 */
#define SLIMCODE_CATEGORY_INVOCATION (1 << 3)

/**
 * Category bit for symbol tokens.
 */
#define SLIMCODE_CATEGORY_SYMBOL (1 << 4)

/**
 * Category bit for every remaining token.
 */
#define SLIMCODE_CATEGORY_OTHER (1 << 5)

/**
 * Token-removal strategy.
 */
typedef enum SlimcodeMode {
  /**
   * Remove highest-score (least important) tokens first until the
   * retained length fits `(1 - ratio) * input_length`.
   */
  SLIMCODE_MODE_GREEDY = 0,
  /**
   * Remove `round(ratio * n)` tokens uniformly at random, seeded.
   */
  SLIMCODE_MODE_RANDOM = 1,
  /**
   * Remove every token belonging to the categories named by the
   * `categories` bitmask.
   */
  SLIMCODE_MODE_CATEGORY = 2,
  /**
   * Remove statements with no data or control influence on the rest.
   */
  SLIMCODE_MODE_SEMANTIC_PDG = 3,
} SlimcodeMode;

/**
 * Status of a call. Anything but `OK` means out-pointers were not written.
 */
typedef enum SlimcodeStatus {
  SLIMCODE_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SLIMCODE_STATUS_NULL_POINTER = 1,
  /**
   * The input string was not valid UTF-8.
   */
  SLIMCODE_STATUS_INVALID_UTF8 = 2,
  /**
   * The source failed to tokenize (unterminated literal or a byte the
   * lexer does not recognize).
   */
  SLIMCODE_STATUS_LEX_ERROR = 3,
  /**
   * The source tokenized but its structure could not be scanned
   * (unbalanced delimiters in a control header).
   */
  SLIMCODE_STATUS_SCAN_ERROR = 4,
  /**
   * The options are out of range or inconsistent for the chosen mode.
   */
  SLIMCODE_STATUS_INVALID_OPTIONS = 5,
  /**
   * The snippet has no tokens, so no ratio is defined for it.
   */
  SLIMCODE_STATUS_EMPTY_SNIPPET = 6,
  /**
   * An unexpected internal failure; never expected in normal use.
   */
  SLIMCODE_STATUS_INTERNAL_ERROR = 7,
} SlimcodeStatus;

/**
 * Opaque result of one simplification; owns the simplified source text.
 */
typedef struct SlimcodeResult SlimcodeResult;

/**
 * Simplification parameters. Start from [`slimcode_options_default`] and
 * override fields as needed.
 */
typedef struct SlimcodeOptions {
  /**
   * Fraction of tokens to remove, in `[0, 1]`.
   */
  double ratio;
  /**
   * Model input budget in tokens; at least 1.
   */
  size_t input_length;
  enum SlimcodeMode mode;
  /**
   * Generator seed for `RANDOM` mode; ignored otherwise.
   */
  uint64_t seed;
  /**
   * `SLIMCODE_CATEGORY_*` bits for `CATEGORY` mode; ignored otherwise.
   */
  uint32_t categories;
  /**
   * Exchange the two span-interior scores (5 and 6), making
   * control-structure interiors cheaper to remove than invocation
   * interiors.
   */
  bool swap_scores_5_6;
} SlimcodeOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Baseline options: greedy mode at ratio 0.3 against a 200-token budget.
 */
struct SlimcodeOptions slimcode_options_default(void);

/**
 * Simplifies a NUL-terminated Java snippet and stores an owned result in
 * `*out_result` on `OK`.
 *
 * # Safety
 * `code` must point to a NUL-terminated byte string and `out_result` to a
 * writable pointer slot; both must stay valid for the duration of the
 * call. `options` may alias anything readable but must not be null.
 */
enum SlimcodeStatus slimcode_simplify(const char *code,
                                      const struct SlimcodeOptions *options,
                                      struct SlimcodeResult **out_result);

/**
 * Counts the tokens of a NUL-terminated Java snippet into `*out_count`.
 *
 * # Safety
 * `code` must point to a NUL-terminated byte string and `out_count` to a
 * writable `size_t`; both must stay valid for the duration of the call.
 */
enum SlimcodeStatus slimcode_token_count(const char *code, size_t *out_count);

/**
 * Returns the simplified source, space-joined and NUL-terminated. The
 * string is owned by `result`; do not free it separately.
 *
 * # Safety
 * `result` must be a live pointer from [`slimcode_simplify`].
 */
const char *slimcode_result_code(const struct SlimcodeResult *result);

/**
 * Returns the achieved removal fraction, `removed / original`.
 *
 * # Safety
 * `result` must be a live pointer from [`slimcode_simplify`] or null
 * (null yields a NaN).
 */
double slimcode_result_achieved_ratio(const struct SlimcodeResult *result);

/**
 * Returns how many tokens the simplified snippet kept.
 *
 * # Safety
 * `result` must be a live pointer from [`slimcode_simplify`] or null.
 */
size_t slimcode_result_retained_count(const struct SlimcodeResult *result);

/**
 * Returns how many tokens were removed.
 *
 * # Safety
 * `result` must be a live pointer from [`slimcode_simplify`] or null.
 */
size_t slimcode_result_removed_count(const struct SlimcodeResult *result);

/**
 * Releases a result. Passing null is a no-op; passing the same pointer
 * twice is undefined behavior.
 *
 * # Safety
 * `result` must be null or a pointer from [`slimcode_simplify`] that has
 * not been freed yet.
 */
void slimcode_result_free(struct SlimcodeResult *result);

/**
 * Returns a static, NUL-terminated description of a status code.
 */
const char *slimcode_status_message(enum SlimcodeStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SLIMCODE_H */
