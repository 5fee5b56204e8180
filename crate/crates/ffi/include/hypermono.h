#ifndef HYPERMONO_H
#define HYPERMONO_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HmPrimitivity {
  HM_PRIMITIVITY_UNKNOWN = 0,
  HM_PRIMITIVITY_YES = 1,
  HM_PRIMITIVITY_NO = 2,
} HmPrimitivity;

typedef enum HmSawinSide {
  /**
   * Quotient at C = A + B, needs p | A + B.
   */
  HM_SAWIN_SIDE_C = 0,
  /**
   * Quotient at A, needs p | A.
   */
  HM_SAWIN_SIDE_A = 1,
} HmSawinSide;

typedef enum HmStatus {
  HM_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  HM_STATUS_NULL = 1,
  /**
   * An input string was not valid UTF-8.
   */
  HM_STATUS_UTF8 = 2,
  HM_STATUS_PARSE = 3,
  /**
   * The input parsed but violates a hypothesis (overlap, wild order, D <= m, ...).
   */
  HM_STATUS_VALIDATION = 4,
  /**
   * An enumeration cap or a fixed-width output was exceeded.
   */
  HM_STATUS_CAP = 5,
  /**
   * The quantity is undefined for this input (p | W, Zsigmondy exception, excluded case).
   */
  HM_STATUS_INAPPLICABLE = 6,
  HM_STATUS_PANIC = 7,
} HmStatus;

/**
 * Opaque hypergeometric descriptor.
 */
typedef struct HmDescriptor HmDescriptor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or the empty string. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *hm_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hm_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void hm_string_free(char *s);

/**
 * Parses a descriptor from JSON `{"p": .., "upstairs": [..], "downstairs": [..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HmStatus hm_descriptor_from_json(const char *json, struct HmDescriptor **out);

/**
 * # Safety
 * `h` must be null or a handle from this library, not yet freed.
 */
void hm_descriptor_free(struct HmDescriptor *h);

/**
 * Writes D, m and W = D - m.
 *
 * # Safety
 * `h` must be a live handle; the out pointers must be writable.
 */
enum HmStatus hm_descriptor_type(const struct HmDescriptor *h, size_t *d, size_t *m, size_t *w);

/**
 * Order p^k of the image of wild inertia, `Inapplicable` when p divides W.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum HmStatus hm_descriptor_wild_image_order(const struct HmDescriptor *h, uint64_t *out);

/**
 * Least Kummer degree the sheaf is induced from, `Inapplicable` when there is none.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum HmStatus hm_descriptor_kummer_induced(const struct HmDescriptor *h, uint64_t *out);

/**
 * Full analysis report as pretty-printed JSON.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum HmStatus hm_descriptor_analyze(const struct HmDescriptor *h, char **out);

/**
 * Whether the S+ theorems guarantee the monodromy, plus the verdict as JSON (`json` may be
 * null when only the flag is wanted).
 *
 * # Safety
 * `h` must be a live handle; `guaranteed` must be writable; `json` null or writable.
 */
enum HmStatus hm_splus_verdict(const struct HmDescriptor *h,
                               enum HmPrimitivity primitivity,
                               bool *guaranteed,
                               char **json);

/**
 * Sawin's descriptor for x^A (1-x)^B in characteristic p.
 *
 * # Safety
 * `out` must be writable.
 */
enum HmStatus hm_sawin(uint64_t a,
                       uint64_t b,
                       uint64_t p,
                       enum HmSawinSide side,
                       struct HmDescriptor **out);

/**
 * Least primitive prime divisor of p^k - 1; `Inapplicable` in the Zsigmondy exceptions.
 *
 * # Safety
 * `out` must be writable.
 */
enum HmStatus hm_ppd(uint64_t p, uint32_t k, uint64_t *out);

/**
 * Landau's function g(n); `Cap` when the value does not fit in 64 bits.
 *
 * # Safety
 * `out` must be writable.
 */
enum HmStatus hm_landau(uint32_t n, uint64_t *out);

/**
 * Runs a command-line invocation (`argv[0]` is the program name) and returns the JSON
 * report. When a check inside the command disagrees the report is still written and the
 * call returns `Validation`.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings; `out` must be writable.
 */
enum HmStatus hm_command(const char *const *argv, size_t argc, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERMONO_H */
