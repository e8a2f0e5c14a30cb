#ifndef TJKSS_H
#define TJKSS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TjkssStatus {
  TJKSS_STATUS_OK = 0,
  TJKSS_STATUS_NULL_POINTER = 1,
  TJKSS_STATUS_INVALID_UTF8 = 2,
  TJKSS_STATUS_PARSE_ERROR = 3,
  TJKSS_STATUS_INVALID_DIAGRAM = 4,
  TJKSS_STATUS_HAS_BARS = 5,
  TJKSS_STATUS_INVALID_ARGUMENT = 6,
  TJKSS_STATUS_PANIC = 7,
} TjkssStatus;

/**
 * Opaque diagram handle.
 */
typedef struct TjkssDiagram TjkssDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses diagram text. On success `*out` owns a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum TjkssStatus tjkss_diagram_parse(const char *text, struct TjkssDiagram **out);

/**
 * A seeded random diagram with crossings numbered from 1.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum TjkssStatus tjkss_diagram_random(size_t crossings,
                                      uint32_t bars,
                                      uint64_t seed,
                                      struct TjkssDiagram **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `d` must come from this library and not be used afterwards.
 */
void tjkss_diagram_free(struct TjkssDiagram *d);

/**
 * Number of real crossings; 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t tjkss_diagram_crossing_count(const struct TjkssDiagram *d);

/**
 * Diagram text; release with `tjkss_string_free`.
 *
 * # Safety
 * `d` must be a live handle and `out` a writable pointer.
 */
enum TjkssStatus tjkss_diagram_render(const struct TjkssDiagram *d, char **out);

/**
 * The double covering diagram as a new handle.
 *
 * # Safety
 * `d` must be a live handle and `out` a writable pointer.
 */
enum TjkssStatus tjkss_diagram_double_cover(const struct TjkssDiagram *d,
                                            struct TjkssDiagram **out);

/**
 * The mirror image s(D) as a new handle.
 *
 * # Safety
 * `d` must be a live handle and `out` a writable pointer.
 */
enum TjkssStatus tjkss_diagram_mirror(const struct TjkssDiagram *d, struct TjkssDiagram **out);

/**
 * The result of a seeded random walk of `steps` moves as a new handle.
 *
 * # Safety
 * `d` must be a live handle and `out` a writable pointer.
 */
enum TjkssStatus tjkss_diagram_walk(const struct TjkssDiagram *d,
                                    size_t steps,
                                    uint64_t seed,
                                    struct TjkssDiagram **out);

/**
 * The virtual invariant as polynomial text; raw unless `canonical`.
 *
 * # Safety
 * `d` must be a live handle and `out` a writable pointer.
 */
enum TjkssStatus tjkss_jkss(const struct TjkssDiagram *d, bool canonical, char **out);

/**
 * The twisted invariant as polynomial text; raw unless `canonical`.
 *
 * # Safety
 * `d` must be a live handle and `out` a writable pointer.
 */
enum TjkssStatus tjkss_twisted_jkss(const struct TjkssDiagram *d, bool canonical, char **out);

/**
 * Whether two polynomials in text form differ only by a power of x.
 *
 * # Safety
 * `a` and `b` must be NUL-terminated strings and `out` a writable pointer.
 */
enum TjkssStatus tjkss_poly_equal_up_to_x_power(const char *a, const char *b, bool *out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void tjkss_string_free(char *s);

/**
 * Message for the most recent failure on this thread, or an empty string.
 * Valid until the next call into the library on the same thread.
 */
const char *tjkss_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TJKSS_H */
