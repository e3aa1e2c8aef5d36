#ifndef KDESIGN_H
#define KDESIGN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `Ok`..`Unknown` match the command-line exit codes.
 */
typedef enum KdStatus {
  KdStatus_Ok = 0,
  /**
   * The question was answered in the negative (uncompletable, invalid
   * certificate, not divisible, ...).
   */
  KdStatus_Negative = 1,
  KdStatus_Invalid = 2,
  /**
   * Search budget ran out before an answer was found.
   */
  KdStatus_Unknown = 3,
  KdStatus_NullPointer = 4,
  KdStatus_Panic = 5,
} KdStatus;

/**
 * Opaque partial design.
 */
typedef struct KdDesign KdDesign;

/**
 * Opaque graph.
 */
typedef struct KdGraph KdGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last non-`Ok` status on this thread, or null. Valid
 * until the next call into this library on the same thread.
 */
const char *kd_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or came from this library and has not been freed.
 */
void kd_string_free(char *s);

/**
 * Parses `{"n","k","blocks"}` into a new design handle. The design is not
 * validated; see [`kd_design_validate`].
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum KdStatus kd_design_from_json(const char *json, struct KdDesign **out);

/**
 * # Safety
 * `d` is null or a handle from [`kd_design_from_json`] not yet freed.
 */
void kd_design_free(struct KdDesign *d);

/**
 * `Ok` when every block has `k` distinct in-range points and no pair is
 * covered twice, otherwise `Negative` with the violation in the last error.
 *
 * # Safety
 * `d` is a live design handle.
 */
enum KdStatus kd_design_validate(const struct KdDesign *d);

/**
 * # Safety
 * `d` is a live design handle; `out` is writable.
 */
enum KdStatus kd_design_to_json(const struct KdDesign *d, char **out);

/**
 * Graph of the pairs no block covers.
 *
 * # Safety
 * `d` is a live design handle; `out` is writable.
 */
enum KdStatus kd_design_leave(const struct KdDesign *d, struct KdGraph **out);

/**
 * Parses `{"n","edges"}` into a new graph handle.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum KdStatus kd_graph_from_json(const char *json, struct KdGraph **out);

/**
 * # Safety
 * `g` is null or a graph handle not yet freed.
 */
void kd_graph_free(struct KdGraph *g);

/**
 * # Safety
 * `g` is a live graph handle; `out` is writable.
 */
enum KdStatus kd_graph_to_json(const struct KdGraph *g, char **out);

/**
 * `Ok` if the edge count is a multiple of `C(k,2)` and every degree a
 * multiple of `k−1`, else `Negative`.
 *
 * # Safety
 * `g` is a live graph handle.
 */
enum KdStatus kd_graph_is_divisible(const struct KdGraph *g, uint32_t k);

/**
 * Completes a design. On `Ok`, `Negative` or `Unknown` the JSON result is
 * written to `out` in the same form the command line prints.
 *
 * # Safety
 * `d` is a live design handle; `out` is writable.
 */
enum KdStatus kd_complete_design(const struct KdDesign *d,
                                 uint64_t budget,
                                 uint32_t threads,
                                 char **out);

/**
 * `K_k`-decomposes a graph. Output as for [`kd_complete_design`].
 *
 * # Safety
 * `g` is a live graph handle; `out` is writable.
 */
enum KdStatus kd_decompose(const struct KdGraph *g,
                           uint32_t k,
                           uint64_t budget,
                           uint32_t threads,
                           char **out);

/**
 * `Ok` if the certificate proves the design uncompletable, `Negative` if
 * it does not apply.
 *
 * # Safety
 * `d` is a live design handle; `cert_json` is a NUL-terminated string.
 */
enum KdStatus kd_design_verify_certificate(const struct KdDesign *d, const char *cert_json);

/**
 * `Ok` if the certificate proves the graph has no `K_k`-decomposition,
 * `Negative` if it does not apply.
 *
 * # Safety
 * `g` is a live graph handle; `cert_json` is a NUL-terminated string.
 */
enum KdStatus kd_graph_verify_certificate(const struct KdGraph *g,
                                          uint32_t k,
                                          const char *cert_json);

/**
 * Bound values for one `(n, k)` as a JSON object.
 *
 * # Safety
 * `out` is writable.
 */
enum KdStatus kd_bounds_json(uint32_t n, uint32_t k, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KDESIGN_H */
