#ifndef STCUT_H
#define STCUT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum StcStatus {
  STC_STATUS_OK = 0,
  STC_STATUS_NULL_ARGUMENT = 1,
  STC_STATUS_INVALID_UTF8 = 2,
  STC_STATUS_PARSE_ERROR = 3,
  STC_STATUS_PARAMETER_ERROR = 4,
  STC_STATUS_SOLVE_ERROR = 5,
  STC_STATUS_INTERNAL_ERROR = 6,
} StcStatus;

/**
 * Opaque graph handle.
 */
typedef struct StcGraph StcGraph;

/**
 * Opaque solve-result handle.
 */
typedef struct StcResult StcResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread; empty string if none.
 * Valid until the next failing call on the same thread.
 */
const char *stc_last_error(void);

/**
 * Parses the text graph format into a new graph handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum StcStatus stc_graph_parse(const char *text, struct StcGraph **out);

/**
 * # Safety
 * `g` must be null or a pointer from `stc_graph_parse`, not yet freed.
 */
void stc_graph_free(struct StcGraph *g);

/**
 * # Safety
 * `g` must be a valid graph handle.
 */
size_t stc_graph_n(const struct StcGraph *g);

/**
 * # Safety
 * `g` must be a valid graph handle.
 */
size_t stc_graph_m(const struct StcGraph *g);

/**
 * # Safety
 * `g` must be a valid graph handle.
 */
uint64_t stc_graph_max_weight(const struct StcGraph *g);

/**
 * Exhaustive minimum s-t cut value (small n only).
 *
 * # Safety
 * `g` must be a valid graph handle and `out_lambda` a valid pointer.
 */
enum StcStatus stc_exact_min_cut(const struct StcGraph *g,
                                 uint32_t s,
                                 uint32_t t,
                                 uint64_t *out_lambda);

/**
 * Runs the full pipeline over an adjacency-list oracle on the graph.
 * `eps` <= 0 selects the default rule min((nW)^{-1/3}, 1/4).
 *
 * # Safety
 * `g` must be a valid graph handle and `out` a valid pointer.
 */
enum StcStatus stc_solve(const struct StcGraph *g,
                         uint32_t s,
                         uint32_t t,
                         uint64_t seed,
                         double eps,
                         struct StcResult **out);

/**
 * # Safety
 * `r` must be null or a pointer from `stc_solve`, not yet freed.
 */
void stc_result_free(struct StcResult *r);

/**
 * # Safety
 * `r` must be a valid result handle.
 */
uint64_t stc_result_lambda(const struct StcResult *r);

/**
 * Number of vertices in the shore containing s.
 *
 * # Safety
 * `r` must be a valid result handle.
 */
size_t stc_result_shore_len(const struct StcResult *r);

/**
 * Copies up to `cap` shore vertices (ascending, 0-based) into `buf`;
 * returns the number copied.
 *
 * # Safety
 * `r` must be a valid result handle and `buf` writable for `cap` entries.
 */
size_t stc_result_shore(const struct StcResult *r, uint32_t *buf, size_t cap);

/**
 * Total modeled quantum queries charged during the solve.
 *
 * # Safety
 * `r` must be a valid result handle.
 */
uint64_t stc_result_modeled_queries(const struct StcResult *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STCUT_H */
