/* C interface for the tunnel-atlas library. Generated by cbindgen; do not edit. */

#ifndef TUNNEL_ATLAS_H
#define TUNNEL_ATLAS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes for every fallible call.
 */
typedef enum TaStatus {
  TA_STATUS_OK = 0,
  TA_STATUS_NULL_ARGUMENT = 1,
  TA_STATUS_INVALID_UTF8 = 2,
  TA_STATUS_PARSE_ERROR = 3,
  TA_STATUS_NOT_REGULAR = 4,
  TA_STATUS_OUT_OF_RANGE = 5,
  TA_STATUS_NOT_COPRIME = 6,
  TA_STATUS_TRIVIAL_KNOT = 7,
  TA_STATUS_CAP_EXCEEDED = 8,
  TA_STATUS_INDEX_OUT_OF_BOUNDS = 9,
} TaStatus;

/**
 * Opaque list of bridge-number candidates with their seed pairs.
 */
typedef struct TaBridgeSet TaBridgeSet;

/**
 * Opaque result of an exhaustive extremal search.
 */
typedef struct TaSearchReport TaSearchReport;

/**
 * Opaque middle-tunnel invariant table of a torus knot.
 */
typedef struct TaTorusTable TaTorusTable;

/**
 * Opaque iteration trace of the Fibonacci function.
 */
typedef struct TaTrace TaTrace;

/**
 * Summary invariants of a cabling word.
 */
typedef struct TaProfile {
  uint64_t cabling_count;
  uint64_t semisimple_count;
  uint64_t depth;
  bool regular;
} TaProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null after a
 * success. The pointer stays valid until the next call on the thread.
 */
const char *ta_last_error(void);

/**
 * Releases a string returned by any `ta_` function. Null is a no-op.
 *
 * # Safety
 * `s` must have been returned by this library and not freed before.
 */
void ta_string_free(char *s);

/**
 * Profile (cabling count, semisimple count, depth, regularity) of a
 * binary word or step sequence.
 *
 * # Safety
 * `input` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum TaStatus ta_path_profile(const char *input, struct TaProfile *out);

/**
 * Converts either encoding of a principal path to its step sequence.
 *
 * # Safety
 * `input` must be a NUL-terminated string; `out` receives a string to be
 * released with `ta_string_free`.
 */
enum TaStatus ta_path_to_steps(const char *input, char **out);

/**
 * Converts either encoding of a principal path to its binary word.
 *
 * # Safety
 * As for `ta_path_to_steps`.
 */
enum TaStatus ta_path_to_word(const char *input, char **out);

/**
 * F(a, b) for a regular word; seeds and result are decimal strings.
 *
 * # Safety
 * All pointers must be valid; the result string is released with
 * `ta_string_free`.
 */
enum TaStatus ta_fibonacci_value(const char *input, const char *a, const char *b, char **out);

/**
 * Full iteration trace of F(a, b) as an opaque handle.
 *
 * # Safety
 * As for `ta_fibonacci_value`; the handle is released with
 * `ta_trace_free`.
 */
enum TaStatus ta_fibonacci_trace_new(const char *input,
                                     const char *a,
                                     const char *b,
                                     struct TaTrace **out);

/**
 * Number of entries in a trace; 0 for null.
 *
 * # Safety
 * `trace` must be null or a live handle.
 */
size_t ta_trace_len(const struct TaTrace *trace);

/**
 * One trace entry as a decimal string.
 *
 * # Safety
 * `trace` must be a live handle from `ta_fibonacci_trace_new`.
 */
enum TaStatus ta_trace_value(const struct TaTrace *trace, size_t index, char **out);

/**
 * # Safety
 * `trace` must come from `ta_fibonacci_trace_new` and not be used again.
 */
void ta_trace_free(struct TaTrace *trace);

/**
 * The 2m-2 candidate bridge numbers of a regular word as an opaque list.
 *
 * # Safety
 * `input` must be a NUL-terminated string; the handle is released with
 * `ta_bridge_set_free`.
 */
enum TaStatus ta_bridge_set_new(const char *input, struct TaBridgeSet **out);

/**
 * Number of candidates in a bridge set; 0 for null.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t ta_bridge_set_len(const struct TaBridgeSet *set);

/**
 * # Safety
 * `set` must be a live handle from `ta_bridge_set_new`.
 */
enum TaStatus ta_bridge_set_value(const struct TaBridgeSet *set, size_t index, char **out);

/**
 * Seed pair (a, b) that produces the candidate at `index`.
 *
 * # Safety
 * `set` must be a live handle; `a` and `b` must be valid pointers.
 */
enum TaStatus ta_bridge_set_seed(const struct TaBridgeSet *set,
                                 size_t index,
                                 uint64_t *a,
                                 uint64_t *b);

/**
 * # Safety
 * `set` must come from `ta_bridge_set_new` and not be used again.
 */
void ta_bridge_set_free(struct TaBridgeSet *set);

/**
 * Maximum bridge number for n cablings with semisimple count m.
 *
 * # Safety
 * `out` receives a string to be released with `ta_string_free`.
 */
enum TaStatus ta_max_bridge(uint64_t cabling_count, uint64_t semisimple_count, char **out);

/**
 * Bridge-number range [2, n+1] of simple and semisimple tunnels.
 *
 * # Safety
 * Both out parameters receive strings released with `ta_string_free`.
 */
enum TaStatus ta_semisimple_range(uint64_t cabling_count, char **out_low, char **out_high);

/**
 * Exact check of the closed form for the minimum bridge numbers up to the
 * given depth.
 */
bool ta_closed_form_check(uint64_t max_depth);

/**
 * Middle-tunnel invariant table of the (p, q) torus knot. Parameters are
 * normalized internally; the mirror flag is recorded on the handle and
 * negates reported slopes.
 *
 * # Safety
 * `out` receives a handle released with `ta_torus_table_free`.
 */
enum TaStatus ta_torus_table_new(int64_t p, int64_t q, struct TaTorusTable **out);

/**
 * Whether the input parameters described the mirror image.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
bool ta_torus_table_mirrored(const struct TaTorusTable *table);

/**
 * Depth of the middle tunnel; 0 for null.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
uint64_t ta_torus_table_depth(const struct TaTorusTable *table);

/**
 * Number of cablings (table rows); 0 for null.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
uint64_t ta_torus_table_cabling_count(const struct TaTorusTable *table);

/**
 * Binary word of the cabling sequence.
 *
 * # Safety
 * `table` must be a live handle from `ta_torus_table_new`.
 */
enum TaStatus ta_torus_table_word(const struct TaTorusTable *table, char **out);

/**
 * Step sequence of the cabling sequence.
 *
 * # Safety
 * As for `ta_torus_table_word`.
 */
enum TaStatus ta_torus_table_steps(const struct TaTorusTable *table, char **out);

/**
 * Continued fraction of p/q, rendered like [1,2,2,2,2].
 *
 * # Safety
 * As for `ta_torus_table_word`.
 */
enum TaStatus ta_torus_table_cf(const struct TaTorusTable *table, char **out);

/**
 * Intermediate torus knot produced by cabling `index`.
 *
 * # Safety
 * `table` must be a live handle; both out parameters receive strings.
 */
enum TaStatus ta_torus_table_knot(const struct TaTorusTable *table,
                                  size_t index,
                                  char **out_p,
                                  char **out_q);

/**
 * Slope invariant of cabling `index`, sign-adjusted for mirrored input:
 * "1/5" or "-1/5" for the first cabling, a signed odd integer after it.
 *
 * # Safety
 * As for `ta_torus_table_knot`.
 */
enum TaStatus ta_torus_table_slope(const struct TaTorusTable *table, size_t index, char **out);

/**
 * Running product matrix of cabling `index`, rendered like [[a,b],[c,d]].
 *
 * # Safety
 * As for `ta_torus_table_knot`.
 */
enum TaStatus ta_torus_table_matrix(const struct TaTorusTable *table, size_t index, char **out);

/**
 * # Safety
 * `table` must come from `ta_torus_table_new` and not be used again.
 */
void ta_torus_table_free(struct TaTorusTable *table);

/**
 * Exhaustive minimum of F(2,2) over regular words of the given depth and
 * length at most `max_length`; `cap` bounds the enumeration.
 *
 * # Safety
 * `out` receives a handle released with `ta_search_report_free`.
 */
enum TaStatus ta_min_bridge_search(size_t max_length,
                                   uint64_t depth,
                                   size_t cap,
                                   struct TaSearchReport **out);

/**
 * Exhaustive maximum of F(m, m+1) over words of length n-2 with
 * semisimple count m.
 *
 * # Safety
 * As for `ta_min_bridge_search`.
 */
enum TaStatus ta_max_bridge_search(uint64_t cabling_count,
                                   uint64_t semisimple_count,
                                   size_t cap,
                                   struct TaSearchReport **out);

/**
 * Extremal value found by a search, as a decimal string.
 *
 * # Safety
 * `report` must be a live handle.
 */
enum TaStatus ta_search_report_value(const struct TaSearchReport *report, char **out);

/**
 * Number of witnesses attaining the extremal value; 0 for null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
size_t ta_search_report_witness_count(const struct TaSearchReport *report);

/**
 * One witness word attaining the extremal value.
 *
 * # Safety
 * `report` must be a live handle.
 */
enum TaStatus ta_search_report_witness(const struct TaSearchReport *report,
                                       size_t index,
                                       char **out);

/**
 * Total number of words the search enumerated; 0 for null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uint64_t ta_search_report_words_examined(const struct TaSearchReport *report);

/**
 * # Safety
 * `report` must come from a search constructor and not be used again.
 */
void ta_search_report_free(struct TaSearchReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TUNNEL_ATLAS_H */
