#ifndef SCORE_FFI_H
#define SCORE_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ScoreStatus {
  SCORE_STATUS_OK = 0,
  SCORE_STATUS_NULL_POINTER = 1,
  SCORE_STATUS_INVALID_UTF8 = 2,
  SCORE_STATUS_PARSE_ERROR = 3,
  SCORE_STATUS_INVALID_ARGUMENT = 4,
  SCORE_STATUS_DISCONNECTED = 5,
  SCORE_STATUS_NUMERICAL_FAILURE = 6,
  SCORE_STATUS_BUFFER_TOO_SMALL = 7,
  SCORE_STATUS_UNLABELED = 8,
  SCORE_STATUS_PANIC = 9,
} ScoreStatus;

/**
 * Opaque graph handle.
 */
typedef struct ScoreGraph ScoreGraph;

/**
 * Pipeline settings; start from [`score_config_score`] or
 * [`score_config_score_plus`] and adjust fields.
 */
typedef struct ScoreConfig {
  size_t k;
  bool pre_pca;
  double delta;
  bool weight_by_eigenvalue;
  bool extra_vector;
  double t;
  bool threshold_ratios;
  bool post_pca;
  size_t kmeans_restarts;
  uint64_t seed;
} ScoreConfig;

/**
 * Summary of one detection run.
 */
typedef struct ScoreDetection {
  /**
   * Eigenvectors used: K or K + 1.
   */
  size_t m_used;
  /**
   * `1 - lambda_{K+1} / lambda_K`.
   */
  double gap;
  double lambda_k;
  double lambda_k_plus_1;
  double kmeans_objective;
  size_t nonempty_clusters;
} ScoreDetection;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *score_last_error_message(void);

/**
 * Parse an edge list, with optional `node<TAB>label` text (may be NULL).
 *
 * # Safety
 * `edges` and, when non-null, `labels` must be NUL-terminated strings;
 * `out` must be a valid pointer to writable storage.
 */
enum ScoreStatus score_graph_from_edge_list(const char *edges,
                                            const char *labels,
                                            struct ScoreGraph **out);

/**
 * Parse a GML document.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ScoreStatus score_graph_from_gml(const char *text, struct ScoreGraph **out);

/**
 * Release a handle. NULL is ignored.
 *
 * # Safety
 * `g` must come from this library and not have been freed already.
 */
void score_graph_free(struct ScoreGraph *g);

/**
 * Node count, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t score_graph_node_count(const struct ScoreGraph *g);

/**
 * Edge count, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t score_graph_edge_count(const struct ScoreGraph *g);

/**
 * Number of ground-truth classes; 0 when unlabeled or NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t score_graph_class_count(const struct ScoreGraph *g);

/**
 * Copy the 1-based ground-truth labels into `out[0..len]`.
 *
 * # Safety
 * `g` must be a live handle and `out` must hold `len` writable elements.
 */
enum ScoreStatus score_graph_truth_labels(const struct ScoreGraph *g, size_t *out, size_t len);

/**
 * New handle holding the largest connected component of `g`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum ScoreStatus score_graph_largest_component(const struct ScoreGraph *g, struct ScoreGraph **out);

/**
 * Orthodox SCORE defaults for `k` communities.
 */
struct ScoreConfig score_config_score(size_t k);

/**
 * SCORE+ defaults for `k` communities: `(t, delta) = (0.1, 0.1)`, 100 restarts.
 */
struct ScoreConfig score_config_score_plus(size_t k);

/**
 * Run the pipeline. Labels (1-based) go to `labels[0..len]`; `summary` may
 * be NULL.
 *
 * # Safety
 * `g` and `config` must be valid; `labels` must hold `len` elements.
 */
enum ScoreStatus score_detect(const struct ScoreGraph *g,
                              const struct ScoreConfig *config,
                              size_t *labels,
                              size_t len,
                              struct ScoreDetection *summary);

/**
 * Minimum over relabelings of the estimate of the number of misclustered
 * nodes. Both arrays hold `n` labels starting at 1.
 *
 * # Safety
 * `est` and `truth` must each hold `n` readable elements.
 */
enum ScoreStatus score_error_rate(const size_t *est,
                                  const size_t *truth,
                                  size_t n,
                                  size_t *count,
                                  double *rate);

/**
 * `1 - lambda_{K+1} / lambda_K` of the adjacency matrix, or of `L_delta`
 * when `laplacian` is set.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum ScoreStatus score_gap_statistic(const struct ScoreGraph *g,
                                     bool laplacian,
                                     double delta,
                                     size_t k,
                                     double *out);

/**
 * Sample one replicate of simulation experiment 1 or 2.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ScoreStatus score_simulate(uint8_t experiment,
                                size_t n,
                                uint64_t seed,
                                bool literal_scale,
                                struct ScoreGraph **out);

/**
 * Library version as a static NUL-terminated string.
 */
const char *score_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCORE_FFI_H */
