// Copyright 2026 The agsbm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the agsbm library.
 *
 * Conventions:
 *  - Every function returns an agsbm_status.  On failure a description is
 *    available from agsbm_last_error() (per thread, valid until the next
 *    call on that thread).
 *  - Objects are opaque handles released with their *_free function.
 *  - Strings returned through `char**` are owned by the caller and must be
 *    released with agsbm_string_free().
 *  - `options_json` arguments may be NULL or "" for defaults.
 *  - `format` arguments are "json" (default when NULL) or "csv".
 */

#ifndef AGSBM_AGSBM_H_
#define AGSBM_AGSBM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(AGSBM_BUILDING_LIBRARY)
#define AGSBM_API __attribute__((visibility("default")))
#else
#define AGSBM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum agsbm_status {
  AGSBM_OK = 0,
  AGSBM_ERR_PARAM = 2,    /* invalid argument or configuration */
  AGSBM_ERR_PIPELINE = 3, /* statistical failure of a pipeline stage */
  AGSBM_ERR_IO = 4,       /* unreadable input or unwritable output */
  AGSBM_ERR_INTERNAL = 5
} agsbm_status;

typedef struct agsbm_graph agsbm_graph;
typedef struct agsbm_labels agsbm_labels;

AGSBM_API const char* agsbm_version(void);
AGSBM_API const char* agsbm_last_error(void);
AGSBM_API void agsbm_string_free(char* s);

/* ---- graphs ---------------------------------------------------------- */

/* `edges` holds 2*num_edges vertex ids (u0, v0, u1, v1, ...). */
AGSBM_API agsbm_status agsbm_graph_from_edges(size_t num_vertices,
                                              const uint32_t* edges,
                                              size_t num_edges,
                                              agsbm_graph** out);
AGSBM_API agsbm_status agsbm_graph_read(const char* path, agsbm_graph** out);
AGSBM_API agsbm_status agsbm_graph_write(const agsbm_graph* g, const char* path);
AGSBM_API size_t agsbm_graph_num_vertices(const agsbm_graph* g);
AGSBM_API size_t agsbm_graph_num_edges(const agsbm_graph* g);
AGSBM_API void agsbm_graph_free(agsbm_graph* g);

/* Samples an SBM.  `params_json` is {"p": [...], "Q": [[...]], "regime":
 * "constant"|"logarithmic", "scale": s} or {"k", "alpha", "beta", ...}.
 * `labels_out` may be NULL. */
AGSBM_API agsbm_status agsbm_sample_sbm(const char* params_json, size_t n,
                                        uint64_t seed, agsbm_graph** graph_out,
                                        agsbm_labels** labels_out);

/* Reads a GML network (e.g. political blogs); `labels_out` may be NULL. */
AGSBM_API agsbm_status agsbm_read_gml(const char* path, agsbm_graph** graph_out,
                                      agsbm_labels** labels_out);

/* ---- labels ---------------------------------------------------------- */

AGSBM_API agsbm_status agsbm_labels_create(const int32_t* labels, size_t n,
                                           agsbm_labels** out);
AGSBM_API agsbm_status agsbm_labels_read(const char* path, agsbm_labels** out);
AGSBM_API agsbm_status agsbm_labels_write(const agsbm_labels* labels,
                                          const char* path);
AGSBM_API size_t agsbm_labels_size(const agsbm_labels* labels);
AGSBM_API int32_t agsbm_labels_k(const agsbm_labels* labels);
/* Copies the labels into `out`, which must hold agsbm_labels_size() values. */
AGSBM_API agsbm_status agsbm_labels_copy(const agsbm_labels* labels, int32_t* out);
AGSBM_API void agsbm_labels_free(agsbm_labels* labels);

/* ---- pipelines ------------------------------------------------------- */

/* Options: {"threads", "c", "num_probes", "r", "r_prime",
 * "work_budget_factor"}. */
AGSBM_API agsbm_status agsbm_estimate_eigenvalues(const agsbm_graph* g,
                                                  const char* options_json,
                                                  uint64_t seed,
                                                  const char* format,
                                                  char** result_out);

/* Partial recovery.  Options: {"threads", "m", "T", "eigen_c", "policy":
 * "best-effort"|"strict", "r", "r_prime"}.  Returns AGSBM_ERR_PIPELINE
 * (with `result_out` still filled) when recovery fails; `labels_out` may
 * be NULL and is set only on success. */
AGSBM_API agsbm_status agsbm_partial_recovery(const agsbm_graph* g, double delta,
                                              const char* options_json,
                                              uint64_t seed, const char* format,
                                              agsbm_labels** labels_out,
                                              char** result_out);

/* Exact recovery of the finest partition.  Options: {"threads", "gamma",
 * "regime", plus the partial-recovery options}.  `groups_out` may be NULL. */
AGSBM_API agsbm_status agsbm_exact_recovery(const agsbm_graph* g, double delta,
                                            const char* options_json,
                                            uint64_t seed, const char* format,
                                            agsbm_labels** groups_out,
                                            char** result_out);

/* `regime` is "constant" or "logarithmic". */
AGSBM_API agsbm_status agsbm_estimate_params(const agsbm_graph* g,
                                             const agsbm_labels* labels,
                                             const char* regime,
                                             const char* format,
                                             char** result_out);

/* `accuracy_out` and `result_out` may each be NULL. */
AGSBM_API agsbm_status agsbm_agreement(const agsbm_labels* truth,
                                       const agsbm_labels* inferred,
                                       double* accuracy_out, const char* format,
                                       char** result_out);

/* Two-community real-data mode.  Options: {"threads", "r", "r_prime",
 * "trials", "average_pairs"}.  `labels_out` may be NULL. */
AGSBM_API agsbm_status agsbm_realdata(const agsbm_graph* g,
                                      const char* options_json, uint64_t seed,
                                      const char* format,
                                      agsbm_labels** labels_out,
                                      char** result_out);

/* Runs a benchmark sweep described by `config_json`; the result is CSV or a
 * JSON array of rows. */
AGSBM_API agsbm_status agsbm_run_sweep(const char* config_json,
                                       const char* format, char** result_out);

/* Exact eigenvalues of PQ and the finest partition of a model. */
AGSBM_API agsbm_status agsbm_model_summary(const char* params_json,
                                           const char* format,
                                           char** result_out);

AGSBM_API agsbm_status agsbm_ch_divergence(const double* mu, const double* nu,
                                           size_t k, double* value_out,
                                           double* t_star_out);

#ifdef __cplusplus
}
#endif

#endif /* AGSBM_AGSBM_H_ */
