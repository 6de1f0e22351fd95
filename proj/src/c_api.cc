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

#include "agsbm/agsbm.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "agsbm/degree_profiling.h"
#include "agsbm/errors.h"
#include "agsbm/eval.h"
#include "agsbm/graph.h"
#include "agsbm/io.h"
#include "agsbm/realdata.h"
#include "agsbm/sbm.h"
#include "agsbm/serialize.h"
#include "agsbm/spectral.h"
#include "agsbm/sphere_comparison.h"
#include "agsbm/sweep.h"

struct agsbm_graph {
  agsbm::Graph graph;
};

struct agsbm_labels {
  agsbm::CommunityLabels labels;
};

namespace {

using agsbm::Json;

thread_local std::string last_error;

agsbm_status Fail(agsbm_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
agsbm_status Guard(Body&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const agsbm::ParameterError& err) {
    return Fail(AGSBM_ERR_PARAM, err.what());
  } catch (const agsbm::IoError& err) {
    return Fail(AGSBM_ERR_IO, err.what());
  } catch (const agsbm::PipelineError& err) {
    return Fail(AGSBM_ERR_PIPELINE, err.what());
  } catch (const agsbm::EstimationFailure& err) {
    return Fail(AGSBM_ERR_PIPELINE, err.what());
  } catch (const agsbm::InfeasibleHyperParameters& err) {
    return Fail(AGSBM_ERR_PIPELINE, err.what());
  } catch (const nlohmann::json::exception& err) {
    return Fail(AGSBM_ERR_PARAM, std::string("invalid JSON: ") + err.what());
  } catch (const std::exception& err) {
    return Fail(AGSBM_ERR_INTERNAL, err.what());
  } catch (...) {
    return Fail(AGSBM_ERR_INTERNAL, "unknown error");
  }
}

void Require(const void* pointer, const char* name) {
  if (pointer == nullptr) throw agsbm::ParameterError(std::string(name) + " must not be NULL");
}

Json Options(const char* text) {
  if (text == nullptr || *text == '\0') return Json::object();
  Json json = Json::parse(text);
  if (!json.is_object()) throw agsbm::ParameterError("options must be a JSON object");
  return json;
}

bool IsCsv(const char* format) {
  if (format == nullptr || std::strcmp(format, "json") == 0) return false;
  if (std::strcmp(format, "csv") == 0) return true;
  throw agsbm::ParameterError(std::string("unknown format '") + format + "'");
}

char* Copy(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void Emit(char** out, const Json& json, const char* format) {
  if (out != nullptr) *out = Copy(agsbm::Render(json, IsCsv(format)));
}

agsbm::DepthOverrides Depths(const Json& options) {
  agsbm::DepthOverrides depths;
  if (options.contains("r")) depths.r = options.at("r").get<int>();
  if (options.contains("r_prime")) depths.r_prime = options.at("r_prime").get<int>();
  return depths;
}

agsbm::SphereComparisonOptions PartialOptions(const Json& options) {
  agsbm::SphereComparisonOptions out;
  out.m = options.value("m", 0);
  out.T = options.value("T", 0);
  out.eigen_c = options.value("eigen_c", 0.1);
  const std::string policy = options.value("policy", std::string("best-effort"));
  if (policy == "strict") {
    out.policy = agsbm::HyperParamPolicy::kStrict;
  } else if (policy == "best-effort") {
    out.policy = agsbm::HyperParamPolicy::kBestEffort;
  } else {
    throw agsbm::ParameterError("policy must be 'strict' or 'best-effort'");
  }
  out.depths = Depths(options);
  out.exec.threads = options.value("threads", 1);
  return out;
}

}  // namespace

extern "C" {

const char* agsbm_version(void) { return "1.0.0"; }

const char* agsbm_last_error(void) { return last_error.c_str(); }

void agsbm_string_free(char* s) { std::free(s); }

agsbm_status agsbm_graph_from_edges(size_t num_vertices, const uint32_t* edges,
                                    size_t num_edges, agsbm_graph** out) {
  return Guard([&] {
    Require(out, "out");
    if (num_edges > 0) Require(edges, "edges");
    std::vector<agsbm::Edge> list(num_edges);
    for (size_t i = 0; i < num_edges; ++i) list[i] = {edges[2 * i], edges[2 * i + 1]};
    *out = new agsbm_graph{agsbm::Graph::FromEdges(num_vertices, std::move(list))};
    return AGSBM_OK;
  });
}

agsbm_status agsbm_graph_read(const char* path, agsbm_graph** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new agsbm_graph{agsbm::ReadEdgeListFile(path)};
    return AGSBM_OK;
  });
}

agsbm_status agsbm_graph_write(const agsbm_graph* g, const char* path) {
  return Guard([&] {
    Require(g, "graph");
    Require(path, "path");
    agsbm::WriteEdgeListFile(g->graph, path);
    return AGSBM_OK;
  });
}

size_t agsbm_graph_num_vertices(const agsbm_graph* g) {
  return g == nullptr ? 0 : g->graph.num_vertices();
}

size_t agsbm_graph_num_edges(const agsbm_graph* g) {
  return g == nullptr ? 0 : g->graph.num_edges();
}

void agsbm_graph_free(agsbm_graph* g) { delete g; }

agsbm_status agsbm_sample_sbm(const char* params_json, size_t n, uint64_t seed,
                              agsbm_graph** graph_out, agsbm_labels** labels_out) {
  return Guard([&] {
    Require(params_json, "params_json");
    Require(graph_out, "graph_out");
    const agsbm::SbmParams params = agsbm::SbmParamsFromJson(Json::parse(params_json));
    auto [graph, labels] = agsbm::SampleSbm(params, n, seed);
    auto g = std::make_unique<agsbm_graph>(agsbm_graph{std::move(graph)});
    if (labels_out != nullptr) *labels_out = new agsbm_labels{std::move(labels)};
    *graph_out = g.release();
    return AGSBM_OK;
  });
}

agsbm_status agsbm_read_gml(const char* path, agsbm_graph** graph_out,
                            agsbm_labels** labels_out) {
  return Guard([&] {
    Require(path, "path");
    Require(graph_out, "graph_out");
    agsbm::LabelledGraph data = agsbm::ReadGmlFile(path);
    auto g = std::make_unique<agsbm_graph>(agsbm_graph{std::move(data.graph)});
    if (labels_out != nullptr) *labels_out = new agsbm_labels{std::move(data.labels)};
    *graph_out = g.release();
    return AGSBM_OK;
  });
}

agsbm_status agsbm_labels_create(const int32_t* labels, size_t n, agsbm_labels** out) {
  return Guard([&] {
    Require(out, "out");
    if (n > 0) Require(labels, "labels");
    std::vector<int> values(labels, labels + n);
    for (int v : values) {
      if (v < 0) throw agsbm::ParameterError("labels must be nonnegative");
    }
    *out = new agsbm_labels{agsbm::CommunityLabels::FromVector(std::move(values))};
    return AGSBM_OK;
  });
}

agsbm_status agsbm_labels_read(const char* path, agsbm_labels** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new agsbm_labels{agsbm::ReadLabelsFile(path)};
    return AGSBM_OK;
  });
}

agsbm_status agsbm_labels_write(const agsbm_labels* labels, const char* path) {
  return Guard([&] {
    Require(labels, "labels");
    Require(path, "path");
    agsbm::WriteLabelsFile(labels->labels, path);
    return AGSBM_OK;
  });
}

size_t agsbm_labels_size(const agsbm_labels* labels) {
  return labels == nullptr ? 0 : labels->labels.size();
}

int32_t agsbm_labels_k(const agsbm_labels* labels) {
  return labels == nullptr ? 0 : labels->labels.k;
}

agsbm_status agsbm_labels_copy(const agsbm_labels* labels, int32_t* out) {
  return Guard([&] {
    Require(labels, "labels");
    if (labels->labels.size() > 0) Require(out, "out");
    std::copy(labels->labels.labels.begin(), labels->labels.labels.end(), out);
    return AGSBM_OK;
  });
}

void agsbm_labels_free(agsbm_labels* labels) { delete labels; }

agsbm_status agsbm_estimate_eigenvalues(const agsbm_graph* g, const char* options_json,
                                        uint64_t seed, const char* format,
                                        char** result_out) {
  return Guard([&] {
    Require(g, "graph");
    const Json options = Options(options_json);
    agsbm::ImprovedEigenOptions eig;
    eig.num_probes = options.value("num_probes", 0);
    eig.work_budget_factor = options.value("work_budget_factor", 4.0);
    eig.depths = Depths(options);
    eig.exec.threads = options.value("threads", 1);
    const double c = options.value("c", 0.1);
    IsCsv(format);
    const agsbm::EigenEstimate est = agsbm::ImprovedEigenvalueApprox(g->graph, c, seed, eig);
    Emit(result_out, agsbm::ToJson(est), format);
    return AGSBM_OK;
  });
}

agsbm_status agsbm_partial_recovery(const agsbm_graph* g, double delta,
                                    const char* options_json, uint64_t seed,
                                    const char* format, agsbm_labels** labels_out,
                                    char** result_out) {
  return Guard([&] {
    Require(g, "graph");
    const agsbm::SphereComparisonOptions options = PartialOptions(Options(options_json));
    IsCsv(format);
    agsbm::ClassificationResult result =
        agsbm::AgnosticSphereComparison(g->graph, delta, seed, options);
    Emit(result_out, agsbm::ToJson(result), format);
    if (!result.ok()) return Fail(AGSBM_ERR_PIPELINE, "partial recovery: " + result.failure_reason);
    if (labels_out != nullptr) *labels_out = new agsbm_labels{std::move(result.labels)};
    return AGSBM_OK;
  });
}

agsbm_status agsbm_exact_recovery(const agsbm_graph* g, double delta,
                                  const char* options_json, uint64_t seed,
                                  const char* format, agsbm_labels** groups_out,
                                  char** result_out) {
  return Guard([&] {
    Require(g, "graph");
    const Json json = Options(options_json);
    agsbm::DegreeProfilingOptions options;
    options.partial = PartialOptions(json);
    options.exec = options.partial.exec;
    if (json.contains("gamma")) options.gamma = json.at("gamma").get<double>();
    options.regime = agsbm::ParseRegime(json.value("regime", std::string("logarithmic")));
    IsCsv(format);
    agsbm::DegreeProfilingResult result =
        agsbm::AgnosticDegreeProfiling(g->graph, delta, seed, options);
    Emit(result_out, agsbm::ToJson(result), format);
    if (groups_out != nullptr) *groups_out = new agsbm_labels{std::move(result.groups)};
    return AGSBM_OK;
  });
}

agsbm_status agsbm_estimate_params(const agsbm_graph* g, const agsbm_labels* labels,
                                   const char* regime, const char* format,
                                   char** result_out) {
  return Guard([&] {
    Require(g, "graph");
    Require(labels, "labels");
    const agsbm::Regime r = agsbm::ParseRegime(regime == nullptr ? "logarithmic" : regime);
    IsCsv(format);
    const agsbm::ParamEstimate est = agsbm::EstimateParams(g->graph, labels->labels, r);
    Json json = agsbm::ToJson(est);
    json["finest_partition"] = agsbm::ToJson(agsbm::FinestPartition(est));
    Emit(result_out, json, format);
    return AGSBM_OK;
  });
}

agsbm_status agsbm_agreement(const agsbm_labels* truth, const agsbm_labels* inferred,
                             double* accuracy_out, const char* format, char** result_out) {
  return Guard([&] {
    Require(truth, "truth");
    Require(inferred, "inferred");
    IsCsv(format);
    const agsbm::AgreementReport report = agsbm::Agreement(truth->labels, inferred->labels);
    if (accuracy_out != nullptr) *accuracy_out = report.accuracy;
    Emit(result_out, agsbm::ToJson(report), format);
    return AGSBM_OK;
  });
}

agsbm_status agsbm_realdata(const agsbm_graph* g, const char* options_json, uint64_t seed,
                            const char* format, agsbm_labels** labels_out,
                            char** result_out) {
  return Guard([&] {
    Require(g, "graph");
    const Json json = Options(options_json);
    agsbm::RealDataOptions options;
    options.r = json.value("r", 1);
    options.r_prime = json.value("r_prime", 1);
    options.trials = json.value("trials", 40);
    options.average_pairs = json.value("average_pairs", 2000);
    options.exec.threads = json.value("threads", 1);
    IsCsv(format);
    agsbm::RealDataResult result = agsbm::RealDataTwoCommunity(g->graph, seed, options);
    Emit(result_out, agsbm::ToJson(result), format);
    if (!result.consensus.ok()) {
      return Fail(AGSBM_ERR_PIPELINE, "real-data mode: " + result.consensus.failure_reason);
    }
    if (labels_out != nullptr) *labels_out = new agsbm_labels{std::move(result.consensus.labels)};
    return AGSBM_OK;
  });
}

agsbm_status agsbm_run_sweep(const char* config_json, const char* format, char** result_out) {
  return Guard([&] {
    Require(config_json, "config_json");
    const bool csv = IsCsv(format);
    const agsbm::SweepConfig config = agsbm::ParseSweepConfig(Json::parse(config_json));
    const agsbm::SweepResult result = agsbm::RunSweep(config);
    if (result_out != nullptr) {
      *result_out = Copy(csv ? agsbm::SweepCsv(result, config)
                             : agsbm::SweepJson(result, config).dump(2) + "\n");
    }
    return AGSBM_OK;
  });
}

agsbm_status agsbm_model_summary(const char* params_json, const char* format,
                                 char** result_out) {
  return Guard([&] {
    Require(params_json, "params_json");
    IsCsv(format);
    const agsbm::SbmParams params = agsbm::SbmParamsFromJson(Json::parse(params_json));
    Json json;
    json["spectrum"] = agsbm::ToJson(agsbm::ComputeExactSpectrum(params));
    json["finest_partition"] = agsbm::ToJson(agsbm::FinestPartition(params));
    Emit(result_out, json, format);
    return AGSBM_OK;
  });
}

agsbm_status agsbm_ch_divergence(const double* mu, const double* nu, size_t k,
                                 double* value_out, double* t_star_out) {
  return Guard([&] {
    if (k > 0) {
      Require(mu, "mu");
      Require(nu, "nu");
    }
    const auto d = agsbm::ChDivergence(std::span<const double>(mu, k),
                                       std::span<const double>(nu, k));
    if (value_out != nullptr) *value_out = d.value;
    if (t_star_out != nullptr) *t_star_out = d.t_star;
    return AGSBM_OK;
  });
}

}  // extern "C"
