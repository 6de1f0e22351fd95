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

#include "agsbm/sweep.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "agsbm/degree_profiling.h"
#include "agsbm/errors.h"
#include "agsbm/eval.h"
#include "agsbm/rng.h"
#include "agsbm/spectral.h"
#include "agsbm/sphere_comparison.h"

namespace agsbm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double Median(std::vector<double> values) {
  values.erase(std::remove_if(values.begin(), values.end(),
                              [](double v) { return std::isnan(v); }),
               values.end());
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

// Largest relative error over the indices both spectra report.
double EigenError(const EigenEstimate& estimate, const SbmParams& model, size_t n) {
  const ExactSpectrum exact = ComputeExactSpectrum(model);
  const double growth =
      model.regime == Regime::kLogarithmic ? std::log(static_cast<double>(n)) : 1.0;
  std::vector<double> truth;
  for (double v : exact.values) {
    if (v != 0.0) truth.push_back(growth * v);
  }
  const size_t common = std::min(truth.size(), estimate.values.size());
  if (common == 0) return kNaN;
  double worst = 0.0;
  for (size_t i = 0; i < common; ++i) {
    worst = std::max(worst, std::abs(estimate.values[i] - truth[i]) / std::abs(truth[i]));
  }
  return worst;
}

SweepRow RunOne(const SweepConfig& config, size_t n, double scale, uint64_t seed,
                uint64_t cell_seed, int threads) {
  SweepRow row;
  row.n = n;
  row.scale = scale;
  row.seed = seed;
  row.accuracy = kNaN;
  row.eig_error = kNaN;
  const auto start = std::chrono::steady_clock::now();
  try {
    SbmParams model = config.model;
    model.scale = scale;
    const auto [g, truth] = SampleSbm(model, n, cell_seed);
    Execution exec{threads};
    switch (config.pipeline) {
      case SweepPipeline::kEigs: {
        ImprovedEigenOptions options;
        options.exec = exec;
        const EigenEstimate est = ImprovedEigenvalueApprox(g, config.eigen_c, cell_seed, options);
        row.status = "ok";
        row.h_found = est.h;
        row.eig_error = EigenError(est, model, n);
        break;
      }
      case SweepPipeline::kPartial: {
        SphereComparisonOptions options;
        options.eigen_c = config.eigen_c;
        options.exec = exec;
        const ClassificationResult result =
            AgnosticSphereComparison(g, config.delta, cell_seed, options);
        if (result.eigen_estimate) {
          row.h_found = result.eigen_estimate->h;
          row.eig_error = EigenError(*result.eigen_estimate, model, n);
        }
        if (result.ok()) {
          row.status = "ok";
          row.k_found = result.k_found;
          row.accuracy = Agreement(truth, result.labels).accuracy;
        } else {
          row.status = "failed";
          row.detail = result.failure_reason;
        }
        break;
      }
      case SweepPipeline::kExact: {
        DegreeProfilingOptions options;
        options.partial.eigen_c = config.eigen_c;
        options.exec = exec;
        const DegreeProfilingResult result =
            AgnosticDegreeProfiling(g, config.delta, cell_seed, options);
        row.status = "ok";
        row.k_found = result.groups.k;
        row.accuracy = Agreement(truth, result.groups).accuracy;
        break;
      }
    }
  } catch (const PipelineError& err) {
    row.status = "failed";
    row.detail = err.what();
  } catch (const EstimationFailure& err) {
    row.status = "failed";
    row.detail = err.what();
  } catch (const std::exception& err) {
    row.status = "error";
    row.detail = err.what();
  }
  row.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string CsvText(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

const char* SweepPipelineName(SweepPipeline pipeline) {
  switch (pipeline) {
    case SweepPipeline::kPartial: return "partial";
    case SweepPipeline::kExact: return "exact";
    case SweepPipeline::kEigs: return "eigs";
  }
  return "unknown";
}

void SweepConfig::Validate() const {
  if (n_values.empty() || scale_values.empty()) throw ParameterError("sweep grid is empty");
  if (seeds.empty()) throw ParameterError("sweep needs at least one seed");
  for (size_t n : n_values) {
    if (n < 2) throw ParameterError("sweep sizes must be >= 2");
  }
  for (double s : scale_values) {
    if (!(s > 0.0)) throw ParameterError("sweep scales must be positive");
  }
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("delta must lie in (0, 1]");
  model.Validate();
}

SweepConfig ParseSweepConfig(const Json& json) {
  SweepConfig config;
  try {
    config.n_values = json.at("n").get<std::vector<size_t>>();
    config.scale_values = json.value("scale", std::vector<double>{1.0});
    config.seeds = json.at("seeds").get<std::vector<uint64_t>>();
    const std::string pipeline = json.value("pipeline", std::string("partial"));
    if (pipeline == "partial") {
      config.pipeline = SweepPipeline::kPartial;
    } else if (pipeline == "exact") {
      config.pipeline = SweepPipeline::kExact;
    } else if (pipeline == "eigs") {
      config.pipeline = SweepPipeline::kEigs;
    } else {
      throw ParameterError("unknown sweep pipeline '" + pipeline + "'");
    }
    config.delta = json.value("delta", 0.4);
    config.eigen_c = json.value("eigen_c", 0.1);
    config.record_runtime = json.value("record_runtime", false);
    config.output_path = json.value("output", std::string());
    config.exec.threads = json.value("threads", 1);
  } catch (const nlohmann::json::exception& err) {
    throw ParameterError(std::string("bad sweep config: ") + err.what());
  }
  // "scale" is the grid here, not the model's own factor.
  Json model = json;
  model.erase("scale");
  config.model = SbmParamsFromJson(model);
  config.Validate();
  return config;
}

SweepResult RunSweep(const SweepConfig& config) {
  config.Validate();
  struct Task {
    size_t n;
    double scale;
    uint64_t seed;
    uint64_t cell_seed;
  };
  std::vector<Task> tasks;
  size_t cell = 0;
  for (size_t n : config.n_values) {
    for (double scale : config.scale_values) {
      for (uint64_t seed : config.seeds) {
        tasks.push_back({n, scale, seed, DeriveSeed(seed, Stream::kSweep, cell)});
      }
      ++cell;
    }
  }
  const int threads = ResolveThreads(config.exec.threads);
  const int outer = std::min<int>(threads, static_cast<int>(tasks.size()));
  const int inner = std::max(1, threads / std::max(outer, 1));
  SweepResult result;
  result.rows.resize(tasks.size());
  ParallelForEach(tasks.size(), outer, [&](size_t i) {
    const Task& t = tasks[i];
    result.rows[i] = RunOne(config, t.n, t.scale, t.seed, t.cell_seed, inner);
  });

  const size_t per_cell = config.seeds.size();
  for (size_t c = 0; c < cell; ++c) {
    SweepAggregate agg;
    agg.n = result.rows[c * per_cell].n;
    agg.scale = result.rows[c * per_cell].scale;
    std::vector<double> accuracy;
    std::vector<double> eig_error;
    for (size_t s = 0; s < per_cell; ++s) {
      const SweepRow& row = result.rows[c * per_cell + s];
      ++agg.runs;
      if (row.status == "ok") ++agg.ok;
      accuracy.push_back(row.accuracy);
      eig_error.push_back(row.eig_error);
    }
    agg.median_accuracy = Median(accuracy);
    agg.median_eig_error = Median(eig_error);
    result.aggregates.push_back(agg);
  }
  return result;
}

std::string SweepCsv(const SweepResult& result, const SweepConfig& config) {
  const char* pipeline = SweepPipelineName(config.pipeline);
  std::string out =
      "row_type,pipeline,n,scale,seed,status,accuracy,eig_error,h_found,k_found,runs,ok";
  if (config.record_runtime) out += ",runtime_s";
  out += ",detail\n";
  for (const SweepRow& row : result.rows) {
    out += std::string("data,") + pipeline + "," + std::to_string(row.n) + "," +
           FormatDouble(row.scale) + "," + std::to_string(row.seed) + "," + row.status + "," +
           FormatDouble(row.accuracy) + "," + FormatDouble(row.eig_error) + "," +
           std::to_string(row.h_found) + "," + std::to_string(row.k_found) + ",1," +
           (row.status == "ok" ? "1" : "0");
    if (config.record_runtime) out += "," + FormatDouble(row.runtime_s);
    out += "," + CsvText(row.detail) + "\n";
  }
  for (const SweepAggregate& agg : result.aggregates) {
    out += std::string("aggregate,") + pipeline + "," + std::to_string(agg.n) + "," +
           FormatDouble(agg.scale) + ",,," + FormatDouble(agg.median_accuracy) + "," +
           FormatDouble(agg.median_eig_error) + ",,," + std::to_string(agg.runs) + "," +
           std::to_string(agg.ok);
    if (config.record_runtime) out += ",";
    out += ",\n";
  }
  return out;
}

Json SweepJson(const SweepResult& result, const SweepConfig& config) {
  Json rows = Json::array();
  for (const SweepRow& row : result.rows) {
    Json r;
    r["row_type"] = "data";
    r["pipeline"] = SweepPipelineName(config.pipeline);
    r["n"] = row.n;
    r["scale"] = row.scale;
    r["seed"] = row.seed;
    r["status"] = row.status;
    r["accuracy"] = row.accuracy;
    r["eig_error"] = row.eig_error;
    r["h_found"] = row.h_found;
    r["k_found"] = row.k_found;
    if (config.record_runtime) r["runtime_s"] = row.runtime_s;
    r["detail"] = row.detail;
    rows.push_back(std::move(r));
  }
  for (const SweepAggregate& agg : result.aggregates) {
    Json r;
    r["row_type"] = "aggregate";
    r["pipeline"] = SweepPipelineName(config.pipeline);
    r["n"] = agg.n;
    r["scale"] = agg.scale;
    r["median_accuracy"] = agg.median_accuracy;
    r["median_eig_error"] = agg.median_eig_error;
    r["runs"] = agg.runs;
    r["ok"] = agg.ok;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace agsbm
