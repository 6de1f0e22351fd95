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

// Benchmark sweeps: sample graphs over a grid of sizes and scales, run one
// pipeline per (cell, seed), and tabulate accuracy and eigenvalue error.

#ifndef AGSBM_SWEEP_H_
#define AGSBM_SWEEP_H_

#include <cstdint>
#include <string>
#include <vector>

#include "agsbm/parallel.h"
#include "agsbm/sbm.h"
#include "agsbm/serialize.h"

namespace agsbm {

enum class SweepPipeline { kPartial, kExact, kEigs };

const char* SweepPipelineName(SweepPipeline pipeline);

struct SweepConfig {
  std::vector<size_t> n_values;
  std::vector<double> scale_values;
  SbmParams model;  // its scale is overridden per cell
  std::vector<uint64_t> seeds;
  SweepPipeline pipeline = SweepPipeline::kPartial;
  double delta = 0.4;
  double eigen_c = 0.1;
  // Wall-clock time makes rows nondeterministic, so it is opt-in.
  bool record_runtime = false;
  std::string output_path;
  Execution exec;

  // Throws ParameterError for an empty grid or seed list.
  void Validate() const;
};

// Accepts {"n": [...], "scale": [...], "seeds": [...], "pipeline":
// "partial"|"exact"|"eigs", "delta", "eigen_c", "record_runtime", "output",
// "threads"} plus the model fields understood by SbmParamsFromJson.
SweepConfig ParseSweepConfig(const Json& json);

struct SweepRow {
  size_t n = 0;
  double scale = 0.0;
  uint64_t seed = 0;
  std::string status;  // "ok", "failed" or "error"
  std::string detail;
  double accuracy = 0.0;   // NaN when not applicable or failed
  double eig_error = 0.0;  // max relative error of λ'_i; NaN when unavailable
  int h_found = 0;
  int k_found = 0;
  double runtime_s = 0.0;
};

struct SweepAggregate {
  size_t n = 0;
  double scale = 0.0;
  int runs = 0;
  int ok = 0;
  double median_accuracy = 0.0;
  double median_eig_error = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;            // n-major, then scale, then seed
  std::vector<SweepAggregate> aggregates;  // one per (n, scale), same order
};

// Per-cell failures are recorded in the rows; the sweep never aborts.
SweepResult RunSweep(const SweepConfig& config);

// Data rows then aggregate rows under one header; the runtime column is
// present only when `record_runtime`.
std::string SweepCsv(const SweepResult& result, const SweepConfig& config);
Json SweepJson(const SweepResult& result, const SweepConfig& config);

}  // namespace agsbm

#endif  // AGSBM_SWEEP_H_
