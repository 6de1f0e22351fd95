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

#ifndef AGSBM_ERRORS_H_
#define AGSBM_ERRORS_H_

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace agsbm {

// Invalid caller-supplied input (malformed parameters, files, labels).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A statistical estimation step could not produce an answer (for example,
// the neighborhood of every probe vertex was exhausted).  Recoverable: the
// callers that aggregate several estimations treat it as one failed attempt.
class EstimationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A multi-stage pipeline failed; `stage()` names the stage that failed.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Unreadable or malformed input files, unwritable outputs.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No (x, epsilon, c) triple satisfies the hyperparameter inequalities within
// the search bounds.  `failed_inequality()` names the first one that failed.

class InfeasibleHyperParameters : public std::runtime_error {
 public:
  explicit InfeasibleHyperParameters(std::string inequality)
      : std::runtime_error("no feasible hyperparameters: " + inequality),
        inequality_(std::move(inequality)) {}
  const std::string& failed_inequality() const { return inequality_; }

 private:
  std::string inequality_;
};

// Warnings (probability clamping, duplicated Q rows, ...) are routed through a
// process-wide handler.  The default handler writes to stderr.
using WarningHandler = std::function<void(std::string_view)>;

// Installs `handler`; an empty handler silences warnings.  Returns the
// previously installed handler.
WarningHandler SetWarningHandler(WarningHandler handler);

void Warn(std::string_view message);

}  // namespace agsbm

#endif  // AGSBM_ERRORS_H_
