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

#include "agsbm/eval.h"

#include "agsbm/assignment.h"
#include "agsbm/errors.h"

namespace agsbm {

AgreementReport Agreement(const CommunityLabels& truth,
                          const CommunityLabels& inferred) {
  if (truth.size() != inferred.size()) {
    throw ParameterError("truth and inferred labelings have different lengths");
  }
  truth.Validate();
  inferred.Validate();
  AgreementReport report;
  report.confusion = OverlapMatrix(truth, inferred);
  const Assignment best = MaxWeightAssignment(report.confusion, /*exact_limit=*/12);
  report.best_bijection = best.match;
  report.accuracy = truth.size() == 0
                        ? 1.0
                        : static_cast<double>(best.total) / static_cast<double>(truth.size());
  return report;
}

}  // namespace agsbm
