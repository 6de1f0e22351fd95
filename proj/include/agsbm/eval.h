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

#ifndef AGSBM_EVAL_H_
#define AGSBM_EVAL_H_

#include <cstdint>
#include <vector>

#include "agsbm/graph.h"

namespace agsbm {

struct AgreementReport {
  double accuracy = 0.0;
  // best_bijection[j] = truth label matched to inferred label j, or -1 when
  // the inferred alphabet is larger than the truth alphabet.
  std::vector<int> best_bijection;
  // confusion[i][j] = #{v : truth(v) = i, inferred(v) = j}.
  std::vector<std::vector<int64_t>> confusion;
};

// Fraction of vertices labelled correctly, maximized over injective
// relabellings of `inferred`.  Exact subset search for alphabets up to 12,
// the Hungarian algorithm beyond.  Throws ParameterError on a length
// mismatch.  Two empty labelings agree fully.
AgreementReport Agreement(const CommunityLabels& truth,
                          const CommunityLabels& inferred);

}  // namespace agsbm

#endif  // AGSBM_EVAL_H_
