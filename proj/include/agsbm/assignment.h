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

// Maximum-weight matching of community labels between two labelings.

#ifndef AGSBM_ASSIGNMENT_H_
#define AGSBM_ASSIGNMENT_H_

#include <cstdint>
#include <vector>

#include "agsbm/graph.h"

namespace agsbm {

// overlap[a][b] = #{v : first[v] = a, second[v] = b}.
std::vector<std::vector<int64_t>> OverlapMatrix(const CommunityLabels& first,
                                                const CommunityLabels& second);

struct Assignment {
  // match[b] = row assigned to column b, or -1 when b is left unmatched
  // (only possible when there are more columns than rows).
  std::vector<int> match;
  int64_t total = 0;
};

// Injective map from columns to rows maximizing the summed weight.  Both
// branches are exact: a dynamic program over subsets of rows (equivalent to
// enumerating all permutations) when max(rows, cols) <= exact_limit, the
// Hungarian algorithm otherwise.
Assignment MaxWeightAssignment(const std::vector<std::vector<int64_t>>& weight,
                               int exact_limit = 12);

}  // namespace agsbm

#endif  // AGSBM_ASSIGNMENT_H_
