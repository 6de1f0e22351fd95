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

#include "agsbm/assignment.h"

#include <algorithm>
#include <limits>

#include "agsbm/errors.h"

namespace agsbm {
namespace {

using Square = std::vector<std::vector<int64_t>>;

// match[col] = row for a square matrix, maximizing the total.
std::vector<int> SubsetDp(const Square& w) {
  const int s = static_cast<int>(w.size());
  const size_t states = size_t{1} << s;
  constexpr int64_t kUnset = std::numeric_limits<int64_t>::min();
  // best[mask]: max weight assigning columns 0..popcount(mask)-1 to the rows
  // in mask.
  std::vector<int64_t> best(states, kUnset);
  std::vector<int> choice(states, -1);
  best[0] = 0;
  for (size_t mask = 0; mask < states; ++mask) {
    if (best[mask] == kUnset) continue;
    const int col = __builtin_popcountll(mask);
    if (col == s) continue;
    for (int row = 0; row < s; ++row) {
      if (mask & (size_t{1} << row)) continue;
      const size_t next = mask | (size_t{1} << row);
      const int64_t value = best[mask] + w[row][col];
      // Strict comparison keeps the first (lowest-row) optimum: deterministic.
      if (value > best[next]) {
        best[next] = value;
        choice[next] = row;
      }
    }
  }
  std::vector<int> match(s, -1);
  size_t mask = states - 1;
  for (int col = s - 1; col >= 0; --col) {
    const int row = choice[mask];
    match[col] = row;
    mask &= ~(size_t{1} << row);
  }
  return match;
}

// Hungarian algorithm (shortest augmenting paths with potentials) on the
// cost matrix max - w.
std::vector<int> Hungarian(const Square& w) {
  const int s = static_cast<int>(w.size());
  int64_t max_w = 0;
  for (const auto& row : w) for (int64_t x : row) max_w = std::max(max_w, x);
  constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
  // 1-based arrays; p[col] = row matched to col.
  std::vector<int64_t> u(s + 1, 0), v(s + 1, 0);
  std::vector<int> p(s + 1, 0), way(s + 1, 0);
  for (int i = 1; i <= s; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<int64_t> minv(s + 1, kInf);
    std::vector<char> used(s + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      int64_t delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= s; ++j) {
        if (used[j]) continue;
        const int64_t cur = (max_w - w[i0 - 1][j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= s; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> match(s, -1);
  for (int j = 1; j <= s; ++j) match[j - 1] = p[j] - 1;
  return match;
}

}  // namespace

std::vector<std::vector<int64_t>> OverlapMatrix(const CommunityLabels& first,
                                                const CommunityLabels& second) {
  if (first.size() != second.size()) {
    throw ParameterError("labelings have different lengths");
  }
  std::vector<std::vector<int64_t>> overlap(
      first.k, std::vector<int64_t>(second.k, 0));
  for (size_t v = 0; v < first.size(); ++v) {
    ++overlap[first.labels[v]][second.labels[v]];
  }
  return overlap;
}

Assignment MaxWeightAssignment(const std::vector<std::vector<int64_t>>& weight,
                               int exact_limit) {
  const int rows = static_cast<int>(weight.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(weight[0].size());
  Assignment out;
  out.match.assign(cols, -1);
  if (rows == 0 || cols == 0) return out;

  const int s = std::max(rows, cols);
  Square square(s, std::vector<int64_t>(s, 0));
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(weight[i].size()) != cols) {
      throw ParameterError("ragged weight matrix");
    }
    for (int j = 0; j < cols; ++j) square[i][j] = weight[i][j];
  }
  const std::vector<int> match =
      s <= exact_limit ? SubsetDp(square) : Hungarian(square);
  for (int j = 0; j < cols; ++j) {
    const int row = match[j];
    if (row < rows) {
      out.match[j] = row;
      out.total += weight[row][j];
    }
  }
  return out;
}

}  // namespace agsbm
