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

// Stochastic block model parameters, sampling, and random edge splitting.

#ifndef AGSBM_SBM_H_
#define AGSBM_SBM_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "agsbm/graph.h"

namespace agsbm {

// Constant: edge probability scale*Q_ij/n (bounded average degree).
// Logarithmic: edge probability scale*Q_ij*ln(n)/n.
enum class Regime { kConstant, kLogarithmic };

const char* RegimeName(Regime regime);
// Accepts "constant"/"G1" and "logarithmic"/"log"/"G2".
Regime ParseRegime(const std::string& name);

struct SbmParams {
  std::vector<double> p;  // community prior, sums to 1
  Eigen::MatrixXd Q;      // symmetric connectivity kernel
  Regime regime = Regime::kConstant;
  double scale = 1.0;

  int k() const { return static_cast<int>(p.size()); }

  // Throws ParameterError for an empty prior, a prior not summing to 1
  // (tolerance 1e-12), a non-positive prior entry, a Q of the wrong shape,
  // an asymmetric or negative Q, or a non-positive scale.  Warns (does not
  // throw) when two rows of Q are equal.
  void Validate() const;

  // Edge probability between communities i and j in a graph on n vertices,
  // before clamping to [0, 1].
  double EdgeProbability(int i, int j, size_t n) const;

  // The symmetric k-community model: p_i = 1/k, Q = alpha on the diagonal,
  // beta off it.
  static SbmParams Symmetric(int k, double alpha, double beta,
                             Regime regime = Regime::kConstant);
};

// Draws labels i.i.d. from p and every unordered pair independently with
// probability W_{σu,σv}.  Labels and edge coins come from independent
// streams of `seed`.  Probabilities above 1 are clamped with a warning.
std::pair<Graph, CommunityLabels> SampleSbm(const SbmParams& params, size_t n,
                                            uint64_t seed);

struct EdgeSplit {
  EdgeSubset e;        // each edge independently with probability c
  Graph g_minus_e;     // the remaining edges
};

// Independent per-edge coins keyed by (seed, edge); throws ParameterError
// unless 0 <= c <= 1.
EdgeSplit SplitEdges(const Graph& g, double c, uint64_t seed);

}  // namespace agsbm

#endif  // AGSBM_SBM_H_
