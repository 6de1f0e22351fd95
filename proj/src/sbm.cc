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

#include "agsbm/sbm.h"

#include <cmath>
#include <sstream>

#include "agsbm/errors.h"
#include "agsbm/rng.h"

namespace agsbm {
namespace {

// Appends the edges of one block (pairs between `a` and `b`, or within `a`
// when `within` is set) using geometric skips over the linear pair index, so
// the cost is proportional to the number of edges produced.
void SampleBlock(const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                 bool within, double prob, Rng& rng, std::vector<Edge>& out) {
  if (prob <= 0.0) return;
  const uint64_t na = a.size();
  const uint64_t total = within ? na * (na - (na > 0 ? 1 : 0)) / 2
                                : na * static_cast<uint64_t>(b.size());
  if (total == 0) return;

  const double log_q = prob >= 1.0 ? 0.0 : std::log1p(-prob);
  auto next_skip = [&]() -> uint64_t {
    if (prob >= 1.0) return 0;
    const double s = std::floor(std::log(rng.UniformPositive()) / log_q);
    return s >= static_cast<double>(total) ? total : static_cast<uint64_t>(s);
  };

  if (!within) {
    const uint64_t nb = b.size();
    for (uint64_t idx = next_skip(); idx < total; idx += 1 + next_skip()) {
      out.emplace_back(a[idx / nb], b[idx % nb]);
    }
    return;
  }
  // Within-block pairs (i, j), i < j, enumerated row by row.
  uint64_t row = 0;
  uint64_t row_start = 0;  // linear index of pair (row, row + 1)
  for (uint64_t idx = next_skip(); idx < total; idx += 1 + next_skip()) {
    while (idx >= row_start + (na - 1 - row)) {
      row_start += na - 1 - row;
      ++row;
    }
    const uint64_t col = row + 1 + (idx - row_start);
    out.emplace_back(a[row], a[col]);
  }
}

}  // namespace

const char* RegimeName(Regime regime) {
  return regime == Regime::kConstant ? "constant" : "logarithmic";
}

Regime ParseRegime(const std::string& name) {
  if (name == "constant" || name == "G1" || name == "g1") {
    return Regime::kConstant;
  }
  if (name == "logarithmic" || name == "log" || name == "G2" || name == "g2") {
    return Regime::kLogarithmic;
  }
  throw ParameterError("unknown regime '" + name + "'");
}

void SbmParams::Validate() const {
  if (p.empty()) throw ParameterError("community prior is empty");
  double total = 0.0;
  for (double pi : p) {
    if (!(pi > 0.0)) throw ParameterError("community prior entries must be > 0");
    total += pi;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "community prior sums to " << total << ", not 1";
    throw ParameterError(msg.str());
  }
  const int kk = k();
  if (Q.rows() != kk || Q.cols() != kk) {
    throw ParameterError("Q must be " + std::to_string(kk) + "x" +
                         std::to_string(kk));
  }
  for (int i = 0; i < kk; ++i) {
    for (int j = 0; j < kk; ++j) {
      if (!std::isfinite(Q(i, j)) || Q(i, j) < 0.0) {
        throw ParameterError("Q entries must be finite and nonnegative");
      }
      if (Q(i, j) != Q(j, i)) throw ParameterError("Q must be symmetric");
    }
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ParameterError("scale must be positive");
  }
  for (int i = 0; i < kk; ++i) {
    for (int j = i + 1; j < kk; ++j) {
      if (Q.row(i) == Q.row(j)) {
        Warn("rows " + std::to_string(i) + " and " + std::to_string(j) +
             " of Q are equal; the communities are not identifiable");
      }
    }
  }
}

double SbmParams::EdgeProbability(int i, int j, size_t n) const {
  const double nn = static_cast<double>(n);
  double w = scale * Q(i, j) / nn;
  if (regime == Regime::kLogarithmic) w *= std::log(nn);
  return w;
}

SbmParams SbmParams::Symmetric(int k, double alpha, double beta,
                               Regime regime) {
  SbmParams params;
  params.p.assign(k, 1.0 / k);
  params.Q = Eigen::MatrixXd::Constant(k, k, beta);
  params.Q.diagonal().setConstant(alpha);
  params.regime = regime;
  return params;
}

std::pair<Graph, CommunityLabels> SampleSbm(const SbmParams& params, size_t n,
                                            uint64_t seed) {
  params.Validate();
  if (n == 0) throw ParameterError("n must be at least 1");
  const int k = params.k();

  CommunityLabels labels;
  labels.k = k;
  labels.labels.resize(n);
  std::vector<double> cumulative(k);
  double acc = 0.0;
  for (int i = 0; i < k; ++i) cumulative[i] = (acc += params.p[i]);
  Rng label_rng(seed, Stream::kLabels, 0);
  std::vector<std::vector<Vertex>> members(k);
  for (size_t v = 0; v < n; ++v) {
    const double u = label_rng.Uniform() * acc;
    int c = 0;
    while (c + 1 < k && u >= cumulative[c]) ++c;
    labels.labels[v] = c;
    members[c].push_back(static_cast<Vertex>(v));
  }

  std::vector<Edge> edges;
  bool clamped = false;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      double prob = params.EdgeProbability(i, j, n);
      if (prob > 1.0) {
        prob = 1.0;
        clamped = true;
      }
      Rng block_rng(seed, Stream::kEdges, static_cast<uint64_t>(i) * k + j);
      SampleBlock(members[i], members[j], i == j, prob, block_rng, edges);
    }
  }
  if (clamped) {
    Warn("edge probabilities above 1 were clamped to 1 (n = " +
         std::to_string(n) + ")");
  }
  return {Graph::FromEdges(n, std::move(edges)), std::move(labels)};
}

EdgeSplit SplitEdges(const Graph& g, double c, uint64_t seed) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw ParameterError("split probability must lie in [0, 1]");
  }
  const uint64_t key = DeriveSeed(seed, Stream::kSplit, 0);
  const uint64_t n = g.num_vertices();
  std::vector<Edge> in_e;
  std::vector<Edge> rest;
  for (const Edge& edge : g.Edges()) {
    const double coin =
        UnitFromBits(Mix64(key ^ Mix64(edge.first * n + edge.second)));
    (coin < c ? in_e : rest).push_back(edge);
  }
  EdgeSplit split;
  split.e.parent_edge_count = g.num_edges();
  split.e.edges = Graph::FromEdges(n, std::move(in_e));
  split.g_minus_e = Graph::FromEdges(n, std::move(rest));
  return split;
}

}  // namespace agsbm
