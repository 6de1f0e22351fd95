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

#include "agsbm/realdata.h"

#include <algorithm>
#include <string>

#include "agsbm/errors.h"
#include "agsbm/rng.h"

namespace agsbm {
namespace {

// Dense description of the boundary of B_r(v): ball membership and, per
// vertex, how many boundary edges point at it.
class BoundaryProfile {
 public:
  BoundaryProfile(const Graph& g, Vertex v, int r, BfsScratch& scratch)
      : in_ball_(g.num_vertices(), 0), heads_(g.num_vertices(), 0) {
    const auto& ball = scratch.Ball(g, v, r);
    for (Vertex a : ball) in_ball_[a] = 1;
    for (Vertex a : ball) {
      for (Vertex b : g.neighbors(a)) {
        if (!in_ball_[b]) {
          ++heads_[b];
          ++size_;
        }
      }
    }
  }

  uint64_t size() const { return size_; }

  // N' between this boundary and the boundary of B_r(u).
  double FractionWith(const Graph& g, Vertex u, int r, BfsScratch& scratch) const {
    const auto& ball = scratch.Ball(g, u, r);
    uint64_t total = 0;
    uint64_t common = 0;
    uint64_t shared_edges = 0;
    for (Vertex a : ball) {
      for (Vertex b : g.neighbors(a)) {
        if (scratch.InLastBall(b)) continue;
        ++total;
        common += heads_[b];
        if (in_ball_[a] && !in_ball_[b]) ++shared_edges;
      }
    }
    if (total == 0 || size_ == 0) return 0.0;
    return static_cast<double>(common - shared_edges) /
           (static_cast<double>(total) * static_cast<double>(size_));
  }

 private:
  std::vector<char> in_ball_;
  std::vector<uint32_t> heads_;
  uint64_t size_ = 0;
};

ClassificationResult RunTrial(const Graph& h, int r, int r_prime, int average_pairs,
                              uint64_t seed) {
  ClassificationResult result;
  const size_t n = h.num_vertices();
  if (n < 2) {
    result.failure_reason = "component has fewer than two vertices";
    return result;
  }
  Rng rng(seed);
  BfsScratch scratch(n);
  auto draw_pair = [&]() {
    const Vertex v = static_cast<Vertex>(rng.Below(n));
    Vertex w = static_cast<Vertex>(rng.Below(n - 1));
    if (w >= v) ++w;
    return std::pair<Vertex, Vertex>(v, w);
  };
  auto fraction = [&](Vertex v, Vertex w) {
    const BoundaryProfile around_v(h, v, r, scratch);
    return around_v.FractionWith(h, w, r_prime, scratch);
  };

  double average = 0.0;
  for (int i = 0; i < average_pairs; ++i) {
    const auto [v, w] = draw_pair();
    average += fraction(v, w);
  }
  average /= std::max(average_pairs, 1);

  const double mean_degree = h.AverageDegree();
  bool found = false;
  Vertex refs[2] = {0, 0};
  for (size_t draw = 0; draw < 10 * n && !found; ++draw) {
    const auto [v, w] = draw_pair();
    if (static_cast<double>(h.degree(v)) <= mean_degree ||
        static_cast<double>(h.degree(w)) <= mean_degree) {
      continue;
    }
    if (fraction(v, w) < average) {
      refs[0] = v;
      refs[1] = w;
      found = true;
    }
  }
  if (!found) {
    result.failure_reason = "no pair of above-average-degree reference vertices judged different";
    return result;
  }

  const BoundaryProfile ref0(h, refs[0], r, scratch);
  const BoundaryProfile ref1(h, refs[1], r, scratch);
  result.labels.k = 2;
  result.labels.labels.assign(n, 0);
  for (size_t u = 0; u < n; ++u) {
    const Vertex vu = static_cast<Vertex>(u);
    const double f0 = ref0.FractionWith(h, vu, r_prime, scratch);
    const double f1 = ref1.FractionWith(h, vu, r_prime, scratch);
    const bool same0 = f0 >= average;
    const bool same1 = f1 >= average;
    int label = 0;
    if (same0 != same1) {
      label = same0 ? 0 : 1;
    } else {
      label = f1 > f0 ? 1 : 0;
    }
    result.labels.labels[u] = label;
  }
  result.labels.labels[refs[0]] = 0;
  result.labels.labels[refs[1]] = 1;
  result.anchors = {refs[0], refs[1]};
  result.k_found = 2;
  result.depth_r = r;
  result.depth_r_prime = r_prime;
  result.status = RunStatus::kOk;
  return result;
}

// Lifts component labels back to the full vertex set.
void Lift(ClassificationResult& result, const std::vector<Vertex>& component, size_t n) {
  if (!result.ok()) return;
  std::vector<int> full(n, 0);
  for (size_t i = 0; i < component.size(); ++i) full[component[i]] = result.labels.labels[i];
  result.labels.labels = std::move(full);
  for (Vertex& a : result.anchors) a = component[a];
  result.unclassified = n - component.size();
}

}  // namespace

double NormalizedPairFraction(const Graph& g, Vertex v, Vertex v_prime, int r, int r_prime) {
  const size_t n = g.num_vertices();
  if (v >= n || v_prime >= n) throw ParameterError("vertex out of range");
  if (r < 0 || r_prime < 0) throw ParameterError("radii must be nonnegative");
  if (v == v_prime) Warn("normalized pair fraction of a vertex with itself");
  BfsScratch scratch(n);
  const BoundaryProfile around_v_prime(g, v_prime, r_prime, scratch);
  return around_v_prime.FractionWith(g, v, r, scratch);
}

RealDataResult RealDataTwoCommunity(const Graph& g, uint64_t seed,
                                    const RealDataOptions& options) {
  if (options.r < 0 || options.r_prime < 0) throw ParameterError("radii must be nonnegative");
  if (options.trials < 1) throw ParameterError("at least one trial is required");
  if (options.average_pairs < 1) throw ParameterError("average_pairs must be >= 1");
  RealDataResult out;
  const size_t n = g.num_vertices();
  if (n == 0) {
    out.consensus.failure_reason = "empty graph";
    return out;
  }
  out.component = LargestComponent(g);
  const Graph h = InducedSubgraph(g, out.component);

  out.trials.resize(options.trials);
  ParallelForEach(options.trials, options.exec.threads, [&](size_t t) {
    out.trials[t] = RunTrial(h, options.r, options.r_prime, options.average_pairs,
                             DeriveSeed(seed, Stream::kTrials, t));
    Lift(out.trials[t], out.component, n);
  });
  out.consensus = ConsensusMerge(out.trials, DeriveSeed(seed, Stream::kVote, 0));
  if (out.consensus.ok()) out.consensus.unclassified = n - out.component.size();
  return out;
}

}  // namespace agsbm
