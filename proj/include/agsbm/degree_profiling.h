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

// Exact recovery by degree profiling.
//
// A vertex's degree profile (neighbors per alleged community) is
// approximately multivariate Poisson with a mean that depends only on the
// vertex's true community.  Two communities can be told apart with
// vanishing error exactly when the CH-divergence of the corresponding
// columns of PQ is at least 1; communities closer than that are merged into
// the finest partition and recovered as a group.

#ifndef AGSBM_DEGREE_PROFILING_H_
#define AGSBM_DEGREE_PROFILING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "agsbm/graph.h"
#include "agsbm/parallel.h"
#include "agsbm/sbm.h"
#include "agsbm/sphere_comparison.h"

namespace agsbm {

struct ChDivergenceValue {
  double value = 0.0;
  double t_star = 0.5;
};

// D_+(μ, ν) = max_{t∈[0,1]} Σ_x [tμ(x) + (1−t)ν(x) − μ(x)^t ν(x)^{1−t}],
// by golden-section search to |Δt| ≤ 1e-8.  Throws ParameterError for
// different lengths or negative entries.
ChDivergenceValue ChDivergence(std::span<const double> mu,
                               std::span<const double> nu);

// Label frequencies and rescaled edge densities between alleged
// communities.
struct ParamEstimate {
  std::vector<double> p_hat;
  Eigen::MatrixXd Q_hat;
  Regime regime = Regime::kLogarithmic;
  size_t n = 0;
  // Communities with no member; their rows and columns of Q_hat are 0.
  std::vector<int> empty_classes;

  int k() const { return static_cast<int>(p_hat.size()); }
};

// Q̂_ij = factor · e(i, j) / pairs(i, j), where pairs is n_i·n_j off the
// diagonal and C(n_i, 2) on it, and factor is n/ln n (Logarithmic) or n
// (Constant).
ParamEstimate EstimateParams(const Graph& g, const CommunityLabels& labels,
                             Regime regime);

struct DivergenceMatrix {
  Eigen::MatrixXd d_plus;  // symmetric, zero diagonal
  Eigen::MatrixXd t_star;
  // Disjoint subsets of [k], each sorted, ordered by smallest member.
  std::vector<std::vector<int>> finest;
  std::vector<int> group_of;  // community -> index into `finest`
};

// Pairwise D_+ between the columns of diag(p)·Q, then the classes of the
// transitive closure of {D_+ < 1}.
DivergenceMatrix FinestPartition(std::span<const double> p, const Eigen::MatrixXd& Q);
DivergenceMatrix FinestPartition(const SbmParams& params);
DivergenceMatrix FinestPartition(const ParamEstimate& estimate);

// d_j = number of neighbors of v labelled j.
std::vector<int64_t> DegreeProfile(const Graph& g, const CommunityLabels& labels,
                                   Vertex v);

// θ(j)_i = L·p_i·Q_ij, scaled by `mean_factor`, where L = ln n in the
// Logarithmic regime and 1 in the Constant one.  Column j is the mean
// profile of a community-j vertex.
Eigen::MatrixXd ProfileMeans(const ParamEstimate& estimate, double mean_factor = 1.0);

struct ProfileDecision {
  int index = 0;
  // True when every hypothesis had likelihood zero; `index` is then the
  // prior argmax.
  bool fallback = false;
};

// Poisson log-likelihood tests against fixed means.  Immutable after
// construction, so one instance may be shared by many threads.
class ProfileClassifier {
 public:
  explicit ProfileClassifier(const ParamEstimate& estimate, double mean_factor = 1.0);

  int k() const { return static_cast<int>(log_prior_.size()); }

  // ln p̂_j + Σ_i (d_i ln θ(j)_i − θ(j)_i); −∞ when some θ(j)_i = 0 < d_i.
  std::vector<double> LogScores(std::span<const int64_t> profile) const;

  ProfileDecision Map(std::span<const int64_t> profile) const;

  // argmax_s ln Σ_{i∈A_s} exp(score_i), ties to the lowest subset.
  ProfileDecision Composite(std::span<const int64_t> profile,
                            const std::vector<std::vector<int>>& partition) const;

 private:
  Eigen::MatrixXd theta_;
  Eigen::MatrixXd log_theta_;
  std::vector<double> log_prior_;
};

ProfileDecision MapClassifyProfile(std::span<const int64_t> profile,
                                   const ParamEstimate& estimate);
ProfileDecision CompositeClassifyProfile(
    std::span<const int64_t> profile, const ParamEstimate& estimate,
    const std::vector<std::vector<int>>& partition);

// ln(ln n) / (4 ln n).
double DefaultProfilingGamma(size_t n);

struct DegreeProfilingOptions {
  std::optional<double> gamma;  // default: DefaultProfilingGamma(n)
  // Scaling of the estimated kernel; exact recovery lives in the
  // logarithmic-degree regime.
  Regime regime = Regime::kLogarithmic;
  SphereComparisonOptions partial;
  // Skips partial recovery and uses these labels as σ' (experiments only).
  std::optional<CommunityLabels> preliminary_override;
  Execution exec;
};

struct DegreeProfilingResult {
  CommunityLabels groups;  // index into divergence.finest
  DivergenceMatrix divergence;
  ParamEstimate estimate;      // re-estimated from σ''
  ParamEstimate preliminary_estimate;  // estimated from σ' on g''
  CommunityLabels preliminary;         // σ'
  CommunityLabels reclassified;        // σ'' after dropping empty classes
  std::vector<int> contraction;        // σ'' label before renumbering -> after, or -1
  size_t map_fallbacks = 0;
  size_t composite_fallbacks = 0;
  double gamma = 0.0;
  std::optional<ClassificationResult> partial;
};

// (1) split off g' with probability γ, (2) partial recovery on g', (3)
// estimate the parameters on the remaining edges g'', (4) MAP-reclassify
// every vertex from its g''-profile, (5) re-estimate, (6) composite-classify
// into the finest partition.  Throws PipelineError("partial-recovery") when
// step (2) fails and ParameterError for invalid arguments.
DegreeProfilingResult AgnosticDegreeProfiling(const Graph& g, double delta,
                                              uint64_t seed,
                                              const DegreeProfilingOptions& options = {});

}  // namespace agsbm

#endif  // AGSBM_DEGREE_PROFILING_H_
