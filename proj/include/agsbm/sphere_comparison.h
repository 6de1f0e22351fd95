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

// Parameter-free partial recovery by comparing neighborhood spheres.
//
// The pipeline: estimate the eigenvalues of PQ, pick hyperparameters from
// them, then repeatedly (a) compare a handful of probe vertices pairwise to
// find one anchor per community and (b) classify every vertex against the
// anchors; finally merge the repetitions by majority consensus.

#ifndef AGSBM_SPHERE_COMPARISON_H_
#define AGSBM_SPHERE_COMPARISON_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agsbm/graph.h"
#include "agsbm/parallel.h"
#include "agsbm/sbm.h"
#include "agsbm/spectral.h"

namespace agsbm {

// z_i(v·v') ≈ ζ_i(v·v') for i = 1..h''.  Entries whose denominator
// determinant was negligible are marked unreliable and must be ignored.
struct ZetaEstimate {
  std::vector<double> z;
  std::vector<bool> reliable;
  Vertex v = 0;
  Vertex v_prime = 0;
  int r = 0;
  int r_prime = 0;

  bool AnyReliable() const;
};

// The z-formula applied to cross counts.  counts[a] = N_{r+a, r'}(v·v') for
// a = 0..2h''-1 (at least); s = r + r'; lambdas = λ'_1..λ'_{h''}.
ZetaEstimate ZetaFromCounts(std::span<const double> counts, int s, size_t n,
                            double c, std::span<const double> lambdas);

// Computes the shells of v (to depth r + 2h'' + 3) and v' (to depth r') in
// g_minus_e and applies ZetaFromCounts.
ZetaEstimate VertexProductApprox(const Graph& g_minus_e, const EdgeSubset& e,
                                 double c, Vertex v, Vertex v_prime, int r,
                                 int r_prime, const EigenEstimate& eigs);

enum class Verdict { kSame, kDifferent };

// 5(2x·δ^{-1/2} + x²).
double ComparisonThreshold(double x, double delta);

// Different iff some index reliable in all three estimates has
// z(v·v) − 2z(v·v') + z(v'·v') > threshold.  Throws EstimationFailure when
// no index is reliable in all three.
Verdict CompareZetas(const ZetaEstimate& vv, const ZetaEstimate& vv_prime,
                     const ZetaEstimate& v_prime_v_prime, double threshold);

Verdict CompareVertices(const Graph& g_minus_e, const EdgeSubset& e, Vertex v,
                        Vertex v_prime, int r, int r_prime, double x, double c,
                        double delta, const EigenEstimate& eigs);

// argmin_σ max_{σ'≠σ, i} [zz_σ,i − 2z_σ,i] − [zz_σ',i − 2z_σ',i] over the
// indices reliable for both anchors involved; ties go to the lowest index.
// zz_self[σ] = z(a_σ·a_σ), cross[σ] = z(a_σ·v').  Returns -1 when no anchor
// has a reliable index.
int ClassifyFromZetas(const std::vector<ZetaEstimate>& zz_self,
                      const std::vector<ZetaEstimate>& cross);

int ClassifyVertex(const std::vector<Vertex>& anchors,
                   const std::vector<ZetaEstimate>& zz_self, Vertex v_prime,
                   int r, int r_prime, const Graph& g_minus_e,
                   const EdgeSubset& e, double c, const EigenEstimate& eigs);

// ---------------------------------------------------------------------------
// Hyperparameters.
// ---------------------------------------------------------------------------

struct HyperParams {
  double x = 0.0;
  int x_numerator = 0;
  int x_denominator = 0;
  double epsilon = 0.0;
  int epsilon_z = 0;            // ε = 1/z or 1 − 1/z
  bool epsilon_reciprocal = true;  // true: ε = 1/z
  double c = 0.0;
  int c_denominator = 0;        // c = 1/c_denominator
  int m = 0;
  double delta = 0.0;
  // Widened eigenvalue bounds used by the inequalities.
  double lambda1_widened = 0.0;
  double lambdah_widened = 0.0;
  int k_prime = 0;
  // Set when a best-effort fallback replaced an infeasible choice; `relaxed`
  // lists which ones.
  std::vector<std::string> relaxed;
};

// The inequalities constraining (x, ε, c).  one_minus_c = 1 gives the forms
// used while searching x and ε; 1 − c gives the final consistency checks.
namespace hyper {

// Left-hand side of the anchor-pool/x bound; feasible when < 1/2.
// Infinite when the geometric series diverges (B ≤ 1).
double XBound(double x, double l1, double lh, double delta, int k_prime, int m,
              double one_minus_c);
// (1−c)·lh⁴ > 4·l1³
bool GapCondition(double l1, double lh, double one_minus_c);
// (2(1−c)l1³/lh²)^{1−ε/3} < (1−c)·l1
bool DepthCondition(double epsilon, double l1, double lh, double one_minus_c);
// 1 + ε/3 > ln((1−c)l1) / ln((1−c)lh²/(2 l1)), with a non-positive
// denominator counted as a failure.
bool GrowthCondition(double epsilon, double l1, double lh, double one_minus_c);

}  // namespace hyper

// Widens the estimates (λ''_1 = λ'_1 + 2 ln^{-3/2} n, λ''_h = λ'_h − 2 ln^{-3/2} n,
// k' = ⌊1/δ⌋) and searches x, ε and c in that order.  Throws
// InfeasibleHyperParameters naming the first inequality that cannot be met.
HyperParams SelectHyperParameters(const EigenEstimate& eigs, double delta,
                                  int m, size_t n);

// As above, but an infeasible search falls back to the candidate satisfying
// the most inequalities and records the relaxation in `relaxed`.
HyperParams SelectHyperParametersBestEffort(const EigenEstimate& eigs,
                                            double delta, int m, size_t n);

// ---------------------------------------------------------------------------
// Classification.
// ---------------------------------------------------------------------------

enum class RunStatus { kOk, kFailed };

struct ClassificationResult {
  RunStatus status = RunStatus::kFailed;
  CommunityLabels labels;  // empty when failed
  int k_found = 0;
  std::vector<Vertex> anchors;
  double y_doubleprime = 0.0;
  std::optional<HyperParams> hyperparams;
  std::optional<EigenEstimate> eigen_estimate;
  std::string failure_reason;
  std::vector<std::string> flags;
  // Vertices whose classification failed (no reliable anchor); they get
  // label 0.
  size_t unclassified = 0;
  int depth_r = 0;
  int depth_r_prime = 0;
  int runs_total = 0;
  int runs_ok = 0;
  int runs_kept = 0;

  bool ok() const { return status == RunStatus::kOk; }
};

struct UnreliableOptions {
  DepthOverrides depths;
  Execution exec;
};

// One randomized classification: split edges with probability hp.c, compare
// hp.m random probes pairwise, pick an anchor per class and classify every
// vertex.  Fails when the probe verdicts are not an equivalence relation
// with 1..⌊1/δ⌋ classes, or when a probe comparison is unstable.
ClassificationResult UnreliableClassify(const Graph& g, const HyperParams& hp,
                                        const EigenEstimate& eigs,
                                        uint64_t seed,
                                        const UnreliableOptions& options = {});

// Checks that a symmetric verdict table is an equivalence relation; returns
// the class index of every probe (classes numbered by first member), or an
// empty vector if not.
std::vector<int> EquivalenceClasses(
    const std::vector<std::vector<Verdict>>& verdicts);

// Minimum over community bijections of the fraction of vertices labelled
// differently.
double Disagreement(const CommunityLabels& a, const CommunityLabels& b);

// Majority-subset consensus over the Ok runs; see the .cc for the steps.
ClassificationResult ConsensusMerge(const std::vector<ClassificationResult>& runs,
                                    uint64_t seed);

enum class HyperParamPolicy { kStrict, kBestEffort };

struct SphereComparisonOptions {
  int m = 0;  // 0: ⌈ln(4⌊1/δ⌋)/δ⌉
  int T = 0;  // 0: ⌈ln n⌉
  double eigen_c = 0.1;
  HyperParamPolicy policy = HyperParamPolicy::kBestEffort;
  DepthOverrides depths;
  // Bypasses eigenvalue estimation (diagnostics and experiments).
  std::optional<EigenEstimate> eigen_override;
  Execution exec;
};

int DefaultAnchorPool(double delta);

// Never throws for statistical failures: returns status Failed with a
// reason.  Throws ParameterError for invalid arguments.
ClassificationResult AgnosticSphereComparison(
    const Graph& g, double delta, uint64_t seed,
    const SphereComparisonOptions& options = {});

}  // namespace agsbm

#endif  // AGSBM_SPHERE_COMPARISON_H_
