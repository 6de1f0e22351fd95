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

// Spectral statistics of neighborhood growth.
//
// For a vertex pair (v, v'), the cross counts N_{r+a, r'}(v·v') behave like
// a sum of geometric sequences, one per distinct eigenvalue of PQ:
//
//   N_{r+a, r'}(v·v') ≈ (c/n) Σ_t ((1-c)λ_t)^{r+r'+a} λ_t ζ_t(v·v').
//
// Determinants of Hankel matrices of consecutive counts isolate products of
// the leading terms, which is how the eigenvalues of PQ are recovered from
// a single graph without knowing the parameters.

#ifndef AGSBM_SPECTRAL_H_
#define AGSBM_SPECTRAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "agsbm/graph.h"
#include "agsbm/linalg.h"
#include "agsbm/parallel.h"
#include "agsbm/sbm.h"

namespace agsbm {

// ---------------------------------------------------------------------------
// Exact spectrum of PQ (test oracle).
// ---------------------------------------------------------------------------

// Distinct eigenvalues of PQ = diag(p)·(scale·Q) and the eigenspace data
// needed to evaluate ζ_i(σ, σ').
struct ExactSpectrum {
  // Distinct eigenvalues: decreasing magnitude, positive first on ties.
  std::vector<double> values;
  // Number of distinct eigenvalues (h) and of distinct nonzero ones (h').
  int h = 0;
  int h_prime = 0;
  // zeta[i](σ, σ') = ζ_i(σ, σ') = P_{W_i}(e_σ)·P⁻¹·P_{W_i}(e_σ').
  std::vector<Eigen::MatrixXd> zeta;
  // projector[i] = P_{W_i}, the projection of R^k onto the i-th eigenspace
  // of PQ along the others.
  std::vector<Eigen::MatrixXd> projector;
  std::vector<double> p;
};

// Throws ParameterError unless every p_i is positive.
ExactSpectrum ComputeExactSpectrum(const SbmParams& params);

// Sorts by decreasing magnitude, placing the positive value first on ties.
void SortByConvention(std::vector<double>& values);

// ---------------------------------------------------------------------------
// Hankel moment determinants.
// ---------------------------------------------------------------------------

// Π_{s<t} (μ_s − μ_t)²; the empty product is 1.
double VandermondeGamma(std::span<const double> mus);

// The m×m Hankel matrix with entries counts[i + j], i, j in [0, m).
Eigen::MatrixXd HankelMatrix(std::span<const double> counts, int m);

// det of HankelMatrix(counts, m); needs counts.size() >= 2m - 1.  The 0×0
// determinant is 1.
Determinant MomentDeterminant(std::span<const double> counts, int m);

// ---------------------------------------------------------------------------
// Eigenvalue estimation from a graph.
// ---------------------------------------------------------------------------

struct EigenEstimate {
  int h = 0;                   // estimated number of distinct nonzero eigenvalues
  std::vector<double> values;  // λ'_1..λ'_h, conventional order
  double lambda1_crude = 0.0;  // λ''_1 from shell growth
  std::vector<std::string> flags;
};

// Explicit depth choices overriding the asymptotic formulas.
struct DepthOverrides {
  std::optional<int> r;
  std::optional<int> r_prime;
};

struct BasicEigenOptions {
  DepthOverrides depths;
  // Maximum number of scanned adjacency entries; 0 means unlimited.
  uint64_t work_budget = 0;
  // Largest m tried when detecting h''.
  int max_m = 8;
};

// The four-step single-vertex estimator.  `g_minus_e` and `e` are the two
// halves of a random edge split with E-probability c.  Throws
// EstimationFailure when the shells of v exhaust its component before
// exceeding √n, when no eigenvalue is detected, when a required determinant
// is negligible, or when the work budget is exceeded.
EigenEstimate BasicEigenvalueApprox(const Graph& g_minus_e, const EdgeSubset& e,
                                    double c, Vertex v,
                                    const BasicEigenOptions& options = {});

struct ImprovedEigenOptions {
  int num_probes = 0;  // 0: ⌈√(ln n)⌉
  DepthOverrides depths;
  double work_budget_factor = 4.0;  // budget = factor·n·√(ln n); 0: unlimited
  int max_m = 8;
  Execution exec;
};

// Median combination of per-probe estimates: h'' is the lower median of the
// reported h values, λ'_i the median over the probes reporting index i.
// Throws EstimationFailure for an empty input.
EigenEstimate CombineProbeEstimates(const std::vector<EigenEstimate>& probes);

// Splits the edges with probability c, runs the single-vertex estimator from
// random probe vertices in parallel and combines the successful runs.
// Throws EstimationFailure when every probe fails.
EigenEstimate ImprovedEigenvalueApprox(const Graph& g, double c, uint64_t seed,
                                       const ImprovedEigenOptions& options = {});

}  // namespace agsbm

#endif  // AGSBM_SPECTRAL_H_
