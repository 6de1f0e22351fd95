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

#include "agsbm/spectral.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "agsbm/errors.h"
#include "agsbm/rng.h"
#include "agsbm/sbm.h"

namespace agsbm {
namespace {

// N_l = Σ_s a_s μ_s^l for l = first..first+len-1.
std::vector<double> RankModelCounts(const std::vector<double>& a,
                                    const std::vector<double>& mu, int first,
                                    int len) {
  std::vector<double> counts(len, 0.0);
  for (int l = 0; l < len; ++l) {
    for (size_t s = 0; s < a.size(); ++s) {
      counts[l] += a[s] * std::pow(mu[s], first + l);
    }
  }
  return counts;
}

// Σ over m-subsets S of Π_{s∈S} a_s μ_s^first · Π_{s<t∈S} (μ_s − μ_t)²,
// by explicit subset enumeration.
double CauchyBinetOracle(const std::vector<double>& a, const std::vector<double>& mu,
                         int first, int m) {
  const int h = static_cast<int>(a.size());
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << h); ++mask) {
    if (std::popcount(mask) != m) continue;
    double term = 1.0;
    for (int s = 0; s < h; ++s) {
      if (!(mask >> s & 1u)) continue;
      term *= a[s] * std::pow(mu[s], first);
      for (int t = s + 1; t < h; ++t) {
        if (mask >> t & 1u) term *= (mu[s] - mu[t]) * (mu[s] - mu[t]);
      }
    }
    total += term;
  }
  return total;
}

TEST(ExactSpectrumTest, SymmetricModelEigenvalues) {
  for (int k = 2; k <= 4; ++k) {
    const double alpha = 50, beta = 10;
    const ExactSpectrum s = ComputeExactSpectrum(SbmParams::Symmetric(k, alpha, beta));
    ASSERT_EQ(s.h, 2);
    EXPECT_NEAR(s.values[0], (alpha + (k - 1) * beta) / k, 1e-10);
    EXPECT_NEAR(s.values[1], (alpha - beta) / k, 1e-10);
  }
}

TEST(ExactSpectrumTest, SingleCommunity) {
  SbmParams params;
  params.p = {1.0};
  params.Q = Eigen::MatrixXd::Constant(1, 1, 7.5);
  const ExactSpectrum s = ComputeExactSpectrum(params);
  ASSERT_EQ(s.h, 1);
  EXPECT_NEAR(s.values[0], 7.5, 1e-12);
  EXPECT_NEAR(s.zeta[0](0, 0), 1.0, 1e-12);
}

TEST(ExactSpectrumTest, RejectsNonPositivePrior) {
  SbmParams params;
  params.p = {1.0, 0.0};
  params.Q = Eigen::MatrixXd::Ones(2, 2);
  EXPECT_THROW(ComputeExactSpectrum(params), ParameterError);
}

class RandomSpectrumTest : public ::testing::TestWithParam<int> {
 protected:
  SbmParams RandomParams() {
    Rng rng(100 + GetParam());
    const int k = 2 + static_cast<int>(rng.Below(4));
    SbmParams params;
    double total = 0;
    for (int i = 0; i < k; ++i) {
      params.p.push_back(0.2 + rng.Uniform());
      total += params.p.back();
    }
    for (double& x : params.p) x /= total;
    params.Q.resize(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) params.Q(i, j) = params.Q(j, i) = 1 + 40 * rng.Uniform();
    return params;
  }
};

TEST_P(RandomSpectrumTest, ResolutionOfIdentityAndOrthogonality) {
  const SbmParams params = RandomParams();
  const int k = params.k();
  const ExactSpectrum s = ComputeExactSpectrum(params);
  const Eigen::MatrixXd pq = Eigen::Map<const Eigen::VectorXd>(params.p.data(), k).asDiagonal() * params.Q;
  Eigen::VectorXd inv_p(k);
  for (int i = 0; i < k; ++i) inv_p[i] = 1.0 / params.p[i];

  Eigen::MatrixXd zeta_sum = Eigen::MatrixXd::Zero(k, k);
  Eigen::MatrixXd projector_sum = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < s.h; ++i) {
    zeta_sum += s.zeta[i];
    projector_sum += s.projector[i];
    // Each projector maps into the right eigenspace of PQ.
    EXPECT_LT((pq * s.projector[i] - s.values[i] * s.projector[i]).norm(), 1e-9 * pq.norm());
    for (int j = 0; j < s.h; ++j) {
      if (i == j) continue;
      const Eigen::MatrixXd cross =
          s.projector[i].transpose() * inv_p.asDiagonal() * s.projector[j];
      EXPECT_LT(cross.cwiseAbs().maxCoeff(), 1e-9 * inv_p.maxCoeff());
    }
  }
  EXPECT_LT((projector_sum - Eigen::MatrixXd::Identity(k, k)).norm(), 1e-9);
  EXPECT_LT((zeta_sum - Eigen::MatrixXd(inv_p.asDiagonal())).norm(), 1e-9 * inv_p.maxCoeff());
}

TEST_P(RandomSpectrumTest, ZetaIsPositiveSemidefinite) {
  const ExactSpectrum s = ComputeExactSpectrum(RandomParams());
  const int k = static_cast<int>(s.p.size());
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      bool some_positive = false;
      for (int i = 0; i < s.h; ++i) {
        EXPECT_GE(s.zeta[i](a, a), -1e-9);
        const double gap = s.zeta[i](a, a) - 2 * s.zeta[i](a, b) + s.zeta[i](b, b);
        EXPECT_GE(gap, -1e-9);
        if (gap > 1e-9) some_positive = true;
      }
      EXPECT_EQ(some_positive, a != b);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomSpectrumTest, ::testing::Range(0, 25));

TEST(SortByConventionTest, MagnitudeThenSign) {
  std::vector<double> values{-3, 1, 3, -0.5, 2};
  SortByConvention(values);
  EXPECT_EQ(values, (std::vector<double>{3, -3, 2, 1, -0.5}));
}

TEST(VandermondeTest, SmallCases) {
  EXPECT_EQ(VandermondeGamma(std::vector<double>{}), 1.0);
  EXPECT_EQ(VandermondeGamma(std::vector<double>{4.2}), 1.0);
  const double l1 = 30, l2 = 20;
  EXPECT_EQ(VandermondeGamma(std::vector<double>{l1, l2}), l1 * l1 + l2 * l2 - 2 * l1 * l2);
}

TEST(VandermondeTest, MatchesSingleSubsetOracle) {
  Rng rng(9);
  for (int m = 3; m <= 4; ++m) {
    std::vector<double> mu, a(m, 1.0);
    for (int s = 0; s < m; ++s) mu.push_back(0.5 + 3 * rng.Uniform());
    // With h = m the Cauchy–Binet sum has a single term.
    const double oracle = CauchyBinetOracle(a, mu, 0, m);
    EXPECT_NEAR(VandermondeGamma(mu), oracle, 1e-12 * std::abs(oracle));
  }
}

TEST(MomentDeterminantTest, SmallCases) {
  EXPECT_EQ(MomentDeterminant(std::vector<double>{}, 0).value, 1.0);
  EXPECT_DOUBLE_EQ(MomentDeterminant(std::vector<double>{7}, 1).value, 7.0);
  const std::vector<double> counts{3, 5, 11};
  EXPECT_NEAR(MomentDeterminant(counts, 2).value, 3 * 11 - 5 * 5, 1e-12);
  EXPECT_THROW(MomentDeterminant(counts, 3), ParameterError);
}

TEST(MomentDeterminantTest, HankelLayout) {
  const std::vector<double> counts{1, 2, 3, 4, 5};
  const Eigen::MatrixXd m = HankelMatrix(counts, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(m(i, j), counts[i + j]);
}

TEST(MomentDeterminantTest, CauchyBinetIdentity) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int h = 1 + static_cast<int>(rng.Below(5));
    // Magnitudes at least 0.3 apart: the identity is exact, but a Hankel
    // matrix of nearly equal rates is too ill-conditioned to resolve it in
    // double precision.
    std::vector<double> a, mu;
    for (int s = 0; s < h; ++s) {
      a.push_back(0.5 + rng.Uniform());
      mu.push_back((rng.Bernoulli(0.5) ? 1 : -1) * (0.5 + 0.6 * s + 0.3 * rng.Uniform()));
    }
    const int first = static_cast<int>(rng.Below(4));
    for (int m = 1; m <= h; ++m) {
      const auto counts = RankModelCounts(a, mu, first, 2 * m - 1);
      const double oracle = CauchyBinetOracle(a, mu, first, m);
      EXPECT_NEAR(MomentDeterminant(counts, m).value, oracle, 1e-9 * std::abs(oracle))
          << "trial " << trial << " m " << m;
    }
  }
}

TEST(MomentDeterminantTest, VanishesBeyondRank) {
  const std::vector<double> a{1.0, 2.0}, mu{3.0, -1.5};
  const auto counts = RankModelCounts(a, mu, 2, 5);
  double scale = 1.0;
  for (int i = 0; i < 3; ++i) scale *= std::abs(counts[2 * i]);
  const Determinant d = MomentDeterminant(counts, 3);
  EXPECT_LT(std::abs(d.value), 1e-9 * scale);
  EXPECT_TRUE(d.negligible);
}

TEST(MomentDeterminantTest, LeadingTermDominatesAsDepthGrows) {
  const std::vector<double> a{1.0, 0.7, 0.4}, mu{5.0, 3.0, 1.5};
  const int m = 2;
  const std::vector<double> leading{mu[0], mu[1]};
  double previous_gap = INFINITY;
  for (int r = 0; r <= 20; r += 2) {
    const auto counts = RankModelCounts(a, mu, r, 2 * m - 1);
    const double dominant = a[0] * a[1] * std::pow(mu[0] * mu[1], r) * VandermondeGamma(leading);
    const double gap = std::abs(MomentDeterminant(counts, m).value / dominant - 1.0);
    EXPECT_LE(gap, previous_gap) << "r = " << r;
    previous_gap = gap;
  }
  EXPECT_LT(previous_gap, 1e-3);
}

TEST(CombineProbeEstimatesTest, MediansPerIndex) {
  std::vector<EigenEstimate> probes(3);
  probes[0].h = 2;
  probes[0].values = {29, 19};
  probes[1].h = 2;
  probes[1].values = {31, 21};
  probes[2].h = 1;
  probes[2].values = {30};
  const EigenEstimate combined = CombineProbeEstimates(probes);
  EXPECT_EQ(combined.h, 2);
  ASSERT_EQ(combined.values.size(), 2u);
  EXPECT_DOUBLE_EQ(combined.values[0], 30);
  EXPECT_DOUBLE_EQ(combined.values[1], 20);
  EXPECT_THROW(CombineProbeEstimates({}), EstimationFailure);
}

TEST(EigenvalueApproxTest, IsolatedVertexFails) {
  const Graph g = Graph::FromEdges(4, {{1, 2}, {2, 3}});
  const EdgeSplit split = SplitEdges(g, 0.5, 1);
  EXPECT_THROW(BasicEigenvalueApprox(split.g_minus_e, split.e, 0.5, 0), EstimationFailure);
}

TEST(EigenvalueApproxTest, EdgelessGraphFails) {
  const Graph g = Graph::FromEdges(50, {});
  EXPECT_THROW(ImprovedEigenvalueApprox(g, 0.1, 1), EstimationFailure);
}

// Erdős–Rényi with mean degree 30: a single eigenvalue equal to the mean
// degree.
TEST(EigenvalueApproxTest, ErdosRenyiSingleVertexEstimate) {
  SbmParams params;
  params.p = {1.0};
  params.Q = Eigen::MatrixXd::Constant(1, 1, 30.0);
  const size_t n = 30000;
  int good = 0, trials = 0;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = SampleSbm(params, n, seed).first;
    const EdgeSplit split = SplitEdges(g, 0.1, DeriveSeed(seed, Stream::kSplit, 0));
    for (Vertex v : {Vertex{0}, Vertex{1}}) {
      ++trials;
      try {
        const EigenEstimate est = BasicEigenvalueApprox(split.g_minus_e, split.e, 0.1, v);
        if (est.h == 1 && std::abs(est.values[0] - 30.0) <= 3.0) ++good;
      } catch (const EstimationFailure&) {
      }
    }
  }
  EXPECT_GT(2 * good, trials) << good << " of " << trials;
}

}  // namespace
}  // namespace agsbm
