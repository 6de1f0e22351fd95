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

// Acceptance checks.  `agsbm_acceptance` runs every criterion and prints one
// PASS/FAIL line each; `agsbm_acceptance --criterion N` runs only criterion
// N.  The exit status is 0 exactly when every criterion that ran passed.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "agsbm/degree_profiling.h"
#include "agsbm/errors.h"
#include "agsbm/eval.h"
#include "agsbm/io.h"
#include "agsbm/realdata.h"
#include "agsbm/rng.h"
#include "agsbm/sbm.h"
#include "agsbm/serialize.h"
#include "agsbm/spectral.h"
#include "agsbm/sphere_comparison.h"
#include "agsbm/sweep.h"

namespace agsbm {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Collects failed sub-checks and summary notes for one criterion.
class Report {
 public:
  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failures_.push_back(what);
    }
  }
  void Note(const std::string& note) { notes_.push_back(note); }
  Outcome Finish() const {
    std::ostringstream out;
    const auto& items = pass_ ? notes_ : failures_;
    for (size_t i = 0; i < items.size(); ++i) out << (i ? "; " : "") << items[i];
    return {pass_, out.str()};
  }

 private:
  bool pass_ = true;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string Fmt(double x, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

int HardwareThreads() { return ResolveThreads(0); }

// ---------------------------------------------------------------------------
// Shared oracles.
// ---------------------------------------------------------------------------

// Σ over m-subsets S of Π_{s∈S} a_s · Π_{s<t∈S} (μ_s − μ_t)².
double CauchyBinetOracle(const std::vector<double>& a, const std::vector<double>& mu, int m) {
  const int h = static_cast<int>(a.size());
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << h); ++mask) {
    if (std::popcount(mask) != m) continue;
    double term = 1.0;
    for (int s = 0; s < h; ++s) {
      if (!(mask >> s & 1u)) continue;
      term *= a[s];
      for (int t = s + 1; t < h; ++t) {
        if (mask >> t & 1u) term *= (mu[s] - mu[t]) * (mu[s] - mu[t]);
      }
    }
    total += term;
  }
  return total;
}

// Rank-model moment sequence N_l = Σ_s a_s μ_s^l, l = 0..len-1.
std::vector<double> RankCounts(const std::vector<double>& a, const std::vector<double>& mu,
                               int len) {
  std::vector<double> counts(len, 0.0);
  for (int l = 0; l < len; ++l)
    for (size_t s = 0; s < a.size(); ++s) counts[l] += a[s] * std::pow(mu[s], l);
  return counts;
}

ChDivergenceValue GridDivergence(const std::vector<double>& mu, const std::vector<double>& nu,
                                 int points) {
  ChDivergenceValue best{-INFINITY, 0.0};
  for (int g = 0; g <= points; ++g) {
    const double t = static_cast<double>(g) / points;
    double sum = 0;
    for (size_t x = 0; x < mu.size(); ++x) {
      sum += t * mu[x] + (1 - t) * nu[x] - std::pow(mu[x], t) * std::pow(nu[x], 1 - t);
    }
    if (sum > best.value) best = {sum, t};
  }
  return best;
}

// Planted-label accuracy of a run; a failed run scores 0.
double RunAccuracy(const CommunityLabels& truth, const ClassificationResult& result) {
  return result.ok() ? Agreement(truth, result.labels).accuracy : 0.0;
}

// ---------------------------------------------------------------------------
// Criteria.
// ---------------------------------------------------------------------------

Outcome Criterion1() {
  Report report;
  const auto start = std::chrono::steady_clock::now();
  Rng rng(20261);
  int checked = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int h = 1 + static_cast<int>(rng.Below(5));
    // Rates at least 0.3 apart in magnitude keep the Hankel matrices
    // resolvable in double precision.
    std::vector<double> a, mu;
    for (int s = 0; s < h; ++s) {
      a.push_back(0.5 + rng.Uniform());
      mu.push_back((rng.Bernoulli(0.5) ? 1 : -1) * (0.5 + 0.6 * s + 0.3 * rng.Uniform()));
    }
    for (int m = 1; m <= h; ++m) {
      const auto counts = RankCounts(a, mu, 2 * m - 1);
      const double oracle = CauchyBinetOracle(a, mu, m);
      const double value = MomentDeterminant(counts, m).value;
      const double rel = std::abs(value - oracle) / std::abs(oracle);
      worst = std::max(worst, rel);
      ++checked;
      report.Check(rel <= 1e-9, "trial " + std::to_string(trial) + " m=" + std::to_string(m) +
                                    " relative error " + Fmt(rel));
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.Check(seconds < 1.0, "runtime " + Fmt(seconds) + " s");
  report.Note(std::to_string(checked) + " determinants, worst relative error " + Fmt(worst) +
              ", " + Fmt(seconds) + " s");
  return report.Finish();
}

Outcome Criterion2() {
  Report report;
  Rng rng(20262);
  for (int trial = 0; trial < 50; ++trial) {
    const double l1 = 100 * rng.Uniform() - 50, l2 = 100 * rng.Uniform() - 50;
    const double gamma = VandermondeGamma(std::vector<double>{l1, l2});
    // The expanded display agrees up to the rounding of its own terms; the
    // closed form is the squared difference exactly.
    const double expanded = l1 * l1 + l2 * l2 - 2 * l1 * l2;
    report.Check(std::abs(gamma - expanded) <= 1e-14 * (l1 * l1 + l2 * l2),
                 "2x2 coefficient at (" + Fmt(l1) + ", " + Fmt(l2) + ")");
    report.Check(gamma == (l1 - l2) * (l1 - l2), "(l1 - l2)^2 at trial " + std::to_string(trial));
  }
  double worst = 0;
  for (int m = 3; m <= 4; ++m) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> mu, a(m, 1.0);
      for (int s = 0; s < m; ++s) mu.push_back((0.5 + 0.6 * s + 0.3 * rng.Uniform()) *
                                               (rng.Bernoulli(0.5) ? 1 : -1));
      const double oracle = CauchyBinetOracle(a, mu, m);
      const double rel = std::abs(VandermondeGamma(mu) - oracle) / oracle;
      worst = std::max(worst, rel);
      report.Check(rel <= 1e-12, "m=" + std::to_string(m) + " relative error " + Fmt(rel));
    }
  }
  report.Note("2x2 identity exact on 50 pairs; m=3,4 worst relative error " + Fmt(worst));
  return report.Finish();
}

Outcome Criterion3() {
  Report report;
  Rng rng(20263);
  double worst_value = 0, worst_t = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const double a = 1 + 50 * rng.Uniform(), b = 1 + 50 * rng.Uniform();
    const std::vector<double> mu{a / 2, b / 2}, nu{b / 2, a / 2};
    const ChDivergenceValue d = ChDivergence(mu, nu);
    const double expected = std::pow(std::sqrt(a) - std::sqrt(b), 2) / 2;
    const ChDivergenceValue grid = GridDivergence(mu, nu, 100000);
    worst_value = std::max(worst_value, std::abs(d.value - expected));
    worst_t = std::max(worst_t, std::abs(d.t_star - 0.5));
    report.Check(std::abs(d.value - expected) <= 1e-6, "value at (" + Fmt(a) + ", " + Fmt(b) + ")");
    report.Check(std::abs(d.t_star - 0.5) <= 1e-4, "t* at (" + Fmt(a) + ", " + Fmt(b) + ")");
    report.Check(std::abs(grid.t_star - 0.5) <= 1e-4, "grid t* at (" + Fmt(a) + ", " + Fmt(b) + ")");
    report.Check(std::abs(grid.value - d.value) <= 1e-6, "grid value at trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int len = 1 + static_cast<int>(rng.Below(5));
    std::vector<double> mu, nu;
    for (int i = 0; i < len; ++i) {
      mu.push_back(30 * rng.Uniform());
      nu.push_back(30 * rng.Uniform());
    }
    const double self = ChDivergence(mu, mu).value;
    const double forward = ChDivergence(mu, nu).value;
    const double backward = ChDivergence(nu, mu).value;
    double hellinger = 0;
    for (int i = 0; i < len; ++i) hellinger += 0.5 * std::pow(std::sqrt(mu[i]) - std::sqrt(nu[i]), 2);
    report.Check(std::abs(self) <= 1e-12, "D(mu, mu) = " + Fmt(self));
    report.Check(std::abs(forward - backward) <= 1e-9 * (1 + forward), "symmetry");
    report.Check(forward >= hellinger - 1e-12, "Hellinger bound");
  }
  report.Note("20 closed-form pairs: max |D - D_exact| " + Fmt(worst_value) + ", max |t* - 1/2| " +
              Fmt(worst_t) + "; 200 random pairs satisfy identity, symmetry, Hellinger bound");
  return report.Finish();
}

Outcome Criterion4() {
  Report report;
  Rng rng(20264);
  for (int k = 2; k <= 4; ++k) {
    const double alpha = 10 + 40 * rng.Uniform(), beta = 1 + 8 * rng.Uniform();
    const ExactSpectrum s = ComputeExactSpectrum(SbmParams::Symmetric(k, alpha, beta));
    report.Check(s.h == 2, "k=" + std::to_string(k) + " distinct eigenvalues " + std::to_string(s.h));
    if (s.h == 2) {
      report.Check(std::abs(s.values[0] - (alpha + (k - 1) * beta) / k) <= 1e-10, "leading, k=" + std::to_string(k));
      report.Check(std::abs(s.values[1] - (alpha - beta) / k) <= 1e-10, "second, k=" + std::to_string(k));
    }
  }
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(rng.Below(5));
    SbmParams params;
    double total = 0;
    for (int i = 0; i < k; ++i) {
      params.p.push_back(0.2 + rng.Uniform());
      total += params.p.back();
    }
    for (double& x : params.p) x /= total;
    params.Q.resize(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) params.Q(i, j) = params.Q(j, i) = 50 * rng.Uniform();
    const ExactSpectrum s = ComputeExactSpectrum(params);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(k, k);
    for (const auto& z : s.zeta) sum += z;
    Eigen::MatrixXd inv_p = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) inv_p(i, i) = 1.0 / params.p[i];
    const double err = (sum - inv_p).cwiseAbs().maxCoeff() / inv_p.maxCoeff();
    worst = std::max(worst, err);
    report.Check(err <= 1e-9, "resolution of identity, trial " + std::to_string(trial) + ": " + Fmt(err));
  }
  report.Note("symmetric eigenvalues exact for k=2,3,4; sum of zeta = P^-1 to " + Fmt(worst) +
              " over 100 instances");
  return report.Finish();
}

const SbmParams kTwoCommunity = SbmParams::Symmetric(2, 50, 10, Regime::kConstant);

Outcome Criterion5() {
  Report report;
  const size_t n = 30000;
  const int seeds = 20;
  int good = 0;
  std::vector<std::string> reasons;
  for (int seed = 0; seed < seeds; ++seed) {
    const Graph g = SampleSbm(kTwoCommunity, n, 5000 + seed).first;
    ImprovedEigenOptions options;
    options.exec.threads = HardwareThreads();
    try {
      const EigenEstimate e = ImprovedEigenvalueApprox(g, 0.1, seed, options);
      const bool ok = e.h == 2 && std::abs(e.values[0] - 30) <= 3 && std::abs(e.values[1] - 20) <= 2;
      good += ok;
      if (!ok) {
        std::string v;
        for (double x : e.values) v += (v.empty() ? "" : ",") + Fmt(x);
        reasons.push_back("h''=" + std::to_string(e.h) + " [" + v + "]");
      }
    } catch (const EstimationFailure& e) {
      reasons.push_back(e.what());
    }
  }
  report.Check(5 * good >= 4 * seeds, std::to_string(good) + "/" + std::to_string(seeds) +
                                          " seeds within 10% (need 16)" +
                                          (reasons.empty() ? "" : "; e.g. " + reasons.front()));
  report.Note(std::to_string(good) + "/" + std::to_string(seeds) + " seeds within 10%");
  return report.Finish();
}

Outcome Criterion6() {
  Report report;
  const size_t n = 30000;
  const int seeds = 20;
  int good = 0;
  std::string example;
  std::vector<double> base_accuracy;
  for (int seed = 0; seed < seeds; ++seed) {
    const auto [g, truth] = SampleSbm(kTwoCommunity, n, 6000 + seed);
    SphereComparisonOptions options;
    options.exec.threads = HardwareThreads();
    const ClassificationResult result = AgnosticSphereComparison(g, 0.4, seed, options);
    const double accuracy = RunAccuracy(truth, result);
    base_accuracy.push_back(accuracy);
    if (accuracy >= 0.9) ++good;
    if (example.empty() && accuracy < 0.9) {
      example = result.ok() ? "accuracy " + Fmt(accuracy) : result.failure_reason;
    }
  }
  report.Check(10 * good >= 7 * seeds, std::to_string(good) + "/" + std::to_string(seeds) +
                                           " seeds with accuracy >= 0.9 (need 14)" +
                                           (example.empty() ? "" : "; e.g. " + example));
  // Median accuracy over the scale factor; the scale-1 cell reuses the
  // first seven seeds above.
  std::vector<double> medians{Median({base_accuracy.begin(), base_accuracy.begin() + 7})};
  for (double scale : {2.0, 4.0}) {
    SbmParams params = kTwoCommunity;
    params.scale = scale;
    std::vector<double> accuracy;
    for (int seed = 0; seed < 7; ++seed) {
      const auto [g, truth] = SampleSbm(params, n, 6000 + seed);
      SphereComparisonOptions options;
      options.exec.threads = HardwareThreads();
      accuracy.push_back(RunAccuracy(truth, AgnosticSphereComparison(g, 0.4, seed, options)));
    }
    medians.push_back(Median(accuracy));
  }
  const std::string curve = Fmt(medians[0]) + " / " + Fmt(medians[1]) + " / " + Fmt(medians[2]);
  report.Check(medians[0] <= medians[1] && medians[1] <= medians[2],
               "median accuracy over scale 1/2/4 not nondecreasing: " + curve);
  report.Note(std::to_string(good) + "/20 seeds >= 0.9; median accuracy over scale 1/2/4: " + curve);
  return report.Finish();
}

// MAP error rate of the degree-profile test with the true parameters.
double MapErrorRate(size_t n, int draws, uint64_t batch) {
  const SbmParams params = SbmParams::Symmetric(2, 16, 4, Regime::kLogarithmic);
  ParamEstimate truth;
  truth.p_hat = params.p;
  truth.Q_hat = params.Q;
  truth.regime = Regime::kLogarithmic;
  truth.n = n;
  const ProfileClassifier classifier(truth);
  const Eigen::MatrixXd theta = ProfileMeans(truth);
  Rng rng(DeriveSeed(static_cast<uint64_t>(n), Stream::kMonteCarlo, batch));
  int errors = 0;
  std::vector<int64_t> profile(2);
  for (int draw = 0; draw < draws; ++draw) {
    const int sigma = static_cast<int>(rng.Below(2));
    for (int i = 0; i < 2; ++i) {
      std::poisson_distribution<int64_t> poisson(theta(i, sigma));
      profile[i] = poisson(rng);
    }
    if (classifier.Map(profile).index != sigma) ++errors;
  }
  return static_cast<double>(errors) / draws;
}

Outcome Criterion7() {
  Report report;
  const int k = 2;
  const double bound = 4.0 * k * k * std::pow(1e4, -1.6);
  const double rate = MapErrorRate(10000, 100000, 999);
  report.Check(rate < bound, "error rate " + Fmt(rate) + " at n=1e4 not below " + Fmt(bound));
  // Batches of 10⁶ draws resolve the n = 100 error rate (≈ 6e-6); at larger
  // n errors become too rare to observe, so the medians can only reach 0 and
  // the decrease is required to be non-strict between consecutive sizes.
  std::vector<double> medians;
  for (size_t n : {size_t(100), size_t(1000), size_t(10000)}) {
    std::vector<double> batches(10);
    ParallelForEach(batches.size(), HardwareThreads(),
                    [&](size_t b) { batches[b] = MapErrorRate(n, 1000000, b); });
    medians.push_back(Median(batches));
  }
  const std::string curve = Fmt(medians[0]) + " / " + Fmt(medians[1]) + " / " + Fmt(medians[2]);
  report.Check(medians[0] >= medians[1] && medians[1] >= medians[2] && medians[0] > medians[2],
               "median batch error over n=1e2/1e3/1e4 does not decrease: " + curve);
  report.Note("error rate " + Fmt(rate) + " < " + Fmt(bound) + " at n=1e4 (1e5 draws); median over n=1e2/1e3/1e4: " + curve);
  return report.Finish();
}

Outcome Criterion8() {
  Report report;
  const SbmParams params = SbmParams::Symmetric(2, 16, 4, Regime::kLogarithmic);
  const int seeds = 50;
  int good = 0;
  double worst = 0;
  for (int seed = 0; seed < seeds; ++seed) {
    const auto [g, truth] = SampleSbm(params, 10000, 8000 + seed);
    const ParamEstimate e = EstimateParams(g, truth, Regime::kLogarithmic);
    double err = 0;
    for (int i = 0; i < 2; ++i) {
      err = std::max(err, std::abs(e.p_hat[i] - params.p[i]) / params.p[i]);
      for (int j = 0; j < 2; ++j) err = std::max(err, std::abs(e.Q_hat(i, j) - params.Q(i, j)) / params.Q(i, j));
    }
    worst = std::max(worst, err);
    if (err <= 0.05) ++good;
  }
  report.Check(10 * good >= 9 * seeds, std::to_string(good) + "/50 seeds within 5% (need 45)");
  report.Note(std::to_string(good) + "/50 seeds within 5%, worst relative error " + Fmt(worst));
  return report.Finish();
}

Outcome Criterion9() {
  Report report;
  const SbmParams params = SbmParams::Symmetric(2, 16, 4, Regime::kLogarithmic);
  const int seeds = 20;
  int exact = 0;
  std::string example;
  for (int seed = 0; seed < seeds; ++seed) {
    const auto [g, truth] = SampleSbm(params, 5000, 9000 + seed);
    DegreeProfilingOptions options;
    options.exec.threads = HardwareThreads();
    options.partial.exec.threads = HardwareThreads();
    try {
      const DegreeProfilingResult result = AgnosticDegreeProfiling(g, 0.4, seed, options);
      const double accuracy = Agreement(truth, result.groups).accuracy;
      if (accuracy == 1.0) {
        ++exact;
      } else if (example.empty()) {
        example = "accuracy " + Fmt(accuracy, 6);
      }
    } catch (const PipelineError& e) {
      if (example.empty()) example = e.what();
    }
  }
  report.Check(10 * exact >= 7 * seeds, std::to_string(exact) + "/20 seeds exactly recovered (need 14)" +
                                            (example.empty() ? "" : "; e.g. " + example));
  // a = 6, b = 4 scaled by 3: D_+ = (√18 − √12)²/2 ≈ 0.303 < 1.
  const SbmParams close = SbmParams::Symmetric(2, 18, 12, Regime::kLogarithmic);
  const DivergenceMatrix d = FinestPartition(close);
  const double analytic = std::pow(std::sqrt(18.0) - std::sqrt(12.0), 2) / 2;
  report.Check(std::abs(d.d_plus(0, 1) - analytic) <= 1e-6, "D_+ of the merged model " + Fmt(d.d_plus(0, 1)));
  report.Check(d.finest.size() == 1, "finest partition of the merged model has " +
                                         std::to_string(d.finest.size()) + " groups");
  report.Note(std::to_string(exact) + "/20 seeds exact; D_+ = " + Fmt(analytic) + " model gives one group");
  return report.Finish();
}

Outcome Criterion10() {
  Report report;
  const auto [g, truth] = SampleSbm(kTwoCommunity, 2000, 10000);
  RealDataOptions options;
  options.trials = 40;
  options.exec.threads = HardwareThreads();
  const RealDataResult result = RealDataTwoCommunity(g, 10, options);
  int good = 0;
  for (const auto& trial : result.trials) {
    if (trial.ok() && Agreement(truth, trial.labels).accuracy >= 0.9) ++good;
  }
  report.Check(2 * good > 40, std::to_string(good) + "/40 surrogate trials with accuracy >= 0.9");
  report.Note(std::to_string(good) + "/40 surrogate trials >= 0.9");

  // Optional: the political-blogs network, from a GML file or an edge list
  // plus labels.
  const char* gml = std::getenv("AGSBM_BLOGS_GML");
  const char* edges = std::getenv("AGSBM_BLOGS_EDGES");
  const char* labels = std::getenv("AGSBM_BLOGS_LABELS");
  std::optional<LabelledGraph> blogs;
  if (gml != nullptr) {
    blogs = ReadGmlFile(gml);
  } else if (edges != nullptr && labels != nullptr) {
    blogs = LabelledGraph{ReadEdgeListFile(edges), ReadLabelsFile(labels)};
  }
  if (!blogs) {
    report.Note("blogs check SKIPPED (set AGSBM_BLOGS_GML or AGSBM_BLOGS_EDGES/AGSBM_BLOGS_LABELS)");
    return report.Finish();
  }
  const RealDataResult real = RealDataTwoCommunity(blogs->graph, 11, options);
  // Misclassifications are counted on the largest component.
  CommunityLabels comp_truth{{}, blogs->labels.k};
  for (Vertex v : real.component) comp_truth.labels.push_back(blogs->labels.labels[v]);
  int within = 0;
  for (const auto& trial : real.trials) {
    if (!trial.ok()) continue;
    CommunityLabels inferred{{}, trial.labels.k};
    for (Vertex v : real.component) inferred.labels.push_back(trial.labels.labels[v]);
    const double accuracy = Agreement(comp_truth, inferred).accuracy;
    const double wrong = std::round((1.0 - accuracy) * static_cast<double>(real.component.size()));
    if (wrong <= 80) ++within;
  }
  report.Check(2 * within > static_cast<int>(real.trials.size()),
               std::to_string(within) + " blogs trials with <= 80 misclassified");
  report.Note("blogs: " + std::to_string(within) + "/" + std::to_string(real.trials.size()) +
              " trials with <= 80 misclassified on " + std::to_string(real.component.size()) + " vertices");
  return report.Finish();
}

Outcome Criterion11() {
  Report report;
  const auto [g, truth] = SampleSbm(kTwoCommunity, 3000, 11000);
  const auto [g_log, truth_log] =
      SampleSbm(SbmParams::Symmetric(2, 16, 4, Regime::kLogarithmic), 3000, 11001);
  using Producer = std::function<std::string(int)>;
  auto guarded = [](const std::function<Json(int)>& f) -> Producer {
    return [f](int threads) {
      try {
        return f(threads).dump();
      } catch (const std::exception& e) {
        return std::string("error: ") + e.what();
      }
    };
  };
  const std::vector<std::pair<std::string, Producer>> pipelines{
      {"eigs", guarded([&](int threads) {
         ImprovedEigenOptions o;
         o.exec.threads = threads;
         o.work_budget_factor = 0;
         return ToJson(ImprovedEigenvalueApprox(g, 0.1, 3, o));
       })},
      {"partial", guarded([&](int threads) {
         SphereComparisonOptions o;
         o.exec.threads = threads;
         return ToJson(AgnosticSphereComparison(g, 0.4, 3, o), true);
       })},
      {"exact", guarded([&](int threads) {
         DegreeProfilingOptions o;
         o.exec.threads = threads;
         o.partial.exec.threads = threads;
         o.preliminary_override = truth_log;
         return ToJson(AgnosticDegreeProfiling(g_log, 0.4, 3, o), true);
       })},
      {"realdata", guarded([&](int threads) {
         RealDataOptions o;
         o.trials = 8;
         o.exec.threads = threads;
         return ToJson(RealDataTwoCommunity(g, 3, o), true);
       })},
      {"sweep", guarded([&](int threads) {
         SweepConfig config;
         config.n_values = {500, 800};
         config.scale_values = {1, 2};
         config.model = SbmParams::Symmetric(2, 16, 4, Regime::kLogarithmic);
         config.seeds = {1, 2};
         config.pipeline = SweepPipeline::kExact;
         config.exec.threads = threads;
         return SweepJson(RunSweep(config), config);
       })},
  };
  std::string names;
  for (const auto& [name, produce] : pipelines) {
    const std::string one = produce(1);
    const std::string four = produce(4);
    report.Check(one == four, name + " output differs between 1 and 4 threads");
    names += (names.empty() ? "" : ", ") + name;
  }
  report.Note("byte-identical JSON at 1 and 4 threads: " + names);
  return report.Finish();
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& Criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Cauchy-Binet determinant identity", Criterion1},
      {"Vandermonde gamma coefficient", Criterion2},
      {"CH-divergence closed form and properties", Criterion3},
      {"exact spectrum oracle", Criterion4},
      {"eigenvalue estimation (k=2, n=30000)", Criterion5},
      {"partial recovery (k=2, n=30000)", Criterion6},
      {"degree-profile MAP error rate", Criterion7},
      {"parameter estimation", Criterion8},
      {"exact recovery", Criterion9},
      {"real-data mode", Criterion10},
      {"determinism across thread counts", Criterion11},
  };
  return criteria;
}

bool RunCriterion(int index) {
  const auto& [name, run] = Criteria()[index - 1];
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = run();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %2d %s: %s -- %s [%.1f s]\n", index, outcome.pass ? "PASS" : "FAIL",
              name.c_str(), outcome.detail.c_str(), seconds);
  std::fflush(stdout);
  return outcome.pass;
}

}  // namespace
}  // namespace agsbm

int main(int argc, char** argv) {
  const int count = static_cast<int>(agsbm::Criteria().size());
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    const int index = std::atoi(argv[2]);
    if (index < 1 || index > count) {
      std::fprintf(stderr, "criterion must be between 1 and %d\n", count);
      return 2;
    }
    return agsbm::RunCriterion(index) ? 0 : 1;
  }
  if (argc != 1) {
    std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
    return 2;
  }
  bool all = true;
  for (int i = 1; i <= count; ++i) all = agsbm::RunCriterion(i) && all;
  return all ? 0 : 1;
}
