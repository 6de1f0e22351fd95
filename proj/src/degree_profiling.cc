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

#include "agsbm/degree_profiling.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "agsbm/errors.h"
#include "agsbm/rng.h"

namespace agsbm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// μ^t ν^{1−t} with 0^t·c^{1−t} = 0 inside (0, 1).
double GeometricMix(double mu, double nu, double t) {
  if (t <= 0.0) return nu;
  if (t >= 1.0) return mu;
  if (mu == 0.0 || nu == 0.0) return 0.0;
  return std::exp(t * std::log(mu) + (1.0 - t) * std::log(nu));
}

double Objective(std::span<const double> mu, std::span<const double> nu, double t) {
  double sum = 0.0;
  for (size_t x = 0; x < mu.size(); ++x) {
    sum += t * mu[x] + (1.0 - t) * nu[x] - GeometricMix(mu[x], nu[x], t);
  }
  return sum;
}

double LogSumExp(const std::vector<double>& values) {
  double top = kNegInf;
  for (double v : values) top = std::max(top, v);
  if (top == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - top);
  return top + std::log(sum);
}

int ArgMaxLowest(const std::vector<double>& values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

// Union-find with path halving; roots are the smallest member.
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int k) : parent(k) { std::iota(parent.begin(), parent.end(), 0); }
  int Find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

ChDivergenceValue ChDivergence(std::span<const double> mu, std::span<const double> nu) {
  if (mu.size() != nu.size()) throw ParameterError("CH-divergence of vectors of different lengths");
  for (size_t x = 0; x < mu.size(); ++x) {
    if (!(mu[x] >= 0.0) || !(nu[x] >= 0.0)) {
      throw ParameterError("CH-divergence needs nonnegative entries");
    }
  }
  // Golden-section search for the maximum of the concave objective.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = Objective(mu, nu, a);
  double fb = Objective(mu, nu, b);
  while (hi - lo > 1e-8) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = Objective(mu, nu, b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = Objective(mu, nu, a);
    }
  }
  ChDivergenceValue out;
  out.t_star = 0.5 * (lo + hi);
  out.value = std::max(0.0, Objective(mu, nu, out.t_star));
  return out;
}

ParamEstimate EstimateParams(const Graph& g, const CommunityLabels& labels, Regime regime) {
  const size_t n = g.num_vertices();
  if (labels.size() != n) throw ParameterError("labels do not cover the graph");
  labels.Validate();
  const int k = labels.k;
  ParamEstimate est;
  est.regime = regime;
  est.n = n;
  est.p_hat.assign(k, 0.0);
  est.Q_hat = Eigen::MatrixXd::Zero(k, k);
  std::vector<double> sizes(k, 0.0);
  for (int label : labels.labels) sizes[label] += 1.0;
  Eigen::MatrixXd edges = Eigen::MatrixXd::Zero(k, k);
  for (const auto& [u, v] : g.Edges()) {
    const int a = labels.labels[u];
    const int b = labels.labels[v];
    edges(a, b) += 1.0;
    if (a != b) edges(b, a) += 1.0;
  }
  const double dn = static_cast<double>(n);
  double factor = dn;
  if (regime == Regime::kLogarithmic) {
    if (n < 2) throw ParameterError("the logarithmic regime needs n >= 2");
    factor = dn / std::log(dn);
  }
  for (int i = 0; i < k; ++i) {
    est.p_hat[i] = n == 0 ? 0.0 : sizes[i] / dn;
    if (sizes[i] == 0.0) est.empty_classes.push_back(i);
    for (int j = 0; j < k; ++j) {
      const double pairs = i == j ? sizes[i] * (sizes[i] - 1.0) / 2.0 : sizes[i] * sizes[j];
      est.Q_hat(i, j) = pairs > 0.0 ? factor * edges(i, j) / pairs : 0.0;
    }
  }
  return est;
}

DivergenceMatrix FinestPartition(std::span<const double> p, const Eigen::MatrixXd& Q) {
  const int k = static_cast<int>(p.size());
  if (k < 1 || Q.rows() != k || Q.cols() != k) {
    throw ParameterError("finest partition needs a nonempty prior and a k x k kernel");
  }
  // Columns of PQ.
  std::vector<std::vector<double>> columns(k, std::vector<double>(k));
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i) columns[j][i] = p[i] * Q(i, j);
  }
  DivergenceMatrix out;
  out.d_plus = Eigen::MatrixXd::Zero(k, k);
  out.t_star = Eigen::MatrixXd::Constant(k, k, 0.5);
  DisjointSets sets(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const auto d = ChDivergence(columns[i], columns[j]);
      out.d_plus(i, j) = out.d_plus(j, i) = d.value;
      out.t_star(i, j) = d.t_star;
      out.t_star(j, i) = 1.0 - d.t_star;
      if (d.value < 1.0) sets.Union(i, j);
    }
  }
  out.group_of.assign(k, -1);
  for (int i = 0; i < k; ++i) {
    const int root = sets.Find(i);
    if (out.group_of[root] < 0) {
      out.group_of[root] = static_cast<int>(out.finest.size());
      out.finest.emplace_back();
    }
    out.group_of[i] = out.group_of[root];
    out.finest[out.group_of[i]].push_back(i);
  }
  return out;
}

DivergenceMatrix FinestPartition(const SbmParams& params) {
  params.Validate();
  return FinestPartition(params.p, params.scale * params.Q);
}

DivergenceMatrix FinestPartition(const ParamEstimate& estimate) {
  return FinestPartition(estimate.p_hat, estimate.Q_hat);
}

std::vector<int64_t> DegreeProfile(const Graph& g, const CommunityLabels& labels, Vertex v) {
  std::vector<int64_t> d(labels.k, 0);
  for (Vertex u : g.neighbors(v)) ++d[labels.labels[u]];
  return d;
}

Eigen::MatrixXd ProfileMeans(const ParamEstimate& estimate, double mean_factor) {
  const int k = estimate.k();
  double scale = mean_factor;
  if (estimate.regime == Regime::kLogarithmic) {
    scale *= std::log(static_cast<double>(std::max<size_t>(estimate.n, 2)));
  }
  Eigen::MatrixXd theta(k, k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i) theta(i, j) = scale * estimate.p_hat[i] * estimate.Q_hat(i, j);
  }
  return theta;
}

ProfileClassifier::ProfileClassifier(const ParamEstimate& estimate, double mean_factor)
    : theta_(ProfileMeans(estimate, mean_factor)) {
  const int k = estimate.k();
  log_theta_ = theta_.unaryExpr([](double x) { return x > 0.0 ? std::log(x) : kNegInf; });
  log_prior_.resize(k);
  for (int j = 0; j < k; ++j) {
    const double pj = estimate.p_hat[j];
    if (!std::isfinite(pj) || pj < 0.0) throw ParameterError("invalid prior estimate");
    log_prior_[j] = pj > 0.0 ? std::log(pj) : kNegInf;
  }
  if (!theta_.allFinite()) throw ParameterError("profile means must be finite");
}

std::vector<double> ProfileClassifier::LogScores(std::span<const int64_t> profile) const {
  const int k = this->k();
  if (static_cast<int>(profile.size()) != k) throw ParameterError("profile has the wrong length");
  std::vector<double> scores(k);
  for (int j = 0; j < k; ++j) {
    double s = log_prior_[j];
    for (int i = 0; i < k && s != kNegInf; ++i) {
      const double d = static_cast<double>(profile[i]);
      if (d > 0.0) {
        if (log_theta_(i, j) == kNegInf) {
          s = kNegInf;
          break;
        }
        s += d * log_theta_(i, j);
      }
      s -= theta_(i, j);
    }
    scores[j] = s;
  }
  return scores;
}

ProfileDecision ProfileClassifier::Map(std::span<const int64_t> profile) const {
  const auto scores = LogScores(profile);
  ProfileDecision out;
  if (std::all_of(scores.begin(), scores.end(), [](double s) { return s == kNegInf; })) {
    out.index = ArgMaxLowest(log_prior_);
    out.fallback = true;
    return out;
  }
  out.index = ArgMaxLowest(scores);
  return out;
}

ProfileDecision ProfileClassifier::Composite(
    std::span<const int64_t> profile, const std::vector<std::vector<int>>& partition) const {
  const auto scores = LogScores(profile);
  std::vector<double> group(partition.size(), kNegInf);
  for (size_t s = 0; s < partition.size(); ++s) {
    std::vector<double> members;
    for (int i : partition[s]) {
      if (i < 0 || i >= k()) throw ParameterError("partition member out of range");
      members.push_back(scores[i]);
    }
    group[s] = LogSumExp(members);
  }
  ProfileDecision out;
  if (group.empty()) throw ParameterError("empty partition");
  if (std::all_of(group.begin(), group.end(), [](double s) { return s == kNegInf; })) {
    std::vector<double> prior(partition.size(), kNegInf);
    for (size_t s = 0; s < partition.size(); ++s) {
      std::vector<double> members;
      for (int i : partition[s]) members.push_back(log_prior_[i]);
      prior[s] = LogSumExp(members);
    }
    out.index = ArgMaxLowest(prior);
    out.fallback = true;
    return out;
  }
  out.index = ArgMaxLowest(group);
  return out;
}

ProfileDecision MapClassifyProfile(std::span<const int64_t> profile,
                                   const ParamEstimate& estimate) {
  return ProfileClassifier(estimate).Map(profile);
}

ProfileDecision CompositeClassifyProfile(std::span<const int64_t> profile,
                                         const ParamEstimate& estimate,
                                         const std::vector<std::vector<int>>& partition) {
  return ProfileClassifier(estimate).Composite(profile, partition);
}

double DefaultProfilingGamma(size_t n) {
  if (n < 16) throw ParameterError("the default split needs n >= 16 (ln ln n > 0)");
  const double ln_n = std::log(static_cast<double>(n));
  return std::log(ln_n) / (4.0 * ln_n);
}

DegreeProfilingResult AgnosticDegreeProfiling(const Graph& g, double delta, uint64_t seed,
                                              const DegreeProfilingOptions& options) {
  const size_t n = g.num_vertices();
  if (n < 2) throw ParameterError("degree profiling needs at least two vertices");
  DegreeProfilingResult result;
  result.gamma = options.gamma ? *options.gamma : DefaultProfilingGamma(n);
  if (!(result.gamma > 0.0 && result.gamma < 1.0)) {
    throw ParameterError("gamma must lie in (0, 1)");
  }
  const double keep = 1.0 - result.gamma;
  const int threads = options.exec.threads;

  // (1) g' receives each edge with probability γ; g'' keeps the rest.
  const EdgeSplit split = SplitEdges(g, result.gamma, seed);
  const Graph& g_prime = split.e.edges;
  const Graph& g_rest = split.g_minus_e;

  // (2) preliminary classification σ'.
  if (options.preliminary_override) {
    result.preliminary = *options.preliminary_override;
    if (result.preliminary.size() != n) throw ParameterError("override labels have the wrong size");
    result.preliminary.Validate();
  } else {
    SphereComparisonOptions partial = options.partial;
    partial.exec = options.exec;
    ClassificationResult pre =
        AgnosticSphereComparison(g_prime, delta, DeriveSeed(seed, Stream::kSplit, 1), partial);
    if (!pre.ok()) throw PipelineError("partial-recovery", pre.failure_reason);
    result.preliminary = pre.labels;
    result.partial = std::move(pre);
  }

  // (3) parameters from σ' on g'', rescaled to the full graph.
  result.preliminary_estimate = EstimateParams(g_rest, result.preliminary, options.regime);
  result.preliminary_estimate.Q_hat /= keep;

  // (4) MAP reclassification from g''-profiles, whose means shrink by 1−γ.
  std::vector<int> sigma2(n, 0);
  std::vector<char> fallback(n, 0);
  {
    const ProfileClassifier classifier(result.preliminary_estimate, keep);
    ParallelForEach(n, threads, [&](size_t v) {
      const auto d = DegreeProfile(g_rest, result.preliminary, static_cast<Vertex>(v));
      const ProfileDecision decision = classifier.Map(d);
      sigma2[v] = decision.index;
      fallback[v] = decision.fallback;
    });
  }
  result.map_fallbacks = std::count(fallback.begin(), fallback.end(), 1);

  // (5) drop empty classes, renumber, and re-estimate on the whole graph.
  std::vector<int> used(result.preliminary.k, 0);
  for (int label : sigma2) used[label] = 1;
  result.contraction.assign(result.preliminary.k, -1);
  int next = 0;
  for (int i = 0; i < result.preliminary.k; ++i) {
    if (used[i]) result.contraction[i] = next++;
  }
  for (int& label : sigma2) label = result.contraction[label];
  result.reclassified.labels = std::move(sigma2);
  result.reclassified.k = next;
  result.estimate = EstimateParams(g, result.reclassified, options.regime);

  // (6) finest partition and composite classification.
  result.divergence = FinestPartition(result.estimate);
  result.groups.k = static_cast<int>(result.divergence.finest.size());
  result.groups.labels.assign(n, 0);
  std::fill(fallback.begin(), fallback.end(), 0);
  {
    const ProfileClassifier classifier(result.estimate, keep);
    ParallelForEach(n, threads, [&](size_t v) {
      const auto d = DegreeProfile(g_rest, result.reclassified, static_cast<Vertex>(v));
      const ProfileDecision decision = classifier.Composite(d, result.divergence.finest);
      result.groups.labels[v] = decision.index;
      fallback[v] = decision.fallback;
    });
  }
  result.composite_fallbacks = std::count(fallback.begin(), fallback.end(), 1);
  return result;
}

}  // namespace agsbm
