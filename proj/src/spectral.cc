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
#include <cmath>
#include <limits>
#include <numeric>

#include "agsbm/errors.h"
#include "agsbm/rng.h"

namespace agsbm {
namespace {

constexpr double kDistinctRelTol = 1e-9;

double Median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const size_t m = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

// Cross counts N_{d, r}(v·v) of one vertex with itself, shallow depth r,
// for all d up to the explored depth.
class SelfMoments {
 public:
  SelfMoments(const Graph& g_minus_e, const EdgeSubset& e, Vertex v,
              uint64_t budget)
      : e_(e), explorer_(g_minus_e, v), budget_(budget) {}

  ShellExplorer& explorer() { return explorer_; }

  void Charge(uint64_t work) {
    extra_work_ += work;
    CheckBudget();
  }

  void CheckBudget() const {
    if (budget_ != 0 && explorer_.edges_scanned() + extra_work_ > budget_) {
      throw EstimationFailure("work budget exceeded");
    }
  }

  // Returns N_{d, r}(v·v) for d = 0..max_depth.
  const std::vector<double>& Counts(int r, int max_depth) {
    if (r == cached_r_ && max_depth <= cached_depth_) return counts_;
    explorer_.GrowTo(max_depth);
    CheckBudget();
    const auto& shallow = explorer_.shell(r);
    uint64_t work = 0;
    for (Vertex u : shallow) work += e_.edges.degree(u);
    Charge(work);
    const auto raw = CrossCountsByDepth(e_, explorer_, shallow, max_depth);
    counts_.assign(raw.begin(), raw.end());
    cached_r_ = r;
    cached_depth_ = max_depth;
    return counts_;
  }

  // det M_{m, base, r}(v·v).
  Determinant Det(int m, int base, int r) {
    if (m == 0) return MomentDeterminant({}, 0);
    const int top = base + 2 * m - 2;
    const auto& counts = Counts(r, std::max(top, cached_depth_));
    return MomentDeterminant(
        std::span<const double>(counts.data() + base, 2 * m - 1), m);
  }

 private:
  const EdgeSubset& e_;
  ShellExplorer explorer_;
  uint64_t budget_;
  uint64_t extra_work_ = 0;
  std::vector<double> counts_;
  int cached_r_ = -1;
  int cached_depth_ = -1;
};

double UsableAbs(const Determinant& d) {
  return d.negligible ? 0.0 : std::abs(d.value);
}

}  // namespace

void SortByConvention(std::vector<double>& values) {
  std::stable_sort(values.begin(), values.end(), [](double a, double b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    return a > b;
  });
}

ExactSpectrum ComputeExactSpectrum(const SbmParams& params) {
  const int k = params.k();
  for (double pi : params.p) {
    if (!(pi > 0.0)) throw ParameterError("exact spectrum needs p > 0");
  }
  if (params.Q.rows() != k || params.Q.cols() != k) {
    throw ParameterError("Q has the wrong shape");
  }
  Eigen::VectorXd sqrt_p(k);
  for (int i = 0; i < k; ++i) sqrt_p[i] = std::sqrt(params.p[i]);
  const Eigen::MatrixXd s =
      sqrt_p.asDiagonal() * (params.scale * params.Q) * sqrt_p.asDiagonal();
  const SymmetricEigen eig = JacobiEigen(s, 1e-12);

  // Group equal eigenvalues.
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return eig.values[a] > eig.values[b]; });
  const double max_abs = eig.values.cwiseAbs().maxCoeff();
  std::vector<std::vector<int>> groups;
  for (int idx : order) {
    if (!groups.empty()) {
      const double prev = eig.values[groups.back().front()];
      const double cur = eig.values[idx];
      if (std::abs(prev - cur) <=
          kDistinctRelTol * std::max({std::abs(prev), std::abs(cur), max_abs * 1e-300})) {
        groups.back().push_back(idx);
        continue;
      }
    }
    groups.push_back({idx});
  }

  struct Group {
    double value;
    Eigen::MatrixXd uut;  // U_i U_iᵀ
  };
  std::vector<Group> distinct;
  for (const auto& members : groups) {
    Group g{0.0, Eigen::MatrixXd::Zero(k, k)};
    for (int idx : members) {
      g.value += eig.values[idx];
      const Eigen::VectorXd u = eig.vectors.col(idx);
      g.uut += u * u.transpose();
    }
    g.value /= static_cast<double>(members.size());
    distinct.push_back(std::move(g));
  }
  std::stable_sort(distinct.begin(), distinct.end(),
                   [](const Group& a, const Group& b) {
                     if (std::abs(a.value) != std::abs(b.value))
                       return std::abs(a.value) > std::abs(b.value);
                     return a.value > b.value;
                   });

  ExactSpectrum out;
  out.p = params.p;
  out.h = static_cast<int>(distinct.size());
  out.h_prime = out.h;
  const Eigen::VectorXd inv_sqrt_p = sqrt_p.cwiseInverse();
  for (const auto& g : distinct) {
    double value = g.value;
    if (std::abs(value) <= kDistinctRelTol * max_abs) {
      value = 0.0;
      --out.h_prime;
    }
    out.values.push_back(value);
    out.zeta.push_back(inv_sqrt_p.asDiagonal() * g.uut * inv_sqrt_p.asDiagonal());
    out.projector.push_back(sqrt_p.asDiagonal() * g.uut * inv_sqrt_p.asDiagonal());
  }
  return out;
}

double VandermondeGamma(std::span<const double> mus) {
  double gamma = 1.0;
  for (size_t s = 0; s < mus.size(); ++s) {
    for (size_t t = s + 1; t < mus.size(); ++t) {
      const double d = mus[s] - mus[t];
      gamma *= d * d;
    }
  }
  return gamma;
}

Eigen::MatrixXd HankelMatrix(std::span<const double> counts, int m) {
  if (m < 0) throw ParameterError("negative moment matrix dimension");
  if (m > 0 && counts.size() < static_cast<size_t>(2 * m - 1)) {
    throw ParameterError("moment matrix needs 2m - 1 counts");
  }
  Eigen::MatrixXd h(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) h(i, j) = counts[i + j];
  return h;
}

Determinant MomentDeterminant(std::span<const double> counts, int m) {
  return ConditionedDeterminant(HankelMatrix(counts, m));
}

EigenEstimate BasicEigenvalueApprox(const Graph& g_minus_e, const EdgeSubset& e,
                                    double c, Vertex v,
                                    const BasicEigenOptions& options) {
  const size_t num_vertices = g_minus_e.num_vertices();
  if (v >= num_vertices) throw ParameterError("vertex out of range");
  if (!(c > 0.0 && c < 1.0)) throw ParameterError("c must lie in (0, 1)");
  const double n = static_cast<double>(num_vertices);
  const double ln_n = std::log(n);
  if (g_minus_e.degree(v) == 0) {
    throw EstimationFailure("vertex has no neighbors outside E");
  }

  SelfMoments moments(g_minus_e, e, v, options.work_budget);
  ShellExplorer& explorer = moments.explorer();
  EigenEstimate out;

  // (1) Grow shells until one exceeds √n.
  const double root_n = std::sqrt(n);
  while (static_cast<double>(explorer.shell(explorer.depth()).size()) <= root_n) {
    if (!explorer.Grow()) {
      throw EstimationFailure("component exhausted before a shell exceeded sqrt(n)");
    }
    moments.CheckBudget();
  }
  const int r_growth = explorer.depth();
  const double growth = std::pow(n, 1.0 / (2.0 * r_growth));  // (1-c)λ''_1
  out.lambda1_crude = growth / (1.0 - c);

  // (2) Depth and detection of h''.
  int r = static_cast<int>(std::floor((2.0 / 3.0) * ln_n / std::log(growth) -
                                      std::sqrt(ln_n)));
  if (options.depths.r) {
    r = *options.depths.r;
  } else if (r < 1) {
    r = 1;
    out.flags.push_back("r_clamped");
  }
  if (r < 1) throw ParameterError("depth r must be >= 1");

  const double threshold = std::pow(growth, 0.75) + 1.0 / std::sqrt(ln_n);
  int h = -1;
  for (int m = 1; m <= options.max_m; ++m) {
    const double num = std::max(UsableAbs(moments.Det(m, r, r)),
                                UsableAbs(moments.Det(m, r + 1, r)));
    const double den = std::max(UsableAbs(moments.Det(m - 1, r, r)),
                                UsableAbs(moments.Det(m - 1, r + 1, r)));
    double stat;
    if (num == 0.0) {
      stat = 0.0;
    } else if (den == 0.0) {
      stat = std::numeric_limits<double>::infinity();
    } else {
      stat = std::pow(n * num / (c * den), 1.0 / (2.0 * r));
    }
    if (stat < threshold) {
      h = m - 1;
      break;
    }
  }
  if (h < 0) {
    h = options.max_m;
    out.flags.push_back("h_search_exhausted");
  }
  if (h == 0) throw EstimationFailure("no eigenvalue detected");

  // (3) Magnitudes from determinant ratios two depths apart.
  std::vector<double> magnitude(h);
  std::vector<Determinant> d0(h), d1(h);
  double prefix = 1.0;  // Π_{j<i} (1-c)|λ'_j|
  for (int i = 1; i <= h; ++i) {
    Determinant d[4];
    for (int a = 0; a < 4; ++a) d[a] = moments.Det(i, r + a, r);
    d0[i - 1] = d[0];
    d1[i - 1] = d[1];
    const bool use_even = std::abs(d[1].value) <
                          std::sqrt(std::abs(d[0].value) * std::abs(d[2].value));
    const Determinant& top = use_even ? d[2] : d[3];
    const Determinant& bottom = use_even ? d[0] : d[1];
    if (bottom.negligible) {
      throw EstimationFailure("negligible determinant in magnitude estimate");
    }
    double ratio = top.value / bottom.value;
    if (ratio < 0.0) {
      out.flags.push_back("negative_sqrt_" + std::to_string(i));
      ratio = -ratio;
    }
    magnitude[i - 1] = std::sqrt(ratio) / (1.0 - c) / prefix;
    prefix *= (1.0 - c) * magnitude[i - 1];
  }

  // (4) Signs: near-equal magnitudes form (+, −) pairs; isolated values get
  // a signed ratio estimate.
  std::vector<double> values = magnitude;
  const double tol = 1.0 / ln_n;
  auto close = [&](int a, int b) {
    return std::abs(magnitude[a] - magnitude[b]) < tol;
  };
  for (int i = 0; i + 1 < h; ++i) {
    if (close(i, i + 1)) {
      values[i] = magnitude[i];
      values[i + 1] = -magnitude[i + 1];
    }
  }
  double signed_prefix = 1.0;  // Π_{j<i} (1-c)λ'_j
  for (int i = 0; i < h; ++i) {
    const bool isolated = (i + 1 >= h || !close(i, i + 1)) && (i == 0 || !close(i - 1, i));
    if (isolated) {
      if (d0[i].negligible) {
        out.flags.push_back("sign_undetermined_" + std::to_string(i + 1));
      } else {
        values[i] = d1[i].value / d0[i].value / (1.0 - c) / signed_prefix;
      }
    }
    signed_prefix *= (1.0 - c) * values[i];
  }

  std::vector<double> sorted = values;
  SortByConvention(sorted);
  if (sorted != values) out.flags.push_back("reordered");
  out.h = h;
  out.values = std::move(sorted);
  return out;
}

EigenEstimate CombineProbeEstimates(const std::vector<EigenEstimate>& probes) {
  if (probes.empty()) throw EstimationFailure("no probe produced an estimate");
  std::vector<int> hs;
  for (const auto& p : probes) hs.push_back(p.h);
  std::sort(hs.begin(), hs.end());
  EigenEstimate out;
  out.h = hs[(hs.size() - 1) / 2];  // lower median
  std::vector<double> crude;
  for (const auto& p : probes) crude.push_back(p.lambda1_crude);
  out.lambda1_crude = Median(crude);
  for (int i = 0; i < out.h; ++i) {
    std::vector<double> reported;
    for (const auto& p : probes) {
      if (static_cast<int>(p.values.size()) > i) reported.push_back(p.values[i]);
    }
    out.values.push_back(Median(reported));
  }
  std::vector<double> sorted = out.values;
  SortByConvention(sorted);
  if (sorted != out.values) out.flags.push_back("reordered");
  out.values = std::move(sorted);
  return out;
}

EigenEstimate ImprovedEigenvalueApprox(const Graph& g, double c, uint64_t seed,
                                       const ImprovedEigenOptions& options) {
  const size_t n = g.num_vertices();
  if (n == 0 || g.num_edges() == 0) {
    throw EstimationFailure("graph has no edges");
  }
  const double ln_n = std::log(static_cast<double>(n));
  const int probes = options.num_probes > 0
                         ? options.num_probes
                         : std::max(1, static_cast<int>(std::ceil(std::sqrt(ln_n))));
  const EdgeSplit split = SplitEdges(g, c, DeriveSeed(seed, Stream::kSplit, 0));

  // Distinct probe vertices (partial Fisher–Yates on a lazily materialized
  // permutation).
  const size_t count = std::min<size_t>(probes, n);
  Rng rng(seed, Stream::kProbes, 0);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (size_t i = 0; i < count; ++i) {
    std::swap(perm[i], perm[i + rng.Below(n - i)]);
  }

  BasicEigenOptions basic;
  basic.depths = options.depths;
  basic.max_m = options.max_m;
  basic.work_budget =
      options.work_budget_factor > 0
          ? static_cast<uint64_t>(options.work_budget_factor * n * std::sqrt(ln_n))
          : 0;

  std::vector<std::optional<EigenEstimate>> results(count);
  std::vector<std::string> failures(count);
  ParallelForEach(count, options.exec.threads, [&](size_t i) {
    try {
      results[i] = BasicEigenvalueApprox(split.g_minus_e, split.e, c, perm[i], basic);
    } catch (const EstimationFailure& err) {
      failures[i] = err.what();
    }
  });

  std::vector<EigenEstimate> ok;
  std::vector<std::string> flags;
  for (size_t i = 0; i < count; ++i) {
    if (results[i]) {
      ok.push_back(*results[i]);
    } else {
      flags.push_back("probe_failed: " + failures[i]);
    }
  }
  if (ok.empty()) {
    std::string why = failures.empty() ? "no probes" : failures.front();
    throw EstimationFailure("all " + std::to_string(count) +
                            " eigenvalue probes failed (first: " + why + ")");
  }
  EigenEstimate out = CombineProbeEstimates(ok);
  for (const auto& p : ok) {
    for (const auto& f : p.flags) {
      if (std::find(out.flags.begin(), out.flags.end(), f) == out.flags.end()) {
        out.flags.push_back(f);
      }
    }
  }
  out.flags.insert(out.flags.end(), flags.begin(), flags.end());
  return out;
}

}  // namespace agsbm
