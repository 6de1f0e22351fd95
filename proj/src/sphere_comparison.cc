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

#include "agsbm/sphere_comparison.h"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <limits>
#include <numeric>

#include "agsbm/assignment.h"
#include "agsbm/errors.h"
#include "agsbm/rng.h"

namespace agsbm {
namespace {

// A determinant-like quantity with the same "negligible" semantics as
// ConditionedDeterminant.
struct Conditioned {
  double value = 1.0;
  double scale = 1.0;
  bool negligible = false;
};

double Usable(const Determinant& d) { return d.negligible ? 0.0 : d.value; }

// Depth parameters for one classification run.
struct Depths {
  int r = 1;
  int r_prime = 1;
  std::vector<std::string> flags;
};

Depths ChooseDepths(size_t n, const HyperParams& hp, const EigenEstimate& eigs,
                    const DepthOverrides& overrides) {
  Depths d;
  const double ln_n = std::log(static_cast<double>(n));
  const double growth = (1.0 - hp.c) * std::abs(eigs.values.front());
  double r = 1.0;
  double r_prime = 1.0;
  if (growth > 1.0) {
    const double span = ln_n / std::log(growth);
    r = std::floor((1.0 - hp.epsilon / 3.0) * span - std::sqrt(ln_n));
    r_prime = std::floor((2.0 * hp.epsilon / 3.0) * span);
  } else {
    d.flags.push_back("no_growth");
  }
  d.r = static_cast<int>(std::max(r, 1.0));
  d.r_prime = static_cast<int>(std::max(r_prime, 1.0));
  if (r < 1.0) d.flags.push_back("r_clamped");
  if (r_prime < 1.0) d.flags.push_back("r_prime_clamped");
  if (overrides.r) d.r = *overrides.r;
  if (overrides.r_prime) d.r_prime = *overrides.r_prime;
  if (d.r < 1 || d.r_prime < 1) throw ParameterError("depths must be >= 1");
  return d;
}

// z(a·v') where a is explored to depth >= r + 2h and `shallow` = N_{r'}(v').
ZetaEstimate ZetaAgainst(const EdgeSubset& e, const ShellExplorer& deep,
                         std::span<const Vertex> shallow, Vertex v_prime,
                         int r, int r_prime, size_t n, double c,
                         const EigenEstimate& eigs) {
  const int top = r + 2 * eigs.h;
  const auto raw = CrossCountsByDepth(e, deep, shallow, top);
  std::vector<double> counts(raw.begin() + r, raw.end());
  ZetaEstimate z = ZetaFromCounts(counts, r + r_prime, n, c, eigs.values);
  z.v = deep.source();
  z.v_prime = v_prime;
  z.r = r;
  z.r_prime = r_prime;
  return z;
}

// Deterministic m distinct vertices out of n.
std::vector<Vertex> SampleDistinct(size_t n, size_t m, Rng& rng) {
  m = std::min(m, n);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (size_t i = 0; i < m; ++i) std::swap(perm[i], perm[i + rng.Below(n - i)]);
  perm.resize(m);
  return perm;
}

int Gcd(int a, int b) { return b == 0 ? a : Gcd(b, a % b); }

struct Widened {
  double l1;
  double lh;
  int k_prime;
};

Widened Widen(const EigenEstimate& eigs, double delta, size_t n) {
  if (eigs.h < 1 || eigs.values.empty()) {
    throw ParameterError("hyperparameter selection needs at least one eigenvalue");
  }
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("delta must lie in (0, 1]");
  const double ln_n = std::log(static_cast<double>(n));
  const double pad = 2.0 * std::pow(ln_n, -1.5);
  Widened w;
  w.l1 = std::abs(eigs.values.front()) + pad;
  w.lh = std::abs(eigs.values[eigs.h - 1]) - pad;
  w.k_prime = static_cast<int>(std::floor(1.0 / delta));
  return w;
}

constexpr int kSearchBound = 64;

struct EpsilonCandidate {
  double value;
  int z;
  bool reciprocal;
};

std::vector<EpsilonCandidate> EpsilonCandidates() {
  std::vector<EpsilonCandidate> out;
  for (int z = 2; z <= kSearchBound; ++z) {
    out.push_back({1.0 / z, z, true});
    if (z > 2) out.push_back({1.0 - 1.0 / z, z, false});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

HyperParams SelectImpl(const EigenEstimate& eigs, double delta, int m, size_t n,
                       bool best_effort) {
  if (m < 1) throw ParameterError("anchor pool size m must be >= 1");
  const Widened w = Widen(eigs, delta, n);
  HyperParams hp;
  hp.m = m;
  hp.delta = delta;
  hp.lambda1_widened = w.l1;
  hp.lambdah_widened = w.lh;
  hp.k_prime = w.k_prime;

  // (3) x: minimal numerator, then the smallest value with that numerator.
  bool found_x = false;
  for (int a = 1; a <= kSearchBound && !found_x; ++a) {
    for (int b = kSearchBound; b >= 1; --b) {
      if (Gcd(a, b) != 1) continue;
      const double x = static_cast<double>(a) / b;
      if (hyper::XBound(x, w.l1, w.lh, delta, w.k_prime, m, 1.0) < 0.5) {
        hp.x = x;
        hp.x_numerator = a;
        hp.x_denominator = b;
        found_x = true;
        break;
      }
    }
  }
  if (!found_x) {
    if (!best_effort) {
      throw InfeasibleHyperParameters(
          "x: k'(1-delta)^m + 2mk'e^{-A}/(1-e^{-A(B-1)}) < 1/2");
    }
    hp.x = 1.0;
    hp.x_numerator = 1;
    hp.x_denominator = 1;
    hp.relaxed.push_back("x");
  }

  // (4) ε: smallest 1/z or 1 − 1/z meeting both depth inequalities.
  const auto eps_candidates = EpsilonCandidates();
  const EpsilonCandidate* chosen = nullptr;
  int best_score = -1;
  const EpsilonCandidate* best = nullptr;
  for (const auto& cand : eps_candidates) {
    const bool depth_ok = hyper::DepthCondition(cand.value, w.l1, w.lh, 1.0);
    const bool growth_ok = hyper::GrowthCondition(cand.value, w.l1, w.lh, 1.0);
    if (depth_ok && growth_ok) {
      chosen = &cand;
      break;
    }
    const int score = static_cast<int>(depth_ok) + static_cast<int>(growth_ok);
    if (score > best_score) {
      best_score = score;
      best = &cand;
    }
  }
  if (chosen == nullptr) {
    if (!best_effort) {
      const auto& last = eps_candidates.back();
      throw InfeasibleHyperParameters(
          !hyper::DepthCondition(last.value, w.l1, w.lh, 1.0)
              ? "epsilon: (2 l1^3 / lh^2)^(1-eps/3) < l1"
              : "epsilon: 1 + eps/3 > ln(l1) / ln(lh^2 / (2 l1))");
    }
    chosen = best;
    hp.relaxed.push_back("epsilon");
  }
  hp.epsilon = chosen->value;
  hp.epsilon_z = chosen->z;
  hp.epsilon_reciprocal = chosen->reciprocal;

  // (5) c: largest unit reciprocal below 1/9 meeting all four inequalities.
  auto checks = [&](int d) {
    const double oc = 1.0 - 1.0 / d;
    return std::array<bool, 4>{
        hyper::GapCondition(w.l1, w.lh, oc),
        hyper::DepthCondition(hp.epsilon, w.l1, w.lh, oc),
        hyper::GrowthCondition(hp.epsilon, w.l1, w.lh, oc),
        hyper::XBound(hp.x, w.l1, w.lh, delta, w.k_prime, m, oc) < 0.5};
  };
  int chosen_d = -1;
  int best_d = 10;
  int best_c_score = -1;
  for (int d = 10; d <= kSearchBound; ++d) {
    const auto ok = checks(d);
    const int score = std::count(ok.begin(), ok.end(), true);
    if (score == 4) {
      chosen_d = d;
      break;
    }
    if (score > best_c_score) {
      best_c_score = score;
      best_d = d;
    }
  }
  if (chosen_d < 0) {
    if (!best_effort) {
      static const char* kNames[4] = {
          "c: (1-c) lh^4 > 4 l1^3",
          "c: (2(1-c) l1^3 / lh^2)^(1-eps/3) < (1-c) l1",
          "c: 1 + eps/3 > ln((1-c) l1) / ln((1-c) lh^2 / (2 l1))",
          "c: k'(1-delta)^m + 2mk'e^{-A}/(1-e^{-A(B-1)}) < 1/2 with (1-c)"};
      const auto ok = checks(kSearchBound);
      for (int i = 0; i < 4; ++i) {
        if (!ok[i]) throw InfeasibleHyperParameters(kNames[i]);
      }
      throw InfeasibleHyperParameters(kNames[0]);
    }
    chosen_d = best_d;
    hp.relaxed.push_back("c");
  }
  hp.c = 1.0 / chosen_d;
  hp.c_denominator = chosen_d;
  return hp;
}

}  // namespace

bool ZetaEstimate::AnyReliable() const {
  return std::find(reliable.begin(), reliable.end(), true) != reliable.end();
}

ZetaEstimate ZetaFromCounts(std::span<const double> counts, int s, size_t n,
                            double c, std::span<const double> lambdas) {
  const int h = static_cast<int>(lambdas.size());
  if (counts.size() < static_cast<size_t>(2 * h)) {
    throw ParameterError("z-formula needs 2h'' consecutive cross counts");
  }
  const double one_c = 1.0 - c;
  auto lam = [&](int i) { return (i >= 1 && i <= h) ? lambdas[i - 1] : 0.0; };
  std::vector<double> mus(h);
  for (int i = 0; i < h; ++i) mus[i] = one_c * lambdas[i];

  // Num_i = det M_{i,r+1} − (1−c)^i λ'_{i+1} Π_{j<i} λ'_j det M_{i,r};
  // Num_0 = 1 by convention.
  auto numerator = [&](int i) {
    Conditioned out;
    if (i == 0) return out;
    const Determinant d1 = MomentDeterminant(counts.subspan(1, 2 * i - 1), i);
    const Determinant d0 = MomentDeterminant(counts.subspan(0, 2 * i - 1), i);
    double kappa = std::pow(one_c, i) * lam(i + 1);
    for (int j = 1; j < i; ++j) kappa *= lam(j);
    out.value = Usable(d1) - kappa * Usable(d0);
    out.scale = d1.scale + std::abs(kappa) * d0.scale;
    out.negligible = out.scale == 0.0 ||
                     !(std::abs(out.value) >= kNegligibleDeterminant * out.scale);
    return out;
  };

  ZetaEstimate out;
  out.z.assign(h, 0.0);
  out.reliable.assign(h, false);
  Conditioned previous = numerator(0);
  for (int i = 1; i <= h; ++i) {
    const Conditioned current = numerator(i);
    const double gamma_prev =
        VandermondeGamma(std::span<const double>(mus.data(), i - 1));
    const double gamma_i = VandermondeGamma(std::span<const double>(mus.data(), i));
    // (λ'_{i−1} − λ'_i)/λ'_{i−1}, defined as 1 for i = 1.
    const double lead = i == 1 ? 1.0 : (lam(i - 1) - lam(i)) / lam(i - 1);
    const double gap = lam(i) - lam(i + 1);
    const double mu = one_c * lam(i);
    const double z = current.value / previous.value * static_cast<double>(n) *
                     lead * gamma_prev / (c * gap * gamma_i) *
                     std::pow(mu, -static_cast<double>(s) - 1.0);
    const bool ok = !previous.negligible && gap != 0.0 && gamma_i != 0.0 &&
                    mu != 0.0 && (i == 1 || lam(i - 1) != 0.0) && std::isfinite(z);
    out.z[i - 1] = ok ? z : 0.0;
    out.reliable[i - 1] = ok;
    previous = current;
  }
  return out;
}

ZetaEstimate VertexProductApprox(const Graph& g_minus_e, const EdgeSubset& e,
                                 double c, Vertex v, Vertex v_prime, int r,
                                 int r_prime, const EigenEstimate& eigs) {
  if (eigs.h < 1) throw ParameterError("eigenvalue estimate is empty");
  ShellExplorer deep(g_minus_e, v);
  deep.GrowTo(r + 2 * eigs.h + 3);
  ShellExplorer shallow(g_minus_e, v_prime);
  shallow.GrowTo(r_prime);
  return ZetaAgainst(e, deep, shallow.shell(r_prime), v_prime, r, r_prime,
                     g_minus_e.num_vertices(), c, eigs);
}

double ComparisonThreshold(double x, double delta) {
  return 5.0 * (2.0 * x / std::sqrt(delta) + x * x);
}

Verdict CompareZetas(const ZetaEstimate& vv, const ZetaEstimate& vv_prime,
                     const ZetaEstimate& v_prime_v_prime, double threshold) {
  const size_t h = std::min({vv.z.size(), vv_prime.z.size(), v_prime_v_prime.z.size()});
  bool any = false;
  for (size_t i = 0; i < h; ++i) {
    if (!vv.reliable[i] || !vv_prime.reliable[i] || !v_prime_v_prime.reliable[i]) {
      continue;
    }
    any = true;
    if (vv.z[i] - 2.0 * vv_prime.z[i] + v_prime_v_prime.z[i] > threshold) {
      return Verdict::kDifferent;
    }
  }
  if (!any) throw EstimationFailure("no reliable z index for the comparison");
  return Verdict::kSame;
}

Verdict CompareVertices(const Graph& g_minus_e, const EdgeSubset& e, Vertex v,
                        Vertex v_prime, int r, int r_prime, double x, double c,
                        double delta, const EigenEstimate& eigs) {
  const ZetaEstimate a = VertexProductApprox(g_minus_e, e, c, v, v_prime, r, r_prime, eigs);
  const ZetaEstimate b = VertexProductApprox(g_minus_e, e, c, v, v, r, r_prime, eigs);
  const ZetaEstimate d = VertexProductApprox(g_minus_e, e, c, v_prime, v_prime, r, r_prime, eigs);
  return CompareZetas(b, a, d, ComparisonThreshold(x, delta));
}

int ClassifyFromZetas(const std::vector<ZetaEstimate>& zz_self,
                      const std::vector<ZetaEstimate>& cross) {
  const size_t k = zz_self.size();
  if (k == 0 || cross.size() != k) return -1;
  if (k == 1) return 0;
  auto usable = [&](size_t s, size_t i) {
    return i < zz_self[s].z.size() && i < cross[s].z.size() &&
           zz_self[s].reliable[i] && cross[s].reliable[i];
  };
  int best = -1;
  double best_score = std::numeric_limits<double>::infinity();
  for (size_t s = 0; s < k; ++s) {
    double score = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (size_t t = 0; t < k; ++t) {
      if (t == s) continue;
      const size_t h = std::min(zz_self[s].z.size(), zz_self[t].z.size());
      for (size_t i = 0; i < h; ++i) {
        if (!usable(s, i) || !usable(t, i)) continue;
        any = true;
        const double margin = (zz_self[s].z[i] - 2.0 * cross[s].z[i]) -
                              (zz_self[t].z[i] - 2.0 * cross[t].z[i]);
        score = std::max(score, margin);
      }
    }
    if (any && score < best_score) {
      best_score = score;
      best = static_cast<int>(s);
    }
  }
  return best;
}

int ClassifyVertex(const std::vector<Vertex>& anchors,
                   const std::vector<ZetaEstimate>& zz_self, Vertex v_prime,
                   int r, int r_prime, const Graph& g_minus_e,
                   const EdgeSubset& e, double c, const EigenEstimate& eigs) {
  if (anchors.size() != zz_self.size()) {
    throw ParameterError("one self-product per anchor is required");
  }
  if (anchors.size() == 1) return 0;
  std::vector<ZetaEstimate> cross;
  cross.reserve(anchors.size());
  for (Vertex a : anchors) {
    cross.push_back(VertexProductApprox(g_minus_e, e, c, a, v_prime, r, r_prime, eigs));
  }
  return ClassifyFromZetas(zz_self, cross);
}

namespace hyper {

double XBound(double x, double l1, double lh, double delta, int k_prime, int m,
              double one_minus_c) {
  const double kp = static_cast<double>(k_prime);
  const double b = one_minus_c * std::pow(lh, 4) / (4.0 * std::pow(l1, 3));
  if (!(b > 1.0)) return std::numeric_limits<double>::infinity();
  const double a = x * x * one_minus_c * lh * lh * delta /
                   (16.0 * l1 * std::pow(kp, 1.5) * (1.0 / std::sqrt(delta) + x));
  const double tail = -std::expm1(-a * (b - 1.0));
  if (!(tail > 0.0)) return std::numeric_limits<double>::infinity();
  return kp * std::pow(1.0 - delta, m) + m * 2.0 * kp * std::exp(-a) / tail;
}

bool GapCondition(double l1, double lh, double one_minus_c) {
  return one_minus_c * std::pow(lh, 4) > 4.0 * std::pow(l1, 3);
}

bool DepthCondition(double epsilon, double l1, double lh, double one_minus_c) {
  if (!(lh > 0.0)) return false;
  const double base = 2.0 * one_minus_c * std::pow(l1, 3) / (lh * lh);
  return std::pow(base, 1.0 - epsilon / 3.0) < one_minus_c * l1;
}

bool GrowthCondition(double epsilon, double l1, double lh, double one_minus_c) {
  if (!(lh > 0.0) || !(l1 > 0.0)) return false;
  const double denominator = std::log(one_minus_c * lh * lh / (2.0 * l1));
  if (!(denominator > 0.0)) return false;
  return 1.0 + epsilon / 3.0 > std::log(one_minus_c * l1) / denominator;
}

}  // namespace hyper

HyperParams SelectHyperParameters(const EigenEstimate& eigs, double delta,
                                  int m, size_t n) {
  return SelectImpl(eigs, delta, m, n, /*best_effort=*/false);
}

HyperParams SelectHyperParametersBestEffort(const EigenEstimate& eigs,
                                            double delta, int m, size_t n) {
  return SelectImpl(eigs, delta, m, n, /*best_effort=*/true);
}

std::vector<int> EquivalenceClasses(
    const std::vector<std::vector<Verdict>>& verdicts) {
  const size_t m = verdicts.size();
  auto same = [&](size_t i, size_t j) { return verdicts[i][j] == Verdict::kSame; };
  for (size_t i = 0; i < m; ++i) {
    if (verdicts[i].size() != m || !same(i, i)) return {};
    for (size_t j = 0; j < m; ++j) {
      if (same(i, j) != same(j, i)) return {};
    }
  }
  std::vector<int> cls(m, -1);
  int next = 0;
  for (size_t i = 0; i < m; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = next;
    for (size_t j = i + 1; j < m; ++j) {
      if (same(i, j)) cls[j] = next;
    }
    ++next;
  }
  // Transitivity: members of a class are pairwise Same, and Same never
  // crosses classes.
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      if (same(i, j) != (cls[i] == cls[j])) return {};
    }
  }
  return cls;
}

ClassificationResult UnreliableClassify(const Graph& g, const HyperParams& hp,
                                        const EigenEstimate& eigs,
                                        uint64_t seed,
                                        const UnreliableOptions& options) {
  ClassificationResult result;
  const size_t n = g.num_vertices();
  if (eigs.h < 1 || static_cast<int>(eigs.values.size()) < eigs.h) {
    result.failure_reason = "empty eigenvalue estimate";
    return result;
  }
  if (n == 0) {
    result.failure_reason = "empty graph";
    return result;
  }
  if (!(hp.c > 0.0 && hp.c < 1.0) || hp.m < 1 || !(hp.delta > 0.0)) {
    throw ParameterError("invalid hyperparameters");
  }
  const EdgeSplit split = SplitEdges(g, hp.c, DeriveSeed(seed, Stream::kSplit, 0));
  const Graph& rest = split.g_minus_e;
  const Depths depths = ChooseDepths(n, hp, eigs, options.depths);
  result.flags = depths.flags;
  result.depth_r = depths.r;
  result.depth_r_prime = depths.r_prime;
  const int r = depths.r;
  const int rp = depths.r_prime;

  // (2) probes and (4) their shells.
  Rng probe_rng(seed, Stream::kProbes, 0);
  const std::vector<Vertex> probes = SampleDistinct(n, hp.m, probe_rng);
  const size_t m = probes.size();
  std::vector<ShellExplorer> explorers;
  explorers.reserve(m);
  for (Vertex v : probes) {
    explorers.emplace_back(rest, v);
    explorers.back().GrowTo(r + 2 * eigs.h + 3);
  }

  // (5) all pairwise comparisons.
  const double threshold = ComparisonThreshold(hp.x, hp.delta);
  std::vector<std::vector<ZetaEstimate>> z(m, std::vector<ZetaEstimate>(m));
  ParallelForEach(m * m, options.exec.threads, [&](size_t idx) {
    const size_t i = idx / m;
    const size_t j = idx % m;
    z[i][j] = ZetaAgainst(split.e, explorers[i], explorers[j].shell(rp),
                          probes[j], r, rp, n, hp.c, eigs);
  });
  std::vector<std::vector<Verdict>> verdicts(m, std::vector<Verdict>(m, Verdict::kSame));
  try {
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < m; ++j) {
        if (i != j) verdicts[i][j] = CompareZetas(z[i][i], z[i][j], z[j][j], threshold);
      }
    }
  } catch (const EstimationFailure& err) {
    result.failure_reason = std::string("unstable probe comparison: ") + err.what();
    return result;
  }

  // (6) consistency and anchors.
  const std::vector<int> classes = EquivalenceClasses(verdicts);
  if (classes.empty()) {
    result.failure_reason = "probe comparisons are not an equivalence relation";
    return result;
  }
  const int num_classes = *std::max_element(classes.begin(), classes.end()) + 1;
  const int k_prime = static_cast<int>(std::floor(1.0 / hp.delta));
  if (num_classes > k_prime) {
    result.failure_reason = "probe comparisons found " + std::to_string(num_classes) +
                            " classes, more than floor(1/delta) = " +
                            std::to_string(k_prime);
    return result;
  }
  Rng anchor_rng(seed, Stream::kAnchors, 0);
  std::vector<size_t> anchor_probe(num_classes);
  for (int cls = 0; cls < num_classes; ++cls) {
    std::vector<size_t> members;
    for (size_t i = 0; i < m; ++i) {
      if (classes[i] == cls) members.push_back(i);
    }
    anchor_probe[cls] = members[anchor_rng.Below(members.size())];
    result.anchors.push_back(probes[anchor_probe[cls]]);
  }
  std::vector<ZetaEstimate> zz_self;
  for (size_t a : anchor_probe) zz_self.push_back(z[a][a]);

  // (7) classify every vertex against the anchors.
  std::vector<int> labels(n, 0);
  std::vector<char> failed(n, 0);
  ParallelFor(n, options.exec.threads, [&](size_t begin, size_t end, int) {
    BfsScratch scratch(n);
    std::vector<ZetaEstimate> cross(num_classes);
    for (size_t v = begin; v < end; ++v) {
      if (num_classes == 1) break;
      const auto& shell = scratch.ShellAt(rest, static_cast<Vertex>(v), rp);
      for (int a = 0; a < num_classes; ++a) {
        cross[a] = ZetaAgainst(split.e, explorers[anchor_probe[a]], shell,
                               static_cast<Vertex>(v), r, rp, n, hp.c, eigs);
      }
      const int label = ClassifyFromZetas(zz_self, cross);
      if (label < 0) {
        failed[v] = 1;
      } else {
        labels[v] = label;
      }
    }
  });
  result.unclassified = std::count(failed.begin(), failed.end(), 1);
  result.status = RunStatus::kOk;
  result.labels.labels = std::move(labels);
  result.labels.k = num_classes;
  result.k_found = num_classes;
  return result;
}

double Disagreement(const CommunityLabels& a, const CommunityLabels& b) {
  if (a.size() != b.size()) throw ParameterError("labelings have different lengths");
  if (a.size() == 0) return 0.0;
  const Assignment best = MaxWeightAssignment(OverlapMatrix(a, b), /*exact_limit=*/8);
  return 1.0 - static_cast<double>(best.total) / static_cast<double>(a.size());
}

namespace {

// Largest clique (ties: lexicographically smallest member list) of the graph
// given by adjacency bitmasks over at most 64 nodes.
uint64_t MaxClique(const std::vector<uint64_t>& adj) {
  const int t = static_cast<int>(adj.size());
  uint64_t best = 0;
  int best_size = 0;
  // Simple branch and bound; t is ⌈ln n⌉-sized, so this is instantaneous.
  std::function<void(uint64_t, uint64_t, int)> grow = [&](uint64_t chosen,
                                                          uint64_t candidates,
                                                          int size) {
    if (candidates == 0) {
      if (size > best_size) {
        best_size = size;
        best = chosen;
      }
      return;
    }
    if (size + __builtin_popcountll(candidates) <= best_size) return;
    for (int i = 0; i < t; ++i) {
      const uint64_t bit = uint64_t{1} << i;
      if (!(candidates & bit)) continue;
      grow(chosen | bit, candidates & adj[i] & ~((bit << 1) - 1), size + 1);
      candidates &= ~bit;
      if (size + __builtin_popcountll(candidates) <= best_size) return;
    }
    if (size > best_size) {
      best_size = size;
      best = chosen;
    }
  };
  const uint64_t all = t == 64 ? ~uint64_t{0} : (uint64_t{1} << t) - 1;
  grow(0, all, 0);
  return best;
}

}  // namespace

ClassificationResult ConsensusMerge(const std::vector<ClassificationResult>& runs,
                                    uint64_t seed) {
  ClassificationResult out;
  out.runs_total = static_cast<int>(runs.size());
  std::vector<const ClassificationResult*> ok;
  for (const auto& run : runs) {
    if (run.ok()) ok.push_back(&run);
  }
  out.runs_ok = static_cast<int>(ok.size());
  if (ok.empty()) {
    out.failure_reason = runs.empty() ? "no classification runs"
                                      : "every classification run failed (first: " +
                                            runs.front().failure_reason + ")";
    return out;
  }
  if (ok.size() > 64) throw ParameterError("consensus supports at most 64 runs");
  const size_t t = ok.size();
  const size_t n = ok.front()->labels.size();
  for (const auto* run : ok) {
    if (run->labels.size() != n) throw ParameterError("runs label different vertex sets");
  }

  // (7) Smallest y'' admitting a clique of more than half the runs.
  std::vector<std::vector<double>> dist(t, std::vector<double>(t, 0.0));
  std::vector<double> thresholds = {0.0};
  for (size_t i = 0; i < t; ++i) {
    for (size_t j = i + 1; j < t; ++j) {
      dist[i][j] = dist[j][i] = Disagreement(ok[i]->labels, ok[j]->labels);
      thresholds.push_back(dist[i][j]);
    }
  }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  const int need = static_cast<int>(t / 2 + 1);
  uint64_t kept = 0;
  for (double y : thresholds) {
    std::vector<uint64_t> adj(t, 0);
    for (size_t i = 0; i < t; ++i)
      for (size_t j = 0; j < t; ++j)
        if (i != j && dist[i][j] <= y) adj[i] |= uint64_t{1} << j;
    const uint64_t clique = MaxClique(adj);
    if (__builtin_popcountll(clique) >= need) {
      kept = clique;
      out.y_doubleprime = y;
      break;
    }
  }
  std::vector<const ClassificationResult*> members;
  for (size_t i = 0; i < t; ++i) {
    if (kept & (uint64_t{1} << i)) members.push_back(ok[i]);
  }
  out.runs_kept = static_cast<int>(members.size());

  // (8) Align to the first kept run and vote per vertex.
  const ClassificationResult& reference = *members.front();
  const int k = reference.labels.k;
  std::vector<std::vector<int>> maps;
  for (const auto* run : members) {
    const auto overlap = OverlapMatrix(reference.labels, run->labels);
    const Assignment assignment = MaxWeightAssignment(overlap, /*exact_limit=*/8);
    std::vector<int> map(run->labels.k, 0);
    for (int col = 0; col < run->labels.k; ++col) {
      if (assignment.match[col] >= 0) {
        map[col] = assignment.match[col];
      } else {
        // Surplus community: its largest overlap.
        int best_row = 0;
        for (int row = 1; row < k; ++row) {
          if (overlap[row][col] > overlap[best_row][col]) best_row = row;
        }
        map[col] = best_row;
      }
    }
    maps.push_back(std::move(map));
  }
  out.labels.k = k;
  out.labels.labels.resize(n);
  for (size_t v = 0; v < n; ++v) {
    Rng vote(seed, Stream::kVote, v);
    const size_t pick = members.size() == 1 ? 0 : vote.Below(members.size());
    out.labels.labels[v] = maps[pick][members[pick]->labels.labels[v]];
  }
  out.status = RunStatus::kOk;
  out.k_found = k;
  out.anchors = reference.anchors;
  out.depth_r = reference.depth_r;
  out.depth_r_prime = reference.depth_r_prime;
  for (const auto* run : members) out.unclassified += run->unclassified;
  return out;
}

int DefaultAnchorPool(double delta) {
  return static_cast<int>(std::ceil(std::log(4.0 * std::floor(1.0 / delta)) / delta));
}

ClassificationResult AgnosticSphereComparison(const Graph& g, double delta,
                                              uint64_t seed,
                                              const SphereComparisonOptions& options) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("delta must lie in (0, 1]");
  const size_t n = g.num_vertices();
  ClassificationResult failed;
  if (n == 0) {
    failed.failure_reason = "empty graph";
    return failed;
  }
  const int m = options.m > 0 ? options.m : std::max(1, DefaultAnchorPool(delta));
  const int runs = options.T > 0
                       ? options.T
                       : std::max(1, static_cast<int>(std::ceil(std::log(static_cast<double>(n)))));

  // (1) eigenvalues.
  EigenEstimate eigs;
  if (options.eigen_override) {
    eigs = *options.eigen_override;
  } else {
    try {
      ImprovedEigenOptions eig_options;
      eig_options.exec = options.exec;
      eigs = ImprovedEigenvalueApprox(g, options.eigen_c,
                                      DeriveSeed(seed, Stream::kProbes, 1), eig_options);
    } catch (const EstimationFailure& err) {
      failed.failure_reason = std::string("eigenvalue estimation: ") + err.what();
      return failed;
    }
  }
  failed.eigen_estimate = eigs;

  // (2)–(5) hyperparameters.
  HyperParams hp;
  try {
    hp = options.policy == HyperParamPolicy::kStrict
             ? SelectHyperParameters(eigs, delta, m, n)
             : SelectHyperParametersBestEffort(eigs, delta, m, n);
  } catch (const InfeasibleHyperParameters& err) {
    failed.failure_reason = err.what();
    return failed;
  }
  failed.hyperparams = hp;

  // (6) repeated unreliable classification.
  const int threads = ResolveThreads(options.exec.threads);
  UnreliableOptions run_options;
  run_options.depths = options.depths;
  run_options.exec.threads = std::max(1, threads / runs);
  std::vector<ClassificationResult> results(runs);
  ParallelForEach(runs, std::min(threads, runs), [&](size_t t) {
    results[t] = UnreliableClassify(g, hp, eigs, DeriveSeed(seed, Stream::kRuns, t),
                                    run_options);
  });

  // (7)–(8) consensus.
  ClassificationResult merged = ConsensusMerge(results, DeriveSeed(seed, Stream::kVote, 0));
  merged.eigen_estimate = eigs;
  merged.hyperparams = hp;
  for (const auto& rel : hp.relaxed) merged.flags.push_back("hyperparams_relaxed:" + rel);
  for (const auto& run : results) {
    for (const auto& f : run.flags) {
      if (std::find(merged.flags.begin(), merged.flags.end(), f) == merged.flags.end()) {
        merged.flags.push_back(f);
      }
    }
  }
  if (!merged.ok() && merged.failure_reason.empty()) {
    merged.failure_reason = "consensus failed";
  }
  return merged;
}

}  // namespace agsbm
