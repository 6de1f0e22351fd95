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

#include "agsbm/graph.h"

#include <algorithm>
#include <string>

#include "agsbm/errors.h"

namespace agsbm {

Graph Graph::FromEdges(size_t n, std::vector<Edge> edges) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ParameterError("edge (" + std::to_string(u) + ", " +
                           std::to_string(v) + ") has an endpoint >= n = " +
                           std::to_string(n));
    }
    if (u == v) {
      throw ParameterError("self-loop at vertex " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw ParameterError("duplicate edge (" + std::to_string(dup->first) +
                         ", " + std::to_string(dup->second) + ")");
  }

  Graph g;
  g.edge_count_ = edges.size();
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.resize(2 * edges.size());
  std::vector<uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so appending in this order leaves every
  // neighbor list sorted: for a fixed vertex w, the entries "w as second
  // endpoint" (smaller neighbors) all arrive before "w as first endpoint".
  for (const auto& [u, v] : edges) {
    g.adjacency_[cursor[v]++] = u;
  }
  for (const auto& [u, v] : edges) {
    g.adjacency_[cursor[u]++] = v;
  }
  return g;
}

bool Graph::HasEdge(Vertex u, Vertex v) const {
  if (u >= num_vertices() || v >= num_vertices()) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::Edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

double Graph::AverageDegree() const {
  if (num_vertices() == 0) return 0.0;
  return 2.0 * static_cast<double>(edge_count_) /
         static_cast<double>(num_vertices());
}

void CommunityLabels::Validate() const {
  if (k < 0) throw ParameterError("negative alphabet size");
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= k) {
      throw ParameterError("label " + std::to_string(labels[i]) +
                           " of vertex " + std::to_string(i) +
                           " is outside [0, " + std::to_string(k) + ")");
    }
  }
}

CommunityLabels CommunityLabels::FromVector(std::vector<int> labels) {
  CommunityLabels out;
  int max_label = -1;
  for (int l : labels) {
    if (l < 0) throw ParameterError("negative label " + std::to_string(l));
    max_label = std::max(max_label, l);
  }
  out.labels = std::move(labels);
  out.k = max_label + 1;
  return out;
}

Shells NeighborhoodShells(const Graph& g, Vertex v, int r_max) {
  ShellExplorer explorer(g, v);
  explorer.GrowTo(r_max);
  Shells out(static_cast<size_t>(std::max(r_max, 0)) + 1);
  for (int r = 0; r <= r_max; ++r) out[r] = explorer.shell(r);
  return out;
}

uint64_t CrossCount(const EdgeSubset& e, const std::vector<Vertex>& shell,
                    const std::vector<Vertex>& shell_prime) {
  // Both shells are sorted.  The count is symmetric in the pair of shells
  // (E is undirected), so scan the smaller one.
  const bool swap = shell_prime.size() > shell.size();
  const std::vector<Vertex>& scan = swap ? shell : shell_prime;
  const std::vector<Vertex>& probe = swap ? shell_prime : shell;
  uint64_t count = 0;
  for (Vertex a : scan) {
    for (Vertex b : e.edges.neighbors(a)) {
      if (std::binary_search(probe.begin(), probe.end(), b)) ++count;
    }
  }
  return count;
}

uint64_t CrossCount(const Graph& g_minus_e, const EdgeSubset& e, Vertex v,
                    Vertex v_prime, int r, int r_prime) {
  ShellExplorer a(g_minus_e, v);
  a.GrowTo(r);
  ShellExplorer b(g_minus_e, v_prime);
  b.GrowTo(r_prime);
  return CrossCount(e, a.shell(r), b.shell(r_prime));
}

ShellExplorer::ShellExplorer(const Graph& g, Vertex source)
    : graph_(&g), source_(source), distance_(g.num_vertices(), -1) {
  distance_[source] = 0;
  shells_.push_back({source});
}

bool ShellExplorer::Grow() {
  if (exhausted_) return false;
  const int next_depth = depth() + 1;
  std::vector<Vertex> next;
  for (Vertex u : shells_.back()) {
    auto nb = graph_->neighbors(u);
    edges_scanned_ += nb.size();
    for (Vertex w : nb) {
      if (distance_[w] < 0) {
        distance_[w] = next_depth;
        next.push_back(w);
      }
    }
  }
  if (next.empty()) {
    exhausted_ = true;
    return false;
  }
  std::sort(next.begin(), next.end());
  shells_.push_back(std::move(next));
  return true;
}

int ShellExplorer::GrowTo(int target) {
  while (depth() < target && Grow()) {
  }
  return depth();
}

const std::vector<Vertex>& ShellExplorer::shell(int r) const {
  static const std::vector<Vertex> kEmpty;
  if (r < 0 || r > depth()) return kEmpty;
  return shells_[r];
}

void BfsScratch::NextGeneration() {
  if (++generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    generation_ = 1;
  }
}

const std::vector<Vertex>& BfsScratch::Ball(const Graph& g, Vertex v, int r) {
  NextGeneration();
  ball_.clear();
  frontier_.clear();
  stamp_[v] = generation_;
  frontier_.push_back(v);
  ball_.push_back(v);
  for (int d = 0; d < r && !frontier_.empty(); ++d) {
    next_.clear();
    for (Vertex u : frontier_) {
      for (Vertex w : g.neighbors(u)) {
        if (stamp_[w] != generation_) {
          stamp_[w] = generation_;
          next_.push_back(w);
        }
      }
    }
    frontier_.swap(next_);
    ball_.insert(ball_.end(), frontier_.begin(), frontier_.end());
  }
  return ball_;
}

const std::vector<Vertex>& BfsScratch::ShellAt(const Graph& g, Vertex v,
                                               int r) {
  NextGeneration();
  frontier_.clear();
  stamp_[v] = generation_;
  frontier_.push_back(v);
  for (int d = 0; d < r && !frontier_.empty(); ++d) {
    next_.clear();
    for (Vertex u : frontier_) {
      for (Vertex w : g.neighbors(u)) {
        if (stamp_[w] != generation_) {
          stamp_[w] = generation_;
          next_.push_back(w);
        }
      }
    }
    frontier_.swap(next_);
  }
  return frontier_;
}

std::vector<uint64_t> CrossCountsByDepth(const EdgeSubset& e,
                                         const ShellExplorer& deep,
                                         std::span<const Vertex> shallow_shell,
                                         int max_depth) {
  std::vector<uint64_t> counts(static_cast<size_t>(max_depth) + 1, 0);
  for (Vertex v2 : shallow_shell) {
    for (Vertex v1 : e.edges.neighbors(v2)) {
      const int32_t d = deep.DistanceOf(v1);
      if (d >= 0 && d <= max_depth) ++counts[d];
    }
  }
  return counts;
}

std::vector<Vertex> LargestComponent(const Graph& g) {
  const size_t n = g.num_vertices();
  std::vector<int32_t> component(n, -1);
  std::vector<Vertex> best;
  std::vector<Vertex> members;
  std::vector<Vertex> stack;
  int32_t next_id = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    members.clear();
    stack.assign(1, s);
    component[s] = next_id;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (Vertex w : g.neighbors(u)) {
        if (component[w] < 0) {
          component[w] = next_id;
          stack.push_back(w);
        }
      }
    }
    ++next_id;
    if (members.size() > best.size()) best = members;
  }
  std::sort(best.begin(), best.end());
  return best;
}

Graph InducedSubgraph(const Graph& g, const std::vector<Vertex>& vertices) {
  std::vector<int64_t> index(g.num_vertices(), -1);
  for (size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = i;
  std::vector<Edge> edges;
  for (size_t i = 0; i < vertices.size(); ++i) {
    for (Vertex w : g.neighbors(vertices[i])) {
      const int64_t j = index[w];
      if (j > static_cast<int64_t>(i)) {
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return Graph::FromEdges(vertices.size(), std::move(edges));
}

}  // namespace agsbm
