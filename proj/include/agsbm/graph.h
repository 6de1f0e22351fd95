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

// Immutable undirected graphs, edge subsets, BFS shells and cross counts.

#ifndef AGSBM_GRAPH_H_
#define AGSBM_GRAPH_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace agsbm {

using Vertex = uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Undirected simple graph in compressed sparse row form.  Neighbor lists are
// sorted.  Immutable after construction and safe to share between threads.
class Graph {
 public:
  Graph() = default;

  // Builds a graph from an edge list.  Throws ParameterError on self-loops,
  // duplicate edges (in either orientation) or out-of-range endpoints.
  static Graph FromEdges(size_t n, std::vector<Edge> edges);

  size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  size_t num_edges() const { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v],
            adjacency_.data() + offsets_[v + 1]};
  }
  size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool HasEdge(Vertex u, Vertex v) const;

  // All edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> Edges() const;

  double AverageDegree() const;

 private:
  std::vector<uint64_t> offsets_;
  std::vector<Vertex> adjacency_;
  size_t edge_count_ = 0;
};

// Per-vertex community assignment over the alphabet [0, k).
struct CommunityLabels {
  std::vector<int> labels;
  int k = 0;

  size_t size() const { return labels.size(); }
  // Throws ParameterError if a label is outside [0, k).
  void Validate() const;
  // Builds labels with k = 1 + max label (k = 0 for an empty sequence).
  static CommunityLabels FromVector(std::vector<int> labels);
};

// A set of edges drawn from a parent graph, stored as a graph on the same
// vertex set so that "E-neighbors" of a vertex are a contiguous range.
struct EdgeSubset {
  Graph edges;
  size_t parent_edge_count = 0;

  size_t size() const { return edges.num_edges(); }
  bool Contains(Vertex u, Vertex v) const { return edges.HasEdge(u, v); }
};

// N_0(v), ..., N_{r_max}(v): vertices at BFS distance exactly r, each shell
// sorted.  Trailing shells are empty once the component is exhausted.
using Shells = std::vector<std::vector<Vertex>>;

Shells NeighborhoodShells(const Graph& g, Vertex v, int r_max);

// |{(v1, v2) : v1 in N_r(v), v2 in N_r'(v'), (v1, v2) in E}| with shells
// taken in g_minus_e.  Iterates the E-neighbors of the smaller shell and
// tests membership in the other by binary search.
uint64_t CrossCount(const Graph& g_minus_e, const EdgeSubset& e, Vertex v,
                    Vertex v_prime, int r, int r_prime);

// Same count from precomputed shells.
uint64_t CrossCount(const EdgeSubset& e, const std::vector<Vertex>& shell,
                    const std::vector<Vertex>& shell_prime);

// Incremental BFS from one source that keeps a dense distance map, so that
// "which shell is vertex u in?" is O(1).  Counts scanned adjacency entries
// so callers can enforce a work budget.
class ShellExplorer {
 public:
  ShellExplorer(const Graph& g, Vertex source);

  // Adds the next shell.  Returns false (and adds nothing) once the
  // component is exhausted.
  bool Grow();
  // Grows until `depth` shells beyond the source exist or the component is
  // exhausted.  Returns the number of shells beyond the source.
  int GrowTo(int depth);

  // Deepest shell computed so far (0 = only the source).
  int depth() const { return static_cast<int>(shells_.size()) - 1; }
  bool exhausted() const { return exhausted_; }
  Vertex source() const { return source_; }

  // Shell r, or an empty shell if r is beyond the explored depth.
  const std::vector<Vertex>& shell(int r) const;
  // BFS distance of u if u lies within the explored depth, else -1.
  int32_t DistanceOf(Vertex u) const { return distance_[u]; }

  uint64_t edges_scanned() const { return edges_scanned_; }

 private:
  const Graph* graph_;
  Vertex source_;
  std::vector<int32_t> distance_;
  Shells shells_;
  bool exhausted_ = false;
  uint64_t edges_scanned_ = 0;
};

// Reusable scratch space for BFS from many sources on one graph.  Each
// instance must be used by one thread at a time.
class BfsScratch {
 public:
  explicit BfsScratch(size_t n) : stamp_(n, 0) {}

  // Returns N_r(v) (unsorted).  Cost is linear in the visited edges.
  const std::vector<Vertex>& ShellAt(const Graph& g, Vertex v, int r);

  // Returns the ball B_r(v) = N_0 ∪ ... ∪ N_r (unsorted); `InLastBall(u)`
  // answers membership until the next call.
  const std::vector<Vertex>& Ball(const Graph& g, Vertex v, int r);
  bool InLastBall(Vertex u) const { return stamp_[u] == generation_; }

 private:
  void NextGeneration();

  std::vector<uint32_t> stamp_;
  uint32_t generation_ = 0;
  std::vector<Vertex> frontier_;
  std::vector<Vertex> next_;
  std::vector<Vertex> ball_;
};

// counts[d] = number of ordered pairs (v1, v2) with v2 in `shallow_shell`,
// (v1, v2) in E, and deep.DistanceOf(v1) == d, for d in [0, max_depth].
// This is N_{d, r'}(deep.source() · v') for every d at once when
// shallow_shell = N_{r'}(v').
std::vector<uint64_t> CrossCountsByDepth(const EdgeSubset& e,
                                         const ShellExplorer& deep,
                                         std::span<const Vertex> shallow_shell,
                                         int max_depth);

// Vertices of the largest connected component, sorted (ties: the component
// containing the smallest vertex).
std::vector<Vertex> LargestComponent(const Graph& g);

// Subgraph induced by `vertices` (sorted, unique), relabelled 0..|vertices|-1
// in the given order.
Graph InducedSubgraph(const Graph& g, const std::vector<Vertex>& vertices);

}  // namespace agsbm

#endif  // AGSBM_GRAPH_H_
