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
#include <set>

#include <gtest/gtest.h>

#include "agsbm/errors.h"
#include "agsbm/rng.h"
#include "agsbm/sbm.h"

namespace agsbm {
namespace {

Graph Path3() { return Graph::FromEdges(3, {{0, 1}, {1, 2}}); }

// Brute-force cross count straight from the definition.
uint64_t CrossCountOracle(const Graph& g_minus_e, const EdgeSubset& e, Vertex v,
                          Vertex v_prime, int r, int r_prime) {
  const auto a = NeighborhoodShells(g_minus_e, v, r)[r];
  const auto b = NeighborhoodShells(g_minus_e, v_prime, r_prime)[r_prime];
  uint64_t count = 0;
  for (Vertex x : a) {
    for (Vertex y : b) {
      if (x != y && e.Contains(x, y)) ++count;
    }
  }
  return count;
}

TEST(GraphTest, BuildsSortedSymmetricAdjacency) {
  const Graph g = Graph::FromEdges(4, {{2, 0}, {0, 1}, {3, 2}});
  EXPECT_EQ(g.num_vertices(), 4u);
  EXPECT_EQ(g.num_edges(), 3u);
  const auto n0 = g.neighbors(0);
  EXPECT_EQ(std::vector<Vertex>(n0.begin(), n0.end()), (std::vector<Vertex>{1, 2}));
  EXPECT_TRUE(g.HasEdge(2, 3));
  EXPECT_TRUE(g.HasEdge(3, 2));
  EXPECT_FALSE(g.HasEdge(1, 3));
  EXPECT_EQ(g.Edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {2, 3}}));
  size_t degree_sum = 0;
  for (Vertex v = 0; v < 4; ++v) degree_sum += g.degree(v);
  EXPECT_EQ(degree_sum, 2 * g.num_edges());
}

TEST(GraphTest, RejectsSelfLoopsDuplicatesAndRange) {
  EXPECT_THROW(Graph::FromEdges(3, {{1, 1}}), ParameterError);
  EXPECT_THROW(Graph::FromEdges(3, {{0, 1}, {1, 0}}), ParameterError);
  EXPECT_THROW(Graph::FromEdges(3, {{0, 3}}), ParameterError);
}

TEST(GraphTest, ShellsOfPath) {
  const Shells s = NeighborhoodShells(Path3(), 0, 2);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], std::vector<Vertex>{0});
  EXPECT_EQ(s[1], std::vector<Vertex>{1});
  EXPECT_EQ(s[2], std::vector<Vertex>{2});
}

TEST(GraphTest, ShellsOfIsolatedVertex) {
  const Graph g = Graph::FromEdges(3, {{1, 2}});
  const Shells s = NeighborhoodShells(g, 0, 3);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], std::vector<Vertex>{0});
  for (int r = 1; r <= 3; ++r) EXPECT_TRUE(s[r].empty());
}

TEST(GraphTest, ShellsOfTriangle) {
  const Graph g = Graph::FromEdges(3, {{0, 1}, {1, 2}, {0, 2}});
  const Shells s = NeighborhoodShells(g, 0, 2);
  EXPECT_EQ(s[1], (std::vector<Vertex>{1, 2}));
  EXPECT_TRUE(s[2].empty());
}

TEST(GraphTest, ShellsPartitionTheComponent) {
  const auto [g, labels] = SampleSbm(SbmParams::Symmetric(2, 3, 1), 400, 5);
  const auto component = LargestComponent(g);
  const Vertex v = component.front();
  const Shells s = NeighborhoodShells(g, v, static_cast<int>(g.num_vertices()));
  std::vector<Vertex> all;
  for (const auto& shell : s) all.insert(all.end(), shell.begin(), shell.end());
  std::sort(all.begin(), all.end());
  EXPECT_TRUE(std::adjacent_find(all.begin(), all.end()) == all.end());  // disjoint
  EXPECT_EQ(all, component);
}

TEST(GraphTest, CrossCountHandExample) {
  // G\E = {(0,1), (2,3)}, E = {(1,2)}: N_1(0) = {1}, N_1(3) = {2}.
  const Graph rest = Graph::FromEdges(4, {{0, 1}, {2, 3}});
  const EdgeSubset e{Graph::FromEdges(4, {{1, 2}}), 3};
  EXPECT_EQ(CrossCount(rest, e, 0, 3, 1, 1), 1u);
  EXPECT_EQ(CrossCountOracle(rest, e, 0, 3, 1, 1), 1u);
}

TEST(GraphTest, CrossCountDepthZeroOnAnEdge) {
  const Graph rest = Graph::FromEdges(2, {});
  const EdgeSubset e{Graph::FromEdges(2, {{0, 1}}), 1};
  EXPECT_EQ(CrossCount(rest, e, 0, 1, 0, 0), 1u);
}

TEST(GraphTest, CrossCountEmptyEIsZero) {
  const auto [g, labels] = SampleSbm(SbmParams::Symmetric(2, 6, 2), 300, 9);
  const EdgeSubset empty{Graph::FromEdges(300, {}), g.num_edges()};
  for (Vertex v = 0; v < 5; ++v) {
    for (int r = 0; r < 3; ++r) EXPECT_EQ(CrossCount(g, empty, v, v + 10, r, 1), 0u);
  }
}

TEST(GraphTest, CrossCountMatchesOracleAndIsSymmetric) {
  const auto [g, labels] = SampleSbm(SbmParams::Symmetric(2, 8, 2), 500, 17);
  const EdgeSplit split = SplitEdges(g, 0.3, 4);
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const Vertex v = static_cast<Vertex>(rng.Below(500));
    const Vertex w = static_cast<Vertex>(rng.Below(500));
    const int r = static_cast<int>(rng.Below(4));
    const int rp = static_cast<int>(rng.Below(3));
    const uint64_t count = CrossCount(split.g_minus_e, split.e, v, w, r, rp);
    EXPECT_EQ(count, CrossCountOracle(split.g_minus_e, split.e, v, w, r, rp));
    EXPECT_EQ(count, CrossCount(split.g_minus_e, split.e, w, v, rp, r));
  }
}

TEST(GraphTest, CrossCountsByDepthAgreesWithCrossCount) {
  const auto [g, labels] = SampleSbm(SbmParams::Symmetric(2, 8, 2), 500, 23);
  const EdgeSplit split = SplitEdges(g, 0.2, 8);
  ShellExplorer deep(split.g_minus_e, 3);
  deep.GrowTo(6);
  const auto shallow = NeighborhoodShells(split.g_minus_e, 40, 1)[1];
  const auto counts = CrossCountsByDepth(split.e, deep, shallow, 6);
  for (int d = 0; d <= 6; ++d) {
    EXPECT_EQ(counts[d], CrossCount(split.g_minus_e, split.e, 3, 40, d, 1)) << d;
  }
}

TEST(GraphTest, ExplorerAndScratchMatchShells) {
  const auto [g, labels] = SampleSbm(SbmParams::Symmetric(2, 5, 1), 300, 2);
  const Shells s = NeighborhoodShells(g, 7, 4);
  ShellExplorer explorer(g, 7);
  explorer.GrowTo(4);
  BfsScratch scratch(g.num_vertices());
  for (int r = 0; r <= 4; ++r) {
    auto a = explorer.shell(r);
    auto b = scratch.ShellAt(g, 7, r);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, s[r]);
    EXPECT_EQ(b, s[r]);
  }
}

TEST(GraphTest, InducedSubgraphRelabels) {
  const Graph g = Graph::FromEdges(5, {{0, 1}, {1, 2}, {3, 4}});
  const auto component = LargestComponent(g);
  EXPECT_EQ(component, (std::vector<Vertex>{0, 1, 2}));
  const Graph h = InducedSubgraph(g, component);
  EXPECT_EQ(h.num_vertices(), 3u);
  EXPECT_EQ(h.Edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(CommunityLabelsTest, ValidateAndFromVector) {
  const CommunityLabels labels = CommunityLabels::FromVector({0, 2, 1});
  EXPECT_EQ(labels.k, 3);
  EXPECT_NO_THROW(labels.Validate());
  CommunityLabels bad{{0, 3}, 2};
  EXPECT_THROW(bad.Validate(), ParameterError);
}

}  // namespace
}  // namespace agsbm
