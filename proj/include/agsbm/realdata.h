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

// A simplified two-community classifier for observed networks.
//
// N'_{r,r'}(v·v') is the fraction of pairs of boundary edges, one leaving
// the radius-r ball around v and one leaving the radius-r' ball around v',
// that land on the same vertex.  Vertices in the same community share more
// of their surroundings, so a below-average N' suggests different
// communities.  Two reference vertices judged different are then used to
// classify everybody else.

#ifndef AGSBM_REALDATA_H_
#define AGSBM_REALDATA_H_

#include <cstdint>
#include <vector>

#include "agsbm/graph.h"
#include "agsbm/parallel.h"
#include "agsbm/sphere_comparison.h"

namespace agsbm {

// Boundary edges are directed (tail inside the ball, head outside).  Counts
// ordered pairs with a common head, excluding a pair that uses the same
// undirected edge twice, over |∂B_r(v)|·|∂B_r'(v')|.  Returns 0 when either
// boundary is empty.  Warns when v == v'.
double NormalizedPairFraction(const Graph& g, Vertex v, Vertex v_prime, int r,
                              int r_prime);

struct RealDataOptions {
  int r = 1;
  int r_prime = 1;
  int trials = 40;
  // Vertex pairs sampled per trial to estimate the average N'.
  int average_pairs = 2000;
  Execution exec;
};

struct RealDataResult {
  // Majority consensus of the successful trials, over all vertices of g;
  // vertices outside the largest component get label 0 and are counted as
  // unclassified.
  ClassificationResult consensus;
  std::vector<ClassificationResult> trials;
  std::vector<Vertex> component;  // the largest component, sorted
};

// Each trial estimates the average N', draws vertex pairs until one is
// judged Different with both degrees above average (at most 10·n draws,
// else the trial fails), and assigns every vertex to the reference it is
// judged Same as; when the two verdicts agree it goes to the reference with
// the larger N'.
RealDataResult RealDataTwoCommunity(const Graph& g, uint64_t seed,
                                    const RealDataOptions& options = {});

}  // namespace agsbm

#endif  // AGSBM_REALDATA_H_
