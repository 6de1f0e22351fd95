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

// Plain-text file formats.
//
// Edge list: one "u v" pair of 0-based vertex ids per line; blank lines and
// lines starting with '#' are ignored, except that a "# vertices: N" comment
// fixes the vertex count (otherwise it is 1 + the largest id).
// Self-loops and repeated edges are rejected with the offending line number.
//
// Labels: one integer community label per line in vertex order; '#'
// comments and blank lines are ignored.

#ifndef AGSBM_IO_H_
#define AGSBM_IO_H_

#include <iosfwd>
#include <string>

#include "agsbm/graph.h"

namespace agsbm {

Graph ReadEdgeList(std::istream& in);
Graph ReadEdgeListFile(const std::string& path);
void WriteEdgeList(const Graph& g, std::ostream& out);
void WriteEdgeListFile(const Graph& g, const std::string& path);

CommunityLabels ReadLabels(std::istream& in);
CommunityLabels ReadLabelsFile(const std::string& path);
void WriteLabels(const CommunityLabels& labels, std::ostream& out);
void WriteLabelsFile(const CommunityLabels& labels, const std::string& path);

struct LabelledGraph {
  Graph graph;
  CommunityLabels labels;
};

// Reads a GML network such as the political-blogs dataset: nodes with an
// `id` and an optional integer `value` (the label), edges with `source` and
// `target`.  Directions, self-loops and repeated edges are dropped; ids are
// renumbered 0..n-1 in order of appearance.  Labels are renumbered to
// 0..k-1 in increasing order of the original values; unlabelled nodes get 0.
LabelledGraph ReadGml(std::istream& in);
LabelledGraph ReadGmlFile(const std::string& path);

}  // namespace agsbm

#endif  // AGSBM_IO_H_
