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

#include "agsbm/io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_set>

#include "agsbm/errors.h"

namespace agsbm {
namespace {

std::string Trim(const std::string& line) {
  const auto begin = line.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = line.find_last_not_of(" \t\r");
  return line.substr(begin, end - begin + 1);
}

template <typename T>
bool ParseNumber(std::string_view text, T& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path + " for reading");
  return in;
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

// --- GML -------------------------------------------------------------------

struct GmlValue;
using GmlList = std::vector<std::pair<std::string, GmlValue>>;
struct GmlValue {
  std::string scalar;
  std::shared_ptr<GmlList> list;  // set for "key [ ... ]"
};

class GmlTokenizer {
 public:
  explicit GmlTokenizer(std::istream& in) : text_(std::istreambuf_iterator<char>(in), {}) {}

  // Returns false at end of input.
  bool Next(std::string& token) {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    if (c == '[' || c == ']') {
      token.assign(1, c);
      ++pos_;
      return true;
    }
    if (c == '"') {
      const size_t close = text_.find('"', pos_ + 1);
      if (close == std::string::npos) throw IoError("GML: unterminated string");
      token = text_.substr(pos_, close - pos_ + 1);
      pos_ = close + 1;
      return true;
    }
    const size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '[' && text_[pos_] != ']') {
      ++pos_;
    }
    token = text_.substr(start, pos_ - start);
    return true;
  }

 private:
  std::string text_;
  size_t pos_ = 0;
};

GmlList ParseGmlList(GmlTokenizer& tokens, bool nested) {
  GmlList list;
  std::string key;
  while (tokens.Next(key)) {
    if (key == "]") {
      if (!nested) throw IoError("GML: unbalanced ']'");
      return list;
    }
    if (key == "[") throw IoError("GML: list without a key");
    std::string value;
    if (!tokens.Next(value)) throw IoError("GML: key '" + key + "' without a value");
    GmlValue entry;
    if (value == "[") {
      entry.list = std::make_shared<GmlList>(ParseGmlList(tokens, true));
    } else if (value == "]") {
      throw IoError("GML: key '" + key + "' without a value");
    } else {
      entry.scalar = value;
    }
    list.emplace_back(key, std::move(entry));
  }
  if (nested) throw IoError("GML: missing ']'");
  return list;
}

const GmlValue* Find(const GmlList& list, const std::string& key) {
  for (const auto& [k, v] : list) {
    if (k == key) return &v;
  }
  return nullptr;
}

int64_t GmlInt(const GmlValue* value, const char* what) {
  int64_t out = 0;
  if (value == nullptr || value->list || !ParseNumber(value->scalar, out)) {
    throw IoError(std::string("GML: missing or non-integer ") + what);
  }
  return out;
}

}  // namespace

Graph ReadEdgeList(std::istream& in) {
  std::vector<Edge> edges;
  std::unordered_set<uint64_t> seen;
  size_t declared = 0;
  bool has_declared = false;
  size_t max_id_plus_one = 0;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = Trim(line);
    if (text.empty()) continue;
    if (text[0] == '#') {
      const std::string body = Trim(text.substr(1));
      const std::string tag = "vertices:";
      if (body.rfind(tag, 0) == 0) {
        if (!ParseNumber(Trim(body.substr(tag.size())), declared)) {
          throw IoError("line " + std::to_string(line_no) + ": bad vertex count");
        }
        has_declared = true;
      }
      continue;
    }
    std::istringstream fields(text);
    std::string a, b, extra;
    uint64_t u = 0, v = 0;
    if (!(fields >> a >> b) || (fields >> extra) || !ParseNumber(a, u) || !ParseNumber(b, v) ||
        u > UINT32_MAX - 1 || v > UINT32_MAX - 1) {
      throw IoError("line " + std::to_string(line_no) + ": expected two vertex ids");
    }
    if (u == v) throw IoError("line " + std::to_string(line_no) + ": self-loop");
    if (!seen.insert(std::min(u, v) << 32 | std::max(u, v)).second) {
      throw IoError("line " + std::to_string(line_no) + ": duplicate edge");
    }
    if (has_declared && std::max(u, v) >= declared) {
      throw IoError("line " + std::to_string(line_no) +
                    ": vertex id beyond the declared count");
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    max_id_plus_one = std::max<size_t>(max_id_plus_one, std::max(u, v) + 1);
  }
  if (has_declared && declared < max_id_plus_one) {
    throw IoError("edge list mentions a vertex beyond the declared count");
  }
  return Graph::FromEdges(has_declared ? declared : max_id_plus_one, std::move(edges));
}

Graph ReadEdgeListFile(const std::string& path) {
  auto in = OpenIn(path);
  return ReadEdgeList(in);
}

void WriteEdgeList(const Graph& g, std::ostream& out) {
  out << "# vertices: " << g.num_vertices() << "\n# edges: " << g.num_edges() << "\n";
  for (const auto& [u, v] : g.Edges()) out << u << ' ' << v << '\n';
  if (!out) throw IoError("failed to write edge list");
}

void WriteEdgeListFile(const Graph& g, const std::string& path) {
  auto out = OpenOut(path);
  WriteEdgeList(g, out);
}

CommunityLabels ReadLabels(std::istream& in) {
  std::vector<int> labels;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = Trim(line);
    if (text.empty() || text[0] == '#') continue;
    int label = 0;
    if (!ParseNumber(text, label) || label < 0) {
      throw IoError("line " + std::to_string(line_no) + ": expected a nonnegative label");
    }
    labels.push_back(label);
  }
  return CommunityLabels::FromVector(std::move(labels));
}

CommunityLabels ReadLabelsFile(const std::string& path) {
  auto in = OpenIn(path);
  return ReadLabels(in);
}

void WriteLabels(const CommunityLabels& labels, std::ostream& out) {
  for (int label : labels.labels) out << label << '\n';
  if (!out) throw IoError("failed to write labels");
}

void WriteLabelsFile(const CommunityLabels& labels, const std::string& path) {
  auto out = OpenOut(path);
  WriteLabels(labels, out);
}

LabelledGraph ReadGml(std::istream& in) {
  GmlTokenizer tokens(in);
  const GmlList top = ParseGmlList(tokens, false);
  const GmlValue* graph = Find(top, "graph");
  if (graph == nullptr || !graph->list) throw IoError("GML: no graph [ ... ] block");

  std::map<int64_t, Vertex> index;
  std::vector<std::optional<int64_t>> values;
  for (const auto& [key, value] : *graph->list) {
    if (key != "node") continue;
    if (!value.list) throw IoError("GML: node is not a list");
    const int64_t id = GmlInt(Find(*value.list, "id"), "node id");
    if (!index.emplace(id, static_cast<Vertex>(values.size())).second) {
      throw IoError("GML: duplicate node id " + std::to_string(id));
    }
    const GmlValue* label = Find(*value.list, "value");
    values.push_back(label ? std::optional<int64_t>(GmlInt(label, "node value")) : std::nullopt);
  }
  std::set<Edge> unique;
  for (const auto& [key, value] : *graph->list) {
    if (key != "edge") continue;
    if (!value.list) throw IoError("GML: edge is not a list");
    const int64_t s = GmlInt(Find(*value.list, "source"), "edge source");
    const int64_t t = GmlInt(Find(*value.list, "target"), "edge target");
    const auto si = index.find(s);
    const auto ti = index.find(t);
    if (si == index.end() || ti == index.end()) throw IoError("GML: edge to an unknown node");
    if (si->second == ti->second) continue;
    unique.emplace(std::min(si->second, ti->second), std::max(si->second, ti->second));
  }

  std::set<int64_t> distinct;
  for (const auto& v : values) {
    if (v) distinct.insert(*v);
  }
  std::map<int64_t, int> rank;
  for (int64_t v : distinct) rank.emplace(v, static_cast<int>(rank.size()));
  std::vector<int> labels(values.size(), 0);
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i]) labels[i] = rank[*values[i]];
  }
  LabelledGraph out;
  out.graph = Graph::FromEdges(values.size(), std::vector<Edge>(unique.begin(), unique.end()));
  out.labels.labels = std::move(labels);
  out.labels.k = std::max<int>(1, static_cast<int>(rank.size()));
  if (values.empty()) out.labels.k = 0;
  return out;
}

LabelledGraph ReadGmlFile(const std::string& path) {
  auto in = OpenIn(path);
  return ReadGml(in);
}

}  // namespace agsbm
