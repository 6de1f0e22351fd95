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

// agsbm_cli: command-line front end over the C API.
//
//   agsbm_cli gen      --k 2 --alpha 50 --beta 10 --n 2000 --output g.txt --labels-out truth.txt
//   agsbm_cli eigs     --graph g.txt
//   agsbm_cli partial  --graph g.txt --delta 0.4 --labels-out inferred.txt --truth truth.txt
//   agsbm_cli exact    --graph g.txt --delta 0.4
//   agsbm_cli estimate --graph g.txt --labels truth.txt --regime logarithmic
//   agsbm_cli eval     --truth truth.txt --inferred inferred.txt
//   agsbm_cli sweep    --config sweep.json --format csv
//   agsbm_cli blogs    --gml polblogs.gml | --graph g.txt [--truth l.txt] | --surrogate
//
// Exit status: 0 success, 2 invalid parameters or input, 3 pipeline failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "agsbm/agsbm.h"

namespace {

constexpr int kExitParam = 2;
constexpr int kExitPipeline = 3;

struct Global {
  uint64_t seed = 1;
  int threads = 1;
  std::string output;
  std::string format = "json";
};

struct GraphDeleter {
  void operator()(agsbm_graph* g) const { agsbm_graph_free(g); }
};
struct LabelsDeleter {
  void operator()(agsbm_labels* l) const { agsbm_labels_free(l); }
};
using GraphPtr = std::unique_ptr<agsbm_graph, GraphDeleter>;
using LabelsPtr = std::unique_ptr<agsbm_labels, LabelsDeleter>;

// Carries a failed status out of a subcommand.
struct Failure {
  agsbm_status status;
};

int ExitCode(agsbm_status status) {
  switch (status) {
    case AGSBM_OK: return 0;
    case AGSBM_ERR_PARAM:
    case AGSBM_ERR_IO: return kExitParam;
    case AGSBM_ERR_PIPELINE: return kExitPipeline;
    default: return 1;
  }
}

void Check(agsbm_status status) {
  if (status != AGSBM_OK) {
    std::cerr << "agsbm: " << agsbm_last_error() << "\n";
    throw Failure{status};
  }
}

void Emit(const Global& global, const std::string& text) {
  if (global.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(global.output);
  if (!out) {
    std::cerr << "agsbm: cannot write " << global.output << "\n";
    throw Failure{AGSBM_ERR_IO};
  }
  out << text;
}

// Takes ownership of a C string from the library.
std::string Take(char* text) {
  std::string out = text == nullptr ? "" : text;
  agsbm_string_free(text);
  return out;
}

GraphPtr LoadGraph(const std::string& path) {
  agsbm_graph* g = nullptr;
  Check(agsbm_graph_read(path.c_str(), &g));
  return GraphPtr(g);
}

LabelsPtr LoadLabels(const std::string& path) {
  agsbm_labels* l = nullptr;
  Check(agsbm_labels_read(path.c_str(), &l));
  return LabelsPtr(l);
}

void WriteLabels(const agsbm_labels* labels, const std::string& path) {
  if (!path.empty()) Check(agsbm_labels_write(labels, path.c_str()));
}

void ReportAgreement(const agsbm_labels* truth, const agsbm_labels* inferred) {
  double accuracy = 0.0;
  Check(agsbm_agreement(truth, inferred, &accuracy, nullptr, nullptr));
  const size_t n = agsbm_labels_size(truth);
  const long wrong = std::lround((1.0 - accuracy) * static_cast<double>(n));
  std::cerr << "accuracy=" << accuracy << " misclassified=" << wrong << "\n";
}

// Builds {"threads": t, ...} from the set options.
class OptionsJson {
 public:
  explicit OptionsJson(int threads) { Add("threads", std::to_string(threads)); }
  void Add(const std::string& key, const std::string& raw_value) {
    body_ += (body_.empty() ? "" : ",") + ("\"" + key + "\":" + raw_value);
  }
  template <typename T>
  void AddIf(const std::string& key, const std::optional<T>& value) {
    if (!value) return;
    std::ostringstream s;
    s.precision(17);
    s << *value;
    Add(key, s.str());
  }
  void AddString(const std::string& key, const std::string& value) {
    Add(key, "\"" + value + "\"");
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "agsbm: cannot read " << path << "\n";
    throw Failure{AGSBM_ERR_IO};
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agnostic community recovery in the stochastic block model"};
  app.require_subcommand(1);
  Global global;
  app.add_option("--seed", global.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", global.threads, "Worker threads (0: all cores)")
      ->capture_default_str();
  app.add_option("--output", global.output, "Write the result here instead of stdout");
  app.add_option("--format", global.format, "Result format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "Sample a stochastic block model");
  std::string params_path;
  int k = 2;
  double alpha = 50, beta = 10, scale = 1;
  std::string regime = "constant";
  size_t n = 1000;
  std::string labels_out;
  gen->add_option("--params", params_path, "JSON model file {p, Q, regime, scale}");
  gen->add_option("--k", k, "Communities (symmetric model)")->capture_default_str();
  gen->add_option("--alpha", alpha, "Within-community Q entry")->capture_default_str();
  gen->add_option("--beta", beta, "Between-community Q entry")->capture_default_str();
  gen->add_option("--regime", regime, "constant (G1) or logarithmic (G2)")->capture_default_str();
  gen->add_option("--scale", scale, "Multiplier applied to Q")->capture_default_str();
  gen->add_option("--n", n, "Number of vertices")->capture_default_str();
  gen->add_option("--labels-out", labels_out, "Write the planted labels here");

  // eigs
  auto* eigs = app.add_subcommand("eigs", "Estimate the eigenvalues of PQ from a graph");
  std::string graph_path;
  std::optional<double> eig_c;
  std::optional<int> probes, depth_r, depth_r_prime;
  eigs->add_option("--graph", graph_path, "Edge list")->required();
  eigs->add_option("--c", eig_c, "Edge-split probability (default 0.1)");
  eigs->add_option("--probes", probes, "Probe vertices (default ceil(sqrt(ln n)))");
  eigs->add_option("--r", depth_r, "Override the shell depth r");
  eigs->add_option("--r-prime", depth_r_prime, "Override the shell depth r'");

  // partial
  auto* partial = app.add_subcommand("partial", "Parameter-free partial recovery");
  double delta = 0.4;
  std::optional<int> anchor_pool, repetitions;
  std::string policy = "best-effort";
  std::string truth_path;
  partial->add_option("--graph", graph_path, "Edge list")->required();
  partial->add_option("--delta", delta, "Smallest community share bound")->capture_default_str();
  partial->add_option("--m", anchor_pool, "Probe vertices per run");
  partial->add_option("--T", repetitions, "Repetitions merged by consensus");
  partial->add_option("--policy", policy, "Hyperparameter policy")
      ->check(CLI::IsMember({"strict", "best-effort"}))
      ->capture_default_str();
  partial->add_option("--r", depth_r, "Override the shell depth r");
  partial->add_option("--r-prime", depth_r_prime, "Override the shell depth r'");
  partial->add_option("--labels-out", labels_out, "Write the inferred labels here");
  partial->add_option("--truth", truth_path, "Planted labels; reports accuracy on stderr");

  // exact
  auto* exact = app.add_subcommand("exact", "Exact recovery of the finest partition");
  std::optional<double> gamma;
  exact->add_option("--graph", graph_path, "Edge list")->required();
  exact->add_option("--delta", delta, "Share bound for the partial step")->capture_default_str();
  exact->add_option("--gamma", gamma, "Edge share for the partial step (default lnln n/4ln n)");
  exact->add_option("--labels-out", labels_out, "Write the group labels here");
  exact->add_option("--truth", truth_path, "Planted labels; reports accuracy on stderr");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Estimate p and Q from a labelling");
  std::string labels_path;
  estimate->add_option("--graph", graph_path, "Edge list")->required();
  estimate->add_option("--labels", labels_path, "Labels file")->required();
  estimate->add_option("--regime", regime, "constant or logarithmic")->capture_default_str();

  // eval
  auto* eval = app.add_subcommand("eval", "Agreement between two labellings");
  std::string inferred_path;
  eval->add_option("--truth", truth_path, "Reference labels")->required();
  eval->add_option("--inferred", inferred_path, "Labels to score")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a benchmark sweep");
  std::string config_path;
  sweep->add_option("--config", config_path, "JSON sweep configuration")->required();

  // blogs
  auto* blogs = app.add_subcommand("blogs", "Two-community real-data mode");
  std::string gml_path, convert_prefix;
  bool surrogate = false;
  int trials = 40;
  blogs->add_option("--graph", graph_path, "Edge list");
  blogs->add_option("--gml", gml_path, "GML network (labels taken from node values)");
  blogs->add_flag("--surrogate", surrogate,
                  "Use a synthetic two-community surrogate (n=1222, alpha=50, beta=10)");
  blogs->add_option("--truth", truth_path, "Planted labels for --graph");
  blogs->add_option("--convert-to", convert_prefix,
                    "Write PREFIX.edges and PREFIX.labels instead of running");
  blogs->add_option("--trials", trials, "Independent trials")->capture_default_str();
  blogs->add_option("--r", depth_r, "Ball radius around the first vertex (default 1)");
  blogs->add_option("--r-prime", depth_r_prime, "Ball radius around the second vertex (default 1)");
  blogs->add_option("--labels-out", labels_out, "Write the consensus labels here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitParam;
  }

  const char* format = global.format.c_str();
  try {
    if (gen->parsed()) {
      std::string params;
      if (!params_path.empty()) {
        params = ReadFile(params_path);
      } else {
        std::ostringstream s;
        s.precision(17);
        s << "{\"k\":" << k << ",\"alpha\":" << alpha << ",\"beta\":" << beta
          << ",\"regime\":\"" << regime << "\",\"scale\":" << scale << "}";
        params = s.str();
      }
      agsbm_graph* g = nullptr;
      agsbm_labels* l = nullptr;
      Check(agsbm_sample_sbm(params.c_str(), n, global.seed, &g, &l));
      GraphPtr graph(g);
      LabelsPtr labels(l);
      if (global.output.empty()) {
        std::cerr << "agsbm: gen needs --output for the edge list\n";
        return kExitParam;
      }
      Check(agsbm_graph_write(graph.get(), global.output.c_str()));
      WriteLabels(labels.get(), labels_out);
    } else if (eigs->parsed()) {
      GraphPtr graph = LoadGraph(graph_path);
      OptionsJson options(global.threads);
      options.AddIf("c", eig_c);
      options.AddIf("num_probes", probes);
      options.AddIf("r", depth_r);
      options.AddIf("r_prime", depth_r_prime);
      char* result = nullptr;
      Check(agsbm_estimate_eigenvalues(graph.get(), options.str().c_str(), global.seed, format,
                                       &result));
      Emit(global, Take(result));
    } else if (partial->parsed()) {
      GraphPtr graph = LoadGraph(graph_path);
      OptionsJson options(global.threads);
      options.AddIf("m", anchor_pool);
      options.AddIf("T", repetitions);
      options.AddIf("r", depth_r);
      options.AddIf("r_prime", depth_r_prime);
      options.AddString("policy", policy);
      agsbm_labels* l = nullptr;
      char* result = nullptr;
      const agsbm_status status = agsbm_partial_recovery(
          graph.get(), delta, options.str().c_str(), global.seed, format, &l, &result);
      if (result != nullptr) Emit(global, Take(result));
      Check(status);
      LabelsPtr labels(l);
      WriteLabels(labels.get(), labels_out);
      if (!truth_path.empty()) ReportAgreement(LoadLabels(truth_path).get(), labels.get());
    } else if (exact->parsed()) {
      GraphPtr graph = LoadGraph(graph_path);
      OptionsJson options(global.threads);
      options.AddIf("gamma", gamma);
      agsbm_labels* l = nullptr;
      char* result = nullptr;
      Check(agsbm_exact_recovery(graph.get(), delta, options.str().c_str(), global.seed, format,
                                 &l, &result));
      LabelsPtr labels(l);
      Emit(global, Take(result));
      WriteLabels(labels.get(), labels_out);
      if (!truth_path.empty()) ReportAgreement(LoadLabels(truth_path).get(), labels.get());
    } else if (estimate->parsed()) {
      GraphPtr graph = LoadGraph(graph_path);
      LabelsPtr labels = LoadLabels(labels_path);
      char* result = nullptr;
      Check(agsbm_estimate_params(graph.get(), labels.get(), regime.c_str(), format, &result));
      Emit(global, Take(result));
    } else if (eval->parsed()) {
      LabelsPtr truth = LoadLabels(truth_path);
      LabelsPtr inferred = LoadLabels(inferred_path);
      char* result = nullptr;
      Check(agsbm_agreement(truth.get(), inferred.get(), nullptr, format, &result));
      Emit(global, Take(result));
    } else if (sweep->parsed()) {
      const std::string config = ReadFile(config_path);
      char* result = nullptr;
      Check(agsbm_run_sweep(config.c_str(), format, &result));
      Emit(global, Take(result));
    } else if (blogs->parsed()) {
      const int sources = !graph_path.empty() + !gml_path.empty() + surrogate;
      if (sources != 1) {
        std::cerr << "agsbm: blogs needs exactly one of --graph, --gml, --surrogate\n";
        return kExitParam;
      }
      agsbm_graph* g = nullptr;
      agsbm_labels* l = nullptr;
      if (!gml_path.empty()) {
        Check(agsbm_read_gml(gml_path.c_str(), &g, &l));
      } else if (surrogate) {
        Check(agsbm_sample_sbm(R"({"k":2,"alpha":50,"beta":10,"regime":"constant"})", 1222,
                               global.seed, &g, &l));
      } else {
        Check(agsbm_graph_read(graph_path.c_str(), &g));
      }
      GraphPtr graph(g);
      LabelsPtr truth(l);
      if (!truth_path.empty()) truth = LoadLabels(truth_path);
      if (!convert_prefix.empty()) {
        Check(agsbm_graph_write(graph.get(), (convert_prefix + ".edges").c_str()));
        if (truth) WriteLabels(truth.get(), convert_prefix + ".labels");
        return 0;
      }
      OptionsJson options(global.threads);
      options.Add("trials", std::to_string(trials));
      options.AddIf("r", depth_r);
      options.AddIf("r_prime", depth_r_prime);
      agsbm_labels* out = nullptr;
      char* result = nullptr;
      const agsbm_status status = agsbm_realdata(graph.get(), options.str().c_str(),
                                                 global.seed, format, &out, &result);
      if (result != nullptr) Emit(global, Take(result));
      Check(status);
      LabelsPtr inferred(out);
      WriteLabels(inferred.get(), labels_out);
      if (truth) ReportAgreement(truth.get(), inferred.get());
    }
  } catch (const Failure& failure) {
    return ExitCode(failure.status);
  }
  return 0;
}
