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

#include "agsbm/serialize.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "agsbm/errors.h"

namespace agsbm {
namespace {

Json Matrix(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string Scalar(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_float()) return FormatDouble(value.get<double>());
  if (value.is_null()) return "";
  return value.dump();
}

std::string Cell(const Json& value) {
  if (value.is_array()) {
    std::string out;
    for (size_t i = 0; i < value.size(); ++i) {
      if (i > 0) out += ';';
      out += value[i].is_array() ? "[" + Cell(value[i]) + "]" : Scalar(value[i]);
    }
    return out;
  }
  return Scalar(value);
}

std::string Quote(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void Flatten(const Json& object, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& cells) {
  for (const auto& [key, value] : object.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      Flatten(value, name, cells);
    } else {
      cells.emplace_back(name, Cell(value));
    }
  }
}

Json Strings(const std::vector<std::string>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v);
  return out;
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

Json ToJson(const EigenEstimate& estimate) {
  Json out;
  out["h"] = estimate.h;
  out["lambda"] = estimate.values;
  out["lambda1_crude"] = estimate.lambda1_crude;
  out["flags"] = Strings(estimate.flags);
  return out;
}

Json ToJson(const HyperParams& hp) {
  Json out;
  out["x"] = hp.x;
  out["x_fraction"] = std::to_string(hp.x_numerator) + "/" + std::to_string(hp.x_denominator);
  out["epsilon"] = hp.epsilon;
  out["epsilon_form"] = hp.epsilon_reciprocal ? "1/" + std::to_string(hp.epsilon_z)
                                              : "1-1/" + std::to_string(hp.epsilon_z);
  out["c"] = hp.c;
  out["m"] = hp.m;
  out["delta"] = hp.delta;
  out["lambda1_widened"] = hp.lambda1_widened;
  out["lambdah_widened"] = hp.lambdah_widened;
  out["k_prime"] = hp.k_prime;
  out["relaxed"] = Strings(hp.relaxed);
  return out;
}

Json ToJson(const ClassificationResult& result, bool with_labels) {
  Json out;
  out["status"] = result.ok() ? "ok" : "failed";
  out["failure_reason"] = result.failure_reason;
  out["k_found"] = result.k_found;
  out["anchors"] = result.anchors;
  out["y_doubleprime"] = result.y_doubleprime;
  out["unclassified"] = result.unclassified;
  out["depth_r"] = result.depth_r;
  out["depth_r_prime"] = result.depth_r_prime;
  out["runs_total"] = result.runs_total;
  out["runs_ok"] = result.runs_ok;
  out["runs_kept"] = result.runs_kept;
  out["flags"] = Strings(result.flags);
  if (result.eigen_estimate) out["eigen_estimate"] = ToJson(*result.eigen_estimate);
  if (result.hyperparams) out["hyperparams"] = ToJson(*result.hyperparams);
  if (with_labels) out["labels"] = result.labels.labels;
  return out;
}

Json ToJson(const ParamEstimate& estimate) {
  Json out;
  out["regime"] = RegimeName(estimate.regime);
  out["n"] = estimate.n;
  out["p_hat"] = estimate.p_hat;
  out["Q_hat"] = Matrix(estimate.Q_hat);
  out["empty_classes"] = estimate.empty_classes;
  return out;
}

Json ToJson(const DivergenceMatrix& divergence) {
  Json out;
  out["d_plus"] = Matrix(divergence.d_plus);
  out["t_star"] = Matrix(divergence.t_star);
  out["finest"] = divergence.finest;
  out["group_of"] = divergence.group_of;
  return out;
}

Json ToJson(const AgreementReport& report) {
  Json out;
  out["accuracy"] = report.accuracy;
  out["best_bijection"] = report.best_bijection;
  out["confusion"] = report.confusion;
  return out;
}

Json ToJson(const DegreeProfilingResult& result, bool with_labels) {
  Json out;
  out["gamma"] = result.gamma;
  out["groups"] = result.groups.k;
  out["divergence"] = ToJson(result.divergence);
  out["estimate"] = ToJson(result.estimate);
  out["preliminary_estimate"] = ToJson(result.preliminary_estimate);
  out["contraction"] = result.contraction;
  out["map_fallbacks"] = result.map_fallbacks;
  out["composite_fallbacks"] = result.composite_fallbacks;
  if (result.partial) out["partial"] = ToJson(*result.partial);
  if (with_labels) out["labels"] = result.groups.labels;
  return out;
}

Json ToJson(const RealDataResult& result, bool with_labels) {
  Json out;
  out["component_size"] = result.component.size();
  out["consensus"] = ToJson(result.consensus, with_labels);
  Json trials = Json::array();
  for (const auto& t : result.trials) trials.push_back(ToJson(t, false));
  out["trials"] = std::move(trials);
  return out;
}

Json ToJson(const ExactSpectrum& spectrum) {
  Json out;
  out["values"] = spectrum.values;
  out["h"] = spectrum.h;
  out["h_prime"] = spectrum.h_prime;
  return out;
}

std::string JsonToCsv(const Json& object) {
  std::vector<std::pair<std::string, std::string>> cells;
  if (object.is_object()) {
    Flatten(object, "", cells);
  } else {
    cells.emplace_back("value", Cell(object));
  }
  std::string header;
  std::string row;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) {
      header += ',';
      row += ',';
    }
    header += Quote(cells[i].first);
    row += Quote(cells[i].second);
  }
  return header + "\n" + row + "\n";
}

std::string Render(const Json& object, bool csv) {
  return csv ? JsonToCsv(object) : object.dump(2) + "\n";
}

SbmParams SbmParamsFromJson(const Json& json) {
  try {
    if (!json.is_object()) throw ParameterError("model parameters must be a JSON object");
    const Regime regime = ParseRegime(json.value("regime", std::string("constant")));
    SbmParams params;
    if (json.contains("k")) {
      params = SbmParams::Symmetric(json.at("k").get<int>(), json.at("alpha").get<double>(),
                                    json.at("beta").get<double>(), regime);
    } else {
      params.p = json.at("p").get<std::vector<double>>();
      const auto rows = json.at("Q").get<std::vector<std::vector<double>>>();
      params.Q.resize(rows.size(), rows.size());
      for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw ParameterError("Q must be square");
        for (size_t j = 0; j < rows.size(); ++j) params.Q(i, j) = rows[i][j];
      }
      params.regime = regime;
    }
    params.scale = json.value("scale", 1.0);
    params.Validate();
    return params;
  } catch (const nlohmann::json::exception& err) {
    throw ParameterError(std::string("bad model parameters: ") + err.what());
  }
}

}  // namespace agsbm
