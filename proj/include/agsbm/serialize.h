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

// JSON and CSV renderings of pipeline results.  Both are locale-independent
// and deterministic: the same result always serializes to the same bytes.

#ifndef AGSBM_SERIALIZE_H_
#define AGSBM_SERIALIZE_H_

#include <string>

#include <nlohmann/json.hpp>

#include "agsbm/degree_profiling.h"
#include "agsbm/eval.h"
#include "agsbm/realdata.h"
#include "agsbm/spectral.h"
#include "agsbm/sphere_comparison.h"

namespace agsbm {

using Json = nlohmann::ordered_json;

Json ToJson(const EigenEstimate& estimate);
Json ToJson(const HyperParams& hp);
// Labels are omitted unless `with_labels`; they normally go to a labels file.
Json ToJson(const ClassificationResult& result, bool with_labels = false);
Json ToJson(const ParamEstimate& estimate);
Json ToJson(const DivergenceMatrix& divergence);
Json ToJson(const AgreementReport& report);
Json ToJson(const DegreeProfilingResult& result, bool with_labels = false);
Json ToJson(const RealDataResult& result, bool with_labels = false);
Json ToJson(const ExactSpectrum& spectrum);

// Shortest round-trip decimal form, '.' separator, no locale.
std::string FormatDouble(double value);

// Flattens a JSON object into a header row and one data row.  Nested
// objects use dotted keys; arrays are joined with ';' (nested arrays
// bracketed); strings containing ',' or '"' are quoted.
std::string JsonToCsv(const Json& object);

// Either JSON (pretty-printed) or the flattened CSV.
std::string Render(const Json& object, bool csv);

// Parses SbmParams from {"p": [...], "Q": [[...]], "regime": "...",
// "scale": s} or the shorthand {"k": k, "alpha": a, "beta": b, "regime":
// "...", "scale": s}.  Throws ParameterError.
SbmParams SbmParamsFromJson(const Json& json);

}  // namespace agsbm

#endif  // AGSBM_SERIALIZE_H_
