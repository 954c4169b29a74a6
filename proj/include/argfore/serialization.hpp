// Copyright 2026 The argfore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON documents for debates, templates, verdicts and derived QBAFs.
//
// Debate document:
//   {"arguments":   [{"id": str, "text": str, "kind": "forecasting"|"regular"}],
//    "edges":       [{"src": str, "dst": str, "polarity": "attack"|"support"}],
//    "votes":       [{"user": str, "arg": str, "vote": "+"|"-"|"?"}],
//    "predictions": [{"user": str, "arg": str, "p": num}],
//    "users":       [str]}                       (optional)
//
// Parsing functions take the raw text plus a source name used in error
// messages ("<source>:<line>: ..."). Syntax errors throw Error(kParse),
// structural problems Error(kSchema).

#ifndef ARGFORE_SERIALIZATION_HPP_
#define ARGFORE_SERIALIZATION_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "argfore/acf.hpp"
#include "argfore/coherence.hpp"
#include "argfore/stats.hpp"
#include "argfore/variants.hpp"

namespace argfore {

using Json = nlohmann::json;

// Maps JSON pointers ("/edges/2/src") to the 1-based line on which the value
// starts. Expects syntactically valid JSON.
std::map<std::string, int> json_value_lines(std::string_view text);

// Parses text into Json, turning syntax errors into Error(kParse) with the
// offending line.
Json parse_json_text(std::string_view text, std::string_view source);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

Json acf_to_json(const Acf& acf);
Acf acf_from_json(const Json& doc, std::string_view source = "<debate>",
                  std::string_view text = {});
Acf parse_acf(std::string_view text, std::string_view source = "<debate>");
Acf load_acf(const std::filesystem::path& path);
void save_acf(const Acf& acf, const std::filesystem::path& path);

Json qbaf_to_json(const Qbaf& qbaf);
Qbaf qbaf_from_json(const Json& doc, std::string_view source = "<qbaf>");

// {"templates": [{"question_id", "forecast", "supporter", "attacker",
//                 "extra_supporter", "extra_attacker", "depth_supporter",
//                 "depth_attacker"}]}
Json templates_to_json(const TemplateStore& store);
TemplateStore parse_templates(std::string_view text,
                              std::string_view source = "<templates>");
TemplateStore load_templates(const std::filesystem::path& path);

Json verdict_to_json(const CoherenceVerdict& v);
Json verdicts_to_json(const std::vector<CoherenceVerdict>& verdicts);
std::vector<CoherenceVerdict> parse_verdicts(
    std::string_view text, std::string_view source = "<verdicts>");

Json summary_to_json(const ForecastSummary& s);

// Forecaster QBAF with each argument's base score and strength and each
// original relation's fate.
Json forecaster_qbaf_to_json(const ForecasterQbaf& fq,
                             const StrengthMap& strengths);

// {"<question or argument id>": num, ...}
PerArgument parse_value_map(std::string_view text, double fallback,
                            std::string_view source = "<map>");

// [{"profile": "vdb", "aligned": n, "not_aligned": n}, ...]
std::vector<ShapeCount> parse_shape_counts(std::string_view text,
                                           std::string_view source = "<counts>");

// Rounds every floating-point number in `doc` to `digits` significant digits.
Json round_numbers(const Json& doc, int digits = 6);

}  // namespace argfore

#endif  // ARGFORE_SERIALIZATION_HPP_
