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

#include "argfore/datasets.hpp"

#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "argfore/error.hpp"
#include "schema_reader.hpp"

namespace argfore {

namespace {

std::string percent(std::optional<double> ratio) {
  if (!ratio) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g%%", *ratio * 100.0);
  return buf;
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

Json arguments_json(const std::vector<GeneratedArgument>& args) {
  Json out = Json::array();
  for (const auto& a : args) out.push_back({{"text", a.text}, {"score", a.score}});
  return out;
}

std::vector<GeneratedArgument> read_arguments(const SchemaReader& in,
                                              const Json& rec,
                                              const std::string& ptr,
                                              const std::string& key) {
  const Json& list = in.array_field(rec, ptr, key);
  std::vector<GeneratedArgument> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string p = ptr + "/" + key + "/" + std::to_string(i);
    in.require_object(list[i], p);
    GeneratedArgument a;
    a.text = in.string_field(list[i], p, "text");
    a.score = in.number_field(list[i], p, "score");
    if (!(a.score >= 0.0 && a.score <= 1.0)) {
      in.fail(p + "/score", "score must lie in [0, 1]");
    }
    out.push_back(std::move(a));
  }
  return out;
}

double parse_probability(const std::string& text, const std::string& what) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  while (end && *end && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (end == text.c_str() || (end && *end) || !(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::kDomain,
                what + " response \"" + text + "\" is not a number in [0, 1]");
  }
  return v;
}

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

Qbaf record_to_qbaf(const ForecastRecord& rec, double forecast_base) {
  auto check = [](double v, const std::string& what) {
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream msg;
      msg << what << " " << v << " outside [0, 1]";
      throw Error(ErrorCode::kDomain, msg.str());
    }
  };
  check(forecast_base, "forecast base score");
  Qbaf q;
  q.add_argument(kClaimId, forecast_base, rec.claim);
  for (std::size_t i = 0; i < rec.pros.size(); ++i) {
    check(rec.pros[i].score, "uncertainty score of pro argument " + std::to_string(i));
    ArgumentId id("pro-" + std::to_string(i));
    q.add_argument(id, rec.pros[i].score, rec.pros[i].text);
    q.add_support(id, kClaimId);
  }
  for (std::size_t i = 0; i < rec.cons.size(); ++i) {
    check(rec.cons[i].score, "uncertainty score of con argument " + std::to_string(i));
    ArgumentId id("con-" + std::to_string(i));
    q.add_argument(id, rec.cons[i].score, rec.cons[i].text);
    q.add_attack(id, kClaimId);
  }
  return q;
}

double claim_strength(const ForecastRecord& rec, double forecast_base) {
  return evaluate(record_to_qbaf(rec, forecast_base)).at(kClaimId);
}

CoherenceVerdict record_verdict(const ForecastRecord& rec,
                                const ThresholdConfig& cfg,
                                double forecast_base) {
  const ArgumentId question(rec.question_id);
  CoherenceVerdict v;
  v.forecaster = UserId("model");
  v.argument = question;
  v.sigma = claim_strength(rec, forecast_base);
  v.prediction = rec.prediction;
  v.xi1 = cfg.xi1(question);
  v.xi2 = cfg.xi2(question);
  v.epsilon = cfg.epsilon;
  v.branch = strength_branch(v.sigma, v.xi1, cfg.sigma_eq_tol);
  v.coherent = prediction_coheres(v.branch, rec.prediction, v.xi2, cfg.epsilon);
  return v;
}

bool record_correct(const ForecastRecord& rec) {
  if (!rec.resolution) {
    throw Error(ErrorCode::kPrecondition,
                "record \"" + rec.question_id + "\" is unresolved");
  }
  return (rec.prediction > 0.5) == *rec.resolution;
}

AccuracyReport accuracy_report(std::span<const ForecastRecord> records,
                               const ThresholdConfig& cfg,
                               double forecast_base) {
  cfg.check();
  std::string unresolved;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].resolution) {
      unresolved += (unresolved.empty() ? "" : ", ") + records[i].question_id +
                    " (#" + std::to_string(i) + ")";
    }
  }
  if (!unresolved.empty()) {
    throw Error(ErrorCode::kPrecondition, "unresolved records: " + unresolved);
  }

  AccuracyReport r;
  for (const auto& rec : records) {
    bool correct = record_correct(rec);
    bool coherent = record_verdict(rec, cfg, forecast_base).coherent;
    ++r.total;
    if (correct) ++r.correct;
    if (coherent) {
      ++r.coherent_total;
      if (correct) ++r.coherent_correct;
    }
  }
  r.accuracy = ratio(r.correct, r.total);
  r.coherent_accuracy = ratio(r.coherent_correct, r.coherent_total);
  r.retention = ratio(r.coherent_total, r.total);
  return r;
}

Json report_to_json(const AccuracyReport& report) {
  auto opt = [](std::optional<double> v) -> Json {
    return v ? Json(*v) : Json(nullptr);
  };
  return Json{{"total", report.total},
              {"correct", report.correct},
              {"coherent_total", report.coherent_total},
              {"coherent_correct", report.coherent_correct},
              {"accuracy", opt(report.accuracy)},
              {"coherent_accuracy", opt(report.coherent_accuracy)},
              {"retention", opt(report.retention)}};
}

std::string render_report_table(const AccuracyReport& report,
                                std::string_view label) {
  const std::vector<std::string> head = {"", "Total", "Acc.", "Coherent total",
                                         "Coherent acc.", "Retention"};
  const std::vector<std::string> row = {
      std::string(label),          std::to_string(report.total),
      percent(report.accuracy),    std::to_string(report.coherent_total),
      percent(report.coherent_accuracy), percent(report.retention)};
  std::vector<std::size_t> width(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) {
    width[i] = std::max(head[i].size(), row[i].size());
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << "  ";
      if (i == 0) {
        out << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
      } else {
        out << std::right << std::setw(static_cast<int>(width[i])) << cells[i];
      }
    }
    out << "\n";
  };
  line(head);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  line(row);
  return out.str();
}

std::vector<Violation> validate_record(const ForecastRecord& rec) {
  std::vector<Violation> out;
  if (rec.question_id.empty()) {
    out.push_back({"question-id", {}, "record has an empty question id"});
  }
  if (!(rec.prediction >= 0.0 && rec.prediction <= 1.0)) {
    out.push_back({"prediction-range", {rec.question_id},
                   "prediction outside [0, 1]"});
  }
  for (const auto* side : {&rec.pros, &rec.cons}) {
    for (const auto& a : *side) {
      if (!(a.score >= 0.0 && a.score <= 1.0)) {
        out.push_back({"score-range", {rec.question_id},
                       "uncertainty score outside [0, 1]"});
      }
    }
  }
  if (rec.breadth == Breadth::kB11 &&
      (rec.pros.size() != 1 || rec.cons.size() != 1)) {
    out.push_back({"b11-shape", {rec.question_id},
                   "b11 records need exactly one pro and one con argument"});
  }
  return out;
}

Json records_to_json(std::span<const ForecastRecord> records) {
  Json out = Json::array();
  for (const auto& r : records) {
    Json res = nullptr;
    if (r.resolution) res = *r.resolution;
    out.push_back({{"question_id", r.question_id},
                   {"claim", r.claim},
                   {"prediction", r.prediction},
                   {"resolution", res},
                   {"breadth", r.breadth == Breadth::kB11 ? "b11" : "bnk"},
                   {"pro", arguments_json(r.pros)},
                   {"con", arguments_json(r.cons)}});
  }
  return out;
}

std::vector<ForecastRecord> parse_dataset(std::string_view text,
                                          std::string_view source) {
  Json doc = parse_json_text(text, source);
  SchemaReader in(source, text);
  if (!doc.is_array()) in.fail("", "dataset must be a top-level array");
  std::vector<ForecastRecord> out;
  out.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    std::string ptr = "/" + std::to_string(i);
    const Json& o = doc[i];
    in.require_object(o, ptr);
    ForecastRecord r;
    r.question_id = in.string_field(o, ptr, "question_id");
    r.claim = in.string_field(o, ptr, "claim");
    r.prediction = in.number_field(o, ptr, "prediction");
    if (!(r.prediction >= 0.0 && r.prediction <= 1.0)) {
      in.fail(ptr + "/prediction", "prediction must lie in [0, 1]");
    }
    if (o.contains("resolution") && !o["resolution"].is_null()) {
      r.resolution = in.bool_field(o, ptr, "resolution");
    }
    std::string breadth = in.string_field(o, ptr, "breadth");
    if (breadth == "b11") {
      r.breadth = Breadth::kB11;
    } else if (breadth == "bnk") {
      r.breadth = Breadth::kBnk;
    } else {
      in.fail(ptr + "/breadth",
              "breadth must be \"b11\" or \"bnk\", got \"" + breadth + "\"");
    }
    r.pros = read_arguments(in, o, ptr, "pro");
    r.cons = read_arguments(in, o, ptr, "con");
    if (r.breadth == Breadth::kB11 && (r.pros.size() != 1 || r.cons.size() != 1)) {
      in.fail(ptr, "b11 records need exactly one pro and one con argument");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ForecastRecord> load_dataset(const std::filesystem::path& path) {
  return parse_dataset(read_text_file(path), path.string());
}

void save_dataset(std::span<const ForecastRecord> records,
                  const std::filesystem::path& path) {
  write_text_file(path, records_to_json(records).dump(2) + "\n");
}

ReplayClient ReplayClient::from_file(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  Json doc = parse_json_text(text, path.string());
  SchemaReader in(path.string(), text);
  if (!doc.is_array()) in.fail("", "expected an array of recorded exchanges");
  std::map<std::string, std::string> responses;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    std::string ptr = "/" + std::to_string(i);
    in.require_object(doc[i], ptr);
    responses[in.string_field(doc[i], ptr, "prompt")] =
        in.string_field(doc[i], ptr, "response");
  }
  return ReplayClient(std::move(responses));
}

std::string ReplayClient::complete(std::string_view prompt) {
  auto it = responses_.find(std::string(prompt));
  if (it == responses_.end()) {
    throw Error(ErrorCode::kNotFound,
                "no recorded response for prompt \"" + std::string(prompt) + "\"");
  }
  return it->second;
}

ForecastRecord generate_record(TextCompletionClient& client,
                               std::string question_id, std::string claim,
                               Breadth breadth,
                               std::optional<bool> resolution) {
  ForecastRecord r;
  r.question_id = std::move(question_id);
  r.claim = std::move(claim);
  r.breadth = breadth;
  r.resolution = resolution;
  r.prediction = parse_probability(client.complete("predict: " + r.claim),
                                   "prediction");
  auto collect = [&](const std::string& kind) {
    std::vector<GeneratedArgument> out;
    for (auto& text : nonempty_lines(client.complete(kind + ": " + r.claim))) {
      double score = parse_probability(client.complete("uncertainty: " + text),
                                       "uncertainty");
      out.push_back({std::move(text), score});
      if (breadth == Breadth::kB11) break;
    }
    return out;
  };
  r.pros = collect("supporters");
  r.cons = collect("attackers");
  if (breadth == Breadth::kB11 && (r.pros.size() != 1 || r.cons.size() != 1)) {
    throw Error(ErrorCode::kGeneration,
                "b11 generation needs one supporter and one attacker for \"" +
                    r.claim + "\"");
  }
  return r;
}

}  // namespace argfore
