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

// Machine-generated forecast records: one resolved (question, answer) claim
// with a raw prediction and generated pro/con arguments whose uncertainty
// scores act as base scores.
//
// Dataset file, a top-level JSON array of
//   {"question_id": str, "claim": str, "prediction": num,
//    "resolution": bool|null, "breadth": "b11"|"bnk",
//    "pro": [{"text": str, "score": num}], "con": [...]}

#ifndef ARGFORE_DATASETS_HPP_
#define ARGFORE_DATASETS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "argfore/coherence.hpp"
#include "argfore/serialization.hpp"

namespace argfore {

enum class Breadth { kB11, kBnk };

struct GeneratedArgument {
  std::string text;
  double score = 0.0;

  friend bool operator==(const GeneratedArgument&,
                         const GeneratedArgument&) = default;
};

struct ForecastRecord {
  std::string question_id;
  std::string claim;
  double prediction = 0.5;
  std::optional<bool> resolution;
  Breadth breadth = Breadth::kBnk;
  std::vector<GeneratedArgument> pros;
  std::vector<GeneratedArgument> cons;

  friend bool operator==(const ForecastRecord&, const ForecastRecord&) = default;
};

inline const ArgumentId kClaimId{"claim"};

// Star-shaped QBAF: the claim (id "claim", base `forecast_base`) supported by
// "pro-<i>" and attacked by "con-<i>", each based at its uncertainty score.
// Throws Error(kDomain) for scores or base outside [0,1].
Qbaf record_to_qbaf(const ForecastRecord& rec, double forecast_base = 0.5);

double claim_strength(const ForecastRecord& rec, double forecast_base = 0.5);

// Thresholds for a record are looked up by its question id.
CoherenceVerdict record_verdict(const ForecastRecord& rec,
                                const ThresholdConfig& cfg,
                                double forecast_base = 0.5);

// Predicted true iff prediction > 0.5.
bool record_correct(const ForecastRecord& rec);

struct AccuracyReport {
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t coherent_total = 0;
  std::size_t coherent_correct = 0;
  std::optional<double> accuracy;
  std::optional<double> coherent_accuracy;
  std::optional<double> retention;

  friend bool operator==(const AccuracyReport&, const AccuracyReport&) = default;
};

// Throws Error(kPrecondition) listing every unresolved record.
AccuracyReport accuracy_report(std::span<const ForecastRecord> records,
                               const ThresholdConfig& cfg = {},
                               double forecast_base = 0.5);

Json report_to_json(const AccuracyReport& report);
std::string render_report_table(const AccuracyReport& report,
                                std::string_view label = "dataset");

std::vector<Violation> validate_record(const ForecastRecord& rec);

Json records_to_json(std::span<const ForecastRecord> records);
std::vector<ForecastRecord> parse_dataset(std::string_view text,
                                          std::string_view source = "<dataset>");
std::vector<ForecastRecord> load_dataset(const std::filesystem::path& path);
void save_dataset(std::span<const ForecastRecord> records,
                  const std::filesystem::path& path);

// Source of generated text. Only offline implementations ship.
class TextCompletionClient {
 public:
  virtual ~TextCompletionClient() = default;
  virtual std::string complete(std::string_view prompt) = 0;
};

// Answers from a recorded prompt -> response table; unknown prompts throw
// Error(kNotFound).
class ReplayClient : public TextCompletionClient {
 public:
  explicit ReplayClient(std::map<std::string, std::string> responses)
      : responses_(std::move(responses)) {}

  // [{"prompt": str, "response": str}, ...]
  static ReplayClient from_file(const std::filesystem::path& path);

  std::string complete(std::string_view prompt) override;

 private:
  std::map<std::string, std::string> responses_;
};

class ConstantClient : public TextCompletionClient {
 public:
  explicit ConstantClient(std::string response) : response_(std::move(response)) {}
  std::string complete(std::string_view) override { return response_; }

 private:
  std::string response_;
};

// Builds a record by prompting the client:
//   "predict: <claim>"          -> probability in [0,1]
//   "supporters: <claim>"       -> one argument per line
//   "attackers: <claim>"        -> one argument per line
//   "uncertainty: <argument>"   -> score in [0,1]
// For B11 only the first supporter and attacker are kept.
ForecastRecord generate_record(TextCompletionClient& client,
                               std::string question_id, std::string claim,
                               Breadth breadth,
                               std::optional<bool> resolution = std::nullopt);

}  // namespace argfore

#endif  // ARGFORE_DATASETS_HPP_
