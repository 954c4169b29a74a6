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

// Debate variants for alignment studies. A single-question debate is
// classified along three complexity axes:
//
//   vote     the forecaster disagrees with an attacker of f, or gives an
//            attacker and a supporter of f the same (+/-) vote
//   breadth  exactly three regular arguments receive no relation from
//            another regular argument
//   depth    exactly one regular argument targets another regular argument
//
// A simple debate is f with one supporter (disagreed) and one attacker
// (agreed). generate() builds a debate for any of the eight shapes.

#ifndef ARGFORE_VARIANTS_HPP_
#define ARGFORE_VARIANTS_HPP_

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "argfore/acf.hpp"
#include "argfore/coherence.hpp"

namespace argfore {

struct ComplexityProfile {
  bool simple = false;
  bool vote_complex = false;
  bool breadth_complex = false;
  bool depth_complex = false;

  friend bool operator==(const ComplexityProfile&,
                         const ComplexityProfile&) = default;

  // "s", "v", "b", "d", "vb", "vd", "db", "vdb"; "none" for a debate that is
  // neither simple nor complex on any axis.
  std::string code() const;
  // "simple", "vote", ..., "vote/depth/breadth", or "none".
  std::string name() const;

  static std::optional<ComplexityProfile> from_code(std::string_view code);
  static const std::array<ComplexityProfile, 8>& all_shapes();
};

enum class PredictionBand { kBelow50, kAt50, kAbove50 };

std::string_view band_code(PredictionBand band);  // "lt50", "eq50", "gt50"
std::optional<PredictionBand> parse_band(std::string_view code);

struct VariantSpec {
  std::string question_id;
  ComplexityProfile profile;
  PredictionBand band = PredictionBand::kAt50;
};

// Argument texts for each structural slot of one question.
struct DebateTemplate {
  std::string question_id;
  std::string forecast;
  std::string supporter;
  std::string attacker;
  std::string extra_supporter;
  std::string extra_attacker;
  std::string depth_supporter;
  std::string depth_attacker;

  friend bool operator==(const DebateTemplate&, const DebateTemplate&) = default;
};

using TemplateStore = std::map<std::string, DebateTemplate>;

// Built-in templates for the abstract "tennis" and "election" questions.
const TemplateStore& default_templates();

// Throws Error(kUnsupportedShape) unless the debate has exactly one
// forecasting argument; Error(kNotFound) for an unknown forecaster.
ComplexityProfile classify(const Acf& acf, const UserId& user);

struct GeneratedVariant {
  Acf acf;
  UserId forecaster;
};

inline const UserId kFictitiousForecaster{"alex"};

// Throws Error(kNotFound) for an unknown question and Error(kGeneration) for
// a profile that is not one of the eight shapes.
GeneratedVariant generate(const VariantSpec& spec, const TemplateStore& store,
                          std::mt19937_64& rng);

struct AlignmentSample {
  bool model_coherent = false;
  bool user_coherent = false;
};

AlignmentSample alignment_sample(const Acf& acf, const UserId& user,
                                 const ThresholdConfig& cfg,
                                 bool user_says_coherent);

}  // namespace argfore

#endif  // ARGFORE_VARIANTS_HPP_
