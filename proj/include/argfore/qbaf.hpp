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

// Quantitative bipolar argumentation frameworks and DF-QuAD strengths.

#ifndef ARGFORE_QBAF_HPP_
#define ARGFORE_QBAF_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "argfore/ids.hpp"

namespace argfore {

struct Argument {
  ArgumentId id;
  std::string text;

  friend bool operator==(const Argument&, const Argument&) = default;
};

enum class Polarity { kAttack, kSupport };

std::string_view polarity_name(Polarity polarity);
Polarity flipped(Polarity polarity);

// A directed relation: `source` attacks or supports `target`.
struct Relation {
  ArgumentId source;
  ArgumentId target;
  Polarity polarity = Polarity::kAttack;

  friend bool operator==(const Relation&, const Relation&) = default;
};

// A diagnostic produced by the validators. `invariant` is a short stable
// label; `ids` lists the offending identifiers.
struct Violation {
  std::string invariant;
  std::vector<std::string> ids;
  std::string message;
};

// Arguments with base scores plus attack/support relations. Holds whatever it
// is given; validate() reports broken invariants.
struct Qbaf {
  std::vector<Argument> arguments;
  std::vector<Relation> relations;
  std::map<ArgumentId, double> base_scores;

  void add_argument(ArgumentId id, double base_score, std::string text = {});
  void add_attack(ArgumentId source, ArgumentId target);
  void add_support(ArgumentId source, ArgumentId target);

  bool contains(const ArgumentId& id) const;
  std::optional<double> base_score(const ArgumentId& id) const;
};

using StrengthMap = std::map<ArgumentId, double>;

// DF-QuAD aggregation: 0 for no children, otherwise 1 - prod(1 - v_i).
// Throws Error(kDomain) for a value outside [0,1].
double aggregate(std::span<const double> strengths);

// DF-QuAD combination of a base score with aggregated attack and support.
// Throws Error(kDomain) for inputs outside [0,1].
double combine(double base, double attack, double support);

std::vector<Violation> validate(const Qbaf& qbaf);

// Strengths of every argument, computed children-first in topological order.
// Throws Error(kCyclicGraph) naming one cycle, Error(kValidation) if any other
// invariant is broken.
StrengthMap evaluate(const Qbaf& qbaf);

// One cycle of the relation graph as a closed id sequence, if any exists.
std::optional<std::vector<ArgumentId>> find_cycle(
    std::span<const ArgumentId> nodes, std::span<const Relation> relations);

}  // namespace argfore

#endif  // ARGFORE_QBAF_HPP_
