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

// Forecasting debates: forecasting and regular arguments, the relations
// between them, and each forecaster's votes and predictions. A debate is
// turned into a per-forecaster QBAF by flipping or dropping relations
// according to that forecaster's votes.

#ifndef ARGFORE_ACF_HPP_
#define ARGFORE_ACF_HPP_

#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "argfore/ids.hpp"
#include "argfore/qbaf.hpp"

namespace argfore {

// A recorded vote. An absent record is the "undefined" vote.
enum class Vote { kAgree, kDisagree, kUnsure };

std::string_view vote_symbol(Vote vote);  // "+", "-", "?"
std::optional<Vote> parse_vote(std::string_view symbol);

// A value per argument with a fallback for arguments not listed.
struct PerArgument {
  double fallback = 0.5;
  std::map<ArgumentId, double> values;

  double operator()(const ArgumentId& id) const {
    auto it = values.find(id);
    return it == values.end() ? fallback : it->second;
  }
};

// Base scores of forecasting arguments in a forecaster QBAF.
using ForecastBase = PerArgument;

struct Acf {
  std::vector<Argument> forecasting_args;
  std::vector<Argument> other_args;
  std::vector<Relation> relations;
  std::vector<UserId> forecasters;
  std::map<std::pair<UserId, ArgumentId>, Vote> votes;
  std::map<std::pair<UserId, ArgumentId>, double> predictions;

  bool is_forecasting(const ArgumentId& id) const;
  bool is_regular(const ArgumentId& id) const;
  bool contains(const ArgumentId& id) const {
    return is_forecasting(id) || is_regular(id);
  }
  bool has_forecaster(const UserId& user) const;

  std::optional<Vote> vote(const UserId& user, const ArgumentId& arg) const;
  std::optional<double> prediction(const UserId& user,
                                   const ArgumentId& arg) const;

  // These register the user as a forecaster if needed. Last write wins.
  void add_forecaster(const UserId& user);
  void set_vote(const UserId& user, const ArgumentId& arg, Vote vote);
  void clear_vote(const UserId& user, const ArgumentId& arg);
  void set_prediction(const UserId& user, const ArgumentId& arg, double p);

  friend bool operator==(const Acf&, const Acf&) = default;
};

enum class EdgeFate { kKept, kFlipped, kDropped };

std::string_view edge_fate_name(EdgeFate fate);

struct EdgeProvenance {
  Relation original;
  EdgeFate fate = EdgeFate::kKept;
};

struct ForecasterQbaf {
  UserId forecaster;
  Qbaf qbaf;
  std::vector<EdgeProvenance> provenance;  // one entry per debate relation
};

// Stance of a relation in a forecaster QBAF given the forecaster's votes on
// its source and target (nullopt = undefined). Kept when both votes are
// equal or neither is a disagreement, flipped when only the source is
// disagreed with, dropped when only the target is.
EdgeFate relation_fate(std::optional<Vote> source_vote,
                       std::optional<Vote> target_vote);

// Throws Error(kNotFound) for an unknown forecaster, Error(kCyclicGraph) if
// the relations contain a cycle, Error(kValidation) for dangling endpoints.
ForecasterQbaf derive_forecaster_qbaf(const Acf& acf, const UserId& user,
                                      const ForecastBase& forecast_base = {});

StrengthMap forecaster_strengths(const Acf& acf, const UserId& user,
                                 const ForecastBase& forecast_base = {});

std::vector<Violation> validate_acf(const Acf& acf);

}  // namespace argfore

#endif  // ARGFORE_ACF_HPP_
