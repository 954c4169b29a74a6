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

#include "argfore/acf.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "argfore/error.hpp"

namespace argfore {

namespace {

bool contains_id(const std::vector<Argument>& args, const ArgumentId& id) {
  return std::any_of(args.begin(), args.end(),
                     [&](const Argument& a) { return a.id == id; });
}

bool disagreed(std::optional<Vote> v) { return v == Vote::kDisagree; }

}  // namespace

std::string_view vote_symbol(Vote vote) {
  switch (vote) {
    case Vote::kAgree: return "+";
    case Vote::kDisagree: return "-";
    case Vote::kUnsure: return "?";
  }
  return "?";
}

std::optional<Vote> parse_vote(std::string_view symbol) {
  if (symbol == "+") return Vote::kAgree;
  if (symbol == "-") return Vote::kDisagree;
  if (symbol == "?") return Vote::kUnsure;
  return std::nullopt;
}

std::string_view edge_fate_name(EdgeFate fate) {
  switch (fate) {
    case EdgeFate::kKept: return "kept";
    case EdgeFate::kFlipped: return "flipped";
    case EdgeFate::kDropped: return "dropped";
  }
  return "kept";
}

bool Acf::is_forecasting(const ArgumentId& id) const {
  return contains_id(forecasting_args, id);
}

bool Acf::is_regular(const ArgumentId& id) const {
  return contains_id(other_args, id);
}

bool Acf::has_forecaster(const UserId& user) const {
  return std::find(forecasters.begin(), forecasters.end(), user) !=
         forecasters.end();
}

std::optional<Vote> Acf::vote(const UserId& user, const ArgumentId& arg) const {
  auto it = votes.find({user, arg});
  if (it == votes.end()) return std::nullopt;
  return it->second;
}

std::optional<double> Acf::prediction(const UserId& user,
                                      const ArgumentId& arg) const {
  auto it = predictions.find({user, arg});
  if (it == predictions.end()) return std::nullopt;
  return it->second;
}

void Acf::add_forecaster(const UserId& user) {
  if (!has_forecaster(user)) forecasters.push_back(user);
}

void Acf::set_vote(const UserId& user, const ArgumentId& arg, Vote vote) {
  add_forecaster(user);
  votes[{user, arg}] = vote;
}

void Acf::clear_vote(const UserId& user, const ArgumentId& arg) {
  votes.erase({user, arg});
}

void Acf::set_prediction(const UserId& user, const ArgumentId& arg, double p) {
  add_forecaster(user);
  predictions[{user, arg}] = p;
}

EdgeFate relation_fate(std::optional<Vote> source_vote,
                       std::optional<Vote> target_vote) {
  if (source_vote == target_vote ||
      (!disagreed(source_vote) && !disagreed(target_vote))) {
    return EdgeFate::kKept;
  }
  if (disagreed(source_vote) && !disagreed(target_vote)) {
    return EdgeFate::kFlipped;
  }
  return EdgeFate::kDropped;
}

ForecasterQbaf derive_forecaster_qbaf(const Acf& acf, const UserId& user,
                                      const ForecastBase& forecast_base) {
  if (!acf.has_forecaster(user)) {
    throw Error(ErrorCode::kNotFound, "unknown forecaster \"" + user.str() + "\"");
  }

  ForecasterQbaf out;
  out.forecaster = user;
  for (const auto& f : acf.forecasting_args) {
    out.qbaf.add_argument(f.id, forecast_base(f.id), f.text);
  }
  for (const auto& a : acf.other_args) {
    auto v = acf.vote(user, a.id);
    bool opinionated = v == Vote::kAgree || v == Vote::kDisagree;
    out.qbaf.add_argument(a.id, opinionated ? 0.5 : 0.0, a.text);
  }

  // Votes exist only on regular arguments; a forecasting target reads as
  // undefined.
  auto vote_on = [&](const ArgumentId& id) -> std::optional<Vote> {
    if (acf.is_forecasting(id)) return std::nullopt;
    return acf.vote(user, id);
  };
  for (const auto& r : acf.relations) {
    EdgeFate fate = relation_fate(vote_on(r.source), vote_on(r.target));
    out.provenance.push_back({r, fate});
    if (fate == EdgeFate::kKept) {
      out.qbaf.relations.push_back(r);
    } else if (fate == EdgeFate::kFlipped) {
      out.qbaf.relations.push_back({r.source, r.target, flipped(r.polarity)});
    }
  }

  std::vector<ArgumentId> ids;
  for (const auto& a : out.qbaf.arguments) ids.push_back(a.id);
  if (auto cycle = find_cycle(ids, acf.relations)) {
    std::string names;
    for (const auto& id : *cycle) names += (names.empty() ? "" : " -> ") + id.str();
    throw Error(ErrorCode::kCyclicGraph, "debate relations contain cycle " + names);
  }
  return out;
}

StrengthMap forecaster_strengths(const Acf& acf, const UserId& user,
                                 const ForecastBase& forecast_base) {
  return evaluate(derive_forecaster_qbaf(acf, user, forecast_base).qbaf);
}

std::vector<Violation> validate_acf(const Acf& acf) {
  std::vector<Violation> out;
  if (acf.forecasting_args.empty()) {
    out.push_back({"forecasting-nonempty", {},
                   "debate has no forecasting argument"});
  }
  for (const auto& f : acf.forecasting_args) {
    if (acf.is_regular(f.id)) {
      out.push_back({"forecasting-regular-disjoint", {f.id.str()},
                     "\"" + f.id.str() +
                         "\" is both a forecasting and a regular argument"});
    }
  }

  // Structural checks shared with plain QBAFs.
  Qbaf structure;
  for (const auto& a : acf.forecasting_args) structure.add_argument(a.id, 0.5);
  for (const auto& a : acf.other_args) structure.add_argument(a.id, 0.5);
  structure.relations = acf.relations;
  for (auto& v : validate(structure)) {
    if (v.invariant == "unique-id" && !acf.forecasting_args.empty() &&
        acf.is_forecasting(ArgumentId(v.ids.front())) &&
        acf.is_regular(ArgumentId(v.ids.front()))) {
      continue;  // already reported as forecasting-regular-disjoint
    }
    out.push_back(std::move(v));
  }

  for (const auto& r : acf.relations) {
    if (acf.is_forecasting(r.source)) {
      out.push_back({"relation-source-regular", {r.source.str()},
                     "forecasting argument \"" + r.source.str() + "\" is the source of " +
                         std::string(polarity_name(r.polarity)) + " " +
                         r.source.str() + " -> " + r.target.str() +
                         " (relations must satisfy ℛ ⊆ 𝒟×𝒳)"});
    }
  }

  std::set<UserId> users(acf.forecasters.begin(), acf.forecasters.end());
  if (users.size() != acf.forecasters.size()) {
    out.push_back({"unique-forecaster", {}, "forecaster listed twice"});
  }
  for (const auto& u : acf.forecasters) {
    if (!is_well_formed_token(u.str())) {
      out.push_back({"well-formed-id", {u.str()},
                     "forecaster id must be nonempty without control characters"});
    }
  }
  for (const auto& [key, vote] : acf.votes) {
    const auto& [user, arg] = key;
    if (!users.contains(user)) {
      out.push_back({"vote-forecaster", {user.str()},
                     "vote by unknown forecaster \"" + user.str() + "\""});
    }
    if (acf.is_forecasting(arg)) {
      out.push_back({"vote-domain", {user.str(), arg.str()},
                     "vote by \"" + user.str() +
                         "\" on forecasting argument \"" + arg.str() +
                         "\"; votes apply to regular arguments only"});
    } else if (!acf.is_regular(arg)) {
      out.push_back({"vote-domain", {user.str(), arg.str()},
                     "vote on unknown argument \"" + arg.str() + "\""});
    }
  }
  for (const auto& [key, p] : acf.predictions) {
    const auto& [user, arg] = key;
    if (!users.contains(user)) {
      out.push_back({"prediction-forecaster", {user.str()},
                     "prediction by unknown forecaster \"" + user.str() + "\""});
    }
    if (!acf.is_forecasting(arg)) {
      out.push_back({"prediction-domain", {user.str(), arg.str()},
                     "prediction on \"" + arg.str() +
                         "\", which is not a forecasting argument"});
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      std::ostringstream msg;
      msg << "prediction " << p << " by \"" << user << "\" on \"" << arg
          << "\" outside range [0, 1]";
      out.push_back({"prediction-range", {user.str(), arg.str()}, msg.str()});
    }
  }
  return out;
}

}  // namespace argfore
