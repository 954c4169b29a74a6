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

#include "argfore/qbaf.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

#include "argfore/error.hpp"

namespace argfore {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

void require_unit(double v, const char* what) {
  if (!in_unit_interval(v)) {
    std::ostringstream msg;
    msg << what << " " << v << " outside [0, 1]";
    throw Error(ErrorCode::kDomain, msg.str());
  }
}

std::string join_cycle(const std::vector<ArgumentId>& cycle) {
  std::string out;
  for (const auto& id : cycle) {
    if (!out.empty()) out += " -> ";
    out += id.str();
  }
  return out;
}

}  // namespace

std::string_view polarity_name(Polarity polarity) {
  return polarity == Polarity::kAttack ? "attack" : "support";
}

Polarity flipped(Polarity polarity) {
  return polarity == Polarity::kAttack ? Polarity::kSupport : Polarity::kAttack;
}

void Qbaf::add_argument(ArgumentId id, double base_score, std::string text) {
  base_scores[id] = base_score;
  arguments.push_back(Argument{std::move(id), std::move(text)});
}

void Qbaf::add_attack(ArgumentId source, ArgumentId target) {
  relations.push_back({std::move(source), std::move(target), Polarity::kAttack});
}

void Qbaf::add_support(ArgumentId source, ArgumentId target) {
  relations.push_back(
      {std::move(source), std::move(target), Polarity::kSupport});
}

bool Qbaf::contains(const ArgumentId& id) const {
  return std::any_of(arguments.begin(), arguments.end(),
                     [&](const Argument& a) { return a.id == id; });
}

std::optional<double> Qbaf::base_score(const ArgumentId& id) const {
  auto it = base_scores.find(id);
  if (it == base_scores.end()) return std::nullopt;
  return it->second;
}

double aggregate(std::span<const double> strengths) {
  if (strengths.empty()) return 0.0;
  double remaining = 1.0;
  for (double v : strengths) {
    require_unit(v, "strength");
    remaining *= std::abs(1.0 - v);
  }
  return std::clamp(1.0 - remaining, 0.0, 1.0);
}

double combine(double base, double attack, double support) {
  require_unit(base, "base score");
  require_unit(attack, "attack aggregate");
  require_unit(support, "support aggregate");
  double result = base;
  if (attack > support) {
    result = base - base * std::abs(support - attack);
  } else if (support > attack) {
    result = base + (1.0 - base) * std::abs(support - attack);
  }
  return std::clamp(result, 0.0, 1.0);
}

std::optional<std::vector<ArgumentId>> find_cycle(
    std::span<const ArgumentId> nodes, std::span<const Relation> relations) {
  std::unordered_map<ArgumentId, std::vector<ArgumentId>> out;
  for (const auto& r : relations) out[r.source].push_back(r.target);

  enum class Mark { kNew, kActive, kDone };
  std::unordered_map<ArgumentId, Mark> mark;
  for (const auto& n : nodes) mark.emplace(n, Mark::kNew);

  struct Frame {
    ArgumentId node;
    std::size_t next = 0;
  };
  for (const auto& start : nodes) {
    if (mark[start] != Mark::kNew) continue;
    std::vector<Frame> stack{{start}};
    mark[start] = Mark::kActive;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& succ = out[top.node];
      if (top.next == succ.size()) {
        mark[top.node] = Mark::kDone;
        stack.pop_back();
        continue;
      }
      ArgumentId next = succ[top.next++];
      auto it = mark.find(next);
      if (it == mark.end()) continue;  // dangling endpoint, not our concern
      if (it->second == Mark::kActive) {
        std::vector<ArgumentId> cycle;
        auto pos = std::find_if(stack.begin(), stack.end(),
                                [&](const Frame& f) { return f.node == next; });
        for (; pos != stack.end(); ++pos) cycle.push_back(pos->node);
        cycle.push_back(next);
        return cycle;
      }
      if (it->second == Mark::kNew) {
        it->second = Mark::kActive;
        stack.push_back({next});
      }
    }
  }
  return std::nullopt;
}

std::vector<Violation> validate(const Qbaf& qbaf) {
  std::vector<Violation> out;
  std::set<ArgumentId> ids;
  std::vector<ArgumentId> order;
  for (const auto& arg : qbaf.arguments) {
    if (!is_well_formed_token(arg.id.str())) {
      out.push_back({"well-formed-id", {arg.id.str()},
                     "argument id must be nonempty without control characters"});
    }
    if (!ids.insert(arg.id).second) {
      out.push_back({"unique-id", {arg.id.str()},
                     "argument id \"" + arg.id.str() + "\" appears twice"});
    } else {
      order.push_back(arg.id);
    }
    auto base = qbaf.base_score(arg.id);
    if (!base) {
      out.push_back({"base-score-total", {arg.id.str()},
                     "no base score for \"" + arg.id.str() + "\""});
    } else if (!in_unit_interval(*base)) {
      std::ostringstream msg;
      msg << "base score " << *base << " of \"" << arg.id
          << "\" outside range [0, 1]";
      out.push_back({"base-score-range", {arg.id.str()}, msg.str()});
    }
  }
  for (const auto& [id, _] : qbaf.base_scores) {
    if (!ids.contains(id)) {
      out.push_back({"base-score-total", {id.str()},
                     "base score given for unknown argument \"" + id.str() +
                         "\""});
    }
  }

  std::map<std::pair<ArgumentId, ArgumentId>, Polarity> seen;
  for (const auto& r : qbaf.relations) {
    bool endpoints_ok = true;
    for (const auto* end : {&r.source, &r.target}) {
      if (!ids.contains(*end)) {
        endpoints_ok = false;
        out.push_back({"edge-endpoint", {end->str()},
                       "edge " + r.source.str() + " -> " + r.target.str() +
                           " references unknown argument \"" + end->str() +
                           "\""});
      }
    }
    if (!endpoints_ok) continue;
    if (r.source == r.target) {
      out.push_back({"no-self-edge", {r.source.str()},
                     "self-edge on \"" + r.source.str() + "\""});
      continue;
    }
    auto [it, fresh] = seen.emplace(std::pair{r.source, r.target}, r.polarity);
    if (!fresh) {
      if (it->second == r.polarity) {
        out.push_back({"no-multi-edge", {r.source.str(), r.target.str()},
                       "duplicate " + std::string(polarity_name(r.polarity)) +
                           " " + r.source.str() + " -> " + r.target.str()});
      } else {
        out.push_back({"attack-support-disjoint",
                       {r.source.str(), r.target.str()},
                       "pair " + r.source.str() + " -> " + r.target.str() +
                           " is both an attack and a support"});
      }
    }
  }

  if (auto cycle = find_cycle(order, qbaf.relations)) {
    std::vector<std::string> names;
    for (const auto& id : *cycle) names.push_back(id.str());
    out.push_back({"acyclic", names, "cycle " + join_cycle(*cycle)});
  }
  return out;
}

StrengthMap evaluate(const Qbaf& qbaf) {
  auto violations = validate(qbaf);
  for (const auto& v : violations) {
    if (v.invariant == "acyclic") {
      throw Error(ErrorCode::kCyclicGraph, "cannot evaluate: " + v.message);
    }
  }
  if (!violations.empty()) {
    throw Error(ErrorCode::kValidation,
                "cannot evaluate: " + violations.front().message);
  }

  const std::size_t n = qbaf.arguments.size();
  std::unordered_map<ArgumentId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(qbaf.arguments[i].id, i);

  struct Child {
    std::size_t source;
    Polarity polarity;
  };
  std::vector<std::vector<Child>> children(n);
  std::vector<std::vector<std::size_t>> parents(n);
  std::vector<std::size_t> pending(n, 0);
  for (const auto& r : qbaf.relations) {
    std::size_t s = index.at(r.source);
    std::size_t t = index.at(r.target);
    children[t].push_back({s, r.polarity});
    parents[s].push_back(t);
    ++pending[t];
  }

  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (pending[i] == 0) ready.push_back(i);
  }
  std::vector<double> strength(n, 0.0);
  std::vector<double> attackers;
  std::vector<double> supporters;
  while (!ready.empty()) {
    std::size_t x = ready.front();
    ready.pop_front();
    attackers.clear();
    supporters.clear();
    for (const auto& c : children[x]) {
      (c.polarity == Polarity::kAttack ? attackers : supporters)
          .push_back(strength[c.source]);
    }
    double base = qbaf.base_scores.at(qbaf.arguments[x].id);
    strength[x] = combine(base, aggregate(attackers), aggregate(supporters));
    for (std::size_t p : parents[x]) {
      if (--pending[p] == 0) ready.push_back(p);
    }
  }

  StrengthMap result;
  for (std::size_t i = 0; i < n; ++i) {
    result.emplace(qbaf.arguments[i].id, strength[i]);
  }
  return result;
}

}  // namespace argfore
