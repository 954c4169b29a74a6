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

// Random debate generators and a reference DF-QuAD evaluator for tests.

#ifndef ARGFORE_TESTS_SUPPORT_GENERATORS_HPP_
#define ARGFORE_TESTS_SUPPORT_GENERATORS_HPP_

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "argfore/acf.hpp"
#include "argfore/qbaf.hpp"

namespace argfore::testing {

inline const ArgumentId kF{"f"};
inline const UserId kU{"u"};

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// A tree rooted at "f" with between 2 and max_args arguments in total. Each
// regular argument "x<i>" attacks or supports an earlier node. If
// `root_child` is set the first argument is a direct child of f with that
// polarity.
inline Acf random_tree(std::mt19937_64& rng, int max_args,
                       std::optional<Polarity> root_child = std::nullopt) {
  Acf acf;
  acf.forecasting_args.push_back({kF, "forecast"});
  const int n = uniform_int(rng, 2, max_args);
  std::vector<ArgumentId> nodes{kF};
  for (int i = 1; i < n; ++i) {
    ArgumentId id("x" + std::to_string(i));
    ArgumentId parent = nodes[uniform_int(rng, 0, static_cast<int>(nodes.size()) - 1)];
    Polarity pol = uniform_int(rng, 0, 1) ? Polarity::kSupport : Polarity::kAttack;
    if (i == 1 && root_child) {
      parent = kF;
      pol = *root_child;
    }
    acf.other_args.push_back({id, "argument " + std::to_string(i)});
    acf.relations.push_back({id, parent, pol});
    nodes.push_back(id);
  }
  acf.add_forecaster(kU);
  return acf;
}

// Leaves each regular argument unvoted or voted "?".
inline void assign_neutral_votes(Acf& acf, const UserId& user,
                                 std::mt19937_64& rng) {
  for (const auto& a : acf.other_args) {
    if (uniform_int(rng, 0, 1)) acf.set_vote(user, a.id, Vote::kUnsure);
  }
}

// A random DAG QBAF: relations only run from higher to lower index.
inline Qbaf random_dag(std::mt19937_64& rng, int max_args) {
  Qbaf q;
  const int n = uniform_int(rng, 1, max_args);
  for (int i = 0; i < n; ++i) {
    q.add_argument(ArgumentId("n" + std::to_string(i)), uniform01(rng));
  }
  for (int s = 1; s < n; ++s) {
    for (int t = 0; t < s; ++t) {
      int roll = uniform_int(rng, 0, 5);
      ArgumentId src("n" + std::to_string(s)), dst("n" + std::to_string(t));
      if (roll == 0) q.add_attack(src, dst);
      if (roll == 1) q.add_support(src, dst);
    }
  }
  return q;
}

// Straight recursion over the definition, memoised. Independent of the
// library's topological evaluation.
inline std::map<ArgumentId, double> reference_strengths(const Qbaf& q) {
  std::map<ArgumentId, double> memo;
  std::function<double(const ArgumentId&)> sigma = [&](const ArgumentId& x) {
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    double keep_att = 1.0, keep_sup = 1.0;
    bool any_att = false, any_sup = false;
    for (const auto& r : q.relations) {
      if (!(r.target == x)) continue;
      double v = sigma(r.source);
      if (r.polarity == Polarity::kAttack) {
        keep_att *= 1.0 - v;
        any_att = true;
      } else {
        keep_sup *= 1.0 - v;
        any_sup = true;
      }
    }
    double va = any_att ? 1.0 - keep_att : 0.0;
    double vs = any_sup ? 1.0 - keep_sup : 0.0;
    double v0 = q.base_scores.at(x);
    double out = v0;
    if (va > vs) out = v0 - v0 * std::fabs(vs - va);
    if (vs > va) out = v0 + (1.0 - v0) * std::fabs(vs - va);
    memo[x] = out;
    return out;
  };
  for (const auto& a : q.arguments) sigma(a.id);
  return memo;
}

}  // namespace argfore::testing

#endif  // ARGFORE_TESTS_SUPPORT_GENERATORS_HPP_
