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

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "argfore/error.hpp"
#include "argfore/qbaf.hpp"
#include "support/generators.hpp"

namespace argfore {
namespace {

using testing::random_dag;
using testing::reference_strengths;

bool has_violation(const std::vector<Violation>& vs, const std::string& label) {
  for (const auto& v : vs) {
    if (v.invariant == label) return true;
  }
  return false;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

// b supports a, c attacks a.
Qbaf three_argument_example() {
  Qbaf q;
  q.add_argument(ArgumentId("a"), 0.5);
  q.add_argument(ArgumentId("b"), 0.1);
  q.add_argument(ArgumentId("c"), 0.7);
  q.add_support(ArgumentId("b"), ArgumentId("a"));
  q.add_attack(ArgumentId("c"), ArgumentId("a"));
  return q;
}

TEST(Aggregate, EmptyIsZero) { EXPECT_EQ(aggregate({}), 0.0); }

TEST(Aggregate, ProbabilisticSum) {
  std::vector<double> one{0.3};
  std::vector<double> two{0.5, 0.5};
  std::vector<double> three{0.2, 0.5, 0.1};
  EXPECT_DOUBLE_EQ(aggregate(one), 0.3);
  EXPECT_DOUBLE_EQ(aggregate(two), 0.75);
  EXPECT_NEAR(aggregate(three), 1.0 - 0.8 * 0.5 * 0.9, 1e-15);
}

TEST(Aggregate, FullStrengthChildSaturates) {
  std::vector<double> v{1.0, 0.2, 0.0};
  EXPECT_EQ(aggregate(v), 1.0);
}

TEST(Aggregate, RejectsOutOfRange) {
  std::vector<double> high{0.5, 1.2};
  std::vector<double> low{-0.1};
  std::vector<double> nan{std::numeric_limits<double>::quiet_NaN()};
  EXPECT_EQ(code_of([&] { aggregate(high); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([&] { aggregate(low); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([&] { aggregate(nan); }), ErrorCode::kDomain);
}

TEST(Combine, BalancedKeepsBase) {
  EXPECT_EQ(combine(0.3, 0.4, 0.4), 0.3);
  EXPECT_EQ(combine(0.9, 0.0, 0.0), 0.9);
}

TEST(Combine, AttackDominates) {
  EXPECT_NEAR(combine(0.5, 0.7, 0.1), 0.2, 1e-15);
  EXPECT_NEAR(combine(0.8, 1.0, 0.0), 0.0, 1e-15);
}

TEST(Combine, SupportDominates) {
  EXPECT_NEAR(combine(0.5, 0.1, 0.7), 0.8, 1e-15);
  EXPECT_NEAR(combine(0.2, 0.0, 1.0), 1.0, 1e-15);
}

TEST(Combine, RejectsOutOfRange) {
  EXPECT_EQ(code_of([] { combine(1.5, 0.0, 0.0); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { combine(0.5, -0.2, 0.0); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { combine(0.5, 0.0, 2.0); }), ErrorCode::kDomain);
}

TEST(Combine, MonotoneInAttackAndSupport) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    double b = testing::uniform01(rng), a = testing::uniform01(rng),
           s = testing::uniform01(rng), d = testing::uniform01(rng) * (1 - a);
    EXPECT_LE(combine(b, a + d, s), combine(b, a, s) + 1e-15);
    double ds = testing::uniform01(rng) * (1 - s);
    EXPECT_GE(combine(b, a, s + ds), combine(b, a, s) - 1e-15);
  }
}

TEST(Evaluate, ThreeArgumentExample) {
  auto s = evaluate(three_argument_example());
  EXPECT_NEAR(s.at(ArgumentId("a")), 0.2, 1e-12);
  EXPECT_NEAR(s.at(ArgumentId("b")), 0.1, 1e-12);
  EXPECT_NEAR(s.at(ArgumentId("c")), 0.7, 1e-12);
}

TEST(Evaluate, SupportChain) {
  Qbaf q;
  q.add_argument(ArgumentId("f"), 0.5);
  q.add_argument(ArgumentId("x"), 0.5);
  q.add_argument(ArgumentId("y"), 0.5);
  q.add_support(ArgumentId("x"), ArgumentId("f"));
  q.add_support(ArgumentId("y"), ArgumentId("x"));
  auto s = evaluate(q);
  EXPECT_DOUBLE_EQ(s.at(ArgumentId("y")), 0.5);
  EXPECT_DOUBLE_EQ(s.at(ArgumentId("x")), 0.75);
  EXPECT_DOUBLE_EQ(s.at(ArgumentId("f")), 0.875);
}

TEST(Evaluate, UnrelatedArgumentsKeepBase) {
  Qbaf q;
  q.add_argument(ArgumentId("p"), 0.25);
  q.add_argument(ArgumentId("q"), 1.0);
  auto s = evaluate(q);
  EXPECT_EQ(s.at(ArgumentId("p")), 0.25);
  EXPECT_EQ(s.at(ArgumentId("q")), 1.0);
}

TEST(Evaluate, CycleIsRejectedWithItsPath) {
  Qbaf q;
  q.add_argument(ArgumentId("a"), 0.5);
  q.add_argument(ArgumentId("b"), 0.5);
  q.add_argument(ArgumentId("c"), 0.5);
  q.add_attack(ArgumentId("a"), ArgumentId("b"));
  q.add_support(ArgumentId("b"), ArgumentId("c"));
  q.add_attack(ArgumentId("c"), ArgumentId("a"));
  try {
    evaluate(q);
    FAIL() << "expected a cycle error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCyclicGraph);
    EXPECT_NE(std::string(e.what()).find("a -> b -> c -> a"), std::string::npos)
        << e.what();
  }
}

TEST(Evaluate, OtherViolationsAreValidationErrors) {
  Qbaf q;
  q.add_argument(ArgumentId("a"), 0.5);
  q.add_attack(ArgumentId("ghost"), ArgumentId("a"));
  EXPECT_EQ(code_of([&] { evaluate(q); }), ErrorCode::kValidation);
}

TEST(Validate, CleanGraphHasNoViolations) {
  EXPECT_TRUE(validate(three_argument_example()).empty());
}

TEST(Validate, ReportsEachBrokenInvariant) {
  {
    Qbaf q = three_argument_example();
    q.arguments.push_back({ArgumentId("a"), "again"});
    EXPECT_TRUE(has_violation(validate(q), "unique-id"));
  }
  {
    Qbaf q = three_argument_example();
    q.base_scores.erase(ArgumentId("b"));
    EXPECT_TRUE(has_violation(validate(q), "base-score-total"));
  }
  {
    Qbaf q = three_argument_example();
    q.base_scores[ArgumentId("ghost")] = 0.5;
    EXPECT_TRUE(has_violation(validate(q), "base-score-total"));
  }
  {
    Qbaf q = three_argument_example();
    q.base_scores[ArgumentId("c")] = 1.5;
    EXPECT_TRUE(has_violation(validate(q), "base-score-range"));
  }
  {
    Qbaf q = three_argument_example();
    q.add_attack(ArgumentId("b"), ArgumentId("nowhere"));
    EXPECT_TRUE(has_violation(validate(q), "edge-endpoint"));
  }
  {
    Qbaf q = three_argument_example();
    q.add_attack(ArgumentId("b"), ArgumentId("b"));
    EXPECT_TRUE(has_violation(validate(q), "no-self-edge"));
  }
  {
    Qbaf q = three_argument_example();
    q.add_attack(ArgumentId("c"), ArgumentId("a"));
    EXPECT_TRUE(has_violation(validate(q), "no-multi-edge"));
  }
  {
    Qbaf q = three_argument_example();
    q.add_support(ArgumentId("c"), ArgumentId("a"));
    EXPECT_TRUE(has_violation(validate(q), "attack-support-disjoint"));
  }
  {
    Qbaf q = three_argument_example();
    q.add_attack(ArgumentId("a"), ArgumentId("c"));
    EXPECT_TRUE(has_violation(validate(q), "acyclic"));
  }
  {
    Qbaf q;
    q.add_argument(ArgumentId(""), 0.5);
    EXPECT_TRUE(has_violation(validate(q), "well-formed-id"));
  }
}

TEST(FindCycle, ReturnsClosedPathAlongRealEdges) {
  std::vector<ArgumentId> nodes{ArgumentId("p"), ArgumentId("q"), ArgumentId("r"),
                                ArgumentId("s")};
  std::vector<Relation> rel{{nodes[0], nodes[1], Polarity::kAttack},
                            {nodes[1], nodes[2], Polarity::kSupport},
                            {nodes[2], nodes[3], Polarity::kAttack},
                            {nodes[3], nodes[1], Polarity::kSupport}};
  auto cycle = find_cycle(nodes, rel);
  ASSERT_TRUE(cycle);
  ASSERT_GE(cycle->size(), 3u);
  EXPECT_EQ(cycle->front(), cycle->back());
  for (std::size_t i = 0; i + 1 < cycle->size(); ++i) {
    bool found = false;
    for (const auto& r : rel) {
      found |= r.source == (*cycle)[i] && r.target == (*cycle)[i + 1];
    }
    EXPECT_TRUE(found) << (*cycle)[i] << " -> " << (*cycle)[i + 1];
  }
}

TEST(FindCycle, NoneInDag) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    Qbaf q = random_dag(rng, 10);
    std::vector<ArgumentId> nodes;
    for (const auto& a : q.arguments) nodes.push_back(a.id);
    EXPECT_FALSE(find_cycle(nodes, q.relations));
  }
}

TEST(EvaluateProperty, MatchesRecursiveDefinitionOnRandomDags) {
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 500; ++trial) {
    Qbaf q = random_dag(rng, 14);
    auto got = evaluate(q);
    auto want = reference_strengths(q);
    ASSERT_EQ(got.size(), want.size());
    for (const auto& [id, v] : want) {
      EXPECT_NEAR(got.at(id), v, 1e-12) << "trial " << trial << " arg " << id;
      EXPECT_GE(got.at(id), 0.0);
      EXPECT_LE(got.at(id), 1.0);
    }
  }
}

TEST(EvaluateProperty, InsertionOrderDoesNotMatter) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    Qbaf q = random_dag(rng, 12);
    Qbaf r = q;
    std::shuffle(r.arguments.begin(), r.arguments.end(), rng);
    std::shuffle(r.relations.begin(), r.relations.end(), rng);
    auto a = evaluate(q), b = evaluate(r);
    for (const auto& [id, v] : a) EXPECT_NEAR(b.at(id), v, 1e-12);
  }
}

}  // namespace
}  // namespace argfore
