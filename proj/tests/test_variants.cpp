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

#include <random>

#include <gtest/gtest.h>

#include "argfore/error.hpp"
#include "argfore/variants.hpp"

namespace argfore {
namespace {

const ArgumentId kF{"f"};
const ArgumentId kS{"s"};
const ArgumentId kA{"a"};
const UserId kU{"u"};

Acf base_debate(std::optional<Vote> on_attacker, std::optional<Vote> on_supporter) {
  Acf acf;
  acf.forecasting_args.push_back({kF, "forecast"});
  acf.other_args.push_back({kS, "pro"});
  acf.other_args.push_back({kA, "con"});
  acf.relations.push_back({kS, kF, Polarity::kSupport});
  acf.relations.push_back({kA, kF, Polarity::kAttack});
  acf.add_forecaster(kU);
  if (on_attacker) acf.set_vote(kU, kA, *on_attacker);
  if (on_supporter) acf.set_vote(kU, kS, *on_supporter);
  return acf;
}

ComplexityProfile shape(const std::string& code) {
  return *ComplexityProfile::from_code(code);
}

TEST(Profile, CodesRoundTrip) {
  for (const auto& p : ComplexityProfile::all_shapes()) {
    auto back = ComplexityProfile::from_code(p.code());
    ASSERT_TRUE(back) << p.code();
    EXPECT_EQ(*back, p);
  }
  EXPECT_FALSE(ComplexityProfile::from_code("bv"));
  EXPECT_FALSE(ComplexityProfile::from_code("none"));
  EXPECT_EQ(ComplexityProfile{}.code(), "none");
  EXPECT_EQ(shape("s").name(), "simple");
  EXPECT_EQ(shape("vdb").name(), "vote/depth/breadth");
}

TEST(Band, CodesRoundTrip) {
  for (auto b : {PredictionBand::kBelow50, PredictionBand::kAt50,
                 PredictionBand::kAbove50}) {
    EXPECT_EQ(parse_band(band_code(b)), b);
  }
  EXPECT_FALSE(parse_band("50"));
}

TEST(Classify, SimpleDebate) {
  EXPECT_EQ(classify(base_debate(Vote::kAgree, Vote::kDisagree), kU), shape("s"));
}

TEST(Classify, DisagreeingWithAttackerIsVoteComplex) {
  EXPECT_EQ(classify(base_debate(Vote::kDisagree, Vote::kDisagree), kU), shape("v"));
  EXPECT_EQ(classify(base_debate(Vote::kDisagree, Vote::kAgree), kU), shape("v"));
}

TEST(Classify, SameVoteOnAttackerAndSupporterIsVoteComplex) {
  EXPECT_EQ(classify(base_debate(Vote::kAgree, Vote::kAgree), kU), shape("v"));
}

TEST(Classify, UnsureOrSilentIsNotVoteComplex) {
  EXPECT_EQ(classify(base_debate(Vote::kUnsure, Vote::kUnsure), kU).code(), "none");
  EXPECT_EQ(classify(base_debate(std::nullopt, std::nullopt), kU).code(), "none");
  EXPECT_EQ(classify(base_debate(Vote::kUnsure, std::nullopt), kU).code(), "none");
}

TEST(Classify, ThirdChildIsBreadthComplex) {
  Acf acf = base_debate(Vote::kAgree, Vote::kDisagree);
  acf.other_args.push_back({ArgumentId("n"), "another con"});
  acf.relations.push_back({ArgumentId("n"), kF, Polarity::kAttack});
  acf.set_vote(kU, ArgumentId("n"), Vote::kAgree);
  EXPECT_EQ(classify(acf, kU), shape("b"));
}

TEST(Classify, ArgumentOnLeafIsDepthComplex) {
  Acf acf = base_debate(Vote::kAgree, Vote::kDisagree);
  acf.other_args.push_back({ArgumentId("g"), "rebuttal"});
  acf.relations.push_back({ArgumentId("g"), kS, Polarity::kAttack});
  acf.set_vote(kU, ArgumentId("g"), Vote::kAgree);
  EXPECT_EQ(classify(acf, kU), shape("d"));
}

TEST(Classify, SimpleNeedsBothChildrenOnForecast) {
  Acf acf;
  acf.forecasting_args.push_back({kF, "forecast"});
  acf.other_args.push_back({kS, "pro"});
  acf.other_args.push_back({kA, "con"});
  acf.relations.push_back({kS, kF, Polarity::kSupport});
  acf.relations.push_back({kA, kS, Polarity::kAttack});
  acf.set_vote(kU, kA, Vote::kAgree);
  acf.set_vote(kU, kS, Vote::kDisagree);
  EXPECT_FALSE(classify(acf, kU).simple);
}

TEST(Classify, Errors) {
  Acf acf = base_debate(Vote::kAgree, Vote::kDisagree);
  try {
    classify(acf, UserId("nobody"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
  acf.forecasting_args.push_back({ArgumentId("f2"), "second"});
  try {
    classify(acf, kU);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedShape);
  }
}

TEST(Generate, RoundTripsEveryShapeBandAndTemplate) {
  for (const auto& [qid, _] : default_templates()) {
    for (const auto& p : ComplexityProfile::all_shapes()) {
      for (auto band : {PredictionBand::kBelow50, PredictionBand::kAt50,
                        PredictionBand::kAbove50}) {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
          std::mt19937_64 rng(seed);
          auto v = generate({qid, p, band}, default_templates(), rng);
          ASSERT_TRUE(validate_acf(v.acf).empty());
          ASSERT_EQ(classify(v.acf, v.forecaster), p)
              << qid << " " << p.code() << " " << band_code(band) << " seed " << seed;
          double pred = *v.acf.prediction(v.forecaster, ArgumentId("f"));
          switch (band) {
            case PredictionBand::kBelow50:
              EXPECT_GE(pred, 0.05);
              EXPECT_LE(pred, 0.45);
              break;
            case PredictionBand::kAt50:
              EXPECT_EQ(pred, 0.5);
              break;
            case PredictionBand::kAbove50:
              EXPECT_GE(pred, 0.55);
              EXPECT_LE(pred, 0.95);
              break;
          }
        }
      }
    }
  }
}

TEST(Generate, SameSeedSameDebate) {
  for (const auto& p : ComplexityProfile::all_shapes()) {
    std::mt19937_64 r1(42), r2(42);
    auto a = generate({"election", p, PredictionBand::kBelow50}, default_templates(), r1);
    auto b = generate({"election", p, PredictionBand::kBelow50}, default_templates(), r2);
    EXPECT_EQ(a.acf, b.acf);
  }
}

TEST(Generate, ForecasterIsFictitious) {
  std::mt19937_64 rng(1);
  auto v = generate({"tennis", shape("s"), PredictionBand::kAt50}, default_templates(), rng);
  EXPECT_EQ(v.forecaster, kFictitiousForecaster);
  EXPECT_EQ(v.acf.forecasters, std::vector<UserId>{kFictitiousForecaster});
}

TEST(Generate, Errors) {
  std::mt19937_64 rng(1);
  try {
    generate({"chess", shape("s"), PredictionBand::kAt50}, default_templates(), rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
  ComplexityProfile bogus{true, true, false, false};
  try {
    generate({"tennis", bogus, PredictionBand::kAt50}, default_templates(), rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGeneration);
  }
}

TEST(AlignmentSample, ModelVerdictBesideUserAnswer) {
  Acf acf = base_debate(Vote::kAgree, Vote::kDisagree);
  acf.set_prediction(kU, kF, 0.85);
  auto s = alignment_sample(acf, kU, {}, true);
  EXPECT_FALSE(s.model_coherent);
  EXPECT_TRUE(s.user_coherent);
  acf.set_prediction(kU, kF, 0.15);
  EXPECT_TRUE(alignment_sample(acf, kU, {}, false).model_coherent);
}

}  // namespace
}  // namespace argfore
