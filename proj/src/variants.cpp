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

#include "argfore/variants.hpp"

#include <algorithm>
#include <set>

#include "argfore/error.hpp"

namespace argfore {

namespace {

bool opinionated(std::optional<Vote> v) {
  return v == Vote::kAgree || v == Vote::kDisagree;
}

template <typename T>
T pick(std::mt19937_64& rng, std::initializer_list<T> options) {
  std::uniform_int_distribution<std::size_t> dist(0, options.size() - 1);
  return *(options.begin() + dist(rng));
}

bool is_known_shape(const ComplexityProfile& p) {
  const auto& shapes = ComplexityProfile::all_shapes();
  return std::find(shapes.begin(), shapes.end(), p) != shapes.end();
}

}  // namespace

std::string ComplexityProfile::code() const {
  if (simple) return "s";
  std::string out;
  if (vote_complex) out += 'v';
  if (depth_complex) out += 'd';
  if (breadth_complex) out += 'b';
  return out.empty() ? "none" : out;
}

std::string ComplexityProfile::name() const {
  if (simple) return "simple";
  std::string out;
  auto add = [&](const char* part) {
    if (!out.empty()) out += '/';
    out += part;
  };
  if (vote_complex) add("vote");
  if (depth_complex) add("depth");
  if (breadth_complex) add("breadth");
  return out.empty() ? "none" : out;
}

std::optional<ComplexityProfile> ComplexityProfile::from_code(
    std::string_view code) {
  for (const auto& p : all_shapes()) {
    if (p.code() == code) return p;
  }
  return std::nullopt;
}

const std::array<ComplexityProfile, 8>& ComplexityProfile::all_shapes() {
  static const std::array<ComplexityProfile, 8> shapes = {{
      {true, false, false, false},
      {false, true, false, false},
      {false, false, true, false},
      {false, false, false, true},
      {false, true, true, false},
      {false, true, false, true},
      {false, false, true, true},
      {false, true, true, true},
  }};
  return shapes;
}

std::string_view band_code(PredictionBand band) {
  switch (band) {
    case PredictionBand::kBelow50: return "lt50";
    case PredictionBand::kAt50: return "eq50";
    case PredictionBand::kAbove50: return "gt50";
  }
  return "eq50";
}

std::optional<PredictionBand> parse_band(std::string_view code) {
  if (code == "lt50") return PredictionBand::kBelow50;
  if (code == "eq50") return PredictionBand::kAt50;
  if (code == "gt50") return PredictionBand::kAbove50;
  return std::nullopt;
}

const TemplateStore& default_templates() {
  static const TemplateStore store = [] {
    TemplateStore s;
    s["tennis"] = DebateTemplate{
        "tennis",
        "X will win their next tennis match against Y.",
        "X has won their last five matches on this surface.",
        "Y beat X in straight sets the last time they met.",
        "X's serve has been the strongest on tour this season.",
        "X is returning from a wrist injury.",
        "X's recent opponents were all ranked outside the top 50.",
        "Y has lost three matches this month to lower-ranked players.",
    };
    s["election"] = DebateTemplate{
        "election",
        "Party A will win the next election against Party B.",
        "Party A leads Party B by eight points in recent polls.",
        "Party B won the last two elections in the swing regions.",
        "Party A has the larger campaign budget.",
        "Party A's leader is facing a public scandal.",
        "The polls leading the averages have overestimated Party A before.",
        "Party B's regional wins came with historically low turnout.",
    };
    return s;
  }();
  return store;
}

ComplexityProfile classify(const Acf& acf, const UserId& user) {
  if (acf.forecasting_args.size() != 1) {
    throw Error(ErrorCode::kUnsupportedShape,
                "classification needs exactly one forecasting argument (got " +
                    std::to_string(acf.forecasting_args.size()) + ")");
  }
  if (!acf.has_forecaster(user)) {
    throw Error(ErrorCode::kNotFound, "unknown forecaster \"" + user.str() + "\"");
  }
  const ArgumentId& f = acf.forecasting_args.front().id;

  std::vector<ArgumentId> attackers, supporters;
  std::size_t n_attacks = 0, n_supports = 0;
  std::set<ArgumentId> targeted_from_regular, targeting_regular;
  for (const auto& r : acf.relations) {
    (r.polarity == Polarity::kAttack ? n_attacks : n_supports)++;
    if (r.target == f) {
      (r.polarity == Polarity::kAttack ? attackers : supporters)
          .push_back(r.source);
    }
    if (acf.is_regular(r.source) && acf.is_regular(r.target)) {
      targeted_from_regular.insert(r.target);
      targeting_regular.insert(r.source);
    }
  }

  ComplexityProfile p;
  if (acf.other_args.size() == 2 && n_attacks == 1 && n_supports == 1 &&
      attackers.size() == 1 && supporters.size() == 1 &&
      acf.vote(user, attackers[0]) == Vote::kAgree &&
      acf.vote(user, supporters[0]) == Vote::kDisagree) {
    p.simple = true;
    return p;
  }

  for (const auto& a : attackers) {
    if (acf.vote(user, a) == Vote::kDisagree) p.vote_complex = true;
    for (const auto& s : supporters) {
      auto va = acf.vote(user, a);
      if (opinionated(va) && va == acf.vote(user, s)) p.vote_complex = true;
    }
  }

  std::size_t unattacked = 0;
  for (const auto& a : acf.other_args) {
    if (!targeted_from_regular.contains(a.id)) ++unattacked;
  }
  p.breadth_complex = unattacked == 3;
  p.depth_complex = targeting_regular.size() == 1;
  return p;
}

GeneratedVariant generate(const VariantSpec& spec, const TemplateStore& store,
                          std::mt19937_64& rng) {
  auto tmpl_it = store.find(spec.question_id);
  if (tmpl_it == store.end()) {
    throw Error(ErrorCode::kNotFound,
                "no debate template for question \"" + spec.question_id + "\"");
  }
  const ComplexityProfile& want = spec.profile;
  if (!is_known_shape(want)) {
    throw Error(ErrorCode::kGeneration,
                "profile " + want.name() + " (simple=" +
                    (want.simple ? "true" : "false") +
                    ") is not one of the eight debate shapes");
  }
  const DebateTemplate& t = tmpl_it->second;
  const UserId& u = kFictitiousForecaster;

  GeneratedVariant out;
  out.forecaster = u;
  Acf& acf = out.acf;
  const ArgumentId f("f"), s("s1"), a("a1"), n("n1"), g("g1");
  acf.forecasting_args.push_back({f, t.forecast});
  acf.other_args.push_back({s, t.supporter});
  acf.other_args.push_back({a, t.attacker});
  acf.relations.push_back({s, f, Polarity::kSupport});
  acf.relations.push_back({a, f, Polarity::kAttack});
  acf.add_forecaster(u);

  if (want.vote_complex) {
    using VotePair = std::pair<Vote, Vote>;  // attacker, supporter
    const VotePair votes =
        pick<VotePair>(rng, {{Vote::kDisagree, Vote::kDisagree},
                             {Vote::kDisagree, Vote::kAgree},
                             {Vote::kAgree, Vote::kAgree}});
    acf.set_vote(u, a, votes.first);
    acf.set_vote(u, s, votes.second);
  } else {
    acf.set_vote(u, a, Vote::kAgree);
    acf.set_vote(u, s, Vote::kDisagree);
  }

  // Arguments added by the forecaster carry their automatic agreement.
  if (want.breadth_complex) {
    // An agreed extra supporter would match the agreed attacker's vote, so
    // without vote complexity the extra child must be an attacker.
    Polarity pol = want.vote_complex
                       ? pick(rng, {Polarity::kAttack, Polarity::kSupport})
                       : Polarity::kAttack;
    acf.other_args.push_back(
        {n, pol == Polarity::kAttack ? t.extra_attacker : t.extra_supporter});
    acf.relations.push_back({n, f, pol});
    acf.set_vote(u, n, Vote::kAgree);
  }
  if (want.depth_complex) {
    ArgumentId leaf = pick(rng, {s, a});
    Polarity pol = pick(rng, {Polarity::kAttack, Polarity::kSupport});
    acf.other_args.push_back(
        {g, pol == Polarity::kAttack ? t.depth_attacker : t.depth_supporter});
    acf.relations.push_back({g, leaf, pol});
    acf.set_vote(u, g, Vote::kAgree);
  }

  double p = 0.5;
  if (spec.band == PredictionBand::kBelow50) {
    p = std::uniform_int_distribution<int>(5, 45)(rng) / 100.0;
  } else if (spec.band == PredictionBand::kAbove50) {
    p = std::uniform_int_distribution<int>(55, 95)(rng) / 100.0;
  }
  acf.set_prediction(u, f, p);

  if (classify(acf, u) != want) {
    throw Error(ErrorCode::kGeneration,
                "generated debate does not classify as " + want.name());
  }
  return out;
}

AlignmentSample alignment_sample(const Acf& acf, const UserId& user,
                                 const ThresholdConfig& cfg,
                                 bool user_says_coherent) {
  auto verdicts = check_coherence(acf, user, cfg);
  return {forecaster_is_coherent(verdicts), user_says_coherent};
}

}  // namespace argfore
