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

#include "argfore/serialization.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "argfore/error.hpp"
#include "schema_reader.hpp"

namespace argfore {

namespace {

class LineScanner {
 public:
  LineScanner(std::string_view text, std::map<std::string, int>& out)
      : s_(text), out_(out) {}

  void run() {
    skip_ws();
    if (i_ < s_.size()) value("");
  }

 private:
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
      if (s_[i_] == '\n') ++line_;
      ++i_;
    }
  }

  static std::string escape_token(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  std::string string_token() {
    std::string out;
    ++i_;  // opening quote
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
        char e = s_[i_ + 1];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case 'u': out += "\\u"; break;  // kept raw; only used for pointers
          default: out += e;
        }
        i_ += 2;
        continue;
      }
      out += s_[i_++];
    }
    ++i_;  // closing quote
    return out;
  }

  void value(const std::string& ptr) {
    skip_ws();
    if (i_ >= s_.size()) return;
    out_[ptr] = line_;
    char c = s_[i_];
    if (c == '{') {
      ++i_;
      skip_ws();
      if (i_ < s_.size() && s_[i_] == '}') {
        ++i_;
        return;
      }
      while (i_ < s_.size()) {
        skip_ws();
        std::string key = string_token();
        skip_ws();
        ++i_;  // ':'
        value(ptr + "/" + escape_token(key));
        skip_ws();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        ++i_;  // '}'
        break;
      }
    } else if (c == '[') {
      ++i_;
      skip_ws();
      if (i_ < s_.size() && s_[i_] == ']') {
        ++i_;
        return;
      }
      for (std::size_t idx = 0; i_ < s_.size(); ++idx) {
        value(ptr + "/" + std::to_string(idx));
        skip_ws();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        ++i_;  // ']'
        break;
      }
    } else if (c == '"') {
      string_token();
    } else {
      while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' &&
             s_[i_] != ']' && !std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      }
    }
  }

  std::string_view s_;
  std::map<std::string, int>& out_;
  std::size_t i_ = 0;
  int line_ = 1;
};

Json relation_json(const Relation& r) {
  return Json{{"src", r.source.str()},
              {"dst", r.target.str()},
              {"polarity", std::string(polarity_name(r.polarity))}};
}

Relation read_relation(const SchemaReader& in, const Json& e,
                       const std::string& ptr) {
  in.require_object(e, ptr);
  Relation r;
  r.source = ArgumentId(in.string_field(e, ptr, "src"));
  r.target = ArgumentId(in.string_field(e, ptr, "dst"));
  std::string pol = in.string_field(e, ptr, "polarity");
  if (pol == "attack") {
    r.polarity = Polarity::kAttack;
  } else if (pol == "support") {
    r.polarity = Polarity::kSupport;
  } else {
    in.fail(ptr + "/polarity",
            "polarity must be \"attack\" or \"support\", got \"" + pol + "\"");
  }
  return r;
}

std::string optional_text(const SchemaReader& in, const Json& obj,
                          const std::string& ptr) {
  if (!obj.contains("text")) return {};
  return in.string_field(obj, ptr, "text");
}

}  // namespace

std::map<std::string, int> json_value_lines(std::string_view text) {
  std::map<std::string, int> out;
  LineScanner(text, out).run();
  return out;
}

Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    int line = 1;
    std::size_t limit = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < limit; ++i) {
      if (text[i] == '\n') ++line;
    }
    std::ostringstream msg;
    msg << source << ":" << line << ": malformed JSON (" << e.what() << ")";
    throw Error(ErrorCode::kParse, msg.str());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

Json acf_to_json(const Acf& acf) {
  Json args = Json::array();
  for (const auto& a : acf.forecasting_args) {
    args.push_back({{"id", a.id.str()}, {"text", a.text}, {"kind", "forecasting"}});
  }
  for (const auto& a : acf.other_args) {
    args.push_back({{"id", a.id.str()}, {"text", a.text}, {"kind", "regular"}});
  }
  Json edges = Json::array();
  for (const auto& r : acf.relations) edges.push_back(relation_json(r));
  Json votes = Json::array();
  for (const auto& [key, v] : acf.votes) {
    votes.push_back({{"user", key.first.str()},
                     {"arg", key.second.str()},
                     {"vote", std::string(vote_symbol(v))}});
  }
  Json predictions = Json::array();
  for (const auto& [key, p] : acf.predictions) {
    predictions.push_back(
        {{"user", key.first.str()}, {"arg", key.second.str()}, {"p", p}});
  }
  Json users = Json::array();
  for (const auto& u : acf.forecasters) users.push_back(u.str());
  return Json{{"arguments", args},
              {"edges", edges},
              {"votes", votes},
              {"predictions", predictions},
              {"users", users}};
}

Acf acf_from_json(const Json& doc, std::string_view source,
                  std::string_view text) {
  SchemaReader in(source, text);
  in.require_object(doc, "");
  Acf acf;

  const Json& args = in.array_field(doc, "", "arguments");
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string ptr = "/arguments/" + std::to_string(i);
    in.require_object(args[i], ptr);
    Argument a{ArgumentId(in.string_field(args[i], ptr, "id")),
               optional_text(in, args[i], ptr)};
    std::string kind = in.string_field(args[i], ptr, "kind");
    if (kind == "forecasting") {
      acf.forecasting_args.push_back(std::move(a));
    } else if (kind == "regular") {
      acf.other_args.push_back(std::move(a));
    } else {
      in.fail(ptr + "/kind",
              "kind must be \"forecasting\" or \"regular\", got \"" + kind + "\"");
    }
  }

  if (doc.contains("edges")) {
    const Json& edges = in.array_field(doc, "", "edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      acf.relations.push_back(
          read_relation(in, edges[i], "/edges/" + std::to_string(i)));
    }
  }

  if (doc.contains("users")) {
    const Json& users = in.array_field(doc, "", "users");
    for (std::size_t i = 0; i < users.size(); ++i) {
      std::string ptr = "/users/" + std::to_string(i);
      if (!users[i].is_string()) in.fail(ptr, "user id must be a string");
      acf.add_forecaster(UserId(users[i].get<std::string>()));
    }
  }

  if (doc.contains("votes")) {
    const Json& votes = in.array_field(doc, "", "votes");
    for (std::size_t i = 0; i < votes.size(); ++i) {
      std::string ptr = "/votes/" + std::to_string(i);
      in.require_object(votes[i], ptr);
      UserId user(in.string_field(votes[i], ptr, "user"));
      ArgumentId arg(in.string_field(votes[i], ptr, "arg"));
      std::string symbol = in.string_field(votes[i], ptr, "vote");
      auto vote = parse_vote(symbol);
      if (!vote) {
        in.fail(ptr + "/vote",
                "vote must be \"+\", \"-\" or \"?\", got \"" + symbol + "\"");
      }
      acf.set_vote(user, arg, *vote);
    }
  }

  if (doc.contains("predictions")) {
    const Json& preds = in.array_field(doc, "", "predictions");
    for (std::size_t i = 0; i < preds.size(); ++i) {
      std::string ptr = "/predictions/" + std::to_string(i);
      in.require_object(preds[i], ptr);
      UserId user(in.string_field(preds[i], ptr, "user"));
      ArgumentId arg(in.string_field(preds[i], ptr, "arg"));
      double p = in.number_field(preds[i], ptr, "p");
      acf.set_prediction(user, arg, p);
    }
  }
  return acf;
}

Acf parse_acf(std::string_view text, std::string_view source) {
  return acf_from_json(parse_json_text(text, source), source, text);
}

Acf load_acf(const std::filesystem::path& path) {
  return parse_acf(read_text_file(path), path.string());
}

void save_acf(const Acf& acf, const std::filesystem::path& path) {
  write_text_file(path, acf_to_json(acf).dump(2) + "\n");
}

Json qbaf_to_json(const Qbaf& qbaf) {
  Json args = Json::array();
  for (const auto& a : qbaf.arguments) {
    Json base = nullptr;
    if (auto b = qbaf.base_score(a.id)) base = *b;
    args.push_back({{"id", a.id.str()}, {"text", a.text}, {"base", base}});
  }
  Json edges = Json::array();
  for (const auto& r : qbaf.relations) edges.push_back(relation_json(r));
  return Json{{"arguments", args}, {"edges", edges}};
}

Qbaf qbaf_from_json(const Json& doc, std::string_view source) {
  SchemaReader in(source, {});
  in.require_object(doc, "");
  Qbaf qbaf;
  const Json& args = in.array_field(doc, "", "arguments");
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string ptr = "/arguments/" + std::to_string(i);
    in.require_object(args[i], ptr);
    qbaf.add_argument(ArgumentId(in.string_field(args[i], ptr, "id")),
                      in.number_field(args[i], ptr, "base"),
                      optional_text(in, args[i], ptr));
  }
  if (doc.contains("edges")) {
    const Json& edges = in.array_field(doc, "", "edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      qbaf.relations.push_back(
          read_relation(in, edges[i], "/edges/" + std::to_string(i)));
    }
  }
  return qbaf;
}

Json templates_to_json(const TemplateStore& store) {
  Json list = Json::array();
  for (const auto& [id, t] : store) {
    list.push_back({{"question_id", t.question_id},
                    {"forecast", t.forecast},
                    {"supporter", t.supporter},
                    {"attacker", t.attacker},
                    {"extra_supporter", t.extra_supporter},
                    {"extra_attacker", t.extra_attacker},
                    {"depth_supporter", t.depth_supporter},
                    {"depth_attacker", t.depth_attacker}});
  }
  return Json{{"templates", list}};
}

TemplateStore parse_templates(std::string_view text, std::string_view source) {
  Json doc = parse_json_text(text, source);
  SchemaReader in(source, text);
  in.require_object(doc, "");
  const Json& list = in.array_field(doc, "", "templates");
  TemplateStore store;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string ptr = "/templates/" + std::to_string(i);
    const Json& t = list[i];
    in.require_object(t, ptr);
    DebateTemplate d;
    d.question_id = in.string_field(t, ptr, "question_id");
    d.forecast = in.string_field(t, ptr, "forecast");
    d.supporter = in.string_field(t, ptr, "supporter");
    d.attacker = in.string_field(t, ptr, "attacker");
    d.extra_supporter = in.string_field(t, ptr, "extra_supporter");
    d.extra_attacker = in.string_field(t, ptr, "extra_attacker");
    d.depth_supporter = in.string_field(t, ptr, "depth_supporter");
    d.depth_attacker = in.string_field(t, ptr, "depth_attacker");
    if (store.contains(d.question_id)) {
      in.fail(ptr + "/question_id",
              "duplicate template for question \"" + d.question_id + "\"");
    }
    store.emplace(d.question_id, std::move(d));
  }
  return store;
}

TemplateStore load_templates(const std::filesystem::path& path) {
  return parse_templates(read_text_file(path), path.string());
}

Json verdict_to_json(const CoherenceVerdict& v) {
  Json p = nullptr;
  if (v.prediction) p = *v.prediction;
  return Json{{"forecaster", v.forecaster.str()},
              {"argument", v.argument.str()},
              {"sigma", v.sigma},
              {"prediction", p},
              {"coherent", v.coherent},
              {"branch", std::string(branch_name(v.branch))},
              {"xi1", v.xi1},
              {"xi2", v.xi2},
              {"epsilon", v.epsilon}};
}

Json verdicts_to_json(const std::vector<CoherenceVerdict>& verdicts) {
  Json out = Json::array();
  for (const auto& v : verdicts) out.push_back(verdict_to_json(v));
  return out;
}

std::vector<CoherenceVerdict> parse_verdicts(std::string_view text,
                                             std::string_view source) {
  Json doc = parse_json_text(text, source);
  SchemaReader in(source, text);
  if (!doc.is_array()) in.fail("", "expected an array of verdicts");
  std::vector<CoherenceVerdict> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    std::string ptr = "/" + std::to_string(i);
    const Json& o = doc[i];
    in.require_object(o, ptr);
    CoherenceVerdict v;
    v.forecaster = UserId(in.string_field(o, ptr, "forecaster"));
    v.argument = ArgumentId(in.string_field(o, ptr, "argument"));
    v.sigma = in.number_field(o, ptr, "sigma");
    if (!o.contains("prediction")) in.fail(ptr, "missing field \"prediction\"");
    if (!o["prediction"].is_null()) v.prediction = in.number_field(o, ptr, "prediction");
    v.coherent = in.bool_field(o, ptr, "coherent");
    std::string branch = in.string_field(o, ptr, "branch");
    bool matched = false;
    for (Branch b : {Branch::kBelow, Branch::kAbove, Branch::kAtThreshold,
                     Branch::kNoPrediction}) {
      if (branch_name(b) == branch) {
        v.branch = b;
        matched = true;
      }
    }
    if (!matched) in.fail(ptr + "/branch", "unknown branch \"" + branch + "\"");
    v.xi1 = in.number_field(o, ptr, "xi1");
    v.xi2 = in.number_field(o, ptr, "xi2");
    v.epsilon = in.number_field(o, ptr, "epsilon");
    out.push_back(std::move(v));
  }
  return out;
}

Json summary_to_json(const ForecastSummary& s) {
  Json raw = nullptr, coherent = nullptr;
  if (s.raw_mean) raw = *s.raw_mean;
  if (s.coherent_mean) coherent = *s.coherent_mean;
  return Json{{"argument", s.argument.str()},
              {"raw_mean", raw},
              {"coherent_mean", coherent},
              {"n_raw", s.n_raw},
              {"n_coherent", s.n_coherent}};
}

Json forecaster_qbaf_to_json(const ForecasterQbaf& fq,
                             const StrengthMap& strengths) {
  Json args = Json::array();
  for (const auto& a : fq.qbaf.arguments) {
    args.push_back({{"id", a.id.str()},
                    {"text", a.text},
                    {"base", fq.qbaf.base_scores.at(a.id)},
                    {"strength", strengths.at(a.id)}});
  }
  Json edges = Json::array();
  for (const auto& e : fq.provenance) {
    Json polarity = nullptr;
    if (e.fate == EdgeFate::kKept) {
      polarity = std::string(polarity_name(e.original.polarity));
    } else if (e.fate == EdgeFate::kFlipped) {
      polarity = std::string(polarity_name(flipped(e.original.polarity)));
    }
    edges.push_back({{"src", e.original.source.str()},
                     {"dst", e.original.target.str()},
                     {"original_polarity",
                      std::string(polarity_name(e.original.polarity))},
                     {"polarity", polarity},
                     {"fate", std::string(edge_fate_name(e.fate))}});
  }
  return Json{{"forecaster", fq.forecaster.str()},
              {"arguments", args},
              {"edges", edges}};
}

PerArgument parse_value_map(std::string_view text, double fallback,
                            std::string_view source) {
  Json doc = parse_json_text(text, source);
  SchemaReader in(source, text);
  in.require_object(doc, "");
  PerArgument out{fallback, {}};
  for (const auto& [key, value] : doc.items()) {
    out.values[ArgumentId(key)] = in.number_field(doc, "", key);
  }
  return out;
}

std::vector<ShapeCount> parse_shape_counts(std::string_view text,
                                           std::string_view source) {
  Json doc = parse_json_text(text, source);
  SchemaReader in(source, text);
  if (!doc.is_array()) in.fail("", "expected an array of shape counts");
  std::vector<ShapeCount> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string ptr = "/" + std::to_string(i);
    in.require_object(doc[i], ptr);
    ShapeCount c;
    auto shape = ComplexityProfile::from_code(in.string_field(doc[i], ptr, "profile"));
    if (!shape) in.fail(ptr + "/profile", "unknown profile code");
    c.profile = *shape;
    for (const char* key : {"aligned", "not_aligned"}) {
      const Json& v = in.field(doc[i], ptr, key);
      if (!v.is_number_unsigned()) {
        in.fail(ptr + "/" + key, std::string("\"") + key +
                                     "\" must be a non-negative integer");
      }
      (std::string(key) == "aligned" ? c.aligned : c.not_aligned) =
          v.get<std::uint64_t>();
    }
    out.push_back(c);
  }
  return out;
}

Json round_numbers(const Json& doc, int digits) {
  if (doc.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, doc.get<double>());
    return Json(std::strtod(buf, nullptr));
  }
  if (doc.is_array()) {
    Json out = Json::array();
    for (const auto& v : doc) out.push_back(round_numbers(v, digits));
    return out;
  }
  if (doc.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : doc.items()) out[k] = round_numbers(v, digits);
    return out;
  }
  return doc;
}

}  // namespace argfore
