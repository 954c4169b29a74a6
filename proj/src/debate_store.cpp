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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "argfore/service.hpp"
#include "schema_reader.hpp"

namespace argfore {

namespace {

constexpr const char* kEventsSuffix = ".events.ndjson";
constexpr const char* kSnapshotSuffix = ".snapshot.json";

std::string first_violation_message(const std::vector<Violation>& v) {
  if (v.empty()) return "mutation rejected";
  std::string msg = v.front().message;
  if (v.size() > 1) msg += " (and " + std::to_string(v.size() - 1) + " more)";
  return msg;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

RejectedMutation::RejectedMutation(std::vector<Violation> violations)
    : Error(ErrorCode::kValidation, first_violation_message(violations)),
      violations_(std::move(violations)) {}

Json debate_to_json(const Debate& debate) {
  Json doc = acf_to_json(debate.acf);
  doc["id"] = debate.id;
  doc["question"] = debate.question;
  doc["prior"] = debate.prior ? Json(*debate.prior) : Json(nullptr);
  doc["version"] = debate.version;
  return doc;
}

Debate debate_from_json(const Json& doc, std::string_view source) {
  SchemaReader in(source, {});
  in.require_object(doc, "");
  Debate d;
  d.acf = acf_from_json(doc, source);
  d.id = in.string_field(doc, "", "id");
  d.question = in.string_field(doc, "", "question");
  if (doc.contains("prior") && !doc["prior"].is_null()) {
    d.prior = in.number_field(doc, "", "prior");
  }
  d.version = static_cast<std::uint64_t>(in.number_field(doc, "", "version"));
  return d;
}

void apply_event(Debate& debate, const Json& event) {
  SchemaReader in("<event>", {});
  in.require_object(event, "");
  auto seq = static_cast<std::uint64_t>(in.number_field(event, "", "seq"));
  if (seq != debate.version + 1) {
    throw Error(ErrorCode::kParse,
                "event seq " + std::to_string(seq) + " does not follow version " +
                    std::to_string(debate.version));
  }
  const std::string type = in.string_field(event, "", "type");
  if (type == "create") {
    debate.id = in.string_field(event, "", "debate");
    debate.question = in.string_field(event, "", "question");
    if (event.contains("prior") && !event["prior"].is_null()) {
      debate.prior = in.number_field(event, "", "prior");
    }
    debate.acf.forecasting_args.push_back({kDebateForecastId, debate.question});
  } else if (type == "add_argument") {
    ArgumentId id(in.string_field(event, "", "id"));
    std::string pol = in.string_field(event, "", "polarity");
    debate.acf.other_args.push_back({id, in.string_field(event, "", "text")});
    debate.acf.relations.push_back(
        {id, ArgumentId(in.string_field(event, "", "target")),
         pol == "support" ? Polarity::kSupport : Polarity::kAttack});
    debate.acf.set_vote(UserId(in.string_field(event, "", "author")), id,
                        Vote::kAgree);
  } else if (type == "vote") {
    auto vote = parse_vote(in.string_field(event, "", "vote"));
    if (!vote) in.fail("/vote", "unknown vote symbol");
    debate.acf.set_vote(UserId(in.string_field(event, "", "user")),
                        ArgumentId(in.string_field(event, "", "arg")), *vote);
  } else if (type == "predict") {
    debate.acf.set_prediction(UserId(in.string_field(event, "", "user")),
                              ArgumentId(in.string_field(event, "", "arg")),
                              in.number_field(event, "", "p"));
  } else {
    in.fail("/type", "unknown event type \"" + type + "\"");
  }
  debate.version = seq;
}

Debate replay_events(const std::vector<std::string>& lines) {
  Debate d;
  for (const auto& line : lines) apply_event(d, parse_json_text(line, "<event log>"));
  return d;
}

DebateStore::DebateStore(std::filesystem::path data_dir,
                         std::uint64_t snapshot_every)
    : data_dir_(std::move(data_dir)),
      snapshot_every_(snapshot_every == 0 ? 1 : snapshot_every) {
  if (!data_dir_.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(data_dir_, ec);
    if (ec) {
      throw Error(ErrorCode::kIo,
                  "cannot create data directory " + data_dir_.string());
    }
    load_existing();
  }
}

void DebateStore::load_existing() {
  for (const auto& file : std::filesystem::directory_iterator(data_dir_)) {
    const std::string name = file.path().filename().string();
    const std::string suffix = kEventsSuffix;
    if (name.size() <= suffix.size() ||
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
      continue;
    }
    const std::string id = name.substr(0, name.size() - suffix.size());
    auto entry = std::make_shared<Entry>();
    entry->log = read_lines(file.path());

    auto snap_path = data_dir_ / (id + kSnapshotSuffix);
    std::uint64_t from = 0;
    if (std::filesystem::exists(snap_path)) {
      std::string text = read_text_file(snap_path);
      Debate snap = debate_from_json(parse_json_text(text, snap_path.string()),
                                     snap_path.string());
      if (snap.version <= entry->log.size()) {
        entry->debate = std::move(snap);
        from = entry->debate.version;
      }
    }
    for (std::size_t i = from; i < entry->log.size(); ++i) {
      apply_event(entry->debate,
                  parse_json_text(entry->log[i], file.path().string()));
    }
    if (id.size() > 1 && id[0] == 'd') {
      std::uint64_t n = std::strtoull(id.c_str() + 1, nullptr, 10);
      next_debate_ = std::max(next_debate_, n + 1);
    }
    debates_.emplace(id, std::move(entry));
  }
}

Committed DebateStore::create_debate(const std::string& question,
                                     std::optional<double> prior) {
  if (question.empty()) {
    throw RejectedMutation(
        {{"question-nonempty", {}, "a debate needs a question"}});
  }
  if (prior && !(*prior > 0.0 && *prior < 1.0)) {
    throw RejectedMutation({{"prior-range", {}, "prior must lie in (0, 1)"}});
  }
  std::unique_lock lock(map_mu_);
  const std::string id = "d" + std::to_string(next_debate_);
  Json event{{"seq", 1},
             {"type", "create"},
             {"debate", id},
             {"question", question},
             {"prior", prior ? Json(*prior) : Json(nullptr)}};
  auto entry = std::make_shared<Entry>();
  apply_event(entry->debate, event);
  std::string line = event.dump();
  if (!data_dir_.empty()) {
    std::ofstream out(data_dir_ / (id + kEventsSuffix), std::ios::trunc);
    out << line << "\n";
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "cannot write event log for " + id);
  }
  entry->log.push_back(std::move(line));
  debates_.emplace(id, entry);
  ++next_debate_;
  return {entry->debate.version, id};
}

std::shared_ptr<DebateStore::Entry> DebateStore::find(
    const std::string& debate_id) const {
  std::shared_lock lock(map_mu_);
  auto it = debates_.find(debate_id);
  if (it == debates_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown debate \"" + debate_id + "\"");
  }
  return it->second;
}

Committed DebateStore::commit(const std::string& debate_id,
                              std::uint64_t expected_version, Json event,
                              std::string created_id) {
  auto entry = find(debate_id);
  std::lock_guard lock(entry->mu);
  if (entry->debate.version != expected_version) {
    throw Error(ErrorCode::kConflict,
                "debate " + debate_id + " is at version " +
                    std::to_string(entry->debate.version) +
                    ", request was based on version " +
                    std::to_string(expected_version));
  }
  if (event["type"] == "add_argument") {
    created_id = "a" + std::to_string(entry->debate.acf.other_args.size() + 1);
    event["id"] = created_id;
  }
  event["seq"] = entry->debate.version + 1;

  Debate next = entry->debate;
  apply_event(next, event);
  if (auto violations = validate_acf(next.acf); !violations.empty()) {
    throw RejectedMutation(std::move(violations));
  }

  std::string line = event.dump();
  if (!data_dir_.empty()) {
    std::ofstream out(data_dir_ / (debate_id + kEventsSuffix), std::ios::app);
    out << line << "\n";
    out.flush();
    if (!out) {
      throw Error(ErrorCode::kIo, "cannot append to event log of " + debate_id);
    }
    if (next.version % snapshot_every_ == 0) {
      auto path = data_dir_ / (debate_id + kSnapshotSuffix);
      auto tmp = path;
      tmp += ".tmp";
      write_text_file(tmp, debate_to_json(next).dump() + "\n");
      std::filesystem::rename(tmp, path);
    }
  }
  entry->log.push_back(std::move(line));
  entry->debate = std::move(next);
  return {entry->debate.version, created_id};
}

Committed DebateStore::add_argument(const std::string& debate_id,
                                    const std::string& text,
                                    const ArgumentId& target, Polarity polarity,
                                    const UserId& author,
                                    std::uint64_t expected_version) {
  if (text.empty()) {
    throw RejectedMutation({{"argument-text", {}, "argument text is empty"}});
  }
  Json event{{"type", "add_argument"},
             {"text", text},
             {"target", target.str()},
             {"polarity", std::string(polarity_name(polarity))},
             {"author", author.str()}};
  return commit(debate_id, expected_version, std::move(event), {});
}

Committed DebateStore::cast_vote(const std::string& debate_id,
                                 const UserId& user, const ArgumentId& arg,
                                 Vote vote, std::uint64_t expected_version) {
  Json event{{"type", "vote"},
             {"user", user.str()},
             {"arg", arg.str()},
             {"vote", std::string(vote_symbol(vote))}};
  return commit(debate_id, expected_version, std::move(event), {});
}

Committed DebateStore::submit_prediction(const std::string& debate_id,
                                         const UserId& user,
                                         const ArgumentId& arg, double p,
                                         std::uint64_t expected_version) {
  Json event{{"type", "predict"}, {"user", user.str()}, {"arg", arg.str()}, {"p", p}};
  return commit(debate_id, expected_version, std::move(event), {});
}

Debate DebateStore::snapshot(const std::string& debate_id) const {
  auto entry = find(debate_id);
  std::lock_guard lock(entry->mu);
  return entry->debate;
}

std::vector<std::string> DebateStore::event_log(
    const std::string& debate_id) const {
  auto entry = find(debate_id);
  std::lock_guard lock(entry->mu);
  return entry->log;
}

std::vector<std::string> DebateStore::debate_ids() const {
  std::shared_lock lock(map_mu_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : debates_) ids.push_back(id);
  return ids;
}

ServiceConfig ServiceConfig::from_env() {
  ServiceConfig cfg;
  if (const char* addr = std::getenv("ARGFORE_ADDR")) {
    std::string a(addr);
    auto colon = a.rfind(':');
    if (colon == std::string::npos) {
      cfg.host = a;
    } else {
      cfg.host = a.substr(0, colon);
      const std::string port = a.substr(colon + 1);
      char* end = nullptr;
      long n = std::strtol(port.c_str(), &end, 10);
      if (port.empty() || *end != '\0' || n < 0 || n > 65535) {
        throw Error(ErrorCode::kParse, "ARGFORE_ADDR: bad port \"" + port + "\"");
      }
      cfg.port = static_cast<int>(n);
    }
  }
  if (const char* dir = std::getenv("ARGFORE_DATA_DIR")) cfg.data_dir = dir;
  if (const char* eps = std::getenv("ARGFORE_EPSILON")) {
    char* end = nullptr;
    cfg.default_epsilon = std::strtod(eps, &end);
    if (*eps == '\0' || *end != '\0' || !(cfg.default_epsilon >= 0.0)) {
      throw Error(ErrorCode::kParse,
                  std::string("ARGFORE_EPSILON: bad value \"") + eps + "\"");
    }
  }
  return cfg;
}

ThresholdConfig thresholds_for(const Debate& debate, const ReadOverrides& o,
                               double default_epsilon) {
  ThresholdConfig cfg;
  cfg.epsilon = o.epsilon.value_or(default_epsilon);
  if (o.xi1) cfg.xi1.fallback = *o.xi1;
  if (o.xi2_from_prior) {
    if (!debate.prior) {
      throw Error(ErrorCode::kPrecondition,
                  "debate " + debate.id + " has no prior to use as xi2");
    }
    cfg.xi2.fallback = *debate.prior;
  } else if (o.xi2) {
    cfg.xi2.fallback = *o.xi2;
  }
  cfg.check();
  return cfg;
}

}  // namespace argfore
