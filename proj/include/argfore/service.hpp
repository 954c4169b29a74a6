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

// Debate hosting: an event-sourced store with per-debate optimistic
// concurrency, and the REST front end over it.
//
// Every mutation names the version the caller last saw. A mismatch is a
// conflict; otherwise the mutation is applied to a copy, validated, appended
// to the debate's event log, and published as version + 1. Reads copy the
// current snapshot and run the engine outside the lock.

#ifndef ARGFORE_SERVICE_HPP_
#define ARGFORE_SERVICE_HPP_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "argfore/acf.hpp"
#include "argfore/coherence.hpp"
#include "argfore/error.hpp"
#include "argfore/serialization.hpp"

namespace argfore {

inline const ArgumentId kDebateForecastId{"f"};

struct Debate {
  std::string id;
  std::string question;
  std::optional<double> prior;
  Acf acf;
  std::uint64_t version = 0;
};

// Canonical snapshot document: the debate file fields plus
// "id", "question", "prior" and "version".
Json debate_to_json(const Debate& debate);
Debate debate_from_json(const Json& doc, std::string_view source = "<snapshot>");

// Applies one logged event. Events are
//   {"seq", "type": "create", "debate", "question", "prior"}
//   {"seq", "type": "add_argument", "id", "text", "target", "polarity", "author"}
//   {"seq", "type": "vote", "user", "arg", "vote"}
//   {"seq", "type": "predict", "user", "arg", "p"}
// and seq must equal the debate's version + 1.
void apply_event(Debate& debate, const Json& event);

Debate replay_events(const std::vector<std::string>& lines);

// A mutation rejected because the resulting debate would break an invariant.
class RejectedMutation : public Error {
 public:
  explicit RejectedMutation(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct Committed {
  std::uint64_t version = 0;
  std::string id;  // new debate or argument id, when one was created
};

class DebateStore {
 public:
  // An empty data_dir keeps everything in memory. Otherwise each debate has
  // "<id>.events.ndjson" and, every `snapshot_every` versions,
  // "<id>.snapshot.json"; existing files are loaded on construction.
  explicit DebateStore(std::filesystem::path data_dir = {},
                       std::uint64_t snapshot_every = 50);

  Committed create_debate(const std::string& question,
                          std::optional<double> prior = std::nullopt);

  // The author's agreement with their own argument is recorded with it.
  Committed add_argument(const std::string& debate_id, const std::string& text,
                         const ArgumentId& target, Polarity polarity,
                         const UserId& author, std::uint64_t expected_version);
  Committed cast_vote(const std::string& debate_id, const UserId& user,
                      const ArgumentId& arg, Vote vote,
                      std::uint64_t expected_version);
  Committed submit_prediction(const std::string& debate_id, const UserId& user,
                              const ArgumentId& arg, double p,
                              std::uint64_t expected_version);

  // Throws Error(kNotFound) for unknown ids.
  Debate snapshot(const std::string& debate_id) const;
  std::vector<std::string> event_log(const std::string& debate_id) const;
  std::vector<std::string> debate_ids() const;

  const std::filesystem::path& data_dir() const { return data_dir_; }

 private:
  struct Entry {
    mutable std::mutex mu;
    Debate debate;
    std::vector<std::string> log;
  };

  std::shared_ptr<Entry> find(const std::string& debate_id) const;
  Committed commit(const std::string& debate_id, std::uint64_t expected_version,
                   Json event, std::string created_id);
  void load_existing();

  std::filesystem::path data_dir_;
  std::uint64_t snapshot_every_;
  mutable std::shared_mutex map_mu_;
  std::map<std::string, std::shared_ptr<Entry>> debates_;
  std::uint64_t next_debate_ = 1;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir;
  double default_epsilon = 0.05;

  // ARGFORE_ADDR ("host:port"), ARGFORE_DATA_DIR, ARGFORE_EPSILON.
  static ServiceConfig from_env();
};

// Thresholds for a read: query values override the defaults; xi2=prior uses
// the debate's prior.
struct ReadOverrides {
  std::optional<double> xi1;
  std::optional<double> xi2;
  bool xi2_from_prior = false;
  std::optional<double> epsilon;
  std::optional<double> forecast_base;
};

ThresholdConfig thresholds_for(const Debate& debate, const ReadOverrides& o,
                               double default_epsilon);

class Server {
 public:
  Server(DebateStore& store, double default_epsilon = 0.05);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds to `port`, or to an ephemeral port when port == 0; returns the port.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void serve();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace argfore

#endif  // ARGFORE_SERVICE_HPP_
