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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "argfore/coherence.hpp"
#include "argfore/service.hpp"

namespace argfore {
namespace {

namespace fs = std::filesystem;

const ArgumentId kF{"f"};

struct TempDir {
  TempDir() {
    static std::atomic<int> n{0};
    path = fs::temp_directory_path() /
           ("argfore_store_" + std::to_string(::getpid()) + "_" + std::to_string(n++));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path path;
};

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode{};
}

// Builds the two-argument debate used throughout: b supports f, c attacks f.
std::string seed_debate(DebateStore& store) {
  auto d = store.create_debate("Will it rain?", 0.3);
  auto b = store.add_argument(d.id, "clouds", kF, Polarity::kSupport, UserId("amy"), 1);
  store.add_argument(d.id, "wind", kF, Polarity::kAttack, UserId("amy"), b.version);
  return d.id;
}

TEST(Store, CreateAndAddArgument) {
  DebateStore store;
  auto d = store.create_debate("Will it rain?");
  EXPECT_EQ(d.id, "d1");
  EXPECT_EQ(d.version, 1u);
  auto a = store.add_argument(d.id, "clouds", kF, Polarity::kSupport, UserId("amy"), 1);
  EXPECT_EQ(a.id, "a1");
  EXPECT_EQ(a.version, 2u);
  Debate snap = store.snapshot(d.id);
  EXPECT_EQ(snap.version, 2u);
  EXPECT_EQ(snap.acf.vote(UserId("amy"), ArgumentId("a1")), Vote::kAgree);
  EXPECT_EQ(store.event_log(d.id).size(), 2u);
}

TEST(Store, RejectsBadCreate) {
  DebateStore store;
  EXPECT_THROW(store.create_debate(""), RejectedMutation);
  EXPECT_THROW(store.create_debate("q", 1.0), RejectedMutation);
  EXPECT_THROW(store.create_debate("q", 0.0), RejectedMutation);
  EXPECT_TRUE(store.debate_ids().empty());
}

TEST(Store, StaleVersionConflicts) {
  DebateStore store;
  auto id = seed_debate(store);
  store.cast_vote(id, UserId("bo"), ArgumentId("a1"), Vote::kAgree, 3);
  EXPECT_EQ(code_of([&] {
              store.cast_vote(id, UserId("cy"), ArgumentId("a1"), Vote::kAgree, 3);
            }),
            ErrorCode::kConflict);
  EXPECT_EQ(store.snapshot(id).version, 4u);
}

TEST(Store, ConcurrentSameVersionOneWins) {
  for (int round = 0; round < 20; ++round) {
    DebateStore store;
    auto id = seed_debate(store);
    std::atomic<int> ok{0}, conflict{0};
    std::vector<std::thread> ts;
    for (int i = 0; i < 2; ++i) {
      ts.emplace_back([&, i] {
        try {
          store.cast_vote(id, UserId("u" + std::to_string(i)), ArgumentId("a1"),
                          Vote::kAgree, 3);
          ++ok;
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kConflict) ++conflict;
        }
      });
    }
    for (auto& t : ts) t.join();
    EXPECT_EQ(ok, 1);
    EXPECT_EQ(conflict, 1);
  }
}

TEST(Store, InvariantViolationsAreRejected) {
  DebateStore store;
  auto id = seed_debate(store);
  try {
    store.cast_vote(id, UserId("bo"), kF, Vote::kAgree, 3);
    FAIL() << "vote on f accepted";
  } catch (const RejectedMutation& e) {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_EQ(e.violations()[0].invariant, "vote-domain");
  }
  EXPECT_THROW(store.submit_prediction(id, UserId("bo"), ArgumentId("a1"), 0.5, 3),
               RejectedMutation);
  EXPECT_THROW(store.submit_prediction(id, UserId("bo"), kF, 1.5, 3), RejectedMutation);
  EXPECT_THROW(store.add_argument(id, "", kF, Polarity::kAttack, UserId("bo"), 3),
               RejectedMutation);
  EXPECT_EQ(code_of([&] {
              store.add_argument(id, "x", ArgumentId("zz"), Polarity::kAttack,
                                 UserId("bo"), 3);
            }),
            ErrorCode::kValidation);
  // nothing was committed
  EXPECT_EQ(store.snapshot(id).version, 3u);
  EXPECT_EQ(store.event_log(id).size(), 3u);
}

TEST(Store, UnknownDebate) {
  DebateStore store;
  EXPECT_EQ(code_of([&] { store.snapshot("d9"); }), ErrorCode::kNotFound);
  EXPECT_EQ(code_of([&] {
              store.cast_vote("d9", UserId("u"), ArgumentId("a1"), Vote::kAgree, 1);
            }),
            ErrorCode::kNotFound);
}

TEST(Store, ReplayMatchesSnapshot) {
  DebateStore store;
  auto id = seed_debate(store);
  std::uint64_t v = 3;
  v = store.cast_vote(id, UserId("u"), ArgumentId("a1"), Vote::kDisagree, v).version;
  v = store.cast_vote(id, UserId("u"), ArgumentId("a2"), Vote::kAgree, v).version;
  v = store.submit_prediction(id, UserId("u"), kF, 0.85, v).version;
  v = store.cast_vote(id, UserId("amy"), ArgumentId("a1"), Vote::kUnsure, v).version;
  Debate replayed = replay_events(store.event_log(id));
  EXPECT_EQ(debate_to_json(replayed).dump(), debate_to_json(store.snapshot(id)).dump());
}

TEST(Store, ReplayRejectsGaps) {
  DebateStore store;
  auto id = seed_debate(store);
  auto log = store.event_log(id);
  log.erase(log.begin() + 1);
  EXPECT_EQ(code_of([&] { replay_events(log); }), ErrorCode::kParse);
}

TEST(Store, ReloadsFromDisk) {
  TempDir dir;
  std::string before;
  std::string id;
  {
    DebateStore store(dir.path, 4);
    id = seed_debate(store);
    std::uint64_t v = 3;
    for (int i = 0; i < 7; ++i) {
      v = store.cast_vote(id, UserId("u" + std::to_string(i)), ArgumentId("a1"),
                          i % 2 ? Vote::kAgree : Vote::kDisagree, v)
              .version;
    }
    before = debate_to_json(store.snapshot(id)).dump();
    store.create_debate("second");
  }
  EXPECT_TRUE(fs::exists(dir.path / (id + ".events.ndjson")));
  EXPECT_TRUE(fs::exists(dir.path / (id + ".snapshot.json")));
  DebateStore again(dir.path, 4);
  EXPECT_EQ(debate_to_json(again.snapshot(id)).dump(), before);
  EXPECT_EQ(again.debate_ids().size(), 2u);
  EXPECT_EQ(again.create_debate("third").id, "d3");
  // the log alone is enough
  fs::remove(dir.path / (id + ".snapshot.json"));
  DebateStore log_only(dir.path, 4);
  EXPECT_EQ(debate_to_json(log_only.snapshot(id)).dump(), before);
}

TEST(Store, ThresholdsForRead) {
  DebateStore store;
  auto id = seed_debate(store);
  Debate d = store.snapshot(id);
  ReadOverrides o;
  o.xi2_from_prior = true;
  auto cfg = thresholds_for(d, o, 0.05);
  EXPECT_EQ(cfg.xi2.fallback, 0.3);
  EXPECT_EQ(cfg.epsilon, 0.05);
  o.epsilon = 0.2;
  o.xi1 = 0.4;
  cfg = thresholds_for(d, o, 0.05);
  EXPECT_EQ(cfg.epsilon, 0.2);
  EXPECT_EQ(cfg.xi1.fallback, 0.4);
  auto other = store.create_debate("no prior");
  EXPECT_EQ(code_of([&] { thresholds_for(store.snapshot(other.id), o, 0.05); }),
            ErrorCode::kPrecondition);
  ReadOverrides bad;
  bad.xi1 = 1.0;
  EXPECT_EQ(code_of([&] { thresholds_for(d, bad, 0.05); }), ErrorCode::kDomain);
}

TEST(Config, FromEnv) {
  ::setenv("ARGFORE_ADDR", "0.0.0.0:9123", 1);
  ::setenv("ARGFORE_DATA_DIR", "/tmp/x", 1);
  ::setenv("ARGFORE_EPSILON", "0.1", 1);
  auto cfg = ServiceConfig::from_env();
  EXPECT_EQ(cfg.host, "0.0.0.0");
  EXPECT_EQ(cfg.port, 9123);
  EXPECT_EQ(cfg.data_dir, fs::path("/tmp/x"));
  EXPECT_EQ(cfg.default_epsilon, 0.1);
  ::setenv("ARGFORE_ADDR", "localhost:http", 1);
  EXPECT_THROW(ServiceConfig::from_env(), Error);
  ::setenv("ARGFORE_ADDR", "localhost", 1);
  ::setenv("ARGFORE_EPSILON", "-1", 1);
  EXPECT_THROW(ServiceConfig::from_env(), Error);
  ::unsetenv("ARGFORE_ADDR");
  ::unsetenv("ARGFORE_DATA_DIR");
  ::unsetenv("ARGFORE_EPSILON");
}

// ---- HTTP ----

class Http : public ::testing::Test {
 protected:
  void SetUp() override {
    server = std::make_unique<Server>(store, 0.05);
    port = server->bind("127.0.0.1", 0);
    thread = std::thread([this] { server->serve(); });
    while (!server->running()) std::this_thread::yield();
    client = std::make_unique<httplib::Client>("127.0.0.1", port);
  }
  void TearDown() override {
    server->stop();
    thread.join();
  }

  Json post(const std::string& path, const Json& body, int want,
            const httplib::Headers& h = {}) {
    auto res = client->Post(path, h, body.dump(), "application/json");
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, want) << path << " " << res->body;
    return Json::parse(res->body);
  }
  Json put(const std::string& path, const Json& body, int want,
           const httplib::Headers& h = {}) {
    auto res = client->Put(path, h, body.dump(), "application/json");
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, want) << path << " " << res->body;
    return Json::parse(res->body);
  }
  Json get(const std::string& path, int want) {
    auto res = client->Get(path);
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, want) << path << " " << res->body;
    return Json::parse(res->body);
  }

  DebateStore store;
  std::unique_ptr<Server> server;
  int port = 0;
  std::thread thread;
  std::unique_ptr<httplib::Client> client;
};

TEST_F(Http, WorkedScenarioEndToEnd) {
  Json d = post("/debates", {{"question", "Will it rain?"}, {"prior", 0.3}}, 201);
  EXPECT_EQ(d["id"], "d1");
  EXPECT_EQ(d["forecasting_argument"], "f");
  Json b = post("/debates/d1/arguments",
                {{"text", "clouds"}, {"target", "f"}, {"polarity", "support"},
                 {"author", "amy"}, {"version", 1}},
                201);
  EXPECT_EQ(b["id"], "a1");
  Json c = post("/debates/d1/arguments",
                {{"text", "wind"}, {"target", "f"}, {"polarity", "attack"}, {"version", 2}},
                201, {{"Authorization", "Bearer amy"}});
  EXPECT_EQ(c["id"], "a2");
  std::uint64_t v = c["version"];
  v = put("/debates/d1/votes", {{"user", "u"}, {"arg", "a1"}, {"vote", "-"}, {"version", v}},
          200)["version"];
  v = put("/debates/d1/votes", {{"user", "u"}, {"arg", "a2"}, {"vote", "+"}, {"version", v}},
          200)["version"];
  v = put("/debates/d1/predictions", {{"user", "u"}, {"arg", "f"}, {"p", 0.85}, {"version", v}},
          200)["version"];
  EXPECT_EQ(v, 6u);

  Json coh = get("/debates/d1/coherence?user=u", 200);
  EXPECT_EQ(coh["coherent"], false);
  EXPECT_EQ(coh["version"], 6);
  ASSERT_EQ(coh["verdicts"].size(), 1u);
  EXPECT_NEAR(coh["verdicts"][0]["sigma"].get<double>(), 0.125, 1e-12);
  EXPECT_EQ(coh["verdicts"][0]["branch"], "below");

  Json qbaf = get("/debates/d1/users/u/qbaf", 200);
  EXPECT_EQ(qbaf["forecaster"], "u");
  EXPECT_EQ(qbaf["version"], 6);

  Json listing = get("/debates", 200);
  ASSERT_EQ(listing["debates"].size(), 1u);
  EXPECT_EQ(listing["debates"][0]["version"], 6);

  Json full = get("/debates/d1", 200);
  EXPECT_EQ(full, debate_to_json(store.snapshot("d1")));
}

TEST_F(Http, ForecastMatchesOfflineAggregate) {
  post("/debates", {{"question", "q"}, {"prior", 0.7}}, 201);
  post("/debates/d1/arguments",
       {{"text", "s"}, {"target", "f"}, {"polarity", "support"}, {"author", "amy"}, {"version", 1}},
       201);
  std::uint64_t v = 2;
  const double ps[] = {0.9, 0.2, 0.75, 0.6};
  for (int i = 0; i < 4; ++i) {
    std::string u = "u" + std::to_string(i);
    v = put("/debates/d1/votes",
            {{"user", u}, {"arg", "a1"}, {"vote", i % 2 ? "-" : "+"}, {"version", v}},
            200)["version"];
    v = put("/debates/d1/predictions", {{"user", u}, {"arg", "f"}, {"p", ps[i]}, {"version", v}},
            200)["version"];
  }
  for (const char* q : {"", "?xi2=prior", "?eps=0.2&xi1=0.6", "?base=0.3"}) {
    Json fc = get(std::string("/debates/d1/forecast") + q, 200);
    Debate d = store.snapshot("d1");
    ReadOverrides o;
    std::string qs = q;
    if (qs == "?xi2=prior") o.xi2_from_prior = true;
    if (qs == "?eps=0.2&xi1=0.6") {
      o.epsilon = 0.2;
      o.xi1 = 0.6;
    }
    ForecastBase base;
    if (qs == "?base=0.3") base.fallback = 0.3;
    auto cfg = thresholds_for(d, o, 0.05);
    Json want = summary_to_json(aggregate_forecast(d.acf, kF, cfg, base));
    for (const char* k : {"argument", "raw_mean", "coherent_mean", "n_raw", "n_coherent"}) {
      EXPECT_EQ(fc[k], want[k]) << q << " " << k;
    }
    EXPECT_EQ(fc["xi2"], cfg.xi2.fallback);
    EXPECT_EQ(fc["epsilon"], cfg.epsilon);
  }
  Json fc = get("/debates/d1/forecast?xi2=prior", 200);
  EXPECT_EQ(fc["xi2"], 0.7);
}

TEST_F(Http, ErrorStatuses) {
  get("/debates/d7", 404);
  post("/debates", {{"question", "q"}}, 201);
  Json e = get("/debates/d1/forecast?xi2=prior", 422);
  EXPECT_EQ(e["error"], "precondition");
  e = post("/debates", {{"question", ""}}, 422);
  ASSERT_FALSE(e["violations"].empty());
  EXPECT_EQ(e["violations"][0]["invariant"], "question-nonempty");

  auto res = client->Post("/debates", "{not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(Json::parse(res->body)["error"], "parse");

  // no identity
  e = post("/debates/d1/arguments",
           {{"text", "t"}, {"target", "f"}, {"polarity", "support"}, {"version", 1}}, 401);
  EXPECT_EQ(e["error"], "unauthenticated");
  put("/debates/d1/votes", {{"arg", "f"}, {"vote", "+"}, {"version", 1}}, 401);
  put("/debates/d1/predictions", {{"arg", "f"}, {"p", 0.5}, {"version", 1}}, 401);

  // missing version, bad polarity, bad vote
  post("/debates/d1/arguments",
       {{"text", "t"}, {"target", "f"}, {"polarity", "support"}, {"author", "a"}}, 422);
  post("/debates/d1/arguments",
       {{"text", "t"}, {"target", "f"}, {"polarity", "sideways"}, {"author", "a"},
        {"version", 1}},
       422);
  put("/debates/d1/votes", {{"user", "u"}, {"arg", "f"}, {"vote", "x"}, {"version", 1}}, 422);

  // vote on f breaks the domain invariant
  e = put("/debates/d1/votes", {{"user", "u"}, {"arg", "f"}, {"vote", "+"}, {"version", 1}},
          422);
  EXPECT_EQ(e["violations"][0]["invariant"], "vote-domain");

  // stale version
  put("/debates/d1/predictions", {{"user", "u"}, {"arg", "f"}, {"p", 0.4}, {"version", 1}},
      200);
  e = put("/debates/d1/predictions", {{"user", "v"}, {"arg", "f"}, {"p", 0.4}, {"version", 1}},
          409);
  EXPECT_EQ(e["error"], "conflict");

  get("/debates/d1/coherence", 422);
  get("/debates/d1/coherence?user=nobody", 404);
  get("/debates/d1/coherence?user=u&xi1=abc", 422);
  get("/debates/d1/forecast?base=2", 422);
}

TEST_F(Http, CorsHeaders) {
  auto res = client->Options("/debates");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 204);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
  res = client->Get("/debates");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
  res = client->Get("/debates/zz");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
}

}  // namespace
}  // namespace argfore
