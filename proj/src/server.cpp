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
#include <functional>

#include <httplib.h>

#include "argfore/service.hpp"

namespace argfore {

namespace {

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kConflict:
      return 409;
    case ErrorCode::kParse:
      return 400;
    case ErrorCode::kIo:
      return 500;
    default:
      return 422;
  }
}

Json violation_json(const Violation& v) {
  Json ids = Json::array();
  for (const auto& id : v.ids) ids.push_back(id);
  return {{"invariant", v.invariant}, {"ids", ids}, {"message", v.message}};
}

void add_cors(httplib::Response& res) {
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
  res.set_header("Access-Control-Allow-Headers", "Content-Type, Authorization");
}

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  add_cors(res);
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view error,
                const std::string& message, Json violations = Json::array()) {
  send(res, status,
       {{"error", error}, {"message", message}, {"violations", violations}});
}

// Runs a handler, turning library errors into JSON error responses.
void guarded(httplib::Response& res, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const RejectedMutation& e) {
    Json vs = Json::array();
    for (const auto& v : e.violations()) vs.push_back(violation_json(v));
    send_error(res, 422, error_code_name(e.code()), e.what(), vs);
  } catch (const Error& e) {
    send_error(res, status_for(e.code()), error_code_name(e.code()), e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

Json parse_body(const httplib::Request& req) {
  Json body = parse_json_text(req.body, "request body");
  if (!body.is_object()) {
    throw Error(ErrorCode::kParse, "request body must be a JSON object");
  }
  return body;
}

std::string body_string(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorCode::kValidation,
                std::string("field \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

double body_number(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_number()) {
    throw Error(ErrorCode::kValidation,
                std::string("field \"") + key + "\" must be a number");
  }
  return it->get<double>();
}

std::uint64_t body_version(const Json& body) {
  auto it = body.find("version");
  if (it == body.end() || !it->is_number_unsigned()) {
    throw Error(ErrorCode::kValidation,
                "field \"version\" must carry the last-seen debate version");
  }
  return it->get<std::uint64_t>();
}

// Bearer token first, then the body's user/author field.
std::optional<UserId> identity(const httplib::Request& req, const Json& body,
                               const char* field) {
  const std::string auth = req.get_header_value("Authorization");
  constexpr std::string_view kBearer = "Bearer ";
  if (auth.size() > kBearer.size() && auth.compare(0, kBearer.size(), kBearer) == 0) {
    return UserId(auth.substr(kBearer.size()));
  }
  auto it = body.find(field);
  if (it != body.end() && it->is_string() && !it->get<std::string>().empty()) {
    return UserId(it->get<std::string>());
  }
  return std::nullopt;
}

std::optional<double> query_number(const httplib::Request& req,
                                   const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  const std::string raw = req.get_param_value(key);
  char* end = nullptr;
  double v = std::strtod(raw.c_str(), &end);
  if (raw.empty() || end != raw.c_str() + raw.size()) {
    throw Error(ErrorCode::kValidation,
                std::string("query parameter ") + key + " must be a number");
  }
  return v;
}

ReadOverrides read_overrides(const httplib::Request& req) {
  ReadOverrides o;
  o.xi1 = query_number(req, "xi1");
  if (req.has_param("xi2") && req.get_param_value("xi2") == "prior") {
    o.xi2_from_prior = true;
  } else {
    o.xi2 = query_number(req, "xi2");
  }
  o.epsilon = query_number(req, "eps");
  o.forecast_base = query_number(req, "base");
  if (o.forecast_base && !(*o.forecast_base >= 0.0 && *o.forecast_base <= 1.0)) {
    throw Error(ErrorCode::kDomain, "base must lie in [0, 1]");
  }
  return o;
}

ForecastBase base_of(const ReadOverrides& o) {
  ForecastBase base;
  if (o.forecast_base) base.fallback = *o.forecast_base;
  return base;
}

}  // namespace

struct Server::Impl {
  Impl(DebateStore& s, double eps) : store(s), default_epsilon(eps) {}

  void routes();

  DebateStore& store;
  double default_epsilon;
  httplib::Server http;
};

void Server::Impl::routes() {
  http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    add_cors(res);
  });

  http.Post("/debates", [this](const httplib::Request& req,
                               httplib::Response& res) {
    guarded(res, [&] {
      Json body = parse_body(req);
      std::optional<double> prior;
      if (body.contains("prior") && !body["prior"].is_null()) {
        prior = body_number(body, "prior");
      }
      auto c = store.create_debate(body_string(body, "question"), prior);
      send(res, 201,
           {{"id", c.id},
            {"version", c.version},
            {"forecasting_argument", kDebateForecastId.str()}});
    });
  });

  http.Get("/debates", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      Json list = Json::array();
      for (const auto& id : store.debate_ids()) {
        Debate d = store.snapshot(id);
        list.push_back(
            {{"id", d.id}, {"question", d.question}, {"version", d.version}});
      }
      send(res, 200, {{"debates", list}});
    });
  });

  http.Get(R"(/debates/([^/]+))", [this](const httplib::Request& req,
                                          httplib::Response& res) {
    guarded(res, [&] { send(res, 200, debate_to_json(store.snapshot(req.matches[1]))); });
  });

  http.Post(R"(/debates/([^/]+)/arguments)", [this](const httplib::Request& req,
                                                     httplib::Response& res) {
    guarded(res, [&] {
      Json body = parse_body(req);
      auto author = identity(req, body, "author");
      if (!author) {
        send_error(res, 401, "unauthenticated", "no bearer token or author");
        return;
      }
      const std::string pol = body_string(body, "polarity");
      if (pol != "attack" && pol != "support") {
        throw Error(ErrorCode::kValidation,
                    "polarity must be \"attack\" or \"support\"");
      }
      auto c = store.add_argument(
          req.matches[1], body_string(body, "text"),
          ArgumentId(body_string(body, "target")),
          pol == "support" ? Polarity::kSupport : Polarity::kAttack, *author,
          body_version(body));
      send(res, 201, {{"id", c.id}, {"version", c.version}});
    });
  });

  http.Put(R"(/debates/([^/]+)/votes)", [this](const httplib::Request& req,
                                                httplib::Response& res) {
    guarded(res, [&] {
      Json body = parse_body(req);
      auto user = identity(req, body, "user");
      if (!user) {
        send_error(res, 401, "unauthenticated", "no bearer token or user");
        return;
      }
      auto vote = parse_vote(body_string(body, "vote"));
      if (!vote) {
        throw Error(ErrorCode::kValidation, "vote must be \"+\", \"-\" or \"?\"");
      }
      auto c = store.cast_vote(req.matches[1], *user,
                               ArgumentId(body_string(body, "arg")), *vote,
                               body_version(body));
      send(res, 200, {{"version", c.version}});
    });
  });

  http.Put(R"(/debates/([^/]+)/predictions)", [this](const httplib::Request& req,
                                                      httplib::Response& res) {
    guarded(res, [&] {
      Json body = parse_body(req);
      auto user = identity(req, body, "user");
      if (!user) {
        send_error(res, 401, "unauthenticated", "no bearer token or user");
        return;
      }
      auto c = store.submit_prediction(req.matches[1], *user,
                                       ArgumentId(body_string(body, "arg")),
                                       body_number(body, "p"), body_version(body));
      send(res, 200, {{"version", c.version}});
    });
  });

  http.Get(R"(/debates/([^/]+)/coherence)", [this](const httplib::Request& req,
                                                    httplib::Response& res) {
    guarded(res, [&] {
      if (!req.has_param("user")) {
        throw Error(ErrorCode::kValidation, "query parameter user is required");
      }
      UserId user(req.get_param_value("user"));
      auto o = read_overrides(req);
      Debate d = store.snapshot(req.matches[1]);
      if (!d.acf.has_forecaster(user)) {
        throw Error(ErrorCode::kNotFound, "unknown user \"" + user.str() + "\"");
      }
      auto cfg = thresholds_for(d, o, default_epsilon);
      auto verdicts = check_coherence(d.acf, user, cfg, base_of(o));
      send(res, 200,
           {{"user", user.str()},
            {"version", d.version},
            {"coherent", forecaster_is_coherent(verdicts)},
            {"verdicts", verdicts_to_json(verdicts)}});
    });
  });

  http.Get(R"(/debates/([^/]+)/forecast)", [this](const httplib::Request& req,
                                                   httplib::Response& res) {
    guarded(res, [&] {
      auto o = read_overrides(req);
      Debate d = store.snapshot(req.matches[1]);
      auto cfg = thresholds_for(d, o, default_epsilon);
      Json doc = summary_to_json(
          aggregate_forecast(d.acf, kDebateForecastId, cfg, base_of(o)));
      doc["version"] = d.version;
      doc["xi1"] = cfg.xi1.fallback;
      doc["xi2"] = cfg.xi2.fallback;
      doc["epsilon"] = cfg.epsilon;
      send(res, 200, doc);
    });
  });

  http.Get(R"(/debates/([^/]+)/users/([^/]+)/qbaf)",
           [this](const httplib::Request& req, httplib::Response& res) {
             guarded(res, [&] {
               auto o = read_overrides(req);
               Debate d = store.snapshot(req.matches[1]);
               UserId user(req.matches[2]);
               auto base = base_of(o);
               auto fq = derive_forecaster_qbaf(d.acf, user, base);
               Json doc = forecaster_qbaf_to_json(fq, evaluate(fq.qbaf));
               doc["version"] = d.version;
               send(res, 200, doc);
             });
           });
}

Server::Server(DebateStore& store, double default_epsilon)
    : impl_(std::make_unique<Impl>(store, default_epsilon)) {
  impl_->routes();
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) {
    int bound = impl_->http.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kIo, "cannot bind " + host);
    return bound;
  }
  if (!impl_->http.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIo,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Server::serve() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

bool Server::running() const { return impl_->http.is_running(); }

}  // namespace argfore
