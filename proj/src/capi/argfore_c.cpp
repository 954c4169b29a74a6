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

#include "argfore.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "argfore/datasets.hpp"
#include "argfore/serialization.hpp"
#include "argfore/service.hpp"
#include "argfore/stats.hpp"
#include "argfore/variants.hpp"

struct argfore_acf {
  argfore::Acf acf;
};

struct argfore_dataset {
  std::vector<argfore::ForecastRecord> records;
};

struct argfore_server {
  std::unique_ptr<argfore::DebateStore> store;
  std::unique_ptr<argfore::Server> server;
};

namespace {

thread_local std::string g_last_error;

argfore_status fail(argfore_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
argfore_status guard(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return ARGFORE_OK;
  } catch (const argfore::Error& e) {
    return fail(static_cast<argfore_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ARGFORE_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ARGFORE_E_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const argfore::Json& doc) {
  if (out) *out = dup_string(doc.dump());
}

argfore::ThresholdConfig to_config(const argfore_thresholds* t,
                                   argfore::ForecastBase* base) {
  argfore_thresholds d;
  argfore_thresholds_default(&d);
  if (!t) t = &d;
  argfore::ThresholdConfig cfg;
  cfg.xi1.fallback = t->xi1;
  cfg.xi2.fallback = t->xi2;
  if (t->xi2_map_json) {
    cfg.xi2 = argfore::parse_value_map(t->xi2_map_json, t->xi2, "<xi2 map>");
  }
  cfg.epsilon = t->epsilon;
  cfg.check();
  if (!(t->forecast_base >= 0.0 && t->forecast_base <= 1.0)) {
    throw argfore::Error(argfore::ErrorCode::kDomain,
                         "forecast base must lie in [0, 1]");
  }
  if (base) base->fallback = t->forecast_base;
  return cfg;
}

#define ARGFORE_REQUIRE(cond)                                               \
  do {                                                                      \
    if (!(cond)) return fail(ARGFORE_E_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* argfore_version(void) { return ARGFORE_VERSION; }

const char* argfore_last_error(void) { return g_last_error.c_str(); }

const char* argfore_status_name(argfore_status status) {
  switch (status) {
    case ARGFORE_OK:
      return "ok";
    case ARGFORE_E_INVALID_ARGUMENT:
      return "invalid-argument";
    case ARGFORE_E_INTERNAL:
      return "internal";
    default:
      break;
  }
  if (status >= ARGFORE_E_DOMAIN && status <= ARGFORE_E_IO) {
    return argfore::error_code_name(static_cast<argfore::ErrorCode>(status)).data();
  }
  return "unknown";
}

void argfore_string_free(char* s) { std::free(s); }

void argfore_thresholds_default(argfore_thresholds* out) {
  if (!out) return;
  out->xi1 = 0.5;
  out->xi2 = 0.5;
  out->epsilon = 0.05;
  out->forecast_base = 0.5;
  out->xi2_map_json = nullptr;
}

argfore_status argfore_json_round(const char* json, int digits, char** out) {
  ARGFORE_REQUIRE(json);
  ARGFORE_REQUIRE(out);
  if (digits < 1 || digits > 17) {
    return fail(ARGFORE_E_INVALID_ARGUMENT, "digits must lie in [1, 17]");
  }
  return guard([&] {
    put(out, argfore::round_numbers(argfore::parse_json_text(json, "<json>"), digits));
  });
}

argfore_status argfore_aggregate(const double* strengths, size_t n, double* out) {
  ARGFORE_REQUIRE(out);
  ARGFORE_REQUIRE(strengths || n == 0);
  return guard([&] { *out = argfore::aggregate({strengths, n}); });
}

argfore_status argfore_combine(double base, double attack, double support,
                               double* out) {
  ARGFORE_REQUIRE(out);
  return guard([&] { *out = argfore::combine(base, attack, support); });
}

argfore_status argfore_qbaf_evaluate(const char* qbaf_json, char** out) {
  ARGFORE_REQUIRE(qbaf_json);
  ARGFORE_REQUIRE(out);
  return guard([&] {
    auto qbaf = argfore::qbaf_from_json(
        argfore::parse_json_text(qbaf_json, "<qbaf>"), "<qbaf>");
    argfore::Json doc = argfore::Json::object();
    for (const auto& [id, s] : argfore::evaluate(qbaf)) doc[id.str()] = s;
    put(out, doc);
  });
}

argfore_status argfore_acf_load(const char* path, argfore_acf** out) {
  ARGFORE_REQUIRE(path);
  ARGFORE_REQUIRE(out);
  return guard([&] { *out = new argfore_acf{argfore::load_acf(path)}; });
}

argfore_status argfore_acf_parse(const char* json, argfore_acf** out) {
  ARGFORE_REQUIRE(json);
  ARGFORE_REQUIRE(out);
  return guard([&] { *out = new argfore_acf{argfore::parse_acf(json)}; });
}

void argfore_acf_free(argfore_acf* acf) { delete acf; }

argfore_status argfore_acf_to_json(const argfore_acf* acf, char** out) {
  ARGFORE_REQUIRE(acf);
  ARGFORE_REQUIRE(out);
  return guard([&] { put(out, argfore::acf_to_json(acf->acf)); });
}

argfore_status argfore_acf_validate(const argfore_acf* acf, char** out) {
  ARGFORE_REQUIRE(acf);
  ARGFORE_REQUIRE(out);
  return guard([&] {
    argfore::Json list = argfore::Json::array();
    for (const auto& v : argfore::validate_acf(acf->acf)) {
      list.push_back(
          {{"invariant", v.invariant}, {"ids", v.ids}, {"message", v.message}});
    }
    put(out, list);
  });
}

argfore_status argfore_acf_check_coherence(const argfore_acf* acf,
                                           const char* user,
                                           const argfore_thresholds* cfg,
                                           char** out) {
  ARGFORE_REQUIRE(acf);
  ARGFORE_REQUIRE(user);
  ARGFORE_REQUIRE(out);
  return guard([&] {
    argfore::ForecastBase base;
    auto tc = to_config(cfg, &base);
    argfore::UserId u(user);
    if (!acf->acf.has_forecaster(u)) {
      throw argfore::Error(argfore::ErrorCode::kNotFound,
                           std::string("unknown forecaster \"") + user + "\"");
    }
    auto verdicts = argfore::check_coherence(acf->acf, u, tc, base);
    put(out, {{"user", user},
              {"coherent", argfore::forecaster_is_coherent(verdicts)},
              {"verdicts", argfore::verdicts_to_json(verdicts)}});
  });
}

argfore_status argfore_acf_forecast(const argfore_acf* acf,
                                    const char* forecast_arg,
                                    const argfore_thresholds* cfg, char** out) {
  ARGFORE_REQUIRE(acf);
  ARGFORE_REQUIRE(out);
  return guard([&] {
    argfore::ForecastBase base;
    auto tc = to_config(cfg, &base);
    if (forecast_arg) {
      put(out, argfore::summary_to_json(argfore::aggregate_forecast(
                   acf->acf, argfore::ArgumentId(forecast_arg), tc, base)));
      return;
    }
    argfore::Json list = argfore::Json::array();
    for (const auto& f : acf->acf.forecasting_args) {
      list.push_back(argfore::summary_to_json(
          argfore::aggregate_forecast(acf->acf, f.id, tc, base)));
    }
    put(out, list);
  });
}

argfore_status argfore_acf_forecaster_qbaf(const argfore_acf* acf,
                                           const char* user,
                                           double forecast_base, char** out) {
  ARGFORE_REQUIRE(acf);
  ARGFORE_REQUIRE(user);
  ARGFORE_REQUIRE(out);
  return guard([&] {
    argfore::ForecastBase base;
    base.fallback = forecast_base;
    auto fq = argfore::derive_forecaster_qbaf(acf->acf, argfore::UserId(user), base);
    put(out, argfore::forecaster_qbaf_to_json(fq, argfore::evaluate(fq.qbaf)));
  });
}

argfore_status argfore_acf_classify(const argfore_acf* acf, const char* user,
                                    char** profile_json) {
  ARGFORE_REQUIRE(acf);
  ARGFORE_REQUIRE(user);
  ARGFORE_REQUIRE(profile_json);
  return guard([&] {
    auto p = argfore::classify(acf->acf, argfore::UserId(user));
    put(profile_json, {{"code", p.code()},
                       {"name", p.name()},
                       {"simple", p.simple},
                       {"vote", p.vote_complex},
                       {"breadth", p.breadth_complex},
                       {"depth", p.depth_complex}});
  });
}

argfore_status argfore_variant_generate(const char* profile, const char* band,
                                        uint64_t seed, const char* question,
                                        const char* templates_path,
                                        char** debate_json) {
  ARGFORE_REQUIRE(profile);
  ARGFORE_REQUIRE(band);
  ARGFORE_REQUIRE(debate_json);
  auto shape = argfore::ComplexityProfile::from_code(profile);
  if (!shape) {
    return fail(ARGFORE_E_INVALID_ARGUMENT,
                std::string("unknown profile \"") + profile +
                    "\"; expected one of s, v, b, d, vb, vd, db, vdb");
  }
  auto b = argfore::parse_band(band);
  if (!b) {
    return fail(ARGFORE_E_INVALID_ARGUMENT,
                std::string("unknown band \"") + band +
                    "\"; expected one of lt50, eq50, gt50");
  }
  return guard([&] {
    argfore::TemplateStore store = templates_path
                                       ? argfore::load_templates(templates_path)
                                       : argfore::default_templates();
    argfore::VariantSpec spec{question ? question : "tennis", *shape, *b};
    std::mt19937_64 rng(seed);
    auto v = argfore::generate(spec, store, rng);
    put(debate_json, argfore::acf_to_json(v.acf));
  });
}

argfore_status argfore_dataset_load(const char* path, argfore_dataset** out) {
  ARGFORE_REQUIRE(path);
  ARGFORE_REQUIRE(out);
  return guard([&] { *out = new argfore_dataset{argfore::load_dataset(path)}; });
}

argfore_status argfore_dataset_parse(const char* json, argfore_dataset** out) {
  ARGFORE_REQUIRE(json);
  ARGFORE_REQUIRE(out);
  return guard([&] { *out = new argfore_dataset{argfore::parse_dataset(json)}; });
}

void argfore_dataset_free(argfore_dataset* ds) { delete ds; }

size_t argfore_dataset_size(const argfore_dataset* ds) {
  return ds ? ds->records.size() : 0;
}

argfore_status argfore_dataset_analyze(const argfore_dataset* ds,
                                       const argfore_thresholds* cfg,
                                       const char* label, char** report_json,
                                       char** report_table) {
  ARGFORE_REQUIRE(ds);
  return guard([&] {
    argfore::ForecastBase base;
    auto tc = to_config(cfg, &base);
    auto report = argfore::accuracy_report(ds->records, tc, base.fallback);
    put(report_json, argfore::report_to_json(report));
    if (report_table) {
      *report_table = dup_string(
          argfore::render_report_table(report, label ? label : "dataset"));
    }
  });
}

argfore_status argfore_mcnemar(uint64_t yy, uint64_t yn, uint64_t ny,
                               uint64_t nn, double* chi2, double* p) {
  ARGFORE_REQUIRE(chi2);
  ARGFORE_REQUIRE(p);
  return guard([&] {
    auto r = argfore::mcnemar({yy, yn, ny, nn});
    *chi2 = r.chi2;
    *p = r.p;
  });
}

argfore_status argfore_ttest(double mean_a, double sd_a, uint64_t n_a,
                             double mean_b, double sd_b, uint64_t n_b,
                             double* t, double* df, double* p) {
  ARGFORE_REQUIRE(t);
  ARGFORE_REQUIRE(df);
  ARGFORE_REQUIRE(p);
  return guard([&] {
    auto r = argfore::t_test_one_sided({mean_a, sd_a, n_a}, {mean_b, sd_b, n_b});
    *t = r.t;
    *df = r.df;
    *p = r.p;
  });
}

argfore_status argfore_complexity_means(const char* counts_json, char** out) {
  ARGFORE_REQUIRE(counts_json);
  ARGFORE_REQUIRE(out);
  return guard([&] {
    auto counts = argfore::parse_shape_counts(counts_json, "<counts>");
    auto m = argfore::complexity_means(counts);
    auto group = [](const argfore::GroupSummary& g) {
      return argfore::Json{{"mean", g.mean}, {"sd", g.sd}, {"n", g.n}};
    };
    auto axis = [&](const argfore::AxisMeans& a) {
      return argfore::Json{{"complex", group(a.complex)},
                           {"non_complex", group(a.non_complex)}};
    };
    put(out, {{"vote", axis(m.vote)},
              {"breadth", axis(m.breadth)},
              {"depth", axis(m.depth)}});
  });
}

argfore_status argfore_server_create(const char* data_dir,
                                     double default_epsilon,
                                     argfore_server** out) {
  ARGFORE_REQUIRE(out);
  return guard([&] {
    auto s = std::make_unique<argfore_server>();
    s->store = std::make_unique<argfore::DebateStore>(
        data_dir ? std::filesystem::path(data_dir) : std::filesystem::path());
    s->server = std::make_unique<argfore::Server>(*s->store, default_epsilon);
    *out = s.release();
  });
}

argfore_status argfore_server_bind(argfore_server* server, const char* host,
                                   int port, int* bound) {
  ARGFORE_REQUIRE(server);
  ARGFORE_REQUIRE(host);
  return guard([&] {
    int p = server->server->bind(host, port);
    if (bound) *bound = p;
  });
}

argfore_status argfore_server_serve(argfore_server* server) {
  ARGFORE_REQUIRE(server);
  return guard([&] { server->server->serve(); });
}

argfore_status argfore_server_stop(argfore_server* server) {
  ARGFORE_REQUIRE(server);
  return guard([&] { server->server->stop(); });
}

void argfore_server_free(argfore_server* server) { delete server; }

}  // extern "C"
