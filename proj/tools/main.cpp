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

// argfore: batch analysis, variant generation, statistics and the debate
// service. Exit status 0 on success, 1 when an input fails validation or an
// operation is undefined for it, 2 on a usage error.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "argfore.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int exit_code;
  std::string message;
};

// Owns a string returned by the library.
class CString {
 public:
  CString() = default;
  ~CString() { argfore_string_free(p_); }
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

void check(argfore_status st) {
  if (st == ARGFORE_OK) return;
  int code = st == ARGFORE_E_INVALID_ARGUMENT ? kExitUsage : kExitValidation;
  throw Failure{code, argfore_last_error()};
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt6(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_number_float()) return fmt6(v.get<double>());
  return v.dump();
}

Json rounded(const std::string& json) {
  CString out;
  check(argfore_json_round(json.c_str(), 6, out.out()));
  return Json::parse(out.str());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitValidation, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  out << text;
  if (!out) throw Failure{kExitValidation, "cannot write " + output};
}

struct ThresholdFlags {
  double xi1 = 0.5;
  std::string xi2 = "0.5";
  std::string xi2_map;
  double eps = 0.05;
  double base = 0.5;
};

void add_threshold_flags(CLI::App* cmd, ThresholdFlags& t,
                         const char* map_flag, const char* map_help) {
  cmd->add_option("--xi1", t.xi1, "strength midpoint")
      ->check(CLI::Range(0.0, 1.0).description("(0, 1)"));
  cmd->add_option("--xi2", t.xi2, "prediction midpoint, or \"auto\" to read the map");
  cmd->add_option(map_flag, t.xi2_map, map_help)->check(CLI::ExistingFile);
  cmd->add_option("--eps", t.eps, "tolerance around xi2 when sigma = xi1")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--base", t.base, "base score of forecasting arguments")
      ->check(CLI::Range(0.0, 1.0));
}

// Builds library thresholds; `map_text` keeps the map alive for the call.
argfore_thresholds to_thresholds(const ThresholdFlags& t, std::string& map_text) {
  argfore_thresholds out;
  argfore_thresholds_default(&out);
  out.xi1 = t.xi1;
  out.epsilon = t.eps;
  out.forecast_base = t.base;
  if (t.xi2 == "auto") {
    if (t.xi2_map.empty()) {
      throw Failure{kExitUsage, "--xi2 auto needs a prior map file"};
    }
  } else {
    char* end = nullptr;
    out.xi2 = std::strtod(t.xi2.c_str(), &end);
    if (t.xi2.empty() || *end != '\0' || !(out.xi2 > 0.0 && out.xi2 < 1.0)) {
      throw Failure{kExitUsage, "--xi2: value " + t.xi2 +
                                    " not in range (0, 1) and not \"auto\""};
    }
  }
  if (!t.xi2_map.empty()) {
    map_text = read_file(t.xi2_map);
    out.xi2_map_json = map_text.c_str();
  }
  if (!(out.xi1 > 0.0 && out.xi1 < 1.0)) {
    throw Failure{kExitUsage, "--xi1: value " + fmt6(out.xi1) + " not in range (0, 1)"};
  }
  return out;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string dataset;
  ThresholdFlags thresholds;
  bool json = false;
  std::string label = "dataset";
  std::string output;
};

void run_analyze(const AnalyzeArgs& a) {
  std::string map_text;
  auto cfg = to_thresholds(a.thresholds, map_text);
  argfore_dataset* ds = nullptr;
  check(argfore_dataset_load(a.dataset.c_str(), &ds));
  std::unique_ptr<argfore_dataset, void (*)(argfore_dataset*)> guard(
      ds, argfore_dataset_free);
  CString json, table;
  check(argfore_dataset_analyze(ds, &cfg, a.label.c_str(), json.out(), table.out()));
  if (a.json) {
    emit(rounded(json.str()).dump(2) + "\n", a.output);
  } else {
    emit(table.str(), a.output);
  }
}

// ---- debate ----------------------------------------------------------------

struct CoherenceArgs {
  std::string debate;
  std::string user;
  ThresholdFlags thresholds;
  bool json = false;
};

void run_debate_coherence(const CoherenceArgs& a) {
  std::string map_text;
  auto cfg = to_thresholds(a.thresholds, map_text);
  argfore_acf* acf = nullptr;
  check(argfore_acf_load(a.debate.c_str(), &acf));
  std::unique_ptr<argfore_acf, void (*)(argfore_acf*)> guard(acf, argfore_acf_free);

  CString verdicts, forecast;
  check(argfore_acf_check_coherence(acf, a.user.c_str(), &cfg, verdicts.out()));
  check(argfore_acf_forecast(acf, nullptr, &cfg, forecast.out()));
  Json v = rounded(verdicts.str());
  Json f = rounded(forecast.str());

  if (a.json) {
    std::cout << Json{{"coherence", v}, {"forecast", f}}.dump(2) << "\n";
    return;
  }
  std::cout << "user " << a.user << ": "
            << (v["coherent"].get<bool>() ? "coherent" : "incoherent") << "\n";
  for (const auto& x : v["verdicts"]) {
    std::cout << "  " << x["argument"].get<std::string>()
              << "  sigma " << fmt6(x["sigma"])
              << "  branch " << x["branch"].get<std::string>()
              << "  p " << fmt6(x["prediction"])
              << "  xi1 " << fmt6(x["xi1"]) << "  xi2 " << fmt6(x["xi2"])
              << "  " << (x["coherent"].get<bool>() ? "coherent" : "incoherent")
              << "\n";
  }
  for (const auto& s : f) {
    std::cout << "forecast " << s["argument"].get<std::string>()
              << "  raw " << fmt6(s["raw_mean"]) << " (n=" << s["n_raw"] << ")"
              << "  coherent " << fmt6(s["coherent_mean"])
              << " (n=" << s["n_coherent"] << ")\n";
  }
}

// ---- variants --------------------------------------------------------------

struct GenerateArgs {
  std::string profile;
  std::string band;
  std::uint64_t seed = 0;
  std::string question = "tennis";
  std::string templates;
  std::string output;
};

void run_variants_generate(const GenerateArgs& a) {
  CString doc;
  check(argfore_variant_generate(a.profile.c_str(), a.band.c_str(), a.seed,
                                 a.question.c_str(),
                                 a.templates.empty() ? nullptr : a.templates.c_str(),
                                 doc.out()));
  emit(rounded(doc.str()).dump(2) + "\n", a.output);
}

struct ClassifyArgs {
  std::string debate;
  std::string user;
  bool json = false;
};

void run_variants_classify(const ClassifyArgs& a) {
  argfore_acf* acf = nullptr;
  check(argfore_acf_load(a.debate.c_str(), &acf));
  std::unique_ptr<argfore_acf, void (*)(argfore_acf*)> guard(acf, argfore_acf_free);
  CString out;
  check(argfore_acf_classify(acf, a.user.c_str(), out.out()));
  Json p = Json::parse(out.str());
  if (a.json) {
    std::cout << p.dump(2) << "\n";
  } else {
    std::cout << p["name"].get<std::string>() << "\n";
  }
}

// ---- stats -----------------------------------------------------------------

struct McNemarArgs {
  std::uint64_t yy = 0, yn = 0, ny = 0, nn = 0;
  bool json = false;
};

void run_mcnemar(const McNemarArgs& a) {
  double chi2 = 0, p = 0;
  check(argfore_mcnemar(a.yy, a.yn, a.ny, a.nn, &chi2, &p));
  if (a.json) {
    Json doc{{"chi2", chi2}, {"p", p}};
    std::cout << rounded(doc.dump()).dump(2) << "\n";
  } else {
    std::cout << "chi2 " << fmt6(chi2) << "\np " << fmt6(p) << "\n";
  }
}

struct TTestArgs {
  double mean_a = 0, sd_a = 0, mean_b = 0, sd_b = 0;
  std::uint64_t n_a = 0, n_b = 0;
  bool json = false;
};

void run_ttest(const TTestArgs& a) {
  double t = 0, df = 0, p = 0;
  check(argfore_ttest(a.mean_a, a.sd_a, a.n_a, a.mean_b, a.sd_b, a.n_b, &t, &df, &p));
  if (a.json) {
    Json doc{{"t", t}, {"df", df}, {"p", p}};
    std::cout << rounded(doc.dump()).dump(2) << "\n";
  } else {
    std::cout << "t " << fmt6(t) << "\ndf " << fmt6(df) << "\np " << fmt6(p) << "\n";
  }
}

struct MeansArgs {
  std::string counts;
  bool json = false;
};

void run_complexity_means(const MeansArgs& a) {
  std::string text = read_file(a.counts);
  CString out;
  check(argfore_complexity_means(text.c_str(), out.out()));
  Json m = rounded(out.str());
  if (a.json) {
    std::cout << m.dump(2) << "\n";
    return;
  }
  std::printf("%-8s %10s %10s %6s %12s %10s %6s\n", "axis", "complex", "sd", "n",
              "non-complex", "sd", "n");
  for (const char* axis : {"vote", "breadth", "depth"}) {
    const Json& c = m[axis]["complex"];
    const Json& n = m[axis]["non_complex"];
    std::printf("%-8s %10s %10s %6s %12s %10s %6s\n", axis,
                fmt6(c["mean"]).c_str(), fmt6(c["sd"]).c_str(),
                c["n"].dump().c_str(), fmt6(n["mean"]).c_str(),
                fmt6(n["sd"]).c_str(), n["n"].dump().c_str());
  }
}

// ---- serve -----------------------------------------------------------------

struct ServeArgs {
  std::string addr;
  std::string data_dir;
  std::optional<double> eps;
};

void run_serve(ServeArgs a) {
  if (a.addr.empty()) {
    const char* env = std::getenv("ARGFORE_ADDR");
    a.addr = env ? env : "127.0.0.1:8080";
  }
  if (a.data_dir.empty()) {
    if (const char* env = std::getenv("ARGFORE_DATA_DIR")) a.data_dir = env;
  }
  double eps = 0.05;
  if (a.eps) {
    eps = *a.eps;
  } else if (const char* env = std::getenv("ARGFORE_EPSILON")) {
    char* end = nullptr;
    eps = std::strtod(env, &end);
    if (*env == '\0' || *end != '\0') {
      throw Failure{kExitUsage, "ARGFORE_EPSILON must be a number"};
    }
  }
  auto colon = a.addr.rfind(':');
  if (colon == std::string::npos) {
    throw Failure{kExitUsage, "--addr must be host:port"};
  }
  std::string host = a.addr.substr(0, colon);
  const std::string port_text = a.addr.substr(colon + 1);
  char* end = nullptr;
  long port = std::strtol(port_text.c_str(), &end, 10);
  if (port_text.empty() || *end != '\0' || port < 0 || port > 65535) {
    throw Failure{kExitUsage, "--addr: port must be an integer in [0, 65535]"};
  }

  // Block the stop signals here so only the waiter thread sees them.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  argfore_server* server = nullptr;
  check(argfore_server_create(a.data_dir.empty() ? nullptr : a.data_dir.c_str(),
                              eps, &server));
  std::unique_ptr<argfore_server, void (*)(argfore_server*)> guard(
      server, argfore_server_free);
  int bound = 0;
  check(argfore_server_bind(server, host.c_str(), static_cast<int>(port), &bound));
  std::cerr << "listening on " << host << ":" << bound << "\n";

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&stop_signals, &sig);
    argfore_server_stop(server);
  });
  check(argfore_server_serve(server));
  // serve() returned without a signal (e.g. listener failure); release the
  // waiter before joining.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Argumentative forecasting: coherence analysis and debate service"};
  app.set_version_flag("--version", argfore_version());
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "accuracy of raw vs coherent forecasts");
  analyze_cmd->add_option("dataset", analyze.dataset, "dataset file")
      ->required()
      ->check(CLI::ExistingFile);
  add_threshold_flags(analyze_cmd, analyze.thresholds, "--priors",
                      "per-question xi2 map (JSON object)");
  analyze_cmd->add_flag("--json", analyze.json, "print the report as JSON");
  analyze_cmd->add_option("--label", analyze.label, "row label of the table");
  analyze_cmd->add_option("-o,--output", analyze.output, "write to a file");

  auto* debate_cmd = app.add_subcommand("debate", "debate files");
  debate_cmd->require_subcommand(1);
  CoherenceArgs coherence;
  auto* coherence_cmd =
      debate_cmd->add_subcommand("coherence", "verdicts and forecast summary");
  coherence_cmd->add_option("debate", coherence.debate, "debate file")
      ->required()
      ->check(CLI::ExistingFile);
  coherence_cmd->add_option("--user", coherence.user, "forecaster")->required();
  add_threshold_flags(coherence_cmd, coherence.thresholds, "--xi2-map",
                      "per-argument xi2 map (JSON object)");
  coherence_cmd->add_flag("--json", coherence.json, "print JSON");

  auto* variants_cmd = app.add_subcommand("variants", "debate variants");
  variants_cmd->require_subcommand(1);
  GenerateArgs gen;
  auto* gen_cmd = variants_cmd->add_subcommand("generate", "build a debate variant");
  gen_cmd->add_option("--profile", gen.profile, "complexity profile")
      ->required()
      ->check(CLI::IsMember({"s", "v", "b", "d", "vb", "vd", "db", "vdb"}));
  gen_cmd->add_option("--band", gen.band, "prediction band")
      ->required()
      ->check(CLI::IsMember({"lt50", "eq50", "gt50"}));
  gen_cmd->add_option("--seed", gen.seed, "random seed")->required();
  gen_cmd->add_option("--question", gen.question, "template question id");
  gen_cmd->add_option("--templates", gen.templates, "template file")
      ->check(CLI::ExistingFile);
  gen_cmd->add_option("-o,--output", gen.output, "write to a file");
  ClassifyArgs cls;
  auto* cls_cmd = variants_cmd->add_subcommand("classify", "complexity profile of a debate");
  cls_cmd->add_option("debate", cls.debate, "debate file")
      ->required()
      ->check(CLI::ExistingFile);
  cls_cmd->add_option("--user", cls.user, "forecaster")->required();
  cls_cmd->add_flag("--json", cls.json, "print JSON");

  auto* stats_cmd = app.add_subcommand("stats", "statistical tests");
  stats_cmd->require_subcommand(1);
  McNemarArgs mc;
  auto* mc_cmd = stats_cmd->add_subcommand("mcnemar", "McNemar test on a 2x2 table");
  mc_cmd->add_option("--yy", mc.yy)->required();
  mc_cmd->add_option("--yn", mc.yn)->required();
  mc_cmd->add_option("--ny", mc.ny)->required();
  mc_cmd->add_option("--nn", mc.nn)->required();
  mc_cmd->add_flag("--json", mc.json, "print JSON");
  TTestArgs tt;
  auto* tt_cmd = stats_cmd->add_subcommand("ttest", "one-sided Welch test, H1: mean a > mean b");
  tt_cmd->add_option("--mean-a", tt.mean_a)->required();
  tt_cmd->add_option("--sd-a", tt.sd_a)->required()->check(CLI::NonNegativeNumber);
  tt_cmd->add_option("--n-a", tt.n_a)->required()->check(CLI::Range(2, 1 << 30));
  tt_cmd->add_option("--mean-b", tt.mean_b)->required();
  tt_cmd->add_option("--sd-b", tt.sd_b)->required()->check(CLI::NonNegativeNumber);
  tt_cmd->add_option("--n-b", tt.n_b)->required()->check(CLI::Range(2, 1 << 30));
  tt_cmd->add_flag("--json", tt.json, "print JSON");
  MeansArgs means;
  auto* means_cmd = stats_cmd->add_subcommand("complexity-means",
                                              "aligned rate per complexity axis");
  means_cmd->add_option("counts", means.counts, "shape count file")
      ->required()
      ->check(CLI::ExistingFile);
  means_cmd->add_flag("--json", means.json, "print JSON");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "run the debate service");
  serve_cmd->add_option("--addr", serve.addr, "host:port (default $ARGFORE_ADDR)");
  serve_cmd->add_option("--data-dir", serve.data_dir,
                        "event log directory (default $ARGFORE_DATA_DIR)");
  serve_cmd->add_option("--eps", serve.eps, "default epsilon (default $ARGFORE_EPSILON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze_cmd) run_analyze(analyze);
    else if (*coherence_cmd) run_debate_coherence(coherence);
    else if (*gen_cmd) run_variants_generate(gen);
    else if (*cls_cmd) run_variants_classify(cls);
    else if (*mc_cmd) run_mcnemar(mc);
    else if (*tt_cmd) run_ttest(tt);
    else if (*means_cmd) run_complexity_means(means);
    else if (*serve_cmd) run_serve(serve);
  } catch (const Failure& f) {
    std::cerr << "argfore: " << f.message << "\n";
    return f.exit_code;
  }
  return 0;
}
