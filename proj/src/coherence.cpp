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

#include "argfore/coherence.hpp"

#include <cmath>
#include <sstream>

#include "argfore/error.hpp"

namespace argfore {

namespace {

void check_open_unit(const PerArgument& values, const char* name) {
  auto bad = [&](double v) { return !(v > 0.0 && v < 1.0); };
  std::ostringstream msg;
  if (bad(values.fallback)) {
    msg << name << " " << values.fallback << " outside (0, 1)";
    throw Error(ErrorCode::kDomain, msg.str());
  }
  for (const auto& [id, v] : values.values) {
    if (bad(v)) {
      msg << name << "(" << id << ") = " << v << " outside (0, 1)";
      throw Error(ErrorCode::kDomain, msg.str());
    }
  }
}

}  // namespace

void ThresholdConfig::check() const {
  check_open_unit(xi1, "xi1");
  check_open_unit(xi2, "xi2");
  if (!(epsilon >= 0.0)) {
    throw Error(ErrorCode::kDomain, "epsilon must be >= 0");
  }
  if (!(sigma_eq_tol >= 0.0)) {
    throw Error(ErrorCode::kDomain, "sigma tolerance must be >= 0");
  }
}

std::string_view branch_name(Branch branch) {
  switch (branch) {
    case Branch::kBelow: return "below";
    case Branch::kAbove: return "above";
    case Branch::kAtThreshold: return "at_threshold";
    case Branch::kNoPrediction: return "no_prediction";
  }
  return "no_prediction";
}

Branch strength_branch(double sigma, double xi1, double tolerance) {
  if (std::abs(sigma - xi1) <= tolerance) return Branch::kAtThreshold;
  return sigma < xi1 ? Branch::kBelow : Branch::kAbove;
}

bool prediction_coheres(Branch branch, double prediction, double xi2,
                        double epsilon) {
  switch (branch) {
    case Branch::kBelow: return prediction < xi2;
    case Branch::kAbove: return prediction > xi2;
    case Branch::kAtThreshold:
      return prediction >= xi2 - epsilon && prediction <= xi2 + epsilon;
    case Branch::kNoPrediction: return false;
  }
  return false;
}

std::vector<CoherenceVerdict> check_coherence(
    const Acf& acf, const UserId& user, const ThresholdConfig& cfg,
    const ForecastBase& forecast_base) {
  cfg.check();
  StrengthMap sigma = forecaster_strengths(acf, user, forecast_base);

  std::vector<CoherenceVerdict> out;
  out.reserve(acf.forecasting_args.size());
  for (const auto& f : acf.forecasting_args) {
    CoherenceVerdict v;
    v.forecaster = user;
    v.argument = f.id;
    v.sigma = sigma.at(f.id);
    v.prediction = acf.prediction(user, f.id);
    v.xi1 = cfg.xi1(f.id);
    v.xi2 = cfg.xi2(f.id);
    v.epsilon = cfg.epsilon;
    if (v.prediction) {
      v.branch = strength_branch(v.sigma, v.xi1, cfg.sigma_eq_tol);
      v.coherent = prediction_coheres(v.branch, *v.prediction, v.xi2,
                                      cfg.epsilon);
    }
    out.push_back(std::move(v));
  }
  return out;
}

bool forecaster_is_coherent(std::span<const CoherenceVerdict> verdicts) {
  bool any_prediction = false;
  for (const auto& v : verdicts) {
    if (v.forecaster != verdicts.front().forecaster) {
      throw Error(ErrorCode::kDomain,
                  "verdicts belong to several forecasters (\"" +
                      verdicts.front().forecaster.str() + "\", \"" +
                      v.forecaster.str() + "\")");
    }
    if (v.branch == Branch::kNoPrediction) continue;
    any_prediction = true;
    if (!v.coherent) return false;
  }
  return any_prediction;
}

ForecastSummary aggregate_forecast(const Acf& acf, const ArgumentId& f,
                                   const ThresholdConfig& cfg,
                                   const ForecastBase& forecast_base) {
  if (!acf.is_forecasting(f)) {
    throw Error(ErrorCode::kNotFound,
                "unknown forecasting argument \"" + f.str() + "\"");
  }
  cfg.check();

  ForecastSummary out;
  out.argument = f;
  double raw_sum = 0.0;
  double coherent_sum = 0.0;
  for (const auto& user : acf.forecasters) {
    auto p = acf.prediction(user, f);
    if (!p) continue;
    ++out.n_raw;
    raw_sum += *p;
    double sigma = forecaster_strengths(acf, user, forecast_base).at(f);
    Branch branch = strength_branch(sigma, cfg.xi1(f), cfg.sigma_eq_tol);
    if (prediction_coheres(branch, *p, cfg.xi2(f), cfg.epsilon)) {
      ++out.n_coherent;
      coherent_sum += *p;
    }
  }
  if (out.n_raw > 0) out.raw_mean = raw_sum / static_cast<double>(out.n_raw);
  if (out.n_coherent > 0) {
    out.coherent_mean = coherent_sum / static_cast<double>(out.n_coherent);
  }
  return out;
}

}  // namespace argfore
