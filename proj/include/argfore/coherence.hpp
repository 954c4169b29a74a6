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

// Prediction coherence: a forecaster's prediction on f must sit on the same
// side of xi2(f) as their derived strength sigma(f) sits relative to xi1(f).

#ifndef ARGFORE_COHERENCE_HPP_
#define ARGFORE_COHERENCE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "argfore/acf.hpp"

namespace argfore {

struct ThresholdConfig {
  PerArgument xi1{0.5, {}};
  PerArgument xi2{0.5, {}};
  double epsilon = 0.05;
  double sigma_eq_tol = 1e-9;

  // Throws Error(kDomain) unless every xi value lies strictly inside (0,1)
  // and both tolerances are non-negative.
  void check() const;
};

enum class Branch { kBelow, kAbove, kAtThreshold, kNoPrediction };

std::string_view branch_name(Branch branch);

struct CoherenceVerdict {
  UserId forecaster;
  ArgumentId argument;
  double sigma = 0.0;
  std::optional<double> prediction;
  bool coherent = false;
  Branch branch = Branch::kNoPrediction;
  double xi1 = 0.5;
  double xi2 = 0.5;
  double epsilon = 0.05;
};

// Which side of xi1 the strength falls on. Never returns kNoPrediction.
Branch strength_branch(double sigma, double xi1, double tolerance);

// The three-clause test on a single (sigma, prediction) pair.
bool prediction_coheres(Branch branch, double prediction, double xi2,
                        double epsilon);

// One verdict per forecasting argument, in debate order.
std::vector<CoherenceVerdict> check_coherence(
    const Acf& acf, const UserId& user, const ThresholdConfig& cfg = {},
    const ForecastBase& forecast_base = {});

// True iff at least one prediction exists and every predicted argument is
// coherent. Throws Error(kDomain) when verdicts span several forecasters.
bool forecaster_is_coherent(std::span<const CoherenceVerdict> verdicts);

struct ForecastSummary {
  ArgumentId argument;
  std::optional<double> raw_mean;
  std::optional<double> coherent_mean;
  std::size_t n_raw = 0;
  std::size_t n_coherent = 0;
};

// Raw mean over every prediction on f and the mean over forecasters whose
// verdict on f is coherent. Throws Error(kNotFound) if f is not a
// forecasting argument.
ForecastSummary aggregate_forecast(const Acf& acf, const ArgumentId& f,
                                   const ThresholdConfig& cfg = {},
                                   const ForecastBase& forecast_base = {});

}  // namespace argfore

#endif  // ARGFORE_COHERENCE_HPP_
