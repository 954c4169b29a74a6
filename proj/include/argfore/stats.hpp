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

#ifndef ARGFORE_STATS_HPP_
#define ARGFORE_STATS_HPP_

#include <cstdint>
#include <span>

#include "argfore/variants.hpp"

namespace argfore {

// Rows: model says coherent (y/n). Columns: user says coherent (y/n).
struct ContingencyTable {
  std::uint64_t yy = 0;
  std::uint64_t yn = 0;
  std::uint64_t ny = 0;
  std::uint64_t nn = 0;

  std::uint64_t total() const { return yy + yn + ny + nn; }
  friend bool operator==(const ContingencyTable&,
                         const ContingencyTable&) = default;
};

ContingencyTable contingency(std::span<const AlignmentSample> samples);

struct McNemarResult {
  double chi2 = 0.0;
  double p = 1.0;
};

// Uncorrected statistic (ny - yn)^2 / (ny + yn), chi-square with one degree
// of freedom. Throws Error(kUndefinedTest) when yn + ny == 0.
McNemarResult mcnemar(const ContingencyTable& table);

// P(X > chi2) for X ~ chi-square(1), via erfc(sqrt(chi2 / 2)).
double chi_square_1df_upper_tail(double chi2);

struct GroupSummary {
  double mean = 0.0;
  double sd = 0.0;
  std::uint64_t n = 0;
};

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 0.5;
};

// Welch two-sample test of H1: mean(a) > mean(b) from summary statistics.
// Throws Error(kDomain) if a group has n < 2 or a negative sd,
// Error(kUndefinedTest) if both variances are zero.
TTestResult t_test_one_sided(const GroupSummary& a, const GroupSummary& b);

// P(T > t) for Student's t with `df` degrees of freedom.
double student_t_upper_tail(double t, double df);

struct ShapeCount {
  ComplexityProfile profile;
  std::uint64_t aligned = 0;
  std::uint64_t not_aligned = 0;
};

struct AxisMeans {
  GroupSummary complex;
  GroupSummary non_complex;
};

struct ComplexityMeans {
  AxisMeans vote;
  AxisMeans breadth;
  AxisMeans depth;
};

// Pools shape counts into complex / non-complex groups per axis, scoring an
// aligned pair as 1 and a misaligned pair as 0. sd is the sample standard
// deviation of those 0/1 scores. Throws Error(kUndefinedTest) if a group is
// empty.
ComplexityMeans complexity_means(std::span<const ShapeCount> counts);

}  // namespace argfore

#endif  // ARGFORE_STATS_HPP_
