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

#include "argfore/stats.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "argfore/error.hpp"

namespace argfore {

namespace {

struct Tally {
  std::uint64_t ones = 0;
  std::uint64_t zeros = 0;

  void add(const ShapeCount& c) {
    ones += c.aligned;
    zeros += c.not_aligned;
  }

  GroupSummary summary(const char* label) const {
    const std::uint64_t n = ones + zeros;
    if (n == 0) {
      throw Error(ErrorCode::kUndefinedTest,
                  std::string("undefined mean: no samples in group ") + label);
    }
    GroupSummary s;
    s.n = n;
    s.mean = static_cast<double>(ones) / static_cast<double>(n);
    if (n >= 2) {
      // sum of squared deviations of 0/1 scores is n * mean * (1 - mean)
      double ss = static_cast<double>(n) * s.mean * (1.0 - s.mean);
      s.sd = std::sqrt(ss / static_cast<double>(n - 1));
    }
    return s;
  }
};

void check_group(const GroupSummary& g, const char* label) {
  if (g.n < 2) {
    std::ostringstream msg;
    msg << "group " << label << " needs n >= 2 (got " << g.n << ")";
    throw Error(ErrorCode::kDomain, msg.str());
  }
  if (!(g.sd >= 0.0) || !std::isfinite(g.sd) || !std::isfinite(g.mean)) {
    throw Error(ErrorCode::kDomain,
                std::string("group ") + label + " needs a finite mean and sd >= 0");
  }
}

}  // namespace

ContingencyTable contingency(std::span<const AlignmentSample> samples) {
  ContingencyTable t;
  for (const auto& s : samples) {
    if (s.model_coherent) {
      ++(s.user_coherent ? t.yy : t.yn);
    } else {
      ++(s.user_coherent ? t.ny : t.nn);
    }
  }
  return t;
}

double chi_square_1df_upper_tail(double chi2) {
  if (!(chi2 >= 0.0)) {
    throw Error(ErrorCode::kDomain, "chi-square statistic must be >= 0");
  }
  return std::erfc(std::sqrt(chi2 / 2.0));
}

McNemarResult mcnemar(const ContingencyTable& table) {
  const std::uint64_t discordant = table.yn + table.ny;
  if (discordant == 0) {
    throw Error(ErrorCode::kUndefinedTest,
                "McNemar's test is undefined with no discordant pairs");
  }
  const double diff =
      static_cast<double>(table.ny) - static_cast<double>(table.yn);
  McNemarResult r;
  r.chi2 = diff * diff / static_cast<double>(discordant);
  r.p = chi_square_1df_upper_tail(r.chi2);
  return r;
}

double student_t_upper_tail(double t, double df) {
  if (!(df > 0.0)) {
    throw Error(ErrorCode::kDomain, "degrees of freedom must be > 0");
  }
  boost::math::students_t dist(df);
  return boost::math::cdf(boost::math::complement(dist, t));
}

TTestResult t_test_one_sided(const GroupSummary& a, const GroupSummary& b) {
  check_group(a, "a");
  check_group(b, "b");
  const double va = a.sd * a.sd / static_cast<double>(a.n);
  const double vb = b.sd * b.sd / static_cast<double>(b.n);
  if (va + vb == 0.0) {
    throw Error(ErrorCode::kUndefinedTest,
                "t-test is undefined when both groups have zero variance");
  }
  TTestResult r;
  r.t = (a.mean - b.mean) / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) /
         (va * va / static_cast<double>(a.n - 1) +
          vb * vb / static_cast<double>(b.n - 1));
  r.p = student_t_upper_tail(r.t, r.df);
  return r;
}

ComplexityMeans complexity_means(std::span<const ShapeCount> counts) {
  Tally vote[2], breadth[2], depth[2];  // [0] non-complex, [1] complex
  for (const auto& c : counts) {
    vote[c.profile.vote_complex ? 1 : 0].add(c);
    breadth[c.profile.breadth_complex ? 1 : 0].add(c);
    depth[c.profile.depth_complex ? 1 : 0].add(c);
  }
  ComplexityMeans m;
  m.vote = {vote[1].summary("vote complex"), vote[0].summary("not vote complex")};
  m.breadth = {breadth[1].summary("breadth complex"),
               breadth[0].summary("not breadth complex")};
  m.depth = {depth[1].summary("depth complex"),
             depth[0].summary("not depth complex")};
  return m;
}

}  // namespace argfore
