// Copyright 2026 The Fatou Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "fatou/diophantine.hpp"
#include "fatou/complex.hpp"
#include "fatou/error.hpp"

namespace fatou {
namespace {

TEST(ContinuedFraction, ClassicalExpansions) {
  const auto golden = continued_fraction(Theta::golden(), 30);
  ASSERT_EQ(golden.partial_quotients.size(), 30u);
  for (auto a : golden.partial_quotients) EXPECT_EQ(a, 1);
  const auto silver = continued_fraction(Theta::silver(), 30);
  for (auto a : silver.partial_quotients) EXPECT_EQ(a, 2);
  const auto third = continued_fraction(1.0 / 3.0, 10);
  EXPECT_TRUE(third.rational);
  ASSERT_EQ(third.partial_quotients.size(), 1u);
  EXPECT_EQ(third.partial_quotients[0], 3);
}

TEST(ContinuedFraction, ConvergentsAlternateAndApproximate) {
  const Theta th = Theta::silver();
  const auto cf = continued_fraction(th, 20);
  const double t = th.to_double();
  for (std::size_t k = 0; k + 1 < cf.convergents.size(); ++k) {
    const auto& c = cf.convergents[k];
    const auto& n = cf.convergents[k + 1];
    const double e0 = t - static_cast<double>(c.p) / static_cast<double>(c.q);
    const double e1 = t - static_cast<double>(n.p) / static_cast<double>(n.q);
    if (std::abs(e1) > 1e-15) EXPECT_LT(e0 * e1, 0.0) << k;
    EXPECT_LT(std::abs(e0), 1.0 / (static_cast<double>(c.q) * static_cast<double>(n.q))) << k;
  }
}

TEST(Siegel, GoldenCertificates) {
  const Theta g = Theta::golden();
  const double c_star = max_c(g, 1.0, 100000);
  EXPECT_TRUE(check_siegel(g, c_star, 1.0, 100000).ok());
  EXPECT_TRUE(check_siegel(g, 1.0, 1.0, 100000).ok());
  const auto bad = check_siegel(g, 2.0, 1.0, 100000);
  EXPECT_FALSE(bad.ok());
  EXPECT_GT(bad.violation_count, 0);
  EXPECT_LT(bad.verified_up_to, 100000);
}

TEST(Siegel, HugeExponentIsSlackBeyondFirstTerm) {
  // k = 1 still needs c < |lambda - 1|; every later bound is below 2^-50 c.
  EXPECT_TRUE(check_siegel(Theta::from_double(0.1234567), 0.5, 50.0, 1000).ok());
  EXPECT_TRUE(check_siegel(Theta::silver(), 1.9, 50.0, 1000).ok());
  const auto first = check_siegel(Theta::silver(), 10.0, 50.0, 1000);
  EXPECT_EQ(first.violation_count, 1);
  EXPECT_EQ(first.violations.at(0).k, 1);
}

TEST(Siegel, RationalThetaRejected) {
  EXPECT_THROW(check_siegel(Theta::from_rational(1, 3), 0.0, 1.0, 10), DomainError);
}

TEST(MaxC, GoldenMinimaAtFibonacciDenominators) {
  const auto rep = max_c_report(Theta::golden(), 1.0, 100000);
  EXPECT_GT(rep.c, 0.0);
  const auto cf = continued_fraction(Theta::golden(), 40);
  std::vector<std::int64_t> fib;
  for (const auto& c : cf.convergents) fib.push_back(c.q);
  EXPECT_NE(std::find(fib.begin(), fib.end(), rep.argmin), fib.end());
  for (auto k : rep.record_denominators) EXPECT_NE(std::find(fib.begin(), fib.end(), k), fib.end()) << k;
}

TEST(MaxC, Monotonicity) {
  const Theta g = Theta::golden();
  // Equal for golden: the minimum sits at k = 1 where k^N = 1.
  EXPECT_GE(max_c(g, 2.0, 100000), max_c(g, 1.0, 100000));
  EXPECT_LE(max_c(g, 1.0, 100000), max_c(g, 1.0, 1000));
  const Theta s = Theta::silver();
  EXPECT_LT(max_c(s, 0.0, 1000000), 1e-4);
  EXPECT_LE(max_c(s, 0.0, 1000000), max_c(s, 0.0, 1000));
}

TEST(Reduction, SineIdentity) {
  const Theta g = Theta::golden();
  for (std::int64_t k = 1; k <= 1000000; k += 997) {
    const double lhs = 2.0 * std::abs(std::sin(kPi * centered_fraction(g, k)));
    const double rhs = distance_to_one(g, k);
    EXPECT_LE(std::abs(lhs - rhs), 1e-15 * rhs + 1e-300) << k;
  }
}

TEST(Reduction, QuadraticDescriptorMatchesDouble) {
  const Theta q = Theta::from_quadratic({-1, 5, 2});
  EXPECT_NEAR(q.to_double(), Theta::golden().to_double(), 1e-16);
  EXPECT_THROW(parse_theta("not-a-number"), DomainError);
}

TEST(Sector, UnitRadiusMatchesSiegel) {
  const auto rep = check_sector_bounds(Theta::golden(), {1.0}, 1000);
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_EQ(rep.rows[0].final_violations, 0);
  EXPECT_EQ(rep.rows[0].drift_count, 0);
  EXPECT_TRUE(check_siegel(Theta::golden(), rep.c_prime, 1.0, 1000).ok());
}

TEST(Sector, NearUnitRadiiHaveNoFinalViolations) {
  const auto rep = check_sector_bounds(Theta::golden(), {0.999, 1.001}, 1000);
  EXPECT_TRUE(rep.final_ok());
  for (const auto& row : rep.rows) EXPECT_EQ(row.final_violations, 0);
}

TEST(Sector, DriftReportedForSmallRadius) {
  const auto rep = check_sector_bounds(Theta::golden(), {0.9}, 10000);
  EXPECT_GT(rep.rows[0].drift_count, 0);
  EXPECT_EQ(rep.rows[0].first_drift_k, 7);  // 0.9^7 < 1/2 first
}

}  // namespace
}  // namespace fatou
