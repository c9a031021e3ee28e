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

#include <cmath>

#include <gtest/gtest.h>

#include "fatou/diophantine.hpp"
#include "fatou/error.hpp"
#include "fatou/linearization.hpp"

namespace fatou {
namespace {

Complex golden_lambda(double r = 1.0) { return std::polar(r, kTwoPi * Theta::golden().to_double()); }

LinearizationOptions double_precision() {
  LinearizationOptions o;
  o.precision = Precision::Double;
  return o;
}

TEST(SmallDivisors, ResonanceIsRejected) {
  EXPECT_THROW(compute_small_divisors({-1.0, 0.0}, 4), ZeroDivisorError);
}

TEST(SmallDivisors, GoldenValuesAndIdentity) {
  const Complex lam = golden_lambda();
  const auto d = compute_small_divisors(lam, 200);
  const double g = Theta::golden().to_double();
  EXPECT_NEAR(std::abs(d.eps2[2]), 2.0 * std::abs(std::sin(kTwoPi * g)), 1e-14);
  for (int n = 3; n <= 200; ++n) EXPECT_LT(std::abs(d.eps1[n] - lam * d.eps2[n - 1]), 1e-13) << n;
  EXPECT_GT(d.smallest(), 0.0);
}

TEST(Majorant, LowOrderValues) {
  const auto d = compute_small_divisors(golden_lambda(), 10);
  const double M = 0.7;
  const auto sigma = majorant_sigma(M, d, 10);
  EXPECT_NEAR(sigma[2], 3.0 * M / d.eps_min[2], 1e-14 * sigma[2]);
  const auto zero = majorant_sigma(0.0, d, 10);
  for (int n = 2; n <= 10; ++n) EXPECT_EQ(zero[n], 0.0);

  const auto split = majorant_split(M, d, 10);
  EXPECT_NEAR(split.eta[2], 3.0 * M, 1e-14);
  EXPECT_NEAR(split.delta[2], 1.0 / d.eps_min[2], 1e-14 * split.delta[2]);
  EXPECT_NEAR(sigma[2], split.eta[2] * split.delta[2], 1e-13 * sigma[2]);
  for (int n = 1; n <= 10; ++n) {
    EXPECT_GT(split.eta[n], 0.0);
    EXPECT_GT(split.delta[n], 0.0);
    EXPECT_LE(sigma[n], split.eta[n] * split.delta[n] * (1.0 + 1e-12)) << n;
  }
}

TEST(EtaRadius, FoldPointAndInverse) {
  const auto er = eta_radius(1.0);
  EXPECT_EQ(er.eta(0.0), 0.0);
  EXPECT_GT(er.b, 0.0);
  EXPECT_NEAR(er.b * er.w_star, 1.0, 1e-14);
  const double w = 1e-6;
  EXPECT_NEAR(er.eta(w) / w, 1.0, 1e-5);
}

TEST(EtaRadius, RecursionGrowthBoundedByFoldRate) {
  const auto d = compute_small_divisors(golden_lambda(), 200);
  const auto split = majorant_split(1.0, d, 200);
  const auto er = eta_radius(1.0);
  double C = 0.0;
  for (int n = 1; n <= 50; ++n) C = std::max(C, split.eta[n] / std::pow(er.b, n));
  for (int n = 1; n <= 200; ++n) EXPECT_LE(split.eta[n], 1.01 * C * std::pow(er.b, n)) << n;
}

TEST(SolvePsi, LinearMapGivesStraightLine) {
  const Complex lam = golden_lambda();
  const auto res = solve_psi(linear_test_jet(lam), lam, 20, double_precision());
  EXPECT_EQ(res.psi[0], ComplexPoint2{});
  EXPECT_EQ(res.psi[1], (ComplexPoint2{1.0, 0.0}));
  for (int n = 2; n <= 20; ++n) EXPECT_EQ(res.psi[n], ComplexPoint2{}) << n;
  EXPECT_EQ(residual(res.psi, linear_test_jet(lam), lam, 0.5), 0.0);
  const auto check = exponential_bound_check(res, res.split());
  EXPECT_TRUE(check.ok);
}

TEST(SolvePsi, PureSecondCoordinateSquareGivesZeroPsi2) {
  const Complex lam = golden_lambda();
  MapJet F = MapJet::identity(4);
  F.first *= lam;
  F.first.at(0, 2) = 1.0;  // (lambda z1 + z2^2, z2)
  const auto res = solve_psi(F, lam, 4, double_precision());
  EXPECT_EQ(res.psi[2], ComplexPoint2{});
}

TEST(SolvePsi, QuadraticFamilyGolden) {
  const Complex lam = golden_lambda();
  const MapJet F = quadratic_test_jet(lam);
  const auto res = solve_psi(F, lam, 40, double_precision());
  EXPECT_EQ(res.psi[1], (ComplexPoint2{1.0, 0.0}));
  for (int n = 2; n <= 40; ++n) EXPECT_LE(norm_max(res.psi[n]), res.sigma[n] * (1.0 + 1e-12)) << n;
  EXPECT_LT(res.residual, 1e-10);
  EXPECT_TRUE(exponential_bound_check(res, res.split()).ok);
  const auto cf = max_c(Theta::golden(), 1.0, 40);
  EXPECT_GE(degree_bound_margin(res.delta, cf, 1.0), 0.0);
}

TEST(SolvePsi, TriangularRecursionIsDeterministic) {
  const Complex lam = golden_lambda();
  const MapJet F = quadratic_test_jet(lam);
  const auto small = solve_psi(F, lam, 20, double_precision());
  const auto large = solve_psi(F, lam, 40, double_precision());
  for (int n = 0; n <= 20; ++n) {
    EXPECT_EQ(small.psi[n].z1, large.psi[n].z1) << n;
    EXPECT_EQ(small.psi[n].z2, large.psi[n].z2) << n;
  }
}

TEST(SolvePsi, ResidualDecaysWithDegree) {
  const Complex lam = golden_lambda();
  const MapJet F = quadratic_test_jet(lam);
  const auto r40 = solve_psi(F, lam, 40, double_precision());
  const auto r20 = solve_psi(F, lam, 20, double_precision());
  const double rho = r40.rho_estimate;
  // At rho / 2 both truncations sit at rounding level, so the decay is
  // measured further out where the D = 20 tail is visible.
  EXPECT_LT(residual(r20.psi, F, lam, rho / 2.0), 1e-15);
  EXPECT_LT(residual(r40.psi, F, lam, rho / 2.0), 1e-15);
  const double e20 = residual(r20.psi, F, lam, 4.0 * rho);
  const double e40 = residual(r40.psi, F, lam, 4.0 * rho);
  EXPECT_GT(e20, 1e-12);
  EXPECT_LT(e40, e20 / 1e3);
}

TEST(SolvePsi, ResidualScalesWithTruncationOrder) {
  const Complex lam = golden_lambda();
  const MapJet F = quadratic_test_jet(lam);
  const int D = 6;
  const auto res = solve_psi(F, lam, D, double_precision());
  const double rho = res.rho_estimate;
  const double e2 = residual(res.psi, F, lam, rho / 2.0);
  const double e4 = residual(res.psi, F, lam, rho / 4.0);
  const double e8 = residual(res.psi, F, lam, rho / 8.0);
  const double s1 = std::log2(e2 / e4);
  const double s2 = std::log2(e4 / e8);
  EXPECT_NEAR(s1, D + 1, 1.0);
  EXPECT_NEAR(s2, D + 1, 1.0);
}

TEST(SolvePsi, NormalizesAGeneralLinearPart) {
  const Complex lam = golden_lambda();
  const MapJet F = quadratic_test_jet(lam);
  // G = A F A^{-1} with A = [[1, a], [b, 1]].
  const int order = F.order();
  const Complex a = 0.3;
  const Complex b = 0.2;
  const Complex det = 1.0 - a * b;
  const Series2 z = Series2::variable(order, 0);
  const Series2 w = Series2::variable(order, 1);
  const Series2 u = (z - a * w) * (1.0 / det);
  const Series2 v = (w - b * z) * (1.0 / det);
  const Series2 f1 = series2_compose(F.first, u, v);
  const Series2 f2 = series2_compose(F.second, u, v);
  const MapJet G{f1 + a * f2, b * f1 + f2};
  const auto res = solve_psi(G, lam, 20, double_precision());
  EXPECT_LT(residual(res.psi_original(), G, lam, res.rho_estimate / 2.0), 1e-10);
}

TEST(SolvePsi, DoubleDoubleAgreesWithDouble) {
  const Complex lam = golden_lambda();
  const MapJet F = quadratic_test_jet(lam);
  LinearizationOptions dd;
  dd.precision = Precision::DoubleDouble;
  const auto a = solve_psi(F, lam, 20, double_precision());
  const auto b = solve_psi(F, lam, 20, dd);
  EXPECT_EQ(b.precision_used, Precision::DoubleDouble);
  for (int n = 2; n <= 20; ++n) EXPECT_LT(norm_max(a.psi[n] - b.psi[n]), 1e-10 * (1.0 + norm_max(b.psi[n]))) << n;
}

TEST(Sweep, LinearFamilyHasZeroDerivative) {
  const auto sweep = parameter_sweep(linear_test_jet, Theta::golden(), {0.995, 1.0, 1.005}, 10, double_precision());
  ASSERT_EQ(sweep.d_psi_dr.size(), 1u);
  for (const auto& c : sweep.d_psi_dr[0].data()) EXPECT_EQ(c, ComplexPoint2{});
}

TEST(Sweep, QuadraticFamilyIsSmoothAndUniform) {
  const std::vector<double> rs = {0.995, 1.0, 1.005};
  const auto sweep = parameter_sweep(quadratic_test_jet, Theta::golden(), rs, 20, double_precision());
  EXPECT_TRUE(sweep.smoothness_ok);
  EXPECT_GT(sweep.ratios_tested, 0);
  ASSERT_EQ(sweep.d_psi_dr.size(), 1u);
  const auto& lo = sweep.entries[0].result->psi;
  const auto& mid = sweep.entries[1].result->psi;
  for (int n = 2; n <= 10; ++n) {
    const double L = norm_max(sweep.d_psi_dr[0][n]);
    EXPECT_LE(norm_max(mid[n] - lo[n]), 1.5 * L * 0.005 + 1e-14) << n;
  }
}

TEST(Sweep, RatesUniformAcrossRadii) {
  const auto sweep =
      parameter_sweep(quadratic_test_jet, Theta::golden(), {0.99, 1.0, 1.01}, 30, double_precision());
  EXPECT_TRUE(sweep.rates_uniform);
  EXPECT_LE(sweep.rate_spread, 1.2);
}

}  // namespace
}  // namespace fatou
