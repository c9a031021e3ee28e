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
#include <map>
#include <random>
#include <utility>

#include <gtest/gtest.h>

#include "fatou/error.hpp"
#include "fatou/series.hpp"

namespace fatou {
namespace {

Series2 random_series(int order, unsigned seed, bool zero_constant) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Series2 s(order);
  for (auto& c : s.data()) c = {u(gen), u(gen)};
  if (zero_constant) s.set(0, 0, {});
  return s;
}

double max_diff(const Series2& a, const Series2& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

TEST(Series2, IndexIsTriangularByDegree) {
  EXPECT_EQ(Series2::index(0, 0), 0u);
  EXPECT_EQ(Series2::index(1, 0), 1u);
  EXPECT_EQ(Series2::index(0, 1), 2u);
  EXPECT_EQ(Series2::index(2, 0), 3u);
  EXPECT_EQ(Series2::index(0, 3), 9u);
  EXPECT_EQ(Series2::size_for(4), 15u);
}

TEST(Series2, MultiplicativeIdentity) {
  const Series2 a = random_series(6, 1, false);
  EXPECT_EQ(max_diff(a * Series2::constant(6, 1.0), a), 0.0);
}

TEST(Series2, BinomialSquare) {
  const Series2 s = Series2::variable(2, 0) + Series2::variable(2, 1);
  const Series2 sq = s * s;
  EXPECT_EQ(sq.coeff(2, 0), Complex(1.0));
  EXPECT_EQ(sq.coeff(1, 1), Complex(2.0));
  EXPECT_EQ(sq.coeff(0, 2), Complex(1.0));
  EXPECT_EQ(sq.coeff(1, 0), Complex(0.0));
}

TEST(Series2, RingAxiomsAtOrderTwenty) {
  const Series2 a = random_series(20, 2, false);
  const Series2 b = random_series(20, 3, false);
  const Series2 c = random_series(20, 4, false);
  const double scale = std::max(1.0, ((a * b) * c).max_abs(0, 20));
  EXPECT_LE(max_diff((a * b) * c, a * (b * c)), 1e-13 * scale);
  EXPECT_LE(max_diff(a * (b + c), a * b + a * c), 1e-13 * scale);
  EXPECT_LE(max_diff(a * b, b * a), 1e-13 * scale);
}

TEST(Series2, ExpOfZeroIsOne) {
  const Series2 e = series2_exp(Series2(5));
  EXPECT_EQ(e.coeff(0, 0), Complex(1.0));
  EXPECT_EQ(e.max_abs(1, 5), 0.0);
}

TEST(Series2, ExpOfZMatchesTaylor) {
  const Series2 e = series2_exp(Series2::variable(3, 0));
  EXPECT_NEAR(std::abs(e.coeff(0, 0) - 1.0), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(e.coeff(1, 0) - 1.0), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(e.coeff(2, 0) - 0.5), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(e.coeff(3, 0) - 1.0 / 6.0), 0.0, 1e-16);
}

TEST(Series2, ExpCrossTerm) {
  Series2 a = Series2::variable(4, 0);
  a.set(2, 1, 1.0);
  EXPECT_NEAR(std::abs(series2_exp(a).coeff(2, 1) - 1.0), 0.0, 1e-15);
}

TEST(Series2, ExpRejectsConstantTerm) {
  EXPECT_THROW(series2_exp(Series2::constant(3, 1.0)), DomainError);
}

TEST(Series2, ExpTimesExpOfNegativeIsOne) {
  for (unsigned seed = 10; seed < 15; ++seed) {
    const Series2 a = random_series(15, seed, true);
    const Series2 p = series2_exp(a) * series2_exp(-a);
    EXPECT_NEAR(std::abs(p.coeff(0, 0) - 1.0), 0.0, 1e-12);
    EXPECT_LE(p.max_abs(1, 15), 1e-12);
  }
}

TEST(Series2, ExpAnyScalesByConstant) {
  Series2 a = random_series(6, 21, true);
  Series2 b = a;
  b.set(0, 0, Complex(0.3, -0.2));
  const Series2 expected = series2_exp(a) * std::exp(Complex(0.3, -0.2));
  EXPECT_LE(max_diff(series2_exp_any(b), expected), 1e-14);
}

TEST(Series2, ReciprocalInverts) {
  Series2 a = random_series(10, 22, false);
  a.set(0, 0, Complex(2.0, 1.0));
  const Series2 p = a * series2_reciprocal(a);
  EXPECT_NEAR(std::abs(p.coeff(0, 0) - 1.0), 0.0, 1e-14);
  EXPECT_LE(p.max_abs(1, 10), 1e-12);
  EXPECT_THROW(series2_reciprocal(Series2(3)), DomainError);
}

TEST(Series2, PowMatchesRepeatedProduct) {
  const Series2 a = random_series(8, 23, false);
  EXPECT_LE(max_diff(series2_pow(a, 3), a * a * a), 1e-13);
  EXPECT_EQ(series2_pow(a, 0).coeff(0, 0), Complex(1.0));
}

TEST(Series2, DivideByZ) {
  const Series2 z = Series2::variable(6, 0);
  const Series2 a = random_series(6, 24, false);
  const Series2 q = series2_divide_z(z * z * a, 2);
  EXPECT_EQ(q.order(), 4);
  EXPECT_LE(max_diff(q, a.with_order(4)), 1e-15);
  EXPECT_THROW(series2_divide_z(a, 1), DomainError);
}

TEST(Series2, ComposeWithIdentityIsIdentity) {
  const Series2 s = random_series(7, 25, false);
  EXPECT_LE(max_diff(series2_compose(s, Series2::variable(7, 0), Series2::variable(7, 1)), s), 1e-15);
  EXPECT_THROW(series2_compose(s, Series2::constant(7, 1.0), Series2::variable(7, 1)), DomainError);
}

TEST(Series2, EvalMatchesHomogeneousSum) {
  const Series2 s = random_series(6, 26, false);
  const Complex z(0.3, 0.1);
  const Complex w(-0.2, 0.4);
  Complex expected{};
  for (int d = 0; d <= 6; ++d) {
    for (int l2 = 0; l2 <= d; ++l2) expected += s.coeff(d - l2, l2) * std::pow(z, d - l2) * std::pow(w, l2);
  }
  EXPECT_NEAR(std::abs(s.eval(z, w) - expected), 0.0, 1e-14);
}

TEST(Series2, NonFiniteCoefficientFailsFast) {
  Series2 s(2);
  s.set(1, 1, Complex(std::nan(""), 0.0));
  EXPECT_THROW(s.check_finite("test"), NonFiniteError);
}

TEST(Series1, HandHorner) {
  Series1 psi(2);
  psi[1] = {1.0, 0.0};
  psi[2] = {2.0, 1.0};
  const ComplexPoint2 v = series1_eval(psi, 0.1);
  EXPECT_NEAR(std::abs(v.z1 - 0.12), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(v.z2 - 0.01), 0.0, 1e-16);
}

TEST(Series1, EvalAtZeroIsConstantTerm) {
  Series1 psi(3);
  psi[0] = {Complex(1.0, 2.0), Complex(3.0)};
  psi[2] = {5.0, 6.0};
  EXPECT_EQ(series1_eval(psi, 0.0), psi[0]);
}

TEST(Series1, ComposeWithIdentityJet) {
  Series1 psi(5);
  for (int k = 1; k <= 5; ++k) psi[k] = {Complex(k, 1), Complex(-k, 0.5)};
  const Series1 out = series1_compose_map(MapJet::identity(5), psi);
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(out[k], psi[k]);
}

TEST(Series1, ComposeWithLinearJet) {
  const Complex lambda = std::polar(1.0, 0.7);
  const MapJet F{Series2::variable(3, 0) * lambda, Series2::variable(3, 1)};
  Series1 psi(3);
  psi[1] = {1.0, 0.0};
  const Series1 out = series1_compose_map(F, psi);
  EXPECT_EQ(out[1].z1, lambda);
  EXPECT_EQ(out[1].z2, Complex(0.0));
  EXPECT_EQ(out[2], ComplexPoint2{});
}

TEST(Series1, ComposeIsLinearInMap) {
  const MapJet F{random_series(6, 30, true), random_series(6, 31, true)};
  const MapJet G{random_series(6, 32, true), random_series(6, 33, true)};
  const MapJet sum{F.first + G.first, F.second + G.second};
  Series1 psi(6);
  for (int k = 1; k <= 6; ++k) psi[k] = {Complex(0.1 * k, 0.2), Complex(0.3, -0.1 * k)};
  const Series1 a = series1_compose_map(F, psi);
  const Series1 b = series1_compose_map(G, psi);
  const Series1 c = series1_compose_map(sum, psi);
  for (int k = 0; k <= 6; ++k) EXPECT_LE(norm_max(c[k] - (a[k] + b[k])), 1e-14);
}

TEST(Series1, ComposeRejectsConstantTerm) {
  Series1 psi(2);
  psi[0] = {1.0, 0.0};
  EXPECT_THROW(series1_compose_map(MapJet::identity(2), psi), DomainError);
}

}  // namespace
}  // namespace fatou
