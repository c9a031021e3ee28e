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
#include <random>

#include <gtest/gtest.h>

#include "fatou/error.hpp"
#include "fatou/io.hpp"
#include "fatou/maps.hpp"
#include "fatou/series.hpp"

namespace fatou {
namespace {

double rel_err(const ComplexPoint2& a, const ComplexPoint2& b) {
  return norm_max(a - b) / std::max(1.0, norm_max(b));
}

std::vector<ComplexPoint2> bidisk_points(int count, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> r(0.0, 1.0);
  std::uniform_real_distribution<double> a(-kPi, kPi);
  std::vector<ComplexPoint2> pts;
  for (int i = 0; i < count; ++i) {
    pts.push_back({std::polar(std::sqrt(r(gen)), a(gen)), std::polar(std::sqrt(r(gen)), a(gen))});
  }
  return pts;
}

TEST(Generators, ClosedFormsAndInverses) {
  const ComplexPoint2 p{{0.3, -0.2}, {0.5, 0.1}};
  EXPECT_EQ(ElementaryMap::f1().apply_inverse(p), (ComplexPoint2{p.z1, p.z2 - p.z1}));
  const double th = 0.7;
  const auto r = ElementaryMap::rotation(th).apply_inverse(p);
  EXPECT_LT(std::abs(r.z2 - std::polar(1.0, -th) * p.z2), 1e-15);
  EXPECT_EQ(r.z1, p.z1);
  const auto g2 = ElementaryMap::f2().apply(p);
  EXPECT_LT(std::abs(g2.z1 - p.z1 * std::exp(p.z2)), 1e-15);
}

TEST(Generators, RoundTripEveryKind) {
  const std::vector<ElementaryMap> gens = {
      ElementaryMap::f1(),          ElementaryMap::f2(),
      ElementaryMap::f3(),          ElementaryMap::f4(),
      ElementaryMap::shear({1.0, -1.5}), ElementaryMap::overshear({-1.0, 0.5}),
      ElementaryMap::f6(2),         ElementaryMap::rotation(1.1),
      ElementaryMap::bl(2),         ElementaryMap::bl_inverse(2),
      ElementaryMap::scale({2.0, 1.0}, {0.5, -0.5})};
  for (const auto& g : gens) {
    for (const auto& p : bidisk_points(50, 7)) {
      EXPECT_LT(rel_err(g.apply(g.apply_inverse(p)), p), 1e-12) << to_string(g.kind);
      EXPECT_LT(rel_err(g.inverse().apply(g.apply(p)), p), 1e-12) << to_string(g.kind);
    }
  }
}

TEST(Generators, ValidateRejectsBadParameters) {
  EXPECT_THROW(ElementaryMap::bl(0).validate(), DomainError);
  EXPECT_THROW(ElementaryMap::shear({std::nan("")}).validate(), DomainError);
  EXPECT_THROW(ElementaryMap::scale({0.0, 0.0}, {1.0, 0.0}).validate(), DomainError);
  EXPECT_NO_THROW(ElementaryMap::f6(3).validate());
}

TEST(Eval, GAtKnownPoints) {
  const AutoMap g = make_g();
  EXPECT_EQ(eval(g, {}), ComplexPoint2{});
  const ComplexPoint2 v = eval(g, {0.1, 0.2});
  const double e03 = std::exp(0.3);
  EXPECT_NEAR(std::abs(v.z1 - 0.1 * std::exp(0.1 * e03)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v.z2 - (0.2 + 0.1 - 0.1 * e03)), 0.0, 1e-15);
}

TEST(Eval, ExampleMapsFixTheWAxis) {
  const std::vector<AutoMap> maps = {make_g(), make_rank0(2), make_rank1(), make_rotation(0.3)};
  for (const auto& m : maps) {
    for (double r : {0.0, 1.0, 1e3, 1e6}) {
      const ComplexPoint2 p{0.0, std::polar(r, 0.4)};
      EXPECT_EQ(eval(m, p).z1, Complex{});
    }
  }
  EXPECT_EQ(eval(make_rank0(2), {0.0, {5.0, 2.0}}), (ComplexPoint2{0.0, {5.0, 2.0}}));
}

TEST(Eval, InverseRoundTripOnBidisk) {
  for (const auto& p : bidisk_points(100, 11)) EXPECT_LT(rel_err(eval(make_g(), eval_inverse(make_g(), p)), p), 1e-10);
  // Some preimages of the unit bidisk lie beyond double range; those are skipped.
  for (const auto& m : {make_rank1(), make_rotation(0.3)}) {
    int compared = 0;
    for (const auto& p : bidisk_points(100, 11)) {
      const auto inv = m.try_eval_inverse(p);
      if (inv.escaped) continue;
      const auto fwd = m.try_eval(inv.point);
      if (fwd.escaped) continue;
      EXPECT_LT(rel_err(fwd.point, p), 1e-10);
      ++compared;
    }
    EXPECT_GE(compared, 90) << to_string(m.fastpath());
  }
}

TEST(Eval, FastpathAgreesWithPipeline) {
  const std::vector<AutoMap> maps = {make_rank0(2), make_rank1(), make_rotation(0.3)};
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> lr(-3.0, 0.0);
  std::uniform_real_distribution<double> a(-kPi, kPi);
  std::uniform_real_distribution<double> rw(0.0, 10.0);
  for (const auto& m : maps) {
    int compared = 0;
    for (int i = 0; i < 500; ++i) {
      const ComplexPoint2 p{std::polar(std::pow(10.0, lr(gen)), a(gen)), std::polar(rw(gen), a(gen))};
      const auto slow = m.try_eval_pipeline(p);
      if (slow.escaped) continue;
      const ComplexPoint2 fast = m.eval_fastpath(p);
      EXPECT_LT(rel_err(fast, slow.point), 1e-12) << to_string(m.fastpath());
      ++compared;
    }
    EXPECT_GT(compared, 100);
  }
}

TEST(Eval, EscapeIsReported) {
  const auto out = make_g().try_eval({{600.0, 0.0}, {600.0, 0.0}});
  EXPECT_TRUE(out.escaped);
}

TEST(Jet, GExpansion) {
  const MapJet j = jet(make_g(), 3);
  EXPECT_NEAR(std::abs(j.second.coeff(2, 0) - Complex(-1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(j.second.coeff(3, 0) - Complex(-0.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(j.second.coeff(1, 1) - Complex(-1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(j.second.coeff(0, 1) - Complex(1.0)), 0.0, 1e-14);
}

TEST(Jet, Rank0Expansion) {
  const MapJet j = jet(make_rank0(2), 2);
  EXPECT_NEAR(std::abs(j.first.coeff(2, 0) - Complex(1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(j.second.coeff(1, 1) - Complex(1.0)), 0.0, 1e-14);
}

TEST(Jet, Rank1Expansion) {
  const MapJet j = jet(make_rank1(), 4);
  EXPECT_NEAR(std::abs(j.second.coeff(2, 1) - Complex(-0.5)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(j.second.coeff(1, 1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(j.second.coeff(2, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(j.second.coeff(1, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(j.second.coeff(0, 1) - Complex(1.0)), 0.0, 1e-12);
}

TEST(Jet, MatchesFiniteDifferences) {
  const AutoMap g = make_g();
  const MapJet j = jet(g, 2);
  const double h = 1e-5;
  const auto fz = (eval(g, {h, 0.0}) - eval(g, {-h, 0.0})) * Complex(0.5 / h);
  const auto fw = (eval(g, {0.0, h}) - eval(g, {0.0, -h})) * Complex(0.5 / h);
  EXPECT_LT(norm_max(fz - j.coeff(1, 0)), 1e-6);
  EXPECT_LT(norm_max(fw - j.coeff(0, 1)), 1e-6);
}

// exp(3 z exp(z exp(z + z^2 w))) exp(-2 z exp(z + z^2 w)) = 1 + z + 3 z^2 / 2 + O(z^3)
TEST(Jet, ProductSeriesIdentity) {
  const int order = 4;
  const Series2 z = Series2::variable(order, 0);
  const Series2 w = Series2::variable(order, 1);
  const Series2 inner = series2_exp(z + z * z * w);
  const Series2 outer = series2_exp(z * inner);
  const Series2 e1 = series2_exp(Complex(3.0) * z * outer);
  const Series2 e2 = series2_exp(Complex(-2.0) * z * inner);
  const Series2 lhs = e1 * e2;
  EXPECT_NEAR(std::abs(lhs.coeff(0, 0) - Complex(1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(lhs.coeff(1, 0) - Complex(1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(lhs.coeff(2, 0) - Complex(1.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(lhs.coeff(2, 1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(lhs.coeff(1, 1)), 0.0, 1e-14);
}

TEST(Solvers, ShearForG) {
  const auto a2 = solve_shear_coefficients(make_g(), 2);
  ASSERT_EQ(a2.size(), 2u);
  EXPECT_NEAR(std::abs(a2[0] - Complex(1.0)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(a2[1] - Complex(-1.5)), 0.0, 1e-13);

  const auto a3 = solve_shear_coefficients(make_g(), 3);
  ASSERT_EQ(a3.size(), 3u);
  EXPECT_NEAR(std::abs(a3[0] - a2[0]), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(a3[1] - a2[1]), 0.0, 1e-13);
  auto pipeline = make_g().pipeline();
  pipeline.push_back(ElementaryMap::shear(a3));
  const MapJet j = jet(AutoMap(pipeline), 5);
  for (int d = 2; d <= 4; ++d) EXPECT_NEAR(std::abs(j.second.coeff(d, 0)), 0.0, 1e-12) << d;
}

TEST(Solvers, CleanBaseGivesZeros) {
  for (const auto& c : solve_shear_coefficients(AutoMap({ElementaryMap::f2()}), 3)) EXPECT_EQ(c, Complex{});
  for (const auto& c : solve_overshear_coefficients(AutoMap({ElementaryMap::f2()}), 3)) EXPECT_EQ(c, Complex{});
}

TEST(Solvers, OvershearRemovesWzTerms) {
  MapJet base = MapJet::identity(3);
  base.second.at(1, 1) = 1.0;  // w (1 + z)
  const auto c = solve_overshear_coefficients(base, 1);
  ASSERT_GE(c.size(), 1u);
  EXPECT_NEAR(std::abs(c[0] - Complex(-1.0)), 0.0, 1e-14);

  auto pipeline = make_g().pipeline();
  pipeline.push_back(ElementaryMap::shear(solve_shear_coefficients(make_g(), 2)));
  const AutoMap shorn(pipeline);
  const auto cs = solve_overshear_coefficients(shorn, 2);
  pipeline.push_back(ElementaryMap::overshear(cs));
  const MapJet j = jet(AutoMap(pipeline), 5);
  for (int d = 1; d <= 3; ++d) EXPECT_LT(std::abs(j.second.coeff(d, 1)), 1e-12) << d;
}

TEST(FixedPoints, Classification) {
  const AutoMap half({ElementaryMap::scale({0.5, 0.0}, {0.5, 0.0})});
  EXPECT_EQ(classify_fixed_point(half, {}), FixedPointClass::Attracting);
  const AutoMap saddle({ElementaryMap::scale({0.5, 0.0}, {2.0, 0.0})});
  EXPECT_EQ(classify_fixed_point(saddle, {}), FixedPointClass::Saddle);
  EXPECT_EQ(classify_fixed_point(make_rank0(2), {}), FixedPointClass::Neutral);
  EXPECT_EQ(classify_fixed_point(make_rank1(), {0.0, {0.7, -0.2}}), FixedPointClass::Neutral);
  EXPECT_EQ(classify_by_moduli(0.5, 1.0, 1e-8), FixedPointClass::SemiAttractive);
  EXPECT_EQ(classify_by_moduli(1.0, 1.5, 1e-8), FixedPointClass::SemiRepulsive);
  EXPECT_EQ(classify_by_moduli(1.5, 2.0, 1e-8), FixedPointClass::Repelling);
  EXPECT_THROW(classify_fixed_point(make_g(), {0.1, 0.0}), DomainError);
}

TEST(Serialization, MapRoundTrip) {
  for (const auto& m : {make_g(), make_rank0(3), make_rank1(), make_rotation(0.25)}) {
    const AutoMap back = map_from_json(map_to_json(m));
    EXPECT_EQ(back.fastpath(), m.fastpath());
    ASSERT_EQ(back.pipeline().size(), m.pipeline().size());
    const ComplexPoint2 p{{0.05, 0.01}, {0.3, -0.1}};
    EXPECT_EQ(eval(back, p), eval(m, p));
  }
}

}  // namespace
}  // namespace fatou
