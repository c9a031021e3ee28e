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

#include "fatou/dynamics.hpp"
#include "fatou/error.hpp"
#include "fatou/maps.hpp"

namespace fatou {
namespace {

TEST(Coordinates, TransformIsAnInvolution) {
  const ComplexPoint2 p{{-0.02, 0.001}, {0.4, 0.1}};
  const auto back = from_transformed(to_transformed(p));
  EXPECT_LT(norm_max(back - p), 1e-16);
  const RegionUNM u{5.0, 1.0};
  EXPECT_TRUE(u.contains_transformed({{6.0, 100.0}, 0.5}));
  EXPECT_FALSE(u.contains_transformed({{5.0, 0.0}, 0.5}));
  EXPECT_FALSE(u.contains_transformed({{6.0, 0.0}, 1.0}));
}

TEST(Iterate, RecordsAndAccumulators) {
  const AutoMap m = make_rank0(2);
  const ComplexPoint2 seed = from_transformed({{20.0, 1.0}, {0.5, 0.2}});
  IterateOptions opts;
  opts.region = RegionUNM{5.0, 10.0};
  const auto orbit = iterate(m, seed, 1000, 100, opts);
  EXPECT_EQ(orbit.steps_taken, 1000);
  EXPECT_EQ(orbit.steps.front().n, 0);
  EXPECT_EQ(orbit.steps.back().n, 1000);
  EXPECT_EQ(orbit.steps.size(), 11u);
  EXPECT_LT(orbit.identity_defect, 1e-12);
  EXPECT_EQ(orbit.first_exit, 0);
  for (const auto& s : orbit.steps) EXPECT_TRUE(s.in_U);
  EXPECT_FALSE(orbit.escaped);
  const auto again = iterate(m, seed, 1000, 100, opts);
  EXPECT_EQ(again.last, orbit.last);
}

TEST(Iterate, ToleranceStopsEarly) {
  IterateOptions opts;
  opts.tol = 1e-6;
  const auto orbit = iterate(make_rank1(), {{-1.0 / 60.0, 0.0}, {0.5, 0.0}}, 1000000, 1000000, opts);
  EXPECT_EQ(orbit.stop, StopReason::Converged);
  EXPECT_LT(orbit.last_step_delta, 1e-6);
  EXPECT_LT(orbit.steps_taken, 1000000);
}

TEST(Iterate, EscapeIsReported) {
  const auto orbit = iterate(make_g(), {{3.0, 0.0}, {3.0, 0.0}}, 100, 1);
  EXPECT_TRUE(orbit.escaped);
  EXPECT_EQ(orbit.stop, StopReason::Escaped);
}

TEST(Invariance, SamplesLieInRegion) {
  const RegionUNM u{5.0, 2.0};
  const auto pts = sample_region(u, 256);
  ASSERT_EQ(pts.size(), 256u);
  for (const auto& p : pts) EXPECT_TRUE(u.contains(p));
  EXPECT_EQ(sample_region(u, 256), pts);
}

TEST(Invariance, Rank0AtLargeN) {
  const auto rep = verify_forward_invariance(make_rank0(2), {5.0, 10.0}, 200, 2000);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.escapes, 0);
}

TEST(Invariance, DegenerateInputs) {
  EXPECT_THROW(verify_forward_invariance(make_rank0(2), {5.0, 10.0}, 0, 10), DomainError);
  const auto empty = verify_forward_invariance(make_rank0(2), {5.0, 0.0}, 10, 10);
  EXPECT_TRUE(empty.ok());
}

TEST(Invariance, MinimalNScanIsMonotoneInViolations) {
  const auto rep = scan_minimal_N(make_rank0(2), 10.0, {1.0, 5.0}, 200, 1000);
  ASSERT_EQ(rep.scans.size(), 2u);
  EXPECT_GT(rep.scans[0].violations.size(), 0u);
  EXPECT_TRUE(rep.scans[1].ok());
  ASSERT_TRUE(rep.minimal_N.has_value());
  EXPECT_EQ(*rep.minimal_N, 5.0);
}

TEST(Limits, RankFromSingularValues) {
  EXPECT_EQ(rank_from_singular_values(1e-5, 0.0, 1e-4, 1e-7), 0);
  EXPECT_EQ(rank_from_singular_values(1.0, 1e-9, 1e-4, 1e-7), 1);
  EXPECT_EQ(rank_from_singular_values(1.0, 0.5, 1e-4, 1e-7), 2);
  const Matrix2 m{{{3.0, 0.0}, {0.0, 4.0}}};
  const auto sv = singular_values(m);
  EXPECT_NEAR(sv[0], 4.0, 1e-14);
  EXPECT_NEAR(sv[1], 3.0, 1e-14);
  const Matrix2 r1{{{1.0, 2.0}, {2.0, 4.0}}};
  EXPECT_LT(singular_values(r1)[1], 1e-14);
}

TEST(Limits, RationalPeriodDetection) {
  EXPECT_EQ(rational_period(kTwoPi / 3.0, 64), 3);
  EXPECT_EQ(rational_period(kTwoPi * 5.0 / 8.0, 64), 8);
  EXPECT_FALSE(rational_period(kTwoPi * 0.6180339887498949, 64).has_value());
}

TEST(Limits, Rank1GridHasRankOne) {
  SeedGrid grid;
  grid.origin = {{-1.0 / 60.0, 0.0}, {0.5, 0.0}};
  grid.nz = 2;
  grid.nw = 2;
  const auto est = estimate_limit_map(make_rank1(), grid);
  EXPECT_TRUE(est.all_converged);
  EXPECT_EQ(est.mode, LimitMode::Direct);
  EXPECT_EQ(est.numerical_rank, 1);
  EXPECT_TRUE(est.rank_consistent);
  for (const auto& p : est.limits()) EXPECT_LT(std::abs(p.z1), 1e-5);
}

TEST(Limits, ProductSumTracksSecondCoordinate) {
  const auto ps = track_product_sum(make_rank1(), {{-1.0 / 60.0, 0.0}, {0.5, 0.0}}, 10000);
  EXPECT_TRUE(ps.cauchy);
  EXPECT_LT(ps.identity_defect, 1e-12);
  EXPECT_GT(std::abs(ps.P), 0.5);
  EXPECT_LT(ps.tail_late, ps.tail_early);
}

TEST(Limits, RationalRotationUsesSubsequence) {
  SeedGrid grid;
  grid.origin = {{-1.0 / 60.0, 0.0}, {0.5, 0.0}};
  grid.nz = 1;
  grid.nw = 2;
  LimitOptions opts;
  opts.tol = 1e-10;
  const auto est = estimate_limit_map(make_rotation(kTwoPi / 3.0), grid, opts);
  EXPECT_EQ(est.mode, LimitMode::Subsequence);
  EXPECT_EQ(est.period, 3);
  EXPECT_TRUE(est.all_converged);
  EXPECT_EQ(est.distinct_maps, 3);
  EXPECT_LT(family_composition_defect(make_rotation(kTwoPi / 3.0), est), 1e-8);
}

TEST(Limits, IrrationalRotationOscillates) {
  SeedGrid grid;
  grid.origin = {{-1.0 / 60.0, 0.0}, {0.5, 0.0}};
  grid.nz = 1;
  grid.nw = 1;
  LimitOptions opts;
  opts.n_max = 20000;
  const auto m = make_rotation(kTwoPi * 0.6180339887498949);
  const auto est = estimate_limit_map(m, grid, opts);
  EXPECT_EQ(est.mode, LimitMode::Oscillating);
  ASSERT_TRUE(est.seeds[0].oscillation.has_value());
  EXPECT_GT(est.seeds[0].oscillation->distinct_arguments, 100);
  EXPECT_THROW(check_equivariance(m, est, opts), DomainError);
}

TEST(Coverage, SmallRingWindsOnce) {
  CoverageOptions opts;
  opts.target_count = 5;
  const auto rep = waxis_coverage(make_rank1(), 1.0, -1.0 / 200.0, 64, opts);
  EXPECT_TRUE(rep.covered);
  ASSERT_EQ(rep.windings.size(), 5u);
  for (int w : rep.windings) EXPECT_EQ(w, 1);
  EXPECT_EQ(rep.targets[0], Complex{});
  EXPECT_LT(rep.precondition_sup, 1.0);
}

TEST(Curves, HitsSmallSphere) {
  const ComplexPoint2 p{-1.0 / 20.0, 0.05};
  const auto m = make_rank0(2);
  const auto curve = invariant_curve(m, p, {}, 8, 100, 1e-2);
  EXPECT_GE(curve.sphere_hits.size(), 1u);
  EXPECT_LT(curve_invariance_defect(m, curve), 1e-12);
  for (const auto& h : curve.sphere_hits) EXPECT_NEAR(norm_euclid(h.point), 1e-2, 1e-8);
  EXPECT_THROW(invariant_curve(m, p, {}, 8, 100, 0.0), DomainError);
}

}  // namespace
}  // namespace fatou
