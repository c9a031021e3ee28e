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

// Orbit iteration, forward-invariance checks on U(N, M), limit-map
// estimation with rank detection and invariant curves.
//
// Seeds and limits are in original coordinates. Regions are tested in
// transformed coordinates (t, w) = (-1/z, w), where orbits drift to the
// right half plane.

#ifndef FATOU_DYNAMICS_HPP
#define FATOU_DYNAMICS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fatou/complex.hpp"
#include "fatou/maps.hpp"

namespace fatou {

/// (z, w) -> (-1/z, w). The map is an involution on z != 0.
inline ComplexPoint2 to_transformed(const ComplexPoint2& p) noexcept { return {-1.0 / p.z1, p.z2}; }
inline ComplexPoint2 from_transformed(const ComplexPoint2& t) noexcept { return {-1.0 / t.z1, t.z2}; }

/// {Re t > N, |w| < M} in transformed coordinates.
struct RegionUNM {
  double N = 50.0;
  double M = 10.0;

  bool contains_transformed(const ComplexPoint2& t) const noexcept;
  bool contains(const ComplexPoint2& original) const noexcept;
};

enum class StopReason { MaxSteps, Converged, Escaped };

std::string to_string(StopReason r);

struct OrbitStep {
  std::int64_t n = 0;
  ComplexPoint2 point;        // original coordinates
  ComplexPoint2 transformed;  // (-1/z, w); z = 0 maps to infinity
  bool in_U = false;
};

struct IterateOptions {
  /// Stops once the max-norm step ||F^n - F^{n-1}|| is below tol (strict).
  double tol = 0.0;
  /// Region for the in_U flags; none means every flag is false.
  std::optional<RegionUNM> region;
  /// Maintains the product and sum accumulators (one extra evaluation per step).
  bool track_accumulators = true;
};

/// The second coordinate split as w_n = w_0 P_n + S_n with per-step multipliers
/// m_j = (pi_2 F(z_j, w_j) - pi_2 F(z_j, 0)) / w_j.
struct OrbitRecord {
  ComplexPoint2 seed;
  std::vector<OrbitStep> steps;  // n = 0 and every record_every-th step, plus the last
  Complex product_acc{1.0, 0.0};
  Complex sum_acc{};
  /// max over steps of |w_n - (w_0 P_n + S_n)| / max(1, |w_n|).
  double identity_defect = 0.0;
  /// First step leaving the region (0 when it never leaves or no region).
  std::int64_t first_exit = 0;
  std::int64_t steps_taken = 0;
  ComplexPoint2 last;
  double last_step_delta = 0.0;
  StopReason stop = StopReason::MaxSteps;
  bool escaped = false;
};

OrbitRecord iterate(const AutoMap& map, const ComplexPoint2& seed, std::int64_t n_max, std::int64_t record_every,
                    const IterateOptions& opts = {});

/// Writes n, re(z), im(z), re(w), im(w), re(t), im(t), in_U with %.17g.
std::string orbit_csv(const OrbitRecord& orbit);

// Forward invariance -----------------------------------------------------------

struct SamplingBox {
  /// Re t is drawn from (N, N + re_span] and Im t from [-im_span, im_span].
  double re_span = 50.0;
  double im_span = 25.0;
  /// Fraction of samples placed within 1% of the Re t = N or |w| = M face.
  double boundary_fraction = 0.5;
};

/// Deterministic Sobol points of U(N, M) in original coordinates.
std::vector<ComplexPoint2> sample_region(const RegionUNM& region, int samples, const SamplingBox& box = {});

struct InvarianceViolation {
  int sample = 0;
  ComplexPoint2 seed;
  std::int64_t step = 0;  // first step outside U
  ComplexPoint2 transformed;
};

struct InvarianceReport {
  RegionUNM region;
  int samples = 0;
  std::int64_t n_steps = 0;
  std::vector<InvarianceViolation> violations;
  int escapes = 0;

  bool ok() const noexcept { return violations.empty(); }
};

/// Throws DomainError when samples < 1. M = 0 gives an empty region and no violations.
InvarianceReport verify_forward_invariance(const AutoMap& map, const RegionUNM& region, int samples,
                                           std::int64_t n_steps, const SamplingBox& box = {});

struct MinimalNReport {
  double M = 0.0;
  std::vector<InvarianceReport> scans;  // one per candidate, in order
  std::optional<double> minimal_N;      // first candidate with no violations
};

MinimalNReport scan_minimal_N(const AutoMap& map, double M, const std::vector<double>& candidates, int samples,
                              std::int64_t n_steps, const SamplingBox& box = {});

// Limit maps ---------------------------------------------------------------------

/// Seeds origin + (i h, j h) for i < nz, j < nw (real offsets in z and w).
struct SeedGrid {
  ComplexPoint2 origin;
  double h = 1e-3;
  int nz = 10;
  int nw = 10;

  std::vector<ComplexPoint2> seeds() const;
  int index(int i, int j) const noexcept { return i * nw + j; }
};

struct LimitOptions {
  double tol = 1e-12;
  std::int64_t n_max = 1000000;
  double tau1 = 1e-4;
  double tau2 = 1e-7;
  /// Largest denominator tried when detecting a rational rotation number.
  int max_period = 64;
  /// Window of trailing steps used by the oscillation diagnostics.
  int window = 1000;
  /// Number of argument bins for counting distinct accumulation arguments.
  int argument_bins = 1000;
  /// Limit maps closer than this (sup over the grid) count as the same map.
  double family_separation = 1e-6;
};

enum class LimitMode { Direct, Subsequence, Oscillating };

std::string to_string(LimitMode m);

struct OscillationDiagnostics {
  double modulus = 0.0;                 // |w_n| at the last step
  double modulus_tail_variation = 0.0;  // max - min of |w_n| over the window
  int distinct_arguments = 0;           // occupied argument bins over the window
  double min_argument_gap = 0.0;        // smallest gap between sorted window arguments
};

struct SeedLimit {
  ComplexPoint2 seed;
  ComplexPoint2 limit;
  std::int64_t iterations = 0;
  double step_delta = 0.0;
  bool converged = false;
  StopReason stop = StopReason::MaxSteps;
  std::optional<OscillationDiagnostics> oscillation;
};

struct LimitMapEstimate {
  SeedGrid grid;
  LimitMode mode = LimitMode::Direct;
  int period = 1;  // subsequence n = 0 mod period
  std::vector<SeedLimit> seeds;
  /// The period limit maps lim F^{period k + j} for j = 0..period-1 (mode Subsequence).
  std::vector<std::vector<ComplexPoint2>> family;
  /// Members of family pairwise farther apart than family_separation.
  int distinct_maps = 0;
  std::int64_t iterations_used = 0;
  double sup_step_delta = 0.0;
  bool all_converged = false;
  // Singular values of the finite-difference Jacobian of the limit.
  std::vector<std::array<double, 2>> singular_values;  // per seed
  std::vector<int> ranks;                              // per seed
  double s1_min = 0.0;
  double s1_max = 0.0;
  double s2_max = 0.0;
  int numerical_rank = -1;  // -1 without a Jacobian (single seed or no convergence)
  bool rank_consistent = false;

  std::vector<ComplexPoint2> limits() const;
};

/// Rank from singular values: 0 if s1 < tau1, 1 if s2 < tau2, 2 otherwise.
int rank_from_singular_values(double s1, double s2, double tau1, double tau2) noexcept;
/// Closed-form singular values (s1 >= s2) of a complex 2x2 matrix.
std::array<double, 2> singular_values(const Matrix2& m) noexcept;

/// Seeds must lie in a forward-invariant region (not checked). A rotation with
/// rational angle/2pi = p/q switches to the subsequence n = 0 mod q; an
/// irrational one reports oscillation diagnostics instead of a limit map.
LimitMapEstimate estimate_limit_map(const AutoMap& map, const SeedGrid& grid, const LimitOptions& opts = {});

/// Limit of one seed: iterates until the step between n and n - period drops
/// below tol. Oscillating mode also collects the window diagnostics.
SeedLimit estimate_seed_limit(const AutoMap& map, const ComplexPoint2& seed, LimitMode mode, int period,
                              const LimitOptions& opts = {});

/// Rotation denominator q when angle/2pi is within 1e-12 of p/q with q <= max_q.
std::optional<int> rational_period(double angle, int max_q) noexcept;

/// max over the grid of ||h(F(p)) - F(h(p))||, re-estimating h(F(p)) by iteration.
double check_equivariance(const AutoMap& map, const LimitMapEstimate& limit, const LimitOptions& opts = {});

/// max over seeds and j of ||F(h_j(p)) - h_{j+1 mod q}(p)|| for a subsequence family.
double family_composition_defect(const AutoMap& map, const LimitMapEstimate& limit);

// Product and sum of the second coordinate ---------------------------------------

struct ProductSumPartial {
  std::int64_t n = 0;
  Complex P;
  Complex S;
  Complex w;
};

struct ProductSum {
  Complex P{1.0, 0.0};
  Complex S{};
  std::vector<ProductSumPartial> partials;  // at powers of two and the last step
  double identity_defect = 0.0;
  double tail_early = 0.0;  // max |P_n - P_{n-1}| + |S_n - S_{n-1}| over the second quarter
  double tail_late = 0.0;   // same over the last quarter
  bool cauchy = false;
};

/// Throws ConvergenceError when the increments do not decrease (or on escape).
ProductSum track_product_sum(const AutoMap& map, const ComplexPoint2& seed, std::int64_t n_max);

// Surjectivity onto the w-axis -----------------------------------------------------

struct CoverageOptions {
  int target_count = 20;
  double tol = 1e-10;
  std::int64_t n_max = 1000000;
};

struct CoverageReport {
  double R = 0.0;
  Complex z0;
  double precondition_sup = 0.0;  // sup over |w| = 2R of |pi_2 h(z0, w) - w|
  std::vector<Complex> targets;
  std::vector<int> windings;
  double max_arg_step = 0.0;  // largest argument increment along the ring
  bool covered = false;
};

/// Winding of w -> pi_2 h(z0, w) - zeta around |w| = 2R for targets zeta in
/// B(0, R). Throws DomainError when the precondition sup < R fails.
CoverageReport waxis_coverage(const AutoMap& map, double R, Complex z0, int ring_samples,
                              const CoverageOptions& opts = {});

/// The precondition sup alone, without raising.
double coverage_precondition(const AutoMap& map, double R, Complex z0, int ring_samples,
                             const CoverageOptions& opts = {});

// Invariant curves ---------------------------------------------------------------

struct SphereHit {
  std::int64_t step = 0;  // n of the curve piece gamma_n
  double s = 0.0;         // parameter on gamma_0, in [0, 1]
  ComplexPoint2 point;
};

struct InvariantCurve {
  /// gamma_0 .. gamma_n, each sampled at segments_per_step + 1 parameters.
  std::vector<std::vector<ComplexPoint2>> pieces;
  std::vector<double> parameters;
  std::vector<SphereHit> sphere_hits;
  std::int64_t steps = 0;

  std::vector<ComplexPoint2> polyline() const;
};

/// Throws EscapeError when the curve escapes and DomainError when eps <= 0.
InvariantCurve invariant_curve(const AutoMap& map, const ComplexPoint2& p, const ComplexPoint2& q_target,
                               int segments_per_step, std::int64_t n_max, double eps);

/// max over vertices of ||F(gamma_n(s)) - gamma_{n+1}(s)||.
double curve_invariance_defect(const AutoMap& map, const InvariantCurve& curve);

}  // namespace fatou

#endif  // FATOU_DYNAMICS_HPP
