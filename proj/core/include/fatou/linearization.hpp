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

// Invariant curves through a fixed point with multipliers {lambda, 1}:
// solve F(psi(w)) = psi(lambda w), psi(0) = 0, psi'(0) = (1, 0), coefficient
// by coefficient, and bound the solution with majorant series.

#ifndef FATOU_LINEARIZATION_HPP
#define FATOU_LINEARIZATION_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fatou/complex.hpp"
#include "fatou/diophantine.hpp"
#include "fatou/maps.hpp"
#include "fatou/series.hpp"

namespace fatou {

enum class Precision { Auto, Double, DoubleDouble };

std::string to_string(Precision p);
Precision precision_from_string(const std::string& s);
/// FATOU_PRECISION when set ("double" or "double-double"), Auto otherwise.
Precision precision_from_env();

/// Divisors below this modulus make the recursion switch to double-double.
inline constexpr double kEscalationThreshold = 1e-8;

struct SmallDivisors {
  Complex lambda;
  int D = 0;
  // Indexed by n; entries below 2 are unused and zero.
  std::vector<Complex> eps1;    // lambda^n - lambda
  std::vector<Complex> eps2;    // lambda^n - 1
  std::vector<double> eps_min;  // min(|eps1|, |eps2|)
  bool extended = false;        // powers formed in double-double

  double smallest() const noexcept;
};

/// Powers by repeated multiplication. Throws ZeroDivisorError when a divisor
/// falls below `floor`.
SmallDivisors compute_small_divisors(Complex lambda, int D, bool extended = false, double floor = 1e-300);

/// Scalar majorant sigma_1..sigma_D (index 0 unused) of
///   sigma_n = (M / eps_n) sum_{nu >= 2} (nu + 1) sum_{k_1+..+k_nu = n} sigma_k1 .. sigma_knu.
std::vector<double> majorant_sigma(double M, const SmallDivisors& divisors, int D);
/// Same recursion with arbitrary per-degree divisors (index n, n >= 2).
std::vector<double> majorant_sigma(double M, const std::vector<double>& eps, int D);

/// delta_k = (1/eps_k) max over compositions k = k_1 + .. + k_nu (nu >= 2)
/// of delta_k1 .. delta_knu, by a dynamic program over the best product of
/// any composition of the remainder.
std::vector<double> majorant_delta(const std::vector<double>& eps, int D);
/// The two-part recursion delta_k = (1/eps_k) max_j delta_j delta_{k-j}. It
/// agrees with majorant_delta only when every eps_k <= 1.
std::vector<double> majorant_delta_binary_split(const std::vector<double>& eps, int D);

struct EtaRadius {
  double M = 0.0;
  double eta_star = 0.0;  // fold point of w(eta) = eta - M (1/(1-eta)^2 - 1 - 2 eta)
  double w_star = 0.0;
  double b = 0.0;         // 1 / w_star

  /// Branch of the inverse with eta(0) = 0, for 0 <= w <= w_star.
  double eta(double w) const;
};

EtaRadius eta_radius(double M);

struct MajorantSplit {
  double M = 0.0;
  std::vector<double> eta;    // index 1..D
  std::vector<double> delta;  // index 1..D
  double b = 0.0;
  double a = 0.0;             // fitted growth of delta_n
  bool fitted = true;         // a is a least-squares fit, not a certified constant
  /// max over n of sigma_n / (eta_n delta_n) when sigma was supplied (<= 1 expected).
  double split_ratio = 0.0;
};

MajorantSplit majorant_split(double M, const SmallDivisors& divisors, int D);
/// Validates (c, N) as a certificate for theta up to D first (DomainError otherwise).
MajorantSplit majorant_split(double M, const Theta& theta0, double c, double N, int D);

/// Least-squares growth rate exp(slope) of log values[n] over n in [n0, end).
double fit_growth_rate(const std::vector<double>& values, int n0);

/// Largest n^2 (log(1/c) + N log n) - log delta_n over n in [2, D]; the
/// degree-growth proxy holds when it is nonnegative.
double degree_bound_margin(const std::vector<double>& delta, double c, double N);

struct LinearizationOptions {
  Precision precision = precision_from_env();
  int residual_samples = 64;
  /// Radius of the residual circle; nonpositive means rho_estimate / 2.
  double residual_radius = 0.0;
};

struct LinearizationResult {
  Complex lambda;
  int D = 0;
  Series1 psi;              // normalized coordinates: psi_1 = (1, 0)
  Matrix2 conjugation{};    // columns: eigenvectors for lambda and 1
  SmallDivisors divisors;
  double M = 0.0;
  std::vector<double> sigma;
  std::vector<double> eta;
  std::vector<double> delta;
  double a = 0.0;
  double b = 0.0;
  double rho_estimate = 0.0;
  double residual = 0.0;
  double residual_radius = 0.0;
  Precision precision_used = Precision::Double;
  MapJet normalized_jet;

  /// psi in the input coordinates.
  Series1 psi_original() const;
  MajorantSplit split() const;
};

/// Solves for psi_2..psi_D. The jet must fix the origin with a diagonalizable
/// linear part with eigenvalues {lambda, 1}; it is conjugated by its
/// eigenbasis first. Coefficients of order above the jet's are taken as zero.
LinearizationResult solve_psi(const MapJet& F, Complex lambda, int D, const LinearizationOptions& opts = {});

/// max over `samples` points of |w| = radius of ||F(psi(w)) - psi(lambda w)||.
double residual(const Series1& psi, const MapJet& F, Complex lambda, double radius, int samples = 64);

struct BoundCheck {
  double C = 0.0;
  double rate = 0.0;
  double allowed = 0.0;  // a b M (1 + tolerance)
  bool ok = false;
};

BoundCheck exponential_bound_check(const LinearizationResult& result, const MajorantSplit& split,
                                   double tolerance = 0.1);

struct SweepEntry {
  double r = 0.0;
  bool ok = false;
  std::string error;
  std::optional<LinearizationResult> result;
  double rate = 0.0;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  std::vector<Series1> d_psi_dr;     // one per interior r
  std::vector<double> interior_r;
  bool smoothness_ok = false;
  double worst_ratio_deviation = 0.0;  // max |ratio - 2| over tested coefficients
  int ratios_tested = 0;
  bool rates_uniform = false;          // max rate / min rate <= 1.2
  double rate_spread = 0.0;
};

using JetFamily = std::function<MapJet(Complex lambda)>;

/// Solves psi at lambda = r e^{2 pi i theta} for each r, differentiates in r
/// by central differences and checks first-order convergence of forward
/// differences (error ratio at halved steps in [1.8, 2.2]) for n <= D/2.
/// The forward-difference base step is fd_step, or a quarter of the smallest
/// spacing of r_values when fd_step <= 0.
SweepResult parameter_sweep(const JetFamily& family, const Theta& theta0, const std::vector<double>& r_values, int D,
                            const LinearizationOptions& opts = {}, double fd_step = 0.0);

/// (lambda z1 + z1^2 + z1 z2, z2 + z1^2 + z2^2): all nonlinear coefficients 1.
MapJet quadratic_test_jet(Complex lambda);
/// (lambda z1, z2).
MapJet linear_test_jet(Complex lambda);

}  // namespace fatou

#endif  // FATOU_LINEARIZATION_HPP
