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

// Continued fractions and lower bounds |e^{2 pi i k theta} - 1| >= c k^{-N}.

#ifndef FATOU_DIOPHANTINE_HPP
#define FATOU_DIOPHANTINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fatou/double_double.hpp"

namespace fatou {

/// (p + sqrt(d)) / q with d > 0 not a perfect square and q != 0.
struct QuadraticIrrational {
  std::int64_t p = 0;
  std::int64_t d = 5;
  std::int64_t q = 1;
};

/// A rotation number in (0, 1), kept in the most exact form available.
struct Theta {
  std::string text;   // as given by the caller
  DoubleDouble value;  // hi + lo
  std::optional<QuadraticIrrational> quadratic;
  std::optional<std::pair<std::int64_t, std::int64_t>> rational;  // p / q, reduced

  double to_double() const noexcept { return value.hi + value.lo; }

  static Theta from_double(double t);
  static Theta from_quadratic(QuadraticIrrational qi);
  static Theta from_rational(std::int64_t p, std::int64_t q);
  static Theta golden();  // (sqrt(5) - 1) / 2
  static Theta silver();  // sqrt(2) - 1
};

/// Accepts "golden", "silver" (or "sqrt2"), "p/q", "quad:p,d,q" and decimal
/// numbers. The value is reduced mod 1 into [0, 1). Throws DomainError.
Theta parse_theta(const std::string& text);

/// Fractional part of k theta, centered in [-1/2, 1/2], with the product
/// k * theta formed exactly (two-product) before the integer is removed.
double centered_fraction(const Theta& theta, std::int64_t k) noexcept;

/// |e^{2 pi i k theta} - 1| = 2 |sin(pi {k theta})|.
double distance_to_one(const Theta& theta, std::int64_t k) noexcept;

struct Convergent {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

struct ContinuedFraction {
  double theta = 0.0;
  std::vector<std::int64_t> partial_quotients;  // a_1, a_2, ...
  std::vector<Convergent> convergents;          // p_k / q_k for k >= 1
  bool rational = false;    // expansion terminated (quotient above 1e12 or exact zero)
  bool overflow = false;    // a convergent would exceed 64-bit range
};

/// Gauss-map expansion of a binary64 value in (0, 1).
ContinuedFraction continued_fraction(double theta, int depth);
/// Exact expansion of a quadratic irrational or rational, falling back to the
/// binary64 expansion for plain numbers.
ContinuedFraction continued_fraction(const Theta& theta, int depth);

struct Violation {
  std::int64_t k = 0;
  double value = 0.0;  // |lambda^k - 1|
  double bound = 0.0;  // c k^{-N}
};

struct DiophantineCertificate {
  double theta = 0.0;
  double c = 0.0;
  double N = 0.0;
  std::int64_t k_max = 0;
  /// Largest K such that every k <= K satisfies the bound.
  std::int64_t verified_up_to = 0;
  std::int64_t violation_count = 0;
  std::vector<Violation> violations;  // at most the first 1000
  bool precision_warning = false;     // binary64 theta checked beyond k = 1e7

  bool ok() const noexcept { return violation_count == 0; }
};

/// Checks |lambda^k - 1| >= c k^{-N} for 1 <= k <= k_max (equality counts
/// as satisfied, so c = max_c is always a valid certificate).
DiophantineCertificate check_siegel(const Theta& theta, double c, double N, std::int64_t k_max);

struct MaxCReport {
  double c = 0.0;            // min_k |lambda^k - 1| k^N
  std::int64_t argmin = 0;
  /// k at which |lambda^k - 1| reaches a new running minimum: the best
  /// approximation denominators.
  std::vector<std::int64_t> record_denominators;
};

MaxCReport max_c_report(const Theta& theta, double N, std::int64_t k_max);
double max_c(const Theta& theta, double N, std::int64_t k_max);

struct SectorRow {
  double r = 0.0;
  std::int64_t in_sector_count = 0;         // k with |arg e^{2 pi i k theta}| > pi/4
  std::int64_t branch_in_violations = 0;    // k in I with |lambda^k - 1| <= sqrt(2)/2
  std::int64_t branch_out_violations = 0;   // k not in I with |lambda^k-1| < sqrt(2)/2 |e^{i phi}-1|
  std::int64_t chained_violations = 0;      // k in I with |lambda^k-1| < sqrt(2)/2 |e^{i phi}-1|
  std::int64_t final_violations = 0;        // |lambda^k - 1| < c' k^{-N}, outside the drift window
  std::int64_t final_violations_drift = 0;  // same, inside the drift window
  std::int64_t drift_count = 0;             // k with r^k outside [1/2, 2]
  std::int64_t first_drift_k = 0;           // 0 when none
  double min_final_margin = 0.0;            // min over k of |lambda^k-1| k^N / c'
};

struct SectorReport {
  double theta = 0.0;
  double N = 1.0;
  std::int64_t k_max = 0;
  double c_prime = 0.0;  // sqrt(2)/2 max_c(theta, N, k_max)
  std::vector<SectorRow> rows;

  bool final_ok() const noexcept;
};

/// Sweeps lambda = r e^{2 pi i theta} over r_values (each in (0, 2)).
SectorReport check_sector_bounds(const Theta& theta, const std::vector<double>& r_values, std::int64_t k_max,
                                double N = 1.0);

}  // namespace fatou

#endif  // FATOU_DIOPHANTINE_HPP
