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

#include "fatou/diophantine.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "fatou/complex.hpp"
#include "fatou/error.hpp"

namespace fatou {
namespace {

using i128 = __int128;

constexpr double kHalfSqrt2 = 0.70710678118654752440;
constexpr std::size_t kMaxStoredViolations = 1000;

DoubleDouble reduce_unit(DoubleDouble v) {
  const double f = std::floor(v.hi);
  v = v - DoubleDouble(f);
  if (v.hi < 0.0) v = v + DoubleDouble(1.0);
  if (!(v < DoubleDouble(1.0))) v = v - DoubleDouble(1.0);
  return v;
}

std::int64_t isqrt(std::int64_t d) {
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(d)));
  while (static_cast<i128>(s) * s > d) --s;
  while (static_cast<i128>(s + 1) * (s + 1) <= d) ++s;
  return s;
}

// (P + sqrt(d)) / Q >= m for irrational sqrt(d).
bool quad_ge(i128 P, i128 d, i128 Q, i128 m) {
  const i128 t = m * Q - P;  // compare sqrt(d) against t (times sign of Q)
  if (Q > 0) return t <= 0 || d > t * t;
  return t >= 0 && d < t * t;
}

std::string lower_trim(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw DomainError("theta: '" + s + "' is not an integer");
  }
  if (pos != s.size()) throw DomainError("theta: '" + s + "' is not an integer");
  return v;
}

bool push_convergent(ContinuedFraction& cf, Convergent& prev2, Convergent& prev1, std::int64_t a) {
  const i128 p = static_cast<i128>(a) * prev1.p + prev2.p;
  const i128 q = static_cast<i128>(a) * prev1.q + prev2.q;
  constexpr i128 lim = std::numeric_limits<std::int64_t>::max();
  if (p > lim || q > lim) {
    cf.overflow = true;
    return false;
  }
  cf.partial_quotients.push_back(a);
  Convergent c{static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)};
  cf.convergents.push_back(c);
  prev2 = prev1;
  prev1 = c;
  return true;
}

// |r^k e^{i phi} - 1| without cancellation near r^k = 1, phi = 0.
double distance_scaled(double rk_minus_one, double phi) {
  const double s = std::sin(0.5 * phi);
  const double re = rk_minus_one * std::cos(phi) - 2.0 * s * s;
  const double im = (1.0 + rk_minus_one) * std::sin(phi);
  return std::hypot(re, im);
}

}  // namespace

Theta Theta::from_double(double t) {
  if (!std::isfinite(t)) throw DomainError("theta: not finite");
  Theta th;
  th.value = reduce_unit(DoubleDouble(t));
  th.text = std::to_string(t);
  return th;
}

Theta Theta::from_quadratic(QuadraticIrrational qi) {
  if (qi.q == 0) throw DomainError("theta: zero denominator");
  if (qi.d <= 0) throw DomainError("theta: radicand must be positive");
  const std::int64_t s = isqrt(qi.d);
  if (s * s == qi.d) throw DomainError("theta: radicand is a perfect square");
  Theta th;
  th.quadratic = qi;
  th.value = reduce_unit((DoubleDouble(static_cast<double>(qi.p)) + sqrt(DoubleDouble(static_cast<double>(qi.d)))) /
                         DoubleDouble(static_cast<double>(qi.q)));
  th.text = "quad:" + std::to_string(qi.p) + "," + std::to_string(qi.d) + "," + std::to_string(qi.q);
  return th;
}

Theta Theta::from_rational(std::int64_t p, std::int64_t q) {
  if (q == 0) throw DomainError("theta: zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
  p /= g;
  q /= g;
  p %= q;
  if (p < 0) p += q;
  Theta th;
  th.rational = std::make_pair(p, q);
  th.value = DoubleDouble(static_cast<double>(p)) / DoubleDouble(static_cast<double>(q));
  th.text = std::to_string(p) + "/" + std::to_string(q);
  return th;
}

Theta Theta::golden() {
  Theta th = from_quadratic({-1, 5, 2});
  th.text = "golden";
  return th;
}

Theta Theta::silver() {
  Theta th = from_quadratic({-1, 2, 1});
  th.text = "silver";
  return th;
}

Theta parse_theta(const std::string& text) {
  const std::string s = lower_trim(text);
  if (s.empty()) throw DomainError("theta: empty specification");
  if (s == "golden") return Theta::golden();
  if (s == "silver" || s == "sqrt2") return Theta::silver();
  if (s.rfind("quad:", 0) == 0) {
    const std::string body = s.substr(5);
    const auto c1 = body.find(',');
    const auto c2 = body.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw DomainError("theta: expected quad:p,d,q for (p + sqrt(d)) / q");
    }
    Theta th = Theta::from_quadratic(
        {parse_int(body.substr(0, c1)), parse_int(body.substr(c1 + 1, c2 - c1 - 1)), parse_int(body.substr(c2 + 1))});
    th.text = text;
    return th;
  }
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    Theta th = Theta::from_rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
    th.text = text;
    return th;
  }
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw DomainError("theta: cannot parse '" + text + "'");
  }
  if (pos != s.size()) throw DomainError("theta: cannot parse '" + text + "'");
  Theta th = Theta::from_double(v);
  th.text = text;
  return th;
}

double centered_fraction(const Theta& theta, std::int64_t k) noexcept {
  if (theta.rational) {
    const auto [p, q] = *theta.rational;
    const auto m = static_cast<std::int64_t>((static_cast<i128>(k % q) * p) % q);
    double f = static_cast<double>(m) / static_cast<double>(q);
    if (f > 0.5) f -= 1.0;
    return f;
  }
  const double kd = static_cast<double>(k);
  const double ph = kd * theta.value.hi;
  const double pl = std::fma(kd, theta.value.hi, -ph);
  double r = (ph - std::nearbyint(ph)) + (pl + kd * theta.value.lo);
  r -= std::nearbyint(r);
  return r;
}

double distance_to_one(const Theta& theta, std::int64_t k) noexcept {
  return 2.0 * std::abs(std::sin(kPi * centered_fraction(theta, k)));
}

ContinuedFraction continued_fraction(double theta, int depth) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("continued_fraction: theta must lie in (0, 1)");
  ContinuedFraction cf;
  cf.theta = theta;
  Convergent prev2{1, 0};
  Convergent prev1{0, 1};
  double x = theta;
  for (int i = 0; i < depth; ++i) {
    if (x == 0.0) {
      cf.rational = true;
      break;
    }
    const double inv = 1.0 / x;
    if (inv > 1e12) {
      cf.rational = true;
      break;
    }
    const double a = std::floor(inv);
    if (!push_convergent(cf, prev2, prev1, static_cast<std::int64_t>(a))) break;
    x = inv - a;
  }
  return cf;
}

ContinuedFraction continued_fraction(const Theta& theta, int depth) {
  if (theta.rational) {
    ContinuedFraction cf;
    cf.theta = theta.to_double();
    auto [p, q] = *theta.rational;
    if (p == 0) throw DomainError("continued_fraction: theta must lie in (0, 1)");
    Convergent prev2{1, 0};
    Convergent prev1{0, 1};
    // Euclid on q / p, starting after the integer part 0.
    std::int64_t num = q;
    std::int64_t den = p;
    for (int i = 0; i < depth && den != 0; ++i) {
      const std::int64_t a = num / den;
      if (!push_convergent(cf, prev2, prev1, a)) break;
      const std::int64_t r = num % den;
      num = den;
      den = r;
    }
    cf.rational = true;
    return cf;
  }
  if (!theta.quadratic) return continued_fraction(theta.to_double(), depth);

  ContinuedFraction cf;
  cf.theta = theta.to_double();
  i128 P = theta.quadratic->p;
  i128 d = theta.quadratic->d;
  i128 Q = theta.quadratic->q;
  if ((d - P * P) % Q != 0) {
    const i128 aq = Q < 0 ? -Q : Q;
    P *= aq;
    d *= aq * aq;
    Q *= aq;
  }
  const long double sd = std::sqrt(static_cast<long double>(d));
  Convergent prev2{1, 0};
  Convergent prev1{0, 1};
  for (int i = 0; i <= depth; ++i) {
    auto a = static_cast<i128>(std::floor((static_cast<long double>(P) + sd) / static_cast<long double>(Q)));
    while (!quad_ge(P, d, Q, a)) --a;
    while (quad_ge(P, d, Q, a + 1)) ++a;
    if (i > 0 && !push_convergent(cf, prev2, prev1, static_cast<std::int64_t>(a))) break;
    P = a * Q - P;
    Q = (d - P * P) / Q;
  }
  return cf;
}

DiophantineCertificate check_siegel(const Theta& theta, double c, double N, std::int64_t k_max) {
  if (!(c > 0.0)) throw DomainError("check_siegel: c must be positive");
  if (!(N >= 0.0)) throw DomainError("check_siegel: N must be nonnegative");
  if (k_max < 1) throw DomainError("check_siegel: k_max must be >= 1");
  DiophantineCertificate cert;
  cert.theta = theta.to_double();
  cert.c = c;
  cert.N = N;
  cert.k_max = k_max;
  cert.verified_up_to = k_max;
  cert.precision_warning = !theta.rational && !theta.quadratic && k_max > 10'000'000;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const double dist = distance_to_one(theta, k);
    const double weight = std::pow(static_cast<double>(k), N);
    if (dist * weight < c) {
      if (cert.violation_count == 0) cert.verified_up_to = k - 1;
      ++cert.violation_count;
      if (cert.violations.size() < kMaxStoredViolations) cert.violations.push_back({k, dist, c / weight});
    }
  }
  return cert;
}

MaxCReport max_c_report(const Theta& theta, double N, std::int64_t k_max) {
  if (k_max < 1) throw DomainError("max_c: k_max must be >= 1");
  MaxCReport rep;
  rep.c = std::numeric_limits<double>::infinity();
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const double dist = distance_to_one(theta, k);
    const double v = dist * std::pow(static_cast<double>(k), N);
    if (v < rep.c) {
      rep.c = v;
      rep.argmin = k;
    }
    if (dist < best_dist) {
      best_dist = dist;
      rep.record_denominators.push_back(k);
    }
  }
  return rep;
}

double max_c(const Theta& theta, double N, std::int64_t k_max) { return max_c_report(theta, N, k_max).c; }

bool SectorReport::final_ok() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const SectorRow& r) { return r.final_violations == 0; });
}

SectorReport check_sector_bounds(const Theta& theta, const std::vector<double>& r_values, std::int64_t k_max,
                                double N) {
  if (k_max < 1) throw DomainError("check_sector_bounds: k_max must be >= 1");
  SectorReport rep;
  rep.theta = theta.to_double();
  rep.N = N;
  rep.k_max = k_max;
  rep.c_prime = kHalfSqrt2 * max_c(theta, N, k_max);
  for (double r : r_values) {
    if (!(r > 0.0 && r < 2.0)) throw DomainError("check_sector_bounds: r must lie in (0, 2)");
    SectorRow row;
    row.r = r;
    row.min_final_margin = std::numeric_limits<double>::infinity();
    const double log_r = std::log(r);
    for (std::int64_t k = 1; k <= k_max; ++k) {
      const double f = centered_fraction(theta, k);
      const double phi = kTwoPi * f;
      const double unit = 2.0 * std::abs(std::sin(kPi * f));
      const double rk_m1 = std::expm1(static_cast<double>(k) * log_r);
      const double dist = rk_m1 == 0.0 ? unit : distance_scaled(rk_m1, phi);
      const double rk = 1.0 + rk_m1;
      const bool drift = rk < 0.5 || rk > 2.0;
      if (drift) {
        if (row.drift_count == 0) row.first_drift_k = k;
        ++row.drift_count;
      }
      const bool in_sector = std::abs(phi) > 0.25 * kPi;
      if (in_sector) {
        ++row.in_sector_count;
        if (!(dist > kHalfSqrt2)) ++row.branch_in_violations;
        if (dist < kHalfSqrt2 * unit) ++row.chained_violations;
      } else if (dist < kHalfSqrt2 * unit) {
        ++row.branch_out_violations;
      }
      const double weighted = dist * std::pow(static_cast<double>(k), N);
      row.min_final_margin = std::min(row.min_final_margin, weighted / rep.c_prime);
      if (weighted < rep.c_prime) {
        if (drift) ++row.final_violations_drift; else ++row.final_violations;
      }
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace fatou
