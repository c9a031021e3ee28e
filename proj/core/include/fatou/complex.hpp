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

#ifndef FATOU_COMPLEX_HPP
#define FATOU_COMPLEX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace fatou {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline bool is_finite(Complex c) noexcept { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

/// A point (z1, z2) of C^2. In the explicit examples the coordinates are
/// usually written (z, w).
struct ComplexPoint2 {
  Complex z1{};
  Complex z2{};

  ComplexPoint2& operator+=(const ComplexPoint2& o) noexcept {
    z1 += o.z1;
    z2 += o.z2;
    return *this;
  }
  ComplexPoint2& operator-=(const ComplexPoint2& o) noexcept {
    z1 -= o.z1;
    z2 -= o.z2;
    return *this;
  }
  ComplexPoint2& operator*=(Complex s) noexcept {
    z1 *= s;
    z2 *= s;
    return *this;
  }

  friend ComplexPoint2 operator+(ComplexPoint2 a, const ComplexPoint2& b) noexcept { return a += b; }
  friend ComplexPoint2 operator-(ComplexPoint2 a, const ComplexPoint2& b) noexcept { return a -= b; }
  friend ComplexPoint2 operator*(Complex s, ComplexPoint2 a) noexcept { return a *= s; }
  friend ComplexPoint2 operator*(ComplexPoint2 a, Complex s) noexcept { return a *= s; }
  friend bool operator==(const ComplexPoint2&, const ComplexPoint2&) = default;
};

inline bool is_finite(const ComplexPoint2& p) noexcept { return is_finite(p.z1) && is_finite(p.z2); }

/// max(|z1|, |z2|), the norm used by the majorant estimates.
inline double norm_max(const ComplexPoint2& p) noexcept { return std::max(std::abs(p.z1), std::abs(p.z2)); }

/// Euclidean norm on C^2 = R^4.
inline double norm_euclid(const ComplexPoint2& p) noexcept { return std::hypot(std::abs(p.z1), std::abs(p.z2)); }

/// e^x - 1 without cancellation for small |x|.
inline Complex expm1(Complex x) noexcept {
  const double re = x.real();
  const double im = x.imag();
  if (im == 0.0) return {std::expm1(re), 0.0};
  const double s = std::sin(0.5 * im);
  return {std::expm1(re) * std::cos(im) - 2.0 * s * s, std::exp(re) * std::sin(im)};
}

/// (e^x - 1) / x, continuously extended by 1 at x = 0.
inline Complex exprel(Complex x) noexcept {
  if (x == Complex{}) return {1.0, 0.0};
  if (std::abs(x) < 1e-5) return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x * (1.0 / 24.0)));
  return expm1(x) / x;
}

/// Principal argument of w2 / w1 in (-pi, pi].
inline double arg_increment(Complex from, Complex to) noexcept { return std::arg(to / from); }

}  // namespace fatou

#endif  // FATOU_COMPLEX_HPP
