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

// Unevaluated-sum double-double arithmetic (hi + lo, |lo| <= ulp(hi)/2),
// giving roughly 106 bits of significand. Only the operations needed by the
// coefficient recursions are provided.

#ifndef FATOU_DOUBLE_DOUBLE_HPP
#define FATOU_DOUBLE_DOUBLE_HPP

#include <cmath>
#include <complex>

namespace fatou {

namespace dd_detail {

inline void two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void quick_two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) noexcept {
  p = a * b;
  e = std::fma(a, b, -p);
}

}  // namespace dd_detail

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const noexcept { return hi + lo; }

  friend DoubleDouble operator-(DoubleDouble a) noexcept { return {-a.hi, -a.lo}; }

  friend DoubleDouble operator+(DoubleDouble a, DoubleDouble b) noexcept {
    double s, e, t, f;
    dd_detail::two_sum(a.hi, b.hi, s, e);
    dd_detail::two_sum(a.lo, b.lo, t, f);
    e += t;
    dd_detail::quick_two_sum(s, e, s, e);
    e += f;
    dd_detail::quick_two_sum(s, e, s, e);
    return {s, e};
  }
  friend DoubleDouble operator-(DoubleDouble a, DoubleDouble b) noexcept { return a + (-b); }

  friend DoubleDouble operator*(DoubleDouble a, DoubleDouble b) noexcept {
    double p, e;
    dd_detail::two_prod(a.hi, b.hi, p, e);
    e += a.hi * b.lo + a.lo * b.hi;
    dd_detail::quick_two_sum(p, e, p, e);
    return {p, e};
  }

  friend DoubleDouble operator/(DoubleDouble a, DoubleDouble b) noexcept {
    const double q1 = a.hi / b.hi;
    DoubleDouble r = a - b * DoubleDouble(q1);
    const double q2 = r.hi / b.hi;
    r = r - b * DoubleDouble(q2);
    const double q3 = r.hi / b.hi;
    double s, e;
    dd_detail::quick_two_sum(q1, q2, s, e);
    return DoubleDouble(s, e) + DoubleDouble(q3);
  }

  DoubleDouble& operator+=(DoubleDouble o) noexcept { return *this = *this + o; }
  DoubleDouble& operator-=(DoubleDouble o) noexcept { return *this = *this - o; }
  DoubleDouble& operator*=(DoubleDouble o) noexcept { return *this = *this * o; }
  DoubleDouble& operator/=(DoubleDouble o) noexcept { return *this = *this / o; }

  friend bool operator<(DoubleDouble a, DoubleDouble b) noexcept {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
  }
  friend bool operator==(DoubleDouble a, DoubleDouble b) noexcept { return a.hi == b.hi && a.lo == b.lo; }
};

inline DoubleDouble abs(DoubleDouble a) noexcept { return a.hi < 0.0 ? -a : a; }

inline DoubleDouble sqrt(DoubleDouble a) noexcept {
  if (a.hi <= 0.0) return {0.0};
  const double x = std::sqrt(a.hi);
  // One Newton step from the double approximation.
  const DoubleDouble xx = DoubleDouble(x) * DoubleDouble(x);
  return DoubleDouble(x) + DoubleDouble((a - xx).hi * (0.5 / x));
}

/// Minimal complex number over DoubleDouble. std::complex is only specified
/// for the built-in floating types, so the handful of operations used by the
/// recursions are spelled out.
struct DDComplex {
  DoubleDouble re;
  DoubleDouble im;

  constexpr DDComplex() = default;
  constexpr DDComplex(DoubleDouble r, DoubleDouble i = {}) : re(r), im(i) {}  // NOLINT
  DDComplex(std::complex<double> c) : re(c.real()), im(c.imag()) {}           // NOLINT

  explicit operator std::complex<double>() const noexcept { return {double(re), double(im)}; }

  friend DDComplex operator+(DDComplex a, DDComplex b) noexcept { return {a.re + b.re, a.im + b.im}; }
  friend DDComplex operator-(DDComplex a, DDComplex b) noexcept { return {a.re - b.re, a.im - b.im}; }
  friend DDComplex operator-(DDComplex a) noexcept { return {-a.re, -a.im}; }
  friend DDComplex operator*(DDComplex a, DDComplex b) noexcept {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend DDComplex operator/(DDComplex a, DDComplex b) noexcept {
    const DoubleDouble den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  DDComplex& operator+=(DDComplex o) noexcept { return *this = *this + o; }
  DDComplex& operator-=(DDComplex o) noexcept { return *this = *this - o; }
  DDComplex& operator*=(DDComplex o) noexcept { return *this = *this * o; }
};

inline double abs(const DDComplex& c) noexcept { return std::hypot(double(c.re), double(c.im)); }

}  // namespace fatou

#endif  // FATOU_DOUBLE_DOUBLE_HPP
