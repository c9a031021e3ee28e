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

// Dense truncated power series.
//
// Series2 holds a scalar series in two variables (z, w) truncated at total
// degree D. Coefficients are stored by total degree d = l1 + l2 and, inside a
// degree, by increasing power of w:
//
//   index(l1, l2) = d (d + 1) / 2 + l2
//
// so a series of order D has exactly (D + 1)(D + 2) / 2 coefficients.
// Products never read or write past degree D; dropping higher terms is the
// whole truncation, nothing is approximated.
//
// Series1 holds a C^2-valued series in one variable w truncated at degree D.

#ifndef FATOU_SERIES_HPP
#define FATOU_SERIES_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "fatou/complex.hpp"

namespace fatou {

class Series2 {
 public:
  /// Zero series of the given order (order >= 0).
  explicit Series2(int order = 0);

  static Series2 constant(int order, Complex c);
  /// The coordinate function z (variable 0) or w (variable 1).
  static Series2 variable(int order, int which);

  static constexpr std::size_t index(int l1, int l2) noexcept {
    const std::size_t d = static_cast<std::size_t>(l1 + l2);
    return d * (d + 1) / 2 + static_cast<std::size_t>(l2);
  }
  static constexpr std::size_t size_for(int order) noexcept {
    return static_cast<std::size_t>(order + 1) * static_cast<std::size_t>(order + 2) / 2;
  }

  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return c_.size(); }

  /// Coefficient of z^l1 w^l2; zero for l1 + l2 > order.
  Complex coeff(int l1, int l2) const noexcept;
  Complex& at(int l1, int l2);
  void set(int l1, int l2, Complex v) { at(l1, l2) = v; }

  std::span<const Complex> data() const noexcept { return c_; }
  std::span<Complex> data() noexcept { return c_; }

  Complex constant_term() const noexcept { return c_[0]; }

  /// Same coefficients, truncated or zero-padded to another order.
  Series2 with_order(int order) const;

  /// Homogeneous part of degree d as a fresh series.
  Series2 homogeneous(int d) const;

  Series2& operator+=(const Series2& o);
  Series2& operator-=(const Series2& o);
  Series2& operator*=(Complex s) noexcept;
  Series2 operator-() const;

  friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
  friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
  friend Series2 operator*(Series2 a, Complex s) { return a *= s; }
  friend Series2 operator*(Complex s, Series2 a) { return a *= s; }
  friend Series2 operator*(const Series2& a, const Series2& b);

  /// Value of the polynomial at (z, w).
  Complex eval(Complex z, Complex w) const noexcept;

  /// Throws NonFiniteError when any coefficient is NaN or Inf.
  void check_finite(const char* where) const;

  /// Largest coefficient modulus among degrees in [dmin, dmax].
  double max_abs(int dmin, int dmax) const noexcept;

 private:
  int order_ = 0;
  std::vector<Complex> c_;
};

/// Truncated Cauchy product; both operands must share the order.
Series2 series2_mul(const Series2& a, const Series2& b);

/// exp(a) for a series with zero constant term.
Series2 series2_exp(const Series2& a);

/// exp(a) for any finite constant term: e^{a0} exp(a - a0).
Series2 series2_exp_any(const Series2& a);

/// 1 / a; the constant term must be nonzero.
Series2 series2_reciprocal(const Series2& a);

/// a^n for n >= 0.
Series2 series2_pow(const Series2& a, int n);

/// Exact division by z^k. The dropped coefficients (those with l1 < k) must
/// vanish to within tol times the largest coefficient; the result keeps
/// order - k.
Series2 series2_divide_z(const Series2& a, int k, double tol = 1e-12);

/// s(u, v) where u and v are series of the same order as s. Only meaningful
/// (and only accepted) when u and v have zero constant term.
Series2 series2_compose(const Series2& s, const Series2& u, const Series2& v);

/// Pair of scalar series: the jet of a map C^2 -> C^2.
struct MapJet {
  Series2 first;
  Series2 second;

  int order() const noexcept { return first.order(); }
  ComplexPoint2 eval(const ComplexPoint2& p) const noexcept { return {first.eval(p.z1, p.z2), second.eval(p.z1, p.z2)}; }
  ComplexPoint2 coeff(int l1, int l2) const noexcept { return {first.coeff(l1, l2), second.coeff(l1, l2)}; }

  static MapJet identity(int order) { return {Series2::variable(order, 0), Series2::variable(order, 1)}; }
};

/// C^2-valued series in one variable.
class Series1 {
 public:
  explicit Series1(int order = 0);

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  ComplexPoint2& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const ComplexPoint2& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  std::span<const ComplexPoint2> data() const noexcept { return c_; }

  /// Coefficients of w^k scaled by s^k, i.e. the series of psi(s w).
  Series1 scaled(Complex s) const;

 private:
  std::vector<ComplexPoint2> c_;
};

/// Horner evaluation of psi at w.
ComplexPoint2 series1_eval(const Series1& psi, Complex w) noexcept;

/// Univariate series of F(psi(w)) truncated at psi's order. psi must have zero
/// constant term and F must have order at least psi's order.
Series1 series1_compose_map(const MapJet& F, const Series1& psi);

}  // namespace fatou

#endif  // FATOU_SERIES_HPP
