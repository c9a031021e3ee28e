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

#include "fatou/series.hpp"

#include <algorithm>
#include <string>

#include "fatou/error.hpp"

namespace fatou {
namespace {

constexpr std::size_t offset(int d) noexcept { return Series2::index(d, 0); }

void require_same_order(const Series2& a, const Series2& b, const char* where) {
  if (a.order() != b.order()) {
    throw DomainError(std::string(where) + ": order mismatch (" + std::to_string(a.order()) + " vs " +
                      std::to_string(b.order()) + ")");
  }
}

// out_{da+db} += scale * A_da * B_db on homogeneous parts.
inline void accumulate_homogeneous(const Complex* a, int da, const Complex* b, int db, Complex* out,
                                   Complex scale) noexcept {
  const Complex* pa = a + offset(da);
  const Complex* pb = b + offset(db);
  Complex* po = out + offset(da + db);
  for (int i = 0; i <= da; ++i) {
    const Complex ai = pa[i];
    if (ai == Complex{}) continue;
    const Complex s = scale * ai;
    for (int j = 0; j <= db; ++j) po[i + j] += s * pb[j];
  }
}

// Univariate scalar series helpers for composition.
using Uni = std::vector<Complex>;

Uni uni_mul(const Uni& a, const Uni& b) {
  const std::size_t n = a.size();
  Uni out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == Complex{}) continue;
    for (std::size_t j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

Series2::Series2(int order) : order_(order) {
  if (order < 0) throw DomainError("Series2: negative order");
  c_.assign(size_for(order), Complex{});
}

Series2 Series2::constant(int order, Complex c) {
  Series2 s(order);
  s.c_[0] = c;
  return s;
}

Series2 Series2::variable(int order, int which) {
  Series2 s(order);
  if (order >= 1) s.at(which == 0 ? 1 : 0, which == 0 ? 0 : 1) = 1.0;
  return s;
}

Complex Series2::coeff(int l1, int l2) const noexcept {
  if (l1 < 0 || l2 < 0 || l1 + l2 > order_) return {};
  return c_[index(l1, l2)];
}

Complex& Series2::at(int l1, int l2) {
  if (l1 < 0 || l2 < 0 || l1 + l2 > order_) throw DomainError("Series2: multi-index beyond order");
  return c_[index(l1, l2)];
}

Series2 Series2::with_order(int order) const {
  Series2 out(order);
  const std::size_t n = std::min(out.c_.size(), c_.size());
  std::copy_n(c_.begin(), n, out.c_.begin());
  return out;
}

Series2 Series2::homogeneous(int d) const {
  Series2 out(order_);
  if (d < 0 || d > order_) return out;
  std::copy_n(c_.begin() + static_cast<std::ptrdiff_t>(offset(d)), d + 1,
              out.c_.begin() + static_cast<std::ptrdiff_t>(offset(d)));
  return out;
}

Series2& Series2::operator+=(const Series2& o) {
  require_same_order(*this, o, "Series2 +");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Series2& Series2::operator-=(const Series2& o) {
  require_same_order(*this, o, "Series2 -");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Series2& Series2::operator*=(Complex s) noexcept {
  for (auto& c : c_) c *= s;
  return *this;
}

Series2 Series2::operator-() const {
  Series2 out = *this;
  out *= -1.0;
  return out;
}

Series2 operator*(const Series2& a, const Series2& b) { return series2_mul(a, b); }

Complex Series2::eval(Complex z, Complex w) const noexcept {
  // Horner in w for each power of z, then Horner in z.
  Complex acc{};
  for (int l1 = order_; l1 >= 0; --l1) {
    Complex row{};
    for (int l2 = order_ - l1; l2 >= 0; --l2) row = row * w + c_[index(l1, l2)];
    acc = acc * z + row;
  }
  return acc;
}

void Series2::check_finite(const char* where) const {
  for (const auto& c : c_) {
    if (!is_finite(c)) throw NonFiniteError(std::string(where) + ": non-finite series coefficient");
  }
}

double Series2::max_abs(int dmin, int dmax) const noexcept {
  double m = 0.0;
  dmin = std::max(dmin, 0);
  dmax = std::min(dmax, order_);
  for (int d = dmin; d <= dmax; ++d) {
    for (int l2 = 0; l2 <= d; ++l2) m = std::max(m, std::abs(c_[index(d - l2, l2)]));
  }
  return m;
}

Series2 series2_mul(const Series2& a, const Series2& b) {
  require_same_order(a, b, "series2_mul");
  const int D = a.order();
  Series2 out(D);
  const Complex* pa = a.data().data();
  const Complex* pb = b.data().data();
  Complex* po = out.data().data();
  for (int da = 0; da <= D; ++da) {
    for (int db = 0; da + db <= D; ++db) accumulate_homogeneous(pa, da, pb, db, po, 1.0);
  }
  out.check_finite("series2_mul");
  return out;
}

Series2 series2_exp(const Series2& a) {
  if (a.constant_term() != Complex{}) throw DomainError("series2_exp: constant term must be zero");
  // Euler operator E = z d/dz + w d/dw acts on degree-k parts as
  // multiplication by k, and E(e^a) = E(a) e^a. Comparing degree-d parts:
  //   d e_d = sum_{k=1..d} k a_k e_{d-k}.
  const int D = a.order();
  Series2 e(D);
  const Complex* pa = a.data().data();
  Complex* pe = e.data().data();
  pe[0] = 1.0;
  for (int d = 1; d <= D; ++d) {
    for (int k = 1; k <= d; ++k) accumulate_homogeneous(pa, k, pe, d - k, pe, static_cast<double>(k));
    const double inv = 1.0 / d;
    for (int i = 0; i <= d; ++i) pe[offset(d) + i] *= inv;
  }
  e.check_finite("series2_exp");
  return e;
}

Series2 series2_exp_any(const Series2& a) {
  const Complex a0 = a.constant_term();
  if (!is_finite(a0)) throw NonFiniteError("series2_exp_any: non-finite constant term");
  Series2 shifted = a;
  shifted.data()[0] = 0.0;
  Series2 e = series2_exp(shifted);
  e *= std::exp(a0);
  e.check_finite("series2_exp_any");
  return e;
}

Series2 series2_reciprocal(const Series2& a) {
  const Complex b0 = a.constant_term();
  if (b0 == Complex{}) throw DomainError("series2_reciprocal: zero constant term");
  const int D = a.order();
  Series2 r(D);
  const Complex* pa = a.data().data();
  Complex* pr = r.data().data();
  const Complex inv0 = 1.0 / b0;
  pr[0] = inv0;
  for (int d = 1; d <= D; ++d) {
    for (int k = 1; k <= d; ++k) accumulate_homogeneous(pa, k, pr, d - k, pr, 1.0);
    for (int i = 0; i <= d; ++i) pr[offset(d) + i] *= -inv0;
  }
  r.check_finite("series2_reciprocal");
  return r;
}

Series2 series2_pow(const Series2& a, int n) {
  if (n < 0) throw DomainError("series2_pow: negative exponent");
  Series2 result = Series2::constant(a.order(), 1.0);
  Series2 base = a;
  while (n > 0) {
    if (n & 1) result = series2_mul(result, base);
    n >>= 1;
    if (n > 0) base = series2_mul(base, base);
  }
  return result;
}

Series2 series2_divide_z(const Series2& a, int k, double tol) {
  if (k < 0 || k > a.order()) throw DomainError("series2_divide_z: shift outside the retained degrees");
  const double scale = std::max(1.0, a.max_abs(0, a.order()));
  for (int d = 0; d <= a.order(); ++d) {
    for (int l1 = 0; l1 < std::min(k, d + 1); ++l1) {
      if (std::abs(a.coeff(l1, d - l1)) > tol * scale) {
        throw DomainError("series2_divide_z: series is not divisible by z^" + std::to_string(k));
      }
    }
  }
  Series2 out(a.order() - k);
  for (int d = 0; d <= out.order(); ++d) {
    for (int l2 = 0; l2 <= d; ++l2) out.set(d - l2, l2, a.coeff(d - l2 + k, l2));
  }
  return out;
}

Series2 series2_compose(const Series2& s, const Series2& u, const Series2& v) {
  require_same_order(s, u, "series2_compose");
  require_same_order(s, v, "series2_compose");
  if (u.constant_term() != Complex{} || v.constant_term() != Complex{}) {
    throw DomainError("series2_compose: inner series must vanish at the origin");
  }
  const int D = s.order();
  // Powers of v, then Horner in u over rows sum_l2 c_{l1,l2} v^l2.
  std::vector<Series2> vp;
  vp.reserve(static_cast<std::size_t>(D) + 1);
  vp.push_back(Series2::constant(D, 1.0));
  for (int k = 1; k <= D; ++k) vp.push_back(series2_mul(vp.back(), v));
  Series2 acc(D);
  for (int l1 = D; l1 >= 0; --l1) {
    Series2 row(D);
    for (int l2 = 0; l1 + l2 <= D; ++l2) {
      const Complex c = s.coeff(l1, l2);
      if (c == Complex{}) continue;
      // v^l2 has valuation l2, so only its degrees up to D are read.
      Series2 term = vp[static_cast<std::size_t>(l2)];
      term *= c;
      row += term;
    }
    acc = (l1 == D) ? row : series2_mul(acc, u) + row;
  }
  acc.check_finite("series2_compose");
  return acc;
}

Series1::Series1(int order) {
  if (order < 0) throw DomainError("Series1: negative order");
  c_.assign(static_cast<std::size_t>(order) + 1, ComplexPoint2{});
}

Series1 Series1::scaled(Complex s) const {
  Series1 out(order());
  Complex p = 1.0;
  for (int k = 0; k <= order(); ++k) {
    out[k] = c_[static_cast<std::size_t>(k)] * p;
    p *= s;
  }
  return out;
}

ComplexPoint2 series1_eval(const Series1& psi, Complex w) noexcept {
  ComplexPoint2 acc{};
  for (int k = psi.order(); k >= 0; --k) acc = acc * w + psi[k];
  return acc;
}

Series1 series1_compose_map(const MapJet& F, const Series1& psi) {
  const int D = psi.order();
  if (psi[0] != ComplexPoint2{}) throw DomainError("series1_compose_map: psi must vanish at w = 0");
  if (F.first.order() < D || F.second.order() < D) {
    throw DomainError("series1_compose_map: map jet order below series order");
  }
  const std::size_t n = static_cast<std::size_t>(D) + 1;
  Uni x(n), y(n);
  for (int k = 0; k <= D; ++k) {
    x[static_cast<std::size_t>(k)] = psi[k].z1;
    y[static_cast<std::size_t>(k)] = psi[k].z2;
  }
  std::vector<Uni> ypow;
  ypow.reserve(n);
  ypow.push_back(Uni(n));
  ypow[0][0] = 1.0;
  for (int k = 1; k <= D; ++k) ypow.push_back(uni_mul(ypow.back(), y));

  Series1 out(D);
  for (int comp = 0; comp < 2; ++comp) {
    const Series2& f = comp == 0 ? F.first : F.second;
    Uni acc(n);
    for (int l1 = D; l1 >= 0; --l1) {
      Uni row(n);
      for (int l2 = 0; l1 + l2 <= D; ++l2) {
        const Complex c = f.coeff(l1, l2);
        if (c == Complex{}) continue;
        const Uni& p = ypow[static_cast<std::size_t>(l2)];
        for (std::size_t i = static_cast<std::size_t>(l2); i < n; ++i) row[i] += c * p[i];
      }
      if (l1 == D) {
        acc = std::move(row);
      } else {
        acc = uni_mul(acc, x);
        for (std::size_t i = 0; i < n; ++i) acc[i] += row[i];
      }
    }
    for (int k = 0; k <= D; ++k) {
      const Complex v = acc[static_cast<std::size_t>(k)];
      if (!is_finite(v)) throw NonFiniteError("series1_compose_map: non-finite coefficient");
      if (comp == 0) out[k].z1 = v; else out[k].z2 = v;
    }
  }
  return out;
}

}  // namespace fatou
