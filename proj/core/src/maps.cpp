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

#include "fatou/maps.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fatou/error.hpp"

namespace fatou {
namespace {

// Below this |z| a conjugated segment is evaluated from its Taylor jet
// instead of dividing by z^l.
constexpr double kSegmentJetRadius = 0.05;
constexpr int kSegmentJetOrder = 40;

// z e^w with the w-axis kept exact: 0 * inf would give NaN.
Complex scale_by_exp(Complex z, Complex w) noexcept { return z == Complex{} ? Complex{} : z * std::exp(w); }

// Closed-form pure-z part: Taylor series inside this radius.
constexpr double kPureSeriesRadius = 0.25;
constexpr int kPureSeriesDegree = 64;
constexpr int kPureTableSize = 48;

Complex poly_shear(const std::vector<Complex>& a, Complex z) noexcept {
  // g(z) = z^2 (a_2 + z (a_3 + ...))
  Complex acc{};
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc * z * z;
}

Complex poly_overshear(const std::vector<Complex>& c, Complex z) noexcept {
  Complex acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc * z;
}

Series2 series_shear(const std::vector<Complex>& a, const Series2& Z) {
  const int D = Z.order();
  Series2 acc(D);
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = series2_mul(acc, Z) + Series2::constant(D, *it);
  return series2_mul(series2_mul(acc, Z), Z);
}

Series2 series_overshear(const std::vector<Complex>& c, const Series2& Z) {
  const int D = Z.order();
  Series2 acc(D);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = series2_mul(acc, Z) + Series2::constant(D, *it);
  return series2_mul(acc, Z);
}

Complex ipow(Complex z, int n) noexcept {
  Complex r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

bool escaped_point(const ComplexPoint2& p) noexcept {
  return !is_finite(p) || norm_max(p) > kEscapeRadius;
}

// Univariate scalar series (coefficients 0..n-1).
using Uni = std::vector<Complex>;

Uni uni_mul(const Uni& a, const Uni& b) {
  Uni out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == Complex{}) continue;
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Uni uni_exp(const Uni& a) {
  // n e_n = sum_{k=1..n} k a_k e_{n-k}, a_0 = 0.
  Uni e(a.size());
  e[0] = 1.0;
  for (std::size_t n = 1; n < a.size(); ++n) {
    Complex s{};
    for (std::size_t k = 1; k <= n; ++k) s += static_cast<double>(k) * a[k] * e[n - k];
    e[n] = s / static_cast<double>(n);
  }
  return e;
}

}  // namespace

// ElementaryMap -------------------------------------------------------------------

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::F1: return "F1";
    case GeneratorKind::F2: return "F2";
    case GeneratorKind::F3: return "F3";
    case GeneratorKind::F4: return "F4";
    case GeneratorKind::Shear: return "Shear";
    case GeneratorKind::Overshear: return "Overshear";
    case GeneratorKind::F6: return "F6";
    case GeneratorKind::Theta: return "Theta";
    case GeneratorKind::Bl: return "Bl";
    case GeneratorKind::BlInverse: return "BlInverse";
    case GeneratorKind::Scale: return "Scale";
  }
  return "?";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
  for (auto k : {GeneratorKind::F1, GeneratorKind::F2, GeneratorKind::F3, GeneratorKind::F4, GeneratorKind::Shear,
                 GeneratorKind::Overshear, GeneratorKind::F6, GeneratorKind::Theta, GeneratorKind::Bl,
                 GeneratorKind::BlInverse, GeneratorKind::Scale}) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown generator kind '" + name + "'");
}

ElementaryMap ElementaryMap::shear(std::vector<Complex> a_from_2) {
  ElementaryMap m;
  m.kind = GeneratorKind::Shear;
  m.coeffs = std::move(a_from_2);
  return m;
}

ElementaryMap ElementaryMap::overshear(std::vector<Complex> c_from_1) {
  ElementaryMap m;
  m.kind = GeneratorKind::Overshear;
  m.coeffs = std::move(c_from_1);
  return m;
}

ElementaryMap ElementaryMap::f6(int l) {
  ElementaryMap m;
  m.kind = GeneratorKind::F6;
  m.l = l;
  return m;
}

ElementaryMap ElementaryMap::rotation(double theta) {
  ElementaryMap m;
  m.kind = GeneratorKind::Theta;
  m.theta = theta;
  return m;
}

ElementaryMap ElementaryMap::bl(int l) {
  ElementaryMap m;
  m.kind = GeneratorKind::Bl;
  m.l = l;
  return m;
}

ElementaryMap ElementaryMap::bl_inverse(int l) {
  ElementaryMap m;
  m.kind = GeneratorKind::BlInverse;
  m.l = l;
  return m;
}

ElementaryMap ElementaryMap::scale(Complex a, Complex b) {
  ElementaryMap m;
  m.kind = GeneratorKind::Scale;
  m.scale_z = a;
  m.scale_w = b;
  return m;
}

void ElementaryMap::validate() const {
  for (const auto& c : coeffs) {
    if (!is_finite(c)) throw DomainError(to_string(kind) + ": non-finite coefficient");
  }
  switch (kind) {
    case GeneratorKind::F6:
    case GeneratorKind::Bl:
    case GeneratorKind::BlInverse:
      if (l < 1) throw DomainError(to_string(kind) + ": l must be >= 1");
      break;
    case GeneratorKind::Theta:
      if (!std::isfinite(theta)) throw DomainError("Theta: non-finite angle");
      break;
    case GeneratorKind::Scale:
      if (scale_z == Complex{} || scale_w == Complex{} || !is_finite(scale_z) || !is_finite(scale_w)) {
        throw DomainError("Scale: factors must be finite and nonzero");
      }
      break;
    default:
      break;
  }
}

ComplexPoint2 ElementaryMap::apply(const ComplexPoint2& p) const noexcept {
  const Complex z = p.z1;
  const Complex w = p.z2;
  switch (kind) {
    case GeneratorKind::F1: return {z, w + z};
    case GeneratorKind::F2: return {scale_by_exp(z, w), w};
    case GeneratorKind::F3: return {z, w - z};
    case GeneratorKind::F4: return {scale_by_exp(z, -w), w};
    case GeneratorKind::Shear: return {z, w + poly_shear(coeffs, z)};
    case GeneratorKind::Overshear: return {z, w * std::exp(poly_overshear(coeffs, z))};
    case GeneratorKind::F6: return {z, w * std::exp(static_cast<double>(l + 1) * z)};
    case GeneratorKind::Theta: return {z, std::polar(1.0, theta) * w};
    case GeneratorKind::Bl: return {z, ipow(z, l) * w};
    case GeneratorKind::BlInverse: return {z, w / ipow(z, l)};
    case GeneratorKind::Scale: return {scale_z * z, scale_w * w};
  }
  return p;
}

ElementaryMap ElementaryMap::inverse() const {
  ElementaryMap m = *this;
  switch (kind) {
    case GeneratorKind::F1: m.kind = GeneratorKind::F3; break;
    case GeneratorKind::F2: m.kind = GeneratorKind::F4; break;
    case GeneratorKind::F3: m.kind = GeneratorKind::F1; break;
    case GeneratorKind::F4: m.kind = GeneratorKind::F2; break;
    case GeneratorKind::Shear:
    case GeneratorKind::Overshear:
      for (auto& c : m.coeffs) c = -c;
      break;
    case GeneratorKind::F6:
      // (z, w e^{-(l+1) z}) is an overshear with c_1 = -(l+1).
      m.kind = GeneratorKind::Overshear;
      m.coeffs = {Complex(-static_cast<double>(l + 1), 0.0)};
      m.l = 0;
      break;
    case GeneratorKind::Theta: m.theta = -theta; break;
    case GeneratorKind::Bl: m.kind = GeneratorKind::BlInverse; break;
    case GeneratorKind::BlInverse: m.kind = GeneratorKind::Bl; break;
    case GeneratorKind::Scale:
      m.scale_z = 1.0 / scale_z;
      m.scale_w = 1.0 / scale_w;
      break;
  }
  return m;
}

ComplexPoint2 ElementaryMap::apply_inverse(const ComplexPoint2& p) const noexcept {
  const Complex z = p.z1;
  const Complex w = p.z2;
  switch (kind) {
    case GeneratorKind::F1: return {z, w - z};
    case GeneratorKind::F2: return {scale_by_exp(z, -w), w};
    case GeneratorKind::F3: return {z, w + z};
    case GeneratorKind::F4: return {scale_by_exp(z, w), w};
    case GeneratorKind::Shear: return {z, w - poly_shear(coeffs, z)};
    case GeneratorKind::Overshear: return {z, w * std::exp(-poly_overshear(coeffs, z))};
    case GeneratorKind::F6: return {z, w * std::exp(-static_cast<double>(l + 1) * z)};
    case GeneratorKind::Theta: return {z, std::polar(1.0, -theta) * w};
    case GeneratorKind::Bl: return {z, w / ipow(z, l)};
    case GeneratorKind::BlInverse: return {z, ipow(z, l) * w};
    case GeneratorKind::Scale: return {z / scale_z, w / scale_w};
  }
  return p;
}

MapJet ElementaryMap::apply(const MapJet& j) const {
  const Series2& Z = j.first;
  const Series2& W = j.second;
  const int D = j.order();
  switch (kind) {
    case GeneratorKind::F1: return {Z, W + Z};
    case GeneratorKind::F2: return {series2_mul(Z, series2_exp_any(W)), W};
    case GeneratorKind::F3: return {Z, W - Z};
    case GeneratorKind::F4: return {series2_mul(Z, series2_exp_any(-W)), W};
    case GeneratorKind::Shear: return {Z, W + series_shear(coeffs, Z)};
    case GeneratorKind::Overshear: return {Z, series2_mul(W, series2_exp_any(series_overshear(coeffs, Z)))};
    case GeneratorKind::F6:
      return {Z, series2_mul(W, series2_exp_any(Z * Complex(static_cast<double>(l + 1), 0.0)))};
    case GeneratorKind::Theta: return {Z, W * std::polar(1.0, theta)};
    case GeneratorKind::Bl: return {Z, series2_mul(W, series2_pow(Z, l))};
    case GeneratorKind::BlInverse: {
      if (Z.constant_term() != Complex{}) {
        return {Z, series2_mul(W, series2_pow(series2_reciprocal(Z), l))};
      }
      // Z = z * unit and W divisible by z^l: divide both symbolically.
      if (D < l) throw DomainError("BlInverse: jet order below conjugation exponent");
      Series2 zhat = series2_divide_z(Z, 1).with_order(D - l);
      if (zhat.constant_term() == Complex{}) {
        throw DomainError("BlInverse: first component does not vanish to first order only");
      }
      Series2 wred = series2_divide_z(W, l);
      return {Z.with_order(D - l), series2_mul(wred, series2_pow(series2_reciprocal(zhat), l))};
    }
    case GeneratorKind::Scale: return {Z * scale_z, W * scale_w};
  }
  return j;
}

std::string to_string(Fastpath fp) {
  switch (fp) {
    case Fastpath::None: return "none";
    case Fastpath::Rank0: return "rank0";
    case Fastpath::Rank1: return "rank1";
    case Fastpath::Rotation: return "rotation";
  }
  return "?";
}

Fastpath fastpath_from_string(const std::string& name) {
  for (auto f : {Fastpath::None, Fastpath::Rank0, Fastpath::Rank1, Fastpath::Rotation}) {
    if (to_string(f) == name) return f;
  }
  throw DomainError("unknown fastpath '" + name + "'");
}

// AutoMap -----------------------------------------------------------------------

struct AutoMap::Segment {
  std::size_t begin = 0;  // index of Bl
  std::size_t end = 0;    // index of BlInverse
  MapJet forward;
  MapJet backward;
};

struct AutoMap::ClosedForm {
  int l = 0;
  std::vector<Complex> shear;      // a_2, a_3, ...
  std::vector<Complex> overshear;  // c_1, c_2, ...
  double f6_factor = 0.0;          // l_F6 + 1
  double theta = 0.0;
  Complex rotation{1.0, 0.0};
  std::vector<Complex> pure;              // Taylor coefficients of P(z)
  std::array<int, kPureTableSize> degree{};  // Horner degree for |z| <= r0 2^-j

  Complex pure_part(Complex z) const noexcept {
    const double r = std::abs(z);
    if (r >= kPureSeriesRadius) {
      const Complex zez = z * std::exp(z);
      const Complex z0 = z * std::exp(zez);
      return (z - zez + poly_shear(shear, z0)) / ipow(z, l);
    }
    int j = r > 0.0 ? static_cast<int>(std::floor(std::log2(kPureSeriesRadius / r))) : kPureTableSize - 1;
    j = std::clamp(j, 0, kPureTableSize - 1);
    Complex acc{};
    for (int k = degree[static_cast<std::size_t>(j)]; k >= 0; --k) acc = acc * z + pure[static_cast<std::size_t>(k)];
    return acc;
  }

  ComplexPoint2 eval(const ComplexPoint2& p) const noexcept {
    const Complex z = p.z1;
    const Complex w = p.z2;
    if (z == Complex{}) return {z, rotation * w};
    const Complex ez = std::exp(z);
    const Complex zez = z * ez;
    const Complex u = ipow(z, l) * w;
    const Complex em1u = fatou::expm1(u);
    const Complex phi_u = exprel(u);
    const Complex z0 = z * std::exp(zez);
    const Complex x = zez * em1u;
    const Complex big_z = z0 + z0 * x * exprel(x);
    Complex q;
    if (std::abs(z) >= kPureSeriesRadius) {
      // Direct form: dividing by z^l is harmless here, while the expanded
      // shear difference below cancels badly once |z0| is large.
      const Complex w1 = u + z;
      q = (w1 - zez * std::exp(u) + poly_shear(shear, big_z)) / ipow(z, l);
    } else {
      Complex s{};
      Complex z0pow = z0;
      for (std::size_t k = 0; k < shear.size(); ++k) {
        z0pow *= z0;
        const double i = static_cast<double>(k + 2);
        s += i * shear[k] * z0pow * exprel(i * x);
      }
      const Complex bracket = 1.0 - zez * phi_u * (1.0 - s);
      q = pure_part(z) + w * bracket;
    }
    const Complex e = poly_overshear(overshear, big_z) + f6_factor * big_z - static_cast<double>(l) * (zez + x);
    return {big_z, q * std::exp(e) * rotation};
  }
};

AutoMap::AutoMap(std::vector<ElementaryMap> pipeline, Fastpath fastpath)
    : pipeline_(std::move(pipeline)), fastpath_(fastpath) {
  for (const auto& g : pipeline_) g.validate();

  auto segments = std::make_shared<std::vector<Segment>>();
  for (std::size_t i = 0; i < pipeline_.size(); ++i) {
    if (pipeline_[i].kind != GeneratorKind::Bl) continue;
    std::size_t j = i + 1;
    bool nested = false;
    while (j < pipeline_.size() && pipeline_[j].kind != GeneratorKind::BlInverse) {
      if (pipeline_[j].kind == GeneratorKind::Bl) nested = true;
      ++j;
    }
    if (nested || j == pipeline_.size() || pipeline_[j].l != pipeline_[i].l) continue;
    Segment seg;
    seg.begin = i;
    seg.end = j;
    const int l = pipeline_[i].l;
    try {
      MapJet fwd = MapJet::identity(kSegmentJetOrder + l);
      for (std::size_t k = i; k <= j; ++k) fwd = pipeline_[k].apply(fwd);
      MapJet bwd = MapJet::identity(kSegmentJetOrder + l);
      for (std::size_t k = j + 1; k-- > i;) bwd = pipeline_[k].inverse().apply(bwd);
      seg.forward = {fwd.first.with_order(kSegmentJetOrder), fwd.second.with_order(kSegmentJetOrder)};
      seg.backward = {bwd.first.with_order(kSegmentJetOrder), bwd.second.with_order(kSegmentJetOrder)};
    } catch (const DomainError&) {
      // Not expandable at z = 0 (a genuine pole); evaluate naively.
      continue;
    }
    segments->push_back(std::move(seg));
    i = j;
  }
  segments_ = std::move(segments);

  if (fastpath_ == Fastpath::None) return;

  // Shape: Bl(l) F1 F2 F3 F4 Shear [Overshear] F6 BlInverse(l) [Theta]
  auto fail = [&] { throw DomainError("fastpath " + to_string(fastpath_) + " does not match the pipeline shape"); };
  const auto& pl = pipeline_;
  std::size_t k = 0;
  auto expect = [&](GeneratorKind kind) -> const ElementaryMap& {
    if (k >= pl.size() || pl[k].kind != kind) fail();
    return pl[k++];
  };
  auto cf = std::make_shared<ClosedForm>();
  cf->l = expect(GeneratorKind::Bl).l;
  expect(GeneratorKind::F1);
  expect(GeneratorKind::F2);
  expect(GeneratorKind::F3);
  expect(GeneratorKind::F4);
  cf->shear = expect(GeneratorKind::Shear).coeffs;
  if (k < pl.size() && pl[k].kind == GeneratorKind::Overshear) cf->overshear = pl[k++].coeffs;
  cf->f6_factor = static_cast<double>(expect(GeneratorKind::F6).l + 1);
  if (expect(GeneratorKind::BlInverse).l != cf->l) fail();
  if (k < pl.size() && pl[k].kind == GeneratorKind::Theta) cf->theta = pl[k++].theta;
  if (k != pl.size()) fail();
  if (fastpath_ == Fastpath::Rotation && cf->theta == 0.0 && pl.back().kind != GeneratorKind::Theta) fail();
  cf->rotation = std::polar(1.0, cf->theta);

  // Pure part numerator N(z) = z - z e^z + g(z e^{z e^z}) as a Taylor series.
  const std::size_t n = static_cast<std::size_t>(kPureSeriesDegree + cf->l) + 1;
  Uni ez(n);
  double fact = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) fact *= static_cast<double>(i);
    ez[i] = 1.0 / fact;
  }
  Uni zez(n);
  for (std::size_t i = 1; i < n; ++i) zez[i] = ez[i - 1];
  Uni z0 = uni_exp(zez);
  for (std::size_t i = n - 1; i > 0; --i) z0[i] = z0[i - 1];
  z0[0] = 0.0;
  Uni num(n);
  num[1] += 1.0;
  for (std::size_t i = 0; i < n; ++i) num[i] -= zez[i];
  Uni z0pow = z0;
  for (const auto& a : cf->shear) {
    z0pow = uni_mul(z0pow, z0);
    for (std::size_t i = 0; i < n; ++i) num[i] += a * z0pow[i];
  }
  for (int i = 0; i < cf->l; ++i) {
    if (std::abs(num[static_cast<std::size_t>(i)]) > 1e-12) {
      throw DomainError("fastpath: pure z part has a pole at z = 0 (shear coefficients do not match l)");
    }
  }
  cf->pure.assign(num.begin() + cf->l, num.end());
  for (int j = 0; j < kPureTableSize; ++j) {
    const double r = kPureSeriesRadius * std::ldexp(1.0, -j);
    double scale = 0.0;
    double rk = 1.0;
    std::vector<double> mags(cf->pure.size());
    for (std::size_t i = 0; i < cf->pure.size(); ++i) {
      mags[i] = std::abs(cf->pure[i]) * rk;
      scale = std::max(scale, mags[i]);
      rk *= r;
    }
    int deg = static_cast<int>(cf->pure.size()) - 1;
    while (deg > 0 && mags[static_cast<std::size_t>(deg)] <= 1e-19 * scale) --deg;
    cf->degree[static_cast<std::size_t>(j)] = deg;
  }
  closed_ = std::move(cf);
}

int AutoMap::conjugation_l() const noexcept { return closed_ ? closed_->l : 0; }
double AutoMap::rotation_theta() const noexcept { return closed_ ? closed_->theta : 0.0; }

ComplexPoint2 AutoMap::eval_fastpath(const ComplexPoint2& p) const noexcept { return closed_->eval(p); }

EvalOutcome AutoMap::try_eval(const ComplexPoint2& p) const noexcept {
  if (closed_) {
    const ComplexPoint2 r = closed_->eval(p);
    return {r, escaped_point(r)};
  }
  return try_eval_pipeline(p);
}

namespace {

bool use_segment_jet(const ComplexPoint2& p) noexcept {
  const double az = std::abs(p.z1);
  return az < 1e-100 || (az < kSegmentJetRadius && az * std::abs(p.z2) < 0.5);
}

}  // namespace

EvalOutcome AutoMap::try_eval_pipeline(const ComplexPoint2& p) const noexcept {
  ComplexPoint2 q = p;
  std::size_t s = 0;
  const auto& segs = *segments_;
  for (std::size_t i = 0; i < pipeline_.size(); ++i) {
    if (s < segs.size() && segs[s].begin == i) {
      if (use_segment_jet(q)) {
        q = segs[s].forward.eval(q);
        i = segs[s].end;
        ++s;
        continue;
      }
      ++s;
    }
    q = pipeline_[i].apply(q);
    if (!is_finite(q)) return {q, true};
  }
  return {q, escaped_point(q)};
}

EvalOutcome AutoMap::try_eval_inverse(const ComplexPoint2& p) const noexcept {
  ComplexPoint2 q = p;
  const auto& segs = *segments_;
  std::size_t s = segs.size();
  for (std::size_t i = pipeline_.size(); i-- > 0;) {
    if (s > 0 && segs[s - 1].end == i) {
      --s;
      if (use_segment_jet(q)) {
        q = segs[s].backward.eval(q);
        i = segs[s].begin;
        continue;
      }
    }
    q = pipeline_[i].apply_inverse(q);
    if (!is_finite(q)) return {q, true};
  }
  return {q, escaped_point(q)};
}

ComplexPoint2 AutoMap::operator()(const ComplexPoint2& p) const {
  const EvalOutcome r = try_eval(p);
  if (r.escaped) throw EscapeError("map evaluation left the representable range");
  return r.point;
}

AutoMap AutoMap::with_rotation(double theta) const {
  std::vector<ElementaryMap> pl = pipeline_;
  pl.push_back(ElementaryMap::rotation(theta));
  const Fastpath fp = fastpath_ == Fastpath::Rank1 ? Fastpath::Rotation : Fastpath::None;
  return AutoMap(std::move(pl), fp);
}

ComplexPoint2 eval(const AutoMap& map, const ComplexPoint2& p) { return map(p); }

ComplexPoint2 eval_inverse(const AutoMap& map, const ComplexPoint2& p) {
  const EvalOutcome r = map.try_eval_inverse(p);
  if (r.escaped) throw EscapeError("inverse evaluation left the representable range");
  return r.point;
}

// Jets ------------------------------------------------------------------------

MapJet jet(const AutoMap& map, int order) {
  if (order < 1) throw DomainError("jet: order must be >= 1");
  int extra = 0;
  for (const auto& g : map.pipeline()) {
    if (g.kind == GeneratorKind::BlInverse) extra += g.l;
  }
  MapJet j = MapJet::identity(order + extra);
  for (const auto& g : map.pipeline()) j = g.apply(j);
  if (j.order() < order) throw DomainError("jet: pipeline lost more degrees than expected");
  return {j.first.with_order(order), j.second.with_order(order)};
}

MapJet jet_at(const AutoMap& map, const ComplexPoint2& q, int order) {
  if (q == ComplexPoint2{}) return jet(map, order);
  MapJet j = MapJet::identity(order);
  j.first.data()[0] = q.z1;
  j.second.data()[0] = q.z2;
  for (const auto& g : map.pipeline()) {
    if (g.kind == GeneratorKind::BlInverse && j.first.constant_term() == Complex{}) {
      throw DomainError("jet_at: conjugation is singular at this point");
    }
    j = g.apply(j);
  }
  return j;
}

// Presets ---------------------------------------------------------------------

AutoMap make_g() {
  return AutoMap({ElementaryMap::f1(), ElementaryMap::f2(), ElementaryMap::f3(), ElementaryMap::f4()});
}

AutoMap make_rank0(int l) {
  if (l < 1) throw DomainError("rank0: l must be >= 1");
  const AutoMap g = make_g();
  const auto a = solve_shear_coefficients(g, l);
  std::vector<ElementaryMap> base = g.pipeline();
  base.push_back(ElementaryMap::shear(a));
  const auto c = solve_overshear_coefficients(AutoMap(base), l);
  std::vector<ElementaryMap> pl;
  pl.push_back(ElementaryMap::bl(l));
  pl.insert(pl.end(), base.begin(), base.end());
  pl.push_back(ElementaryMap::overshear(c));
  pl.push_back(ElementaryMap::f6(l));
  pl.push_back(ElementaryMap::bl_inverse(l));
  return AutoMap(std::move(pl), Fastpath::Rank0);
}

namespace {

std::vector<ElementaryMap> rank1_pipeline() {
  const AutoMap g = make_g();
  // Pure z terms removed through degree 4, one more than l + 1 for l = 2.
  const auto a = solve_shear_coefficients(g, 3);
  std::vector<ElementaryMap> pl;
  pl.push_back(ElementaryMap::bl(2));
  pl.insert(pl.end(), g.pipeline().begin(), g.pipeline().end());
  pl.push_back(ElementaryMap::shear(a));
  pl.push_back(ElementaryMap::f6(2));
  pl.push_back(ElementaryMap::bl_inverse(2));
  return pl;
}

}  // namespace

AutoMap make_rank1() { return AutoMap(rank1_pipeline(), Fastpath::Rank1); }

AutoMap make_rotation(double theta) {
  auto pl = rank1_pipeline();
  pl.push_back(ElementaryMap::rotation(theta));
  return AutoMap(std::move(pl), Fastpath::Rotation);
}

// Solvers ---------------------------------------------------------------------

std::vector<Complex> solve_shear_coefficients(const MapJet& base_jet, int l) {
  if (l < 1) throw DomainError("solve_shear_coefficients: l must be >= 1");
  if (base_jet.order() < l + 1) throw DomainError("solve_shear_coefficients: jet order too small");
  const Series2& Z = base_jet.first;
  const Series2& W = base_jet.second;
  if (Z.constant_term() != Complex{} || W.constant_term() != Complex{}) {
    throw DomainError("solve_shear_coefficients: base must fix the origin");
  }
  const Complex kappa = Z.coeff(1, 0);
  if (kappa == Complex{}) throw DomainError("solve_shear_coefficients: first component has no linear z term");
  std::vector<Complex> a(static_cast<std::size_t>(l), Complex{});
  for (int i = 2; i <= l + 1; ++i) {
    const Series2 comp = W + series_shear(a, Z);
    a[static_cast<std::size_t>(i - 2)] -= comp.coeff(i, 0) / std::pow(kappa, i);
  }
  return a;
}

std::vector<Complex> solve_shear_coefficients(const AutoMap& base, int l) {
  return solve_shear_coefficients(jet(base, l + 2), l);
}

std::vector<Complex> solve_overshear_coefficients(const MapJet& base_jet, int l) {
  if (l < 1) throw DomainError("solve_overshear_coefficients: l must be >= 1");
  if (base_jet.order() < l + 2) throw DomainError("solve_overshear_coefficients: jet order too small");
  const Series2& Z = base_jet.first;
  const Series2& W = base_jet.second;
  if (Z.constant_term() != Complex{} || W.constant_term() != Complex{}) {
    throw DomainError("solve_overshear_coefficients: base must fix the origin");
  }
  const Complex kappa = Z.coeff(1, 0);
  const Complex nu = W.coeff(0, 1);
  if (kappa == Complex{} || nu == Complex{}) {
    throw DomainError("solve_overshear_coefficients: degenerate linear part");
  }
  std::vector<Complex> c(static_cast<std::size_t>(l) + 1, Complex{});
  for (int j = 1; j <= l + 1; ++j) {
    const Series2 comp = series2_mul(W, series2_exp_any(series_overshear(c, Z)));
    c[static_cast<std::size_t>(j - 1)] -= comp.coeff(j, 1) / (nu * std::pow(kappa, j));
  }
  return c;
}

std::vector<Complex> solve_overshear_coefficients(const AutoMap& base, int l) {
  return solve_overshear_coefficients(jet(base, l + 2), l);
}

// Fixed points ----------------------------------------------------------------

std::string to_string(FixedPointClass c) {
  switch (c) {
    case FixedPointClass::Attracting: return "attracting";
    case FixedPointClass::Repelling: return "repelling";
    case FixedPointClass::Saddle: return "saddle";
    case FixedPointClass::SemiAttractive: return "semi-attractive";
    case FixedPointClass::SemiRepulsive: return "semi-repulsive";
    case FixedPointClass::Neutral: return "neutral";
  }
  return "?";
}

Matrix2 jacobian(const AutoMap& map, const ComplexPoint2& q) {
  try {
    const MapJet j = jet_at(map, q, 1);
    return {{{j.first.coeff(1, 0), j.first.coeff(0, 1)}, {j.second.coeff(1, 0), j.second.coeff(0, 1)}}};
  } catch (const DomainError&) {
  }
  const double h = 1e-6 * std::max(1.0, norm_max(q));
  Matrix2 m{};
  for (int col = 0; col < 2; ++col) {
    ComplexPoint2 dp{};
    (col == 0 ? dp.z1 : dp.z2) = h;
    const ComplexPoint2 fp = map(q + dp);
    const ComplexPoint2 fm = map(q - dp);
    const ComplexPoint2 d = (fp - fm) * Complex(0.5 / h, 0.0);
    m[0][static_cast<std::size_t>(col)] = d.z1;
    m[1][static_cast<std::size_t>(col)] = d.z2;
  }
  return m;
}

std::array<Complex, 2> eigenvalues(const Matrix2& m) {
  const Complex half_tr = 0.5 * (m[0][0] + m[1][1]);
  const Complex det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const Complex disc = std::sqrt(half_tr * half_tr - det);
  return {half_tr + disc, half_tr - disc};
}

FixedPointClass classify_by_moduli(double m1, double m2, double tol) {
  auto near_one = [tol](double m) { return std::abs(m - 1.0) <= tol; };
  const bool n1 = near_one(m1);
  const bool n2 = near_one(m2);
  if (n1 && n2) return FixedPointClass::Neutral;
  if (n1 || n2) {
    const double other = n1 ? m2 : m1;
    return other < 1.0 ? FixedPointClass::SemiAttractive : FixedPointClass::SemiRepulsive;
  }
  if (m1 < 1.0 && m2 < 1.0) return FixedPointClass::Attracting;
  if (m1 > 1.0 && m2 > 1.0) return FixedPointClass::Repelling;
  return FixedPointClass::Saddle;
}

FixedPointClass classify_fixed_point(const AutoMap& map, const ComplexPoint2& q, double tol) {
  const ComplexPoint2 fq = map(q);
  if (norm_max(fq - q) > tol * std::max(1.0, norm_max(q))) {
    throw DomainError("classify_fixed_point: point is not fixed to tolerance");
  }
  const auto mu = eigenvalues(jacobian(map, q));
  return classify_by_moduli(std::abs(mu[0]), std::abs(mu[1]), tol);
}

}  // namespace fatou
