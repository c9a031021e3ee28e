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

// Automorphisms of C^2 built as pipelines of elementary shears, overshears
// and conjugations by b_l(z, w) = (z, z^l w).
//
// A pipeline lists generators in application order: {F1, F2, F3, F4} is
// the map F4 o F3 o F2 o F1.

#ifndef FATOU_MAPS_HPP
#define FATOU_MAPS_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fatou/complex.hpp"
#include "fatou/series.hpp"

namespace fatou {

enum class GeneratorKind {
  F1,         // (z, w + z)
  F2,         // (z e^w, w)
  F3,         // (z, w - z)
  F4,         // (z e^{-w}, w)
  Shear,      // (z, w + g(z)),      g = sum_{i>=2} a_i z^i
  Overshear,  // (z, w e^{f(z)}),    f = sum_{j>=1} c_j z^j
  F6,         // (z, w e^{(l+1) z})
  Theta,      // (z, e^{i theta} w)
  Bl,         // (z, z^l w)
  BlInverse,  // (z, z^{-l} w)
  Scale,      // (a z, b w), a and b nonzero
};

std::string to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

struct ElementaryMap {
  GeneratorKind kind = GeneratorKind::F1;
  /// Shear: a_2, a_3, ...; Overshear: c_1, c_2, ...
  std::vector<Complex> coeffs;
  int l = 0;
  double theta = 0.0;
  Complex scale_z{1.0, 0.0};
  Complex scale_w{1.0, 0.0};

  static ElementaryMap f1() {
    ElementaryMap m;
    m.kind = GeneratorKind::F1;
    return m;
  }
  static ElementaryMap f2() {
    ElementaryMap m;
    m.kind = GeneratorKind::F2;
    return m;
  }
  static ElementaryMap f3() {
    ElementaryMap m;
    m.kind = GeneratorKind::F3;
    return m;
  }
  static ElementaryMap f4() {
    ElementaryMap m;
    m.kind = GeneratorKind::F4;
    return m;
  }
  static ElementaryMap shear(std::vector<Complex> a_from_2);
  static ElementaryMap overshear(std::vector<Complex> c_from_1);
  static ElementaryMap f6(int l);
  static ElementaryMap rotation(double theta);
  static ElementaryMap bl(int l);
  static ElementaryMap bl_inverse(int l);
  static ElementaryMap scale(Complex a, Complex b);

  /// Checks the invariants (finite coefficients, l >= 1, nonzero scales).
  void validate() const;

  ComplexPoint2 apply(const ComplexPoint2& p) const noexcept;
  ComplexPoint2 apply_inverse(const ComplexPoint2& p) const noexcept;
  ElementaryMap inverse() const;

  /// Pushes a jet through the generator. Constant terms are allowed except
  /// where a generator needs a nonzero z constant (BlInverse) to expand.
  MapJet apply(const MapJet& j) const;
};

enum class Fastpath { None, Rank0, Rank1, Rotation };

std::string to_string(Fastpath fp);
Fastpath fastpath_from_string(const std::string& name);

struct EvalOutcome {
  ComplexPoint2 point;
  bool escaped = false;
};

/// Magnitude beyond which an evaluation is treated as an escape.
inline constexpr double kEscapeRadius = 1e200;

class AutoMap {
 public:
  /// Validates the pipeline. A fastpath requires the pipeline shape of the
  /// matching preset (Bl, F1..F4, Shear, [Overshear], F6, BlInverse, [Theta]).
  explicit AutoMap(std::vector<ElementaryMap> pipeline, Fastpath fastpath = Fastpath::None);

  const std::vector<ElementaryMap>& pipeline() const noexcept { return pipeline_; }
  Fastpath fastpath() const noexcept { return fastpath_; }
  /// Conjugation exponent of the fastpath (0 without fastpath).
  int conjugation_l() const noexcept;
  /// Rotation angle of the fastpath in radians (0 without rotation).
  double rotation_theta() const noexcept;

  /// Fast closed form when available, pipeline otherwise. Throws EscapeError.
  ComplexPoint2 operator()(const ComplexPoint2& p) const;
  EvalOutcome try_eval(const ComplexPoint2& p) const noexcept;
  /// Pipeline route regardless of fastpath.
  EvalOutcome try_eval_pipeline(const ComplexPoint2& p) const noexcept;
  /// Closed form; only valid with a fastpath.
  ComplexPoint2 eval_fastpath(const ComplexPoint2& p) const noexcept;
  EvalOutcome try_eval_inverse(const ComplexPoint2& p) const noexcept;

  /// The same pipeline with a rotation (z, e^{i theta} w) appended.
  AutoMap with_rotation(double theta) const;

 private:
  struct Segment;
  struct ClosedForm;

  std::vector<ElementaryMap> pipeline_;
  Fastpath fastpath_;
  std::shared_ptr<const std::vector<Segment>> segments_;
  std::shared_ptr<const ClosedForm> closed_;
};

ComplexPoint2 eval(const AutoMap& map, const ComplexPoint2& p);
ComplexPoint2 eval_inverse(const AutoMap& map, const ComplexPoint2& p);

/// Taylor jet at the origin of total order D.
MapJet jet(const AutoMap& map, int order);
/// Taylor jet of x -> F(q + x) (constant term F(q)). Throws DomainError when
/// the pipeline cannot be expanded at q (a BlInverse reached with z = 0).
MapJet jet_at(const AutoMap& map, const ComplexPoint2& q, int order);

// Presets -------------------------------------------------------------------

/// F4 o F3 o F2 o F1.
AutoMap make_g();
/// The conjugated map with one attracting rank-0 limit, conjugation exponent l.
AutoMap make_rank0(int l);
/// The conjugated map with one rank-1 limit (l = 2).
AutoMap make_rank1();
/// Rank-1 map followed by (z, e^{i theta} w).
AutoMap make_rotation(double theta);

// Coefficient elimination ------------------------------------------------------

/// a_2..a_{l+1} such that pi_2((z, w + g(z)) o base) has no pure z terms of
/// degrees 2..l+1.
std::vector<Complex> solve_shear_coefficients(const MapJet& base_jet, int l);
std::vector<Complex> solve_shear_coefficients(const AutoMap& base, int l);

/// c_1..c_{l+1} such that pi_2((z, w e^{f(z)}) o base) has no w z^j terms
/// for j = 1..l+1.
std::vector<Complex> solve_overshear_coefficients(const MapJet& base_jet, int l);
std::vector<Complex> solve_overshear_coefficients(const AutoMap& base, int l);

// Fixed points ----------------------------------------------------------------

enum class FixedPointClass { Attracting, Repelling, Saddle, SemiAttractive, SemiRepulsive, Neutral };

std::string to_string(FixedPointClass c);

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// Jacobian at q: from the jet when the pipeline expands at q, otherwise
/// central differences with step 1e-6 max(1, |q|).
Matrix2 jacobian(const AutoMap& map, const ComplexPoint2& q);
std::array<Complex, 2> eigenvalues(const Matrix2& m);

/// Classification by the moduli of the Jacobian eigenvalues with a band of
/// width tol around 1. Throws DomainError when q is not fixed to within tol.
FixedPointClass classify_fixed_point(const AutoMap& map, const ComplexPoint2& q, double tol = 1e-8);
FixedPointClass classify_by_moduli(double m1, double m2, double tol);

}  // namespace fatou

#endif  // FATOU_MAPS_HPP
