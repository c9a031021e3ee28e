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

#include "fatou/io.hpp"

#include <cmath>
#include <sstream>

#include "fatou/error.hpp"
#include "fatou/version.hpp"

namespace fatou {

namespace {

Json reals(const std::vector<double>& v, std::size_t from) {
  Json a = Json::array();
  for (std::size_t i = from; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json pair4(const ComplexPoint2& p) {
  return Json::array({p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag()});
}

ComplexPoint2 pair4_from(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw DomainError("expected [re1, im1, re2, im2]");
  return {{j[0].get<double>(), j[1].get<double>()}, {j[2].get<double>(), j[3].get<double>()}};
}

Json matrix_to_json(const Matrix2& m) {
  return Json::array({Json::array({complex_to_json(m[0][0]), complex_to_json(m[0][1])}),
                      Json::array({complex_to_json(m[1][0]), complex_to_json(m[1][1])})});
}

Json complexes(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (Complex c : v) a.push_back(complex_to_json(c));
  return a;
}

Json points(const std::vector<ComplexPoint2>& v) {
  Json a = Json::array();
  for (const auto& p : v) a.push_back(point_to_json(p));
  return a;
}

}  // namespace

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json point_to_json(const ComplexPoint2& p) {
  return Json::array({complex_to_json(p.z1), complex_to_json(p.z2)});
}

ComplexPoint2 point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("expected [[re, im], [re, im]]");
  return {complex_from_json(j[0]), complex_from_json(j[1])};
}

// Series ---------------------------------------------------------------------------

Json series_to_json(const Series2& s) {
  Json coeffs = Json::array();
  for (Complex c : s.data()) coeffs.push_back(complex_to_json(c));
  return {{"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

Series2 series_from_json(const Json& j) {
  const int order = j.at("order").get<int>();
  if (order < 0) throw DomainError("series order must be nonnegative");
  Series2 s(order);
  const Json& c = j.at("coeffs");
  if (c.size() != s.size()) throw DomainError("series coefficient count does not match its order");
  for (std::size_t i = 0; i < s.size(); ++i) s.data()[i] = complex_from_json(c[i]);
  return s;
}

Json jet_to_json(const MapJet& jet) {
  Json coeffs = Json::array();
  const auto a = jet.first.data();
  const auto b = jet.second.data();
  for (std::size_t i = 0; i < a.size(); ++i) coeffs.push_back(pair4({a[i], b[i]}));
  return {{"order", jet.order()}, {"coeffs", std::move(coeffs)}};
}

MapJet jet_from_json(const Json& j) {
  const int order = j.at("order").get<int>();
  if (order < 0) throw DomainError("jet order must be nonnegative");
  MapJet jet{Series2(order), Series2(order)};
  const Json& c = j.at("coeffs");
  if (c.size() != jet.first.size()) throw DomainError("jet coefficient count does not match its order");
  for (std::size_t i = 0; i < c.size(); ++i) {
    const ComplexPoint2 p = pair4_from(c[i]);
    jet.first.data()[i] = p.z1;
    jet.second.data()[i] = p.z2;
  }
  return jet;
}

Json series1_to_json(const Series1& s) {
  Json coeffs = Json::array();
  for (const auto& p : s.data()) coeffs.push_back(pair4(p));
  return {{"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

Series1 series1_from_json(const Json& j) {
  const int order = j.at("order").get<int>();
  if (order < 0) throw DomainError("series order must be nonnegative");
  Series1 s(order);
  const Json& c = j.at("coeffs");
  if (c.size() != static_cast<std::size_t>(order) + 1) {
    throw DomainError("series coefficient count does not match its order");
  }
  for (int k = 0; k <= order; ++k) s[k] = pair4_from(c[static_cast<std::size_t>(k)]);
  return s;
}

// Maps -------------------------------------------------------------------------------

Json map_to_json(const AutoMap& map) {
  Json pl = Json::array();
  for (const auto& g : map.pipeline()) {
    Json e = {{"kind", to_string(g.kind)}};
    switch (g.kind) {
      case GeneratorKind::Shear:
      case GeneratorKind::Overshear:
        e["coeffs"] = complexes(g.coeffs);
        break;
      case GeneratorKind::F6:
      case GeneratorKind::Bl:
      case GeneratorKind::BlInverse:
        e["l"] = g.l;
        break;
      case GeneratorKind::Theta:
        e["theta"] = g.theta;
        break;
      case GeneratorKind::Scale:
        e["a"] = complex_to_json(g.scale_z);
        e["b"] = complex_to_json(g.scale_w);
        break;
      default:
        break;
    }
    pl.push_back(std::move(e));
  }
  return {{"pipeline", std::move(pl)}, {"fastpath", to_string(map.fastpath())}};
}

AutoMap map_from_json(const Json& j) {
  std::vector<ElementaryMap> pl;
  for (const Json& e : j.at("pipeline")) {
    const GeneratorKind kind = generator_kind_from_string(e.at("kind").get<std::string>());
    ElementaryMap g;
    switch (kind) {
      case GeneratorKind::Shear:
      case GeneratorKind::Overshear: {
        std::vector<Complex> c;
        for (const Json& x : e.at("coeffs")) c.push_back(complex_from_json(x));
        g = kind == GeneratorKind::Shear ? ElementaryMap::shear(std::move(c)) : ElementaryMap::overshear(std::move(c));
        break;
      }
      case GeneratorKind::F6:
        g = ElementaryMap::f6(e.at("l").get<int>());
        break;
      case GeneratorKind::Bl:
        g = ElementaryMap::bl(e.at("l").get<int>());
        break;
      case GeneratorKind::BlInverse:
        g = ElementaryMap::bl_inverse(e.at("l").get<int>());
        break;
      case GeneratorKind::Theta:
        g = ElementaryMap::rotation(e.at("theta").get<double>());
        break;
      case GeneratorKind::Scale:
        g = ElementaryMap::scale(complex_from_json(e.at("a")), complex_from_json(e.at("b")));
        break;
      default:
        g.kind = kind;
        break;
    }
    pl.push_back(std::move(g));
  }
  const Fastpath fp = j.contains("fastpath") ? fastpath_from_string(j.at("fastpath").get<std::string>())
                                             : Fastpath::None;
  return AutoMap(std::move(pl), fp);
}

// Diophantine --------------------------------------------------------------------------

Json to_json(const DiophantineCertificate& c) {
  Json v = Json::array();
  for (const auto& x : c.violations) v.push_back({{"k", x.k}, {"value", x.value}, {"bound", x.bound}});
  return {{"theta", c.theta},
          {"c", c.c},
          {"N", c.N},
          {"k_max", c.k_max},
          {"ok", c.ok()},
          {"verified_up_to", c.verified_up_to},
          {"violation_count", c.violation_count},
          {"violations", std::move(v)},
          {"precision_warning", c.precision_warning}};
}

Json to_json(const MaxCReport& r) {
  return {{"c", r.c}, {"argmin", r.argmin}, {"record_denominators", r.record_denominators}};
}

Json to_json(const ContinuedFraction& cf) {
  Json conv = Json::array();
  for (const auto& c : cf.convergents) conv.push_back(Json::array({c.p, c.q}));
  return {{"theta", cf.theta},
          {"partial_quotients", cf.partial_quotients},
          {"convergents", std::move(conv)},
          {"rational", cf.rational},
          {"overflow", cf.overflow}};
}

Json to_json(const SectorReport& r) {
  Json rows = Json::array();
  for (const auto& x : r.rows) {
    rows.push_back({{"r", x.r},
                    {"in_sector_count", x.in_sector_count},
                    {"branch_in_violations", x.branch_in_violations},
                    {"branch_out_violations", x.branch_out_violations},
                    {"chained_violations", x.chained_violations},
                    {"final_violations", x.final_violations},
                    {"final_violations_drift", x.final_violations_drift},
                    {"drift_count", x.drift_count},
                    {"first_drift_k", x.first_drift_k},
                    {"min_final_margin", x.min_final_margin}});
  }
  return {{"theta", r.theta},       {"N", r.N},   {"k_max", r.k_max}, {"c_prime", r.c_prime},
          {"final_ok", r.final_ok()}, {"rows", std::move(rows)}};
}

// Linearization ------------------------------------------------------------------------

Json to_json(const LinearizationResult& r) {
  return {{"lambda", complex_to_json(r.lambda)},
          {"D", r.D},
          {"psi_coeffs", series1_to_json(r.psi)},
          {"psi_original", series1_to_json(r.psi_original())},
          {"conjugation", matrix_to_json(r.conjugation)},
          {"M", r.M},
          {"smallest_divisor", r.divisors.smallest()},
          {"sigma", reals(r.sigma, 1)},
          {"eta", reals(r.eta, 1)},
          {"delta", reals(r.delta, 1)},
          {"a", r.a},
          {"a_fitted", true},
          {"b", r.b},
          {"residual", r.residual},
          {"residual_radius", r.residual_radius},
          {"rho_estimate", r.rho_estimate},
          {"precision_mode", to_string(r.precision_used)}};
}

Json to_json(const MajorantSplit& s) {
  return {{"M", s.M},           {"eta", reals(s.eta, 1)}, {"delta", reals(s.delta, 1)}, {"b", s.b},
          {"a", s.a},           {"fitted", s.fitted},     {"split_ratio", s.split_ratio}};
}

Json to_json(const BoundCheck& b) {
  return {{"C", b.C}, {"rate", b.rate}, {"allowed", b.allowed}, {"ok", b.ok}};
}

Json to_json(const SweepResult& s) {
  Json entries = Json::array();
  for (const auto& e : s.entries) {
    Json x = {{"r", e.r}, {"ok", e.ok}, {"rate", e.rate}};
    if (!e.error.empty()) x["error"] = e.error;
    if (e.result) {
      x["residual"] = e.result->residual;
      x["rho_estimate"] = e.result->rho_estimate;
      x["precision_mode"] = to_string(e.result->precision_used);
    }
    entries.push_back(std::move(x));
  }
  Json deriv = Json::array();
  for (std::size_t i = 0; i < s.d_psi_dr.size(); ++i) {
    deriv.push_back({{"r", s.interior_r[i]}, {"d_psi_dr", series1_to_json(s.d_psi_dr[i])}});
  }
  return {{"entries", std::move(entries)},
          {"derivatives", std::move(deriv)},
          {"smoothness_ok", s.smoothness_ok},
          {"worst_ratio_deviation", s.worst_ratio_deviation},
          {"ratios_tested", s.ratios_tested},
          {"rates_uniform", s.rates_uniform},
          {"rate_spread", s.rate_spread}};
}

// Dynamics -------------------------------------------------------------------------------

Json to_json(const InvarianceReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"sample", x.sample},
                 {"seed", point_to_json(x.seed)},
                 {"step", x.step},
                 {"transformed", point_to_json(x.transformed)}});
  }
  return {{"N", r.region.N}, {"M", r.region.M}, {"samples", r.samples}, {"n_steps", r.n_steps},
          {"ok", r.ok()},    {"escapes", r.escapes}, {"violations", std::move(v)}};
}

Json to_json(const MinimalNReport& r) {
  Json scans = Json::array();
  for (const auto& s : r.scans) {
    scans.push_back({{"N", s.region.N}, {"violations", s.violations.size()}, {"escapes", s.escapes}});
  }
  Json out = {{"M", r.M}, {"scans", std::move(scans)}};
  out["minimal_N"] = r.minimal_N ? Json(*r.minimal_N) : Json(nullptr);
  return out;
}

Json to_json(const LimitMapEstimate& e) {
  Json seeds = Json::array();
  for (std::size_t i = 0; i < e.seeds.size(); ++i) {
    const SeedLimit& s = e.seeds[i];
    Json x = {{"seed", point_to_json(s.seed)},
              {"limit", point_to_json(s.limit)},
              {"iterations", s.iterations},
              {"step_delta", s.step_delta},
              {"converged", s.converged},
              {"stop", to_string(s.stop)}};
    if (i < e.singular_values.size()) {
      x["singular_values"] = Json::array({e.singular_values[i][0], e.singular_values[i][1]});
      x["rank"] = e.ranks[i];
    }
    if (s.oscillation) {
      x["oscillation"] = {{"modulus", s.oscillation->modulus},
                          {"modulus_tail_variation", s.oscillation->modulus_tail_variation},
                          {"distinct_arguments", s.oscillation->distinct_arguments},
                          {"min_argument_gap", s.oscillation->min_argument_gap}};
    }
    seeds.push_back(std::move(x));
  }
  Json family = Json::array();
  for (const auto& f : e.family) family.push_back(points(f));
  return {{"grid", {{"origin", point_to_json(e.grid.origin)}, {"h", e.grid.h}, {"nz", e.grid.nz}, {"nw", e.grid.nw}}},
          {"mode", to_string(e.mode)},
          {"period", e.period},
          {"iterations_used", e.iterations_used},
          {"sup_step_delta", e.sup_step_delta},
          {"all_converged", e.all_converged},
          {"numerical_rank", e.numerical_rank},
          {"rank_consistent", e.rank_consistent},
          {"s1_min", e.s1_min},
          {"s1_max", e.s1_max},
          {"s2_max", e.s2_max},
          {"distinct_maps", e.distinct_maps},
          {"family", std::move(family)},
          {"seeds", std::move(seeds)}};
}

Json to_json(const ProductSum& p) {
  Json partials = Json::array();
  for (const auto& x : p.partials) {
    partials.push_back(
        {{"n", x.n}, {"P", complex_to_json(x.P)}, {"S", complex_to_json(x.S)}, {"w", complex_to_json(x.w)}});
  }
  return {{"P", complex_to_json(p.P)},
          {"S", complex_to_json(p.S)},
          {"abs_P", std::abs(p.P)},
          {"identity_defect", p.identity_defect},
          {"tail_early", p.tail_early},
          {"tail_late", p.tail_late},
          {"cauchy", p.cauchy},
          {"partials", std::move(partials)}};
}

Json to_json(const CoverageReport& r) {
  return {{"R", r.R},
          {"z0", complex_to_json(r.z0)},
          {"precondition_sup", r.precondition_sup},
          {"targets", complexes(r.targets)},
          {"windings", r.windings},
          {"max_arg_step", r.max_arg_step},
          {"covered", r.covered}};
}

Json to_json(const InvariantCurve& c) {
  Json hits = Json::array();
  for (const auto& h : c.sphere_hits) hits.push_back({{"step", h.step}, {"s", h.s}, {"point", point_to_json(h.point)}});
  return {{"steps", c.steps},
          {"vertices", c.polyline().size()},
          {"sphere_hit_count", c.sphere_hits.size()},
          {"sphere_hits", std::move(hits)}};
}

// Envelopes ---------------------------------------------------------------------------

Json envelope(const std::string& command, const Json& config, Json result) {
  return {{"tool", kVersionString},
          {"schema", kSchemaVersion},
          {"command", command},
          {"config", config},
          {"result", std::move(result)}};
}

std::string csv_preamble(const std::string& command, const Json& config) {
  std::ostringstream os;
  os << "# " << kVersionString << " schema " << kSchemaVersion << " command " << command << "\n";
  os << "# config " << config.dump() << "\n";
  return os.str();
}

}  // namespace fatou
