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

// Command-line front end: one subcommand per experiment, JSON or CSV output
// with the resolved configuration embedded.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fatou/diophantine.hpp"
#include "fatou/dynamics.hpp"
#include "fatou/error.hpp"
#include "fatou/io.hpp"
#include "fatou/linearization.hpp"
#include "fatou/maps.hpp"
#include "fatou/version.hpp"

namespace {

using fatou::Complex;
using fatou::ComplexPoint2;
using fatou::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitEscape = 2;

// "1.5", "-2i", "3+4i", "1e-3-2.5e2i".
Complex parse_complex(const std::string& text) {
  static const std::regex re(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-]?\s*(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\s*i)?\s*$)");
  std::smatch m;
  if (text.empty() || !std::regex_match(text, m, re) || (!m[1].matched && !m[2].matched)) {
    throw fatou::DomainError("cannot parse complex number '" + text + "'");
  }
  double re_part = m[1].matched ? std::stod(m[1].str()) : 0.0;
  double im_part = 0.0;
  if (m[2].matched) {
    std::string s = m[2].str();
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty() || s == "+") {
      im_part = 1.0;
    } else if (s == "-") {
      im_part = -1.0;
    } else {
      im_part = std::stod(s);
    }
  }
  return {re_part, im_part};
}

// "z,w" with complex components.
ComplexPoint2 parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw fatou::DomainError("expected a point 'z,w', got '" + text + "'");
  return {parse_complex(text.substr(0, comma)), parse_complex(text.substr(comma + 1))};
}

// "N,M".
fatou::RegionUNM parse_region(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw fatou::DomainError("expected a region 'N,M', got '" + text + "'");
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

// "10x10".
std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw fatou::DomainError("expected a grid 'NZxNW', got '" + text + "'");
  return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fatou::DomainError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct MapArgs {
  std::string map;
  int l = 2;
  std::string theta;
};

void add_map_options(CLI::App* sub, MapArgs& a) {
  sub->add_option("--map", a.map, "Preset (g, rank0, rank1, rotation) or a JSON map file")->required();
  sub->add_option("--l", a.l, "Conjugation exponent of the rank0 preset")->check(CLI::PositiveNumber);
  sub->add_option("--theta", a.theta, "Rotation angle as a multiple of 2 pi (golden, silver, p/q, quad:p,d,q, decimal)");
}

fatou::AutoMap build_map(const MapArgs& a) {
  if (a.map == "g") return fatou::make_g();
  if (a.map == "rank0") return fatou::make_rank0(a.l);
  if (a.map == "rank1") return fatou::make_rank1();
  if (a.map == "rotation") {
    if (a.theta.empty()) throw fatou::DomainError("the rotation preset needs --theta");
    return fatou::make_rotation(fatou::kTwoPi * fatou::parse_theta(a.theta).to_double());
  }
  std::ifstream probe(a.map);
  if (!probe) throw fatou::DomainError("unknown preset or unreadable map file '" + a.map + "'");
  return fatou::map_from_json(Json::parse(read_file(a.map)));
}

// Jet families for the linearization commands: presets or a JSON jet file
// whose linear part is used as given.
fatou::JetFamily build_family(const std::string& name) {
  if (name == "quadratic") return fatou::quadratic_test_jet;
  if (name == "linear") return fatou::linear_test_jet;
  std::ifstream probe(name);
  if (!probe) throw fatou::DomainError("unknown jet preset or unreadable jet file '" + name + "'");
  const fatou::MapJet jet = fatou::jet_from_json(Json::parse(read_file(name)));
  return [jet](Complex) { return jet; };
}

// Resolved option values of a subcommand, in registration order.
Json capture_config(const CLI::App* sub) {
  Json cfg = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "out" || name == "csv") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    // Numbers and booleans keep their JSON type; everything else stays text.
    Json parsed = Json::parse(value, nullptr, false);
    cfg[name] = parsed.is_number() || parsed.is_boolean() ? parsed : Json(value);
  }
  return cfg;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw fatou::DomainError("cannot write '" + path + "'");
  out << text;
}

void emit(const std::string& out, const std::string& command, const CLI::App* sub, Json result) {
  write_output(out, fatou::envelope(command, capture_config(sub), std::move(result)).dump(2) + "\n");
}

ComplexPoint2 seed_from(const std::string& seed, const std::string& seed_transformed) {
  if (!seed.empty() && !seed_transformed.empty()) {
    throw fatou::DomainError("give either --seed or --seed-transformed, not both");
  }
  if (!seed.empty()) return parse_point(seed);
  if (!seed_transformed.empty()) return fatou::from_transformed(parse_point(seed_transformed));
  throw fatou::DomainError("a seed is required (--seed or --seed-transformed)");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw fatou::DomainError("empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamics, linearization and Diophantine experiments for automorphisms of C^2", "fatou"};
  app.set_version_flag("--version", fatou::kVersionString);
  app.set_config("--config", "", "INI file; [section] names match subcommands, flags override keys");
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  // iterate
  MapArgs it_map;
  std::string it_seed, it_seed_t, it_region, it_out;
  std::int64_t it_n = 10000, it_every = 1;
  double it_tol = 0.0;
  auto* it = app.add_subcommand("iterate", "Orbit of one seed as CSV");
  add_map_options(it, it_map);
  it->add_option("--seed", it_seed, "Seed z,w in original coordinates");
  it->add_option("--seed-transformed", it_seed_t, "Seed t,w with z = -1/t");
  it->add_option("--n", it_n, "Number of steps")->check(CLI::PositiveNumber);
  it->add_option("--record-every", it_every, "Record stride")->check(CLI::PositiveNumber);
  it->add_option("--tol", it_tol, "Stop once the step falls below tol");
  it->add_option("--region", it_region, "N,M for the in_U column");
  it->add_option("--out", it_out, "Output path (stdout by default)");

  // invariance
  MapArgs inv_map;
  std::string inv_region = "50,10", inv_scan, inv_out;
  int inv_samples = 1000;
  std::int64_t inv_steps = 1000;
  fatou::SamplingBox inv_box;
  auto* inv = app.add_subcommand("invariance", "Forward invariance of U(N, M) on quasi-random samples");
  add_map_options(inv, inv_map);
  inv->add_option("--region", inv_region, "N,M");
  inv->add_option("--samples", inv_samples, "Sample count")->check(CLI::PositiveNumber);
  inv->add_option("--steps", inv_steps, "Steps per sample")->check(CLI::PositiveNumber);
  inv->add_option("--scan", inv_scan, "Candidate N values; reports the first without violations");
  inv->add_option("--re-span", inv_box.re_span, "Width of the sampled Re t range");
  inv->add_option("--im-span", inv_box.im_span, "Half width of the sampled Im t range");
  inv->add_option("--out", inv_out, "Output path (stdout by default)");

  // limit
  MapArgs lim_map;
  std::string lim_grid = "10x10", lim_region = "50,10", lim_origin, lim_origin_t, lim_out;
  fatou::LimitOptions lim_opts;
  double lim_h = 1e-3;
  bool lim_equiv = false;
  auto* lim = app.add_subcommand("limit", "Limit map on a seed grid with numerical rank");
  add_map_options(lim, lim_map);
  lim->add_option("--grid", lim_grid, "NZxNW seeds");
  lim->add_option("--region", lim_region, "N,M; the default origin is t = N + 10, w = min(1/2, M/2)");
  lim->add_option("--origin", lim_origin, "Grid origin z,w in original coordinates");
  lim->add_option("--origin-transformed", lim_origin_t, "Grid origin t,w with z = -1/t");
  lim->add_option("--step", lim_h, "Grid step")->check(CLI::PositiveNumber);
  lim->add_option("--tol", lim_opts.tol, "Stopping tolerance on the step");
  lim->add_option("--n-max", lim_opts.n_max, "Iteration cap per seed")->check(CLI::PositiveNumber);
  lim->add_option("--tau1", lim_opts.tau1, "Rank 0 threshold on s1");
  lim->add_option("--tau2", lim_opts.tau2, "Rank 1 threshold on s2");
  lim->add_option("--window", lim_opts.window, "Oscillation window")->check(CLI::PositiveNumber);
  lim->add_flag("--equivariance", lim_equiv, "Also report max ||h(F(p)) - F(h(p))||");
  lim->add_option("--out", lim_out, "Output path (stdout by default)");

  // curve
  MapArgs cur_map;
  std::string cur_p, cur_p_t, cur_q = "0,0", cur_out, cur_csv;
  int cur_segments = 8;
  std::int64_t cur_n = 100;
  double cur_eps = 1e-2;
  auto* cur = app.add_subcommand("curve", "Invariant curve through p and its crossings of a sphere");
  add_map_options(cur, cur_map);
  cur->add_option("--p", cur_p, "Start z,w in original coordinates");
  cur->add_option("--p-transformed", cur_p_t, "Start t,w with z = -1/t");
  cur->add_option("--q", cur_q, "Sphere center z,w");
  cur->add_option("--segments", cur_segments, "Samples per curve piece")->check(CLI::PositiveNumber);
  cur->add_option("--n", cur_n, "Number of pieces after the first")->check(CLI::NonNegativeNumber);
  cur->add_option("--eps", cur_eps, "Sphere radius")->check(CLI::PositiveNumber);
  cur->add_option("--out", cur_out, "Output path (stdout by default)");
  cur->add_option("--csv", cur_csv, "Also write the polyline as CSV");

  // coverage
  MapArgs cov_map;
  double cov_R = 1.0;
  std::string cov_z0, cov_out;
  double cov_t0 = 200.0;
  int cov_ring = 64;
  fatou::CoverageOptions cov_opts;
  auto* cov = app.add_subcommand("coverage", "Winding numbers of the limit map over a disk of the w-axis");
  add_map_options(cov, cov_map);
  cov->add_option("--R", cov_R, "Target disk radius")->check(CLI::PositiveNumber);
  cov->add_option("--z0", cov_z0, "z0 in original coordinates");
  cov->add_option("--z0-transformed", cov_t0, "Real t0 with z0 = -1/t0 (used without --z0)");
  cov->add_option("--ring", cov_ring, "Samples on |w| = 2R")->check(CLI::Range(8, 1 << 20));
  cov->add_option("--targets", cov_opts.target_count, "Target count")->check(CLI::PositiveNumber);
  cov->add_option("--tol", cov_opts.tol, "Limit tolerance");
  cov->add_option("--n-max", cov_opts.n_max, "Iteration cap per ring point")->check(CLI::PositiveNumber);
  cov->add_option("--out", cov_out, "Output path (stdout by default)");

  // linearize
  std::string lin_map = "quadratic", lin_theta = "golden", lin_precision, lin_out;
  double lin_r = 1.0;
  int lin_order = 40;
  fatou::LinearizationOptions lin_opts;
  auto* lin = app.add_subcommand("linearize", "Invariant curve coefficients psi_n with majorant bounds");
  lin->add_option("--map", lin_map, "Jet preset (quadratic, linear) or a JSON jet file");
  lin->add_option("--theta", lin_theta, "Rotation number of lambda");
  lin->add_option("--r", lin_r, "Modulus of lambda")->check(CLI::PositiveNumber);
  lin->add_option("--order", lin_order, "Truncation order D")->check(CLI::Range(1, 4096));
  lin->add_option("--precision", lin_precision, "auto, double or double-double (FATOU_PRECISION otherwise)");
  lin->add_option("--samples", lin_opts.residual_samples, "Residual sample count")->check(CLI::PositiveNumber);
  lin->add_option("--out", lin_out, "Output path (stdout by default)");

  // sweep
  std::string sw_map = "quadratic", sw_theta = "golden", sw_r = "0.995,1.0,1.005", sw_precision, sw_out;
  int sw_order = 20;
  double sw_fd = 0.0;
  auto* sw = app.add_subcommand("sweep", "psi over a range of |lambda| with finite-difference smoothness checks");
  sw->add_option("--map", sw_map, "Jet preset (quadratic, linear) or a JSON jet file");
  sw->add_option("--theta", sw_theta, "Rotation number of lambda");
  sw->add_option("--r", sw_r, "Comma-separated moduli, sorted");
  sw->add_option("--order", sw_order, "Truncation order D")->check(CLI::Range(2, 4096));
  sw->add_option("--fd-step", sw_fd, "Forward-difference base step (quarter spacing by default)");
  sw->add_option("--precision", sw_precision, "auto, double or double-double");
  sw->add_option("--out", sw_out, "Output path (stdout by default)");

  // diophantine
  std::string dio_theta = "golden", dio_sector, dio_out;
  double dio_N = 1.0;
  double dio_kmax = 1e5;
  std::optional<double> dio_c;
  int dio_depth = 30;
  auto* dio = app.add_subcommand("diophantine", "Continued fraction and a lower-bound certificate");
  dio->add_option("--theta", dio_theta, "golden, silver, p/q, quad:p,d,q or decimal");
  dio->add_option("--N", dio_N, "Exponent N")->check(CLI::NonNegativeNumber);
  dio->add_option("--kmax", dio_kmax, "Largest k checked")->check(CLI::Range(1.0, 1e10));
  dio->add_option("--c", dio_c, "Constant c (max_c when omitted)");
  dio->add_option("--depth", dio_depth, "Partial quotients reported")->check(CLI::Range(1, 1000));
  dio->add_option("--sector", dio_sector, "Also sweep the sector check over these r values");
  dio->add_option("--out", dio_out, "Output path (stdout by default)");

  // sector
  std::string sec_theta = "golden", sec_r = "0.999,1.001", sec_out;
  double sec_kmax = 1e3;
  double sec_N = 1.0;
  auto* sec = app.add_subcommand("sector", "Small-divisor bounds for lambda = r e^{2 pi i theta}");
  sec->add_option("--theta", sec_theta, "golden, silver, p/q, quad:p,d,q or decimal");
  sec->add_option("--r", sec_r, "Comma-separated moduli in (0, 2)");
  sec->add_option("--kmax", sec_kmax, "Largest k checked")->check(CLI::Range(1.0, 1e9));
  sec->add_option("--N", sec_N, "Exponent N")->check(CLI::NonNegativeNumber);
  sec->add_option("--out", sec_out, "Output path (stdout by default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (it->parsed()) {
      const auto map = build_map(it_map);
      fatou::IterateOptions o;
      o.tol = it_tol;
      if (!it_region.empty()) o.region = parse_region(it_region);
      const auto rec = fatou::iterate(map, seed_from(it_seed, it_seed_t), it_n, it_every, o);
      write_output(it_out, fatou::csv_preamble("iterate", capture_config(it)) + fatou::orbit_csv(rec));
      if (rec.escaped) {
        std::cerr << "orbit escaped after " << rec.steps_taken << " steps\n";
        return kExitEscape;
      }
    } else if (inv->parsed()) {
      const auto map = build_map(inv_map);
      Json result;
      int escapes = 0;
      int samples = 0;
      if (!inv_scan.empty()) {
        const auto rep = fatou::scan_minimal_N(map, parse_region(inv_region).M, parse_list(inv_scan), inv_samples,
                                               inv_steps, inv_box);
        result = fatou::to_json(rep);
        for (const auto& s : rep.scans) {
          escapes += s.escapes;
          samples += s.samples;
        }
      } else {
        const auto rep = fatou::verify_forward_invariance(map, parse_region(inv_region), inv_samples, inv_steps,
                                                          inv_box);
        result = fatou::to_json(rep);
        escapes = rep.escapes;
        samples = rep.samples;
      }
      emit(inv_out, "invariance", inv, std::move(result));
      if (samples > 0 && 2 * escapes > samples) return kExitEscape;
    } else if (lim->parsed()) {
      const auto map = build_map(lim_map);
      const auto region = parse_region(lim_region);
      const auto [nz, nw] = parse_grid(lim_grid);
      fatou::SeedGrid grid;
      grid.nz = nz;
      grid.nw = nw;
      grid.h = lim_h;
      if (!lim_origin.empty()) {
        grid.origin = parse_point(lim_origin);
      } else if (!lim_origin_t.empty()) {
        grid.origin = fatou::from_transformed(parse_point(lim_origin_t));
      } else {
        grid.origin = fatou::from_transformed({Complex(region.N + 10.0, 0.0), Complex(std::min(0.5, region.M / 2), 0.0)});
      }
      bool in_region = true;
      for (const auto& s : grid.seeds()) in_region = in_region && region.contains(s);
      const auto est = fatou::estimate_limit_map(map, grid, lim_opts);
      Json result = fatou::to_json(est);
      result["seeds_in_region"] = in_region;
      if (est.mode == fatou::LimitMode::Subsequence) {
        result["family_composition_defect"] = fatou::family_composition_defect(map, est);
      }
      if (lim_equiv && est.mode != fatou::LimitMode::Oscillating) {
        result["equivariance_defect"] = fatou::check_equivariance(map, est, lim_opts);
      }
      emit(lim_out, "limit", lim, std::move(result));
      int escaped = 0;
      for (const auto& s : est.seeds) escaped += s.stop == fatou::StopReason::Escaped ? 1 : 0;
      if (2 * escaped > static_cast<int>(est.seeds.size())) return kExitEscape;
    } else if (cur->parsed()) {
      const auto map = build_map(cur_map);
      const auto curve = fatou::invariant_curve(map, seed_from(cur_p, cur_p_t), parse_point(cur_q), cur_segments,
                                                cur_n, cur_eps);
      Json result = fatou::to_json(curve);
      result["invariance_defect"] = fatou::curve_invariance_defect(map, curve);
      if (!cur_csv.empty()) {
        std::ostringstream os;
        os << fatou::csv_preamble("curve", capture_config(cur)) << "index,re_z,im_z,re_w,im_w\n";
        const auto poly = curve.polyline();
        char buf[256];
        for (std::size_t i = 0; i < poly.size(); ++i) {
          std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", i, poly[i].z1.real(), poly[i].z1.imag(),
                        poly[i].z2.real(), poly[i].z2.imag());
          os << buf;
        }
        write_output(cur_csv, os.str());
      }
      emit(cur_out, "curve", cur, std::move(result));
    } else if (cov->parsed()) {
      const auto map = build_map(cov_map);
      const Complex z0 = cov_z0.empty() ? Complex(-1.0 / cov_t0, 0.0) : parse_complex(cov_z0);
      emit(cov_out, "coverage", cov, fatou::to_json(fatou::waxis_coverage(map, cov_R, z0, cov_ring, cov_opts)));
    } else if (lin->parsed()) {
      if (!lin_precision.empty()) lin_opts.precision = fatou::precision_from_string(lin_precision);
      const auto theta = fatou::parse_theta(lin_theta);
      const Complex lambda = std::polar(lin_r, fatou::kTwoPi * theta.to_double());
      const auto res = fatou::solve_psi(build_family(lin_map)(lambda), lambda, lin_order, lin_opts);
      const auto split = res.split();
      Json result = fatou::to_json(res);
      result["split"] = fatou::to_json(split);
      result["bound_check"] = fatou::to_json(fatou::exponential_bound_check(res, split));
      emit(lin_out, "linearize", lin, std::move(result));
    } else if (sw->parsed()) {
      fatou::LinearizationOptions o;
      if (!sw_precision.empty()) o.precision = fatou::precision_from_string(sw_precision);
      const auto res = fatou::parameter_sweep(build_family(sw_map), fatou::parse_theta(sw_theta), parse_list(sw_r),
                                              sw_order, o, sw_fd);
      emit(sw_out, "sweep", sw, fatou::to_json(res));
    } else if (dio->parsed()) {
      const auto theta = fatou::parse_theta(dio_theta);
      const auto kmax = static_cast<std::int64_t>(dio_kmax);
      const auto mc = fatou::max_c_report(theta, dio_N, kmax);
      const double c = dio_c.value_or(mc.c);
      Json result = {{"theta_text", theta.text},
                     {"rational", theta.rational.has_value()},
                     {"continued_fraction", fatou::to_json(fatou::continued_fraction(theta, dio_depth))},
                     {"max_c", fatou::to_json(mc)}};
      if (c > 0.0) {
        result["certificate"] = fatou::to_json(fatou::check_siegel(theta, c, dio_N, kmax));
      } else {
        // lambda^k = 1 for some k <= kmax: no positive constant exists.
        result["certificate"] = nullptr;
      }
      if (!dio_sector.empty()) {
        result["sector"] = fatou::to_json(fatou::check_sector_bounds(theta, parse_list(dio_sector), 1000, dio_N));
      }
      emit(dio_out, "diophantine", dio, std::move(result));
    } else if (sec->parsed()) {
      const auto theta = fatou::parse_theta(sec_theta);
      emit(sec_out, "sector", sec,
           fatou::to_json(fatou::check_sector_bounds(theta, parse_list(sec_r), static_cast<std::int64_t>(sec_kmax),
                                                    sec_N)));
    }
  } catch (const fatou::EscapeError& e) {
    std::cerr << "fatou: " << e.what() << "\n";
    return kExitEscape;
  } catch (const std::exception& e) {
    std::cerr << "fatou: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
