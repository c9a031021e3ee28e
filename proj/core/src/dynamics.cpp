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

#include "fatou/dynamics.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <boost/random/sobol.hpp>

#include "fatou/error.hpp"

namespace fatou {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Angle of a rotation generator in the pipeline (sum over all of them).
std::optional<double> pipeline_rotation(const AutoMap& map) {
  if (map.fastpath() == Fastpath::Rotation) return map.rotation_theta();
  double theta = 0.0;
  bool any = false;
  for (const auto& g : map.pipeline()) {
    if (g.kind == GeneratorKind::Theta) {
      theta += g.theta;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return theta;
}

// One step of the w = w_0 P + S split.
struct Accumulator {
  Complex w0;
  Complex P{1.0, 0.0};
  Complex S{};

  // Returns false on escape of the auxiliary evaluation.
  bool step(const AutoMap& map, const ComplexPoint2& p, const ComplexPoint2& next) {
    const EvalOutcome base = map.try_eval({p.z1, Complex{}});
    if (base.escaped) return false;
    const Complex r = base.point.z2;
    Complex m;
    if (std::abs(p.z2) > 1e-300) {
      m = (next.z2 - r) / p.z2;
    } else {
      const double h = 1e-8;
      const EvalOutcome probe = map.try_eval({p.z1, Complex{h, 0.0}});
      if (probe.escaped) return false;
      m = (probe.point.z2 - r) / h;
    }
    P *= m;
    S = m * S + r;
    return true;
  }

  double defect(Complex w) const { return std::abs(w - (w0 * P + S)) / std::max(1.0, std::abs(w)); }
};

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

OscillationDiagnostics oscillation_diagnostics(const std::vector<Complex>& window, int bins) {
  OscillationDiagnostics d;
  if (window.empty()) return d;
  d.modulus = std::abs(window.back());
  double lo = kInf;
  double hi = 0.0;
  std::vector<double> args;
  args.reserve(window.size());
  for (Complex w : window) {
    const double m = std::abs(w);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
    args.push_back(wrap_angle(std::arg(w)));
  }
  d.modulus_tail_variation = hi - lo;
  std::vector<char> used(static_cast<std::size_t>(bins), 0);
  for (double a : args) {
    auto b = static_cast<std::size_t>(a / kTwoPi * bins);
    used[std::min(b, used.size() - 1)] = 1;
  }
  d.distinct_arguments = static_cast<int>(std::count(used.begin(), used.end(), 1));
  std::sort(args.begin(), args.end());
  double gap = args.size() > 1 ? kTwoPi - (args.back() - args.front()) : kTwoPi;
  for (std::size_t i = 1; i < args.size(); ++i) gap = std::min(gap, args[i] - args[i - 1]);
  d.min_argument_gap = gap;
  return d;
}

// Ring buffer of the trailing second coordinates, returned oldest first.
class Window {
 public:
  explicit Window(int size) : buf_(static_cast<std::size_t>(std::max(size, 1))) {}
  void push(Complex w) {
    buf_[next_] = w;
    next_ = (next_ + 1) % buf_.size();
    count_ = std::min(count_ + 1, buf_.size());
  }
  std::vector<Complex> ordered() const {
    std::vector<Complex> out;
    out.reserve(count_);
    const std::size_t start = count_ < buf_.size() ? 0 : next_;
    for (std::size_t i = 0; i < count_; ++i) out.push_back(buf_[(start + i) % buf_.size()]);
    return out;
  }

 private:
  std::vector<Complex> buf_;
  std::size_t next_ = 0;
  std::size_t count_ = 0;
};

}  // namespace

// Regions --------------------------------------------------------------------------

bool RegionUNM::contains_transformed(const ComplexPoint2& t) const noexcept {
  return t.z1.real() > N && std::abs(t.z2) < M;
}

bool RegionUNM::contains(const ComplexPoint2& original) const noexcept {
  if (original.z1 == Complex{}) return false;
  return contains_transformed(to_transformed(original));
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::MaxSteps:
      return "max_steps";
    case StopReason::Converged:
      return "converged";
    case StopReason::Escaped:
      return "escaped";
  }
  return "unknown";
}

std::string to_string(LimitMode m) {
  switch (m) {
    case LimitMode::Direct:
      return "direct";
    case LimitMode::Subsequence:
      return "subsequence";
    case LimitMode::Oscillating:
      return "oscillating";
  }
  return "unknown";
}

// Orbits -----------------------------------------------------------------------------

OrbitRecord iterate(const AutoMap& map, const ComplexPoint2& seed, std::int64_t n_max, std::int64_t record_every,
                    const IterateOptions& opts) {
  if (n_max < 1) throw DomainError("iterate: n_max must be at least 1");
  if (record_every < 1) throw DomainError("iterate: record_every must be at least 1");
  OrbitRecord rec;
  rec.seed = seed;
  auto make_step = [&](std::int64_t n, const ComplexPoint2& p) {
    OrbitStep s;
    s.n = n;
    s.point = p;
    s.transformed = p.z1 == Complex{} ? ComplexPoint2{Complex{kInf, 0.0}, p.z2} : to_transformed(p);
    s.in_U = opts.region && opts.region->contains(p);
    return s;
  };
  rec.steps.push_back(make_step(0, seed));
  Accumulator acc{seed.z2};
  ComplexPoint2 p = seed;
  std::int64_t n = 0;
  bool recorded_last = true;
  while (n < n_max) {
    const EvalOutcome out = map.try_eval(p);
    if (out.escaped) {
      rec.escaped = true;
      rec.stop = StopReason::Escaped;
      break;
    }
    if (opts.track_accumulators) {
      if (!acc.step(map, p, out.point)) {
        rec.escaped = true;
        rec.stop = StopReason::Escaped;
        break;
      }
      rec.identity_defect = std::max(rec.identity_defect, acc.defect(out.point.z2));
    }
    rec.last_step_delta = norm_max(out.point - p);
    p = out.point;
    ++n;
    if (opts.region && rec.first_exit == 0 && !opts.region->contains(p)) rec.first_exit = n;
    recorded_last = n % record_every == 0;
    if (recorded_last) rec.steps.push_back(make_step(n, p));
    if (rec.last_step_delta < opts.tol) {
      rec.stop = StopReason::Converged;
      break;
    }
  }
  if (!recorded_last) rec.steps.push_back(make_step(n, p));
  rec.steps_taken = n;
  rec.last = p;
  rec.product_acc = acc.P;
  rec.sum_acc = acc.S;
  return rec;
}

std::string orbit_csv(const OrbitRecord& orbit) {
  std::ostringstream os;
  os << "n,re_z,im_z,re_w,im_w,re_t,im_t,in_U\n";
  char buf[512];
  for (const auto& s : orbit.steps) {
    std::snprintf(buf, sizeof buf, "%" PRId64 ",%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", s.n, s.point.z1.real(),
                  s.point.z1.imag(), s.point.z2.real(), s.point.z2.imag(), s.transformed.z1.real(),
                  s.transformed.z1.imag(), s.in_U ? 1 : 0);
    os << buf;
  }
  return os.str();
}

// Forward invariance ---------------------------------------------------------------

std::vector<ComplexPoint2> sample_region(const RegionUNM& region, int samples, const SamplingBox& box) {
  if (samples < 1) throw DomainError("sample_region: samples must be at least 1");
  if (!(region.N > 0.0) || !(region.M > 0.0)) throw DomainError("sample_region: N and M must be positive");
  boost::random::sobol eng(5);
  eng.discard(5);  // skip the origin point
  const double scale = 1.0 / (static_cast<double>(eng.max()) + 1.0);
  std::vector<ComplexPoint2> out;
  out.reserve(static_cast<std::size_t>(samples));
  const double f = std::clamp(box.boundary_fraction, 0.0, 1.0);
  for (int i = 0; i < samples; ++i) {
    std::array<double, 5> u{};
    for (double& x : u) x = static_cast<double>(eng()) * scale;
    const bool boundary = std::floor((i + 1) * f) > std::floor(i * f);
    double re = region.N + box.re_span * std::max(u[0], 1e-9);
    double mod = region.M * std::sqrt(u[1]) * (1.0 - 1e-12);
    if (boundary) {
      if (u[4] < 0.5) {
        re = region.N * (1.0 + 0.01 * std::max(u[0], 1e-6));
      } else {
        mod = region.M * (0.99 + 0.01 * u[1] * (1.0 - 1e-9));
      }
    }
    const Complex t(re, box.im_span * (2.0 * u[3] - 1.0));
    out.push_back(from_transformed({t, std::polar(mod, kTwoPi * u[2])}));
  }
  return out;
}

InvarianceReport verify_forward_invariance(const AutoMap& map, const RegionUNM& region, int samples,
                                           std::int64_t n_steps, const SamplingBox& box) {
  if (samples < 1) throw DomainError("verify_forward_invariance: samples must be at least 1");
  InvarianceReport rep;
  rep.region = region;
  rep.n_steps = n_steps;
  if (region.M <= 0.0) return rep;  // empty region
  const auto seeds = sample_region(region, samples, box);
  rep.samples = samples;
  for (int i = 0; i < samples; ++i) {
    ComplexPoint2 p = seeds[static_cast<std::size_t>(i)];
    for (std::int64_t n = 1; n <= n_steps; ++n) {
      const EvalOutcome out = map.try_eval(p);
      p = out.point;
      if (out.escaped || !region.contains(p)) {
        if (out.escaped) ++rep.escapes;
        rep.violations.push_back({i, seeds[static_cast<std::size_t>(i)], n, to_transformed(p)});
        break;
      }
    }
  }
  return rep;
}

MinimalNReport scan_minimal_N(const AutoMap& map, double M, const std::vector<double>& candidates, int samples,
                              std::int64_t n_steps, const SamplingBox& box) {
  MinimalNReport rep;
  rep.M = M;
  for (double N : candidates) {
    rep.scans.push_back(verify_forward_invariance(map, {N, M}, samples, n_steps, box));
    if (rep.scans.back().ok()) {
      rep.minimal_N = N;
      break;
    }
  }
  return rep;
}

// Limit maps ---------------------------------------------------------------------------

std::vector<ComplexPoint2> SeedGrid::seeds() const {
  std::vector<ComplexPoint2> out;
  out.reserve(static_cast<std::size_t>(nz * nw));
  for (int i = 0; i < nz; ++i) {
    for (int j = 0; j < nw; ++j) out.push_back({origin.z1 + i * h, origin.z2 + j * h});
  }
  return out;
}

std::vector<ComplexPoint2> LimitMapEstimate::limits() const {
  std::vector<ComplexPoint2> out;
  out.reserve(seeds.size());
  for (const auto& s : seeds) out.push_back(s.limit);
  return out;
}

int rank_from_singular_values(double s1, double s2, double tau1, double tau2) noexcept {
  if (s1 < tau1) return 0;
  if (s2 < tau2) return 1;
  return 2;
}

std::array<double, 2> singular_values(const Matrix2& m) noexcept {
  const double fro2 = std::norm(m[0][0]) + std::norm(m[0][1]) + std::norm(m[1][0]) + std::norm(m[1][1]);
  const double det = std::abs(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
  const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
  const double s1 = std::sqrt(0.5 * (fro2 + disc));
  const double s2 = s1 > 0.0 ? det / s1 : 0.0;
  return {s1, s2};
}

std::optional<int> rational_period(double angle, int max_q) noexcept {
  const double x = angle / kTwoPi;
  for (int q = 1; q <= max_q; ++q) {
    const double qx = q * x;
    if (std::abs(qx - std::round(qx)) < 1e-12 * q) return q;
  }
  return std::nullopt;
}

SeedLimit estimate_seed_limit(const AutoMap& map, const ComplexPoint2& seed, LimitMode mode, int period,
                              const LimitOptions& opts) {
  if (period < 1) throw DomainError("estimate_seed_limit: period must be at least 1");
  SeedLimit out;
  out.seed = seed;
  std::vector<ComplexPoint2> ring(static_cast<std::size_t>(period), seed);  // F^{n - period}
  Window window(opts.window);
  ComplexPoint2 p = seed;
  std::int64_t n = 0;
  double delta = kInf;
  while (n < opts.n_max) {
    const EvalOutcome ev = map.try_eval(p);
    if (ev.escaped) {
      out.stop = StopReason::Escaped;
      break;
    }
    p = ev.point;
    ++n;
    auto& slot = ring[static_cast<std::size_t>(n % period)];
    if (n >= period) delta = norm_max(p - slot);
    slot = p;
    if (mode == LimitMode::Oscillating) window.push(p.z2);
    if (n % period == 0 && delta < opts.tol) {
      out.converged = true;
      out.stop = StopReason::Converged;
      break;
    }
  }
  out.limit = p;
  out.iterations = n;
  out.step_delta = delta;
  if (mode == LimitMode::Oscillating) out.oscillation = oscillation_diagnostics(window.ordered(), opts.argument_bins);
  return out;
}

namespace {

// Jacobian at grid node (i, j) from neighbouring limits; central where possible.
Matrix2 grid_jacobian(const SeedGrid& g, const std::vector<ComplexPoint2>& h, int i, int j) {
  auto at = [&](int a, int b) { return h[static_cast<std::size_t>(g.index(a, b))]; };
  const int i0 = std::max(i - 1, 0);
  const int i1 = std::min(i + 1, g.nz - 1);
  const int j0 = std::max(j - 1, 0);
  const int j1 = std::min(j + 1, g.nw - 1);
  const ComplexPoint2 dz = (1.0 / ((i1 - i0) * g.h)) * (at(i1, j) - at(i0, j));
  const ComplexPoint2 dw = (1.0 / ((j1 - j0) * g.h)) * (at(i, j1) - at(i, j0));
  Matrix2 m{};
  m[0][0] = dz.z1;
  m[1][0] = dz.z2;
  m[0][1] = dw.z1;
  m[1][1] = dw.z2;
  return m;
}

}  // namespace

LimitMapEstimate estimate_limit_map(const AutoMap& map, const SeedGrid& grid, const LimitOptions& opts) {
  if (grid.nz < 1 || grid.nw < 1) throw DomainError("estimate_limit_map: empty grid");
  if (!(grid.h > 0.0)) throw DomainError("estimate_limit_map: grid step must be positive");
  LimitMapEstimate est;
  est.grid = grid;
  if (const auto angle = pipeline_rotation(map)) {
    if (const auto q = rational_period(*angle, opts.max_period)) {
      est.period = *q;
      est.mode = *q == 1 ? LimitMode::Direct : LimitMode::Subsequence;
    } else {
      est.mode = LimitMode::Oscillating;
    }
  }
  const auto seeds = grid.seeds();
  est.all_converged = true;
  for (const auto& s : seeds) {
    est.seeds.push_back(estimate_seed_limit(map, s, est.mode, est.period, opts));
    const SeedLimit& r = est.seeds.back();
    est.iterations_used = std::max(est.iterations_used, r.iterations);
    est.sup_step_delta = std::max(est.sup_step_delta, r.step_delta);
    est.all_converged = est.all_converged && r.converged;
  }
  const auto limits = est.limits();
  if (est.mode == LimitMode::Subsequence) {
    // h_j = lim F^{qk + j}, each estimated from F^j(seed) along its own subsequence.
    est.family.push_back(limits);
    for (int j = 1; j < est.period; ++j) {
      std::vector<ComplexPoint2> hj;
      for (const auto& s : seeds) {
        ComplexPoint2 p = s;
        for (int k = 0; k < j; ++k) p = map.try_eval(p).point;
        const SeedLimit r = estimate_seed_limit(map, p, est.mode, est.period, opts);
        est.all_converged = est.all_converged && r.converged;
        hj.push_back(r.limit);
      }
      est.family.push_back(std::move(hj));
    }
    std::vector<int> reps;
    for (int j = 0; j < est.period; ++j) {
      bool fresh = true;
      for (int r : reps) {
        double d = 0.0;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
          d = std::max(d, norm_max(est.family[static_cast<std::size_t>(j)][s] -
                                   est.family[static_cast<std::size_t>(r)][s]));
        }
        if (d <= opts.family_separation) fresh = false;
      }
      if (fresh) reps.push_back(j);
    }
    est.distinct_maps = static_cast<int>(reps.size());
  } else if (est.mode == LimitMode::Direct) {
    est.distinct_maps = 1;
  }
  if (est.mode != LimitMode::Oscillating && grid.nz >= 2 && grid.nw >= 2) {
    std::vector<int> counts(3, 0);
    est.s1_min = kInf;
    for (int i = 0; i < grid.nz; ++i) {
      for (int j = 0; j < grid.nw; ++j) {
        const auto sv = singular_values(grid_jacobian(grid, limits, i, j));
        est.singular_values.push_back(sv);
        const int rk = rank_from_singular_values(sv[0], sv[1], opts.tau1, opts.tau2);
        est.ranks.push_back(rk);
        ++counts[static_cast<std::size_t>(rk)];
        est.s1_min = std::min(est.s1_min, sv[0]);
        est.s1_max = std::max(est.s1_max, sv[0]);
        est.s2_max = std::max(est.s2_max, sv[1]);
      }
    }
    est.numerical_rank = est.ranks.front();
    est.rank_consistent = counts[static_cast<std::size_t>(est.numerical_rank)] == grid.nz * grid.nw;
    if (!est.rank_consistent) est.numerical_rank = *std::max_element(est.ranks.begin(), est.ranks.end());
  }
  return est;
}

double check_equivariance(const AutoMap& map, const LimitMapEstimate& limit, const LimitOptions& opts) {
  if (limit.mode == LimitMode::Oscillating) {
    throw DomainError("check_equivariance: the full sequence does not converge; no limit map to test");
  }
  double defect = 0.0;
  for (const auto& s : limit.seeds) {
    const EvalOutcome fp = map.try_eval(s.seed);
    const EvalOutcome fh = map.try_eval(s.limit);
    if (fp.escaped || fh.escaped) return kInf;
    const SeedLimit hf = estimate_seed_limit(map, fp.point, limit.mode, limit.period, opts);
    defect = std::max(defect, norm_max(hf.limit - fh.point));
  }
  return defect;
}

double family_composition_defect(const AutoMap& map, const LimitMapEstimate& limit) {
  const std::size_t q = limit.family.size();
  double defect = 0.0;
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t s = 0; s < limit.family[j].size(); ++s) {
      const EvalOutcome f = map.try_eval(limit.family[j][s]);
      if (f.escaped) return kInf;
      defect = std::max(defect, norm_max(f.point - limit.family[(j + 1) % q][s]));
    }
  }
  return defect;
}

// Product and sum --------------------------------------------------------------------

ProductSum track_product_sum(const AutoMap& map, const ComplexPoint2& seed, std::int64_t n_max) {
  if (n_max < 4) throw DomainError("track_product_sum: n_max must be at least 4");
  ProductSum out;
  Accumulator acc{seed.z2};
  ComplexPoint2 p = seed;
  std::int64_t next_record = 1;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const EvalOutcome ev = map.try_eval(p);
    if (ev.escaped || !acc.step(map, p, ev.point)) {
      throw ConvergenceError("track_product_sum: orbit escaped at step " + std::to_string(n));
    }
    const Complex dP = acc.P - out.P;
    const Complex dS = acc.S - out.S;
    const double inc = std::abs(dP) + std::abs(dS);
    if (n > n_max / 4 && n <= n_max / 2) out.tail_early = std::max(out.tail_early, inc);
    if (n > 3 * n_max / 4) out.tail_late = std::max(out.tail_late, inc);
    out.P = acc.P;
    out.S = acc.S;
    p = ev.point;
    out.identity_defect = std::max(out.identity_defect, acc.defect(p.z2));
    if (n == next_record || n == n_max) {
      out.partials.push_back({n, acc.P, acc.S, p.z2});
      if (n == next_record) next_record *= 2;
    }
  }
  out.cauchy = out.tail_late < out.tail_early || (out.tail_late == 0.0 && out.tail_early == 0.0);
  if (!out.cauchy) {
    throw ConvergenceError("track_product_sum: increments did not decrease within n_max");
  }
  return out;
}

// Coverage -----------------------------------------------------------------------------

namespace {

std::vector<Complex> ring_images(const AutoMap& map, double R, Complex z0, int ring_samples,
                                 const CoverageOptions& opts, double* sup) {
  if (!(R > 0.0)) throw DomainError("waxis_coverage: R must be positive");
  if (ring_samples < 8) throw DomainError("waxis_coverage: ring_samples must be at least 8");
  LimitOptions lo;
  lo.tol = opts.tol;
  lo.n_max = opts.n_max;
  std::vector<Complex> images;
  images.reserve(static_cast<std::size_t>(ring_samples));
  *sup = 0.0;
  for (int k = 0; k < ring_samples; ++k) {
    const Complex w = std::polar(2.0 * R, kTwoPi * k / ring_samples);
    const SeedLimit lim = estimate_seed_limit(map, {z0, w}, LimitMode::Direct, 1, lo);
    if (!lim.converged) {
      *sup = kInf;
      return images;
    }
    images.push_back(lim.limit.z2);
    *sup = std::max(*sup, std::abs(lim.limit.z2 - w));
  }
  return images;
}

}  // namespace

double coverage_precondition(const AutoMap& map, double R, Complex z0, int ring_samples,
                             const CoverageOptions& opts) {
  double sup = 0.0;
  ring_images(map, R, z0, ring_samples, opts, &sup);
  return sup;
}

CoverageReport waxis_coverage(const AutoMap& map, double R, Complex z0, int ring_samples,
                              const CoverageOptions& opts) {
  CoverageReport rep;
  rep.R = R;
  rep.z0 = z0;
  const auto images = ring_images(map, R, z0, ring_samples, opts, &rep.precondition_sup);
  if (!(rep.precondition_sup < R)) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "waxis_coverage: sup |pi_2 h(z0, w) - w| over |w| = 2R is %.6g, not below R = %.6g; shrink |z0|",
                  rep.precondition_sup, R);
    throw DomainError(buf);
  }
  // Vogel spiral of targets inside 0.95 B(0, R), starting at the origin.
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  const int n = std::max(opts.target_count, 1);
  for (int k = 0; k < n; ++k) {
    const double rad = n > 1 ? 0.95 * R * std::sqrt(static_cast<double>(k) / (n - 1)) : 0.0;
    rep.targets.push_back(std::polar(rad, golden_angle * k));
  }
  rep.covered = true;
  for (Complex zeta : rep.targets) {
    double total = 0.0;
    for (std::size_t k = 0; k < images.size(); ++k) {
      const double d = arg_increment(images[k] - zeta, images[(k + 1) % images.size()] - zeta);
      rep.max_arg_step = std::max(rep.max_arg_step, std::abs(d));
      total += d;
    }
    const int winding = static_cast<int>(std::lround(total / kTwoPi));
    rep.windings.push_back(winding);
    rep.covered = rep.covered && winding == 1;
  }
  return rep;
}

// Invariant curves ---------------------------------------------------------------------

std::vector<ComplexPoint2> InvariantCurve::polyline() const {
  std::vector<ComplexPoint2> out;
  for (std::size_t n = 0; n < pieces.size(); ++n) {
    // Consecutive pieces share an endpoint: gamma_n(1) = gamma_{n+1}(0).
    const std::size_t start = n == 0 ? 0 : 1;
    out.insert(out.end(), pieces[n].begin() + static_cast<std::ptrdiff_t>(start), pieces[n].end());
  }
  return out;
}

InvariantCurve invariant_curve(const AutoMap& map, const ComplexPoint2& p, const ComplexPoint2& q_target,
                               int segments_per_step, std::int64_t n_max, double eps) {
  if (!(eps > 0.0)) throw DomainError("invariant_curve: eps must be positive");
  if (segments_per_step < 1) throw DomainError("invariant_curve: segments_per_step must be at least 1");
  if (n_max < 0) throw DomainError("invariant_curve: n_max must be nonnegative");
  const EvalOutcome fp = map.try_eval(p);
  if (fp.escaped) throw EscapeError("invariant_curve: F(p) escaped");
  const ComplexPoint2 dir = fp.point - p;
  InvariantCurve curve;
  for (int k = 0; k <= segments_per_step; ++k) curve.parameters.push_back(static_cast<double>(k) / segments_per_step);
  std::vector<ComplexPoint2> g0;
  for (double s : curve.parameters) g0.push_back(p + s * dir);
  g0.back() = fp.point;
  curve.pieces.push_back(std::move(g0));

  auto point_at = [&](std::int64_t n, double s) {
    ComplexPoint2 x = s == 1.0 ? fp.point : p + s * dir;
    for (std::int64_t i = 0; i < n; ++i) {
      const EvalOutcome e = map.try_eval(x);
      if (e.escaped) throw EscapeError("invariant_curve: curve escaped during bisection");
      x = e.point;
    }
    return x;
  };
  auto level = [&](const ComplexPoint2& x) { return norm_euclid(x - q_target) - eps; };
  auto scan_hits = [&](std::int64_t n) {
    const auto& piece = curve.pieces[static_cast<std::size_t>(n)];
    for (std::size_t k = 0; k + 1 < piece.size(); ++k) {
      const double f0 = level(piece[k]);
      const double f1 = level(piece[k + 1]);
      if ((f0 < 0.0) == (f1 < 0.0)) continue;
      double a = curve.parameters[k];
      double b = curve.parameters[k + 1];
      const bool inside_a = f0 < 0.0;
      while (b - a > 1e-10) {
        const double m = 0.5 * (a + b);
        if ((level(point_at(n, m)) < 0.0) == inside_a) {
          a = m;
        } else {
          b = m;
        }
      }
      const double s = 0.5 * (a + b);
      curve.sphere_hits.push_back({n, s, point_at(n, s)});
    }
  };
  scan_hits(0);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    std::vector<ComplexPoint2> next;
    next.reserve(curve.pieces.back().size());
    for (const auto& x : curve.pieces.back()) {
      const EvalOutcome e = map.try_eval(x);
      if (e.escaped) throw EscapeError("invariant_curve: curve escaped at step " + std::to_string(n));
      next.push_back(e.point);
    }
    curve.pieces.push_back(std::move(next));
    curve.steps = n;
    scan_hits(n);
  }
  return curve;
}

double curve_invariance_defect(const AutoMap& map, const InvariantCurve& curve) {
  double defect = 0.0;
  for (std::size_t n = 0; n + 1 < curve.pieces.size(); ++n) {
    for (std::size_t k = 0; k < curve.pieces[n].size(); ++k) {
      const EvalOutcome e = map.try_eval(curve.pieces[n][k]);
      if (e.escaped) return kInf;
      defect = std::max(defect, norm_max(e.point - curve.pieces[n + 1][k]));
    }
  }
  return defect;
}

}  // namespace fatou
