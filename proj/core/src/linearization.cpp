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

#include "fatou/linearization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include <boost/math/tools/toms748_solve.hpp>

#include "fatou/double_double.hpp"
#include "fatou/error.hpp"

namespace fatou {
namespace {

template <class T>
T to_scalar(Complex c) {
  if constexpr (std::is_same_v<T, Complex>) {
    return c;
  } else {
    return T(c);
  }
}

template <class T>
Complex to_complex(const T& v) {
  if constexpr (std::is_same_v<T, Complex>) {
    return v;
  } else {
    return static_cast<Complex>(v);
  }
}

// Coefficient recursion for psi_2..psi_D given divisors in type T. The
// degree-n right-hand side only reads psi_1..psi_{n-1} because every
// nonlinear term has total degree >= 2.
template <class T>
Series1 recurse_psi(const MapJet& G, int D, const std::vector<T>& e1, const std::vector<T>& e2) {
  const int Dj = std::min(G.order(), D);
  const std::size_t n1 = static_cast<std::size_t>(D) + 1;
  // X[j][m] = [w^m] (psi^1)^j, Y[j][m] = [w^m] (psi^2)^j.
  std::vector<std::vector<T>> X(n1, std::vector<T>(n1, T{})), Y(n1, std::vector<T>(n1, T{}));
  X[0][0] = to_scalar<T>(1.0);
  Y[0][0] = to_scalar<T>(1.0);
  std::vector<T> p1(n1, T{}), p2(n1, T{});
  if (D >= 1) {
    p1[1] = to_scalar<T>(1.0);
    X[1][1] = p1[1];
  }
  // Nonlinear coefficients as T, indexed like Series2.
  std::vector<T> g1(Series2::size_for(Dj), T{}), g2(Series2::size_for(Dj), T{});
  for (int d = 2; d <= Dj; ++d) {
    for (int l2 = 0; l2 <= d; ++l2) {
      g1[Series2::index(d - l2, l2)] = to_scalar<T>(G.first.coeff(d - l2, l2));
      g2[Series2::index(d - l2, l2)] = to_scalar<T>(G.second.coeff(d - l2, l2));
    }
  }
  for (int n = 2; n <= D; ++n) {
    const auto un = static_cast<std::size_t>(n);
    for (int j = 2; j <= n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      T sx{}, sy{};
      for (int k = 1; k <= n - 1; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        sx += p1[uk] * X[uj - 1][un - uk];
        sy += p2[uk] * Y[uj - 1][un - uk];
      }
      X[uj][un] = sx;
      Y[uj][un] = sy;
    }
    T r1{}, r2{};
    for (int d = 2; d <= std::min(Dj, n); ++d) {
      for (int l2 = 0; l2 <= d; ++l2) {
        const int l1 = d - l2;
        const std::size_t gi = Series2::index(l1, l2);
        const T& c1 = g1[gi];
        const T& c2 = g2[gi];
        T conv{};
        if (l2 == 0) {
          conv = X[static_cast<std::size_t>(l1)][un];
        } else if (l1 == 0) {
          conv = Y[static_cast<std::size_t>(l2)][un];
        } else {
          for (int m = l1; m <= n - l2; ++m) {
            conv += X[static_cast<std::size_t>(l1)][static_cast<std::size_t>(m)] *
                    Y[static_cast<std::size_t>(l2)][un - static_cast<std::size_t>(m)];
          }
        }
        r1 += c1 * conv;
        r2 += c2 * conv;
      }
    }
    p1[un] = r1 / e1[un];
    p2[un] = r2 / e2[un];
    X[1][un] = p1[un];
    Y[1][un] = p2[un];
  }
  Series1 psi(D);
  for (int n = 1; n <= D; ++n) {
    const auto un = static_cast<std::size_t>(n);
    psi[n] = {to_complex(p1[un]), to_complex(p2[un])};
    if (!is_finite(psi[n])) throw NonFiniteError("solve_psi: non-finite coefficient at degree " + std::to_string(n));
  }
  return psi;
}

Matrix2 inverse(const Matrix2& m) {
  const Complex det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (std::abs(det) < 1e-14) throw DomainError("solve_psi: eigenbasis is singular");
  return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

// Eigenvector of a 2x2 matrix for eigenvalue mu.
std::array<Complex, 2> eigenvector(const Matrix2& A, Complex mu) {
  const std::array<Complex, 2> v1{A[0][1], mu - A[0][0]};
  const std::array<Complex, 2> v2{mu - A[1][1], A[1][0]};
  const double n1 = std::max(std::abs(v1[0]), std::abs(v1[1]));
  const double n2 = std::max(std::abs(v2[0]), std::abs(v2[1]));
  if (n1 < 1e-14 && n2 < 1e-14) return {};
  const auto& v = n1 >= n2 ? v1 : v2;
  const double n = std::max(n1, n2);
  return {v[0] / n, v[1] / n};
}

}  // namespace

std::string to_string(Precision p) {
  switch (p) {
    case Precision::Auto: return "auto";
    case Precision::Double: return "double";
    case Precision::DoubleDouble: return "double-double";
  }
  return "?";
}

Precision precision_from_string(const std::string& s) {
  if (s == "auto") return Precision::Auto;
  if (s == "double") return Precision::Double;
  if (s == "double-double" || s == "dd") return Precision::DoubleDouble;
  throw DomainError("unknown precision mode '" + s + "' (expected double or double-double)");
}

Precision precision_from_env() {
  const char* v = std::getenv("FATOU_PRECISION");
  if (v == nullptr || *v == '\0') return Precision::Auto;
  return precision_from_string(v);
}

double SmallDivisors::smallest() const noexcept {
  double m = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= D; ++n) m = std::min(m, eps_min[static_cast<std::size_t>(n)]);
  return m;
}

SmallDivisors compute_small_divisors(Complex lambda, int D, bool extended, double floor) {
  if (D < 2) throw DomainError("compute_small_divisors: D must be >= 2");
  if (lambda == Complex{} || !is_finite(lambda)) throw DomainError("compute_small_divisors: lambda must be finite and nonzero");
  SmallDivisors s;
  s.lambda = lambda;
  s.D = D;
  s.extended = extended;
  const std::size_t n1 = static_cast<std::size_t>(D) + 1;
  s.eps1.assign(n1, Complex{});
  s.eps2.assign(n1, Complex{});
  s.eps_min.assign(n1, 0.0);
  const DDComplex lam_dd(lambda);
  DDComplex pow_dd = lam_dd;
  Complex pow_d = lambda;
  for (int n = 2; n <= D; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (extended) {
      pow_dd = pow_dd * lam_dd;
      s.eps1[un] = static_cast<Complex>(pow_dd - lam_dd);
      s.eps2[un] = static_cast<Complex>(pow_dd - DDComplex(DoubleDouble(1.0)));
    } else {
      pow_d *= lambda;
      s.eps1[un] = pow_d - lambda;
      s.eps2[un] = pow_d - 1.0;
    }
    s.eps_min[un] = std::min(std::abs(s.eps1[un]), std::abs(s.eps2[un]));
    if (!(s.eps_min[un] >= floor)) {
      throw ZeroDivisorError("small divisor at n = " + std::to_string(n) + " is below " + std::to_string(floor) +
                                 " (resonant lambda; use double-double precision or a Diophantine lambda)",
                             n);
    }
  }
  return s;
}

std::vector<double> majorant_sigma(double M, const std::vector<double>& eps, int D) {
  if (D < 1) throw DomainError("majorant_sigma: D must be >= 1");
  if (M < 0.0) throw DomainError("majorant_sigma: M must be nonnegative");
  const std::size_t n1 = static_cast<std::size_t>(D) + 1;
  // With s(w) = sum sigma_k w^k and R = 1/(1 - s):
  //   sum_{nu>=2} (nu+1) s^nu = 1/(1-s)^2 - 1 - 2 s,  [w^n] 1/(1-s)^2 = sum_j R_j R_{n-j}.
  std::vector<double> sigma(n1, 0.0), R(n1, 0.0);
  R[0] = 1.0;
  sigma[1] = 1.0;
  R[1] = 1.0;
  for (std::size_t n = 2; n < n1; ++n) {
    double r_known = 0.0;  // R_n - sigma_n
    for (std::size_t k = 1; k < n; ++k) r_known += sigma[k] * R[n - k];
    double inner = 2.0 * r_known;
    for (std::size_t j = 1; j < n; ++j) inner += R[j] * R[n - j];
    if (!(eps[n] > 0.0)) throw ZeroDivisorError("majorant_sigma: zero divisor", static_cast<int>(n));
    sigma[n] = M * inner / eps[n];
    R[n] = r_known + sigma[n];
  }
  return sigma;
}

std::vector<double> majorant_sigma(double M, const SmallDivisors& divisors, int D) {
  if (D > divisors.D) throw DomainError("majorant_sigma: D exceeds the divisor table");
  return majorant_sigma(M, divisors.eps_min, D);
}

std::vector<double> majorant_delta(const std::vector<double>& eps, int D) {
  const std::size_t n1 = static_cast<std::size_t>(D) + 1;
  std::vector<double> delta(n1, 0.0), best(n1, 0.0);
  // best[m] = max over all compositions of m (one part allowed) of the product.
  delta[1] = 1.0;
  best[1] = 1.0;
  for (std::size_t k = 2; k < n1; ++k) {
    double m = 0.0;
    for (std::size_t j = 1; j < k; ++j) m = std::max(m, delta[j] * best[k - j]);
    if (!(eps[k] > 0.0)) throw ZeroDivisorError("majorant_delta: zero divisor", static_cast<int>(k));
    delta[k] = m / eps[k];
    best[k] = std::max(delta[k], m);
  }
  return delta;
}

std::vector<double> majorant_delta_binary_split(const std::vector<double>& eps, int D) {
  const std::size_t n1 = static_cast<std::size_t>(D) + 1;
  std::vector<double> delta(n1, 0.0);
  delta[1] = 1.0;
  for (std::size_t k = 2; k < n1; ++k) {
    double m = 0.0;
    for (std::size_t j = 1; j < k; ++j) m = std::max(m, delta[j] * delta[k - j]);
    delta[k] = m / eps[k];
  }
  return delta;
}

double EtaRadius::eta(double w) const {
  if (w < 0.0 || w > w_star * (1.0 + 1e-12)) throw DomainError("eta: w outside [0, w*]");
  if (w == 0.0) return 0.0;
  auto f = [this, w](double e) { return e - M * (1.0 / ((1.0 - e) * (1.0 - e)) - 1.0 - 2.0 * e) - w; };
  if (f(eta_star) <= 0.0) return eta_star;
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, 0.0, eta_star, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

EtaRadius eta_radius(double M) {
  if (!(M > 0.0)) throw DomainError("eta_radius: M must be positive");
  EtaRadius er;
  er.M = M;
  // dw/deta = 1 - M (2/(1-eta)^3 - 2): positive at 0, -> -inf as eta -> 1.
  auto dw = [M](double e) { return 1.0 - M * (2.0 / std::pow(1.0 - e, 3) - 2.0); };
  boost::uintmax_t iters = 200;
  const auto r =
      boost::math::tools::toms748_solve(dw, 0.0, 1.0 - 1e-12, boost::math::tools::eps_tolerance<double>(52), iters);
  er.eta_star = 0.5 * (r.first + r.second);
  const double e = er.eta_star;
  er.w_star = e - M * (1.0 / ((1.0 - e) * (1.0 - e)) - 1.0 - 2.0 * e);
  er.b = 1.0 / er.w_star;
  return er;
}

double fit_growth_rate(const std::vector<double>& values, int n0) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t n = static_cast<std::size_t>(std::max(n0, 0)); n < values.size(); ++n) {
    const double v = values[n];
    if (!(v > 1e-300) || !std::isfinite(v)) continue;
    const double x = static_cast<double>(n);
    const double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return 0.0;
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return std::exp(slope);
}

double degree_bound_margin(const std::vector<double>& delta, double c, double N) {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t n = 2; n < delta.size(); ++n) {
    const double nd = static_cast<double>(n);
    margin = std::min(margin, nd * nd * (std::log(1.0 / c) + N * std::log(nd)) - std::log(delta[n]));
  }
  return margin;
}

MajorantSplit majorant_split(double M, const SmallDivisors& divisors, int D) {
  if (D > divisors.D) throw DomainError("majorant_split: D exceeds the divisor table");
  MajorantSplit s;
  s.M = M;
  const std::vector<double> ones(static_cast<std::size_t>(D) + 1, 1.0);
  s.eta = majorant_sigma(M, ones, D);
  s.delta = majorant_delta(divisors.eps_min, D);
  s.b = M > 0.0 ? eta_radius(M).b : 0.0;
  s.a = fit_growth_rate(s.delta, 2);
  const std::vector<double> sigma = majorant_sigma(M, divisors, D);
  for (int n = 2; n <= D; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const double bound = s.eta[un] * s.delta[un];
    if (bound > 0.0) s.split_ratio = std::max(s.split_ratio, sigma[un] / bound);
  }
  return s;
}

MajorantSplit majorant_split(double M, const Theta& theta0, double c, double N, int D) {
  const auto cert = check_siegel(theta0, c, N, D);
  if (!cert.ok()) {
    throw DomainError("majorant_split: (c, N) is not a valid certificate up to k = " + std::to_string(D) +
                      " (first violation at k = " + std::to_string(cert.violations.front().k) + ")");
  }
  const Complex lambda = std::polar(1.0, kTwoPi * theta0.to_double());
  return majorant_split(M, compute_small_divisors(lambda, D, true), D);
}

double residual(const Series1& psi, const MapJet& F, Complex lambda, double radius, int samples) {
  if (samples < 1) throw DomainError("residual: samples must be >= 1");
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Complex w = std::polar(radius, kTwoPi * i / samples);
    const ComplexPoint2 lhs = F.eval(series1_eval(psi, w));
    const ComplexPoint2 rhs = series1_eval(psi, lambda * w);
    worst = std::max(worst, norm_max(lhs - rhs));
  }
  return worst;
}

Series1 LinearizationResult::psi_original() const {
  Series1 out(psi.order());
  for (int n = 0; n <= psi.order(); ++n) {
    out[n] = {conjugation[0][0] * psi[n].z1 + conjugation[0][1] * psi[n].z2,
              conjugation[1][0] * psi[n].z1 + conjugation[1][1] * psi[n].z2};
  }
  return out;
}

MajorantSplit LinearizationResult::split() const {
  MajorantSplit s;
  s.M = M;
  s.eta = eta;
  s.delta = delta;
  s.a = a;
  s.b = b;
  for (int n = 2; n <= D; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const double bound = eta[un] * delta[un];
    if (bound > 0.0) s.split_ratio = std::max(s.split_ratio, sigma[un] / bound);
  }
  return s;
}

LinearizationResult solve_psi(const MapJet& F, Complex lambda, int D, const LinearizationOptions& opts) {
  if (D < 2) throw DomainError("solve_psi: D must be >= 2");
  if (F.order() < 1 || F.second.order() != F.first.order()) throw DomainError("solve_psi: malformed jet");
  if (F.first.constant_term() != Complex{} || F.second.constant_term() != Complex{}) {
    throw DomainError("solve_psi: jet must fix the origin");
  }
  const Matrix2 A{{{F.first.coeff(1, 0), F.first.coeff(0, 1)}, {F.second.coeff(1, 0), F.second.coeff(0, 1)}}};
  const auto mu = eigenvalues(A);
  const double tol = 1e-9 * std::max(1.0, std::abs(lambda));
  int il = -1;
  if (std::abs(mu[0] - lambda) <= tol && std::abs(mu[1] - 1.0) <= tol) il = 0;
  else if (std::abs(mu[1] - lambda) <= tol && std::abs(mu[0] - 1.0) <= tol) il = 1;
  if (il < 0) throw DomainError("solve_psi: linear part must have eigenvalues {lambda, 1}");

  LinearizationResult res;
  res.lambda = lambda;
  res.D = D;
  MapJet G = F;
  const bool diagonal = std::abs(A[0][1]) <= tol && std::abs(A[1][0]) <= tol && std::abs(A[0][0] - lambda) <= tol;
  if (diagonal) {
    res.conjugation = {{{1.0, 0.0}, {0.0, 1.0}}};
  } else {
    const auto vl = eigenvector(A, lambda);
    const auto v1 = eigenvector(A, 1.0);
    const Matrix2 P{{{vl[0], v1[0]}, {vl[1], v1[1]}}};
    const Matrix2 Pinv = inverse(P);
    res.conjugation = P;
    const int order = F.order();
    Series2 u1(order), u2(order);
    u1.set(1, 0, P[0][0]);
    u1.set(0, 1, P[0][1]);
    u2.set(1, 0, P[1][0]);
    u2.set(0, 1, P[1][1]);
    const Series2 f1 = series2_compose(F.first, u1, u2);
    const Series2 f2 = series2_compose(F.second, u1, u2);
    G = {f1 * Pinv[0][0] + f2 * Pinv[0][1], f1 * Pinv[1][0] + f2 * Pinv[1][1]};
  }
  // The normalized jet has linear part exactly diag(lambda, 1).
  G.first.set(1, 0, lambda);
  G.first.set(0, 1, 0.0);
  G.second.set(1, 0, 0.0);
  G.second.set(0, 1, 1.0);
  res.normalized_jet = G;

  const int Dj = std::min(G.order(), D);
  res.M = std::max(G.first.max_abs(2, Dj), G.second.max_abs(2, Dj));

  Precision mode = opts.precision;
  SmallDivisors div = compute_small_divisors(lambda, D, mode == Precision::DoubleDouble);
  if (mode == Precision::Auto) {
    mode = div.smallest() < kEscalationThreshold ? Precision::DoubleDouble : Precision::Double;
    if (mode == Precision::DoubleDouble) div = compute_small_divisors(lambda, D, true);
  }
  res.precision_used = mode;
  if (mode == Precision::DoubleDouble) {
    // Divisors recomputed in double-double so the small differences keep
    // their low-order bits.
    const DDComplex lam(lambda);
    DDComplex p = lam;
    std::vector<DDComplex> e1(static_cast<std::size_t>(D) + 1), e2(static_cast<std::size_t>(D) + 1);
    for (int n = 2; n <= D; ++n) {
      p = p * lam;
      e1[static_cast<std::size_t>(n)] = p - lam;
      e2[static_cast<std::size_t>(n)] = p - DDComplex(DoubleDouble(1.0));
    }
    res.psi = recurse_psi<DDComplex>(G, D, e1, e2);
  } else {
    res.psi = recurse_psi<Complex>(G, D, div.eps1, div.eps2);
  }
  res.divisors = div;

  res.sigma = majorant_sigma(res.M, div, D);
  const MajorantSplit split = majorant_split(res.M, div, D);
  res.eta = split.eta;
  res.delta = split.delta;
  res.a = split.a;
  res.b = split.b;
  res.rho_estimate = (res.M > 0.0 && res.a > 0.0) ? 1.0 / (res.a * res.b * res.M) : std::numeric_limits<double>::infinity();
  res.residual_radius = opts.residual_radius > 0.0 ? opts.residual_radius
                        : std::isfinite(res.rho_estimate) ? 0.5 * res.rho_estimate
                                                          : 0.5;
  res.residual = residual(res.psi, G, lambda, res.residual_radius, opts.residual_samples);
  return res;
}

BoundCheck exponential_bound_check(const LinearizationResult& result, const MajorantSplit& split, double tolerance) {
  BoundCheck bc;
  std::vector<double> norms(static_cast<std::size_t>(result.D) + 1, 0.0);
  int nonzero = 0;
  for (int n = 2; n <= result.D; ++n) {
    norms[static_cast<std::size_t>(n)] = norm_max(result.psi[n]);
    if (norms[static_cast<std::size_t>(n)] > 1e-300) ++nonzero;
  }
  bc.allowed = split.a * split.b * split.M * (1.0 + tolerance);
  if (nonzero < 2) {
    bc.rate = 0.0;
    for (double v : norms) bc.C = std::max(bc.C, v);
    bc.ok = true;
    return bc;
  }
  bc.rate = fit_growth_rate(norms, 2);
  for (int n = 2; n <= result.D; ++n) {
    bc.C = std::max(bc.C, norms[static_cast<std::size_t>(n)] / std::pow(bc.rate, n));
  }
  bc.ok = bc.rate <= bc.allowed;
  return bc;
}

SweepResult parameter_sweep(const JetFamily& family, const Theta& theta0, const std::vector<double>& r_values, int D,
                            const LinearizationOptions& opts, double fd_step) {
  if (r_values.empty()) throw DomainError("parameter_sweep: no r values");
  if (!std::is_sorted(r_values.begin(), r_values.end())) throw DomainError("parameter_sweep: r values must be sorted");
  const double phase = kTwoPi * theta0.to_double();
  auto solve_at = [&](double r) { return solve_psi(family(std::polar(r, phase)), std::polar(r, phase), D, opts); };

  SweepResult out;
  double min_spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < r_values.size(); ++i) min_spacing = std::min(min_spacing, r_values[i] - r_values[i - 1]);
  const double h = fd_step > 0.0 ? fd_step : (std::isfinite(min_spacing) ? 0.25 * min_spacing : 1e-3);

  for (double r : r_values) {
    SweepEntry e;
    e.r = r;
    try {
      e.result = solve_at(r);
      e.rate = exponential_bound_check(*e.result, e.result->split()).rate;
      e.ok = true;
    } catch (const Error& err) {
      e.error = err.what();
    }
    out.entries.push_back(std::move(e));
  }

  bool smooth = true;
  for (std::size_t i = 1; i + 1 < out.entries.size(); ++i) {
    const auto& lo = out.entries[i - 1];
    const auto& mid = out.entries[i];
    const auto& hi = out.entries[i + 1];
    if (!lo.ok || !mid.ok || !hi.ok) {
      smooth = false;
      continue;
    }
    Series1 d(D);
    const double span = hi.r - lo.r;
    for (int n = 0; n <= D; ++n) d[n] = (hi.result->psi[n] - lo.result->psi[n]) * Complex(1.0 / span, 0.0);
    out.d_psi_dr.push_back(d);
    out.interior_r.push_back(mid.r);

    try {
      const Series1& p0 = mid.result->psi;
      const Series1 ph = solve_at(mid.r + h).psi;
      const Series1 ph2 = solve_at(mid.r + 0.5 * h).psi;
      const Series1 ph4 = solve_at(mid.r + 0.25 * h).psi;
      for (int n = 2; n <= D / 2; ++n) {
        for (int comp = 0; comp < 2; ++comp) {
          auto pick = [comp](const ComplexPoint2& p) { return comp == 0 ? p.z1 : p.z2; };
          const Complex v0 = pick(p0[n]);
          const Complex d1 = (pick(ph[n]) - v0) / h;
          const Complex d2 = (pick(ph2[n]) - v0) / (0.5 * h);
          const Complex d4 = (pick(ph4[n]) - v0) / (0.25 * h);
          const double e1 = std::abs(d1 - d2);
          const double e2 = std::abs(d2 - d4);
          const double scale = std::max({std::abs(v0), std::abs(d1) * h, 1e-300});
          if (e2 < 1e-8 * scale) continue;  // at rounding level: no information
          const double ratio = e1 / e2;
          out.worst_ratio_deviation = std::max(out.worst_ratio_deviation, std::abs(ratio - 2.0));
          ++out.ratios_tested;
          if (ratio < 1.8 || ratio > 2.2) smooth = false;
        }
      }
    } catch (const Error&) {
      smooth = false;
    }
  }
  out.smoothness_ok = smooth && out.ratios_tested > 0;

  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  bool all_ok = true;
  for (const auto& e : out.entries) {
    if (!e.ok) {
      all_ok = false;
      continue;
    }
    rmin = std::min(rmin, e.rate);
    rmax = std::max(rmax, e.rate);
  }
  if (all_ok && rmax == 0.0) {
    out.rate_spread = 1.0;
    out.rates_uniform = true;
  } else if (all_ok && rmin > 0.0) {
    out.rate_spread = rmax / rmin;
    out.rates_uniform = out.rate_spread <= 1.2;
  }
  // A family without r dependence has nothing to test beyond exact equality.
  if (out.ratios_tested == 0 && smooth) {
    bool constant = true;
    for (const auto& d : out.d_psi_dr) {
      for (int n = 0; n <= D; ++n) constant = constant && norm_max(d[n]) == 0.0;
    }
    out.smoothness_ok = constant && !out.d_psi_dr.empty();
  }
  return out;
}

MapJet quadratic_test_jet(Complex lambda) {
  MapJet j{Series2(2), Series2(2)};
  j.first.set(1, 0, lambda);
  j.first.set(2, 0, 1.0);
  j.first.set(1, 1, 1.0);
  j.second.set(0, 1, 1.0);
  j.second.set(2, 0, 1.0);
  j.second.set(0, 2, 1.0);
  return j;
}

MapJet linear_test_jet(Complex lambda) {
  MapJet j{Series2(1), Series2(1)};
  j.first.set(1, 0, lambda);
  j.second.set(0, 1, 1.0);
  return j;
}

}  // namespace fatou
