#pragma once

// Truncated trapezoidal rule on a transformed integrand, with level doubling.
//
// Each level halves h and evaluates only the odd multiples of the new step,
// so no abscissa is ever sampled twice. The error estimate is the difference
// between the last two levels.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "dequad/errors.hpp"
#include "dequad/transforms.hpp"

namespace dequad {

struct QuadratureConfig {
  double tol = 1e-10;
  int max_level = 10;  // number of h-halvings after the first level
  double h0 = 1.0;

  void validate() const {
    if (!(tol >= 1e-15)) throw std::invalid_argument("tol must be >= 1e-15");
    if (max_level < 1 || max_level > 12)
      throw std::invalid_argument("max_level must lie in [1, 12]");
    if (!(h0 > 0.0) || !std::isfinite(h0))
      throw std::invalid_argument("h0 must be positive");
  }
};

struct QuadratureResult {
  double value = 0.0;
  double err_estimate = 0.0;
  double h = 0.0;
  std::int64_t n_minus = 0;
  std::int64_t n_plus = 0;
  std::int64_t n_evals = 0;
  bool converged = false;
};

struct Truncation {
  std::int64_t n_minus;
  std::int64_t n_plus;
};

// |t| beyond which DE weights are saturated to zero anyway.
inline constexpr double kDeMaxT = 7.0;
// SE terms decay only like exp(-c|t|); they need a much wider window.
inline constexpr double kSeMaxT = 50.0;

// h * sum_{k=-n_minus}^{n_plus} g(kh). Summed from the outermost negative
// index inward, then the outermost positive index inward, then k = 0.
template <class G>
double trapezoid_sum(G&& g, double h, std::int64_t n_minus, std::int64_t n_plus) {
  if (!(h > 0.0)) throw std::invalid_argument("trapezoid_sum: h must be positive");
  double s = 0.0;
  auto add = [&](std::int64_t k) {
    const double t = static_cast<double>(k) * h;
    const double v = g(t);
    if (!std::isfinite(v))
      throw NonFiniteSample(t, std::numeric_limits<double>::quiet_NaN());
    s += v;
  };
  for (std::int64_t k = -n_minus; k < 0; ++k) add(k);
  for (std::int64_t k = n_plus; k > 0; --k) add(k);
  add(0);
  return h * s;
}

// Smallest n with exp(-c exp(n h)) < tol/10, capped so n h <= 7.
inline Truncation truncation_bounds(double h, double tol, double c) {
  if (!(h > 0.0) || !(tol > 0.0 && tol < 1.0) || !(c > 0.0))
    throw std::invalid_argument("truncation_bounds: need h > 0, 0 < tol < 1, c > 0");
  const auto cap = static_cast<std::int64_t>(std::floor(kDeMaxT / h));
  const double target = std::log(10.0 / tol);
  std::int64_t n = 0;
  while (n < cap && !(c * std::exp(static_cast<double>(n) * h) > target)) ++n;
  return {n, n};
}

// Single-exponential counterpart: smallest n with exp(-c n h) < tol/10.
inline Truncation se_truncation_bounds(double h, double tol, double c) {
  if (!(h > 0.0) || !(tol > 0.0 && tol < 1.0) || !(c > 0.0))
    throw std::invalid_argument("se_truncation_bounds: need h > 0, 0 < tol < 1, c > 0");
  const auto cap = static_cast<std::int64_t>(std::floor(kSeMaxT / h));
  const double target = std::log(10.0 / tol);
  std::int64_t n = 0;
  while (n < cap && !(c * static_cast<double>(n) * h > target)) ++n;
  return {n, n};
}

// Integrands may take either the abscissa or the full NodeWeight.
template <class F>
concept NodeIntegrand = std::is_invocable_r_v<double, F&, const NodeWeight&>;
template <class F>
concept PointIntegrand = std::is_invocable_r_v<double, F&, double>;

namespace detail {

template <class F>
double call_integrand(F& f, const NodeWeight& nw) {
  if constexpr (NodeIntegrand<F>)
    return f(nw);
  else
    return f(nw.x);
}

// g(t) = f(phi(t)) phi'(t); zero weights are not evaluated.
template <class F>
double transformed_sample(F& f, const Transform& tr, double t) {
  const NodeWeight nw = node(tr, t);
  if (nw.w == 0.0) return 0.0;
  const double v = call_integrand(f, nw) * nw.w;
  if (!std::isfinite(v)) throw NonFiniteSample(t, nw.x);
  return v;
}

}  // namespace detail

template <class F>
  requires NodeIntegrand<F> || PointIntegrand<F>
QuadratureResult integrate(F&& f, const Transform& tr, const QuadratureConfig& cfg = {}) {
  cfg.validate();
  const double h0 = cfg.h0;
  const double tol = cfg.tol;
  const bool de = tr.is_double_exponential();
  const double c = decay_estimate(tr);
  const Truncation start = de ? truncation_bounds(h0, std::min(tol, 0.5), c)
                              : se_truncation_bounds(h0, std::min(tol, 0.5), c);
  const auto cap = static_cast<std::int64_t>(std::floor((de ? kDeMaxT : kSeMaxT) / h0));

  auto g = [&](double t) { return detail::transformed_sample(f, tr, t); };

  // Level 0 on the h0 grid. The window is widened on each side until the
  // edge sample drops below tol/10; singular integrands decay slower than
  // the bounded-integrand model assumes.
  std::int64_t n_minus = std::max<std::int64_t>(start.n_minus, 1);
  std::int64_t n_plus = std::max<std::int64_t>(start.n_plus, 1);
  std::vector<double> neg, pos;  // neg[i] = g(-(i+1) h0), pos[i] = g((i+1) h0)
  for (std::int64_t k = 1; k <= n_minus; ++k) neg.push_back(g(-static_cast<double>(k) * h0));
  for (std::int64_t k = 1; k <= n_plus; ++k) pos.push_back(g(static_cast<double>(k) * h0));
  const double centre = g(0.0);
  while (n_minus < cap && std::abs(neg.back()) > tol / 10) {
    ++n_minus;
    neg.push_back(g(-static_cast<double>(n_minus) * h0));
  }
  while (n_plus < cap && std::abs(pos.back()) > tol / 10) {
    ++n_plus;
    pos.push_back(g(static_cast<double>(n_plus) * h0));
  }

  double s = 0.0;
  for (auto it = neg.rbegin(); it != neg.rend(); ++it) s += *it;
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) s += *it;
  s += centre;

  QuadratureResult r;
  r.value = h0 * s;
  r.h = h0;
  r.n_minus = n_minus;
  r.n_plus = n_plus;
  r.n_evals = n_minus + n_plus + 1;
  r.err_estimate = std::numeric_limits<double>::infinity();

  double h = h0;
  for (int level = 1; level <= cfg.max_level; ++level) {
    h *= 0.5;
    const std::int64_t scale = std::int64_t{1} << level;
    const std::int64_t lo = n_minus * scale;
    const std::int64_t hi = n_plus * scale;
    double fresh = 0.0;
    std::int64_t count = 0;
    for (std::int64_t k = -lo + 1; k < 0; k += 2, ++count) fresh += g(static_cast<double>(k) * h);
    for (std::int64_t k = hi - 1; k > 0; k -= 2, ++count) fresh += g(static_cast<double>(k) * h);

    const double value = 0.5 * r.value + h * fresh;
    r.err_estimate = std::abs(value - r.value);
    r.value = value;
    r.h = h;
    r.n_minus = lo;
    r.n_plus = hi;
    r.n_evals += count;
    if (r.err_estimate <= tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

// Same contract as integrate() with the single-exponential tanh(t/2) map.
template <class F>
  requires NodeIntegrand<F> || PointIntegrand<F>
QuadratureResult integrate_se(F&& f, const Interval& iv, const QuadratureConfig& cfg = {}) {
  return integrate(std::forward<F>(f), Transform(TransformKind::SeTanh, iv), cfg);
}

// Mesh for a fixed budget of N = 2n+1 points, from the classical Sinc
// quadrature error balance with strip half-width pi/2:
//   DE: h = log(pi^2 n / c) / n      SE: h = pi / sqrt(c n)
// where c is decay_estimate(tr, endpoint_exponent).
inline double fixed_budget_mesh(const Transform& tr, std::int64_t n, double endpoint_exponent) {
  if (n < 1) throw std::invalid_argument("fixed_budget_mesh: n must be >= 1");
  const double c = decay_estimate(tr, endpoint_exponent);
  const auto nd = static_cast<double>(n);
  constexpr double pi = std::numbers::pi;
  if (tr.is_double_exponential()) {
    const double h = std::log(pi * pi * nd / c) / nd;
    if (!(h > 0.0)) throw std::invalid_argument("fixed_budget_mesh: budget too small");
    return h;
  }
  return pi / std::sqrt(c * nd);
}

// Symmetric rule with exactly N = 2n+1 samples (an even N is rounded down).
// err_estimate is |T_h - T_2h| where T_2h reuses the even-indexed samples;
// converged means err_estimate <= tol.
template <class F>
  requires NodeIntegrand<F> || PointIntegrand<F>
QuadratureResult integrate_fixed(F&& f, const Transform& tr, std::int64_t budget,
                                 double endpoint_exponent = 1.0,
                                 double tol = std::numeric_limits<double>::infinity()) {
  if (budget < 3) throw std::invalid_argument("integrate_fixed: budget must be >= 3");
  const std::int64_t n = (budget - 1) / 2;
  const double h = fixed_budget_mesh(tr, n, endpoint_exponent);

  std::vector<double> samples(static_cast<std::size_t>(2 * n + 1));
  for (std::int64_t k = -n; k <= n; ++k)
    samples[static_cast<std::size_t>(k + n)] =
        detail::transformed_sample(f, tr, static_cast<double>(k) * h);

  // Index-space sums: the callables receive k as a double.
  auto at = [&](double k) { return samples[static_cast<std::size_t>(std::llround(k) + n)]; };
  const double fine = trapezoid_sum(at, 1.0, n, n) * h;
  const std::int64_t half = n / 2;
  const double coarse = trapezoid_sum([&](double j) { return at(2.0 * j); }, 1.0, half, half) * 2.0 * h;

  QuadratureResult r;
  r.value = fine;
  r.err_estimate = std::abs(fine - coarse);
  r.h = h;
  r.n_minus = n;
  r.n_plus = n;
  r.n_evals = 2 * n + 1;
  r.converged = r.err_estimate <= tol;
  return r;
}

}  // namespace dequad
