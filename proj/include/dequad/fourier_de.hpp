#pragma once

// Fourier-type integrals over (0, inf)
//
//   I_s = int_0^inf f1(x) sin(w x) dx,   I_c = int_0^inf f1(x) cos(w x) dx
//
// with the Ooura-Mori map phi(t) = t / (1 - exp(-K sinh t)):
//   I_s: x = M phi(t) / w,  I_c: x = M phi(t - pi/(2M)) / w,  M = pi / h.
// On the trapezoid grid t = jh the oscillatory factor is evaluated as
// (-1)^j sin(M (phi - t)) for t >= 0, so the positive tail decays double exponentially
// instead of stalling on the rounding error of sin(j pi).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dequad/errors.hpp"
#include "dequad/quad.hpp"

namespace dequad::fourier {

inline constexpr double kSeriesRadius = 1e-4;

// t / (1 - exp(-K sinh t)); 1/K at t = 0.
inline double ooura_phi(double t, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("ooura_phi: K must be positive");
  const double sh = std::sinh(t);
  const double z = k * sh;
  if (std::abs(z) < kSeriesRadius) {
    // 1/(1 - e^-z) = 1/z + 1/2 + z/12 + O(z^3)
    const double ratio = t == 0.0 ? 1.0 : sh / t;
    return 1.0 / (k * ratio) + 0.5 * t + t * z / 12.0;
  }
  return t / -std::expm1(-z);
}

// phi(t) - t = t / (exp(K sinh t) - 1), accurate in the positive tail.
inline double ooura_phi_minus_t(double t, double k) {
  const double z = k * std::sinh(t);
  if (std::abs(z) < kSeriesRadius) return ooura_phi(t, k) - t;
  return t / std::expm1(z);
}

inline double ooura_phi_prime(double t, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("ooura_phi_prime: K must be positive");
  const double z = k * std::sinh(t);
  if (std::abs(z) < kSeriesRadius) return 0.5 + t * (k / 6.0 - 1.0 / (3.0 * k));
  if (t > 700.0) return 1.0;
  const double kc = k * t * std::cosh(t);
  if (z > 0.0) {
    const double e = std::exp(-z);
    const double d = -std::expm1(-z);
    return (d - kc * e) / (d * d);
  }
  // Negative side in terms of q = e^z < 1, so nothing overflows.
  const double q = std::exp(z);
  const double d = std::expm1(z);  // q - 1
  return q * (d - kc) / (d * d);
}

enum class Kind { Sin, Cos };

struct OouraParams {
  double K = 6.0;
  double w = 1.0;  // frequency
};

struct FourierJob {
  std::function<double(double)> f1;
  Kind kind = Kind::Sin;
  OouraParams params;
  double tol = 1e-8;
  int max_level = 10;
  double h0 = 1.0;
};

struct FourierResult : QuadratureResult {
  double M = 0.0;  // pi / h of the final level
};

namespace detail {

inline constexpr double kMaxT = 8.0;
inline constexpr int kQuietRun = 3;

// One trapezoid level with M = pi/h. Returns h * sum and adds the samples
// taken to `evals`; the index window actually used is written to lo/hi.
inline double level_sum(const FourierJob& job, double h, std::int64_t& evals, std::int64_t& lo,
                        std::int64_t& hi) {
  const double k = job.params.K;
  const double w = job.params.w;
  const double m = std::numbers::pi / h;
  const double shift = job.kind == Kind::Cos ? 0.5 * h : 0.0;
  const double negligible = job.tol * 1e-3;

  auto sample = [&](std::int64_t j) {
    const double t = static_cast<double>(j) * h;
    const double s = t - shift;
    const double dphi = ooura_phi_prime(s, k);
    if (dphi == 0.0) return 0.0;
    const double x = m * ooura_phi(s, k) / w;
    if (x == 0.0) return 0.0;
    // Positive side: (-1)^j sin(M (phi - t)) keeps the vanishing phase.
    // Negative side: M phi is small and accurate, the shifted form is not.
    double osc;
    if (s < 0.0) {
      const double mp = m * ooura_phi(s, k);
      osc = job.kind == Kind::Cos ? std::cos(mp) : std::sin(mp);
    } else {
      osc = (j % 2 == 0 ? 1.0 : -1.0) * std::sin(m * ooura_phi_minus_t(s, k));
    }
    const double v = job.f1(x) * osc * m * dphi / w;
    if (!std::isfinite(v)) throw NonFiniteSample(s, x);
    return v;
  };

  auto sweep = [&](std::int64_t start, std::int64_t step, std::int64_t& last) {
    double s = 0.0;
    int quiet = 0;
    for (std::int64_t j = start;; j += step) {
      const double v = sample(j);
      ++evals;
      s += v;
      last = j;
      quiet = std::abs(h * v) < negligible ? quiet + 1 : 0;
      if (quiet >= kQuietRun || std::abs(static_cast<double>(j) * h) > kMaxT) break;
    }
    return s;
  };

  std::int64_t first_neg = 0;
  std::int64_t last_pos = 0;
  const double right = sweep(0, 1, last_pos);
  const double left = sweep(-1, -1, first_neg);
  lo = -first_neg;
  hi = last_pos;
  return h * (left + right);
}

}  // namespace detail

inline FourierResult fourier_integrate(const FourierJob& job) {
  if (!job.f1) throw std::invalid_argument("fourier: f1 is empty");
  if (!(job.params.K > 0.0)) throw std::invalid_argument("fourier: K must be positive");
  if (!(job.params.w > 0.0)) throw std::invalid_argument("fourier: w must be positive");
  if (!(job.tol > 0.0)) throw std::invalid_argument("fourier: tol must be positive");
  if (job.max_level < 1 || job.max_level > 12)
    throw std::invalid_argument("fourier: max_level must lie in [1, 12]");

  FourierResult r;
  r.err_estimate = std::numeric_limits<double>::infinity();
  double h = job.h0;
  for (int level = 0; level <= job.max_level; ++level, h *= 0.5) {
    std::int64_t lo = 0, hi = 0;
    const double v = detail::level_sum(job, h, r.n_evals, lo, hi);
    if (level > 0) r.err_estimate = std::abs(v - r.value);
    r.value = v;
    r.h = h;
    r.M = std::numbers::pi / h;
    r.n_minus = lo;
    r.n_plus = hi;
    if (level > 0 && r.err_estimate <= job.tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

inline FourierResult fourier_sin(FourierJob job) {
  job.kind = Kind::Sin;
  return fourier_integrate(job);
}

inline FourierResult fourier_cos(FourierJob job) {
  job.kind = Kind::Cos;
  return fourier_integrate(job);
}

// |A2| = |e^-z / (1 - e^-z)| with z = K sinh t, t < 0.
inline double a2_magnitude(double t, double k) {
  const double q = std::exp(k * std::sinh(t));
  return 1.0 / (1.0 - q);
}

// Exponents bounding the negative tail; both -> -inf as t -> -inf.
inline double neg_tail_exponent_plus(double t, double k) { return t - 0.25 * k * std::exp(-t); }
inline double neg_tail_exponent_minus(double t, double k) { return -t - 0.25 * k * std::exp(-t); }

// log phi'(t) for t <= -1 without overflow; NaN if phi'(t) <= 0.
inline double log_phi_prime_negative(double t, double k) {
  const double z = k * std::sinh(t);
  const double q = std::exp(z);
  const double num = k * std::abs(t) * std::cosh(t) - (1.0 - q);
  if (!(num > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return z + std::log(num) - 2.0 * std::log1p(-q);
}

struct DecayCertificate {
  double D = 0.0;
  double c = 0.0;
  bool ok = false;
  bool a2_below_two = false;     // |A2| < 2 over the range
  bool denominator_ok = false;   // |1 - e^-z| > e^-z / 2 over the range
  double max_a2 = 0.0;
};

// Checks on a grid over [t_lo, t_hi] that phi' decays like D exp(-c e^|t|)
// on the negative side, fitting c with the slope in |t| fixed to 1.
inline DecayCertificate decay_certificate(double k, double t_lo, double t_hi, int points = 401) {
  if (!(t_hi <= -1.0) || !(t_lo < t_hi)) throw std::invalid_argument("decay_certificate: need t_lo < t_hi <= -1");
  if (!(k > 0.0)) throw std::invalid_argument("decay_certificate: K must be positive");
  if (points < 2) throw std::invalid_argument("decay_certificate: need at least 2 points");

  DecayCertificate cert;
  cert.a2_below_two = true;
  cert.denominator_ok = true;
  std::vector<double> ts, logs;
  for (int i = 0; i < points; ++i) {
    const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double a2 = a2_magnitude(t, k);
    cert.max_a2 = std::max(cert.max_a2, a2);
    if (!(a2 > 0.0 && a2 < 2.0)) cert.a2_below_two = false;

    // log|1 - e^-z| = log(1 - q) - z versus log(e^-z / 2) = -z - log 2
    const double z = k * std::sinh(t);
    const double q = std::exp(z);
    if (!(std::log1p(-q) - z > -z - std::numbers::ln2)) cert.denominator_ok = false;

    const double lp = log_phi_prime_negative(t, k);
    if (!(lp < 0.0)) return cert;  // not decaying here: certification fails
    ts.push_back(std::abs(t));
    logs.push_back(lp);
  }

  // log(-log phi') = log c + |t|
  double acc = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) acc += std::log(-logs[i]) - ts[i];
  cert.c = std::exp(acc / static_cast<double>(ts.size()));

  double log_d = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ts.size(); ++i)
    log_d = std::max(log_d, logs[i] + cert.c * std::exp(ts[i]));
  cert.D = std::exp(log_d);

  cert.ok = cert.a2_below_two && cert.denominator_ok && cert.c >= 0.9 * k / 4.0;
  return cert;
}

}  // namespace dequad::fourier
