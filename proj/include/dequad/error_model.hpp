#pragma once

// Error-bound model comparing single- and double-exponential Sinc
// approximation:
//
//   SE:  c_se N^(5/2) exp(-c sqrt(N))
//   DE:  c_de N^2     exp(-c N / ln N)
//
// and the threshold N0 beyond which the DE bound is provably smaller.
// Both bounds underflow long before the interesting range of N ends, so
// comparisons go through the log-domain variants.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "dequad/errors.hpp"

namespace dequad::bounds {

struct BoundParams {
  double c = 1.0;     // exponent constant
  double c_se = 1.0;  // SE prefactor
  double c_de = 1.0;  // DE prefactor

  void validate() const {
    if (!(c > 0.0 && c_se > 0.0 && c_de > 0.0))
      throw std::invalid_argument("BoundParams: all constants must be positive");
  }
};

struct DecayModel {
  enum class Kind { Single, Double };
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;  // ignored for Single
  Kind kind = Kind::Single;
};

inline double log_se_bound(std::int64_t n, const BoundParams& p) {
  if (n < 1) throw DomainError("se_bound requires N >= 1");
  const auto nd = static_cast<double>(n);
  return std::log(p.c_se) + 2.5 * std::log(nd) - p.c * std::sqrt(nd);
}

inline double log_de_bound(std::int64_t n, const BoundParams& p) {
  if (n < 2) throw DomainError("de_bound requires N >= 2");
  const auto nd = static_cast<double>(n);
  const double ln = std::log(nd);
  return std::log(p.c_de) + 2.0 * ln - p.c * nd / ln;
}

inline double se_bound(std::int64_t n, const BoundParams& p) {
  if (n < 1) throw DomainError("se_bound requires N >= 1");
  const auto nd = static_cast<double>(n);
  return p.c_se * std::pow(nd, 2.5) * std::exp(-p.c * std::sqrt(nd));
}

// Natural logarithm in the exponent.
inline double de_bound(std::int64_t n, const BoundParams& p) {
  if (n < 2) throw DomainError("de_bound requires N >= 2");
  const auto nd = static_cast<double>(n);
  return p.c_de * nd * nd * std::exp(-p.c * nd / std::log(nd));
}

// Threshold beyond which e^t > a t, from 1 + t + t^2/2 > a t: the larger root
// of t^2/2 + (1-a) t + 1 when the discriminant (a-1)^2 - 2 is non-negative,
// otherwise 0.
inline double exp_linear_threshold(double a) {
  if (!(a > 0.0)) throw DomainError("exp_linear_threshold requires a > 0");
  double disc = (a - 1.0) * (a - 1.0) - 2.0;
  // Rounding can push an exactly zero discriminant slightly negative.
  if (disc < 0.0 && disc > -8.0 * std::numeric_limits<double>::epsilon()) disc = 0.0;
  if (disc < 0.0) return 0.0;
  return (a - 1.0) + std::sqrt(disc);
}

struct Crossover {
  // Sufficient threshold: de_bound(N) < se_bound(N) for every N > n0.
  std::int64_t n0;
  // Smallest N >= 2 from which the inequality holds all the way up to n0.
  std::int64_t empirical;
};

// N0 = ceil(max{(c_de/c_se)^2, e^x0}) where x0 comes from e^(x/2) > x,
// i.e. e^u > 2u with u = x/2, so x0 = 2 * exp_linear_threshold(2).
inline std::int64_t crossover_n0(const BoundParams& p) {
  p.validate();
  const double ratio = p.c_de / p.c_se;
  const double x0 = 2.0 * exp_linear_threshold(2.0);
  const double n0 = std::ceil(std::max(ratio * ratio, std::exp(x0)));
  if (!(n0 < 9.0e18)) throw DomainError("crossover_n0 overflows an integer count");
  return static_cast<std::int64_t>(n0);
}

inline bool de_below_se(std::int64_t n, const BoundParams& p) {
  return log_de_bound(n, p) < log_se_bound(n, p);
}

inline Crossover crossover(const BoundParams& p) {
  const std::int64_t n0 = crossover_n0(p);
  std::int64_t first = std::max<std::int64_t>(n0 + 1, 2);
  for (std::int64_t n = std::max<std::int64_t>(n0, 2); n >= 2 && de_below_se(n, p); --n)
    first = n;
  return {n0, first};
}

// Count of N in (n0, n0 + span] where the DE bound is not below the SE bound.
inline std::int64_t crossover_violations(const BoundParams& p, std::int64_t span) {
  const std::int64_t n0 = crossover_n0(p);
  std::int64_t bad = 0;
  for (std::int64_t n = std::max<std::int64_t>(n0 + 1, 2); n <= n0 + span; ++n)
    if (!de_below_se(n, p)) ++bad;
  return bad;
}

inline double decay_envelope(const DecayModel& m, double t) {
  const double at = std::abs(t);
  if (m.kind == DecayModel::Kind::Single) return m.alpha * std::exp(-m.beta * at);
  return m.alpha * std::exp(-m.beta * std::exp(m.gamma * at));
}

}  // namespace dequad::bounds
