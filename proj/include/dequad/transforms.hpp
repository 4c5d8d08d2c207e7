#pragma once

// Variable transformations x = phi(t) mapping the real t-line onto the
// integration interval, with their Jacobians phi'(t).
//
// Nodes carry the distance of x to each finite endpoint, evaluated without
// forming 1 - tanh(u) directly, so integrands with endpoint singularities can
// be sampled from the distance instead of from x.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dequad {

struct Interval {
  enum class Kind { Finite, HalfInfinite, DoublyInfinite };

  Kind kind = Kind::Finite;
  double a = -1.0;
  double b = 1.0;

  static Interval finite(double a, double b) {
    if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b))
      throw std::invalid_argument("finite interval requires finite a < b");
    return {Kind::Finite, a, b};
  }
  // (0, inf)
  static Interval half_infinite() {
    return {Kind::HalfInfinite, 0.0, std::numeric_limits<double>::infinity()};
  }
  static Interval doubly_infinite() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {Kind::DoublyInfinite, -inf, inf};
  }
};

enum class TransformKind { DeTanhSinh, DeExpSinh, DeSinhSinh, SeTanh };

inline const char* to_string(TransformKind k) {
  switch (k) {
    case TransformKind::DeTanhSinh: return "de-tanh-sinh";
    case TransformKind::DeExpSinh: return "de-exp-sinh";
    case TransformKind::DeSinhSinh: return "de-sinh-sinh";
    case TransformKind::SeTanh: return "se-tanh";
  }
  return "?";
}

class Transform {
 public:
  Transform(TransformKind kind, Interval interval)
      : kind_(kind), interval_(interval) {
    const bool ok = [&] {
      switch (kind) {
        case TransformKind::DeTanhSinh:
        case TransformKind::SeTanh:
          return interval.kind == Interval::Kind::Finite;
        case TransformKind::DeExpSinh:
          return interval.kind == Interval::Kind::HalfInfinite;
        case TransformKind::DeSinhSinh:
          return interval.kind == Interval::Kind::DoublyInfinite;
      }
      return false;
    }();
    if (!ok)
      throw std::invalid_argument(std::string("transform ") + to_string(kind) +
                                  " does not match the interval kind");
  }

  static Transform tanh_sinh(double a = -1.0, double b = 1.0) {
    return {TransformKind::DeTanhSinh, Interval::finite(a, b)};
  }
  static Transform se_tanh(double a = -1.0, double b = 1.0) {
    return {TransformKind::SeTanh, Interval::finite(a, b)};
  }
  static Transform exp_sinh() {
    return {TransformKind::DeExpSinh, Interval::half_infinite()};
  }
  static Transform sinh_sinh() {
    return {TransformKind::DeSinhSinh, Interval::doubly_infinite()};
  }

  TransformKind kind() const noexcept { return kind_; }
  const Interval& interval() const noexcept { return interval_; }
  bool is_double_exponential() const noexcept {
    return kind_ != TransformKind::SeTanh;
  }

 private:
  TransformKind kind_;
  Interval interval_;
};

// One abscissa of the transformed rule. `w` already includes the affine
// scaling (b-a)/2; dist_a / dist_b are +inf for infinite endpoints.
struct NodeWeight {
  double x;
  double w;
  double dist_a;
  double dist_b;
};

namespace detail {

inline constexpr double kHalfPi = std::numbers::pi / 2;

// Finite-interval kernel shared by tanh-sinh and the SE tanh rule.
// `e` = exp(-2|u|) where x_std = tanh(u); `du` = du/dt.
inline NodeWeight finite_node(const Interval& iv, double t, double e,
                              double du) {
  const double half = 0.5 * (iv.b - iv.a);
  const double near = 2.0 * e / (1.0 + e);  // 1 - tanh|u|
  const double far = 2.0 / (1.0 + e);       // 1 + tanh|u|
  double w = 0.0;
  if (e >= std::numeric_limits<double>::min()) {
    // sech^2(u) = 4e / (1+e)^2
    w = half * du * 4.0 * e / ((1.0 + e) * (1.0 + e));
    if (!std::isfinite(w)) w = 0.0;
  }
  if (t >= 0.0) {
    const double db = half * near;
    return {iv.b - db, w, half * far, db};
  }
  const double da = half * near;
  return {iv.a + da, w, da, half * far};
}

}  // namespace detail

inline NodeWeight node(const Transform& tr, double t) {
  using detail::kHalfPi;
  constexpr double inf = std::numeric_limits<double>::infinity();
  const Interval& iv = tr.interval();
  switch (tr.kind()) {
    case TransformKind::DeTanhSinh: {
      const double u = kHalfPi * std::sinh(t);
      const double e = std::exp(-2.0 * std::abs(u));
      return detail::finite_node(iv, t, e, kHalfPi * std::cosh(t));
    }
    case TransformKind::SeTanh: {
      // x = tanh(t/2), u = t/2
      const double e = std::exp(-std::abs(t));
      return detail::finite_node(iv, t, e, 0.5);
    }
    case TransformKind::DeExpSinh: {
      const double x = std::exp(kHalfPi * std::sinh(t));
      double w = x * kHalfPi * std::cosh(t);
      if (!std::isfinite(w) || x < std::numeric_limits<double>::min()) w = 0.0;
      return {x, w, x, inf};
    }
    case TransformKind::DeSinhSinh: {
      const double u = kHalfPi * std::sinh(t);
      const double x = std::sinh(u);
      double w = std::cosh(u) * kHalfPi * std::cosh(t);
      if (!std::isfinite(w)) w = 0.0;
      return {x, w, inf, inf};
    }
  }
  return {0.0, 0.0, inf, inf};
}

// Decay constant c of |f(phi(t)) phi'(t)| ~ exp(-c e^|t|) (DE kinds) or
// exp(-c |t|) (SE). `endpoint_exponent` p describes the integrand: near a
// finite endpoint |f| ~ dist^(p-1), towards infinity |f| ~ |x|^(-1-p).
// p = 1 is a bounded integrand / 1/x^2 tail.
inline double decay_estimate(const Transform& tr, double endpoint_exponent = 1.0) {
  const double p = endpoint_exponent > 0.0 ? endpoint_exponent : 1.0;
  switch (tr.kind()) {
    case TransformKind::DeTanhSinh: return detail::kHalfPi * p;
    case TransformKind::SeTanh: return p;
    case TransformKind::DeExpSinh:
    case TransformKind::DeSinhSinh: return 0.5 * detail::kHalfPi * p;
  }
  return p;
}

// phi''(t) / phi'(t) for tanh-sinh; independent of the affine scaling.
inline double tanh_sinh_log_derivative(double t) {
  return std::tanh(t) -
         std::numbers::pi * std::cosh(t) * std::tanh(detail::kHalfPi * std::sinh(t));
}

// t = phi^{-1}(x) for tanh-sinh on (a,b); +-inf at the endpoints.
inline double tanh_sinh_inverse(const Interval& iv, double x) {
  const double da = x - iv.a;
  const double db = iv.b - x;
  if (da <= 0.0) return -std::numeric_limits<double>::infinity();
  if (db <= 0.0) return std::numeric_limits<double>::infinity();
  const double u = 0.5 * std::log(da / db);  // atanh of the standardized x
  return std::asinh(u / detail::kHalfPi);
}

}  // namespace dequad
