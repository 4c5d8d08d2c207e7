#pragma once

// Sinc collocation for y~'' + mu~ y~' + nu~ y~ = sigma~ on (a,b) with
// y~(a) = y~(b) = 0, after the tanh-sinh change of variables x = phi(t).
// In t the problem reads
//
//   y'' + mu(t) y' + nu(t) y = sigma(t)
//   mu    = phi' mu~(phi) - phi''/phi'
//   nu    = phi'^2 nu~(phi)
//   sigma = phi'^2 sigma~(phi)
//
// and y is expanded in shifted cardinal functions S(k,h), k = -n..n.
//
// Also hosts a Galerkin solver for the Fredholm equation (1 - lambda K) f = g
// on a piecewise-linear (hat) basis.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dequad/errors.hpp"
#include "dequad/linalg.hpp"
#include "dequad/quad.hpp"
#include "dequad/transforms.hpp"

namespace dequad::sinc {

using Coefficient = std::function<double(double)>;

struct BvpProblem {
  Coefficient mu_tilde;
  Coefficient nu_tilde;
  Coefficient sigma_tilde;
  double a = 0.0;
  double b = 1.0;
};

struct TransformedBvp {
  Coefficient mu;
  Coefficient nu;
  Coefficient sigma;
  Transform phi;
};

// sin(pi s) / (pi s) with s = t/h - k. Exactly 1 at t = kh and exactly 0 at
// the other grid points.
inline double sinc_basis(std::int64_t k, double h, double t) {
  if (!(h > 0.0)) throw std::invalid_argument("sinc_basis: h must be positive");
  const double s = t / h - static_cast<double>(k);
  const double z = std::numbers::pi * s;
  if (std::abs(z) < 1e-6) return 1.0 - z * z / 6.0;
  const double m = std::nearbyint(s);
  const double r = s - m;
  // t = jh rounded: t/h may miss j by a few ulps.
  if (std::abs(r) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t / h))) return 0.0;
  const double sign = std::fmod(std::abs(m), 2.0) == 0.0 ? 1.0 : -1.0;
  return sign * std::sin(std::numbers::pi * r) / z;
}

// h^p * d^p/dt^p S(k,h)(t) at t = jh, p = 0, 1, 2.
inline double sinc_delta0(std::int64_t j, std::int64_t k) { return j == k ? 1.0 : 0.0; }

inline double sinc_delta1(std::int64_t j, std::int64_t k) {
  if (j == k) return 0.0;
  const std::int64_t d = j - k;
  return (d % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(d);
}

inline double sinc_delta2(std::int64_t j, std::int64_t k) {
  if (j == k) return -std::numbers::pi * std::numbers::pi / 3.0;
  const std::int64_t d = j - k;
  const auto dd = static_cast<double>(d);
  return -2.0 * (d % 2 == 0 ? 1.0 : -1.0) / (dd * dd);
}

inline TransformedBvp transform_problem(const BvpProblem& p, const Transform& phi) {
  if (phi.kind() != TransformKind::DeTanhSinh)
    throw std::invalid_argument("transform_problem: the BVP solver uses the tanh-sinh map");
  // Where phi' has underflowed the scaled terms take their limit, 0.
  auto mu = [p, phi](double t) {
    const NodeWeight nw = node(phi, t);
    const double drift = nw.w == 0.0 ? 0.0 : nw.w * p.mu_tilde(nw.x);
    return drift - tanh_sinh_log_derivative(t);
  };
  auto nu = [p, phi](double t) {
    const NodeWeight nw = node(phi, t);
    return nw.w == 0.0 ? 0.0 : nw.w * nw.w * p.nu_tilde(nw.x);
  };
  auto sigma = [p, phi](double t) {
    const NodeWeight nw = node(phi, t);
    return nw.w == 0.0 ? 0.0 : nw.w * nw.w * p.sigma_tilde(nw.x);
  };
  return {mu, nu, sigma, phi};
}

struct LinearSystem {
  Matrix a;
  std::vector<double> rhs;
};

// Collocation at t_j = jh, j = -n..n; row j is
//   sum_k w_k [d2_jk / h^2 + mu(t_j) d1_jk / h + nu(t_j) d0_jk] = sigma(t_j)
inline LinearSystem assemble(const TransformedBvp& tp, std::int64_t n, double h) {
  if (n < 1) throw std::invalid_argument("assemble: n must be >= 1");
  if (!(h > 0.0)) throw std::invalid_argument("assemble: h must be positive");
  const auto size = static_cast<std::size_t>(2 * n + 1);
  LinearSystem sys{Matrix(size, size), std::vector<double>(size)};
  const double inv_h = 1.0 / h;
  const double inv_h2 = inv_h * inv_h;
  for (std::int64_t j = -n; j <= n; ++j) {
    const double t = static_cast<double>(j) * h;
    const double mu = tp.mu(t);
    const double nu = tp.nu(t);
    const auto row = static_cast<std::size_t>(j + n);
    for (std::int64_t k = -n; k <= n; ++k) {
      sys.a(row, static_cast<std::size_t>(k + n)) =
          sinc_delta2(j, k) * inv_h2 + mu * sinc_delta1(j, k) * inv_h + nu * sinc_delta0(j, k);
    }
    sys.rhs[row] = tp.sigma(t);
  }
  return sys;
}

struct SincSolution {
  std::vector<double> w;  // w[k + n], k = -n..n
  double h = 0.0;
  std::int64_t n = 0;
  Interval interval;

  std::int64_t size() const noexcept { return 2 * n + 1; }

  // y_N(t) = sum_k w_k S(k,h)(t)
  double at_t(double t) const {
    if (!std::isfinite(t)) return 0.0;
    double s = 0.0;
    for (std::int64_t k = -n; k <= n; ++k)
      s += w[static_cast<std::size_t>(k + n)] * sinc_basis(k, h, t);
    return s;
  }

  // y~_N(x) = y_N(phi^{-1}(x)); zero at and beyond the endpoints.
  double operator()(double x) const { return at_t(tanh_sinh_inverse(interval, x)); }
};

// Default mesh h = log(n) / n (log 2 for n = 1).
inline double default_mesh(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("default_mesh: n must be >= 1");
  return std::log(static_cast<double>(std::max<std::int64_t>(n, 2))) / static_cast<double>(n);
}

inline SincSolution solve_bvp(const BvpProblem& p, std::int64_t n,
                              std::optional<double> h = std::nullopt) {
  const Transform phi = Transform::tanh_sinh(p.a, p.b);
  const double mesh = h.value_or(default_mesh(n));
  LinearSystem sys = assemble(transform_problem(p, phi), n, mesh);
  std::vector<double> w = solve_dense(std::move(sys.a), std::move(sys.rhs));
  return {std::move(w), mesh, n, phi.interval()};
}

// ---------------------------------------------------------------------------
// Galerkin projection for (1 - lambda K) f = g.

// Piecewise-linear interpolation at n uniform nodes including both endpoints;
// n = 1 degenerates to the constant function through the midpoint.
class HatBasis {
 public:
  HatBasis(double a, double b, std::int64_t n) : a_(a), b_(b), n_(n) {
    if (n < 1) throw std::invalid_argument("HatBasis: n must be >= 1");
    if (!(a < b)) throw std::invalid_argument("HatBasis: need a < b");
  }

  std::int64_t size() const noexcept { return n_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double step() const noexcept { return n_ == 1 ? b_ - a_ : (b_ - a_) / static_cast<double>(n_ - 1); }

  double node(std::int64_t i) const {
    if (n_ == 1) return 0.5 * (a_ + b_);
    if (i == n_ - 1) return b_;
    return a_ + static_cast<double>(i) * step();
  }

  // Support [lo, hi] of psi_k, clipped to [a, b].
  std::pair<double, double> support(std::int64_t k) const {
    if (n_ == 1) return {a_, b_};
    return {k == 0 ? a_ : node(k - 1), k == n_ - 1 ? b_ : node(k + 1)};
  }

  double psi(std::int64_t k, double x) const {
    if (n_ == 1) return (x >= a_ && x <= b_) ? 1.0 : 0.0;
    const double r = std::abs(index_of(x) - static_cast<double>(k));
    return r < 1.0 ? 1.0 - r : 0.0;
  }

  // sum_k c_k psi_k(x)
  double interpolate(const std::vector<double>& c, double x) const {
    if (n_ == 1) return c[0];
    const double s = std::clamp(index_of(x), 0.0, static_cast<double>(n_ - 1));
    const auto i = std::min<std::int64_t>(static_cast<std::int64_t>(s), n_ - 2);
    const double frac = s - static_cast<double>(i);
    return (1.0 - frac) * c[static_cast<std::size_t>(i)] + frac * c[static_cast<std::size_t>(i + 1)];
  }

  // Coefficients of P_n f: the nodal values.
  template <class F>
  std::vector<double> project(F&& f) const {
    std::vector<double> c(static_cast<std::size_t>(n_));
    for (std::int64_t i = 0; i < n_; ++i) c[static_cast<std::size_t>(i)] = f(node(i));
    return c;
  }

 private:
  // (x - a) / step, snapped onto the node index when rounding missed it.
  double index_of(double x) const {
    const double s = (x - a_) / step();
    const double m = std::nearbyint(s);
    return std::abs(s - m) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(s)) ? m : s;
  }

  double a_;
  double b_;
  std::int64_t n_;
};

struct GalerkinSolution {
  HatBasis basis;
  std::vector<double> c;

  double operator()(double x) const { return basis.interpolate(c, x); }
};

using Kernel = std::function<double(double, double)>;

// (K psi_k)(x) = int_a^b K(x,y) psi_k(y) dy, integrated piecewise over the
// smooth pieces of psi_k.
inline double apply_kernel_to_hat(const Kernel& kernel, const HatBasis& basis, std::int64_t k,
                                  double x, double tol) {
  QuadratureConfig cfg;
  cfg.tol = tol;
  cfg.max_level = 12;
  const auto [lo, hi] = basis.support(k);
  const double mid = basis.size() == 1 ? hi : basis.node(k);
  double total = 0.0;
  for (const auto& [p, q] : {std::pair{lo, mid}, std::pair{mid, hi}}) {
    if (!(p < q)) continue;
    total += integrate([&](double y) { return kernel(x, y) * basis.psi(k, y); },
                       Transform::tanh_sinh(p, q), cfg)
                 .value;
  }
  return total;
}

// Solves c_i - lambda sum_k c_k C_ki = d_i with C_ki = (K psi_k)(x_i) and
// d_i = g(x_i).
inline GalerkinSolution galerkin_fredholm(const Kernel& kernel, const Coefficient& g, double lambda,
                                          std::int64_t n, double a, double b,
                                          double inner_tol = 1e-10) {
  HatBasis basis(a, b, n);
  const auto size = static_cast<std::size_t>(n);
  Matrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = 1.0;
  if (lambda != 0.0) {
    for (std::int64_t k = 0; k < n; ++k)
      for (std::int64_t i = 0; i < n; ++i)
        m(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) -=
            lambda * apply_kernel_to_hat(kernel, basis, k, basis.node(i), inner_tol);
  }
  std::vector<double> d = basis.project(g);
  std::vector<double> c = solve_dense(std::move(m), std::move(d));
  return {basis, std::move(c)};
}

}  // namespace dequad::sinc
