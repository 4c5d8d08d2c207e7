#pragma once

// Benchmark suite for the four classic test integrals
//
//   I1 = int_0^1  x^(-1/4) log(1/x) dx
//   I2 = int_0^1  1 / (16 (x - pi/4)^2 + 1/16) dx
//   I3 = int_0^pi cos(64 sin x) dx
//   I4 = int_0^1  exp(20 (x - 1)) sin(256 x) dx
//
// with reference values from closed forms, plus CSV/JSON emission.

#include <charconv>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dequad/errors.hpp"
#include "dequad/expr.hpp"
#include "dequad/quad.hpp"

namespace dequad::bench {

// Bessel J0. Ascending series up to |z| = 12, Hankel asymptotic expansion
// beyond.
inline double bessel_j0(double z) {
  const long double x = std::abs(static_cast<long double>(z));
  if (x <= 12.0L) {
    const long double q = x * x / 4.0L;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
      term *= -q / (static_cast<long double>(k) * static_cast<long double>(k));
      sum += term;
      if (std::abs(term) < 1e-22L * std::abs(sum) && k > 2 * x) break;
    }
    return static_cast<double>(sum);
  }
  // a_k = a_{k-1} (-(2k-1)^2) / (8k); P, Q alternate in sign over even/odd k.
  long double p = 0.0L, q = 0.0L;
  long double a = 1.0L, zpow = 1.0L, prev = INFINITY;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      const long double m = 2.0L * k - 1.0L;
      a *= -(m * m) / (8.0L * k);
      zpow *= x;
    }
    const long double term = a / zpow;
    if (std::abs(term) > prev) break;  // asymptotic series starts diverging
    prev = std::abs(term);
    const long double sign = ((k / 2) % 2 == 0) ? 1.0L : -1.0L;
    if (k % 2 == 0) p += sign * term;
    else q += sign * term;
    if (prev < 1e-24L) break;
  }
  const long double chi = x - std::numbers::pi_v<long double> / 4.0L;
  const long double amp = std::sqrt(2.0L / (std::numbers::pi_v<long double> * x));
  return static_cast<double>(amp * (p * std::cos(chi) - q * std::sin(chi)));
}

inline std::map<std::string, double> reference_oracles() {
  constexpr double pi = std::numbers::pi;
  std::map<std::string, double> ref;
  // int_0^1 x^(p-1) ln(1/x) dx = 1/p^2, p = 3/4
  ref["I1"] = 16.0 / 9.0;
  // antiderivative atan(16 (x - pi/4))
  ref["I2"] = std::atan(16.0 * (1.0 - pi / 4.0)) + std::atan(4.0 * pi);
  // int_0^pi cos(z sin x) dx = pi J0(z)
  ref["I3"] = pi * bessel_j0(64.0);
  // Im[(e^{256i} - e^{-20}) / (20 + 256i)]
  const std::complex<double> num = std::polar(1.0, 256.0) - std::exp(-20.0);
  ref["I4"] = (num / std::complex<double>(20.0, 256.0)).imag();
  return ref;
}

struct BenchCase {
  std::string id;
  std::string integrand_src;
  double a;
  double b;
  double reference;
  std::optional<std::int64_t> reference_n;  // evaluation count quoted for comparison
};

inline std::vector<BenchCase> default_cases() {
  const auto ref = reference_oracles();
  return {
      {"I1", "x^(-1/4)*log(1/x)", 0.0, 1.0, ref.at("I1"), 25},
      {"I2", "1/(16*(x-pi/4)^2+1/16)", 0.0, 1.0, ref.at("I2"), 387},
      {"I3", "cos(64*sin(x))", 0.0, std::numbers::pi, ref.at("I3"), 387},
      {"I4", "exp(20*(x-1))*sin(256*x)", 0.0, 1.0, ref.at("I4"), 259},
  };
}

enum class Method { De, Se };

inline const char* to_string(Method m) { return m == Method::De ? "de" : "se"; }

struct BenchRow {
  std::string id;
  Method method = Method::De;
  std::int64_t n = 0;
  double h = 0.0;
  double value = 0.0;
  double reference = 0.0;
  bool converged = false;
  std::int64_t wall_ns = 0;

  double abs_error() const { return std::abs(value - reference); }
};

struct BenchOptions {
  double tol = 1e-8;
  std::set<Method> methods{Method::De, Method::Se};
  int max_level = 10;
};

inline BenchRow run_case(const BenchCase& bc, Method m, double tol, int max_level) {
  const expr::Ast f = expr::parse(bc.integrand_src);
  QuadratureConfig cfg;
  cfg.tol = tol;
  cfg.max_level = max_level;
  const auto start = std::chrono::steady_clock::now();
  QuadratureResult r;
  try {
    r = m == Method::De ? integrate(f, Transform::tanh_sinh(bc.a, bc.b), cfg)
                        : integrate_se(f, Interval::finite(bc.a, bc.b), cfg);
  } catch (const NonFiniteSample& e) {
    throw Error("case " + bc.id + " (" + to_string(m) + "): " + e.what());
  }
  const auto stop = std::chrono::steady_clock::now();
  BenchRow row;
  row.id = bc.id;
  row.method = m;
  row.n = r.n_evals;
  row.h = r.h;
  row.value = r.value;
  row.reference = bc.reference;
  row.converged = r.converged;
  row.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
  return row;
}

// Rows ordered by case, then de before se.
inline std::vector<BenchRow> run_bench(const std::vector<BenchCase>& cases, const BenchOptions& opt) {
  if (!(opt.tol >= 1e-14 && opt.tol <= 1e-2))
    throw std::invalid_argument("bench tolerance must lie in [1e-14, 1e-2]");
  std::vector<BenchRow> rows;
  for (const auto& bc : cases)
    for (Method m : {Method::De, Method::Se})
      if (opt.methods.contains(m)) rows.push_back(run_case(bc, m, opt.tol, opt.max_level));
  return rows;
}

inline std::vector<BenchRow> run_bench(const BenchOptions& opt) { return run_bench(default_cases(), opt); }

// ---------------------------------------------------------------------------
// Emission

enum class Format { Csv, Json };

inline constexpr const char* kCsvHeader = "id,method,N,h,value,abs_error,converged,wall_ns";

// %.17g
inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline nlohmann::json to_json(const BenchRow& r) {
  return {{"id", r.id},        {"method", to_string(r.method)}, {"N", r.n},
          {"h", r.h},          {"value", r.value},              {"abs_error", r.abs_error()},
          {"converged", r.converged}, {"wall_ns", r.wall_ns}};
}

inline void emit(const std::vector<BenchRow>& rows, Format fmt, std::ostream& out) {
  if (fmt == Format::Csv) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
      out << r.id << ',' << to_string(r.method) << ',' << r.n << ',' << format_real(r.h) << ','
          << format_real(r.value) << ',' << format_real(r.abs_error()) << ','
          << (r.converged ? "true" : "false") << ',' << r.wall_ns << '\n';
    }
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
  }
  if (!out) throw IoError("failed to write benchmark output");
}

inline void emit(const std::vector<BenchRow>& rows, Format fmt, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  emit(rows, fmt, file);
}

}  // namespace dequad::bench
