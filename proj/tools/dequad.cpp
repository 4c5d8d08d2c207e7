// dequad: command-line front end for the quadrature library.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dequad/dequad.hpp"

using namespace dequad;

namespace {

using bench::format_real;

// Accepts inf, +inf, -inf besides ordinary numbers.
double parse_bound(const std::string& s) {
  if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  if (s == "-inf" || s == "-infinity") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

int max_level_override(int requested) {
  if (const char* env = std::getenv("DEQUAD_MAX_LEVEL"); env && *env) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("DEQUAD_MAX_LEVEL is not an integer: '") + env + "'");
  }
  return requested;
}

struct IntegrateArgs {
  std::string expr;
  std::string a, b;
  std::string transform = "de";
  double tol = 1e-10;
  int max_levels = 10;
  bool json = false;
};

int run_integrate(const IntegrateArgs& args) {
  const expr::Ast f = expr::parse(args.expr);
  const double a = parse_bound(args.a);
  const double b = parse_bound(args.b);
  if (!(a < b)) throw std::invalid_argument("need a < b");
  QuadratureConfig cfg;
  cfg.tol = args.tol;
  cfg.max_level = max_level_override(args.max_levels);

  QuadratureResult r;
  TransformKind kind;
  const bool fa = std::isfinite(a), fb = std::isfinite(b);
  if (fa && fb) {
    if (args.transform == "se") {
      kind = TransformKind::SeTanh;
      r = integrate_se(f, Interval::finite(a, b), cfg);
    } else {
      kind = TransformKind::DeTanhSinh;
      r = integrate(f, Transform::tanh_sinh(a, b), cfg);
    }
  } else {
    if (args.transform == "se") throw std::invalid_argument("the se transform needs a finite interval");
    if (fa) {
      kind = TransformKind::DeExpSinh;
      r = integrate([&](double u) { return f(a + u); }, Transform::exp_sinh(), cfg);
    } else if (fb) {
      kind = TransformKind::DeExpSinh;
      r = integrate([&](double u) { return f(b - u); }, Transform::exp_sinh(), cfg);
    } else {
      kind = TransformKind::DeSinhSinh;
      r = integrate(f, Transform::sinh_sinh(), cfg);
    }
  }

  if (args.json) {
    const nlohmann::json j = {{"value", r.value},       {"err_estimate", r.err_estimate}, {"h", r.h},
                              {"n_minus", r.n_minus},   {"n_plus", r.n_plus},             {"n_evals", r.n_evals},
                              {"converged", r.converged}, {"transform", to_string(kind)}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "value=" << format_real(r.value) << '\n'
              << "err_estimate=" << format_real(r.err_estimate) << '\n'
              << "h=" << format_real(r.h) << '\n'
              << "n_minus=" << r.n_minus << '\n'
              << "n_plus=" << r.n_plus << '\n'
              << "n_evals=" << r.n_evals << '\n'
              << "transform=" << to_string(kind) << '\n'
              << "converged=" << (r.converged ? "true" : "false") << '\n';
  }
  return r.converged ? 0 : 1;
}

struct BenchArgs {
  double tol = 1e-8;
  std::string methods = "de,se";
  std::string out;
  std::string format = "csv";
  int max_levels = 10;
};

int run_bench_cmd(const BenchArgs& args) {
  bench::BenchOptions opt;
  opt.tol = args.tol;
  opt.max_level = max_level_override(args.max_levels);
  opt.methods.clear();
  std::stringstream ss(args.methods);
  for (std::string m; std::getline(ss, m, ',');) {
    if (m == "de") opt.methods.insert(bench::Method::De);
    else if (m == "se") opt.methods.insert(bench::Method::Se);
    else throw std::invalid_argument("unknown method '" + m + "'");
  }
  if (opt.methods.empty()) throw std::invalid_argument("no methods requested");
  const bench::Format fmt = args.format == "json" ? bench::Format::Json : bench::Format::Csv;

  const auto cases = bench::default_cases();
  const auto rows = bench::run_bench(cases, opt);
  if (args.out.empty()) bench::emit(rows, fmt, std::cout);
  else bench::emit(rows, fmt, args.out);

  // Reference evaluation counts, for comparison only.
  bool all = true;
  for (const auto& r : rows) {
    all = all && r.converged;
    for (const auto& c : cases)
      if (c.id == r.id && c.reference_n)
        std::cerr << r.id << ' ' << bench::to_string(r.method) << ": N=" << r.n << " (reference N=" << *c.reference_n
                  << ")\n";
  }
  return all ? 0 : 1;
}

struct BvpArgs {
  std::string mu, nu, sigma;
  double a = 0.0, b = 1.0;
  std::int64_t n = 16;
  std::optional<double> h;
  int samples = 101;
};

int run_bvp(const BvpArgs& args) {
  const expr::Ast mu = expr::parse(args.mu);
  const expr::Ast nu = expr::parse(args.nu);
  const expr::Ast sigma = expr::parse(args.sigma);
  if (args.samples < 2) throw std::invalid_argument("--samples must be at least 2");
  const sinc::BvpProblem p{mu, nu, sigma, args.a, args.b};
  const sinc::SincSolution s = sinc::solve_bvp(p, args.n, args.h);
  std::cout << "x,y\n";
  for (int i = 0; i < args.samples; ++i) {
    const double x =
        i == args.samples - 1 ? args.b : args.a + (args.b - args.a) * i / static_cast<double>(args.samples - 1);
    std::cout << format_real(x) << ',' << format_real(s(x)) << '\n';
  }
  return 0;
}

struct FourierArgs {
  std::string kind;
  std::string f1;
  double w = 1.0;
  double k = 6.0;
  double tol = 1e-8;
  int max_levels = 10;
};

int run_fourier(const FourierArgs& args) {
  const expr::Ast f1 = expr::parse(args.f1);
  fourier::FourierJob job;
  job.f1 = f1;
  job.kind = args.kind == "cos" ? fourier::Kind::Cos : fourier::Kind::Sin;
  job.params.K = args.k;
  job.params.w = args.w;
  job.tol = args.tol;
  job.max_level = max_level_override(args.max_levels);
  const fourier::FourierResult r = fourier::fourier_integrate(job);
  std::cout << "value=" << format_real(r.value) << '\n'
            << "err_estimate=" << format_real(r.err_estimate) << '\n'
            << "h=" << format_real(r.h) << '\n'
            << "M=" << format_real(r.M) << '\n'
            << "n_evals=" << r.n_evals << '\n'
            << "converged=" << (r.converged ? "true" : "false") << '\n';
  return r.converged ? 0 : 1;
}

struct BoundsArgs {
  double c = 1.0, c_se = 1.0, c_de = 1.0;
  std::int64_t scan_max = 1000000;
};

int run_bounds(const BoundsArgs& args) {
  const bounds::BoundParams p{args.c, args.c_se, args.c_de};
  const bounds::Crossover c = bounds::crossover(p);
  const std::int64_t bad = bounds::crossover_violations(p, args.scan_max);
  std::cout << "n0=" << c.n0 << '\n'
            << "violations=" << bad << '\n'
            << "scanned=" << args.scan_max << '\n'
            << "empirical=" << c.empirical << '\n';
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-exponential quadrature tools"};
  app.require_subcommand(1);

  IntegrateArgs ia;
  auto* integ = app.add_subcommand("integrate", "Integrate an expression in x over (a, b)");
  integ->add_option("--expr", ia.expr, "Integrand")->required();
  integ->add_option("--a", ia.a, "Lower limit (number or -inf)")->required();
  integ->add_option("--b", ia.b, "Upper limit (number or inf)")->required();
  integ->add_option("--transform", ia.transform, "de or se")->check(CLI::IsMember({"de", "se"}));
  integ->add_option("--tol", ia.tol, "Absolute tolerance");
  integ->add_option("--max-levels", ia.max_levels, "Maximum halving levels");
  integ->add_flag("--json", ia.json, "Print JSON");

  BenchArgs ba;
  auto* bnch = app.add_subcommand("bench", "Run the benchmark integrals");
  bnch->add_option("--tol", ba.tol, "Absolute tolerance");
  bnch->add_option("--methods", ba.methods, "Comma-separated subset of de,se");
  bnch->add_option("--out", ba.out, "Output file (default stdout)");
  bnch->add_option("--format", ba.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bnch->add_option("--max-levels", ba.max_levels, "Maximum halving levels");

  BvpArgs va;
  auto* bvp = app.add_subcommand("bvp", "Solve y'' + mu y' + nu y = sigma, y(a) = y(b) = 0");
  bvp->set_help_flag("--help", "Print this help message and exit");
  bvp->add_option("--mu", va.mu, "Coefficient mu(x)")->required();
  bvp->add_option("--nu", va.nu, "Coefficient nu(x)")->required();
  bvp->add_option("--sigma", va.sigma, "Right-hand side sigma(x)")->required();
  bvp->add_option("--a", va.a, "Left endpoint")->required();
  bvp->add_option("--b", va.b, "Right endpoint")->required();
  bvp->add_option("--n", va.n, "Basis half-width (N = 2n + 1)")->required()->check(CLI::PositiveNumber);
  bvp->add_option("--h", va.h, "Mesh size (default log(n)/n)");
  bvp->add_option("--samples", va.samples, "Number of output samples");

  FourierArgs fa;
  auto* four = app.add_subcommand("fourier", "Integrate f1(x) sin(w x) or f1(x) cos(w x) over (0, inf)");
  four->add_option("--kind", fa.kind, "sin or cos")->required()->check(CLI::IsMember({"sin", "cos"}));
  four->add_option("--f1", fa.f1, "Non-oscillatory factor")->required();
  four->add_option("--w", fa.w, "Frequency")->required();
  four->add_option("--K", fa.k, "Transformation parameter");
  four->add_option("--tol", fa.tol, "Absolute tolerance");
  four->add_option("--max-levels", fa.max_levels, "Maximum halving levels");

  BoundsArgs oa;
  auto* bnds = app.add_subcommand("bounds", "Report the DE/SE bound crossover");
  bnds->add_option("--c", oa.c, "Exponent constant")->required();
  bnds->add_option("--c-se", oa.c_se, "SE prefactor")->required();
  bnds->add_option("--c-de", oa.c_de, "DE prefactor")->required();
  bnds->add_option("--scan-max", oa.scan_max, "Scan span beyond n0")->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*integ) return run_integrate(ia);
    if (*bnch) return run_bench_cmd(ba);
    if (*bvp) return run_bvp(va);
    if (*four) return run_fourier(fa);
    if (*bnds) return run_bounds(oa);
  } catch (const expr::SyntaxError& e) {
    std::cerr << "dequad: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dequad: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
