#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sharpconst/bari.hpp"
#include "sharpconst/errors.hpp"
#include "sharpconst/format.hpp"
#include "sharpconst/runner.hpp"

namespace sharpconst {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

ConvexBody random_body(Rng& rng, int m) {
  switch (uniform_int(rng, 0, 3)) {
    case 0: return ConvexBody::ball(m, uniform(rng, 0.5, 2.0));
    case 1: return ConvexBody::cube(m, uniform(rng, 0.5, 2.0));
    case 2: {
      std::vector<double> s(static_cast<std::size_t>(m));
      for (auto& v : s) v = uniform(rng, 0.5, 2.0);
      return ConvexBody::parallelepiped(s);
    }
    default: {
      std::vector<double> s(static_cast<std::size_t>(m));
      for (auto& v : s) v = uniform(rng, 0.5, 2.0);
      return ConvexBody::lp_ball(uniform(rng, 1.2, 4.0), s);
    }
  }
}

Polynomial random_polynomial(Rng& rng, int m, int n, bool complex_coeffs) {
  Polynomial P(m, n);
  for (const auto& beta : multi_indices_total_degree(m, n))
    P.set(beta, Complex(normal(rng), complex_coeffs ? normal(rng) : 0.0));
  return P;
}

double grid_sup(const Polynomial& P, const std::vector<Point>& grid) {
  double s = 0.0;
  for (const auto& y : grid) s = std::max(s, std::abs(eval(P, y)));
  return s;
}

SuiteResult finish(std::string name, std::vector<CheckResult> checks) {
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  return SuiteResult{std::move(name), ok, std::move(checks)};
}

// ||F + G||^q <= ||F||^q + ||G||^q, q = min(1, p), on random rules and functions.
SuiteResult suite_triangle(std::uint64_t seed) {
  Rng rng(seed ^ 0x7472690000000001ULL);
  constexpr int kTrials = 500;
  int failures = 0;
  for (int t = 0; t < kTrials; ++t) {
    const int m = uniform_int(rng, 1, 3);
    const auto V = random_body(rng, m);
    const auto rule = build_rule_body(V, 8, m == 1 ? 8 : 16);
    const int n = uniform_int(rng, 0, 6);
    const auto F = random_polynomial(rng, m, n, true);
    const auto G = random_polynomial(rng, m, n, true);
    const double p = t % 10 == 0 ? kInfinity : std::exp(uniform(rng, std::log(0.1), std::log(8.0)));
    const bool ok = quasinorm_triangle_check([&](std::span<const double> y) { return eval(F, y); },
                                             [&](std::span<const double> y) { return eval(G, y); }, rule, p);
    if (!ok) ++failures;
  }
  return finish("triangle", {{"quasinorm triangle", failures == 0,
                              std::to_string(failures) + " failures in " + std::to_string(kTrials) + " trials"}});
}

// sup_{aV*} |D^alpha P| <= (4 n^2 / (a w(V*)))^{|alpha|} sup_{aV*} |P|.
SuiteResult suite_markov(std::uint64_t seed) {
  Rng rng(seed ^ 0x6d61726b00000002ULL);
  constexpr int kTrials = 500;
  int failures = 0;
  double worst = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    const int m = uniform_int(rng, 1, 2);
    const int n = uniform_int(rng, 1, 8);
    const double a = t % 2 == 0 ? 1.0 : 3.0;
    const auto V = random_body(rng, m);
    const double w = width_polar(V, 256);
    const auto grid = sup_grid(polar_domain(V.scaled(1.0 / a)), 4 * n + 16, m == 1 ? 1 : 8 * n + 64);
    const auto P = random_polynomial(rng, m, n, t % 3 == 0);
    std::vector<int> alpha(static_cast<std::size_t>(m), 0);
    const int order = uniform_int(rng, 1, std::min(2, n));
    for (int k = 0; k < order; ++k) ++alpha[static_cast<std::size_t>(uniform_int(rng, 0, m - 1))];
    const double lhs = grid_sup(derivative(P, MultiIndex(alpha)), grid);
    const double bound = std::pow(4.0 * n * n / (a * w), order) * grid_sup(P, grid);
    worst = std::max(worst, lhs / bound);
    if (lhs > bound * (1.0 + 1e-9)) ++failures;
  }
  return finish("markov", {{"markov bound", failures == 0,
                            std::to_string(failures) + " failures, worst ratio " + format_double(worst)}});
}

SuiteResult suite_coefficient_bounds(std::uint64_t seed) {
  std::vector<CheckResult> checks;
  const auto violations = audit_coefficient_bounds(60);
  std::string detail = std::to_string(violations.size()) + " violations for n <= 60";
  if (!violations.empty())
    detail += ", first n=" + std::to_string(violations[0].n) + " k=" + std::to_string(violations[0].k) + " " +
              violations[0].relation;
  checks.push_back({"exact chebyshev audit", violations.empty(), detail});

  Rng rng(seed ^ 0x636f656600000003ULL);
  int hom_fail = 0;
  int vam_fail = 0;
  for (int t = 0; t < 1000; ++t) {
    const int m = uniform_int(rng, 1, 2);
    const int n = uniform_int(rng, 1, 8);
    const double a = uniform(rng, 0.5, 3.0);
    const auto V = random_body(rng, m);
    const auto P = random_polynomial(rng, m, n, t % 2 == 0);
    const auto grid = sup_grid(polar_domain(V.scaled(1.0 / a)), 4 * n + 16, m == 1 ? 1 : 8 * n + 64);
    const double sup = grid_sup(P, grid);
    Point y(static_cast<std::size_t>(m));
    for (auto& v : y) v = uniform(rng, -3.0, 3.0);
    if (!homogeneous_bound_check(P, V, a, y, uniform_int(rng, 0, n), sup)) ++hom_fail;

    // One variable on [-a, a]: |d_k| <= sharp bound.
    const auto Q = random_polynomial(rng, 1, n, false);
    std::vector<Point> line;
    for (int i = 0; i <= 64 * n; ++i) line.push_back({-a * std::cos(std::numbers::pi * i / (64.0 * n))});
    const double M = grid_sup(Q, line);
    for (int k = 0; k <= n; ++k) {
      const double dk = std::abs(Q.coeff(MultiIndex({k})));
      if (dk > vam_coefficient_bound(n, k, a, M) * (1.0 + 1e-9)) ++vam_fail;
    }
  }
  checks.push_back({"homogeneous part bound", hom_fail == 0, std::to_string(hom_fail) + " failures in 1000"});
  checks.push_back({"one-variable coefficient bound", vam_fail == 0, std::to_string(vam_fail) + " failures"});
  return finish("coefficient-bounds", std::move(checks));
}

// The normalized Bari ratio must not grow from n = 32 to n = 64 (5% slack).
SuiteResult suite_bari(std::uint64_t seed) {
  const double pi = std::numbers::pi;
  std::vector<CheckResult> checks;
  struct Family {
    std::string name;
    int m;
    double p;
  };
  const std::vector<Family> families = {{"random p=0.5", 1, 0.5}, {"fejer p=0.5", 1, 0.5}, {"fejer p=1", 1, 1.0},
                                        {"cos p=2", 1, 2.0},      {"fejer 2d p=1", 2, 1.0}};
  for (const auto& fam : families) {
    BariBoxes boxes;
    for (int j = 0; j < fam.m; ++j) {
      boxes.a.push_back(pi / 3);
      boxes.b.push_back(2 * pi / 3);
      boxes.a1.push_back(pi / 2);
      boxes.b1.push_back(pi / 2);
    }
    auto worst = [&](int n) {
      const int grid = fam.m == 1 ? 8 * n : 2 * n;
      double r = 0.0;
      if (fam.name.starts_with("random")) {
        for (int t = 0; t < 100; ++t)
          r = std::max(r, bari_inequality_check(EvenTrigPoly::random(fam.m, n, seed + 1000 * n + t), n, boxes, fam.p,
                                                grid));
      } else if (fam.name.starts_with("fejer")) {
        r = bari_inequality_check(EvenTrigPoly::fejer_peak(fam.m, n, boxes.a1), n, boxes, fam.p, grid);
      } else {
        EvenTrigPoly T(fam.m, n);
        std::vector<int> k(static_cast<std::size_t>(fam.m), 0);
        k[0] = n;
        T.coeff(k) = 1.0;
        r = bari_inequality_check(T, n, boxes, fam.p, grid);
      }
      return r;
    };
    const double r32 = worst(32);
    const double r64 = worst(64);
    const double growth = r64 / r32 - 1.0;
    checks.push_back({"bari " + fam.name, growth < 0.05,
                      "n=32 " + format_double(r32) + ", n=64 " + format_double(r64) + ", growth " +
                          format_double(growth)});
  }
  return finish("bari", std::move(checks));
}

// Nikolskii-type constants stay bounded: spread over n = 8..64 within 10%.
SuiteResult suite_nikolskii(std::uint64_t) {
  std::vector<CheckResult> checks;
  SolveOptions opts;
  opts.stability_check = false;
  auto spread_check = [&](const std::string& name, auto&& compute) {
    double lo = kInfinity, hi = 0.0;
    std::ostringstream values;
    for (int n : {8, 16, 32, 64}) {
      const double v = compute(n);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      values << (n == 8 ? "" : " ") << format_double(v);
    }
    const double spread = (hi - lo) / hi;
    checks.push_back({name, spread <= 0.10, "values " + values.str() + ", spread " + format_double(spread)});
  };
  spread_check("origin p=2", [&](int n) { return nikolskii_origin_constant(2.0, 1, n, 1.0, opts).value; });
  spread_check("origin p=4", [&](int n) { return nikolskii_origin_constant(4.0, 1, n, 1.0, opts).value; });
  spread_check("subdomain p=2", [&](int n) {
    return nikolskii_subdomain_constant(2.0, n, ConvexBody::cube(1, 1.0), 1.0, 0.5, opts).value;
  });
  return finish("nikolskii", std::move(checks));
}

// For real weights the real-coefficient optimum equals the complex one.
SuiteResult suite_real_complex(std::uint64_t seed) {
  Rng rng(seed ^ 0x7265636f00000006ULL);
  int failures = 0;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int m = uniform_int(rng, 1, 2);
    const auto V = random_body(rng, m);
    const int N = uniform_int(rng, 0, 2);
    const int n = uniform_int(rng, std::max(1, N), m == 1 ? 8 : 4);
    const double p = uniform(rng, 1.25, 6.0);
    DiffOperator D(m, N);
    for (const auto& alpha : multi_indices_of_order(m, N)) D.set(alpha, Complex(normal(rng), 0.0));
    SolveOptions real_opts;
    real_opts.stability_check = false;
    real_opts.real_coefficients = true;
    SolveOptions newton_opts;
    newton_opts.stability_check = false;
    newton_opts.complex_newton = true;
    const double vr = compute_M(p, D, n, V, real_opts).value;
    const double vc = compute_M(p, D, n, V, newton_opts).value;
    const double rel = std::abs(vr - vc) / std::max(vr, vc);
    worst = std::max(worst, rel);
    if (rel > 1e-6) ++failures;
  }
  return finish("real-complex", {{"real vs complex optimum", failures == 0,
                                  std::to_string(failures) + " failures in 20, worst " + format_double(worst)}});
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"triangle", "markov",    "coefficient-bounds",
                                                 "bari",     "nikolskii", "real-complex"};
  return names;
}

SuiteResult verify_suite(const std::string& name, std::uint64_t seed) {
  if (name == "triangle") return suite_triangle(seed);
  if (name == "markov") return suite_markov(seed);
  if (name == "coefficient-bounds") return suite_coefficient_bounds(seed);
  if (name == "bari") return suite_bari(seed);
  if (name == "nikolskii") return suite_nikolskii(seed);
  if (name == "real-complex") return suite_real_complex(seed);
  throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace sharpconst
