#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sharpconst/bari.hpp"
#include "sharpconst/errors.hpp"
#include "sharpconst/quadrature.hpp"

using namespace sharpconst;
using Complex = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("rule masses") {
  CHECK(build_rule_body(ConvexBody::ball(2, 1.0), 16, 64).mass() == doctest::Approx(kPi).epsilon(1e-6));
  CHECK(build_rule_body(ConvexBody::cube(2, 1.0), 16, 64).mass() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(build_rule_body(ConvexBody::cube(3, 1.0), 16, 32).mass() == doctest::Approx(8.0 / 6.0).epsilon(1e-6));
  CHECK(build_rule_body(ConvexBody::ball(3, 1.0), 16, 32).mass() == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-6));
  CHECK(build_rule_body(ConvexBody::cube(1, 1.0), 8, 1).mass() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(build_rule_torus(2, 8).mass() == doctest::Approx(4.0 * kPi * kPi));
}

TEST_CASE("Lp quasinorms") {
  const auto rule = build_rule_body(ConvexBody::cube(1, 1.0), 16, 1);
  CHECK(lp_quasinorm([](std::span<const double>) { return Complex(1.0); }, rule, 2.0).value ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(lp_quasinorm([](std::span<const double> x) { return Complex(x[0]); }, rule, 2.0).value ==
        doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(lp_quasinorm([](std::span<const double>) { return Complex(0.0, -3.0); }, rule, kInf).value ==
        doctest::Approx(3.0));
  // ||x^4||_{1/2} = (integral of x^2)^2.
  CHECK(lp_quasinorm([](std::span<const double> x) { return Complex(std::pow(x[0], 4)); }, rule, 0.5).value ==
        doctest::Approx(4.0 / 9.0));
}

TEST_CASE("non-finite integrands are reported") {
  const auto rule = build_rule_body(ConvexBody::cube(1, 1.0), 8, 1);
  CHECK_THROWS_AS(lp_quasinorm([](std::span<const double>) { return Complex(NAN); }, rule, 2.0), EvaluationError);
}

TEST_CASE("quasinorm triangle inequality") {
  const auto rule = build_rule_body(ConvexBody::cube(1, 1.0), 16, 1);
  const PointFunction zero = [](std::span<const double>) { return Complex(0.0); };
  const PointFunction F = [](std::span<const double> x) { return Complex(1.0 + x[0] - 3 * x[0] * x[0]); };
  const PointFunction negF = [&](std::span<const double> x) { return -F(x); };
  CHECK(quasinorm_triangle_check(F, zero, rule, 0.5));
  CHECK(quasinorm_triangle_check(F, negF, rule, 2.0));

  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int t = 0; t < 500; ++t) {
    const double a0 = g(rng), a1 = g(rng), a2 = g(rng), b0 = g(rng), b1 = g(rng), b2 = g(rng);
    const PointFunction P = [=](std::span<const double> x) { return Complex(a0 + a1 * x[0] + a2 * x[0] * x[0]); };
    const PointFunction Q = [=](std::span<const double> x) { return Complex(b0 + b1 * x[0] + b2 * x[0] * x[0]); };
    CHECK(quasinorm_triangle_check(P, Q, rule, 0.5));
  }
}

TEST_CASE("sup grids include origin and boundary") {
  const auto grid = sup_grid(polar_domain(ConvexBody::cube(2, 1.0)), 9, 32);
  bool origin = false, vertex = false;
  for (const auto& y : grid) {
    origin = origin || (std::abs(y[0]) < 1e-14 && std::abs(y[1]) < 1e-14);
    vertex = vertex || (std::abs(y[0] - 1.0) < 1e-12 && std::abs(y[1]) < 1e-12);
  }
  CHECK(origin);
  CHECK(vertex);
}

TEST_CASE("monte carlo volume agrees with the rule") {
  const auto domain = polar_domain(ConvexBody::ball(2, 1.0));
  const auto est = monte_carlo_volume(domain, 200000, 3);
  CHECK(std::abs(est.value - kPi) <= 5.0 * est.standard_error);
}

TEST_CASE("cosine substitution") {
  const std::vector<double> a{kPi / 3}, b{2 * kPi / 3};
  CHECK(bari_substitution(a, a, b)[0] == doctest::Approx(0.0));
  CHECK(bari_substitution(b, a, b)[0] == doctest::Approx(kPi));
  const std::vector<double> mid{kPi / 2};
  CHECK(bari_substitution(mid, a, b)[0] == doctest::Approx(kPi / 2));
  const std::vector<double> u{1.3};
  CHECK(bari_inverse(bari_substitution(u, a, b), a, b)[0] == doctest::Approx(1.3));
}

TEST_CASE("bari ratio families") {
  BariBoxes boxes{{kPi / 3}, {2 * kPi / 3}, {kPi / 2}, {kPi / 2}};
  // T = 1: ratio = (b - a)^{-1/p} n^{-m/p}.
  for (int n : {4, 16, 64}) {
    EvenTrigPoly one(1, n);
    const int zero[1] = {0};
    one.coeff(zero) = 1.0;
    CHECK(bari_inequality_check(one, n, boxes, 2.0, 256) ==
          doctest::Approx(std::pow(kPi / 3, -0.5) / std::sqrt(n)).epsilon(1e-10));
  }
  double worst = 0.0;
  for (int n = 4; n <= 64; n += 4) {
    EvenTrigPoly T(1, n);
    const int k[1] = {n};
    T.coeff(k) = 1.0;
    worst = std::max(worst, bari_inequality_check(T, n, boxes, 2.0, 8 * n));
  }
  CHECK(worst < 1.0);
}

TEST_CASE("ball rules integrate low-degree moments") {
  // integral over the unit disk of x^{2a} y^{2b} = 2 Gamma(a+1/2) Gamma(b+1/2) / ((2a+2b+2) Gamma(a+b+1)).
  const auto rule = build_rule_body(ConvexBody::ball(2, 1.0), 16, 64);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * std::pow(rule.nodes[i][0], 2 * a) * std::pow(rule.nodes[i][1], 2 * b);
      const double exact =
          2.0 * std::tgamma(a + 0.5) * std::tgamma(b + 0.5) / ((2.0 * a + 2.0 * b + 2.0) * std::tgamma(a + b + 1.0));
      CHECK(sum == doctest::Approx(exact).epsilon(1e-8));
    }
  const auto line = build_rule_body(ConvexBody::cube(1, 1.0), 8, 1);
  double odd = 0.0;
  for (std::size_t i = 0; i < line.size(); ++i) odd += line.weights[i] * std::pow(line.nodes[i][0], 5);
  CHECK(std::abs(odd) < 1e-15);
}

TEST_CASE("norms grow with the domain") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const auto V = ConvexBody::ball(2, 1.0);
  const auto small = build_rule_body(V.scaled(2.0), 16, 64);  // polar radius 1/2
  const auto large = build_rule_body(V, 16, 64);
  for (int t = 0; t < 100; ++t) {
    const double c0 = g(rng), c1 = g(rng), c2 = g(rng), c3 = g(rng);
    const PointFunction F = [=](std::span<const double> y) {
      return Complex(c0 + c1 * y[0] + c2 * y[1] * y[1] + c3 * y[0] * y[1]);
    };
    for (double p : {0.5, 1.0, 3.0}) CHECK(lp_quasinorm(F, small, p).value <= lp_quasinorm(F, large, p).value + 1e-12);
  }
}

TEST_CASE("large p approaches the max") {
  const auto rule = build_rule_body(ConvexBody::cube(1, 1.0), 64, 1);
  // Holds for slowly varying |F|; a sharp peak of width w costs a factor w^{1/64}.
  const PointFunction F = [](std::span<const double> x) { return Complex(1.0 + 0.02 * x[0] - 0.05 * x[0] * x[0]); };
  const double inf = lp_quasinorm(F, rule, kInf).value;
  CHECK(lp_quasinorm(F, rule, 64.0).value == doctest::Approx(inf).epsilon(0.02));
}

TEST_CASE("cosine substitution is increasing") {
  const std::vector<double> a{0.2, kPi / 3}, b{1.1, 3.0};
  double prev0 = -1.0, prev1 = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double s = i / 200.0;
    const std::vector<double> u{a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])};
    const auto t = bari_substitution(u, a, b);
    if (i > 0) {
      CHECK(t[0] > prev0);
      CHECK(t[1] > prev1);
    }
    prev0 = t[0];
    prev1 = t[1];
  }
}
