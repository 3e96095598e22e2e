#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sharpconst/entire_probe.hpp"
#include "sharpconst/errors.hpp"

using namespace sharpconst;

namespace {

constexpr double kPi = std::numbers::pi;

double at(const EntireSample& f, double x) {
  const double p[1] = {x};
  return f.value(p).real();
}

DiffOperator d_dx(int k) { return DiffOperator::partial(MultiIndex({k})); }

}  // namespace

TEST_CASE("sample values") {
  const auto sinc = EntireSample::sinc_product({1.0}, 2);
  CHECK(at(sinc, 0.0) == doctest::Approx(1.0));
  CHECK(at(sinc, 2.0) == doctest::Approx(std::pow(std::sin(1.0), 2)));

  const auto body = EntireSample::body_fourier(ConvexBody::cube(1, 1.0));
  CHECK(at(body, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
  for (double x : {0.3, 1.7, 5.0, 12.5}) CHECK(at(body, x) == doctest::Approx(2.0 * std::sin(x) / x).epsilon(1e-12));

  const double x[1] = {0.9};
  const double expect = 2.0 * (0.9 * std::cos(0.9) - std::sin(0.9)) / (0.81);
  CHECK(body.derivative(MultiIndex({1}), x).real() == doctest::Approx(expect).epsilon(1e-12));

  const auto wave = EntireSample::plane_wave({1.0}, kPi / 2);
  CHECK(at(wave, 0.7) == doctest::Approx(std::sin(0.7)));
  CHECK(EntireSample::constant(2).dimension() == 2);
}

TEST_CASE("sinc derivatives near the removable singularity") {
  const auto sinc = EntireSample::sinc_product({1.0}, 2);
  // f = (sin(x/2)/(x/2))^2, f''(0) = -1/6.
  const double zero[1] = {0.0};
  CHECK(sinc.derivative(MultiIndex({2}), zero).real() == doctest::Approx(-1.0 / 6.0).epsilon(1e-10));
  const double tiny[1] = {1e-7};
  CHECK(sinc.derivative(MultiIndex({1}), tiny).real() == doctest::Approx(-1e-7 / 6.0).epsilon(1e-6));
}

TEST_CASE("norms") {
  const auto sinc = EntireSample::sinc_product({1.0}, 2);
  CHECK(sinc.in_lp(1.0));
  CHECK_FALSE(sinc.in_lp(0.5));
  CHECK(*sinc.known_norm(1.0) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(*sinc.known_norm(kInfinity) == doctest::Approx(1.0));
  CHECK(sinc_power_integral(2) == doctest::Approx(kPi));
  CHECK(sinc_power_integral(4) == doctest::Approx(2.0 * kPi / 3.0));

  const auto bound = sinc.norm_upper_bound(1.0, 2000.0);
  CHECK(bound.value >= 2.0 * kPi);
  CHECK(bound.value <= 2.0 * kPi * 1.001);

  const auto body = EntireSample::body_fourier(ConvexBody::cube(1, 1.0));
  CHECK(*body.known_norm(2.0) == doctest::Approx(std::sqrt(4.0 * kPi)).epsilon(1e-12));
  CHECK_FALSE(EntireSample::plane_wave({1.0}).in_lp(2.0));
  CHECK_THROWS_AS(EntireSample::plane_wave({1.0}).norm_upper_bound(2.0, 10.0), InputError);
}

TEST_CASE("ratio lower bounds") {
  const auto sinc = EntireSample::sinc_product({1.0}, 2);
  const auto lb = ratio_lower_bound_E(sinc, DiffOperator::identity(1), 1.0, 50.0, 2001);
  CHECK(lb.value == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-9));
  CHECK(lb.norm_source == "closed-form");

  const auto sine = EntireSample::plane_wave({1.0}, kPi / 2);
  CHECK(ratio_lower_bound_E(sine, d_dx(1), kInfinity, 20.0, 2001).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ratio_lower_bound_E(EntireSample::constant(1), DiffOperator::identity(1), kInfinity, 5.0, 11).value ==
        doctest::Approx(1.0));
}

TEST_CASE("Bernstein and Nikolskii ratios") {
  const auto sine = EntireSample::plane_wave({1.0}, kPi / 2);
  CHECK(bernstein_nikolskii_check(sine, MultiIndex({1}), kInfinity, 20.0, 2001).derivative_ratio ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(bernstein_nikolskii_check(EntireSample::constant(1), MultiIndex({1}), kInfinity, 5.0, 11).derivative_ratio ==
        0.0);
  const auto body = EntireSample::body_fourier(ConvexBody::cube(1, 1.0));
  const auto r = bernstein_nikolskii_check(body, MultiIndex({1}), 2.0, 40.0, 4001);
  CHECK(r.derivative_ratio <= 1.0 + 1e-9);
  CHECK(r.derivative_ratio == doctest::Approx(0.436).epsilon(2e-3));
  CHECK(r.nikolskii_ratio == doctest::Approx(2.0 / std::sqrt(4.0 * kPi)).epsilon(1e-9));
}

TEST_CASE("polynomial approximation decay") {
  const auto sine = EntireSample::plane_wave({1.0}, kPi / 2);
  const auto table = approx_decay_1d(sine, 0.5, 24);
  for (const auto& e : table) {
    if (e.k == 12) CHECK(e.error == doctest::Approx(2.902e-4).epsilon(1e-2));
    if (e.k == 24) CHECK(e.error < 1e-6);
  }
  CHECK(log_decay_slope(table) < 0.0);

  for (const auto& e : approx_decay_1d(EntireSample::constant(1), 0.5, 10)) CHECK(e.error < 1e-14);

  const auto body = approx_decay_1d(EntireSample::body_fourier(ConvexBody::cube(1, 1.0)), 0.5, 24);
  double e12 = 0.0, e24 = 0.0;
  for (const auto& e : body) {
    if (e.k == 12) e12 = e.error;
    if (e.k == 24) e24 = e.error;
  }
  CHECK(e24 < e12 * 3e-3);
}

TEST_CASE("extraction for p = inf, N = 1 approaches sin") {
  SolveOptions o;
  o.stability_check = false;
  const auto rep = extremal_extraction(kInfinity, d_dx(1), ConvexBody::cube(1, 1.0), {5, 9, 13, 21, 41}, o);
  REQUIRE(rep.entries.size() == 5);
  for (const auto& e : rep.entries) CHECK(e.normalization_residual < 1e-10);
  double err = 0.0;
  for (std::size_t i = 0; i < rep.grid.size(); ++i)
    err = std::max(err, std::abs(rep.samples[i].real() - std::sin(rep.grid[i][0])));
  CHECK(err <= 0.05);
  CHECK(rep.to_json().contains("entries"));
}

TEST_CASE("extraction distances shrink for p = 2") {
  SolveOptions o;
  o.stability_check = false;
  const auto rep = extremal_extraction(2.0, DiffOperator::identity(1), ConvexBody::cube(1, 1.0), {3, 7, 15, 31}, o);
  for (std::size_t i = 0; i + 2 < rep.entries.size(); ++i)
    CHECK(rep.entries[i + 1].dist_to_next < rep.entries[i].dist_to_next);
  CHECK(std::isnan(rep.entries.back().dist_to_next));
}

TEST_CASE("body transforms are even") {
  const auto f = EntireSample::body_fourier(ConvexBody::ball(2, 1.0));
  for (double t : {0.1, 0.7, 2.3, 5.9}) {
    const double x[2] = {t, 0.4 - t}, y[2] = {-t, t - 0.4};
    CHECK(std::abs(f.value(x) - f.value(y)) <= 1e-12 * std::abs(f.value(x)) + 1e-14);
  }
}

TEST_CASE("sinc closed forms agree with quadrature plus tail") {
  for (const auto& [k, p] : std::vector<std::pair<int, double>>{{2, 1.0}, {2, 2.0}, {4, 1.0}, {3, 2.0}}) {
    const auto f = EntireSample::sinc_product({1.0}, k);
    const auto exact = f.known_norm(p);
    REQUIRE(exact.has_value());
    CHECK(f.norm_upper_bound(p, 2000.0).value == doctest::Approx(*exact).epsilon(0.01));
  }
}

TEST_CASE("extraction distances are finite") {
  SolveOptions o;
  o.stability_check = false;
  const auto rep = extremal_extraction(2.0, DiffOperator::identity(2), ConvexBody::ball(2, 1.0), {2, 4, 6}, o);
  for (std::size_t i = 0; i + 1 < rep.entries.size(); ++i) CHECK(std::isfinite(rep.entries[i].dist_to_next));
  for (const auto& e : rep.entries) CHECK(e.normalization_residual < 1e-10);
}
