#include <doctest.h>

#include <cmath>
#include <random>

#include "sharpconst/errors.hpp"
#include "sharpconst/polynomial.hpp"

using namespace sharpconst;

namespace {

Complex at(const Polynomial& P, std::vector<double> y) { return eval(P, y); }

}  // namespace

TEST_CASE("evaluation") {
  CHECK(at(Polynomial::constant(2, 1.0), {0.3, -7.0}) == Complex(1.0));
  Polynomial P(2, 2);
  P.set(MultiIndex({1, 1}), 1.0);
  CHECK(at(P, {2, 3}) == Complex(6.0));
  CHECK(at(Polynomial::chebyshev(3), {0.5}).real() == doctest::Approx(-1.0));
}

TEST_CASE("derivative at zero") {
  Polynomial P(1, 3);
  P.set(MultiIndex({0}), Complex(2.5, -1.0));
  P.set(MultiIndex({2}), 4.0);
  CHECK(derivative_at_zero(DiffOperator::identity(1), P) == Complex(2.5, -1.0));

  Polynomial Q(1, 2);
  Q.set(MultiIndex({2}), 1.0);
  CHECK(derivative_at_zero(DiffOperator::partial(MultiIndex({2})), Q).real() == doctest::Approx(2.0));

  Polynomial R(2, 2);
  R.set(MultiIndex({2, 0}), 1.0);
  R.set(MultiIndex({0, 2}), 1.0);
  CHECK(derivative_at_zero(DiffOperator::laplacian(2), R).real() == doctest::Approx(4.0));
}

TEST_CASE("operators reject mismatched orders") {
  DiffOperator D(2, 2);
  CHECK_THROWS_AS(D.set(MultiIndex({1, 0}), 1.0), InputError);
  CHECK_THROWS_AS(D.set(MultiIndex({1, 1, 0}), 1.0), InputError);
}

TEST_CASE("homogeneous parts") {
  Polynomial P(2, 2);
  P.set(MultiIndex({0, 0}), 1.0);
  P.set(MultiIndex({1, 0}), 1.0);
  P.set(MultiIndex({1, 1}), 1.0);
  const auto H2 = homogeneous_part(P, 2);
  CHECK(H2.terms().size() == 1);
  CHECK(H2.coeff(MultiIndex({1, 1})) == Complex(1.0));
  const auto H0 = homogeneous_part(P, 0);
  CHECK(H0.coeff(MultiIndex({0, 0})) == Complex(1.0));
  CHECK(H0.terms().size() == 1);

  const auto T4 = homogeneous_part(Polynomial::chebyshev(4), 2);
  CHECK(T4.coeff(MultiIndex({2})).real() == doctest::Approx(-8.0));
}

TEST_CASE("rescaling") {
  Polynomial P(1, 2);
  P.set(MultiIndex({2}), 1.0);
  CHECK(rescale(P, 1.0).coeff(MultiIndex({2})) == P.coeff(MultiIndex({2})));
  CHECK(rescale(P, 2.0).coeff(MultiIndex({2})).real() == doctest::Approx(0.25));

  const auto T5 = Polynomial::chebyshev(5);
  const auto Q = rescale(T5, 5.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    CHECK(at(Q, {5.0 * x}).real() == doctest::Approx(std::cos(5.0 * std::acos(x))).epsilon(1e-12));
  }
}

TEST_CASE("chebyshev coefficients and derivatives at zero") {
  CHECK(chebyshev_derivative_at_zero(2, 2) == 4);
  CHECK(chebyshev_derivative_at_zero(3, 1) == 3);
  CHECK(chebyshev_derivative_at_zero(4, 1) == 0);
  // |T_n'(0)| = n for odd n.
  for (int n = 1; n <= 59; n += 2) CHECK(chebyshev_derivative_at_zero(n, 1) == n);

  const auto c = chebyshev_coefficients(4);
  CHECK(c[4] == 8);
  CHECK(c[2] == -8);
  CHECK(c[0] == 1);
  // Leading coefficient 2^{n-1} stays exact at n = 60.
  BigInt lead = 1;
  lead <<= 59;
  CHECK(chebyshev_coefficients(60)[60] == lead);
  CHECK_THROWS(chebyshev_derivative_at_zero(61, 1));
}

TEST_CASE("one-variable coefficient bound") {
  CHECK(vam_coefficient_bound(2, 2, 1.0, 1.0) == doctest::Approx(2.0));
  CHECK(vam_coefficient_bound(3, 1, 1.0, 1.0) == doctest::Approx(3.0));
  for (int n = 2; n <= 20; n += 2) CHECK(vam_coefficient_bound(n, 0, 1.0, 1.0) == doctest::Approx(1.0));
  // Scaling in a and M.
  CHECK(vam_coefficient_bound(5, 3, 2.0, 3.0) == doctest::Approx(3.0 * vam_coefficient_bound(5, 3, 1.0, 1.0) / 8.0));
  for (int n = 1; n <= 20; ++n)
    for (int k = 0; k <= n; ++k) CHECK(vam_coefficient_bound(n, k, 1.0, 1.0) <= vam_relaxed_bound(n, k, 1.0, 1.0) + 1e-9);
}

TEST_CASE("exact chebyshev audit") { CHECK(audit_coefficient_bounds(60).empty()); }

TEST_CASE("homogeneous bound check") {
  const auto V = ConvexBody::cube(1, 1.0);
  CHECK(homogeneous_bound_check(Polynomial::constant(1, 3.0), V, 1.0, Point{0.4}, 0, 3.0));
  for (int n = 1; n <= 10; ++n) CHECK(homogeneous_bound_check(Polynomial::chebyshev(n), V, 1.0, Point{1.0}, n, 1.0));
}

TEST_CASE("json round trip") {
  Polynomial P(2, 3);
  P.set(MultiIndex({1, 2}), Complex(1.5, -2.0));
  P.set(MultiIndex({0, 0}), 0.25);
  const auto Q = polynomial_from_json(polynomial_to_json(P));
  CHECK(Q.terms() == P.terms());

  const auto D = operator_from_json(operator_to_json(DiffOperator::laplacian(3)));
  CHECK(D.order() == 2);
  CHECK(D.weights() == DiffOperator::laplacian(3).weights());
}

TEST_CASE("derivative at zero is linear in P and D") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  auto random_poly = [&] {
    Polynomial P(2, 4);
    for (const auto& b : multi_indices_total_degree(2, 4)) P.set(b, Complex(g(rng), g(rng)));
    return P;
  };
  auto random_op = [&] {
    DiffOperator D(2, 2);
    for (const auto& a : multi_indices_of_order(2, 2)) D.set(a, Complex(g(rng), g(rng)));
    return D;
  };
  for (int t = 0; t < 20; ++t) {
    const auto P = random_poly(), Q = random_poly();
    const auto D = random_op(), E = random_op();
    const Complex s(g(rng), g(rng));
    const Complex lhs = derivative_at_zero(D, P + s * Q);
    const Complex rhs = derivative_at_zero(D, P) + s * derivative_at_zero(D, Q);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
    DiffOperator DE(2, 2);
    for (const auto& a : multi_indices_of_order(2, 2)) {
      const auto wd = D.weights().count(a) ? D.weights().at(a) : Complex(0.0);
      const auto we = E.weights().count(a) ? E.weights().at(a) : Complex(0.0);
      DE.set(a, wd + s * we);
    }
    const Complex l2 = derivative_at_zero(DE, P);
    const Complex r2 = derivative_at_zero(D, P) + s * derivative_at_zero(E, P);
    CHECK(std::abs(l2 - r2) <= 1e-12 * (1.0 + std::abs(l2)));
  }
}

TEST_CASE("chebyshev derivatives match finite differences") {
  // Roundoff in a k-th difference grows like eps / h^k, so orders 3 and 4 use a wider step.
  const double step[5] = {1e-4, 1e-4, 1e-4, 2e-3, 2e-3};
  const double tol[5] = {1e-6, 1e-6, 1e-6, 1e-3, 1e-3};
  for (int n = 1; n <= 15; ++n) {
    auto T = [n](double x) { return std::cos(n * std::acos(x)); };
    for (int k = 0; k <= std::min(n, 4); ++k) {
      const double h = step[k];
      const double fd[5] = {T(0.0), (T(h) - T(-h)) / (2 * h), (T(h) - 2 * T(0.0) + T(-h)) / (h * h),
                            (T(2 * h) - 2 * T(h) + 2 * T(-h) - T(-2 * h)) / (2 * h * h * h),
                            (T(2 * h) - 4 * T(h) + 6 * T(0.0) - 4 * T(-h) + T(-2 * h)) / (h * h * h * h)};
      const double exact = static_cast<double>(chebyshev_derivative_at_zero(n, k));
      if (exact == 0.0)
        CHECK(std::abs(fd[k]) < tol[k] * std::pow(n, k));
      else
        CHECK(std::abs(fd[k]) == doctest::Approx(exact).epsilon(tol[k]));
    }
  }
}

TEST_CASE("rescale composes to the identity") {
  auto P = Polynomial::chebyshev(6);
  P.set(MultiIndex({3}), Complex(0.5, 1.0));
  for (double s : {0.5, 2.0, 4.0}) {
    const auto Q = rescale(rescale(P, s), 1.0 / s);
    for (const auto& [beta, c] : P.terms()) CHECK(Q.coeff(beta) == c);
  }
}

TEST_CASE("parity of homogeneous parts") {
  for (int n = 2; n <= 9; ++n) {
    const auto T = Polynomial::chebyshev(n);
    for (int k = 0; k <= n; ++k)
      if ((n - k) % 2 != 0) CHECK(homogeneous_part(T, k).terms().empty());
  }
}
