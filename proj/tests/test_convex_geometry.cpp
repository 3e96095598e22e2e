#include <doctest.h>

#include <cmath>
#include <random>

#include "sharpconst/convex_body.hpp"
#include "sharpconst/errors.hpp"

using namespace sharpconst;

TEST_CASE("dual norm of ball and box") {
  CHECK(dual_norm(Point{1, 0}, ConvexBody::ball(2, 3.0)) == doctest::Approx(3.0));
  CHECK(dual_norm(Point{0, 0}, ConvexBody::cube(2, 1.0)) == 0.0);
  CHECK(dual_norm(Point{1, 1}, ConvexBody::parallelepiped({1, 2})) == doctest::Approx(3.0));
  CHECK(dual_norm(Point{3, -4}, ConvexBody::ball(2, 1.0)) == doctest::Approx(5.0));
}

TEST_CASE("dual norm of lp balls uses the conjugate exponent") {
  // ||y||^* for the l_mu ball is the l_{mu'} norm, 1/mu + 1/mu' = 1.
  const auto V = ConvexBody::lp_ball(3.0, {1.0, 1.0});
  const double q = 1.5;
  CHECK(dual_norm(Point{1, 2}, V) == doctest::Approx(std::pow(1.0 + std::pow(2.0, q), 1.0 / q)));
  CHECK(dual_norm(Point{1, 2}, ConvexBody::lp_ball(1.0, {1.0, 1.0})) == doctest::Approx(2.0));
}

TEST_CASE("polar membership") {
  CHECK(polar_membership(Point{0, 0}, ConvexBody::ball(2, 1.0)));
  CHECK_FALSE(polar_membership(Point{2, 0}, ConvexBody::ball(2, 1.0)));
  for (int m = 1; m <= 3; ++m) {
    Point y(static_cast<std::size_t>(m), 1.0 / m);
    CHECK(polar_membership(y, ConvexBody::cube(m, 1.0)));
  }
}

TEST_CASE("boundary points") {
  auto v = boundary_point(Point{2, 0}, ConvexBody::ball(2, 1.0));
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(0.0));
  v = boundary_point(Point{3, 3}, ConvexBody::parallelepiped({1, 1}));
  CHECK(v[0] == doctest::Approx(0.5));
  CHECK(v[1] == doctest::Approx(0.5));
  v = boundary_point(Point{0, 5}, ConvexBody::parallelepiped({2, 1}));
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(boundary_point(Point{0, 0}, ConvexBody::ball(2, 1.0)), DomainError);
}

TEST_CASE("support function of the polar") {
  CHECK(support_function_polar(Direction(Point{0.6, 0.8}), ConvexBody::ball(2, 1.0)) == doctest::Approx(1.0));
  CHECK(support_function_polar(Direction(Point{1, 0}), ConvexBody::cube(2, 1.0)) == doctest::Approx(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(support_function_polar(Direction(Point{r, r}), ConvexBody::cube(2, 1.0)) == doctest::Approx(r));
}

TEST_CASE("width of the polar") {
  CHECK(width_polar(ConvexBody::ball(2, 1.0), 256) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(width_polar(ConvexBody::cube(2, 1.0), 256) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(width_polar(ConvexBody::parallelepiped({1, 1}), 256) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(width_polar(ConvexBody::cube(1, 2.0), 64) == doctest::Approx(1.0));
  // Grid minimum converges from above.
  CHECK(width_polar(ConvexBody::cube(3, 1.0), 64) >= 2.0 / std::sqrt(3.0) - 1e-12);
}

TEST_CASE("symmetry and convexity spot checks") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::vector<ConvexBody> bodies = {ConvexBody::ball(2, 1.5), ConvexBody::cube(3, 0.7),
                                          ConvexBody::lp_ball(4.0, {1.0, 2.0}),
                                          ConvexBody::polytope({{1, 0}, {0.3, 1}, {-0.5, 0.8}})};
  for (const auto& V : bodies) {
    const int m = V.dimension();
    for (int t = 0; t < 200; ++t) {
      Point y(static_cast<std::size_t>(m)), z(static_cast<std::size_t>(m)), neg(static_cast<std::size_t>(m)),
          mid(static_cast<std::size_t>(m));
      for (int j = 0; j < m; ++j) {
        y[j] = u(rng);
        z[j] = u(rng);
        neg[j] = -y[j];
        mid[j] = 0.5 * (y[j] + z[j]);
      }
      CHECK(polar_membership(y, V) == polar_membership(neg, V));
      if (polar_membership(y, V) && polar_membership(z, V)) CHECK(polar_membership(mid, V));
    }
  }
}

TEST_CASE("polytopes are symmetrized") {
  const auto V = ConvexBody::polytope({{1, 0}, {0, 1}});
  const auto& P = std::get<shape::SymmetricPolytope>(V.shape());
  CHECK(P.vertices.size() == 4);
  for (const auto& v : P.vertices) {
    bool found = false;
    for (const auto& w : P.vertices) found = found || (w[0] == -v[0] && w[1] == -v[1]);
    CHECK(found);
  }
}

TEST_CASE("body spec parsing") {
  CHECK(parse_body("ball:2", 3).dimension() == 3);
  CHECK(parse_body("box:1,2").dimension() == 2);
  CHECK(parse_body("lp:inf:1,1").dimension() == 2);
  CHECK(parse_body("poly:1,0;0,1").dimension() == 2);
  CHECK(dual_norm(Point{1, 1}, parse_body("box:1,2")) == doctest::Approx(3.0));
  CHECK_THROWS_AS(parse_body("ball:x", 2), ConfigError);
  CHECK_THROWS_AS(parse_body("sphere:1", 2), ConfigError);
  CHECK_THROWS_AS(parse_body("box:1,2", 3), ConfigError);
  try {
    parse_body("ball:abc", 2);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("abc") != std::string::npos);
  }
}

TEST_CASE("scaling a body scales the dual norm") {
  const auto V = ConvexBody::lp_ball(3.0, {1.0, 0.5});
  const Point y{0.4, -1.3};
  CHECK(dual_norm(y, V.scaled(2.0)) == doctest::Approx(2.0 * dual_norm(y, V)));
}
