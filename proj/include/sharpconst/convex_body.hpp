#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sharpconst {

using Point = std::vector<double>;

namespace shape {

/// {t : (sum |t_j / scale_j|^mu)^(1/mu) <= 1}, mu in [1, inf]; mu = inf is stored as +infinity.
struct LpBall {
  double mu;
  std::vector<double> scales;
};

/// {t : |t_j| <= scale_j}
struct Parallelepiped {
  std::vector<double> scales;
};

/// Q^m(M) = {t : |t_j| <= M}
struct Cube {
  double half_side;
};

/// B^m(M) = {t : |t| <= M}
struct EuclideanBall {
  double radius;
};

/// Convex hull of a vertex list that is closed under negation.
struct SymmetricPolytope {
  std::vector<Point> vertices;
};

}  // namespace shape

using BodyShape = std::variant<shape::LpBall, shape::Parallelepiped, shape::Cube, shape::EuclideanBall,
                               shape::SymmetricPolytope>;

/// A centrally symmetric convex body V in R^m, 1 <= m.
///
/// The body is the source of two norms: its own gauge ||t||_V (unit ball V)
/// and the dual norm ||y||_V^* = sup_{t in V} |t.y| (unit ball V^*, the polar).
class ConvexBody {
 public:
  static ConvexBody lp_ball(double mu, std::vector<double> scales);
  static ConvexBody parallelepiped(std::vector<double> scales);
  static ConvexBody cube(int m, double half_side);
  static ConvexBody ball(int m, double radius);
  /// Validates and symmetrizes: -v is appended for every v whose negation is missing.
  static ConvexBody polytope(std::vector<Point> vertices);

  int dimension() const { return m_; }
  const BodyShape& shape() const { return shape_; }

  /// cV for c > 0.
  ConvexBody scaled(double c) const;

  /// Canonical body spec string (see parse_body).
  std::string spec() const;

 private:
  ConvexBody(int m, BodyShape s) : m_(m), shape_(std::move(s)) {}

  int m_;
  BodyShape shape_;
};

/// Unit vector in R^m, |u| = 1 within 1e-12.
class Direction {
 public:
  explicit Direction(Point u);
  static Direction normalized(Point v);

  std::span<const double> coords() const { return u_; }
  int dimension() const { return static_cast<int>(u_.size()); }

 private:
  Point u_;
};

/// ||y||_V^* = sup_{t in V} |t.y|.
double dual_norm(std::span<const double> y, const ConvexBody& V);

/// Minkowski functional of V, ||t||_V = inf{r > 0 : t in rV}. Equal to the
/// support function of V^* at t.
double gauge(std::span<const double> t, const ConvexBody& V);

/// y in V^* (dual norm <= 1 up to 1e-12 relative).
bool polar_membership(std::span<const double> y, const ConvexBody& V);

/// The point of the boundary of V^* on the ray through y: y / ||y||_V^*.
/// Throws DomainError for y = 0.
Point boundary_point(std::span<const double> y, const ConvexBody& V);

/// h_{V*}(u) = sup_{y in V*} u.y.
double support_function_polar(const Direction& u, const ConvexBody& V);

/// Grid approximation of the width w(V^*): twice the minimum of the support
/// function over a direction grid with `angular_resolution` steps per angle.
/// Converges from above as the resolution grows. Requires m <= 3 and
/// angular_resolution >= 64.
double width_polar(const ConvexBody& V, int angular_resolution);

/// Parses `ball:M`, `cube:M`, `box:s1,...`, `lp:mu:s1,...` (mu may be `inf`)
/// and `poly:v11,v12;v21,v22;...`. `m` is required for ball and cube; for the
/// other forms it is inferred and, when nonzero, checked.
/// Throws ConfigError naming the offending token.
ConvexBody parse_body(std::string_view spec, int m = 0);

}  // namespace sharpconst
