#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sharpconst/convex_body.hpp"

namespace sharpconst {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
GaussRule gauss_legendre(int k);

/// A star-shaped symmetric domain {x : gauge(x) <= 1} described by what the
/// rule builders need: the gauge, the bounding box, and where the boundary
/// has corners.
struct StarDomain {
  int m = 1;
  std::function<double(std::span<const double>)> gauge;
  /// Half-widths of the bounding box.
  std::vector<double> half_widths;
  /// The domain is exactly the box with the half-widths above.
  bool is_box = false;
  /// m = 2: polar angles in [0, 2pi) where the boundary is not smooth.
  std::vector<double> kinks;
  /// m = 3: the boundary is smooth inside every coordinate octant.
  bool octant_smooth = false;
  std::string description;
};

/// V^*, gauge = dual norm of V.
StarDomain polar_domain(const ConvexBody& V);
/// V itself, gauge = Minkowski functional of V.
StarDomain body_domain(const ConvexBody& V);
/// Axis-aligned box prod [-h_j, h_j].
StarDomain box_domain(std::vector<double> half_widths);

enum class DomainKind { Body, Cube, Torus };

struct RuleResolution {
  int radial = 0;
  int angular = 0;
  std::vector<int> per_axis;
};

struct QuadratureRule {
  int m = 1;
  std::vector<Point> nodes;
  std::vector<double> weights;
  DomainKind kind = DomainKind::Body;
  std::string domain;
  RuleResolution resolution;

  std::size_t size() const { return nodes.size(); }
  double mass() const;
};

/// Product rule over the domain in polar form: Gauss-Legendre in the radius on
/// [0, r*(theta)], r* = 1 / gauge(theta), composite Gauss-Legendre in the
/// angles with panels split at the kinks (uniform trapezoid when there are
/// none). Boxes use tensor Gauss-Legendre with `radial_points` per axis.
/// Requires m <= 3 and radial_points >= 8.
QuadratureRule build_rule(const StarDomain& domain, int radial_points, int angular_points);

/// Rule over V^*.
QuadratureRule build_rule_body(const ConvexBody& V, int radial_points, int angular_points);

/// Tensor Gauss-Legendre on prod [lo_j, hi_j].
QuadratureRule build_rule_box(std::span<const double> lo, std::span<const double> hi, int points_per_axis);

/// Trapezoid rule on [-pi, pi)^m with k points per axis; exact for
/// trigonometric polynomials of degree < k in each variable.
QuadratureRule build_rule_torus(int m, int points_per_axis);

/// Rule for {c x + shift : x in domain}.
QuadratureRule scaled_rule(const QuadratureRule& rule, double c, std::span<const double> shift = {});

/// Points for grid maxima: Chebyshev-Lobatto radii (origin and boundary
/// included) along every angle of the rule's angular grid, kinks inserted.
/// Boxes give tensor Chebyshev-Lobatto grids.
std::vector<Point> sup_grid(const StarDomain& domain, int radial_points, int angular_points);

struct MassEstimate {
  double value;
  double standard_error;
};

/// Hit-or-miss Monte Carlo volume of the domain over its bounding box.
MassEstimate monte_carlo_volume(const StarDomain& domain, int samples, std::uint64_t seed);

struct QuasinormValue {
  double value = 0.0;
  double p = 2.0;
  std::string domain;
  /// |value - value on the reference rule| when one is given, else 0.
  double estimated_error = 0.0;
};

using PointFunction = std::function<std::complex<double>(std::span<const double>)>;

/// (sum w_i |F(x_i)|^p)^(1/p), or max_i |F(x_i)| for p = inf (a lower
/// approximation of the essential sup). Sums are pairwise.
/// Throws EvaluationError naming the node when F is not finite there.
QuasinormValue lp_quasinorm(const PointFunction& F, const QuadratureRule& rule, double p,
                            const QuadratureRule* reference = nullptr);

/// Same on precomputed values |F(x_i)|.
double lp_quasinorm_values(std::span<const double> abs_values, std::span<const double> weights, double p);

/// ||F+G||^q <= ||F||^q + ||G||^q + 1e-10 with q = min(1, p).
bool quasinorm_triangle_check(const PointFunction& F, const PointFunction& G, const QuadratureRule& rule, double p);

/// Pairwise sum.
double pairwise_sum(std::span<const double> v);

/// max |f| on [a, b]: a uniform grid of `grid` points followed by golden
/// section refinement around the best few grid maxima.
double sup_abs_1d(const std::function<double(double)>& f, double a, double b, int grid);

}  // namespace sharpconst
