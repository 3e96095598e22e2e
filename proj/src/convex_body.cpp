#include "sharpconst/convex_body.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sharpconst/errors.hpp"
#include "sharpconst/format.hpp"
#include "sharpconst/lp_solver.hpp"

namespace sharpconst {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive_scales(const std::vector<double>& s, const char* what) {
  if (s.empty()) throw InputError(std::string(what) + ": empty scale list");
  for (double v : s)
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError(std::string(what) + ": scales must be positive and finite");
}

void check_dim(std::span<const double> y, const ConvexBody& V) {
  if (static_cast<int>(y.size()) != V.dimension())
    throw InputError("dimension mismatch: point has " + std::to_string(y.size()) + " coordinates, body has m=" +
                     std::to_string(V.dimension()));
}

// (sum |a_j|^q)^(1/q) with overflow-safe scaling; q = inf gives the max.
double lq_norm(std::span<const double> a, double q) {
  double big = 0.0;
  for (double v : a) big = std::max(big, std::abs(v));
  if (big == 0.0 || std::isinf(q)) return big;
  if (q == 1.0) {
    double s = 0.0;
    for (double v : a) s += std::abs(v);
    return s;
  }
  double s = 0.0;
  for (double v : a) s += std::pow(std::abs(v) / big, q);
  return big * std::pow(s, 1.0 / q);
}

double conjugate_exponent(double mu) {
  if (std::isinf(mu)) return 1.0;
  if (mu == 1.0) return kInf;
  return mu / (mu - 1.0);
}

double polytope_dual(std::span<const double> y, const shape::SymmetricPolytope& P) {
  double best = 0.0;
  for (const auto& v : P.vertices) {
    double dot = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) dot += v[j] * y[j];
    best = std::max(best, std::abs(dot));
  }
  return best;
}

// gauge of V at t = max t.y subject to |v_i . y| <= 1.
double polytope_gauge(std::span<const double> t, const shape::SymmetricPolytope& P) {
  const auto m = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd A(static_cast<Eigen::Index>(P.vertices.size()), m);
  for (std::size_t i = 0; i < P.vertices.size(); ++i)
    for (Eigen::Index j = 0; j < m; ++j) A(static_cast<Eigen::Index>(i), j) = P.vertices[i][static_cast<std::size_t>(j)];
  Eigen::VectorXd L(m);
  for (Eigen::Index j = 0; j < m; ++j) L(j) = t[static_cast<std::size_t>(j)];
  return std::max(0.0, maximize_under_unit_rows(A, L).value);
}

std::string join_scales(const std::vector<double>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += format_double(s[i]);
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(const std::string& tok, std::string_view spec) {
  if (tok == "inf" || tok == "Inf" || tok == "INF") return kInf;
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (tok.empty() || ec != std::errc() || ptr != last)
    throw ConfigError("invalid body spec '" + std::string(spec) + "': bad number '" + tok + "'");
  return v;
}

std::vector<double> parse_list(const std::string& tok, std::string_view spec) {
  std::vector<double> out;
  for (const auto& piece : split(tok, ',')) out.push_back(parse_number(piece, spec));
  return out;
}

}  // namespace

ConvexBody ConvexBody::lp_ball(double mu, std::vector<double> scales) {
  if (!(mu >= 1.0)) throw InputError("lp ball: exponent mu must lie in [1, inf]");
  require_positive_scales(scales, "lp ball");
  const int m = static_cast<int>(scales.size());
  return ConvexBody(m, shape::LpBall{mu, std::move(scales)});
}

ConvexBody ConvexBody::parallelepiped(std::vector<double> scales) {
  require_positive_scales(scales, "parallelepiped");
  const int m = static_cast<int>(scales.size());
  return ConvexBody(m, shape::Parallelepiped{std::move(scales)});
}

ConvexBody ConvexBody::cube(int m, double half_side) {
  if (m < 1) throw InputError("cube: dimension must be positive");
  if (!(half_side > 0.0) || !std::isfinite(half_side)) throw InputError("cube: M must be positive");
  return ConvexBody(m, shape::Cube{half_side});
}

ConvexBody ConvexBody::ball(int m, double radius) {
  if (m < 1) throw InputError("ball: dimension must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("ball: radius must be positive");
  return ConvexBody(m, shape::EuclideanBall{radius});
}

ConvexBody ConvexBody::polytope(std::vector<Point> vertices) {
  if (vertices.empty()) throw InputError("polytope: empty vertex list");
  const std::size_t m = vertices.front().size();
  if (m == 0) throw InputError("polytope: zero-dimensional vertex");
  for (const auto& v : vertices) {
    if (v.size() != m) throw InputError("polytope: vertices have inconsistent dimensions");
    for (double x : v)
      if (!std::isfinite(x)) throw InputError("polytope: non-finite vertex coordinate");
  }
  Eigen::MatrixXd M(static_cast<Eigen::Index>(vertices.size()), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vertices[i][j];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  lu.setThreshold(1e-12);
  if (lu.rank() < static_cast<Eigen::Index>(m)) throw InputError("polytope: vertices do not span R^m (empty interior)");

  std::vector<Point> sym = vertices;
  for (const auto& v : vertices) {
    Point neg(v.size());
    std::transform(v.begin(), v.end(), neg.begin(), [](double x) { return -x; });
    const bool present = std::any_of(sym.begin(), sym.end(), [&](const Point& w) {
      for (std::size_t j = 0; j < m; ++j)
        if (std::abs(w[j] - neg[j]) > 1e-12 * (1.0 + std::abs(neg[j]))) return false;
      return true;
    });
    if (!present) sym.push_back(std::move(neg));
  }
  return ConvexBody(static_cast<int>(m), shape::SymmetricPolytope{std::move(sym)});
}

ConvexBody ConvexBody::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InputError("scaled: factor must be positive");
  return std::visit(overloaded{
                        [&](const shape::LpBall& s) {
                          auto sc = s.scales;
                          for (auto& v : sc) v *= c;
                          return ConvexBody(m_, shape::LpBall{s.mu, sc});
                        },
                        [&](const shape::Parallelepiped& s) {
                          auto sc = s.scales;
                          for (auto& v : sc) v *= c;
                          return ConvexBody(m_, shape::Parallelepiped{sc});
                        },
                        [&](const shape::Cube& s) { return ConvexBody(m_, shape::Cube{s.half_side * c}); },
                        [&](const shape::EuclideanBall& s) { return ConvexBody(m_, shape::EuclideanBall{s.radius * c}); },
                        [&](const shape::SymmetricPolytope& s) {
                          auto vs = s.vertices;
                          for (auto& v : vs)
                            for (auto& x : v) x *= c;
                          return ConvexBody(m_, shape::SymmetricPolytope{vs});
                        },
                    },
                    shape_);
}

std::string ConvexBody::spec() const {
  return std::visit(overloaded{
                        [&](const shape::LpBall& s) {
                          return "lp:" + (std::isinf(s.mu) ? std::string("inf") : format_double(s.mu)) + ":" +
                                 join_scales(s.scales);
                        },
                        [&](const shape::Parallelepiped& s) { return "box:" + join_scales(s.scales); },
                        [&](const shape::Cube& s) { return "cube:" + format_double(s.half_side); },
                        [&](const shape::EuclideanBall& s) { return "ball:" + format_double(s.radius); },
                        [&](const shape::SymmetricPolytope& s) {
                          std::string out = "poly:";
                          for (std::size_t i = 0; i < s.vertices.size(); ++i) {
                            if (i) out += ';';
                            out += join_scales(s.vertices[i]);
                          }
                          return out;
                        },
                    },
                    shape_);
}

Direction::Direction(Point u) : u_(std::move(u)) {
  if (u_.empty()) throw InputError("direction: empty vector");
  double n2 = 0.0;
  for (double x : u_) n2 += x * x;
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-12) throw InputError("direction: vector is not a unit vector");
}

Direction Direction::normalized(Point v) {
  double n2 = 0.0;
  for (double x : v) n2 += x * x;
  const double n = std::sqrt(n2);
  if (!(n > 0.0)) throw DomainError("direction: cannot normalize the zero vector");
  for (auto& x : v) x /= n;
  return Direction(std::move(v));
}

double dual_norm(std::span<const double> y, const ConvexBody& V) {
  check_dim(y, V);
  return std::visit(overloaded{
                        [&](const shape::LpBall& s) {
                          std::vector<double> a(y.size());
                          for (std::size_t j = 0; j < y.size(); ++j) a[j] = s.scales[j] * y[j];
                          return lq_norm(a, conjugate_exponent(s.mu));
                        },
                        [&](const shape::Parallelepiped& s) {
                          double sum = 0.0;
                          for (std::size_t j = 0; j < y.size(); ++j) sum += s.scales[j] * std::abs(y[j]);
                          return sum;
                        },
                        [&](const shape::Cube& s) { return s.half_side * lq_norm(y, 1.0); },
                        [&](const shape::EuclideanBall& s) { return s.radius * lq_norm(y, 2.0); },
                        [&](const shape::SymmetricPolytope& s) { return polytope_dual(y, s); },
                    },
                    V.shape());
}

double gauge(std::span<const double> t, const ConvexBody& V) {
  check_dim(t, V);
  return std::visit(overloaded{
                        [&](const shape::LpBall& s) {
                          std::vector<double> a(t.size());
                          for (std::size_t j = 0; j < t.size(); ++j) a[j] = t[j] / s.scales[j];
                          return lq_norm(a, s.mu);
                        },
                        [&](const shape::Parallelepiped& s) {
                          double best = 0.0;
                          for (std::size_t j = 0; j < t.size(); ++j) best = std::max(best, std::abs(t[j]) / s.scales[j]);
                          return best;
                        },
                        [&](const shape::Cube& s) { return lq_norm(t, kInf) / s.half_side; },
                        [&](const shape::EuclideanBall& s) { return lq_norm(t, 2.0) / s.radius; },
                        [&](const shape::SymmetricPolytope& s) { return polytope_gauge(t, s); },
                    },
                    V.shape());
}

bool polar_membership(std::span<const double> y, const ConvexBody& V) {
  return dual_norm(y, V) <= 1.0 + 1e-12;
}

Point boundary_point(std::span<const double> y, const ConvexBody& V) {
  const double d = dual_norm(y, V);
  if (!(d > 0.0)) throw DomainError("boundary_point: y = 0 does not determine a ray");
  Point v(y.begin(), y.end());
  for (auto& x : v) x /= d;
  return v;
}

double support_function_polar(const Direction& u, const ConvexBody& V) {
  return gauge(u.coords(), V);
}

double width_polar(const ConvexBody& V, int angular_resolution) {
  const int m = V.dimension();
  if (m > 3) throw ConfigError("width_polar: dimension m=" + std::to_string(m) + " is not supported (m <= 3)");
  if (angular_resolution < 64) throw InputError("width_polar: angular_resolution must be at least 64");
  if (m == 1) return 2.0 * gauge(std::vector<double>{1.0}, V);

  const double pi = std::numbers::pi;
  double best = kInf;
  if (m == 2) {
    // h(-u) = h(u): half the circle suffices.
    for (int k = 0; k < angular_resolution; ++k) {
      const double th = pi * k / angular_resolution;
      best = std::min(best, gauge(std::vector<double>{std::cos(th), std::sin(th)}, V));
    }
  } else {
    for (int i = 0; i <= angular_resolution; ++i) {
      const double phi = 0.5 * pi * i / angular_resolution;
      const int n_az = i == 0 ? 1 : 2 * angular_resolution;
      for (int j = 0; j < n_az; ++j) {
        const double th = pi * j / angular_resolution;
        best = std::min(best, gauge(std::vector<double>{std::sin(phi) * std::cos(th), std::sin(phi) * std::sin(th),
                                                        std::cos(phi)},
                                    V));
      }
    }
  }
  return 2.0 * best;
}

ConvexBody parse_body(std::string_view spec, int m) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ConfigError("invalid body spec '" + std::string(spec) + "': missing ':' after the kind");
  const std::string kind(spec.substr(0, colon));
  const std::string rest(spec.substr(colon + 1));

  auto check_m = [&](int inferred) {
    if (m != 0 && m != inferred)
      throw ConfigError("invalid body spec '" + std::string(spec) + "': has dimension " + std::to_string(inferred) +
                        " but m=" + std::to_string(m));
  };
  try {
    if (kind == "ball" || kind == "cube") {
      if (m < 1) throw ConfigError("invalid body spec '" + std::string(spec) + "': '" + kind + "' needs the dimension m");
      const double M = parse_number(rest, spec);
      return kind == "ball" ? ConvexBody::ball(m, M) : ConvexBody::cube(m, M);
    }
    if (kind == "box") {
      auto s = parse_list(rest, spec);
      check_m(static_cast<int>(s.size()));
      return ConvexBody::parallelepiped(std::move(s));
    }
    if (kind == "lp") {
      const auto c2 = rest.find(':');
      if (c2 == std::string::npos)
        throw ConfigError("invalid body spec '" + std::string(spec) + "': expected lp:mu:s1,...");
      const double mu = parse_number(rest.substr(0, c2), spec);
      auto s = parse_list(rest.substr(c2 + 1), spec);
      check_m(static_cast<int>(s.size()));
      return ConvexBody::lp_ball(mu, std::move(s));
    }
    if (kind == "poly") {
      std::vector<Point> verts;
      for (const auto& v : split(rest, ';')) verts.push_back(parse_list(v, spec));
      auto body = ConvexBody::polytope(std::move(verts));
      check_m(body.dimension());
      return body;
    }
  } catch (const InputError& e) {
    throw ConfigError("invalid body spec '" + std::string(spec) + "': " + e.what());
  }
  throw ConfigError("invalid body spec '" + std::string(spec) + "': unknown kind '" + kind + "'");
}

}  // namespace sharpconst
