#include "sharpconst/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "sharpconst/errors.hpp"
#include "sharpconst/format.hpp"

namespace sharpconst {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> axis_kinks() { return {0.0, 0.5 * kPi, kPi, 1.5 * kPi}; }

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi - 1e-14) t = 0.0;
  return t;
}

void sort_unique_angles(std::vector<double>& a) {
  for (auto& t : a) t = wrap_angle(t);
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double t : a)
    if (out.empty() || t - out.back() > 1e-12) out.push_back(t);
  if (out.size() > 1 && kTwoPi - out.back() + out.front() < 1e-12) out.pop_back();
  a = std::move(out);
}

// Vertices of V^* for a planar polytope V: directions where two vertex
// functionals tie at the maximum.
std::vector<double> polar_polytope_kinks(const shape::SymmetricPolytope& P) {
  std::vector<double> out;
  const auto& vs = P.vertices;
  auto dual = [&](double c, double s) {
    double best = 0.0;
    for (const auto& v : vs) best = std::max(best, std::abs(v[0] * c + v[1] * s));
    return best;
  };
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      for (double sgn : {1.0, -1.0}) {
        const double dx = vs[i][0] - sgn * vs[j][0];
        const double dy = vs[i][1] - sgn * vs[j][1];
        if (std::hypot(dx, dy) < 1e-14) continue;
        const double th = std::atan2(dx, -dy);  // perpendicular to (dx, dy)
        for (double t : {th, th + kPi}) {
          const double c = std::cos(t), s = std::sin(t);
          const double vi = std::abs(vs[i][0] * c + vs[i][1] * s);
          const double best = dual(c, s);
          if (best > 0.0 && vi >= best * (1.0 - 1e-12)) out.push_back(t);
        }
      }
    }
  }
  sort_unique_angles(out);
  return out;
}

std::vector<double> body_polytope_kinks(const shape::SymmetricPolytope& P) {
  std::vector<double> out;
  for (const auto& v : P.vertices) out.push_back(std::atan2(v[1], v[0]));
  sort_unique_angles(out);
  return out;
}

// Composite Gauss-Legendre over a full circle with panels between kinks.
void angular_nodes(const std::vector<double>& kinks, int angular, std::vector<double>& th, std::vector<double>& w) {
  th.clear();
  w.clear();
  if (kinks.empty()) {
    for (int k = 0; k < angular; ++k) {
      th.push_back(kTwoPi * k / angular);
      w.push_back(kTwoPi / angular);
    }
    return;
  }
  const std::size_t K = kinks.size();
  for (std::size_t i = 0; i < K; ++i) {
    const double a = kinks[i];
    const double b = i + 1 < K ? kinks[i + 1] : kinks[0] + kTwoPi;
    const int pts = std::max(4, static_cast<int>(std::ceil(angular * (b - a) / kTwoPi)));
    const auto g = gauss_legendre(pts);
    for (int k = 0; k < pts; ++k) {
      th.push_back(0.5 * (a + b) + 0.5 * (b - a) * g.x[static_cast<std::size_t>(k)]);
      w.push_back(0.5 * (b - a) * g.w[static_cast<std::size_t>(k)]);
    }
  }
}

void panel_gauss(double a, double b, int pts, std::vector<double>& x, std::vector<double>& w) {
  const auto g = gauss_legendre(pts);
  for (int k = 0; k < pts; ++k) {
    x.push_back(0.5 * (a + b) + 0.5 * (b - a) * g.x[static_cast<std::size_t>(k)]);
    w.push_back(0.5 * (b - a) * g.w[static_cast<std::size_t>(k)]);
  }
}

std::vector<double> lobatto_unit(int k) {
  // Chebyshev-Lobatto points on [0, 1], 0 and 1 included.
  std::vector<double> r(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) r[static_cast<std::size_t>(i)] = 0.5 * (1.0 - std::cos(kPi * i / (k - 1)));
  r.front() = 0.0;
  r.back() = 1.0;
  return r;
}

void tensor_fill(int m, const std::vector<std::vector<double>>& axes, const std::vector<std::vector<double>>* wts,
                 std::vector<Point>& nodes, std::vector<double>* weights) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  for (;;) {
    Point p(static_cast<std::size_t>(m));
    double w = 1.0;
    for (int j = 0; j < m; ++j) {
      p[static_cast<std::size_t>(j)] = axes[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
      if (wts) w *= (*wts)[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
    }
    nodes.push_back(std::move(p));
    if (weights) weights->push_back(w);
    int j = m - 1;
    while (j >= 0) {
      auto& i = idx[static_cast<std::size_t>(j)];
      if (++i < axes[static_cast<std::size_t>(j)].size()) break;
      i = 0;
      --j;
    }
    if (j < 0) break;
  }
}

void check_dimension(int m, const char* what) {
  if (m < 1 || m > 3)
    throw ConfigError(std::string(what) + ": dimension m=" + std::to_string(m) + " is not supported (1 <= m <= 3)");
}

double sum_pairwise_range(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return sum_pairwise_range(v, h) + sum_pairwise_range(v + h, n - h);
}

std::string node_text(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) s += ", ";
    s += format_double(x[j]);
  }
  return s + ")";
}

}  // namespace

GaussRule gauss_legendre(int k) {
  if (k < 1) throw InputError("gauss_legendre: need at least one node");
  GaussRule g;
  g.x.resize(static_cast<std::size_t>(k));
  g.w.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < (k + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (k == 1) p0 = 1.0;
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= k; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = k == 1 ? 1.0 : k * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.x[static_cast<std::size_t>(i)] = -x;
    g.x[static_cast<std::size_t>(k - 1 - i)] = x;
    g.w[static_cast<std::size_t>(i)] = w;
    g.w[static_cast<std::size_t>(k - 1 - i)] = w;
  }
  if (k % 2 == 1) g.x[static_cast<std::size_t>(k / 2)] = 0.0;
  return g;
}

StarDomain polar_domain(const ConvexBody& V) {
  StarDomain d;
  d.m = V.dimension();
  d.gauge = [V](std::span<const double> y) { return dual_norm(y, V); };
  for (int j = 0; j < d.m; ++j) {
    std::vector<double> e(static_cast<std::size_t>(d.m), 0.0);
    e[static_cast<std::size_t>(j)] = 1.0;
    d.half_widths.push_back(gauge(e, V));
  }
  d.description = "polar of " + V.spec();
  d.is_box = d.m == 1;
  d.octant_smooth = true;
  std::visit(overloaded{
                 [&](const shape::LpBall& s) {
                   if (s.mu == 1.0) d.is_box = true;
                   else d.kinks = axis_kinks();
                 },
                 [&](const shape::Parallelepiped&) { d.kinks = axis_kinks(); },
                 [&](const shape::Cube&) { d.kinks = axis_kinks(); },
                 [&](const shape::EuclideanBall&) {},
                 [&](const shape::SymmetricPolytope& s) {
                   d.octant_smooth = false;
                   if (d.m == 2) d.kinks = polar_polytope_kinks(s);
                 },
             },
             V.shape());
  if (d.m != 2) d.kinks.clear();
  return d;
}

StarDomain body_domain(const ConvexBody& V) {
  StarDomain d;
  d.m = V.dimension();
  d.gauge = [V](std::span<const double> t) { return gauge(t, V); };
  for (int j = 0; j < d.m; ++j) {
    std::vector<double> e(static_cast<std::size_t>(d.m), 0.0);
    e[static_cast<std::size_t>(j)] = 1.0;
    d.half_widths.push_back(dual_norm(e, V));
  }
  d.description = V.spec();
  d.is_box = d.m == 1;
  d.octant_smooth = true;
  std::visit(overloaded{
                 [&](const shape::LpBall& s) {
                   if (std::isinf(s.mu)) d.is_box = true;
                   else d.kinks = axis_kinks();
                 },
                 [&](const shape::Parallelepiped&) { d.is_box = true; },
                 [&](const shape::Cube&) { d.is_box = true; },
                 [&](const shape::EuclideanBall&) {},
                 [&](const shape::SymmetricPolytope& s) {
                   d.octant_smooth = false;
                   if (d.m == 2) d.kinks = body_polytope_kinks(s);
                 },
             },
             V.shape());
  if (d.m != 2) d.kinks.clear();
  return d;
}

StarDomain box_domain(std::vector<double> half_widths) {
  if (half_widths.empty()) throw InputError("box_domain: empty half-width list");
  for (double h : half_widths)
    if (!(h > 0.0) || !std::isfinite(h)) throw InputError("box_domain: half-widths must be positive");
  StarDomain d;
  d.m = static_cast<int>(half_widths.size());
  d.half_widths = half_widths;
  d.gauge = [h = std::move(half_widths)](std::span<const double> x) {
    double g = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) g = std::max(g, std::abs(x[j]) / h[j]);
    return g;
  };
  d.is_box = true;
  d.octant_smooth = true;
  std::string s = "box:";
  for (std::size_t j = 0; j < d.half_widths.size(); ++j) s += (j ? "," : "") + format_double(d.half_widths[j]);
  d.description = s;
  return d;
}

double QuadratureRule::mass() const { return pairwise_sum(weights); }

QuadratureRule build_rule(const StarDomain& domain, int radial_points, int angular_points) {
  const int m = domain.m;
  check_dimension(m, "build_rule");
  if (radial_points < 8) throw InputError("build_rule: radial_points must be at least 8");
  if (angular_points < 8 && !domain.is_box) throw InputError("build_rule: angular_points must be at least 8");

  QuadratureRule rule;
  rule.m = m;
  rule.kind = DomainKind::Body;
  rule.domain = domain.description;
  rule.resolution.radial = radial_points;
  rule.resolution.angular = angular_points;

  if (domain.is_box) {
    std::vector<double> lo, hi;
    for (double h : domain.half_widths) {
      lo.push_back(-h);
      hi.push_back(h);
    }
    auto box = build_rule_box(lo, hi, radial_points);
    box.kind = DomainKind::Body;
    box.domain = domain.description;
    box.resolution.radial = radial_points;
    box.resolution.angular = 0;
    return box;
  }

  const auto g = gauss_legendre(radial_points);
  auto add_ray = [&](std::span<const double> u, double ang_weight) {
    const double g_u = domain.gauge(u);
    if (!(g_u > 0.0) || !std::isfinite(g_u)) throw InternalError("build_rule: gauge is not positive on a direction");
    const double rstar = 1.0 / g_u;
    for (int k = 0; k < radial_points; ++k) {
      const double r = 0.5 * rstar * (1.0 + g.x[static_cast<std::size_t>(k)]);
      const double wr = 0.5 * rstar * g.w[static_cast<std::size_t>(k)] * std::pow(r, m - 1);
      Point p(u.begin(), u.end());
      for (auto& x : p) x *= r;
      rule.nodes.push_back(std::move(p));
      rule.weights.push_back(wr * ang_weight);
    }
  };

  if (m == 2) {
    std::vector<double> th, w;
    angular_nodes(domain.kinks, angular_points, th, w);
    for (std::size_t i = 0; i < th.size(); ++i) {
      const double u[2] = {std::cos(th[i]), std::sin(th[i])};
      add_ray(u, w[i]);
    }
  } else {
    std::vector<double> th, wth, ph, wph;
    if (domain.octant_smooth) {
      const int q = std::max(4, (angular_points + 3) / 4);
      for (int k = 0; k < 4; ++k) panel_gauss(0.5 * kPi * k, 0.5 * kPi * (k + 1), q, th, wth);
      panel_gauss(0.0, 0.5 * kPi, q, ph, wph);
      panel_gauss(0.5 * kPi, kPi, q, ph, wph);
    } else {
      angular_nodes({}, angular_points, th, wth);
      panel_gauss(0.0, kPi, std::max(4, angular_points / 2), ph, wph);
    }
    for (std::size_t a = 0; a < ph.size(); ++a) {
      const double s = std::sin(ph[a]), c = std::cos(ph[a]);
      for (std::size_t b = 0; b < th.size(); ++b) {
        const double u[3] = {s * std::cos(th[b]), s * std::sin(th[b]), c};
        add_ray(u, wph[a] * s * wth[b]);
      }
    }
  }
  return rule;
}

QuadratureRule build_rule_body(const ConvexBody& V, int radial_points, int angular_points) {
  return build_rule(polar_domain(V), radial_points, angular_points);
}

QuadratureRule build_rule_box(std::span<const double> lo, std::span<const double> hi, int points_per_axis) {
  if (lo.size() != hi.size() || lo.empty()) throw InputError("build_rule_box: bound lists must match and be nonempty");
  if (points_per_axis < 1) throw InputError("build_rule_box: need at least one point per axis");
  const int m = static_cast<int>(lo.size());
  check_dimension(m, "build_rule_box");
  const auto g = gauss_legendre(points_per_axis);
  std::vector<std::vector<double>> axes, wts;
  for (int j = 0; j < m; ++j) {
    const double a = lo[static_cast<std::size_t>(j)], b = hi[static_cast<std::size_t>(j)];
    if (!(b > a)) throw InputError("build_rule_box: each interval needs lo < hi");
    std::vector<double> x, w;
    for (int k = 0; k < points_per_axis; ++k) {
      x.push_back(0.5 * (a + b) + 0.5 * (b - a) * g.x[static_cast<std::size_t>(k)]);
      w.push_back(0.5 * (b - a) * g.w[static_cast<std::size_t>(k)]);
    }
    axes.push_back(std::move(x));
    wts.push_back(std::move(w));
  }
  QuadratureRule rule;
  rule.m = m;
  rule.kind = DomainKind::Cube;
  std::ostringstream desc;
  desc << "box";
  for (int j = 0; j < m; ++j)
    desc << (j ? "x" : ":") << "[" << format_double(lo[static_cast<std::size_t>(j)]) << ","
         << format_double(hi[static_cast<std::size_t>(j)]) << "]";
  rule.domain = desc.str();
  rule.resolution.per_axis.assign(static_cast<std::size_t>(m), points_per_axis);
  tensor_fill(m, axes, &wts, rule.nodes, &rule.weights);
  return rule;
}

QuadratureRule build_rule_torus(int m, int points_per_axis) {
  check_dimension(m, "build_rule_torus");
  if (points_per_axis < 1) throw InputError("build_rule_torus: need at least one point per axis");
  std::vector<double> x, w;
  for (int k = 0; k < points_per_axis; ++k) {
    x.push_back(-kPi + kTwoPi * k / points_per_axis);
    w.push_back(kTwoPi / points_per_axis);
  }
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(m), x), wts(static_cast<std::size_t>(m), w);
  QuadratureRule rule;
  rule.m = m;
  rule.kind = DomainKind::Torus;
  rule.domain = "torus:" + std::to_string(m);
  rule.resolution.per_axis.assign(static_cast<std::size_t>(m), points_per_axis);
  tensor_fill(m, axes, &wts, rule.nodes, &rule.weights);
  return rule;
}

QuadratureRule scaled_rule(const QuadratureRule& rule, double c, std::span<const double> shift) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InputError("scaled_rule: factor must be positive");
  if (!shift.empty() && static_cast<int>(shift.size()) != rule.m) throw InputError("scaled_rule: shift dimension mismatch");
  QuadratureRule out = rule;
  const double wscale = std::pow(c, rule.m);
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    for (int j = 0; j < rule.m; ++j) {
      auto& x = out.nodes[i][static_cast<std::size_t>(j)];
      x = c * x + (shift.empty() ? 0.0 : shift[static_cast<std::size_t>(j)]);
    }
    out.weights[i] *= wscale;
  }
  out.domain = format_double(c) + "*(" + rule.domain + ")";
  if (!shift.empty()) out.domain += "+" + node_text(shift);
  return out;
}

std::vector<Point> sup_grid(const StarDomain& domain, int radial_points, int angular_points) {
  const int m = domain.m;
  check_dimension(m, "sup_grid");
  if (radial_points < 2) throw InputError("sup_grid: need at least two radial points");
  std::vector<Point> out;
  const auto r01 = lobatto_unit(radial_points);

  if (domain.is_box) {
    std::vector<std::vector<double>> axes;
    for (double h : domain.half_widths) {
      std::vector<double> x;
      for (double r : r01) x.push_back(h * (2.0 * r - 1.0));
      axes.push_back(std::move(x));
    }
    tensor_fill(m, axes, nullptr, out, nullptr);
    return out;
  }

  out.emplace_back(static_cast<std::size_t>(m), 0.0);
  auto add_ray = [&](std::span<const double> u) {
    const double rstar = 1.0 / domain.gauge(u);
    for (std::size_t k = 1; k < r01.size(); ++k) {
      Point p(u.begin(), u.end());
      for (auto& x : p) x *= rstar * r01[k];
      out.push_back(std::move(p));
    }
  };
  if (m == 2) {
    std::vector<double> th;
    for (int k = 0; k < angular_points; ++k) th.push_back(kTwoPi * k / angular_points);
    th.insert(th.end(), domain.kinks.begin(), domain.kinks.end());
    sort_unique_angles(th);
    for (double t : th) {
      const double u[2] = {std::cos(t), std::sin(t)};
      add_ray(u);
    }
  } else {
    const int n_phi = std::max(4, angular_points / 2);
    std::vector<double> ph;
    for (int i = 0; i <= n_phi; ++i) ph.push_back(kPi * i / n_phi);
    ph.push_back(0.5 * kPi);
    std::sort(ph.begin(), ph.end());
    ph.erase(std::unique(ph.begin(), ph.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), ph.end());
    std::vector<double> th;
    for (int k = 0; k < angular_points; ++k) th.push_back(kTwoPi * k / angular_points);
    const auto ax = axis_kinks();
    th.insert(th.end(), ax.begin(), ax.end());
    sort_unique_angles(th);
    for (double p : ph) {
      const bool pole = std::abs(std::sin(p)) < 1e-14;
      for (std::size_t b = 0; b < (pole ? 1 : th.size()); ++b) {
        const double u[3] = {pole ? 0.0 : std::sin(p) * std::cos(th[b]), pole ? 0.0 : std::sin(p) * std::sin(th[b]),
                             std::cos(p)};
        add_ray(u);
      }
    }
  }
  return out;
}

MassEstimate monte_carlo_volume(const StarDomain& domain, int samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("monte_carlo_volume: need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double box = 1.0;
  for (double h : domain.half_widths) box *= 2.0 * h;
  long hits = 0;
  Point x(static_cast<std::size_t>(domain.m));
  for (int s = 0; s < samples; ++s) {
    for (int j = 0; j < domain.m; ++j) x[static_cast<std::size_t>(j)] = domain.half_widths[static_cast<std::size_t>(j)] * unit(rng);
    if (domain.gauge(x) <= 1.0) ++hits;
  }
  const double f = static_cast<double>(hits) / samples;
  return {box * f, box * std::sqrt(f * (1.0 - f) / samples)};
}

double pairwise_sum(std::span<const double> v) { return sum_pairwise_range(v.data(), v.size()); }

double lp_quasinorm_values(std::span<const double> abs_values, std::span<const double> weights, double p) {
  if (!(p > 0.0)) throw InputError("lp_quasinorm: p must be positive");
  if (abs_values.size() != weights.size()) throw InputError("lp_quasinorm: value and weight counts differ");
  double big = 0.0;
  for (double a : abs_values) big = std::max(big, a);
  if (std::isinf(p) || big == 0.0) return big;
  std::vector<double> terms(abs_values.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = weights[i] * std::pow(abs_values[i] / big, p);
  return big * std::pow(pairwise_sum(terms), 1.0 / p);
}

QuasinormValue lp_quasinorm(const PointFunction& F, const QuadratureRule& rule, double p,
                            const QuadratureRule* reference) {
  if (!(p > 0.0)) throw InputError("lp_quasinorm: p must lie in (0, inf]");
  auto values = [&](const QuadratureRule& r) {
    std::vector<double> a(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto v = F(r.nodes[i]);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw EvaluationError("non-finite function value at node " + node_text(r.nodes[i]));
      a[i] = std::abs(v);
    }
    return a;
  };
  QuasinormValue out;
  out.p = p;
  out.domain = rule.domain;
  out.value = lp_quasinorm_values(values(rule), rule.weights, p);
  if (reference) out.estimated_error = std::abs(out.value - lp_quasinorm_values(values(*reference), reference->weights, p));
  return out;
}

bool quasinorm_triangle_check(const PointFunction& F, const PointFunction& G, const QuadratureRule& rule, double p) {
  const double q = std::min(1.0, p);
  const double f = lp_quasinorm(F, rule, p).value;
  const double g = lp_quasinorm(G, rule, p).value;
  const double fg = lp_quasinorm([&](std::span<const double> x) { return F(x) + G(x); }, rule, p).value;
  return std::pow(fg, q) <= std::pow(f, q) + std::pow(g, q) + 1e-10;
}

double sup_abs_1d(const std::function<double(double)>& f, double a, double b, int grid) {
  if (!(b > a) || grid < 3) throw InputError("sup_abs_1d: need a < b and grid >= 3");
  std::vector<double> x(static_cast<std::size_t>(grid)), v(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    x[static_cast<std::size_t>(i)] = a + (b - a) * i / (grid - 1);
    v[static_cast<std::size_t>(i)] = std::abs(f(x[static_cast<std::size_t>(i)]));
  }
  double best = *std::max_element(v.begin(), v.end());
  std::vector<int> peaks;
  for (int i = 1; i + 1 < grid; ++i)
    if (v[static_cast<std::size_t>(i)] >= v[static_cast<std::size_t>(i - 1)] &&
        v[static_cast<std::size_t>(i)] >= v[static_cast<std::size_t>(i + 1)])
      peaks.push_back(i);
  std::sort(peaks.begin(), peaks.end(),
            [&](int i, int j) { return v[static_cast<std::size_t>(i)] > v[static_cast<std::size_t>(j)]; });
  if (peaks.size() > 8) peaks.resize(8);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i : peaks) {
    double lo = x[static_cast<std::size_t>(i - 1)], hi = x[static_cast<std::size_t>(i + 1)];
    double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
    double fc = std::abs(f(c)), fd = std::abs(f(d));
    for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
      if (fc > fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - phi * (hi - lo);
        fc = std::abs(f(c));
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + phi * (hi - lo);
        fd = std::abs(f(d));
      }
    }
    best = std::max({best, fc, fd});
  }
  return best;
}

}  // namespace sharpconst
