#include "sharpconst/sharp_constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sharpconst/errors.hpp"
#include "sharpconst/lp_solver.hpp"

namespace sharpconst {

namespace {

constexpr double kStagnation = 1e-9;
constexpr int kMaxIrlsIterations = 4000;
constexpr int kMaxExchangeRounds = 60;
constexpr int kCandidatesForP = 8;
constexpr double kViolation = 1.0 + 1e-10;

void check_p(double p) {
  if (!(p > 0.0)) throw InputError("p must lie in (0, inf]");
}

bool is_real(const Eigen::VectorXcd& L) { return L.imag().cwiseAbs().maxCoeff() == 0.0; }

// ---------------------------------------------------------------- Gram / WLS

// QR of diag(sqrt w) A; solves min sum w |A c|^2 subject to L^T c = 1.
class WeightedLs {
 public:
  WeightedLs(const Eigen::MatrixXd& A, const Eigen::VectorXd& w) {
    const Eigen::MatrixXd B = w.cwiseSqrt().asDiagonal() * A;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
    const Eigen::Index K = A.cols();
    if (B.rows() < K) throw DegenerateRuleError("fewer quadrature nodes than basis functions");
    R_ = qr.matrixQR().topLeftCorner(K, K).triangularView<Eigen::Upper>();
    const Eigen::VectorXd d = R_.diagonal().cwiseAbs();
    if (!(d.minCoeff() > 1e-13 * d.maxCoeff()))
      throw DegenerateRuleError("singular Gram matrix: the rule does not separate the basis (raise the resolution)");
  }

  // z = R^{-T} conj(L); ||z||^2 = L^H G^{-1} L.
  Eigen::VectorXcd half_solve(const Eigen::VectorXcd& L) const {
    const Eigen::MatrixXcd Rc = R_.cast<Complex>();
    return Rc.transpose().triangularView<Eigen::Lower>().solve(L.conjugate());
  }
  Eigen::VectorXcd back_solve(const Eigen::VectorXcd& z) const {
    const Eigen::MatrixXcd Rc = R_.cast<Complex>();
    return Rc.triangularView<Eigen::Upper>().solve(z);
  }
  const Eigen::MatrixXd& R() const { return R_; }

  // Minimizer with L^T c = 1.
  Eigen::VectorXcd constrained_min(const Eigen::VectorXcd& L) const {
    const Eigen::VectorXcd z = half_solve(L);
    return back_solve(z) / z.squaredNorm();
  }

 private:
  Eigen::MatrixXd R_;
};

double objective(const Eigen::MatrixXd& A, const Eigen::VectorXd& W, const Eigen::VectorXcd& c, double p) {
  const Eigen::VectorXcd r = A * c;
  std::vector<double> a(static_cast<std::size_t>(r.size())), w(W.data(), W.data() + W.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) a[static_cast<std::size_t>(i)] = std::abs(r(i));
  return lp_quasinorm_values(a, w, p);
}

DiscreteSolution gram(const Eigen::MatrixXd& A, const Eigen::VectorXd& W, const Eigen::VectorXcd& L) {
  WeightedLs ls(A, W);
  const Eigen::VectorXcd z = ls.half_solve(L);
  DiscreteSolution s;
  s.value = z.norm();
  s.method = Method::GramP2;
  s.coeffs = s.value > 0.0 ? Eigen::VectorXcd(ls.back_solve(z) / s.value) : Eigen::VectorXcd::Zero(L.size());
  return s;
}

// ---------------------------------------------------------------- IRLS

struct MmOutcome {
  Eigen::VectorXcd c;  // L^T c = 1
  double norm;         // ||A c||_p
  int iterations;
};

// p < 2: majorize-minimize on sum W (|r|^2 + eps)^{p/2} with eps annealed to
// zero. p > 2: Newton steps (c_wls - c) / (p - 1) with backtracking.
MmOutcome irls_from(const Eigen::MatrixXd& A, const Eigen::VectorXd& W, const Eigen::VectorXcd& L, double p,
                    Eigen::VectorXcd c) {
  MmOutcome best{c, objective(A, W, c, p), 0};
  int it = 0;
  Eigen::VectorXcd r = A * c;
  double scale = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) scale += W(i) * std::norm(r(i));
  scale /= W.sum();
  if (!(scale > 0.0)) scale = 1.0;
  const double eps_min = 1e-15 * scale;
  double eps = p < 2.0 ? 1e-2 * scale : 0.0;

  auto smoothed = [&](const Eigen::VectorXcd& rr) {
    std::vector<double> t(static_cast<std::size_t>(rr.size()));
    for (Eigen::Index i = 0; i < rr.size(); ++i) t[static_cast<std::size_t>(i)] = W(i) * std::pow(std::norm(rr(i)) + eps, 0.5 * p);
    return pairwise_sum(t);
  };

  double F = p < 2.0 ? smoothed(r) : std::pow(best.norm, p);
  while (it < kMaxIrlsIterations) {
    ++it;
    Eigen::VectorXd w(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const double s = std::norm(r(i)) + eps;
      w(i) = W(i) * (s > 0.0 ? std::pow(s, 0.5 * p - 1.0) : 0.0);
    }
    Eigen::VectorXcd cw;
    try {
      cw = WeightedLs(A, w).constrained_min(L);
    } catch (const DegenerateRuleError&) {
      break;  // weights collapsed onto too few nodes
    }
    Eigen::VectorXcd c_new;
    double F_new;
    if (p < 2.0) {
      c_new = cw;
      F_new = smoothed(A * c_new);
    } else {
      double t = 1.0 / (p - 1.0);
      for (;;) {
        c_new = c + t * (cw - c);
        F_new = std::pow(objective(A, W, c_new, p), p);
        if (F_new <= F || t < 1e-6) break;
        t *= 0.5;
      }
    }
    const double rel = std::abs(F - F_new) / std::max(std::abs(F), 1e-300);
    const bool improved = F_new <= F;
    if (improved || p < 2.0) {
      c = c_new;
      r = A * c;
      F = F_new;
      const double nv = objective(A, W, c, p);
      if (nv < best.norm) best = {c, nv, it};
    }
    if (rel < kStagnation || !improved) {
      if (p < 2.0 && eps > eps_min) {
        eps = std::max(eps * 1e-2, eps_min);
        F = smoothed(r);
        continue;
      }
      break;
    }
  }
  best.iterations = it;
  return best;
}

Eigen::VectorXcd random_feasible(const Eigen::VectorXcd& L, bool complex_entries, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::VectorXcd c(L.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      const double re = z(rng);
      const double im = complex_entries ? z(rng) : 0.0;
      c(i) = Complex(re, im);
    }
    const Complex t = L.transpose() * c;
    if (std::abs(t) > 1e-3 * L.norm() * c.norm()) return c / t;
  }
  throw InternalError("could not draw a start point off the null hyperplane of L");
}

DiscreteSolution finish(const Eigen::VectorXcd& c, double norm, Method method, int iterations, int restarts) {
  DiscreteSolution s;
  s.value = 1.0 / norm;
  s.coeffs = c / norm;  // unit norm, functional value 1 / norm
  s.method = method;
  s.iterations = iterations;
  s.restarts = restarts;
  return s;
}

DiscreteSolution irls(const Eigen::MatrixXd& A, const Eigen::VectorXd& W, const Eigen::VectorXcd& L, double p,
                      const SolveOptions& options) {
  const Eigen::VectorXcd c0 = WeightedLs(A, W).constrained_min(L);
  if (p >= 1.0) {
    auto out = irls_from(A, W, L, p, c0);
    return finish(out.c, out.norm, Method::Irls, out.iterations, 0);
  }
  std::mt19937_64 rng(options.seed);
  auto best = irls_from(A, W, L, p, c0);
  int total = best.iterations;
  const bool cplx = !options.real_coefficients && !is_real(L);
  for (int k = 0; k < options.restarts; ++k) {
    auto out = irls_from(A, W, L, p, random_feasible(L, cplx, rng));
    total += out.iterations;
    if (out.norm < best.norm) best = out;
  }
  return finish(best.c, best.norm, Method::Multistart, total, options.restarts);
}

// ---------------------------------------------------------------- complex Newton

// Minimize sum W (|A(u + iv)|^2 + eps)^{p/2} subject to L^T (u + iv) = 1 by
// equality-constrained Newton in R^{2K}, annealing eps.
DiscreteSolution newton_complex(const Eigen::MatrixXd& A, const Eigen::VectorXd& W, const Eigen::VectorXcd& L, double p,
                                const SolveOptions& options) {
  if (!(p > 1.0) || std::isinf(p)) throw InputError("complex Newton solver needs 1 < p < inf");
  const Eigen::Index K = A.cols();
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  Eigen::VectorXcd c = random_feasible(L, true, rng);
  Eigen::VectorXd u = c.real(), v = c.imag();

  Eigen::MatrixXd C(2, 2 * K);
  C.row(0) << L.real().transpose(), -L.imag().transpose();
  C.row(1) << L.imag().transpose(), L.real().transpose();

  auto F_of = [&](const Eigen::VectorXd& uu, const Eigen::VectorXd& vv, double eps) {
    const Eigen::VectorXd x = A * uu, y = A * vv;
    std::vector<double> t(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i)
      t[static_cast<std::size_t>(i)] = W(i) * std::pow(x(i) * x(i) + y(i) * y(i) + eps, 0.5 * p);
    return pairwise_sum(t);
  };

  double scale = 0.0;
  {
    const Eigen::VectorXd x = A * u, y = A * v;
    scale = (W.array() * (x.array().square() + y.array().square())).sum() / W.sum();
  }
  double eps = 1e-1 * scale;
  const double eps_min = 1e-16 * scale;
  int it = 0;
  for (;;) {
    for (int inner = 0; inner < 200; ++inner, ++it) {
      const Eigen::VectorXd x = A * u, y = A * v;
      Eigen::VectorXd gx(x.size()), gy(x.size()), hxx(x.size()), hyy(x.size()), hxy(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double s = x(i) * x(i) + y(i) * y(i) + eps;
        const double a = W(i) * p * std::pow(s, 0.5 * p - 1.0);
        const double b = a * (p - 2.0) / s;
        gx(i) = a * x(i);
        gy(i) = a * y(i);
        hxx(i) = a + b * x(i) * x(i);
        hyy(i) = a + b * y(i) * y(i);
        hxy(i) = b * x(i) * y(i);
      }
      Eigen::VectorXd g(2 * K);
      g << A.transpose() * gx, A.transpose() * gy;
      Eigen::MatrixXd KKT = Eigen::MatrixXd::Zero(2 * K + 2, 2 * K + 2);
      KKT.block(0, 0, K, K) = A.transpose() * hxx.asDiagonal() * A;
      KKT.block(K, K, K, K) = A.transpose() * hyy.asDiagonal() * A;
      KKT.block(0, K, K, K) = A.transpose() * hxy.asDiagonal() * A;
      KKT.block(K, 0, K, K) = KKT.block(0, K, K, K).transpose();
      KKT.block(2 * K, 0, 2, 2 * K) = C;
      KKT.block(0, 2 * K, 2 * K, 2) = C.transpose();
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * K + 2);
      rhs.head(2 * K) = -g;
      const Eigen::VectorXd sol = KKT.fullPivLu().solve(rhs);
      const Eigen::VectorXd du = sol.head(K), dv = sol.segment(K, K);
      const double decrement = -g.dot(sol.head(2 * K));
      const double F = F_of(u, v, eps);
      if (!(decrement > 1e-15 * F)) break;
      double t = 1.0;
      while (t > 1e-12 && F_of(u + t * du, v + t * dv, eps) > F - 1e-4 * t * decrement) t *= 0.5;
      if (t <= 1e-12) break;
      u += t * du;
      v += t * dv;
    }
    if (eps <= eps_min) break;
    eps = std::max(eps * 1e-2, eps_min);
  }
  c = u.cast<Complex>() + Complex(0.0, 1.0) * v.cast<Complex>();
  return finish(c, objective(A, W, c, p), Method::NewtonComplex, it, 0);
}

// ---------------------------------------------------------------- phase scan

// sup over real c of |L^T c| / N(c) = max_phi of the real problem for Re(e^{-i phi} L).
template <class Solve>
DiscreteSolution phase_scan(const Eigen::VectorXcd& L, Solve&& solve_real) {
  auto at = [&](double phi) {
    const Eigen::VectorXcd Lr = (std::exp(Complex(0.0, -phi)) * L).real().cast<Complex>();
    return solve_real(Lr);
  };
  const int grid = 24;
  const double pi = std::numbers::pi;
  int best_k = 0;
  DiscreteSolution best = at(0.0);
  for (int k = 1; k < grid; ++k) {
    auto s = at(pi * k / grid);
    if (s.value > best.value) {
      best = s;
      best_k = k;
    }
  }
  double lo = pi * (best_k - 1) / grid, hi = pi * (best_k + 1) / grid;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  auto s1 = at(x1), s2 = at(x2);
  for (int it = 0; it < 40; ++it) {
    if (s1.value > s2.value) {
      hi = x2;
      x2 = x1;
      s2 = s1;
      x1 = hi - g * (hi - lo);
      s1 = at(x1);
    } else {
      lo = x1;
      x1 = x2;
      s1 = s2;
      x2 = lo + g * (hi - lo);
      s2 = at(x2);
    }
  }
  for (const auto* s : {&s1, &s2})
    if (s->value > best.value) best = *s;
  return best;
}

// ---------------------------------------------------------------- p = inf

struct SupSetup {
  std::vector<Point> candidates;
  std::vector<Point> check;
  bool refine_1d = false;
  double lo = -1.0, hi = 1.0;  // 1-D interval for refinement
};

// Local maxima of |P| on a sorted 1-D grid, polished by golden section.
std::vector<std::pair<double, double>> refine_maxima_1d(const Basis& basis, const Eigen::VectorXd& c,
                                                        const std::vector<double>& xs, double lo, double hi) {
  std::vector<double> row(static_cast<std::size_t>(basis.size()));
  auto f = [&](double x) {
    basis.eval(std::span<const double>(&x, 1), row);
    return std::abs(Eigen::Map<const Eigen::VectorXd>(row.data(), basis.size()).dot(c));
  };
  std::vector<double> v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = f(xs[i]);
  std::vector<std::pair<double, double>> out;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool left = i == 0 || v[i] >= v[i - 1];
    const bool right = i + 1 == xs.size() || v[i] >= v[i + 1];
    if (!(left && right)) continue;
    double a = i == 0 ? xs[i] : xs[i - 1], b = i + 1 == xs.size() ? xs[i] : xs[i + 1];
    a = std::max(a, lo);
    b = std::min(b, hi);
    if (b - a < 1e-15) {
      out.emplace_back(xs[i], v[i]);
      continue;
    }
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
      if (f1 > f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = f(x2);
      }
    }
    const double xm = f1 > f2 ? x1 : x2;
    out.emplace_back(xm, std::max({f1, f2, v[i]}));
  }
  return out;
}

DiscreteSolution solve_infinity(const Basis& basis, const Eigen::VectorXcd& Lc, const SupSetup& setup) {
  if (!is_real(Lc))
    throw ConfigError("p = inf supports real operator weights only (the linear program runs over real coefficients)");
  const Eigen::VectorXd L = Lc.real();
  std::vector<Point> active = setup.candidates;
  Eigen::MatrixXd A = basis.matrix(active);
  const Eigen::MatrixXd Acheck = basis.matrix(setup.check);
  std::vector<double> xs;
  if (setup.refine_1d) {
    for (const auto& p : setup.check) xs.push_back(p[0]);
    std::sort(xs.begin(), xs.end());
  }

  UnitRowLpResult lp;
  double peak = 0.0;
  int rounds = 0, iterations = 0;
  for (; rounds < kMaxExchangeRounds; ++rounds) {
    lp = maximize_under_unit_rows(A, L);
    iterations += lp.iterations;
    const Eigen::VectorXd vals = (Acheck * lp.x).cwiseAbs();
    std::vector<std::pair<double, Point>> viol;
    peak = (A * lp.x).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
      peak = std::max(peak, vals(i));
      if (vals(i) > kViolation) viol.emplace_back(vals(i), setup.check[static_cast<std::size_t>(i)]);
    }
    if (setup.refine_1d) {
      for (const auto& [x, fx] : refine_maxima_1d(basis, lp.x, xs, setup.lo, setup.hi)) {
        peak = std::max(peak, fx);
        if (fx > kViolation) viol.emplace_back(fx, Point{x});
      }
    }
    if (viol.empty()) break;
    std::sort(viol.begin(), viol.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    const std::size_t take = std::min(viol.size(), static_cast<std::size_t>(std::max(16, basis.size())));
    const Eigen::Index old = A.rows();
    A.conservativeResize(old + static_cast<Eigen::Index>(take), Eigen::NoChange);
    for (std::size_t k = 0; k < take; ++k) {
      active.push_back(viol[k].second);
      std::vector<double> row(static_cast<std::size_t>(basis.size()));
      basis.eval(viol[k].second, row);
      for (int b = 0; b < basis.size(); ++b) A(old + static_cast<Eigen::Index>(k), b) = row[static_cast<std::size_t>(b)];
    }
  }
  DiscreteSolution s;
  s.method = Method::LpInfinity;
  s.value = lp.value / peak;
  s.coeffs = (lp.x / peak).cast<Complex>();
  s.iterations = iterations;
  s.restarts = rounds;
  return s;
}

// ---------------------------------------------------------------- setups

Resolution defaults(int m, Resolution r) {
  if (r.radial <= 0) r.radial = 48;
  if (r.angular <= 0) r.angular = m == 3 ? 64 : 256;
  return r;
}

int max_total_degree(const ChebyshevBasis& b) {
  return b.mode() == DegreeMode::Total ? b.degree() : b.dimension() * b.degree();
}

Resolution effective(int m, int deg, double p, Resolution r) {
  r = defaults(m, r);
  if (p == 2.0) {
    r.radial = std::max(r.radial, deg + m + 1);
    r.angular = std::max(r.angular, 2 * deg + 8);
  } else {
    r.radial = std::max(r.radial, 4 * (deg + 1));
    r.angular = std::max(r.angular, 4 * (deg + 1));
  }
  return r;
}

Resolution doubled(Resolution r) {
  r.radial *= 2;
  r.angular *= 2;
  r.torus *= 2;
  return r;
}

// Coarse start set sized to the degree; the exchange pulls in violators from
// the fine check grid.
SupSetup star_sup_setup(const StarDomain& dom, const Resolution& r, int deg) {
  SupSetup s;
  s.candidates = sup_grid(dom, std::min(r.radial, 2 * (deg + 1)), std::min(r.angular, 4 * (deg + 1)));
  s.check = sup_grid(dom, 2 * r.radial - 1, 2 * r.angular);
  if (dom.m == 1) {
    s.refine_1d = true;
    s.lo = -dom.half_widths[0];
    s.hi = dom.half_widths[0];
  }
  return s;
}

struct RuleData {
  Eigen::MatrixXd A;
  Eigen::VectorXd w;
  std::size_t nodes;
};

RuleData rule_data(const Basis& basis, const QuadratureRule& rule) {
  return {basis.matrix(rule.nodes), Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size())),
          rule.size()};
}

void stamp_stability(SharpConstantResult& r, double coarse, double fine) {
  r.diagnostics.stability_delta = coarse == 0.0 ? std::abs(fine) : std::abs(fine - coarse) / std::abs(coarse);
  r.diagnostics.unstable = r.diagnostics.stability_delta > kStabilityGate;
}

double prefactor(int n, int N, int m, double p) {
  return std::pow(static_cast<double>(n), -N - (std::isinf(p) ? 0.0 : m / p));
}

struct PolarSolve {
  DiscreteSolution sol;
  Diagnostics diag;
};

PolarSolve polar_solve(const ChebyshevBasis& basis, const StarDomain& dom, const Eigen::VectorXcd& L, double p,
                       const Resolution& res, const SolveOptions& options) {
  PolarSolve out;
  out.diag.radial = res.radial;
  out.diag.angular = dom.m == 1 || dom.is_box ? 0 : res.angular;
  if (std::isinf(p)) {
    const auto setup = star_sup_setup(dom, res, max_total_degree(basis));
    out.diag.nodes = setup.candidates.size();
    out.sol = solve_infinity(basis, L, setup);
  } else {
    const auto rule = build_rule(dom, res.radial, res.angular);
    const auto data = rule_data(basis, rule);
    out.diag.nodes = data.nodes;
    out.sol = solve_finite_p(data.A, data.w, L, p, options);
  }
  out.diag.iterations = out.sol.iterations;
  out.diag.restarts = out.sol.restarts;
  return out;
}

SharpConstantResult package(const PolarSolve& ps, std::shared_ptr<const Basis> basis, const std::string& kind,
                            double pref, std::uint64_t seed) {
  SharpConstantResult r;
  r.kind = kind;
  r.raw_norm = ps.sol.value;
  r.value = pref * ps.sol.value;
  r.coeffs = ps.sol.coeffs;
  r.basis = std::move(basis);
  r.method = ps.sol.method;
  r.diagnostics = ps.diag;
  r.seed = seed;
  return r;
}

// sup over x0 in candidates of the point-evaluation norm; p = 2 closed form
// for all, the exact p-solver on the best few.
PolarSolve pointwise_sup(const Basis& basis, const RuleData& data, const std::vector<Point>& candidates, double p,
                         const SolveOptions& options) {
  WeightedLs ls(data.A, data.w);
  const Eigen::MatrixXd Phi = basis.matrix(candidates);
  const Eigen::MatrixXd Z = ls.R().transpose().triangularView<Eigen::Lower>().solve(Phi.transpose());
  const Eigen::VectorXd v2 = Z.colwise().norm();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(v2.size()));
  for (Eigen::Index i = 0; i < v2.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v2(a) > v2(b); });

  PolarSolve out;
  out.diag.nodes = data.nodes;
  const Eigen::Index top = order.front();
  if (p == 2.0) {
    out.sol = gram(data.A, data.w, Phi.row(top).transpose().cast<Complex>());
  } else {
    const std::size_t k = std::min<std::size_t>(kCandidatesForP, order.size());
    for (std::size_t i = 0; i < k; ++i) {
      auto s = solve_finite_p(data.A, data.w, Phi.row(order[i]).transpose().cast<Complex>(), p, options);
      out.diag.iterations += s.iterations;
      if (i == 0 || s.value > out.sol.value) out.sol = s;
    }
  }
  out.diag.restarts = out.sol.restarts;
  return out;
}

}  // namespace

std::string method_tag(Method m) {
  switch (m) {
    case Method::GramP2: return "gram-p2";
    case Method::LpInfinity: return "lp-infinity";
    case Method::Irls: return "irls";
    case Method::Multistart: return "multistart";
    case Method::NewtonComplex: return "newton-complex";
  }
  return "unknown";
}

nlohmann::json SharpConstantResult::extremal_json() const {
  if (!basis) return nullptr;
  return basis->to_json(coeffs);
}

DiscreteSolution solve_finite_p(const Eigen::MatrixXd& A, const Eigen::VectorXd& w, const Eigen::VectorXcd& L, double p,
                                const SolveOptions& options) {
  check_p(p);
  if (std::isinf(p)) throw InputError("solve_finite_p: p must be finite");
  if (A.cols() != L.size() || A.rows() != w.size()) throw InputError("solve_finite_p: size mismatch");
  if (L.norm() == 0.0) {
    DiscreteSolution s;
    s.coeffs = Eigen::VectorXcd::Zero(L.size());
    s.coeffs(0) = 1.0;
    s.method = p == 2.0 ? Method::GramP2 : Method::Irls;
    return s;
  }
  auto one = [&](const Eigen::VectorXcd& LL) -> DiscreteSolution {
    if (options.complex_newton) return newton_complex(A, w, LL, p, options);
    if (p == 2.0) return gram(A, w, LL);
    return irls(A, w, LL, p, options);
  };
  if (options.real_coefficients && !is_real(L)) {
    SolveOptions real = options;
    real.complex_newton = false;
    return phase_scan(L, [&](const Eigen::VectorXcd& LL) {
      if (p == 2.0) return gram(A, w, LL);
      return irls(A, w, LL, p, real);
    });
  }
  return one(L);
}

SharpConstantResult functional_norm(const ExtremalProblem& prob) {
  check_p(prob.p);
  const int m = prob.m();
  if (prob.D.dimension() != m) throw InputError("functional_norm: operator and body dimensions differ");
  if (prob.n < 0) throw InputError("functional_norm: n must be nonnegative");
  if (m > 3) throw ConfigError("functional_norm: dimension m=" + std::to_string(m) + " is not supported (m <= 3)");
  const auto dom = polar_domain(prob.V);
  auto basis = std::make_shared<ChebyshevBasis>(m, prob.n, dom.half_widths, prob.options.degree_mode);
  const Eigen::VectorXcd L = basis->functional(prob.D);
  const Resolution res = effective(m, max_total_degree(*basis), prob.p, prob.options.resolution);

  const auto base = polar_solve(*basis, dom, L, prob.p, res, prob.options);
  auto r = package(base, basis, "M", 1.0, prob.options.seed);
  if (prob.options.stability_check) {
    const auto fine = polar_solve(*basis, dom, L, prob.p, doubled(res), prob.options);
    stamp_stability(r, base.sol.value, fine.sol.value);
  }
  return r;
}

SharpConstantResult compute_M(double p, const DiffOperator& D, int n, const ConvexBody& V, const SolveOptions& options) {
  if (n < 1) throw InputError("compute_M: n must be at least 1");
  ExtremalProblem prob{p, D, n, V, options};
  auto r = functional_norm(prob);
  r.value = prefactor(n, D.order(), V.dimension(), p) * r.raw_norm;
  r.kind = "M";
  return r;
}

SharpConstantResult compute_P_trig(double p, const DiffOperator& D, double a, const ConvexBody& V,
                                   const SolveOptions& options) {
  check_p(p);
  const int m = V.dimension();
  if (m > 2) throw ConfigError("compute_P_trig: dimension m=" + std::to_string(m) + " is not supported (m <= 2)");
  if (D.dimension() != m) throw InputError("compute_P_trig: operator and body dimensions differ");
  auto basis = std::make_shared<TrigBasis>(TrigBasis::lattice(V, a));
  const Eigen::VectorXcd L = basis->functional(D);
  const int kmax = basis->max_frequency();
  int Q = options.resolution.torus;
  if (Q <= 0) Q = p == 2.0 ? 2 * kmax + 2 : std::max(64, 8 * (kmax + 1));
  Q = std::max(Q, 2 * kmax + 2);

  auto run = [&](int q) {
    PolarSolve ps;
    ps.diag.torus = q;
    if (std::isinf(p)) {
      SupSetup setup;
      setup.candidates = build_rule_torus(m, q).nodes;
      setup.check = build_rule_torus(m, 2 * q).nodes;
      if (m == 1) {
        setup.refine_1d = true;
        setup.lo = -std::numbers::pi;
        setup.hi = std::numbers::pi;
        setup.check.push_back(Point{std::numbers::pi});
      }
      ps.diag.nodes = setup.candidates.size();
      ps.sol = solve_infinity(*basis, L, setup);
    } else {
      const auto rule = build_rule_torus(m, q);
      const auto data = rule_data(*basis, rule);
      ps.diag.nodes = data.nodes;
      ps.sol = solve_finite_p(data.A, data.w, L, p, options);
    }
    ps.diag.iterations = ps.sol.iterations;
    ps.diag.restarts = ps.sol.restarts;
    return ps;
  };
  const auto base = run(Q);
  const double pref = std::pow(a, -D.order() - (std::isinf(p) ? 0.0 : m / p));
  auto r = package(base, basis, "P", pref, options.seed);
  if (options.stability_check) stamp_stability(r, base.sol.value, run(2 * Q).sol.value);
  return r;
}

SharpConstantResult compute_N_diff_metrics(double p, int n, const ConvexBody& Omega, double mu,
                                           const SolveOptions& options) {
  check_p(p);
  if (std::isinf(p)) throw InputError("compute_N_diff_metrics: p must be finite");
  if (n < 1) throw InputError("compute_N_diff_metrics: n must be at least 1");
  if (!(mu >= 0.0)) throw InputError("compute_N_diff_metrics: mu must be nonnegative");
  const int m = Omega.dimension();
  const auto dom = body_domain(Omega);
  auto basis = std::make_shared<ChebyshevBasis>(m, n, dom.half_widths, options.degree_mode);
  const Resolution res = effective(m, max_total_degree(*basis), p, options.resolution);

  auto run = [&](const Resolution& rr) {
    const auto rule = build_rule(dom, rr.radial, rr.angular);
    const auto data = rule_data(*basis, rule);
    auto ps = pointwise_sup(*basis, data, sup_grid(dom, rr.radial, rr.angular), p, options);
    ps.diag.radial = rr.radial;
    ps.diag.angular = dom.is_box ? 0 : rr.angular;
    return ps;
  };
  const auto base = run(res);
  auto r = package(base, basis, "N", std::pow(static_cast<double>(n), -mu), options.seed);
  if (options.stability_check) stamp_stability(r, base.sol.value, run(doubled(res)).sol.value);
  return r;
}

SharpConstantResult nikolskii_origin_constant(double p, int m, int n, double M, const SolveOptions& options) {
  check_p(p);
  if (std::isinf(p)) throw InputError("nikolskii_origin_constant: p must be finite");
  if (n < 1 || m < 1 || m > 3) throw InputError("nikolskii_origin_constant: need n >= 1 and 1 <= m <= 3");
  if (!(M > 0.0)) throw InputError("nikolskii_origin_constant: M must be positive");
  std::vector<double> h(static_cast<std::size_t>(m), M);
  auto basis = std::make_shared<ChebyshevBasis>(m, n, h, DegreeMode::Coordinate);
  const Eigen::VectorXcd L = basis->functional(DiffOperator::identity(m));
  auto run = [&](int per_axis) {
    std::vector<double> lo(static_cast<std::size_t>(m), -M), hi(static_cast<std::size_t>(m), M);
    const auto rule = build_rule_box(lo, hi, per_axis);
    const auto data = rule_data(*basis, rule);
    PolarSolve ps;
    ps.sol = solve_finite_p(data.A, data.w, L, p, options);
    ps.diag.radial = per_axis;
    ps.diag.nodes = data.nodes;
    ps.diag.iterations = ps.sol.iterations;
    ps.diag.restarts = ps.sol.restarts;
    return ps;
  };
  const int base_pts = std::max(defaults(m, options.resolution).radial, p == 2.0 ? n + 2 : 4 * (n + 1));
  const auto base = run(base_pts);
  auto r = package(base, basis, "N", std::pow(M / n, m / p), options.seed);
  if (options.stability_check) stamp_stability(r, base.sol.value, run(2 * base_pts).sol.value);
  return r;
}

SharpConstantResult nikolskii_subdomain_constant(double p, int n, const ConvexBody& V, double a, double eps,
                                                 const SolveOptions& options) {
  check_p(p);
  if (std::isinf(p)) throw InputError("nikolskii_subdomain_constant: p must be finite");
  if (n < 1) throw InputError("nikolskii_subdomain_constant: n must be at least 1");
  if (!(a > 0.0) || !(eps > 0.0)) throw InputError("nikolskii_subdomain_constant: a and eps must be positive");
  const int m = V.dimension();
  const auto dom = polar_domain(V);
  const double outer = a * (1.0 + eps);
  auto h = dom.half_widths;
  for (auto& v : h) v *= outer;
  auto basis = std::make_shared<ChebyshevBasis>(m, n, h, DegreeMode::Coordinate);
  const Resolution res = effective(m, m * n, p, options.resolution);
  auto run = [&](const Resolution& rr) {
    const auto rule = scaled_rule(build_rule(dom, rr.radial, rr.angular), outer);
    const auto data = rule_data(*basis, rule);
    auto cand = sup_grid(dom, rr.radial, rr.angular);
    for (auto& x : cand)
      for (auto& v : x) v *= a;
    auto ps = pointwise_sup(*basis, data, cand, p, options);
    ps.diag.radial = rr.radial;
    ps.diag.angular = dom.is_box ? 0 : rr.angular;
    return ps;
  };
  const auto base = run(res);
  auto r = package(base, basis, "N", std::pow(a / n, m / p), options.seed);
  if (options.stability_check) stamp_stability(r, base.sol.value, run(doubled(res)).sol.value);
  return r;
}

double rayleigh_ratio(const ExtremalProblem& prob, const SharpConstantResult& r) {
  if (!r.basis) throw InputError("rayleigh_ratio: result carries no basis");
  const auto dom = polar_domain(prob.V);
  const Eigen::VectorXcd L = r.basis->functional(prob.D);
  const Complex num = L.transpose() * r.coeffs;
  Resolution res;
  res.radial = r.diagnostics.radial;
  res.angular = std::max(r.diagnostics.angular, 8);
  double den = 0.0;
  if (std::isinf(prob.p)) {
    const auto setup = star_sup_setup(dom, res, 0);
    const Eigen::VectorXcd vals = r.basis->matrix(setup.check).cast<Complex>() * r.coeffs;
    den = vals.cwiseAbs().maxCoeff();
    if (setup.refine_1d && is_real(r.coeffs)) {
      std::vector<double> xs;
      for (const auto& p : setup.check) xs.push_back(p[0]);
      std::sort(xs.begin(), xs.end());
      for (const auto& [x, fx] : refine_maxima_1d(*r.basis, r.coeffs.real(), xs, setup.lo, setup.hi)) den = std::max(den, fx);
    }
  } else {
    const auto rule = build_rule(dom, res.radial, res.angular);
    den = objective(r.basis->matrix(rule.nodes), Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size())),
                    r.coeffs, prob.p);
  }
  return prefactor(prob.n, prob.D.order(), prob.m(), prob.p) * std::abs(num) / den;
}

ELimitEstimate estimate_E_limit(const std::vector<std::pair<int, double>>& values) {
  if (values.size() < 4) throw InputError("estimate_E_limit: need at least 4 entries");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].first < 1) throw InputError("estimate_E_limit: n must be positive");
    if (i > 0 && values[i].first <= values[i - 1].first) throw InputError("estimate_E_limit: n must be strictly increasing");
    if (!std::isfinite(values[i].second)) throw InputError("estimate_E_limit: non-finite value");
  }
  ELimitEstimate out;
  out.data = values;
  const std::size_t tail = (values.size() + 1) / 2;
  const std::size_t start = values.size() - tail;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = start; i < values.size(); ++i) {
    const double x = 1.0 / values[i].first, y = values[i].second;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(tail);
  const double det = k * sxx - sx * sx;
  out.slope = det != 0.0 ? (k * sxy - sx * sy) / det : 0.0;
  out.estimate = (sy - out.slope * sx) / k;
  double worst = 0.0, ymax = 0.0;
  for (std::size_t i = start; i < values.size(); ++i) {
    const double res = values[i].second - (out.estimate + out.slope / values[i].first);
    out.tail_residuals.push_back(res);
    worst = std::max(worst, std::abs(res));
    ymax = std::max(ymax, std::abs(values[i].second));
  }
  const double denom = out.estimate != 0.0 ? std::abs(out.estimate) : (ymax > 0.0 ? ymax : 1.0);
  out.oscillation = worst / denom;
  out.converged = out.oscillation <= 0.02;
  return out;
}

}  // namespace sharpconst
