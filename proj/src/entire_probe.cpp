#include "sharpconst/entire_probe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "sharpconst/errors.hpp"

namespace sharpconst {

namespace {

// Truncated Taylor series in t around a point: c[j] = f^{(j)} / j!.
using Jet = std::vector<double>;

Jet jet_mul(const Jet& a, const Jet& b) {
  Jet c(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Jet jet_div(const Jet& a, const Jet& b) {
  Jet c(a.size(), 0.0);
  for (std::size_t n = 0; n < a.size(); ++n) {
    double s = a[n];
    for (std::size_t j = 1; j <= n; ++j) s -= b[j] * c[n - j];
    c[n] = s / b[0];
  }
  return c;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// sin(u) / u at u = u0 + a t, to order d.
Jet sinc_jet(double u0, double a, int d) {
  const std::size_t len = static_cast<std::size_t>(d) + 1;
  if (std::abs(u0) < 0.5) {
    // Horner in u^2 over the even Taylor series of sin(u)/u.
    Jet u(len, 0.0);
    u[0] = u0;
    if (len > 1) u[1] = a;
    const Jet u2 = jet_mul(u, u);
    constexpr int kTerms = 16;
    Jet acc(len, 0.0);
    for (int i = kTerms; i >= 0; --i) {
      acc = jet_mul(acc, u2);
      acc[0] += (i % 2 ? -1.0 : 1.0) / factorial(2 * i + 1);
    }
    return acc;
  }
  Jet s(len), u(len, 0.0);
  double ap = 1.0;
  for (std::size_t j = 0; j < len; ++j) {
    // sin^{(j)}(u0) = sin(u0 + j pi / 2)
    s[j] = std::sin(u0 + static_cast<double>(j) * std::numbers::pi / 2) * ap / factorial(static_cast<int>(j));
    ap *= a;
  }
  u[0] = u0;
  if (len > 1) u[1] = a;
  return jet_div(s, u);
}

// Jets of T_0 .. T_n at x / h, to order d.
std::vector<Jet> chebyshev_jets(int n, double x, double h, int d) {
  const std::size_t len = static_cast<std::size_t>(d) + 1;
  Jet u(len, 0.0);
  u[0] = x / h;
  if (len > 1) u[1] = 1.0 / h;
  std::vector<Jet> T(static_cast<std::size_t>(n) + 1, Jet(len, 0.0));
  T[0][0] = 1.0;
  if (n >= 1) T[1] = u;
  for (int j = 1; j < n; ++j) {
    Jet next = jet_mul(u, T[static_cast<std::size_t>(j)]);
    for (std::size_t i = 0; i < len; ++i)
      next[i] = 2.0 * next[i] - T[static_cast<std::size_t>(j) - 1][i];
    T[static_cast<std::size_t>(j) + 1] = std::move(next);
  }
  return T;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_point(int m, std::span<const double> x) {
  if (static_cast<int>(x.size()) != m) throw InputError("entire sample: point dimension mismatch");
}

// Composite Gauss-Legendre of |g|^p over [0, R] with panels ending at the
// zeros k pi j / sigma of g.
double sinc_axis_integral(double sigma, int k, double p, double R) {
  const auto gl = gauss_legendre(24);
  const double spacing = k * std::numbers::pi / sigma;
  double total = 0.0;
  for (double a = 0.0; a < R; a += spacing) {
    const double b = std::min(a + spacing, R);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double x = mid + half * gl.x[i];
      const double u = sigma * x / k;
      const double g = std::abs(u) < 1e-8 ? 1.0 : std::sin(u) / u;
      total += half * gl.w[i] * std::pow(std::abs(g), k * p);
    }
  }
  return 2.0 * total;
}

std::vector<double> axis_grid(double R, int grid) {
  if (grid < 2) throw InputError("grid must have at least 2 points per axis");
  if (grid % 2 == 0) ++grid;  // keep the origin
  std::vector<double> xs(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) xs[static_cast<std::size_t>(i)] = -R + 2.0 * R * i / (grid - 1);
  return xs;
}

std::vector<Point> tensor_grid(const std::vector<double>& xs, int m) {
  std::vector<Point> pts;
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  for (;;) {
    Point x(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) x[static_cast<std::size_t>(j)] = xs[idx[static_cast<std::size_t>(j)]];
    pts.push_back(std::move(x));
    int j = 0;
    while (j < m && ++idx[static_cast<std::size_t>(j)] == xs.size()) idx[static_cast<std::size_t>(j++)] = 0;
    if (j == m) break;
  }
  return pts;
}

// max |F| over [-R, R]^m; in 1-D the grid maxima are refined.
double grid_sup(const std::function<double(std::span<const double>)>& F, int m, double R, int grid) {
  if (m == 1) {
    if (grid % 2 == 0) ++grid;
    const double at0 = F(std::span<const double>(std::vector<double>{0.0}));
    return std::max(at0, sup_abs_1d([&](double x) { return F(std::span<const double>(&x, 1)); }, -R, R, grid));
  }
  double best = 0.0;
  for (const auto& x : tensor_grid(axis_grid(R, grid), m)) best = std::max(best, F(x));
  return best;
}

}  // namespace

// ---------------------------------------------------------------- samples

EntireSample EntireSample::sinc_product(std::vector<double> sigma, int k) {
  if (sigma.empty()) throw InputError("SincProduct: empty scale vector");
  if (k < 2) throw InputError("SincProduct: power k must be at least 2, got " + std::to_string(k));
  for (double s : sigma)
    if (!(s > 0.0) || !std::isfinite(s)) throw InputError("SincProduct: scales must be positive and finite");
  const int m = static_cast<int>(sigma.size());
  return EntireSample(m, sample::SincProduct{std::move(sigma), k});
}

EntireSample EntireSample::body_fourier(const ConvexBody& V, int radial, int angular) {
  // The body's own quadrature: V is the polar of its polar.
  auto rule = std::make_shared<const QuadratureRule>(build_rule(body_domain(V), radial, angular));
  return EntireSample(V.dimension(), sample::BodyFourier{V, std::move(rule)});
}

EntireSample EntireSample::plane_wave(std::vector<double> omega, double phase) {
  if (omega.empty()) throw InputError("PlaneWave: empty frequency vector");
  const int m = static_cast<int>(omega.size());
  return EntireSample(m, sample::PlaneWave{std::move(omega), phase});
}

EntireSample EntireSample::constant(int m) {
  if (m < 1) throw InputError("constant sample: m must be positive");
  return plane_wave(std::vector<double>(static_cast<std::size_t>(m), 0.0), 0.0);
}

EntireSample EntireSample::rescaled_extremal(const SharpConstantResult& r, int n) {
  const auto cheb = std::dynamic_pointer_cast<const ChebyshevBasis>(r.basis);
  if (!cheb) throw InputError("rescaled_extremal: result is not a polynomial extremal");
  if (n < 1) throw InputError("rescaled_extremal: n must be positive");
  auto basis = std::make_shared<const ChebyshevBasis>(cheb->rescaled(static_cast<double>(n)));
  return EntireSample(cheb->dimension(), sample::RescaledExtremal{std::move(basis), r.coeffs});
}

std::string EntireSample::name() const {
  return std::visit(Overloaded{[](const sample::SincProduct& s) { return "sinc-product(k=" + std::to_string(s.k) + ")"; },
                               [](const sample::BodyFourier& b) { return "body-fourier(" + b.V.spec() + ")"; },
                               [](const sample::PlaneWave&) { return std::string("plane-wave"); },
                               [](const sample::RescaledExtremal& e) {
                                 return "rescaled-extremal(n=" + std::to_string(e.basis->degree()) + ")";
                               }},
                    kind_);
}

Complex EntireSample::value(std::span<const double> x) const { return derivative(MultiIndex::zero(m_), x); }

Complex EntireSample::derivative(const MultiIndex& alpha, std::span<const double> x) const {
  check_point(m_, x);
  if (alpha.dimension() != m_) throw InputError("entire sample: multi-index dimension mismatch");
  return std::visit(
      Overloaded{
          [&](const sample::SincProduct& s) -> Complex {
            double prod = 1.0;
            for (int j = 0; j < m_; ++j) {
              const int d = alpha[j];
              const double a = s.sigma[static_cast<std::size_t>(j)] / s.k;
              const Jet g = sinc_jet(a * x[static_cast<std::size_t>(j)], a, d);
              Jet pw(g.size(), 0.0);
              pw[0] = 1.0;
              for (int i = 0; i < s.k; ++i) pw = jet_mul(pw, g);
              prod *= pw[static_cast<std::size_t>(d)] * factorial(d);
            }
            return prod;
          },
          [&](const sample::BodyFourier& b) -> Complex {
            const auto& rule = *b.rule;
            Complex sum{};
            const Complex iu(0.0, 1.0);
            for (std::size_t q = 0; q < rule.size(); ++q) {
              const auto& t = rule.nodes[q];
              double phase = 0.0;
              Complex mono = 1.0;
              for (int j = 0; j < m_; ++j) {
                phase += t[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
                for (int e = 0; e < alpha[j]; ++e) mono *= iu * t[static_cast<std::size_t>(j)];
              }
              sum += rule.weights[q] * mono * std::exp(iu * phase);
            }
            return sum.real();  // V = -V: the imaginary parts cancel
          },
          [&](const sample::PlaneWave& w) -> Complex {
            double phase = -w.phase, mono = 1.0;
            for (int j = 0; j < m_; ++j) {
              phase += w.omega[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
              mono *= std::pow(w.omega[static_cast<std::size_t>(j)], alpha[j]);
            }
            if (mono == 0.0) return 0.0;
            return mono * std::cos(phase + alpha.order() * std::numbers::pi / 2);
          },
          [&](const sample::RescaledExtremal& e) -> Complex {
            const auto& basis = *e.basis;
            std::vector<std::vector<Jet>> jets;
            for (int j = 0; j < m_; ++j)
              jets.push_back(chebyshev_jets(basis.degree(), x[static_cast<std::size_t>(j)],
                                            basis.scales()[static_cast<std::size_t>(j)], alpha[j]));
            Complex sum{};
            const auto& idx = basis.indices();
            for (std::size_t b = 0; b < idx.size(); ++b) {
              double term = 1.0;
              for (int j = 0; j < m_; ++j)
                term *= jets[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx[b][j])]
                            [static_cast<std::size_t>(alpha[j])];
              sum += e.coeffs(static_cast<Eigen::Index>(b)) * term;
            }
            return sum * alpha.factorial();
          }},
      kind_);
}

Complex EntireSample::apply(const DiffOperator& D, std::span<const double> x) const {
  if (D.dimension() != m_) throw InputError("entire sample: operator dimension mismatch");
  Complex s{};
  for (const auto& [alpha, b] : D.weights()) s += b * derivative(alpha, x);
  return s;
}

bool EntireSample::in_lp(double p) const {
  if (!(p > 0.0)) return false;
  return std::visit(Overloaded{[&](const sample::SincProduct& s) { return std::isinf(p) || s.k * p > 1.0; },
                               [&](const sample::BodyFourier&) { return p >= 2.0; },
                               [&](const sample::PlaneWave&) { return std::isinf(p); },
                               [&](const sample::RescaledExtremal& e) {
                                 return std::isinf(p) && e.basis->degree() == 0;
                               }},
                    kind_);
}

double sinc_power_integral(int q) {
  if (q < 2 || q > 24 || q % 2 != 0) throw InputError("sinc_power_integral: q must be an even integer in [2, 24]");
  // integral over R of (sin u / u)^q = pi / (2^{q-1} (q-1)!) sum_j (-1)^j C(q, j) (q - 2j)^{q-1}
  long double sum = 0.0L, binom = 1.0L;
  for (int j = 0; 2 * j < q; ++j) {
    sum += (j % 2 ? -1.0L : 1.0L) * binom * std::pow(static_cast<long double>(q - 2 * j), q - 1);
    binom = binom * (q - j) / (j + 1);
  }
  long double denom = std::pow(2.0L, q - 1);
  for (int i = 2; i < q; ++i) denom *= i;
  return static_cast<double>(std::numbers::pi_v<long double> * sum / denom);
}

std::optional<double> EntireSample::known_norm(double p) const {
  if (!in_lp(p)) return std::nullopt;
  return std::visit(
      Overloaded{[&](const sample::SincProduct& s) -> std::optional<double> {
                   if (std::isinf(p)) return 1.0;
                   const double q = s.k * p;
                   const int qi = static_cast<int>(std::lround(q));
                   if (std::abs(q - qi) > 1e-12 || qi % 2 != 0 || qi > 24) return std::nullopt;
                   const double I = sinc_power_integral(qi);
                   double v = 1.0;
                   for (double sg : s.sigma) v *= s.k * I / sg;
                   return std::pow(v, 1.0 / p);
                 },
                 [&](const sample::BodyFourier& b) -> std::optional<double> {
                   const double vol = b.rule->mass();
                   if (std::isinf(p)) return vol;
                   if (p == 2.0) return std::sqrt(std::pow(2.0 * std::numbers::pi, m_) * vol);
                   return std::nullopt;
                 },
                 [&](const sample::PlaneWave& w) -> std::optional<double> {
                   const bool zero = std::all_of(w.omega.begin(), w.omega.end(), [](double v) { return v == 0.0; });
                   return zero ? std::abs(std::cos(w.phase)) : 1.0;
                 },
                 [&](const sample::RescaledExtremal&) -> std::optional<double> { return std::nullopt; }},
      kind_);
}

NormValue EntireSample::norm_upper_bound(double p, double R) const {
  const auto* s = std::get_if<sample::SincProduct>(&kind_);
  if (!s) throw InputError("norm_upper_bound: only sinc products carry an analytic tail bound");
  if (!in_lp(p)) throw InputError("norm_upper_bound: sinc product with k=" + std::to_string(s->k) + " is not in L_p for p=" +
                                  std::to_string(p) + " (needs kp > 1)");
  if (!(R > 0.0)) throw InputError("norm_upper_bound: R must be positive");
  NormValue out;
  out.source = "quadrature+tail";
  if (std::isinf(p)) {
    out.value = 1.0;
    return out;
  }
  const double q = s->k * p;
  double total = 1.0;
  for (double sg : s->sigma) {
    const double inner = sinc_axis_integral(sg, s->k, p, R);
    // |g(x)| <= (k / (sigma |x|))^k off [-R, R]
    const double tail = 2.0 * std::pow(s->k / sg, q) * std::pow(R, 1.0 - q) / (q - 1.0);
    out.tail_fraction = std::max(out.tail_fraction, tail / inner);
    total *= inner + tail;
  }
  if (out.tail_fraction > 0.01)
    throw InputError("norm_upper_bound: truncation R=" + std::to_string(R) + " too small, tail bound is " +
                     std::to_string(100.0 * out.tail_fraction) + "% of the norm");
  out.value = std::pow(total, 1.0 / p);
  return out;
}

// ---------------------------------------------------------------- ratios

namespace {

NormValue full_space_norm(const EntireSample& f, double p, double R) {
  if (!f.in_lp(p)) throw InputError("sample " + f.name() + " is not known to lie in L_p for p=" + std::to_string(p));
  if (auto v = f.known_norm(p)) return {*v, "closed-form", 0.0};
  if (std::holds_alternative<sample::SincProduct>(f.kind())) return f.norm_upper_bound(p, R);
  throw InputError("sample " + f.name() + " has neither a closed-form norm nor a tail bound for p=" + std::to_string(p));
}

}  // namespace

LowerBoundE ratio_lower_bound_E(const EntireSample& f, const DiffOperator& D, double p, double R, int grid) {
  if (!(p > 0.0)) throw InputError("ratio_lower_bound_E: p must lie in (0, inf]");
  if (!(R > 0.0)) throw InputError("ratio_lower_bound_E: R must be positive");
  const auto norm = full_space_norm(f, p, R);
  LowerBoundE out;
  out.denominator = norm.value;
  out.norm_source = norm.source;
  out.numerator = grid_sup([&](std::span<const double> x) { return std::abs(f.apply(D, x)); }, f.dimension(), R, grid);
  out.value = out.numerator / out.denominator;
  return out;
}

BernsteinNikolskii bernstein_nikolskii_check(const EntireSample& f, const MultiIndex& alpha, double p, double R,
                                             int grid) {
  const int m = f.dimension();
  const double fsup = grid_sup([&](std::span<const double> x) { return std::abs(f.value(x)); }, m, R, grid);
  if (!(fsup > 0.0)) throw EvaluationError("bernstein_nikolskii_check: sample vanishes on the grid");
  const double dsup =
      grid_sup([&](std::span<const double> x) { return std::abs(f.derivative(alpha, x)); }, m, R, grid);
  BernsteinNikolskii out;
  out.derivative_ratio = dsup / fsup;
  out.nikolskii_ratio = std::isinf(p) ? 1.0 : fsup / full_space_norm(f, p, R).value;
  return out;
}

// ---------------------------------------------------------------- decay

std::vector<DecayEntry> approx_decay_1d(const EntireSample& f, double tau, int k_max) {
  if (f.dimension() != 1) throw InputError("approx_decay_1d: needs m = 1");
  if (!(tau > 0.0 && tau < 1.0)) throw InputError("approx_decay_1d: tau must lie in (0, 1)");
  if (k_max < 4) throw InputError("approx_decay_1d: k_max must be at least 4");
  constexpr int kCheckPoints = 10000;
  std::vector<DecayEntry> out;
  for (int k = 4; k <= k_max; ++k) {
    const double half = tau * k;
    const int nodes = k + 1;
    std::vector<Complex> fv(static_cast<std::size_t>(nodes));
    std::vector<double> theta(static_cast<std::size_t>(nodes));
    for (int i = 0; i < nodes; ++i) {
      theta[static_cast<std::size_t>(i)] = std::numbers::pi * (i + 0.5) / nodes;
      const double x = half * std::cos(theta[static_cast<std::size_t>(i)]);
      fv[static_cast<std::size_t>(i)] = f.value(std::span<const double>(&x, 1));
    }
    std::vector<Complex> a(static_cast<std::size_t>(nodes));
    for (int j = 0; j < nodes; ++j) {
      Complex s{};
      for (int i = 0; i < nodes; ++i) s += fv[static_cast<std::size_t>(i)] * std::cos(j * theta[static_cast<std::size_t>(i)]);
      a[static_cast<std::size_t>(j)] = (j == 0 ? 1.0 : 2.0) * s / static_cast<double>(nodes);
    }
    double err = 0.0;
    for (int i = 0; i < kCheckPoints; ++i) {
      const double x = -half + 2.0 * half * i / (kCheckPoints - 1);
      const double u = x / half;
      Complex b1{}, b2{};
      for (int j = nodes - 1; j >= 1; --j) {
        const Complex b0 = a[static_cast<std::size_t>(j)] + 2.0 * u * b1 - b2;
        b2 = b1;
        b1 = b0;
      }
      const Complex interp = a[0] + u * b1 - b2;
      err = std::max(err, std::abs(f.value(std::span<const double>(&x, 1)) - interp));
    }
    out.push_back({k, err});
  }
  return out;
}

double log_decay_slope(const std::vector<DecayEntry>& table) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = table.size() / 2; i < table.size(); ++i)
    if (table[i].error > 1e-14) pts.emplace_back(table[i].k, std::log(table[i].error));
  if (pts.size() < 2) return -std::numeric_limits<double>::infinity();
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

// ---------------------------------------------------------------- extraction

nlohmann::json ExtractionReport::to_json() const {
  nlohmann::json j;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json row{{"n", e.n}, {"value", e.value}, {"normalization_residual", e.normalization_residual}};
    row["dist_to_next"] = std::isfinite(e.dist_to_next) ? nlohmann::json(e.dist_to_next) : nlohmann::json(nullptr);
    j["entries"].push_back(std::move(row));
  }
  nlohmann::json pts = nlohmann::json::array(), re = nlohmann::json::array(), im = nlohmann::json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    pts.push_back(grid[i]);
    re.push_back(samples[i].real());
    im.push_back(samples[i].imag());
  }
  j["samples"] = {{"points", pts}, {"re", re}, {"im", im}};
  return j;
}

ExtractionReport extremal_extraction(double p, const DiffOperator& D, const ConvexBody& V, const std::vector<int>& n_list,
                                     const SolveOptions& options, int jobs) {
  if (n_list.empty()) throw InputError("extremal_extraction: empty n list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw InputError("extremal_extraction: n must be positive");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw InputError("extremal_extraction: n list must be increasing");
  }
  const int m = V.dimension();
  const int per_axis = m == 1 ? 512 : (m == 2 ? 65 : 17);
  std::vector<double> xs(static_cast<std::size_t>(per_axis));
  for (int i = 0; i < per_axis; ++i) xs[static_cast<std::size_t>(i)] = -2.0 + 4.0 * i / (per_axis - 1);

  ExtractionReport rep;
  rep.grid = tensor_grid(xs, m);
  rep.entries.resize(n_list.size());
  std::vector<Eigen::VectorXcd> onGrid(n_list.size());

  auto work = [&](std::size_t i) {
    const int n = n_list[i];
    const auto r = compute_M(p, D, n, V, options);
    auto& e = rep.entries[i];
    e.n = n;
    e.value = r.value;
    e.stability_delta = r.diagnostics.stability_delta;
    e.method = method_tag(r.method);
    const auto cheb = std::dynamic_pointer_cast<const ChebyshevBasis>(r.basis);
    const ChebyshevBasis scaled = cheb->rescaled(static_cast<double>(n));
    const Eigen::VectorXcd L = scaled.functional(D);
    const Complex d = L.transpose() * r.coeffs;
    if (std::abs(d) == 0.0) throw EvaluationError("extremal_extraction: D_N(Q_n)(0) vanishes at n=" + std::to_string(n));
    SharpConstantResult normalized = r;
    normalized.coeffs = r.coeffs / d;
    e.Q = EntireSample::rescaled_extremal(normalized, n);
    e.normalization_residual = std::abs(Complex(L.transpose() * normalized.coeffs) - 1.0);
    onGrid[i] = scaled.matrix(rep.grid).cast<Complex>() * normalized.coeffs;
  };

  const std::size_t count = n_list.size();
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < count;) {
          try {
            work(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (std::size_t i = 0; i < count; ++i)
    rep.entries[i].dist_to_next = i + 1 < count ? (onGrid[i] - onGrid[i + 1]).cwiseAbs().maxCoeff()
                                                : std::numeric_limits<double>::quiet_NaN();
  const auto& last = onGrid.back();
  rep.samples.assign(last.data(), last.data() + last.size());
  return rep;
}

}  // namespace sharpconst
