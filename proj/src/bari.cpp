#include "sharpconst/bari.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sharpconst/errors.hpp"
#include "sharpconst/quadrature.hpp"

namespace sharpconst {

namespace {

constexpr double kPi = std::numbers::pi;

void check_interval(double a, double b) {
  if (!(a >= 0.0 && a < b && b <= kPi)) throw InputError("bari: need 0 <= a_j < b_j <= pi");
}

// Rows: points, columns: cos(k x), k = 0..n.
Eigen::MatrixXd cosine_table(const std::vector<double>& x, int n) {
  Eigen::MatrixXd C(static_cast<Eigen::Index>(x.size()), n + 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = std::cos(x[i]);
    double t0 = 1.0, t1 = c;
    C(static_cast<Eigen::Index>(i), 0) = 1.0;
    if (n >= 1) C(static_cast<Eigen::Index>(i), 1) = c;
    for (int k = 2; k <= n; ++k) {
      const double t2 = 2.0 * c * t1 - t0;
      C(static_cast<Eigen::Index>(i), k) = t2;
      t0 = t1;
      t1 = t2;
    }
  }
  return C;
}

// Values of T on the tensor grid axes[0] x ... x axes[m-1], last index fastest.
std::vector<double> tensor_values(const EvenTrigPoly& T, const std::vector<std::vector<double>>& axes) {
  const int m = T.dimension(), n = T.degree();
  const auto& c = T.coefficients();
  const Eigen::Index K = n + 1;
  std::vector<Eigen::MatrixXd> tabs;
  for (const auto& ax : axes) tabs.push_back(cosine_table(ax, n));
  std::vector<double> out;
  if (m == 1) {
    const Eigen::VectorXd v = tabs[0] * Eigen::Map<const Eigen::VectorXd>(c.data(), K);
    out.assign(v.data(), v.data() + v.size());
    return out;
  }
  // coefficient flat index k0 + K k1 (+ K^2 k2): as a K x K matrix, column k1 holds k0.
  auto contract2 = [&](const double* block, const Eigen::MatrixXd& A0, const Eigen::MatrixXd& A1) {
    const Eigen::Map<const Eigen::MatrixXd> Cm(block, K, K);
    return Eigen::MatrixXd(A0 * Cm * A1.transpose());
  };
  if (m == 2) {
    const Eigen::MatrixXd V = contract2(c.data(), tabs[0], tabs[1]);
    for (Eigen::Index i = 0; i < V.rows(); ++i)
      for (Eigen::Index j = 0; j < V.cols(); ++j) out.push_back(V(i, j));
    return out;
  }
  std::vector<Eigen::MatrixXd> slabs;
  for (Eigen::Index k2 = 0; k2 < K; ++k2) slabs.push_back(contract2(c.data() + k2 * K * K, tabs[0], tabs[1]));
  for (Eigen::Index i = 0; i < tabs[0].rows(); ++i)
    for (Eigen::Index j = 0; j < tabs[1].rows(); ++j)
      for (Eigen::Index l = 0; l < tabs[2].rows(); ++l) {
        double s = 0.0;
        for (Eigen::Index k2 = 0; k2 < K; ++k2) s += slabs[static_cast<std::size_t>(k2)](i, j) * tabs[2](l, k2);
        out.push_back(s);
      }
  return out;
}

}  // namespace

Point bari_substitution(std::span<const double> u, std::span<const double> a, std::span<const double> b) {
  if (u.size() != a.size() || a.size() != b.size() || u.empty()) throw InputError("bari_substitution: dimension mismatch");
  Point t(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    check_interval(a[j], b[j]);
    if (u[j] < a[j] || u[j] > b[j]) throw InputError("bari_substitution: u lies outside the box");
    const double ca = std::cos(a[j]), cb = std::cos(b[j]);
    const double c = (2.0 * std::cos(u[j]) - (ca + cb)) / (ca - cb);
    t[j] = std::acos(std::clamp(c, -1.0, 1.0));
  }
  return t;
}

Point bari_inverse(std::span<const double> t, std::span<const double> a, std::span<const double> b) {
  if (t.size() != a.size() || a.size() != b.size() || t.empty()) throw InputError("bari_inverse: dimension mismatch");
  Point u(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    check_interval(a[j], b[j]);
    if (t[j] < 0.0 || t[j] > kPi) throw InputError("bari_inverse: t lies outside [0, pi]");
    const double ca = std::cos(a[j]), cb = std::cos(b[j]);
    u[j] = std::acos(std::clamp(0.5 * (ca - cb) * std::cos(t[j]) + 0.5 * (ca + cb), -1.0, 1.0));
  }
  return u;
}

EvenTrigPoly::EvenTrigPoly(int m, int n) : m_(m), n_(n) {
  if (m < 1 || m > 3) throw InputError("EvenTrigPoly: dimension must lie in [1, 3]");
  if (n < 0) throw InputError("EvenTrigPoly: degree must be nonnegative");
  std::size_t size = 1;
  for (int j = 0; j < m; ++j) size *= static_cast<std::size_t>(n + 1);
  c_.assign(size, 0.0);
}

std::size_t EvenTrigPoly::flat(std::span<const int> k) const {
  if (static_cast<int>(k.size()) != m_) throw InputError("EvenTrigPoly: index dimension mismatch");
  std::size_t f = 0, stride = 1;
  for (int j = 0; j < m_; ++j) {
    const int kj = k[static_cast<std::size_t>(j)];
    if (kj < 0 || kj > n_) throw InputError("EvenTrigPoly: frequency out of range");
    f += stride * static_cast<std::size_t>(kj);
    stride *= static_cast<std::size_t>(n_ + 1);
  }
  return f;
}

double& EvenTrigPoly::coeff(std::span<const int> k) { return c_[flat(k)]; }
double EvenTrigPoly::coeff(std::span<const int> k) const { return c_[flat(k)]; }

double EvenTrigPoly::operator()(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != m_) throw InputError("EvenTrigPoly: point dimension mismatch");
  std::vector<std::vector<double>> axes;
  for (double x : u) axes.push_back({x});
  return tensor_values(*this, axes).front();
}

EvenTrigPoly EvenTrigPoly::random(int m, int n, std::uint64_t seed) {
  EvenTrigPoly T(m, n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  for (auto& c : T.c_) c = z(rng);
  return T;
}

EvenTrigPoly EvenTrigPoly::fejer_peak(int m, int n, std::span<const double> center) {
  if (n % 2 != 0 || n < 2) throw InputError("fejer_peak: degree must be even and positive");
  if (static_cast<int>(center.size()) != m) throw InputError("fejer_peak: center dimension mismatch");
  const int N = n / 2;
  // Fejer kernel F_N(x) = sum_{|k|<=N} (1 - |k|/(N+1)) e^{ikx}; its square has
  // exponential coefficients g_k = sum_i f_i f_{k-i}, |k| <= 2N.
  std::vector<double> f(static_cast<std::size_t>(2 * N + 1));
  for (int k = -N; k <= N; ++k) f[static_cast<std::size_t>(k + N)] = 1.0 - std::abs(k) / (N + 1.0);
  std::vector<double> g(static_cast<std::size_t>(n + 1), 0.0);  // g_k for k >= 0
  for (int k = 0; k <= n; ++k)
    for (int i = -N; i <= N; ++i) {
      const int j = k - i;
      if (j >= -N && j <= N) g[static_cast<std::size_t>(k)] += f[static_cast<std::size_t>(i + N)] * f[static_cast<std::size_t>(j + N)];
    }
  // F^2(u - c) + F^2(u + c) = 2 g_0 + 4 sum_{k>=1} g_k cos(kc) cos(ku).
  std::vector<std::vector<double>> axis(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    auto& a = axis[static_cast<std::size_t>(j)];
    a.resize(static_cast<std::size_t>(n + 1));
    a[0] = 2.0 * g[0];
    for (int k = 1; k <= n; ++k) a[static_cast<std::size_t>(k)] = 4.0 * g[static_cast<std::size_t>(k)] * std::cos(k * center[static_cast<std::size_t>(j)]);
  }
  EvenTrigPoly T(m, n);
  std::vector<int> k(static_cast<std::size_t>(m), 0);
  for (std::size_t idx = 0; idx < T.c_.size(); ++idx) {
    std::size_t r = idx;
    double v = 1.0;
    for (int j = 0; j < m; ++j) {
      const auto kj = r % static_cast<std::size_t>(n + 1);
      r /= static_cast<std::size_t>(n + 1);
      v *= axis[static_cast<std::size_t>(j)][kj];
    }
    T.c_[idx] = v;
  }
  return T;
}

double bari_inequality_check(const EvenTrigPoly& T, int n, const BariBoxes& boxes, double p, int grid) {
  const int m = T.dimension();
  const auto sz = static_cast<std::size_t>(m);
  if (boxes.a.size() != sz || boxes.b.size() != sz || boxes.a1.size() != sz || boxes.b1.size() != sz)
    throw InputError("bari_inequality_check: box dimension mismatch");
  for (std::size_t j = 0; j < sz; ++j)
    if (!(0.0 <= boxes.a[j] && boxes.a[j] < boxes.a1[j] && boxes.a1[j] <= boxes.b1[j] && boxes.b1[j] < boxes.b[j] &&
          boxes.b[j] <= kPi))
      throw InputError("bari_inequality_check: need 0 <= a_j < a1_j <= b1_j < b_j <= pi");
  if (!(p > 0.0) || std::isinf(p)) throw InputError("bari_inequality_check: p must lie in (0, inf)");
  if (n < 1) throw InputError("bari_inequality_check: n must be positive");
  if (grid < 8) throw InputError("bari_inequality_check: grid must be at least 8");

  const auto g = gauss_legendre(grid);
  std::vector<std::vector<double>> outer_axes, outer_w;
  for (std::size_t j = 0; j < sz; ++j) {
    std::vector<double> x, w;
    const double lo = boxes.a[j], hi = boxes.b[j];
    for (int k = 0; k < grid; ++k) {
      x.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * g.x[static_cast<std::size_t>(k)]);
      w.push_back(0.5 * (hi - lo) * g.w[static_cast<std::size_t>(k)]);
    }
    outer_axes.push_back(std::move(x));
    outer_w.push_back(std::move(w));
  }
  const auto vals = tensor_values(T, outer_axes);
  std::vector<double> absv(vals.size()), wts(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    absv[i] = std::abs(vals[i]);
    std::size_t r = i;
    double w = 1.0;
    for (int j = m - 1; j >= 0; --j) {
      w *= outer_w[static_cast<std::size_t>(j)][r % static_cast<std::size_t>(grid)];
      r /= static_cast<std::size_t>(grid);
    }
    wts[i] = w;
  }
  const double lp = lp_quasinorm_values(absv, wts, p);

  double sup = 0.0;
  if (m == 1 && boxes.b1[0] > boxes.a1[0]) {
    sup = sup_abs_1d([&](double u) { return T(std::span<const double>(&u, 1)); }, boxes.a1[0], boxes.b1[0], grid);
  } else {
    std::vector<std::vector<double>> inner;
    for (std::size_t j = 0; j < sz; ++j) {
      std::vector<double> x;
      if (boxes.b1[j] == boxes.a1[j]) {
        x.push_back(boxes.a1[j]);
      } else {
        for (int k = 0; k < grid; ++k) x.push_back(boxes.a1[j] + (boxes.b1[j] - boxes.a1[j]) * k / (grid - 1));
      }
      inner.push_back(std::move(x));
    }
    for (double v : tensor_values(T, inner)) sup = std::max(sup, std::abs(v));
  }
  if (lp == 0.0) throw DomainError("bari_inequality_check: T vanishes on the outer box");
  return sup / (std::pow(static_cast<double>(n), m / p) * lp);
}

}  // namespace sharpconst
