#include "sharpconst/basis.hpp"

#include <algorithm>
#include <cmath>

#include "sharpconst/errors.hpp"

namespace sharpconst {

namespace {

std::vector<MultiIndex> coordinate_indices(int m, int n) {
  std::vector<MultiIndex> out;
  std::vector<int> e(static_cast<std::size_t>(m), 0);
  for (;;) {
    out.emplace_back(e);
    int j = m - 1;
    while (j >= 0 && e[static_cast<std::size_t>(j)] == n) e[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
    ++e[static_cast<std::size_t>(j)];
  }
  return out;
}

// T_0..T_n at x.
void chebyshev_row(double x, int n, double* out) {
  out[0] = 1.0;
  if (n >= 1) out[1] = x;
  for (int p = 2; p <= n; ++p) out[p] = 2.0 * x * out[p - 1] - out[p - 2];
}

// Power-basis coefficients of T_0..T_n in floating point.
std::vector<std::vector<double>> chebyshev_power_table(int n) {
  std::vector<std::vector<double>> t(static_cast<std::size_t>(n + 1));
  t[0] = {1.0};
  if (n >= 1) t[1] = {0.0, 1.0};
  for (int p = 2; p <= n; ++p) {
    auto& cur = t[static_cast<std::size_t>(p)];
    cur.assign(static_cast<std::size_t>(p + 1), 0.0);
    const auto& a = t[static_cast<std::size_t>(p - 1)];
    const auto& b = t[static_cast<std::size_t>(p - 2)];
    for (std::size_t j = 0; j < a.size(); ++j) cur[j + 1] += 2.0 * a[j];
    for (std::size_t j = 0; j < b.size(); ++j) cur[j] -= b[j];
  }
  return t;
}

}  // namespace

Eigen::MatrixXd Basis::matrix(const std::vector<Point>& pts) const {
  Eigen::MatrixXd A(static_cast<Eigen::Index>(pts.size()), size());
  std::vector<double> row(static_cast<std::size_t>(size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    eval(pts[i], row);
    for (int b = 0; b < size(); ++b) A(static_cast<Eigen::Index>(i), b) = row[static_cast<std::size_t>(b)];
  }
  return A;
}

Complex Basis::evaluate(const Eigen::VectorXcd& c, std::span<const double> x) const {
  if (c.size() != size()) throw InputError("basis: coefficient vector has the wrong length");
  std::vector<double> row(static_cast<std::size_t>(size()));
  eval(x, row);
  Complex s{};
  for (int b = 0; b < size(); ++b) s += c(b) * row[static_cast<std::size_t>(b)];
  return s;
}

std::vector<std::vector<double>> chebyshev_derivative_table(int n, int kmax) {
  if (n < 0 || kmax < 0) throw InputError("chebyshev_derivative_table: need n, kmax >= 0");
  // (x T_p)^{(k)}(0) = k T_p^{(k-1)}(0), hence T_{p+1}^{(k)}(0) = 2k T_p^{(k-1)}(0) - T_{p-1}^{(k)}(0).
  std::vector<std::vector<double>> d(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(kmax + 1), 0.0));
  d[0][0] = 1.0;
  if (n >= 1 && kmax >= 1) d[1][1] = 1.0;
  for (int p = 1; p < n; ++p)
    for (int k = 0; k <= kmax; ++k)
      d[static_cast<std::size_t>(p + 1)][static_cast<std::size_t>(k)] =
          (k > 0 ? 2.0 * k * d[static_cast<std::size_t>(p)][static_cast<std::size_t>(k - 1)] : 0.0) -
          d[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(k)];
  return d;
}

ChebyshevBasis::ChebyshevBasis(int m, int n, std::vector<double> scales, DegreeMode mode)
    : m_(m), n_(n), h_(std::move(scales)), mode_(mode) {
  if (m < 1) throw InputError("ChebyshevBasis: dimension must be positive");
  if (n < 0) throw InputError("ChebyshevBasis: degree must be nonnegative");
  if (static_cast<int>(h_.size()) != m) throw InputError("ChebyshevBasis: need one scale per coordinate");
  for (double h : h_)
    if (!(h > 0.0) || !std::isfinite(h)) throw InputError("ChebyshevBasis: scales must be positive");
  idx_ = mode == DegreeMode::Total ? multi_indices_total_degree(m, n) : coordinate_indices(m, n);
}

void ChebyshevBasis::eval(std::span<const double> x, std::span<double> out) const {
  if (static_cast<int>(x.size()) != m_) throw InputError("ChebyshevBasis: point dimension mismatch");
  std::vector<double> tab(static_cast<std::size_t>(m_ * (n_ + 1)));
  for (int j = 0; j < m_; ++j)
    chebyshev_row(x[static_cast<std::size_t>(j)] / h_[static_cast<std::size_t>(j)], n_, tab.data() + j * (n_ + 1));
  for (std::size_t b = 0; b < idx_.size(); ++b) {
    double v = 1.0;
    for (int j = 0; j < m_; ++j) v *= tab[static_cast<std::size_t>(j * (n_ + 1) + idx_[b][j])];
    out[b] = v;
  }
}

Eigen::VectorXcd ChebyshevBasis::functional(const DiffOperator& D) const {
  if (D.dimension() != m_) throw InputError("ChebyshevBasis: operator dimension mismatch");
  const int N = D.order();
  const auto d = chebyshev_derivative_table(n_, N);
  Eigen::VectorXcd L = Eigen::VectorXcd::Zero(size());
  for (std::size_t b = 0; b < idx_.size(); ++b) {
    for (const auto& [alpha, w] : D.weights()) {
      double v = 1.0;
      for (int j = 0; j < m_ && v != 0.0; ++j) {
        const int a = alpha[j];
        if (a > n_) {
          v = 0.0;
          break;
        }
        v *= d[static_cast<std::size_t>(idx_[b][j])][static_cast<std::size_t>(a)] / std::pow(h_[static_cast<std::size_t>(j)], a);
      }
      L(static_cast<Eigen::Index>(b)) += w * v;
    }
  }
  return L;
}

Polynomial ChebyshevBasis::to_polynomial(const Eigen::VectorXcd& c) const {
  if (c.size() != size()) throw InputError("ChebyshevBasis: coefficient vector has the wrong length");
  const auto t = chebyshev_power_table(n_);
  Polynomial P(m_, mode_ == DegreeMode::Total ? n_ : m_ * n_);
  std::map<MultiIndex, Complex> acc;
  for (std::size_t b = 0; b < idx_.size(); ++b) {
    if (c(static_cast<Eigen::Index>(b)) == Complex{}) continue;
    // Expand prod_j T_{beta_j}(y_j / h_j) term by term.
    std::vector<int> g(static_cast<std::size_t>(m_), 0);
    for (;;) {
      double v = 1.0;
      for (int j = 0; j < m_; ++j) {
        const auto& tj = t[static_cast<std::size_t>(idx_[b][j])];
        v *= tj[static_cast<std::size_t>(g[static_cast<std::size_t>(j)])] / std::pow(h_[static_cast<std::size_t>(j)], g[static_cast<std::size_t>(j)]);
      }
      if (v != 0.0) acc[MultiIndex(g)] += c(static_cast<Eigen::Index>(b)) * v;
      int j = m_ - 1;
      while (j >= 0 && g[static_cast<std::size_t>(j)] == idx_[b][j]) g[static_cast<std::size_t>(j--)] = 0;
      if (j < 0) break;
      ++g[static_cast<std::size_t>(j)];
    }
  }
  for (const auto& [beta, v] : acc) P.set(beta, v);
  return P;
}

nlohmann::json ChebyshevBasis::to_json(const Eigen::VectorXcd& c) const { return polynomial_to_json(to_polynomial(c)); }

ChebyshevBasis ChebyshevBasis::rescaled(double s) const {
  if (!(s > 0.0)) throw InputError("ChebyshevBasis::rescaled: s must be positive");
  auto h = h_;
  for (auto& v : h) v *= s;
  return ChebyshevBasis(m_, n_, std::move(h), mode_);
}

TrigBasis TrigBasis::lattice(const ConvexBody& V, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InputError("TrigBasis: a must be positive");
  const int m = V.dimension();
  std::vector<int> bound(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    std::vector<double> e(static_cast<std::size_t>(m), 0.0);
    e[static_cast<std::size_t>(j)] = 1.0;
    bound[static_cast<std::size_t>(j)] = static_cast<int>(std::floor(a * dual_norm(e, V) * (1.0 + 1e-12)));
  }
  TrigBasis B;
  B.m_ = m;
  std::vector<int> k(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) k[static_cast<std::size_t>(j)] = -bound[static_cast<std::size_t>(j)];
  for (;;) {
    std::vector<double> kd(k.begin(), k.end());
    if (gauge(kd, V) <= a * (1.0 + 1e-12)) {
      ++B.lattice_size_;
      int first = 0;
      for (int v : k)
        if (v != 0) {
          first = v;
          break;
        }
      if (first == 0) {
        B.freq_.push_back(k);
        B.kind_.push_back('1');
      } else if (first > 0) {
        B.freq_.push_back(k);
        B.kind_.push_back('c');
        B.freq_.push_back(k);
        B.kind_.push_back('s');
      }
    }
    int j = m - 1;
    while (j >= 0 && k[static_cast<std::size_t>(j)] == bound[static_cast<std::size_t>(j)]) {
      k[static_cast<std::size_t>(j)] = -bound[static_cast<std::size_t>(j)];
      --j;
    }
    if (j < 0) break;
    ++k[static_cast<std::size_t>(j)];
  }
  if (B.lattice_size_ == 0) throw InputError("TrigBasis: the lattice aV is empty");
  return B;
}

int TrigBasis::max_frequency() const {
  int best = 0;
  for (const auto& k : freq_)
    for (int v : k) best = std::max(best, std::abs(v));
  return best;
}

void TrigBasis::eval(std::span<const double> x, std::span<double> out) const {
  if (static_cast<int>(x.size()) != m_) throw InputError("TrigBasis: point dimension mismatch");
  for (std::size_t b = 0; b < kind_.size(); ++b) {
    double phase = 0.0;
    for (int j = 0; j < m_; ++j) phase += freq_[b][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    out[b] = kind_[b] == '1' ? 1.0 : kind_[b] == 'c' ? std::cos(phase) : std::sin(phase);
  }
}

Eigen::VectorXcd TrigBasis::functional(const DiffOperator& D) const {
  if (D.dimension() != m_) throw InputError("TrigBasis: operator dimension mismatch");
  Eigen::VectorXcd L = Eigen::VectorXcd::Zero(size());
  for (std::size_t b = 0; b < kind_.size(); ++b) {
    for (const auto& [alpha, w] : D.weights()) {
      Complex ik = 1.0;  // (i k)^alpha
      for (int j = 0; j < m_; ++j)
        for (int r = 0; r < alpha[j]; ++r) ik *= Complex(0.0, freq_[b][static_cast<std::size_t>(j)]);
      const double part = kind_[b] == 's' ? ik.imag() : ik.real();
      L(static_cast<Eigen::Index>(b)) += w * part;
    }
  }
  return L;
}

nlohmann::json TrigBasis::to_json(const Eigen::VectorXcd& c) const {
  if (c.size() != size()) throw InputError("TrigBasis: coefficient vector has the wrong length");
  std::map<std::vector<int>, Complex> acc;
  for (std::size_t b = 0; b < kind_.size(); ++b) {
    const Complex v = c(static_cast<Eigen::Index>(b));
    auto neg = freq_[b];
    for (auto& x : neg) x = -x;
    if (kind_[b] == '1') {
      acc[freq_[b]] += v;
    } else if (kind_[b] == 'c') {
      acc[freq_[b]] += 0.5 * v;
      acc[neg] += 0.5 * v;
    } else {
      acc[freq_[b]] += Complex(0.0, -0.5) * v;
      acc[neg] += Complex(0.0, 0.5) * v;
    }
  }
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, v] : acc)
    if (v != Complex{}) terms.push_back({{"k", k}, {"re", v.real()}, {"im", v.imag()}});
  return {{"m", m_}, {"terms", terms}};
}

}  // namespace sharpconst
