#include "sharpconst/polynomial.hpp"

#include <cmath>
#include <numeric>

#include "sharpconst/errors.hpp"

namespace sharpconst {

namespace {

constexpr int kMaxExactChebyshev = 60;

void enumerate(int m, int lo, int hi, std::vector<int>& cur, int j, int remaining, std::vector<MultiIndex>& out) {
  if (j == m - 1) {
    for (int e = 0; e <= remaining; ++e) {
      const int total = std::accumulate(cur.begin(), cur.begin() + j, 0) + e;
      if (total < lo || total > hi) continue;
      cur[static_cast<std::size_t>(j)] = e;
      out.emplace_back(cur);
    }
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[static_cast<std::size_t>(j)] = e;
    enumerate(m, lo, hi, cur, j + 1, remaining - e, out);
  }
}

BigInt factorial_big(int k) {
  BigInt f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

BigInt binomial_big(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt pow_big(long base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
  for (int v : e_)
    if (v < 0) throw InputError("multi-index entries must be nonnegative");
}

int MultiIndex::order() const { return std::accumulate(e_.begin(), e_.end(), 0); }

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int v : e_)
    for (int i = 2; i <= v; ++i) f *= i;
  return f;
}

std::vector<MultiIndex> multi_indices_total_degree(int m, int n) {
  if (m < 1 || n < 0) throw InputError("multi_indices_total_degree: need m >= 1, n >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(m), 0);
  enumerate(m, 0, n, cur, 0, n, out);
  return out;
}

std::vector<MultiIndex> multi_indices_of_order(int m, int N) {
  if (m < 1 || N < 0) throw InputError("multi_indices_of_order: need m >= 1, N >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(m), 0);
  enumerate(m, N, N, cur, 0, N, out);
  return out;
}

Polynomial::Polynomial(int m, int n) : m_(m), n_(n) {
  if (m < 1) throw InputError("polynomial: dimension must be positive");
  if (n < 0) throw InputError("polynomial: degree bound must be nonnegative");
}

Polynomial Polynomial::constant(int m, Complex c) {
  Polynomial P(m, 0);
  P.set(MultiIndex::zero(m), c);
  return P;
}

Polynomial Polynomial::chebyshev(int n) {
  const auto c = chebyshev_coefficients(n);
  Polynomial P(1, n);
  for (int j = 0; j <= n; ++j)
    if (c[static_cast<std::size_t>(j)] != 0)
      P.set(MultiIndex({j}), Complex(c[static_cast<std::size_t>(j)].convert_to<double>(), 0.0));
  return P;
}

Complex Polynomial::coeff(const MultiIndex& beta) const {
  auto it = c_.find(beta);
  return it == c_.end() ? Complex{} : it->second;
}

void Polynomial::set(const MultiIndex& beta, Complex value) {
  if (beta.dimension() != m_) throw InputError("polynomial: multi-index dimension mismatch");
  if (beta.order() > n_) throw InputError("polynomial: |beta| exceeds the degree bound");
  if (value == Complex{})
    c_.erase(beta);
  else
    c_[beta] = value;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.m_ != m_) throw InputError("polynomial: dimension mismatch in sum");
  n_ = std::max(n_, other.n_);
  for (const auto& [beta, c] : other.c_) set(beta, coeff(beta) + c);
  return *this;
}

Polynomial& Polynomial::operator*=(Complex s) {
  if (s == Complex{}) {
    c_.clear();
    return *this;
  }
  for (auto& [beta, c] : c_) c *= s;
  return *this;
}

DiffOperator::DiffOperator(int m, int N) : m_(m), N_(N) {
  if (m < 1) throw InputError("operator: dimension must be positive");
  if (N < 0) throw InputError("operator: order must be nonnegative");
}

DiffOperator DiffOperator::identity(int m) {
  DiffOperator D(m, 0);
  D.set(MultiIndex::zero(m), 1.0);
  return D;
}

DiffOperator DiffOperator::partial(const MultiIndex& alpha, Complex weight) {
  DiffOperator D(alpha.dimension(), alpha.order());
  D.set(alpha, weight);
  return D;
}

DiffOperator DiffOperator::laplacian(int m) {
  DiffOperator D(m, 2);
  for (int j = 0; j < m; ++j) {
    std::vector<int> e(static_cast<std::size_t>(m), 0);
    e[static_cast<std::size_t>(j)] = 2;
    D.set(MultiIndex(e), 1.0);
  }
  return D;
}

void DiffOperator::set(const MultiIndex& alpha, Complex weight) {
  if (alpha.dimension() != m_) throw InputError("operator: multi-index dimension mismatch");
  if (alpha.order() != N_) throw InputError("operator: every alpha must have |alpha| = N");
  if (weight == Complex{})
    b_.erase(alpha);
  else
    b_[alpha] = weight;
}

bool DiffOperator::has_real_weights() const {
  for (const auto& [alpha, b] : b_)
    if (b.imag() != 0.0) return false;
  return true;
}

Complex eval(const Polynomial& P, std::span<const double> y) {
  if (static_cast<int>(y.size()) != P.dimension()) throw InputError("eval: dimension mismatch");
  Complex sum{};
  for (const auto& [beta, c] : P.terms()) {
    double mono = 1.0;
    for (int j = 0; j < P.dimension(); ++j)
      for (int e = 0; e < beta[j]; ++e) mono *= y[static_cast<std::size_t>(j)];
    sum += c * mono;
  }
  return sum;
}

Complex derivative_at_zero(const DiffOperator& D, const Polynomial& P) {
  if (D.dimension() != P.dimension()) throw InputError("derivative_at_zero: dimension mismatch");
  Complex sum{};
  for (const auto& [alpha, b] : D.weights()) sum += b * alpha.factorial() * P.coeff(alpha);
  return sum;
}

Polynomial homogeneous_part(const Polynomial& P, int k) {
  if (k < 0 || k > P.degree_bound()) throw InputError("homogeneous_part: k out of range");
  Polynomial H(P.dimension(), P.degree_bound());
  for (const auto& [beta, c] : P.terms())
    if (beta.order() == k) H.set(beta, c);
  return H;
}

Polynomial derivative(const Polynomial& P, const MultiIndex& alpha) {
  if (alpha.dimension() != P.dimension()) throw InputError("derivative: dimension mismatch");
  Polynomial Q(P.dimension(), std::max(0, P.degree_bound() - alpha.order()));
  for (const auto& [beta, c] : P.terms()) {
    std::vector<int> e = beta.exponents();
    double f = 1.0;
    bool zero = false;
    for (int j = 0; j < P.dimension() && !zero; ++j) {
      const int a = alpha[j];
      if (e[static_cast<std::size_t>(j)] < a) zero = true;
      for (int i = 0; i < a && !zero; ++i) f *= e[static_cast<std::size_t>(j)] - i;
      e[static_cast<std::size_t>(j)] -= a;
    }
    if (!zero) Q.set(MultiIndex(std::move(e)), f * c);
  }
  return Q;
}

Polynomial rescale(const Polynomial& P, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InputError("rescale: s must be positive");
  Polynomial Q(P.dimension(), P.degree_bound());
  for (const auto& [beta, c] : P.terms()) Q.set(beta, c / std::pow(s, beta.order()));
  return Q;
}

std::vector<BigInt> chebyshev_coefficients(int n) {
  if (n < 0) throw InputError("chebyshev: n must be nonnegative");
  if (n > kMaxExactChebyshev) throw InputError("chebyshev: exact coefficients are limited to n <= 60");
  std::vector<BigInt> prev{1};
  if (n == 0) return prev;
  std::vector<BigInt> cur{0, 1};
  for (int p = 1; p < n; ++p) {
    std::vector<BigInt> next(static_cast<std::size_t>(p + 2), 0);
    for (int j = 0; j <= p; ++j) next[static_cast<std::size_t>(j + 1)] += 2 * cur[static_cast<std::size_t>(j)];
    for (int j = 0; j < static_cast<int>(prev.size()); ++j) next[static_cast<std::size_t>(j)] -= prev[static_cast<std::size_t>(j)];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BigInt chebyshev_derivative_at_zero(int n, int k) {
  if (k < 0 || k > n) throw InputError("chebyshev_derivative_at_zero: need 0 <= k <= n");
  auto c = chebyshev_coefficients(n);
  // k-fold formal differentiation; the constant term of T_n^{(k)} is k! c_k.
  for (int d = 0; d < k; ++d) {
    std::vector<BigInt> next(c.size() > 1 ? c.size() - 1 : 1, 0);
    for (std::size_t j = 1; j < c.size(); ++j) next[j - 1] = c[j] * static_cast<long>(j);
    c = std::move(next);
  }
  BigInt v = c.front();
  return v < 0 ? BigInt(-v) : v;
}

double vam_coefficient_bound(int n, int k, double a, double M) {
  if (k < 0 || k > n) throw InputError("vam_coefficient_bound: need 0 <= k <= n");
  if (!(a > 0.0)) throw InputError("vam_coefficient_bound: a must be positive");
  const int deg = (n - k) % 2 == 1 ? n - 1 : n;
  const double t = chebyshev_derivative_at_zero(deg, k).convert_to<double>();
  return M * t / (std::tgamma(k + 1.0) * std::pow(a, k));
}

double vam_relaxed_bound(int n, int k, double a, double M) {
  if (k < 0 || k > n) throw InputError("vam_relaxed_bound: need 0 <= k <= n");
  if (!(a > 0.0)) throw InputError("vam_relaxed_bound: a must be positive");
  return M * std::pow(static_cast<double>(n), k) / (std::tgamma(k + 1.0) * std::pow(a, k));
}

std::vector<CoefficientBoundViolation> audit_coefficient_bounds(int n_max) {
  if (n_max < 0 || n_max > kMaxExactChebyshev) throw InputError("audit_coefficient_bounds: n_max must lie in [0, 60]");
  std::vector<CoefficientBoundViolation> bad;
  auto fail = [&](int n, int k, std::string what) { bad.push_back({n, k, std::move(what)}); };

  for (int n = 0; n <= n_max; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int deg = (n - k) % 2 == 1 ? n - 1 : n;
      // Numerator of the sharp bound: |T_deg^{(k)}(0)| = k! * (sharp bound for M = a = 1).
      const BigInt sharp = chebyshev_derivative_at_zero(deg, k);
      const BigInt kfact = factorial_big(k);
      if (sharp > pow_big(n, k)) fail(n, k, "sharp <= n^k / k!");

      if (k % 2 == 0) {
        const int p = k / 2;
        const int N = n / 2;
        // |T_{2N}^{(2p)}(0)| / (2p)! = 2^{2p} N / (N + p) * binom(N + p, 2p)
        if (N + p == 0) {
          if (sharp != 1) fail(n, k, "case 1 closed form at N = p = 0");
        } else if (sharp * (N + p) != kfact * pow_big(2, 2 * p) * N * binomial_big(N + p, 2 * p)) {
          fail(n, k, "case 1 closed form");
        }
        BigInt prod = pow_big(2, 2 * p);
        for (int l = 0; l < p; ++l) prod *= BigInt(N) * N - BigInt(l) * l;
        if (p >= 1 && sharp != prod) fail(n, k, "case 1 product form");
        if (sharp > pow_big(2L * N, k)) fail(n, k, "case 1 sharp <= (2N)^k / k!");
        if (pow_big(2L * N, k) > pow_big(n, k)) fail(n, k, "case 1 (2N)^k <= n^k");
      } else {
        const int p = (k - 1) / 2;
        // Odd n = 2N+1 directly; even n = 2N falls back to T_{2N-1}, i.e. N -> N - 1.
        const int N = n % 2 == 1 ? (n - 1) / 2 : n / 2 - 1;
        const long odd_deg = 2L * N + 1;
        if (sharp * (2 * p + 1) != kfact * pow_big(2, 2 * p) * odd_deg * binomial_big(N + p, 2 * p))
          fail(n, k, n % 2 == 1 ? "case 2 closed form" : "case 3 closed form");
        BigInt prod = pow_big(2, 2 * p) * odd_deg;
        for (int l = 1; l <= p; ++l) prod *= BigInt(N) * N - BigInt(l) * l + N + l;
        if (sharp != prod) fail(n, k, n % 2 == 1 ? "case 2 product form" : "case 3 product form");
        if (sharp > pow_big(odd_deg, k)) fail(n, k, "odd case sharp <= (2N+1)^k / k!");
        if (pow_big(odd_deg, k) > pow_big(n, k)) fail(n, k, "odd case (2N+1)^k <= n^k");
      }
    }
  }
  return bad;
}

bool homogeneous_bound_check(const Polynomial& P, const ConvexBody& V, double a, std::span<const double> y, int k,
                             double sup_estimate) {
  if (!(a > 0.0)) throw InputError("homogeneous_bound_check: a must be positive");
  const int n = P.degree_bound();
  const double lhs = std::abs(eval(homogeneous_part(P, k), y));
  const double base = n * dual_norm(y, V) / a;
  const double rhs = std::pow(base, k) / std::tgamma(k + 1.0) * sup_estimate * (1.0 + 1e-8);
  return lhs <= rhs;
}

nlohmann::json polynomial_to_json(const Polynomial& P) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [beta, c] : P.terms())
    terms.push_back({{"beta", beta.exponents()}, {"re", c.real()}, {"im", c.imag()}});
  return {{"m", P.dimension()}, {"n", P.degree_bound()}, {"terms", terms}};
}

namespace {

struct RawTerms {
  int m;
  int n;
  std::vector<std::pair<MultiIndex, Complex>> terms;
};

RawTerms read_terms(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw InputError("polynomial JSON: expected an object");
    RawTerms r{j.at("m").get<int>(), j.at("n").get<int>(), {}};
    if (r.m < 1) throw InputError("polynomial JSON: m must be positive");
    for (const auto& t : j.at("terms")) {
      auto beta = t.at("beta").get<std::vector<int>>();
      if (static_cast<int>(beta.size()) != r.m) throw InputError("polynomial JSON: beta has the wrong length");
      const double re = t.at("re").get<double>();
      const double im = t.contains("im") ? t.at("im").get<double>() : 0.0;
      r.terms.emplace_back(MultiIndex(std::move(beta)), Complex(re, im));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("polynomial JSON: ") + e.what());
  }
}

}  // namespace

Polynomial polynomial_from_json(const nlohmann::json& j) {
  auto raw = read_terms(j);
  Polynomial P(raw.m, raw.n);
  for (const auto& [beta, c] : raw.terms) P.set(beta, P.coeff(beta) + c);
  return P;
}

DiffOperator operator_from_json(const nlohmann::json& j) {
  auto raw = read_terms(j);
  if (raw.terms.empty()) {
    if (raw.n == 0) return DiffOperator::identity(raw.m);
    throw InputError("operator JSON: no terms");
  }
  DiffOperator D(raw.m, raw.n);
  for (const auto& [alpha, b] : raw.terms) {
    if (alpha.order() != raw.n) throw InputError("operator JSON: every beta must have order N = n");
    auto it = D.weights().find(alpha);
    D.set(alpha, (it == D.weights().end() ? Complex{} : it->second) + b);
  }
  return D;
}

nlohmann::json operator_to_json(const DiffOperator& D) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [alpha, b] : D.weights())
    terms.push_back({{"beta", alpha.exponents()}, {"re", b.real()}, {"im", b.imag()}});
  return {{"m", D.dimension()}, {"n", D.order()}, {"terms", terms}};
}

}  // namespace sharpconst
