#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <complex>
#include <map>
#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "sharpconst/convex_body.hpp"

namespace sharpconst {

using Complex = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;

/// Exponent vector beta in Z_+^m. Ordered lexicographically.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  static MultiIndex zero(int m) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(m), 0)); }

  int dimension() const { return static_cast<int>(e_.size()); }
  int order() const;
  /// beta! = prod beta_j!
  double factorial() const;
  int operator[](int j) const { return e_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& exponents() const { return e_; }

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> e_;
};

/// All multi-indices of dimension m with |beta| <= n, lexicographic.
std::vector<MultiIndex> multi_indices_total_degree(int m, int n);
/// All multi-indices of dimension m with |beta| == N, lexicographic.
std::vector<MultiIndex> multi_indices_of_order(int m, int N);

/// P(y) = sum_{|beta| <= n} c_beta y^beta with complex coefficients.
/// Iteration over terms is lexicographic in beta.
class Polynomial {
 public:
  Polynomial(int m, int n);
  static Polynomial constant(int m, Complex c);
  /// T_n embedded in one variable.
  static Polynomial chebyshev(int n);

  int dimension() const { return m_; }
  int degree_bound() const { return n_; }
  const std::map<MultiIndex, Complex>& terms() const { return c_; }

  Complex coeff(const MultiIndex& beta) const;
  /// Stores c_beta; zero values remove the key.
  void set(const MultiIndex& beta, Complex value);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(Complex s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }

 private:
  int m_;
  int n_;
  std::map<MultiIndex, Complex> c_;
};

/// D_N = sum_{|alpha| = N} b_alpha D^alpha. N = 0 is the identity.
class DiffOperator {
 public:
  DiffOperator(int m, int N);
  static DiffOperator identity(int m);
  static DiffOperator partial(const MultiIndex& alpha, Complex weight = 1.0);
  static DiffOperator laplacian(int m);

  int dimension() const { return m_; }
  int order() const { return N_; }
  const std::map<MultiIndex, Complex>& weights() const { return b_; }
  void set(const MultiIndex& alpha, Complex weight);
  bool has_real_weights() const;

 private:
  int m_;
  int N_;
  std::map<MultiIndex, Complex> b_;
};

Complex eval(const Polynomial& P, std::span<const double> y);

/// D_N(P)(0) = sum_alpha b_alpha alpha! c_alpha.
Complex derivative_at_zero(const DiffOperator& D, const Polynomial& P);

/// The |beta| = k block of P.
Polynomial homogeneous_part(const Polynomial& P, int k);

/// D^alpha P.
Polynomial derivative(const Polynomial& P, const MultiIndex& alpha);

/// Q(y) = P(y / s).
Polynomial rescale(const Polynomial& P, double s);

/// Integer coefficients of T_n, index = power. Exact for n <= 60.
std::vector<BigInt> chebyshev_coefficients(int n);

/// |T_n^{(k)}(0)|, exact. Zero when n - k is odd. Requires 0 <= k <= n <= 60.
BigInt chebyshev_derivative_at_zero(int n, int k);

/// Sharp V. A. Markov bound on |d_k| for sum d_j tau^j with sup M on [-a, a]:
/// M |T_{n-1}^{(k)}(0)| / (k! a^k) if n - k is odd, M |T_n^{(k)}(0)| / (k! a^k) otherwise.
double vam_coefficient_bound(int n, int k, double a, double M);

/// Relaxed form M n^k / (k! a^k).
double vam_relaxed_bound(int n, int k, double a, double M);

/// One failed exact check from audit_coefficient_bounds.
struct CoefficientBoundViolation {
  int n;
  int k;
  std::string relation;
};

/// Exact integer audit, for all 0 <= k <= n <= n_max (n_max <= 60), of the
/// Chebyshev coefficient identities behind the sharp bound (even k, odd k with
/// odd n, odd k with even n), their product forms, and the chain
/// sharp <= (2N or 2N+1 or 2N-1)^k / k! <= n^k / k!. Empty result = all hold.
std::vector<CoefficientBoundViolation> audit_coefficient_bounds(int n_max);

/// |homogeneous_part(P, k)(y)| <= (n ||y||_V^*)^k / (k! a^k) * sup_estimate * (1 + 1e-8),
/// where sup_estimate approximates ||P||_{L_inf(a V^*)}.
bool homogeneous_bound_check(const Polynomial& P, const ConvexBody& V, double a, std::span<const double> y, int k,
                             double sup_estimate);

/// {"m":..,"n":..,"terms":[{"beta":[..],"re":..,"im":..},...]}
nlohmann::json polynomial_to_json(const Polynomial& P);
Polynomial polynomial_from_json(const nlohmann::json& j);
/// Same schema; every beta must have order N = "n".
DiffOperator operator_from_json(const nlohmann::json& j);
nlohmann::json operator_to_json(const DiffOperator& D);

}  // namespace sharpconst
