#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sharpconst/convex_body.hpp"

namespace sharpconst {

/// Per-coordinate cosine change of variables mapping [a_j, b_j] onto [0, pi]:
///   cos u_j = ((cos a_j - cos b_j) / 2) cos t_j + (cos a_j + cos b_j) / 2.
/// Requires 0 <= a_j < b_j <= pi and u_j in [a_j, b_j].
Point bari_substitution(std::span<const double> u, std::span<const double> a, std::span<const double> b);

/// Inverse map t -> u.
Point bari_inverse(std::span<const double> t, std::span<const double> a, std::span<const double> b);

/// T(u) = sum_{k in [0, n]^m} c_k prod_j cos(k_j u_j): even in every variable,
/// degree at most n in each.
class EvenTrigPoly {
 public:
  EvenTrigPoly(int m, int n);

  int dimension() const { return m_; }
  int degree() const { return n_; }
  /// Flat index: k_0 + (n+1) k_1 + (n+1)^2 k_2.
  double& coeff(std::span<const int> k);
  double coeff(std::span<const int> k) const;
  const std::vector<double>& coefficients() const { return c_; }

  double operator()(std::span<const double> u) const;

  /// Independent standard normal coefficients.
  static EvenTrigPoly random(int m, int n, std::uint64_t seed);
  /// Tensor product of squared Fejer kernels of degree n (n even), symmetrized
  /// around +-center_j; sharply peaked at u = center.
  static EvenTrigPoly fejer_peak(int m, int n, std::span<const double> center);

 private:
  std::size_t flat(std::span<const int> k) const;

  int m_;
  int n_;
  std::vector<double> c_;
};

struct BariBoxes {
  std::vector<double> a, b, a1, b1;
};

/// ||T||_{L_inf(prod [a1_j, b1_j])} / (n^{m/p} ||T||_{L_p(prod [a_j, b_j])}),
/// the L_p norm by tensor Gauss-Legendre with `grid` points per axis and the
/// sup on a `grid`-point tensor grid of the inner box (refined for m = 1).
/// Requires 0 <= a_j < a1_j <= b1_j < b_j <= pi.
double bari_inequality_check(const EvenTrigPoly& T, int n, const BariBoxes& boxes, double p, int grid);

}  // namespace sharpconst
