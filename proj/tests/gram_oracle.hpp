#pragma once

// Exact rational reference for the p = 2, N = 0 constant on [-1, 1]:
// sup |P(0)|^2 / ||P||_2^2 = e_0^T G^{-1} e_0 with the monomial moment matrix
// G_ij = integral of x^{i+j} over [-1, 1], inverted in rational arithmetic.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gram_oracle {

using Rational = boost::multiprecision::cpp_rational;

inline Rational origin_value_squared(int n) {
  const int k = n + 1;
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k + 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = (i + j) % 2 == 0 ? Rational(2, i + j + 1) : Rational(0);
    a[i][k] = i == 0 ? 1 : 0;
  }
  for (int c = 0; c < k; ++c) {
    int piv = c;
    while (piv < k && a[piv][c] == 0) ++piv;
    if (piv == k) throw std::runtime_error("singular moment matrix");
    std::swap(a[piv], a[c]);
    for (int r = 0; r < k; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (int j = c; j <= k; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return a[0][k] / a[0][0];
}

/// n^{-1/2} sqrt(e_0^T G^{-1} e_0).
inline double compute_M(int n) {
  return std::sqrt(static_cast<double>(origin_value_squared(n))) / std::sqrt(static_cast<double>(n));
}

}  // namespace gram_oracle
