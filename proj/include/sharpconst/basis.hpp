#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <span>
#include <vector>

#include "sharpconst/convex_body.hpp"
#include "sharpconst/polynomial.hpp"

namespace sharpconst {

/// A finite real function system phi_0, ..., phi_{K-1} on R^m.
class Basis {
 public:
  virtual ~Basis() = default;
  virtual int dimension() const = 0;
  virtual int size() const = 0;
  virtual void eval(std::span<const double> x, std::span<double> out) const = 0;
  /// L_b = D(phi_b)(0).
  virtual Eigen::VectorXcd functional(const DiffOperator& D) const = 0;
  /// Coefficient vector as exchange JSON.
  virtual nlohmann::json to_json(const Eigen::VectorXcd& c) const = 0;

  /// Row i holds the basis at pts[i].
  Eigen::MatrixXd matrix(const std::vector<Point>& pts) const;
  Complex evaluate(const Eigen::VectorXcd& c, std::span<const double> x) const;
};

enum class DegreeMode {
  Total,       ///< |beta| <= n
  Coordinate,  ///< beta_j <= n for every j
};

/// phi_beta(y) = prod_j T_{beta_j}(y_j / h_j). Spans the same space as the
/// monomials y^beta but stays well conditioned on a domain with bounding box
/// half-widths h_j.
class ChebyshevBasis final : public Basis {
 public:
  ChebyshevBasis(int m, int n, std::vector<double> scales, DegreeMode mode = DegreeMode::Total);

  int dimension() const override { return m_; }
  int size() const override { return static_cast<int>(idx_.size()); }
  int degree() const { return n_; }
  DegreeMode mode() const { return mode_; }
  const std::vector<MultiIndex>& indices() const { return idx_; }
  const std::vector<double>& scales() const { return h_; }

  void eval(std::span<const double> x, std::span<double> out) const override;
  Eigen::VectorXcd functional(const DiffOperator& D) const override;
  /// Monomial form. Only for output: the expansion cancels heavily for large n.
  nlohmann::json to_json(const Eigen::VectorXcd& c) const override;
  Polynomial to_polynomial(const Eigen::VectorXcd& c) const;

  /// Same coefficients read in the basis for the scales s * h_j, i.e. the
  /// function y -> P(y / s).
  ChebyshevBasis rescaled(double s) const;

 private:
  int m_;
  int n_;
  std::vector<double> h_;
  DegreeMode mode_;
  std::vector<MultiIndex> idx_;
};

/// Real trigonometric system 1, cos(k.x), sin(k.x) over a symmetric frequency
/// set; one of each pair +-k is kept.
class TrigBasis final : public Basis {
 public:
  /// Frequencies k in aV (gauge_V(k) <= a), k in Z^m.
  static TrigBasis lattice(const ConvexBody& V, double a);

  int dimension() const override { return m_; }
  int size() const override { return static_cast<int>(kind_.size()); }
  /// Frequency of entry b (sign-normalized), and whether it is a sine.
  const std::vector<int>& frequency(int b) const { return freq_[static_cast<std::size_t>(b)]; }
  bool is_sine(int b) const { return kind_[static_cast<std::size_t>(b)] == 's'; }
  int lattice_size() const { return lattice_size_; }
  int max_frequency() const;

  void eval(std::span<const double> x, std::span<double> out) const override;
  Eigen::VectorXcd functional(const DiffOperator& D) const override;
  /// {"m":..,"terms":[{"k":[..],"re":..,"im":..}]} in the e^{ik.x} form.
  nlohmann::json to_json(const Eigen::VectorXcd& c) const override;

 private:
  TrigBasis() = default;
  int m_ = 1;
  int lattice_size_ = 0;
  std::vector<std::vector<int>> freq_;
  std::vector<char> kind_;
};

/// T_p^{(k)}(0) for 0 <= p <= n, 0 <= k <= kmax, in floating point.
std::vector<std::vector<double>> chebyshev_derivative_table(int n, int kmax);

}  // namespace sharpconst
