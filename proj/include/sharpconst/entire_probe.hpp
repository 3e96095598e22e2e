#pragma once

#include <json.hpp>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sharpconst/basis.hpp"
#include "sharpconst/convex_body.hpp"
#include "sharpconst/polynomial.hpp"
#include "sharpconst/quadrature.hpp"
#include "sharpconst/sharp_constants.hpp"

namespace sharpconst {

namespace sample {

/// prod_j (sin(s_j x_j / k) / (s_j x_j / k))^k: type s_j in x_j, in L_p for kp > 1.
struct SincProduct {
  std::vector<double> sigma;
  int k = 2;
};

/// f(x) = integral over V of e^{i t.x} dt, by the body quadrature of V.
/// Real and even; f(0) = |V|.
struct BodyFourier {
  ConvexBody V;
  std::shared_ptr<const QuadratureRule> rule;
};

/// cos(omega.x - phase). Bounded, not in L_p for p < inf.
struct PlaneWave {
  std::vector<double> omega;
  double phase = 0.0;
};

/// Q(y) = sum c_b phi_b(y) over a (rescaled) Chebyshev basis.
struct RescaledExtremal {
  std::shared_ptr<const ChebyshevBasis> basis;
  Eigen::VectorXcd coeffs;
};

}  // namespace sample

using SampleKind = std::variant<sample::SincProduct, sample::BodyFourier, sample::PlaneWave, sample::RescaledExtremal>;

/// A full-space L_p norm (or an upper bound for it) with its origin.
struct NormValue {
  double value = 0.0;
  /// "closed-form" or "quadrature+tail".
  std::string source;
  /// Tail bound over the truncated part, relative to the truncated integral.
  double tail_fraction = 0.0;
};

class EntireSample {
 public:
  static EntireSample sinc_product(std::vector<double> sigma, int k);
  static EntireSample body_fourier(const ConvexBody& V, int radial = 96, int angular = 256);
  static EntireSample plane_wave(std::vector<double> omega, double phase = 0.0);
  /// Constant 1 on R^m.
  static EntireSample constant(int m);
  /// Q_n(y) = P_n(y / n) for a polynomial result of the sharp-constant solver.
  static EntireSample rescaled_extremal(const SharpConstantResult& r, int n);

  int dimension() const { return m_; }
  const SampleKind& kind() const { return kind_; }
  std::string name() const;

  Complex value(std::span<const double> x) const;
  /// D^alpha f(x).
  Complex derivative(const MultiIndex& alpha, std::span<const double> x) const;
  /// D_N(f)(x).
  Complex apply(const DiffOperator& D, std::span<const double> x) const;

  /// Whether ||f||_p is finite.
  bool in_lp(double p) const;
  /// Closed-form ||f||_{L_p(R^m)} when one is known:
  /// sinc products for p = inf and for even integer kp <= 24;
  /// body transforms for p = 2 (Plancherel, (2 pi)^m |V|) and p = inf (|V|);
  /// plane waves and constants for p = inf.
  std::optional<double> known_norm(double p) const;
  /// Sinc products only: truncated quadrature over [-R, R]^m plus the
  /// analytic tail bound, an upper bound for the full-space norm.
  NormValue norm_upper_bound(double p, double R) const;

 private:
  EntireSample(int m, SampleKind k) : m_(m), kind_(std::move(k)) {}
  int m_;
  SampleKind kind_;
};

/// integral over R of |sin u / u|^q for an even integer 2 <= q <= 24.
double sinc_power_integral(int q);

struct LowerBoundE {
  double value = 0.0;
  double numerator = 0.0;    ///< grid max of |D_N f| on [-R, R]^m
  double denominator = 0.0;  ///< full-space ||f||_p (closed form or upper bound)
  std::string norm_source;
};

/// (grid max of |D_N f|) / ||f||_{L_p(R^m)}: a lower bound for the limit
/// constant when f has exponential type V. The denominator is a closed form
/// or an upper bound (truncation plus analytic tail), never a truncation.
/// grid: points per axis on [-R, R].
LowerBoundE ratio_lower_bound_E(const EntireSample& f, const DiffOperator& D, double p, double R, int grid);

struct BernsteinNikolskii {
  double derivative_ratio = 0.0;  ///< ||D^alpha f||_inf / ||f||_inf on the grid
  double nikolskii_ratio = 0.0;   ///< ||f||_inf / ||f||_p
};

/// Measured ratios on [-R, R]^m (grid points per axis; 1-D maxima refined).
/// ||f||_p comes from known_norm, else norm_upper_bound; p = inf skips it.
BernsteinNikolskii bernstein_nikolskii_check(const EntireSample& f, const MultiIndex& alpha, double p, double R,
                                             int grid);

struct DecayEntry {
  int k = 0;
  double error = 0.0;
};

/// Degree-k Chebyshev interpolation of f on [-tau k, tau k] for k = 4..k_max;
/// sup error on 10^4 equispaced points.
std::vector<DecayEntry> approx_decay_1d(const EntireSample& f, double tau, int k_max);

/// Least-squares slope of log(error) against k over the second half of the
/// table, ignoring errors below 1e-14. Negative for exponential decay.
double log_decay_slope(const std::vector<DecayEntry>& table);

struct ExtractionEntry {
  int n = 0;
  double value = 0.0;
  /// sup |Q_n - Q_next| on the grid of [-2, 2]^m; NaN for the last entry.
  double dist_to_next = 0.0;
  double normalization_residual = 0.0;
  double stability_delta = std::numeric_limits<double>::quiet_NaN();
  std::string method;
  EntireSample Q = EntireSample::constant(1);
};

struct ExtractionReport {
  std::vector<ExtractionEntry> entries;
  std::vector<Point> grid;
  /// Last Q_n on the grid.
  std::vector<Complex> samples;

  nlohmann::json to_json() const;
};

/// Solves the extremal problem for each n, forms Q_n(y) = P_n(y / n) and
/// divides by D_N(Q_n)(0). Grid on [-2, 2]^m: 512 points for m = 1, 65 per
/// axis for m = 2, 17 for m = 3. jobs > 1 solves in parallel.
ExtractionReport extremal_extraction(double p, const DiffOperator& D, const ConvexBody& V, const std::vector<int>& n_list,
                                     const SolveOptions& options = {}, int jobs = 1);

}  // namespace sharpconst
