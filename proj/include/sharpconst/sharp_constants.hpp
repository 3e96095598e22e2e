#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sharpconst/basis.hpp"
#include "sharpconst/convex_body.hpp"
#include "sharpconst/polynomial.hpp"
#include "sharpconst/quadrature.hpp"

namespace sharpconst {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Method { GramP2, LpInfinity, Irls, Multistart, NewtonComplex };
std::string method_tag(Method m);

/// Discretization sizes. Zero fields take dimension defaults (radial 48;
/// angular 256 for m = 2, 64 for m = 3; torus grid from the frequencies).
/// The solver raises them where the degree needs more nodes.
struct Resolution {
  int radial = 0;
  int angular = 0;
  int torus = 0;
};

struct SolveOptions {
  Resolution resolution;
  /// Recompute at doubled resolution and report the relative change.
  bool stability_check = true;
  std::uint64_t seed = 0;
  /// Random restarts for p < 1.
  int restarts = 16;
  /// Optimize over real coefficient vectors only (finite p).
  bool real_coefficients = false;
  /// Finite p: use the Newton method on complex coefficients instead of IRLS.
  bool complex_newton = false;
  DegreeMode degree_mode = DegreeMode::Total;
};

struct Diagnostics {
  int radial = 0;
  int angular = 0;
  int torus = 0;
  std::size_t nodes = 0;
  int iterations = 0;
  int restarts = 0;
  /// |value(2x resolution) - value| / value; NaN when not computed.
  double stability_delta = std::numeric_limits<double>::quiet_NaN();
  bool unstable = false;
};

/// Relative change above which a constant is flagged unstable.
inline constexpr double kStabilityGate = 0.005;

struct SharpConstantResult {
  std::string kind = "M";
  double value = 0.0;
  /// The supremum before the power-of-n prefactor.
  double raw_norm = 0.0;
  /// Extremal coefficients over `basis`, scaled so that the extremal has unit
  /// norm and its functional value is raw_norm (real, positive).
  Eigen::VectorXcd coeffs;
  std::shared_ptr<const Basis> basis;
  Method method = Method::GramP2;
  Diagnostics diagnostics;
  std::uint64_t seed = 0;

  nlohmann::json extremal_json() const;
};

/// sup |L(c)| / ||P_c||_{L_p(V^*)} for P_c = sum c_b phi_b over P_{n,m}.
struct ExtremalProblem {
  double p = 2.0;
  DiffOperator D = DiffOperator::identity(1);
  int n = 1;
  ConvexBody V = ConvexBody::cube(1, 1.0);
  SolveOptions options;

  int m() const { return V.dimension(); }
};

/// The inner supremum of the constant, without the prefactor. Method by p:
/// 2 -> closed form, inf -> linear program with point exchange, [1, inf) ->
/// IRLS, (0, 1) -> IRLS with seeded restarts.
SharpConstantResult functional_norm(const ExtremalProblem& prob);

/// n^{-N-m/p} functional_norm.
SharpConstantResult compute_M(double p, const DiffOperator& D, int n, const ConvexBody& V, const SolveOptions& options = {});

/// a^{-N-m/p} sup |D(T)(0)| / ||T||_{L_p([-pi,pi]^m)} over trigonometric
/// polynomials with frequencies in aV. m <= 2.
SharpConstantResult compute_P_trig(double p, const DiffOperator& D, double a, const ConvexBody& V,
                                   const SolveOptions& options = {});

/// n^{-mu} sup ||P||_{L_inf(Omega)} / ||P||_{L_p(Omega)}, the L_inf norm taken
/// over the sup grid of Omega. For p != 2 the best eight grid points under the
/// p = 2 ranking are solved exactly, so the value is a lower bound.
SharpConstantResult compute_N_diff_metrics(double p, int n, const ConvexBody& Omega, double mu,
                                           const SolveOptions& options = {});

/// (M/n)^{m/p} sup |P(0)| / ||P||_{L_p(Q^m(M))}, P of degree <= n in each variable.
SharpConstantResult nikolskii_origin_constant(double p, int m, int n, double M, const SolveOptions& options = {});

/// (a/n)^{m/p} sup ||P||_{L_inf(aV^*)} / ||P||_{L_p((1+eps)aV^*)}, P of degree
/// <= n in each variable.
SharpConstantResult nikolskii_subdomain_constant(double p, int n, const ConvexBody& V, double a, double eps,
                                                 const SolveOptions& options = {});

/// Re-evaluates |L(c)| / ||P_c||_p for the returned coefficients on a fresh
/// discretization at the result's resolution, prefactor included.
double rayleigh_ratio(const ExtremalProblem& prob, const SharpConstantResult& r);

struct ELimitEstimate {
  double estimate = 0.0;
  double slope = 0.0;
  /// max |M_n - fit(n)| / |estimate| over the tail.
  double oscillation = 0.0;
  bool converged = false;
  std::vector<std::pair<int, double>> data;
  std::vector<double> tail_residuals;
};

/// Linear least-squares fit of M_n against 1/n over the tail half; the
/// intercept is the estimate. converged = oscillation <= 2%.
ELimitEstimate estimate_E_limit(const std::vector<std::pair<int, double>>& values);

/// Low-level solvers on a discretization: rows of A are basis values at the
/// nodes, w the quadrature weights.
struct DiscreteSolution {
  double value = 0.0;
  Eigen::VectorXcd coeffs;
  Method method = Method::GramP2;
  int iterations = 0;
  int restarts = 0;
};
DiscreteSolution solve_finite_p(const Eigen::MatrixXd& A, const Eigen::VectorXd& w, const Eigen::VectorXcd& L, double p,
                                const SolveOptions& options);

}  // namespace sharpconst
