#pragma once

#include <Eigen/Dense>

namespace sharpconst {

struct UnitRowLpResult {
  Eigen::VectorXd x;   ///< maximizer
  double value = 0.0;  ///< L . x
  int iterations = 0;
};

/// Maximize L.x subject to |A.row(i) . x| <= 1 for every row i.
///
/// Primal-dual interior point method. When the maximizer is not unique the
/// result approximates the analytic center of the optimal face.
///
/// Throws DegenerateRuleError when L is not in the row space of A (the
/// primal is unbounded) or A has dependent columns on the given rows.
UnitRowLpResult maximize_under_unit_rows(const Eigen::MatrixXd& A, const Eigen::VectorXd& L);

}  // namespace sharpconst
