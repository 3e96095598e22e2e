#include "sharpconst/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sharpconst/errors.hpp"

namespace sharpconst {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kGapTol = 1e-13;
constexpr double kResidualTol = 1e-12;
constexpr double kRegularization = 1e-15;
constexpr int kStallIterations = 8;
constexpr double kStepFraction = 0.995;

// Largest a in (0, 1] with v + a dv >= 0.
double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double a = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (dv(i) < 0.0) a = std::min(a, -v(i) / dv(i));
  return a;
}

struct Direction {
  Eigen::VectorXd dx, dsp, dsm, dzp, dzm;
};

}  // namespace

// Primal-dual interior point (Mehrotra predictor-corrector) on
//   min -L.x  s.t.  A x + sp = 1,  -A x + sm = 1,  sp, sm >= 0,
// with duals zp, zm >= 0 and A^T (zp - zm) = L. The iterates follow the
// central path, so on a degenerate optimal face the limit is its analytic
// center rather than a vertex.
UnitRowLpResult maximize_under_unit_rows(const Eigen::MatrixXd& A, const Eigen::VectorXd& Lin) {
  if (A.cols() != Lin.size()) throw InputError("LP: column count of A must equal the size of L");
  if (A.rows() == 0) throw DegenerateRuleError("LP: no constraint rows");
  const Eigen::Index N = A.rows(), K = A.cols();
  UnitRowLpResult out;
  const double scale = Lin.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    out.x = Eigen::VectorXd::Zero(K);
    return out;
  }
  if (N < K) throw DegenerateRuleError("LP: fewer node evaluations than unknowns");
  {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-11);
    if (qr.rank() < K) throw DegenerateRuleError("LP: node evaluations do not separate the basis (rank deficient)");
  }
  const Eigen::VectorXd L = Lin / scale;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(K);
  Eigen::VectorXd sp = Eigen::VectorXd::Ones(N), sm = Eigen::VectorXd::Ones(N);
  Eigen::VectorXd zp = Eigen::VectorXd::Ones(N), zm = Eigen::VectorXd::Ones(N);
  Eigen::MatrixXd B(N, K), M(K, K);
  Eigen::VectorXd best_x = x;
  double best_merit = std::numeric_limits<double>::infinity();
  int since_best = 0;

  for (int it = 0; it < kMaxIterations; ++it) {
    const Eigen::VectorXd Ax = A * x;
    const Eigen::VectorXd rx = A.transpose() * (zp - zm) - L;
    const Eigen::VectorXd rsp = Ax + sp - Eigen::VectorXd::Ones(N);
    const Eigen::VectorXd rsm = -Ax + sm - Eigen::VectorXd::Ones(N);
    const double primal = L.dot(x);
    const double dual = zp.sum() + zm.sum();
    const double gap = std::abs(dual - primal) / std::max(1.0, std::abs(primal));
    const double res = std::max({rx.cwiseAbs().maxCoeff(), rsp.cwiseAbs().maxCoeff(), rsm.cwiseAbs().maxCoeff()});
    out.iterations = it;
    if (gap < kGapTol && res < kResidualTol) {
      best_x = x;
      break;
    }
    const double merit = std::max(gap, res);
    if (merit < best_merit) {
      best_merit = merit;
      best_x = x;
      since_best = 0;
    } else if (++since_best >= kStallIterations) {
      break;
    }

    const Eigen::VectorXd dp = zp.cwiseQuotient(sp), dm = zm.cwiseQuotient(sm);
    B = A.array().colwise() * (dp + dm).cwiseSqrt().array();
    M.setZero();
    M.selfadjointView<Eigen::Lower>().rankUpdate(B.transpose());
    Eigen::LDLT<Eigen::MatrixXd> ldlt(M.selfadjointView<Eigen::Lower>());
    if (ldlt.info() != Eigen::Success) {
      // Near the optimum the weights span ~16 decades and roundoff can leave a
      // negative pivot; a relative diagonal shift restores definiteness.
      M.diagonal().array() += kRegularization * M.diagonal().maxCoeff();
      ldlt.compute(M.selfadjointView<Eigen::Lower>());
      if (ldlt.info() != Eigen::Success) break;
    }

    // Newton direction for the complementarity target s o z = rc.
    auto direction = [&](const Eigen::VectorXd& rcp, const Eigen::VectorXd& rcm) {
      Direction d;
      const Eigen::VectorXd tp = dp.cwiseProduct(rsp) - rcp.cwiseQuotient(sp);
      const Eigen::VectorXd tm = dm.cwiseProduct(rsm) - rcm.cwiseQuotient(sm);
      d.dx = ldlt.solve(-rx - A.transpose() * (tp - tm));
      const Eigen::VectorXd Adx = A * d.dx;
      d.dsp = -rsp - Adx;
      d.dsm = -rsm + Adx;
      d.dzp = tp + dp.cwiseProduct(Adx);
      d.dzm = tm - dm.cwiseProduct(Adx);
      return d;
    };

    const double mu = (sp.dot(zp) + sm.dot(zm)) / static_cast<double>(2 * N);
    const Direction aff = direction(sp.cwiseProduct(zp), sm.cwiseProduct(zm));
    const double ap = std::min(max_step(sp, aff.dsp), max_step(sm, aff.dsm));
    const double ad = std::min(max_step(zp, aff.dzp), max_step(zm, aff.dzm));
    const double mu_aff = ((sp + ap * aff.dsp).dot(zp + ad * aff.dzp) + (sm + ap * aff.dsm).dot(zm + ad * aff.dzm)) /
                          static_cast<double>(2 * N);
    const double sigma = std::pow(mu_aff / mu, 3);

    const Eigen::VectorXd rcp = (sp.cwiseProduct(zp) + aff.dsp.cwiseProduct(aff.dzp)).array() - sigma * mu;
    const Eigen::VectorXd rcm = (sm.cwiseProduct(zm) + aff.dsm.cwiseProduct(aff.dzm)).array() - sigma * mu;
    const Direction d = direction(rcp, rcm);
    const double sp_step = std::min(1.0, kStepFraction * std::min(max_step(sp, d.dsp), max_step(sm, d.dsm)));
    const double sd_step = std::min(1.0, kStepFraction * std::min(max_step(zp, d.dzp), max_step(zm, d.dzm)));
    if (!(sp_step > 0.0 && sd_step > 0.0) || !d.dx.allFinite()) break;
    x += sp_step * d.dx;
    sp += sp_step * d.dsp;
    sm += sp_step * d.dsm;
    zp += sd_step * d.dzp;
    zm += sd_step * d.dzm;
  }
  if (!best_x.allFinite()) throw InternalError("LP: interior point iteration diverged");
  out.x = best_x;
  out.value = Lin.dot(x);
  return out;
}

}  // namespace sharpconst
