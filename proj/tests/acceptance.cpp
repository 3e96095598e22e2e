// Acceptance report: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "gram_oracle.hpp"
#include "sharpconst/entire_probe.hpp"
#include "sharpconst/format.hpp"
#include "sharpconst/runner.hpp"
#include "sharpconst/sharp_constants.hpp"

using namespace sharpconst;

namespace {

// Pinned tolerances.
constexpr double kTrivialTol = 1e-9;
constexpr double kTrivialSeconds = 60.0;
constexpr double kGramTol = 1e-6;
constexpr double kRationalTol = 1e-8;
constexpr double kBernsteinLow = 1e-4;
constexpr double kBernsteinHigh = 1e-6;
constexpr double kBernsteinLimitTol = 1e-4;
constexpr double kBernsteinSeconds = 300.0;
constexpr double kLowerBoundSlack = 1e-4;
constexpr double kLowerBoundExcess = 0.03;
constexpr double kTrigAgreement = 0.05;
constexpr double kScalingTol = 1e-6;
constexpr double kExtractionSup = 0.05;
constexpr double kResidualTol = 1e-10;

SolveOptions plain() {
  SolveOptions o;
  o.stability_check = false;
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome trivial_constant() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<ConvexBody> bodies = {ConvexBody::cube(1, 1.0), ConvexBody::ball(2, 1.0), ConvexBody::cube(2, 1.0)};
  double worst = 0.0;
  for (const auto& V : bodies)
    for (int n = 1; n <= 12; ++n)
      worst = std::max(worst, std::abs(compute_M(kInfinity, DiffOperator::identity(V.dimension()), n, V).value - 1.0));
  const double s = seconds_since(t0);
  return {worst <= kTrivialTol && s < kTrivialSeconds,
          "max |M_n - 1| = " + format_double(worst) + ", " + format_double(s) + " s"};
}

Outcome gram_oracle_match() {
  const auto V = ConvexBody::cube(1, 1.0);
  const double m1 = compute_M(2.0, DiffOperator::identity(1), 1, V).value;
  const double m2 = compute_M(2.0, DiffOperator::identity(1), 2, V).value;
  bool ok = std::abs(m1 - 0.7071068) <= kGramTol && std::abs(m2 - 0.75) <= kGramTol;
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n)
    worst = std::max(worst, std::abs(compute_M(2.0, DiffOperator::identity(1), n, V).value - gram_oracle::compute_M(n)));
  ok = ok && worst <= kRationalTol;
  return {ok, "M_1 = " + format_double(m1) + ", M_2 = " + format_double(m2) + ", rational max diff " +
                  format_double(worst)};
}

Outcome bernstein_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto V = ConvexBody::cube(1, 1.0);
  const auto D = DiffOperator::partial(MultiIndex({1}));
  std::vector<std::pair<int, double>> values;
  bool in_band = true;
  double lo = kInfinity, hi = 0.0;
  for (int n = 5; n <= 41; n += 2) {
    const double v = compute_M(kInfinity, D, n, V).value;
    values.emplace_back(n, v);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    in_band = in_band && v >= 1.0 - kBernsteinLow && v <= 1.0 + kBernsteinHigh;
  }
  const auto est = estimate_E_limit(values);
  const double s = seconds_since(t0);
  return {in_band && std::abs(est.estimate - 1.0) <= kBernsteinLimitTol && s < kBernsteinSeconds,
          "M_n in [" + format_double(lo) + ", " + format_double(hi) + "], limit " + format_double(est.estimate) + ", " +
              format_double(s) + " s"};
}

Outcome lower_bound_consistency() {
  const auto f = EntireSample::sinc_product({1.0}, 2);
  const double lb = ratio_lower_bound_E(f, DiffOperator::identity(1), 1.0, 50.0, 2001).value;
  std::vector<std::pair<int, double>> values;
  for (int n = 4; n <= 32; n += 4)
    values.emplace_back(n, compute_M(1.0, DiffOperator::identity(1), n, ConvexBody::cube(1, 1.0), plain()).value);
  const double limit = estimate_E_limit(values).estimate;
  const bool ok = lb >= 1.0 / (2.0 * std::numbers::pi) - kLowerBoundSlack && lb <= limit * (1.0 + kLowerBoundExcess);
  return {ok, "lower bound " + format_double(lb) + ", extrapolated limit " + format_double(limit)};
}

Outcome trig_cross_check() {
  const auto V = ConvexBody::cube(1, 1.0);
  std::vector<std::pair<int, double>> alg, trig;
  for (int n = 8; n <= 48; n += 4) {
    alg.emplace_back(n, compute_M(2.0, DiffOperator::identity(1), n, V, plain()).value);
    trig.emplace_back(n, compute_P_trig(2.0, DiffOperator::identity(1), n, V, plain()).value);
  }
  const double a = estimate_E_limit(alg).estimate;
  const double b = estimate_E_limit(trig).estimate;
  const double rel = std::abs(a - b) / std::max(a, b);
  return {rel <= kTrigAgreement,
          "M limit " + format_double(a) + ", P limit " + format_double(b) + ", rel diff " + format_double(rel)};
}

Outcome scaling_covariance() {
  std::mt19937_64 rng(20261018);
  std::uniform_int_distribution<int> coin(0, 1);
  std::normal_distribution<double> g;
  const std::vector<double> ps = {1.5, 2.0, 3.0, kInfinity};
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const int m = 1 + coin(rng);
    const ConvexBody V = m == 1 ? ConvexBody::cube(1, 1.0)
                                : (coin(rng) ? ConvexBody::ball(2, 1.0) : ConvexBody::lp_ball(3.0, {1.0, 0.6}));
    const int N = coin(rng);
    DiffOperator D(m, N);
    for (const auto& alpha : multi_indices_of_order(m, N)) D.set(alpha, g(rng));
    const double p = ps[std::uniform_int_distribution<std::size_t>(0, ps.size() - 1)(rng)];
    const int n = 2 + t % 4;
    const double base = compute_M(p, D, n, V, plain()).value;
    for (double c : {0.5, 2.0}) {
      const double expect = std::pow(c, N + (std::isinf(p) ? 0.0 : m / p)) * base;
      worst = std::max(worst, std::abs(compute_M(p, D, n, V.scaled(c), plain()).value - expect) / expect);
    }
  }
  return {worst <= kScalingTol, "max relative deviation " + format_double(worst)};
}

Outcome suite_outcome(const std::string& name) {
  const auto r = verify_suite(name, 0);
  std::string detail;
  for (const auto& c : r.checks)
    if (!c.passed || detail.empty()) detail = c.name + ": " + c.detail;
  return {r.passed, detail};
}

Outcome all_suites() {
  std::string failed;
  for (const auto& name : suite_names())
    if (!verify_suite(name, 0).passed) failed += " " + name;
  return {failed.empty(), failed.empty() ? std::to_string(suite_names().size()) + " suites passed" : "failed:" + failed};
}

Outcome sin_extraction() {
  std::vector<int> ns;
  for (int n = 5; n <= 41; n += 4) ns.push_back(n);
  const auto rep =
      extremal_extraction(kInfinity, DiffOperator::partial(MultiIndex({1})), ConvexBody::cube(1, 1.0), ns, plain());
  double sup = 0.0, residual = 0.0;
  for (std::size_t i = 0; i < rep.grid.size(); ++i)
    sup = std::max(sup, std::abs(rep.samples[i] - Complex(std::sin(rep.grid[i][0]))));
  for (const auto& e : rep.entries) residual = std::max(residual, e.normalization_residual);
  return {rep.entries.back().n == 41 && sup <= kExtractionSup && residual <= kResidualTol,
          "sup |Q_41 - sin| = " + format_double(sup) + ", max residual " + format_double(residual)};
}

Outcome reproducibility() {
  const std::vector<nlohmann::json> docs = {
      {{"schema", 1}, {"task", "sweep-M"}, {"p", 3}, {"m", 2}, {"body", "ball:1"}, {"N", 0},
       {"n", {{"min", 1}, {"max", 5}}}, {"seed", 7}},
      {{"schema", 1}, {"task", "sweep-M"}, {"p", 0.5}, {"m", 1}, {"body", "box:1"}, {"N", 0},
       {"n", {{"min", 2}, {"max", 6}}}, {"seed", 42}},
      {{"schema", 1}, {"task", "sweep-P"}, {"p", "inf"}, {"m", 1}, {"body", "box:1"}, {"N", 1},
       {"n", {{"min", 1}, {"max", 6}}}}};
  for (const auto& doc : docs) {
    const auto cfg = parse_config(doc);
    const std::string first = to_csv(run(cfg, 1));
    const std::string second = to_csv(run(cfg, 1));
    const std::string threaded = to_csv(run(cfg, 3));
    if (first != second || first != threaded) return {false, "csv differs for " + doc.dump()};
  }
  return {true, std::to_string(docs.size()) + " configs, serial and threaded reruns identical"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"trivial constant p=inf N=0", trivial_constant},
      {"p=2 Gram oracle", gram_oracle_match},
      {"Bernstein convergence p=inf N=1", bernstein_convergence},
      {"sinc lower bound vs limit", lower_bound_consistency},
      {"algebraic vs trigonometric limit", trig_cross_check},
      {"scaling covariance", scaling_covariance},
      {"real vs complex optimum", [] { return suite_outcome("real-complex"); }},
      {"inequality suites", all_suites},
      {"extremal extraction toward sin", sin_extraction},
      {"bit-identical reruns", reproducibility},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("criterion %2zu %s: %s (%s)\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
