// sharpconst: batch driver for sharp-constant sweeps and property suites.
//
//   sharpconst run --config path.json [--jobs K] [--out path] [--format csv|json] [--seed S] [--timing]
//   sharpconst verify --suite NAME [--seed S]
//
// Exit codes: 0 success, 1 config error, 2 verification failure, 3 internal error.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "sharpconst/errors.hpp"
#include "sharpconst/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerification = 2;
constexpr int kExitInternal = 3;

struct RunArgs {
  std::string config;
  int jobs = 1;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  bool timing = false;
};

int do_run(const RunArgs& args) {
  auto cfg = sharpconst::load_config(args.config);
  if (args.out) cfg.out = *args.out;
  if (args.format) cfg.format = *args.format;
  if (args.seed) {
    cfg.seed = *args.seed;
    cfg.echo["seed"] = *args.seed;
  }
  if (args.timing) cfg.timing = true;

  const auto report = sharpconst::run(cfg, args.jobs);
  const std::string text =
      cfg.format == "json" ? sharpconst::to_json(report).dump(2) + "\n" : sharpconst::to_csv(report);
  if (cfg.out.empty())
    std::cout << text;
  else
    sharpconst::write_atomic(cfg.out, text);

  int failed = 0;
  for (const auto& row : report.rows) {
    if (row.failed) {
      ++failed;
      std::cerr << "row n=" << row.n << " failed: " << row.error << "\n";
    } else if (row.unstable) {
      std::cerr << "row n=" << row.n << " unstable: stability_delta=" << row.stability_delta << "\n";
    }
  }
  if (report.limit && !report.limit->converged)
    std::cerr << "limit estimate did not converge (oscillation " << report.limit->oscillation << ")\n";
  if (report.verification_failed()) return kExitVerification;
  return kExitOk;
}

int do_verify(const std::string& suite, std::uint64_t seed) {
  const auto result = sharpconst::verify_suite(suite, seed);
  for (const auto& c : result.checks)
    std::cout << (c.passed ? "PASS " : "FAIL ") << result.name << ": " << c.name << " (" << c.detail << ")\n";
  std::cout << result.name << ": " << (result.passed ? "passed" : "FAILED") << "\n";
  return result.passed ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal constants for polynomial inequalities on convex bodies"};
  app.set_version_flag("--version", sharpconst::tool_version());
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Execute a config-driven sweep");
  run->add_option("--config", run_args.config, "JSON config file")->required();
  run->add_option("--jobs", run_args.jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--out", run_args.out, "Output path (default: stdout)");
  run->add_option("--format", run_args.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--seed", run_args.seed, "Override the config seed");
  run->add_flag("--timing", run_args.timing, "Record wall-clock per row (breaks bit-identical output)");

  std::string suite;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", suite, "Suite name")->required();
  verify->add_option("--seed", seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return do_run(run_args);
    return do_verify(suite, seed);
  } catch (const sharpconst::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const sharpconst::InputError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
