#include "sharpconst/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "sharpconst/errors.hpp"
#include "sharpconst/format.hpp"

#ifndef SHARPCONST_VERSION
#define SHARPCONST_VERSION "unknown"
#endif

namespace sharpconst {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownFields = {"schema", "task",   "p",    "m",        "body",           "N",
                                            "weights", "n",     "resolution", "seed", "restarts",       "stability_check",
                                            "mu",      "suites", "out", "format",    "timing"};

template <class F>
auto field(const json& doc, const std::string& key, F&& read) {
  try {
    return read(doc.at(key));
  } catch (const json::exception& e) {
    throw ConfigError("config field '" + key + "': " + e.what());
  }
}

Task parse_task(const std::string& s) {
  if (s == "sweep-M") return Task::SweepM;
  if (s == "sweep-P") return Task::SweepP;
  if (s == "sweep-N") return Task::SweepN;
  if (s == "limit-E") return Task::LimitE;
  if (s == "verify-inequalities") return Task::VerifyInequalities;
  if (s == "extract") return Task::Extract;
  throw ConfigError("config field 'task': unknown task '" + s + "'");
}

std::string task_name(Task t) {
  switch (t) {
    case Task::SweepM: return "sweep-M";
    case Task::SweepP: return "sweep-P";
    case Task::SweepN: return "sweep-N";
    case Task::LimitE: return "limit-E";
    case Task::VerifyInequalities: return "verify-inequalities";
    case Task::Extract: return "extract";
  }
  return "?";
}

double parse_p(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInfinity;
    throw ConfigError("config field 'p': expected a positive number or \"inf\", got \"" + v.get<std::string>() + "\"");
  }
  if (!v.is_number()) throw ConfigError("config field 'p': expected a positive number or \"inf\"");
  const double p = v.get<double>();
  if (!(p > 0.0)) throw ConfigError("config field 'p': must be positive, got " + format_double(p));
  return p;
}

NRange parse_range(const json& v) {
  if (!v.is_object()) throw ConfigError("config field 'n': expected {\"min\", \"max\", \"step\", \"parity\"}");
  NRange r;
  for (const auto& [key, _] : v.items())
    if (key != "min" && key != "max" && key != "step" && key != "parity")
      throw ConfigError("config field 'n': unknown key '" + key + "'");
  r.min = field(v, "min", [](const json& x) { return x.get<int>(); });
  r.max = v.contains("max") ? field(v, "max", [](const json& x) { return x.get<int>(); }) : r.min;
  if (v.contains("step")) r.step = field(v, "step", [](const json& x) { return x.get<int>(); });
  if (v.contains("parity")) {
    const auto s = field(v, "parity", [](const json& x) { return x.get<std::string>(); });
    if (s == "all") r.parity = Parity::All;
    else if (s == "odd") r.parity = Parity::Odd;
    else if (s == "even") r.parity = Parity::Even;
    else throw ConfigError("config field 'n.parity': expected all, odd or even, got '" + s + "'");
  }
  if (r.step < 1) throw ConfigError("config field 'n.step': must be positive");
  if (r.min < 1) throw ConfigError("config field 'n.min': must be positive");
  if (r.values().empty()) throw ConfigError("config field 'n': the range selects no degree");
  return r;
}

DiffOperator parse_operator(const json& doc, int m) {
  const int N = doc.contains("N") ? field(doc, "N", [](const json& x) { return x.get<int>(); }) : 0;
  if (N < 0) throw ConfigError("config field 'N': must be nonnegative");
  if (!doc.contains("weights")) {
    if (N == 0) return DiffOperator::identity(m);
    if (m == 1) return DiffOperator::partial(MultiIndex({N}));
    throw ConfigError("config field 'weights': required when N > 0 and m > 1");
  }
  const json& w = doc.at("weights");
  if (!w.is_array() || w.empty()) throw ConfigError("config field 'weights': expected a nonempty array");
  DiffOperator D(m, N);
  for (const auto& t : w) {
    const auto alpha = field(t, "alpha", [](const json& x) { return x.get<std::vector<int>>(); });
    if (static_cast<int>(alpha.size()) != m)
      throw ConfigError("config field 'weights': alpha has dimension " + std::to_string(alpha.size()) + ", expected " +
                        std::to_string(m));
    const double re = t.contains("re") ? field(t, "re", [](const json& x) { return x.get<double>(); }) : 0.0;
    const double im = t.contains("im") ? field(t, "im", [](const json& x) { return x.get<double>(); }) : 0.0;
    try {
      D.set(MultiIndex(alpha), Complex(re, im));
    } catch (const InputError& e) {
      throw ConfigError(std::string("config field 'weights': ") + e.what());
    }
  }
  return D;
}

// Runs fn(0..count-1) on `jobs` threads; per-index exceptions are kept.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) fn(i);
    });
  for (auto& th : pool) th.join();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::vector<int> NRange::values() const {
  std::vector<int> out;
  for (int n = min; n <= max; n += step) {
    if (parity == Parity::Odd && n % 2 == 0) continue;
    if (parity == Parity::Even && n % 2 != 0) continue;
    out.push_back(n);
  }
  return out;
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!kKnownFields.count(key)) throw ConfigError("config: unknown field '" + key + "'");
  if (!doc.contains("schema") || !doc.at("schema").is_number_integer() || doc.at("schema").get<int>() != 1)
    throw ConfigError("config field 'schema': expected 1");
  RunConfig c;
  c.echo = doc;
  c.task = parse_task(field(doc, "task", [](const json& x) { return x.get<std::string>(); }));
  if (doc.contains("m")) c.m = field(doc, "m", [](const json& x) { return x.get<int>(); });
  if (c.m < 1 || c.m > 3) throw ConfigError("config field 'm': must lie in 1..3");

  if (c.task != Task::VerifyInequalities) {
    c.p = field(doc, "p", parse_p);
    if (doc.contains("body")) c.body = field(doc, "body", [](const json& x) { return x.get<std::string>(); });
    (void)parse_body(c.body, c.m);  // validates, ConfigError names the token
    c.D = parse_operator(doc, c.m);
    c.n = parse_range(field(doc, "n", [](const json& x) { return x; }));
  }
  if (doc.contains("resolution")) {
    const json& r = doc.at("resolution");
    if (!r.is_object()) throw ConfigError("config field 'resolution': expected an object");
    if (r.contains("radial")) c.resolution.radial = field(r, "radial", [](const json& x) { return x.get<int>(); });
    if (r.contains("angular")) c.resolution.angular = field(r, "angular", [](const json& x) { return x.get<int>(); });
    if (r.contains("torus")) c.resolution.torus = field(r, "torus", [](const json& x) { return x.get<int>(); });
  }
  if (doc.contains("seed")) c.seed = field(doc, "seed", [](const json& x) { return x.get<std::uint64_t>(); });
  if (doc.contains("restarts")) c.restarts = field(doc, "restarts", [](const json& x) { return x.get<int>(); });
  if (c.restarts < 0) throw ConfigError("config field 'restarts': must be nonnegative");
  if (doc.contains("stability_check"))
    c.stability_check = field(doc, "stability_check", [](const json& x) { return x.get<bool>(); });
  if (doc.contains("mu")) c.mu = field(doc, "mu", [](const json& x) { return x.get<double>(); });
  if (doc.contains("suites")) {
    c.suites = field(doc, "suites", [](const json& x) { return x.get<std::vector<std::string>>(); });
    for (const auto& s : c.suites)
      if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
        throw ConfigError("config field 'suites': unknown suite '" + s + "'");
  }
  if (doc.contains("out")) c.out = field(doc, "out", [](const json& x) { return x.get<std::string>(); });
  if (doc.contains("format")) c.format = field(doc, "format", [](const json& x) { return x.get<std::string>(); });
  if (c.format != "csv" && c.format != "json")
    throw ConfigError("config field 'format': expected csv or json, got '" + c.format + "'");
  if (doc.contains("timing")) c.timing = field(doc, "timing", [](const json& x) { return x.get<bool>(); });
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

bool RunReport::verification_failed() const {
  return std::any_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return !s.passed; });
}

RunReport run(const RunConfig& config, int jobs) {
  RunReport rep;
  rep.config = config;

  if (config.task == Task::VerifyInequalities) {
    const auto names = config.suites.empty() ? suite_names() : config.suites;
    rep.suites.resize(names.size());
    rep.rows.resize(names.size());
    parallel_for(names.size(), jobs, [&](std::size_t i) {
      const auto t0 = std::chrono::steady_clock::now();
      auto& row = rep.rows[i];
      row.kind = "verify:" + names[i];
      row.method = "suite";
      row.m = config.m;
      row.seed = config.seed;
      row.stability_delta = std::numeric_limits<double>::quiet_NaN();
      try {
        rep.suites[i] = verify_suite(names[i], config.seed);
        row.value = rep.suites[i].passed ? 1.0 : 0.0;
      } catch (const std::exception& e) {
        rep.suites[i] = SuiteResult{names[i], false, {{"run", false, e.what()}}};
        row.failed = true;
        row.error = e.what();
        row.value = std::numeric_limits<double>::quiet_NaN();
      }
      if (config.timing)
        row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    });
    return rep;
  }

  const ConvexBody V = parse_body(config.body, config.m);
  SolveOptions opts;
  opts.resolution = config.resolution;
  opts.seed = config.seed;
  opts.restarts = config.restarts;
  opts.stability_check = config.stability_check;
  const auto ns = config.n.values();
  const int N = config.D.order();

  auto blank_row = [&](int n, const std::string& kind) {
    RunRow row;
    row.n = n;
    row.p = config.p;
    row.N = kind == "N" ? 0 : N;
    row.m = config.m;
    row.body = config.body;
    row.kind = kind;
    row.seed = config.seed;
    return row;
  };
  auto fail = [](RunRow& row, const std::exception& e) {
    row.failed = true;
    row.error = e.what();
    row.value = std::numeric_limits<double>::quiet_NaN();
    row.stability_delta = std::numeric_limits<double>::quiet_NaN();
    row.method = "failed";
  };

  if (config.task == Task::Extract) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      rep.extraction = extremal_extraction(config.p, config.D, V, ns, opts, jobs);
      for (const auto& e : rep.extraction->entries) {
        auto row = blank_row(e.n, "Q");
        row.value = e.value;
        row.method = e.method;
        row.stability_delta = e.stability_delta;
        row.unstable = e.stability_delta > kStabilityGate;
        rep.rows.push_back(std::move(row));
      }
    } catch (const std::exception& e) {
      for (int n : ns) {
        auto row = blank_row(n, "Q");
        fail(row, e);
        rep.rows.push_back(std::move(row));
      }
    }
    if (config.timing) {
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      for (auto& r : rep.rows) r.runtime_ms = ms / static_cast<double>(rep.rows.size());
    }
    return rep;
  }

  const std::string kind = config.task == Task::SweepP ? "P" : (config.task == Task::SweepN ? "N" : "M");
  rep.rows.resize(ns.size());
  parallel_for(ns.size(), jobs, [&](std::size_t i) {
    const int n = ns[i];
    auto& row = rep.rows[i];
    row = blank_row(n, kind);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      SharpConstantResult r;
      switch (config.task) {
        case Task::SweepP: r = compute_P_trig(config.p, config.D, static_cast<double>(n), V, opts); break;
        case Task::SweepN: {
          if (std::isinf(config.p)) throw ConfigError("sweep-N needs a finite p");
          const double mu = config.mu.value_or(2.0 * config.m / config.p);
          r = compute_N_diff_metrics(config.p, n, V, mu, opts);
          break;
        }
        default: r = compute_M(config.p, config.D, n, V, opts); break;
      }
      row.value = r.value;
      row.method = method_tag(r.method);
      row.stability_delta = r.diagnostics.stability_delta;
      row.unstable = r.diagnostics.unstable;
    } catch (const std::exception& e) {
      fail(row, e);
    }
    if (config.timing)
      row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  });

  if (config.task == Task::LimitE) {
    std::vector<std::pair<int, double>> data;
    for (const auto& r : rep.rows)
      if (!r.failed) data.emplace_back(r.n, r.value);
    if (data.size() >= 4) rep.limit = estimate_E_limit(data);
  }
  return rep;
}

std::string to_csv(const RunReport& report) {
  std::ostringstream os;
  os << "n,p,N,m,body,kind,value,method,stability_delta,seed,runtime_ms\n";
  for (const auto& r : report.rows) {
    os << r.n << ',' << format_double(r.p) << ',' << r.N << ',' << r.m << ',' << csv_field(r.body) << ','
       << csv_field(r.kind) << ',' << format_double(r.value) << ',' << csv_field(r.method) << ','
       << format_double(r.stability_delta) << ',' << r.seed << ',' << format_double(r.runtime_ms) << '\n';
  }
  return os.str();
}

json to_json(const RunReport& report) {
  json j;
  j["tool"] = "sharpconst";
  j["version"] = tool_version();
  j["task"] = task_name(report.config.task);
  j["config"] = report.config.echo;
  j["rows"] = json::array();
  for (const auto& r : report.rows) {
    json row{{"n", r.n},
             {"p", std::isinf(r.p) ? json("inf") : json(r.p)},
             {"N", r.N},
             {"m", r.m},
             {"body", r.body},
             {"kind", r.kind},
             {"value", number_or_null(r.value)},
             {"method", r.method},
             {"stability_delta", number_or_null(r.stability_delta)},
             {"unstable", r.unstable},
             {"seed", r.seed},
             {"runtime_ms", r.runtime_ms},
             {"failed", r.failed}};
    if (r.failed) row["error"] = r.error;
    j["rows"].push_back(std::move(row));
  }
  if (report.limit) {
    const auto& L = *report.limit;
    j["limit"] = {{"estimate", L.estimate},
                  {"slope", L.slope},
                  {"oscillation", L.oscillation},
                  {"converged", L.converged},
                  {"tail_residuals", L.tail_residuals}};
  }
  if (report.extraction) j["extraction"] = report.extraction->to_json();
  if (!report.suites.empty()) {
    j["suites"] = json::array();
    for (const auto& s : report.suites) {
      json checks = json::array();
      for (const auto& c : s.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      j["suites"].push_back({{"name", s.name}, {"passed", s.passed}, {"checks", checks}});
    }
  }
  return j;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write output file '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot move output into place at '" + path + "': " + ec.message());
  }
}

std::string tool_version() { return SHARPCONST_VERSION; }

}  // namespace sharpconst
