#pragma once

// Command-line front end: `solve`, `certify` and `bench`. Requires CLI11 and
// nlohmann/json. Exit codes: 0 ok, 1 runtime failure, 2 input/usage error,
// 3 invalid configuration or point outside the domain.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stochsat/benchmarks.hpp"
#include "stochsat/certify.hpp"
#include "stochsat/errors.hpp"
#include "stochsat/parser.hpp"
#include "stochsat/report.hpp"
#include "stochsat/solver.hpp"

namespace stochsat::cli {

enum ExitCode : int { kOk = 0, kRuntime = 1, kInput = 2, kConfig = 3 };

struct Options {
  std::string file;
  std::string at;
  std::string suite;
  std::string format = "json";
  std::string output;
  std::optional<std::uint64_t> seed;
  SolveConfig solve;
  std::size_t mc_samples = 1'000'000;
};

inline std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("STOCHSAT_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("STOCHSAT_SEED is not an unsigned integer");
  }
  return 7;
}

inline std::vector<double> parse_point(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError("--at: '" + item + "' is not a number");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw ParseError("--at: '" + item + "' is not a number");
    v.push_back(d);
  }
  if (v.empty()) throw ParseError("--at: empty point");
  return v;
}

inline json config_echo(const SolveConfig& c) {
  json j = c;
  // Flat copy keyed by flag names so every knob is visible at a glance.
  j["flags"] = {{"trials", c.trials},
                {"steps", c.aloe.k_max},
                {"epsilon0", c.certify.epsilon0},
                {"samples", c.oracle.n_samples},
                {"directions", c.oracle.n_directions},
                {"sigma", c.oracle.smoothing_radius},
                {"epsilon_w", c.aloe.epsilon_w},
                {"alpha0", c.aloe.alpha0},
                {"alpha_max", c.aloe.alpha_max},
                {"gamma", c.aloe.gamma},
                {"theta", c.aloe.theta},
                {"seed", c.seed},
                {"workers", c.workers}};
  return j;
}

inline json envelope(const std::string& command, const SolveConfig& cfg) {
  return json{{"schema_version", kReportSchemaVersion},
              {"tool", {{"name", "stochsat"}, {"version", kVersion}}},
              {"command", command},
              {"config", config_echo(cfg)}};
}

inline std::string join_point(const std::vector<double>& x) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ";" : "") << x[i];
  return os.str();
}

inline void emit(const Options& o, const std::string& payload, std::ostream& out) {
  if (o.output.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + o.output + "'");
  f << payload;
}

inline json cmd_solve(const Options& o, const Problem& p) {
  const std::string started = utc_timestamp();
  const SolveResult res = solve(p, o.solve);
  json report = envelope("solve", o.solve);
  report["problem"] = problem_summary(p);
  report["result"] = res;
  report["timing"] = {{"started_at", started}, {"finished_at", utc_timestamp()}, {"wall_time_s", res.wall_time_s}};
  return report;
}

inline json cmd_certify(const Options& o, const Problem& p) {
  const std::vector<double> x = parse_point(o.at);
  if (x.size() != p.num_det())
    throw DimensionError("--at has " + std::to_string(x.size()) + " coordinates; problem '" + p.name + "' has " +
                         std::to_string(p.num_det()));
  const std::string started = utc_timestamp();
  const auto t0 = std::chrono::steady_clock::now();
  const CertificationResult r = certify_lower_bound(p, x, o.solve.certify);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json report = envelope("certify", o.solve);
  report["problem"] = problem_summary(p);
  report["result"] = r;
  report["result"]["x"] = x;
  report["timing"] = {{"started_at", started}, {"finished_at", utc_timestamp()}, {"wall_time_s", wall}};
  return report;
}

struct BenchRow {
  std::string id;
  std::optional<double> known_value;
  double lower_bound = 0.0;
  std::optional<std::vector<double>> x_plus;
  double epsilon0 = 0.0;
  std::optional<double> mc_estimate;
  std::optional<double> mc_radius;
  double wall_time_s = 0.0;
  bool pass = true;
  std::string check;
};

inline json to_json_row(const BenchRow& r) {
  json j{{"id", r.id},
         {"lower_bound", r.lower_bound},
         {"x_plus", r.x_plus ? json(*r.x_plus) : json(nullptr)},
         {"epsilon0", r.epsilon0},
         {"known_value", r.known_value ? json(*r.known_value) : json(nullptr)},
         {"gap", r.known_value ? json(*r.known_value - r.lower_bound) : json(nullptr)},
         {"mc_estimate", r.mc_estimate ? json(*r.mc_estimate) : json(nullptr)},
         {"mc_radius", r.mc_radius ? json(*r.mc_radius) : json(nullptr)},
         {"check", r.check},
         {"pass", r.pass},
         {"wall_time_s", r.wall_time_s}};
  return j;
}

// Soundness cross-check of a certified bound against plain Monte Carlo.
inline void mc_check(BenchRow& row, const Problem& p, const SolveResult& res, std::size_t n, std::uint64_t seed) {
  if (!res.x_plus) {
    row.check += row.check.empty() ? "" : "; ";
    row.check += "no candidate (l = 0 is trivially sound)";
    return;
  }
  Rng rng = substream(seed, 0xC0FFEEULL);
  const McEstimate mc = mc_reference(p, *res.x_plus, n, rng);
  row.mc_estimate = mc.estimate;
  row.mc_radius = mc.radius;
  const bool sound = res.lower_bound <= mc.estimate + mc.radius;
  row.pass = row.pass && sound;
  row.check += row.check.empty() ? "" : "; ";
  row.check += sound ? "l <= mc + radius" : "UNSOUND: l > mc + radius";
}

inline json cmd_bench(const Options& o) {
  const std::string started = utc_timestamp();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<BenchRow> rows;

  auto run = [&](const std::string& id, const Problem& p, const SolveConfig& cfg) {
    BenchRow row;
    row.id = id;
    row.epsilon0 = cfg.certify.epsilon0;
    const SolveResult res = solve(p, cfg);
    row.lower_bound = res.lower_bound;
    row.x_plus = res.x_plus;
    row.wall_time_s = res.wall_time_s;
    return std::pair{row, res};
  };

  if (o.suite == "ssmt") {
    for (SsmtId id : {SsmtId::Phi1, SsmtId::Phi2, SsmtId::Phi3, SsmtId::Phi4}) {
      const Problem p = make_ssmt(id);
      auto [row, res] = run(p.name, p, o.solve);
      row.known_value = ssmt_known_value(id);
      const double gap = *row.known_value - row.lower_bound;
      const double tol = id == SsmtId::Phi3 ? 0.01 : 0.005;
      row.pass = gap >= 0.0 && gap <= tol;
      std::ostringstream c;
      c << "0 <= gap <= " << tol;
      row.check = c.str();
      rows.push_back(row);
    }
  } else if (o.suite == "trajectory-small") {
    {
      TrajectoryConfig tc;
      tc.steps = 1;
      tc.name = "traj_n1_free";
      SolveConfig cfg = o.solve;
      cfg.certify.epsilon0 = 0.01;
      const Problem p = make_trajectory(tc);
      auto [row, res] = run(tc.name, p, cfg);
      row.pass = row.lower_bound >= 1.0 - cfg.certify.epsilon0;
      row.check = "l >= 1 - epsilon0";
      mc_check(row, p, res, o.mc_samples, cfg.seed);
      rows.push_back(row);
    }
    {
      TrajectoryConfig tc;
      tc.steps = 2;
      tc.obstacles = {{6, 2, 2.5}};
      tc.name = "traj_n2_obstacle";
      SolveConfig cfg = o.solve;
      cfg.certify.epsilon0 = 0.1;
      const Problem p = make_trajectory(tc);
      auto [row, res] = run(tc.name, p, cfg);
      mc_check(row, p, res, o.mc_samples, cfg.seed);
      rows.push_back(row);
    }
  } else if (o.suite == "trajectory-full") {
    for (const auto& inst : trajectory_table()) {
      SolveConfig cfg = o.solve;
      cfg.certify.epsilon0 = 0.1;
      const Problem p = make_trajectory(inst.config);
      auto [row, res] = run(inst.id, p, cfg);
      mc_check(row, p, res, o.mc_samples, cfg.seed);
      row.check += "; reference l = " + detail::format_number(inst.reported_lower_bound);
      rows.push_back(row);
    }
  } else {
    throw ParseError("unknown suite '" + o.suite + "' (expected ssmt, trajectory-small or trajectory-full)");
  }

  json report = envelope("bench", o.solve);
  report["suite"] = o.suite;
  json table = json::array();
  bool all = true;
  for (const auto& r : rows) {
    table.push_back(to_json_row(r));
    all = all && r.pass;
  }
  report["rows"] = table;
  report["all_passed"] = all;
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report["timing"] = {{"started_at", started}, {"finished_at", utc_timestamp()}, {"wall_time_s", wall}};
  return report;
}

inline std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_array()) {
    std::vector<double> x = v.get<std::vector<double>>();
    return join_point(x);
  }
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    }
    return s;
  }
  return v.dump();
}

inline std::string to_csv(const json& report) {
  std::ostringstream os;
  const std::string cmd = report.at("command");
  if (cmd == "bench") {
    const char* cols[] = {"id", "lower_bound", "x_plus", "known_value", "gap", "epsilon0",
                          "mc_estimate", "mc_radius", "pass", "check", "wall_time_s"};
    for (std::size_t i = 0; i < std::size(cols); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& row : report.at("rows")) {
      for (std::size_t i = 0; i < std::size(cols); ++i) os << (i ? "," : "") << csv_cell(row.at(cols[i]));
      os << "\n";
    }
    return os.str();
  }
  const json& r = report.at("result");
  if (cmd == "solve") {
    os << "problem,lower_bound,x_plus,best_trial,trials,seed,wall_time_s\n";
    os << report.at("problem").at("name").get<std::string>() << "," << csv_cell(r.at("lower_bound")) << ","
       << csv_cell(r.at("x_plus")) << "," << csv_cell(r.at("best_trial")) << "," << r.at("per_trial").size() << ","
       << csv_cell(r.at("seed")) << "," << csv_cell(r.at("wall_time_s")) << "\n";
  } else {
    os << "problem,x,lower_bound,local_upper_bound,boundary_mass,truncated_budget,converged,inner_count,"
          "boundary_count,wall_time_s\n";
    os << report.at("problem").at("name").get<std::string>() << "," << csv_cell(r.at("x")) << ","
       << csv_cell(r.at("lower_bound")) << "," << csv_cell(r.at("local_upper_bound")) << ","
       << csv_cell(r.at("boundary_mass")) << "," << csv_cell(r.at("truncated_budget")) << ","
       << csv_cell(r.at("converged")) << "," << csv_cell(r.at("inner_count")) << ","
       << csv_cell(r.at("boundary_count")) << "," << csv_cell(report.at("timing").at("wall_time_s")) << "\n";
  }
  return os.str();
}

inline void add_tuning_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--trials", o.solve.trials, "Number of multi-start trials (M)");
  cmd.add_option("--steps", o.solve.aloe.k_max, "ALOE iterations per trial (K_max)");
  cmd.add_option("--epsilon0", o.solve.certify.epsilon0, "Certification gap budget");
  cmd.add_option("--truncation-fraction", o.solve.certify.truncation_fraction,
                 "Share of epsilon0 spent on domain truncation");
  cmd.add_option("--max-boxes", o.solve.certify.max_boxes, "Box budget per certification");
  cmd.add_option("--max-depth", o.solve.certify.max_depth, "Subdivision depth cap");
  cmd.add_option("--seed", o.seed, "RNG seed (falls back to STOCHSAT_SEED, then 7)");
  cmd.add_option("--workers", o.solve.workers, "Concurrent trials");
  cmd.add_option("--samples", o.solve.oracle.n_samples, "Samples per value estimate (N)");
  cmd.add_option("--directions", o.solve.oracle.n_directions, "Directions per gradient estimate");
  cmd.add_option("--sigma", o.solve.oracle.smoothing_radius, "Smoothing radius");
  cmd.add_option("--epsilon-w", o.solve.aloe.epsilon_w, "Value-estimate tolerance in the acceptance test");
  cmd.add_option("--alpha0", o.solve.aloe.alpha0, "Initial step size");
  cmd.add_option("--alpha-max", o.solve.aloe.alpha_max, "Maximum step size");
  cmd.add_option("--gamma", o.solve.aloe.gamma, "Step decay factor");
  cmd.add_option("--theta", o.solve.aloe.theta, "Sufficient-decrease constant");
  cmd.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd.add_option("--output", o.output, "Write the report here instead of stdout");
}

// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"stochsat: certified lower bounds for stochastic constraint satisfaction"};
  app.require_subcommand(1);
  Options o;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Search for a parameter and certify its satisfaction probability");
  solve_cmd->add_option("file", o.file, "Problem file (.ssc)")->required();
  add_tuning_flags(*solve_cmd, o);

  CLI::App* certify_cmd = app.add_subcommand("certify", "Certify the satisfaction probability at a given point");
  certify_cmd->add_option("file", o.file, "Problem file (.ssc)")->required();
  certify_cmd->add_option("--at", o.at, "Comma-separated parameter values")->required()->allow_extra_args(false);
  add_tuning_flags(*certify_cmd, o);

  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
  bench_cmd->add_option("--suite", o.suite, "ssmt | trajectory-small | trajectory-full")->required();
  bench_cmd->add_option("--mc-samples", o.mc_samples, "Monte Carlo samples for soundness cross-checks");
  add_tuning_flags(*bench_cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }

  try {
    o.solve.seed = resolve_seed(o);
    o.solve.oracle.epsilon_w = o.solve.aloe.epsilon_w;
    o.solve.validate();

    json report;
    if (solve_cmd->parsed()) {
      report = cmd_solve(o, load_problem(o.file));
    } else if (certify_cmd->parsed()) {
      report = cmd_certify(o, load_problem(o.file));
    } else {
      report = cmd_bench(o);
    }
    emit(o, o.format == "csv" ? to_csv(report) : report.dump(2) + "\n", out);
    return kOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

} // namespace stochsat::cli
