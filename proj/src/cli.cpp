// Copyright 2026 The evacshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evacshare/cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "evacshare/exact.hpp"
#include "evacshare/experiment.hpp"
#include "evacshare/heuristic.hpp"
#include "evacshare/instance.hpp"
#include "evacshare/lp_format.hpp"
#include "evacshare/mip.hpp"
#include "evacshare/plan.hpp"

namespace evacshare::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Input problems that are the caller's fault rather than the document's.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes next to the target and renames, so readers never see a partial file.
void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
    f.close();
    if (!f) {
      std::filesystem::remove(tmp);
      throw UsageError("cannot write '" + path + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw UsageError("cannot write '" + path + "': " + ec.message());
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

std::vector<Neighborhood> parse_neighborhoods(const std::vector<std::string>& names) {
  std::vector<Neighborhood> out;
  for (const auto& n : names) {
    auto parsed = parse_neighborhood(n);
    if (!parsed) throw UsageError("unknown neighborhood '" + n + "'");
    out.push_back(*parsed);
  }
  return out;
}

struct SolveOptions {
  std::string instance;
  std::string method = "exact";
  double time_limit = 0.0;
  std::int64_t node_limit = 0;
  std::uint64_t seed = 0;
  int max_iter = 1000;
  int workers = 1;
  std::vector<std::string> neighborhoods;
  std::string out;
};

struct GenOptions {
  GenConfig config;
  std::string out;
};

struct SweepOptions {
  SweepConfig config;
  std::vector<std::string> neighborhoods;
  std::string out;
  std::string svg;
};

void add_gen_flags(CLI::App* cmd, GenConfig& c) {
  cmd->add_option("--seed", c.seed, "PRNG seed");
  cmd->add_option("--households", c.n_households, "number of households");
  cmd->add_option("--gathering", c.n_gathering, "number of gathering places");
  cmd->add_option("--household-size", c.household_size, "persons per household");
  cmd->add_option("--capacities", c.capacities, "vehicle capacities, cycled over owners")->delimiter(',');
  cmd->add_option("--area", c.area, "square side, miles");
  cmd->add_option("--speed", c.speed, "miles per minute");
  cmd->add_option("--t-p", c.t_p, "boarding minutes per person");
}

int do_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  const Instance inst = parse_instance(read_file(o.instance));
  ExactConfig exact;
  exact.time_limit = o.time_limit;
  exact.node_limit = o.node_limit;
  exact.workers = o.workers;
  LocalSearchConfig ls;
  ls.max_iterations = o.max_iter;
  ls.seed = o.seed;
  if (!o.neighborhoods.empty()) ls.neighborhoods = parse_neighborhoods(o.neighborhoods);

  const auto start = std::chrono::steady_clock::now();
  MethodOutcome result = run_method(inst, o.method, exact, ls);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  emit(o.out, serialize_plan(result.plan), out);
  ordered_json status;
  status["status"] = result.status;
  status["objective"] = result.plan.evacuated_total;
  status["best_bound"] = result.best_bound;
  status["nodes"] = result.nodes;
  status["seconds"] = seconds;
  err << status.dump() << "\n";
  return kExitOk;
}

int do_validate(const std::string& path, std::ostream& out) {
  const std::string text = read_file(path);
  Instance inst;
  try {
    inst = parse_instance_unchecked(text);
  } catch (const SchemaError& e) {
    out << "schema_error " << e.what() << "\n";
    return kExitInvalid;
  }
  const auto violations = validate(inst);
  for (const auto& v : violations) out << to_string(v.code) << ' ' << v.id << ": " << v.detail << "\n";
  if (!violations.empty()) return kExitInvalid;
  out << "ok\n";
  return kExitOk;
}

int do_metrics(const std::string& instance_path, const std::string& plan_path, std::ostream& out,
               std::ostream& err) {
  const Instance inst = parse_instance(read_file(instance_path));
  const Plan plan = parse_plan(read_file(plan_path));
  const FeasibilityReport report = check_feasibility(inst, plan);
  if (!report.feasible()) {
    for (const auto& v : report.violations) {
      err << to_string(v.code) << ' ' << v.vehicle << ' ' << v.location << ": " << v.detail << "\n";
    }
    return kExitInvalid;
  }
  ordered_json doc;
  doc["EP"] = evacuation_percentage(inst, plan);
  const bool any_used = std::any_of(plan.routes.begin(), plan.routes.end(), [](const Route& r) { return r.used; });
  doc["ATD"] = any_used ? ordered_json(average_travel_distance(inst, plan)) : ordered_json(nullptr);
  out << doc.dump() << "\n";
  return kExitOk;
}

int do_sweep(SweepOptions& o, std::ostream& err) {
  if (!o.neighborhoods.empty()) o.config.local_search.neighborhoods = parse_neighborhoods(o.neighborhoods);
  for (const auto& m : o.config.methods) {
    if (std::find(method_names().begin(), method_names().end(), m) == method_names().end()) {
      throw UsageError("unknown method '" + m + "'");
    }
  }
  // Fails fast on a bad base configuration instead of filling every row with errors.
  GenConfig probe = o.config.base;
  for (double r : o.config.ratios) {
    probe.r_ratio = r;
    for (double t : o.config.t_maxes) {
      probe.t_max = t;
      try {
        generate_instance(probe);
      } catch (const ConfigError& e) {
        throw UsageError(e.what());
      }
    }
  }
  const SweepReport report = run_sweep(o.config);
  const std::string csv = report_csv(report);
  const std::string svg = o.svg.empty() ? std::string() : report_svg(report);
  write_file_atomic(o.out, csv);
  if (!o.svg.empty()) write_file_atomic(o.svg, svg);
  int failed = 0;
  for (const auto& row : report.rows) failed += row.status.rfind("error", 0) == 0 ? 1 : 0;
  err << report.rows.size() << " cells, " << failed << " failed\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ridesharing evacuation planning", "evacshare"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance and print the plan");
  solve_cmd->add_option("--instance", solve.instance, "instance JSON")->required();
  solve_cmd->add_option("--method", solve.method, "solver")->check(CLI::IsMember(method_names()));
  solve_cmd->add_option("--time-limit", solve.time_limit, "exact: seconds, 0 = none");
  solve_cmd->add_option("--node-limit", solve.node_limit, "exact: nodes, 0 = none");
  solve_cmd->add_option("--seed", solve.seed, "local search scan-order seed");
  solve_cmd->add_option("--max-iter", solve.max_iter, "local search accepted moves");
  solve_cmd->add_option("--neighborhoods", solve.neighborhoods, "local search neighborhoods")->delimiter(',');
  solve_cmd->add_option("--workers", solve.workers, "exact: threads")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", solve.out, "write the plan here instead of stdout");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "list instance violations");
  validate_cmd->add_option("--instance", validate_path, "instance JSON")->required();

  std::string mip_path, mip_mode = "strengthened", mip_out;
  auto* mip_cmd = app.add_subcommand("export-mip", "write the MIP in LP format");
  mip_cmd->add_option("--instance", mip_path, "instance JSON")->required();
  mip_cmd->add_option("--mode", mip_mode, "strengthened or verbatim")->check(CLI::IsMember({"strengthened", "verbatim"}));
  mip_cmd->add_option("--out", mip_out, "write here instead of stdout");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic instance");
  add_gen_flags(gen_cmd, gen.config);
  gen_cmd->add_option("--ratio", gen.config.r_ratio, "share of households owning a vehicle");
  gen_cmd->add_option("--t-max", gen.config.t_max, "deadline, minutes");
  gen_cmd->add_option("--out", gen.out, "write here instead of stdout");

  SweepOptions sweep;
  sweep.config.methods = {"heuristic"};
  auto* sweep_cmd = app.add_subcommand("sweep", "ratio x deadline sweep");
  add_gen_flags(sweep_cmd, sweep.config.base);
  sweep_cmd->add_option("--ratios", sweep.config.ratios, "r_ratio grid")->delimiter(',');
  sweep_cmd->add_option("--tmaxes", sweep.config.t_maxes, "t_max grid")->delimiter(',');
  sweep_cmd->add_option("--methods", sweep.config.methods, "methods")->delimiter(',');
  sweep_cmd->add_option("--time-limit", sweep.config.exact.time_limit, "exact: seconds per cell");
  sweep_cmd->add_option("--node-limit", sweep.config.exact.node_limit, "exact: nodes per cell");
  sweep_cmd->add_option("--max-iter", sweep.config.local_search.max_iterations, "local search accepted moves");
  sweep_cmd->add_option("--neighborhoods", sweep.neighborhoods, "local search neighborhoods")->delimiter(',');
  sweep_cmd->add_option("--workers", sweep.config.workers, "cells in parallel")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", sweep.out, "CSV report")->required();
  sweep_cmd->add_option("--svg", sweep.svg, "SVG charts");

  std::string metrics_instance, metrics_plan;
  auto* metrics_cmd = app.add_subcommand("metrics", "EP and ATD of a plan");
  metrics_cmd->add_option("--instance", metrics_instance, "instance JSON")->required();
  metrics_cmd->add_option("--plan", metrics_plan, "plan JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return do_solve(solve, out, err);
    if (validate_cmd->parsed()) return do_validate(validate_path, out);
    if (mip_cmd->parsed()) {
      const Instance inst = parse_instance(read_file(mip_path));
      emit(mip_out, export_lp(build_model(inst, *parse_mip_mode(mip_mode))), out);
      return kExitOk;
    }
    if (gen_cmd->parsed()) {
      Instance inst;
      try {
        inst = generate_instance(gen.config);
      } catch (const ConfigError& e) {
        throw UsageError(e.what());
      }
      emit(gen.out, serialize_instance(inst), out);
      return kExitOk;
    }
    if (sweep_cmd->parsed()) return do_sweep(sweep, err);
    if (metrics_cmd->parsed()) return do_metrics(metrics_instance, metrics_plan, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "invalid instance:\n";
    for (const auto& v : e.violations()) err << "  " << to_string(v.code) << ' ' << v.id << ": " << v.detail << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}

}  // namespace evacshare::cli
