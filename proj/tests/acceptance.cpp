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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <string>

#include "evacshare/cli.hpp"
#include "evacshare/exact.hpp"
#include "evacshare/experiment.hpp"
#include "evacshare/heuristic.hpp"
#include "evacshare/lp_format.hpp"
#include "evacshare/mip.hpp"
#include "evacshare/oracle.hpp"
#include "mutations.hpp"
#include "test_support.hpp"

namespace evacshare {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

constexpr int kOracleSeeds = 1000;

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  int constrained = 0, mismatches = 0;
  for (int seed = 1; seed <= kOracleSeeds; ++seed) {
    Instance inst = testing::random_small(seed);
    const PlanChoice brute = solve_brute_force_choice(inst);
    const ExactResult exact = solve_exact(inst);
    const int brute_obj = plan_key(Tables(inst), brute).evacuated;
    if (exact.status != ExactStatus::kOptimal || exact.objective != brute_obj || exact.choice != brute) {
      ++mismatches;
      if (mismatches <= 3) o.fail("seed " + std::to_string(seed) + " differs");
    }
    const int bound_now = exact.objective;
    inst.t_max = 1e9;
    if (solve_exact(inst).objective > bound_now) ++constrained;
  }
  const double secs = since(t0);
  if (secs > 120) o.fail("took " + std::to_string(secs) + " s");
  o.detail = std::to_string(kOracleSeeds) + " instances, " + std::to_string(mismatches) + " mismatches, " +
             std::to_string(constrained) + " deadline-constrained, " + std::to_string(secs).substr(0, 5) + " s" +
             (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome t1_ladder() {
  Outcome o;
  const auto doc = nlohmann::json::parse(
      testing::read_text(std::string(EVACSHARE_TEST_ORACLES) + "/t1_oracle.expected.json"));
  std::string values;
  for (double t_max : {8.0, 6.0, 2.0}) {
    const int want = doc["ladder"][std::to_string(static_cast<int>(t_max))].get<int>();
    const Instance inst = testing::t1(t_max);
    const int brute = solve_brute_force(inst).evacuated_total;
    const int exact = solve_exact(inst).objective;
    const int greedy = greedy_construct(inst).evacuated_total;
    values += (values.empty() ? "" : ", ") + std::string("t_max ") + std::to_string(static_cast<int>(t_max)) +
              " -> " + std::to_string(exact);
    if (brute != want || exact != want || greedy != want) {
      o.fail("t_max " + std::to_string(t_max) + ": want " + std::to_string(want) + " got oracle " +
             std::to_string(brute) + " exact " + std::to_string(exact) + " greedy " + std::to_string(greedy));
    }
  }
  if (o.pass) o.detail = values + " (oracle, exact, greedy agree)";
  return o;
}

Outcome mutation_suite() {
  Outcome o;
  int sites[4] = {}, detected[4] = {}, false_positives = 0, clean = 0;
  for (int seed = 1; seed <= 200; ++seed) {
    const Instance inst = testing::random_small(seed, {3, 4, 2, 5});
    const Plan plan = solve_exact(inst).plan;
    ++clean;
    if (!check_feasibility(inst, plan).feasible()) ++false_positives;
    for (auto m : {testing::Mutation::kCapacity, testing::Mutation::kDemand, testing::Mutation::kDeadline,
                   testing::Mutation::kTimestamp}) {
      for (const Plan& mutant : testing::mutants(inst, plan, m)) {
        const auto codes = testing::codes_of(check_feasibility(inst, mutant));
        ++sites[static_cast<int>(m)];
        if (codes == std::vector<PlanViolationCode>{testing::expected_code(m)}) ++detected[static_cast<int>(m)];
      }
    }
  }
  std::string detail;
  for (auto m : {testing::Mutation::kCapacity, testing::Mutation::kDemand, testing::Mutation::kDeadline,
                 testing::Mutation::kTimestamp}) {
    const int i = static_cast<int>(m);
    detail += std::string(testing::mutation_name(m)) + " " + std::to_string(detected[i]) + "/" +
              std::to_string(sites[i]) + ", ";
    if (sites[i] == 0) o.fail(std::string("no ") + testing::mutation_name(m) + " sites");
    if (detected[i] != sites[i]) o.fail(std::string(testing::mutation_name(m)) + " missed");
  }
  if (false_positives) o.fail(std::to_string(false_positives) + " false positives");
  if (o.pass) o.detail = detail + "0/" + std::to_string(clean) + " false positives";
  return o;
}

Outcome mip_structure() {
  Outcome o;
  const auto want = nlohmann::json::parse(testing::read_text(std::string(EVACSHARE_TEST_ORACLES) +
                                                             "/mip_index_expansion.expected.json"))["strengthened"];
  const MipModel model = build_model(testing::t1(), MipMode::kStrengthened);
  const int vars = static_cast<int>(model.variables.size());
  const int rows = static_cast<int>(model.constraints.size());
  if (vars != want["variables"].get<int>()) o.fail("variables " + std::to_string(vars));
  if (rows != want["constraints"].get<int>()) o.fail("constraints " + std::to_string(rows));
  if (model.count_variables('x') != want["per_kind"]["x"].get<int>()) o.fail("x count");
  for (const auto& [fam, count] : want["families"].items()) {
    if (model.family_counts()[fam] != count.get<int>()) o.fail("family " + fam);
  }
  const LpModel lp = parse_lp(export_lp(model));
  if (static_cast<int>(lp.variable_names().size()) != vars) o.fail("LP variables differ");
  if (static_cast<int>(lp.rows.size()) != rows) o.fail("LP rows differ");
  if (o.pass) {
    o.detail = std::to_string(vars) + " variables (" + std::to_string(model.count_variables('x')) + " x), " +
               std::to_string(rows) + " constraints; LP reparse identical";
  }
  return o;
}

Outcome monotonicity() {
  Outcome o;
  SweepConfig config;
  config.methods = {"exact"};
  const auto t0 = Clock::now();
  const SweepReport report = run_sweep(config);
  int violations = 0, not_optimal = 0;
  std::string trend;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    if (row.status != "optimal") ++not_optimal;
    if (i > 0 && report.rows[i - 1].r_ratio == row.r_ratio && row.ep && report.rows[i - 1].ep &&
        *row.ep < *report.rows[i - 1].ep) {
      ++violations;
    }
    if (row.t_max == config.t_maxes.back()) {
      char buf[48];
      std::snprintf(buf, sizeof buf, "%s%.2f:%.3f", trend.empty() ? "" : " ", row.r_ratio, row.ep.value_or(-1));
      trend += buf;
    }
  }
  if (not_optimal) o.fail(std::to_string(not_optimal) + " cells not solved to optimality");
  if (violations) o.fail(std::to_string(violations) + " monotonicity violations");
  if (o.pass) {
    o.detail = "30 exact cells, 0 violations, " + std::to_string(since(t0)).substr(0, 5) +
               " s; EP at t_max 15 by ratio (reported only): " + trend;
  }
  return o;
}

// Longest any route with positive pickups can take: at most `stops` stops,
// each leg no longer than the longest arc, plus boarding for a full vehicle.
double route_horizon(const Instance& inst) {
  double max_t = 0.0;
  for (const auto& row : inst.travel_time)
    for (double v : row) max_t = std::max(max_t, v);
  int max_cap = 0, min_own = 1 << 30;
  for (int k : inst.owners()) {
    max_cap = std::max(max_cap, *inst.locations[k].capacity);
    min_own = std::min(min_own, inst.locations[k].demand);
  }
  const int stops = std::min<int>(static_cast<int>(inst.carless().size()), max_cap - min_own);
  return (stops + 1) * max_t + inst.t_p * max_cap;
}

Outcome full_evacuation() {
  Outcome o;
  int checked = 0;
  auto check = [&](const Instance& base, const std::string& label) {
    int fleet = 0;
    for (int k : base.owners()) fleet += *base.locations[k].capacity;
    if (fleet < base.total_demand() || base.total_demand() == 0) return;
    Instance inst = base;
    inst.t_max = route_horizon(inst);
    const ExactResult r = solve_exact(inst);
    ++checked;
    if (r.status != ExactStatus::kOptimal || evacuation_percentage(inst, r.plan) != 1.0) {
      o.fail(label + " reached EP " + std::to_string(evacuation_percentage(inst, r.plan)));
    }
  };
  for (double ratio : {0.6, 0.7}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      GenConfig gen;
      gen.r_ratio = ratio;
      gen.seed = seed;
      check(generate_instance(gen), "generated r=" + std::to_string(ratio) + " seed " + std::to_string(seed));
    }
  }
  for (int seed = 1; seed <= kOracleSeeds; ++seed) check(testing::random_small(seed), "small " + std::to_string(seed));
  if (checked < 20) o.fail("only " + std::to_string(checked) + " qualifying instances");
  if (o.pass) o.detail = std::to_string(checked) + " qualifying instances, all EP = 1";
  return o;
}

Outcome heuristic_soundness() {
  Outcome o;
  int worse = 0, infeasible = 0, gap = 0;
  for (int seed = 1; seed <= kOracleSeeds; ++seed) {
    const Instance inst = testing::random_small(seed);
    const Plan h = local_search(inst, greedy_construct(inst));
    const int best = solve_exact(inst).objective;
    if (!check_feasibility(inst, h).feasible()) ++infeasible;
    if (h.evacuated_total > best) ++worse;
    if (h.evacuated_total < best) ++gap;
  }
  double slowest = 0.0;
  for (double ratio : {0.3, 0.4, 0.5, 0.6, 0.7}) {
    GenConfig gen;
    gen.r_ratio = ratio;
    const Instance inst = generate_instance(gen);
    const auto t0 = Clock::now();
    const Plan h = local_search(inst, greedy_construct(inst));
    slowest = std::max(slowest, since(t0));
    if (!check_feasibility(inst, h).feasible()) ++infeasible;
  }
  if (worse) o.fail(std::to_string(worse) + " heuristic objectives above exact");
  if (infeasible) o.fail(std::to_string(infeasible) + " infeasible heuristic plans");
  if (slowest >= 1.0) o.fail("default instance took " + std::to_string(slowest) + " s");
  if (o.pass) {
    o.detail = std::to_string(kOracleSeeds) + " instances sound (" + std::to_string(gap) +
               " strictly below exact); slowest 14-household solve " + std::to_string(slowest * 1000).substr(0, 6) +
               " ms";
  }
  return o;
}

std::string cli_out(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  cli::run(args, out, err);
  return out.str();
}

Outcome determinism() {
  Outcome o;
  int comparisons = 0;
  auto same = [&](const std::string& a, const std::string& b, const std::string& what) {
    ++comparisons;
    if (a != b) o.fail(what);
  };
  for (std::uint64_t seed : {1, 2, 3}) {
    for (double ratio : {0.3, 0.5, 0.7}) {
      GenConfig gen;
      gen.seed = seed;
      gen.r_ratio = ratio;
      gen.t_max = 9;
      const Instance inst = generate_instance(gen);
      const std::string text = serialize_instance(inst);
      same(serialize_instance(generate_instance(gen)), text, "generator");
      const std::string exact = serialize_plan(solve_exact(inst).plan);
      for (int workers : {1, 2, 4}) {
        ExactConfig config;
        config.workers = workers;
        same(serialize_plan(solve_exact(inst, config).plan), exact, "exact workers " + std::to_string(workers));
      }
      same(serialize_plan(greedy_construct(inst)), serialize_plan(greedy_construct(inst)), "greedy");
      same(serialize_plan(local_search(inst, greedy_construct(inst))),
           serialize_plan(local_search(inst, greedy_construct(inst))), "local search");
    }
  }
  const std::string t1 = testing::data_path("t1.json");
  for (const std::string method : {"exact", "brute", "greedy", "heuristic"}) {
    const std::string first = cli_out({"solve", "--instance", t1, "--method", method});
    for (const std::string w : {"1", "2", "4"}) {
      same(cli_out({"solve", "--instance", t1, "--method", method, "--workers", w}), first, "cli " + method);
    }
  }
  same(cli_out({"gen", "--seed", "5", "--ratio", "0.6"}), cli_out({"gen", "--seed", "5", "--ratio", "0.6"}), "cli gen");

  SweepConfig sweep;
  sweep.methods = {"exact", "greedy", "heuristic"};
  sweep.ratios = {0.3, 0.7};
  sweep.t_maxes = {5, 11, 15};
  auto strip = [](SweepReport r) {
    for (auto& row : r.rows) row.seconds = 0.0;
    return report_csv(r);
  };
  const std::string serial = strip(run_sweep(sweep));
  for (int workers : {2, 4}) {
    sweep.workers = workers;
    same(strip(run_sweep(sweep)), serial, "sweep workers " + std::to_string(workers));
  }
  if (o.pass) o.detail = std::to_string(comparisons) + " byte-for-byte comparisons identical";
  return o;
}

}  // namespace
}  // namespace evacshare

int main() {
  using evacshare::Outcome;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 oracle equivalence", evacshare::oracle_equivalence},
      {"2 T1 ladder", evacshare::t1_ladder},
      {"3 checker mutation suite", evacshare::mutation_suite},
      {"4 MIP structure", evacshare::mip_structure},
      {"5 EP monotone in t_max", evacshare::monotonicity},
      {"6 full evacuation", evacshare::full_evacuation},
      {"7 heuristic soundness", evacshare::heuristic_soundness},
      {"8 determinism", evacshare::determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
