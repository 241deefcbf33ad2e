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

#include "evacshare/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "evacshare/oracle.hpp"

namespace evacshare {

namespace {

constexpr double kCircuity = 1.3;

// Bit-portable uniform draw in [0, 1); std::uniform_real_distribution is
// implementation-defined.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_config(const GenConfig& c) {
  if (!(c.r_ratio > 0.0 && c.r_ratio < 1.0)) throw ConfigError("r_ratio must lie strictly between 0 and 1");
  if (c.n_households < 1) throw ConfigError("n_households must be at least 1");
  if (c.n_gathering < 1) throw ConfigError("n_gathering must be at least 1");
  if (c.household_size < 0) throw ConfigError("household_size must be non-negative");
  if (c.capacities.empty()) throw ConfigError("capacities must not be empty");
  for (int cap : c.capacities) {
    if (cap < 1 || cap < c.household_size) throw ConfigError("every capacity must be positive and seat the household");
  }
  if (!(c.area > 0.0) || !std::isfinite(c.area)) throw ConfigError("area must be positive");
  if (!(c.speed > 0.0) || !std::isfinite(c.speed)) throw ConfigError("speed must be positive");
  if (!(c.t_p >= 0.0) || !std::isfinite(c.t_p)) throw ConfigError("t_p must be non-negative");
  if (!(c.t_max >= 0.0) || !std::isfinite(c.t_max)) throw ConfigError("t_max must be non-negative");
}

}  // namespace

int owner_count(const GenConfig& config) {
  // The epsilon keeps products such as 0.5 * 7 from landing just below a half.
  return static_cast<int>(std::floor(config.r_ratio * config.n_households + 0.5 + 1e-9));
}

Instance generate_instance(const GenConfig& config) {
  check_config(config);
  std::mt19937_64 rng(config.seed);
  const int nh = config.n_households;
  const int n = nh + config.n_gathering;
  std::vector<std::array<double, 2>> points(n);
  for (auto& p : points) {
    p[0] = unit(rng) * config.area;
    p[1] = unit(rng) * config.area;
  }

  const int owners = owner_count(config);
  Instance inst;
  inst.name = "gen-seed" + std::to_string(config.seed) + "-r" + std::to_string(owners) + "of" + std::to_string(nh);
  inst.t_p = config.t_p;
  inst.t_max = config.t_max;
  for (int i = 0; i < n; ++i) {
    Location loc;
    if (i < owners) {
      loc.id = "r" + std::to_string(i + 1);
      loc.kind = LocationKind::kVehicleOwner;
      loc.demand = config.household_size;
      loc.capacity = config.capacities[static_cast<std::size_t>(i) % config.capacities.size()];
    } else if (i < nh) {
      loc.id = "h" + std::to_string(i - owners + 1);
      loc.kind = LocationKind::kCarless;
      loc.demand = config.household_size;
    } else {
      loc.id = "s" + std::to_string(i - nh + 1);
      loc.kind = LocationKind::kGathering;
    }
    inst.locations.push_back(std::move(loc));
  }

  Matrix dist(n, std::vector<double>(n, 0.0));
  Matrix time(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      dist[i][j] = std::hypot(points[i][0] - points[j][0], points[i][1] - points[j][1]) * kCircuity;
      time[i][j] = dist[i][j] / config.speed;
    }
  }
  inst.travel_time = std::move(time);
  inst.travel_distance = std::move(dist);
  return inst;
}

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names = {"brute", "exact", "greedy", "local-search", "heuristic"};
  return names;
}

MethodOutcome run_method(const Instance& inst, const std::string& method, const ExactConfig& exact,
                         const LocalSearchConfig& ls_config) {
  MethodOutcome out;
  if (method == "brute") {
    out.plan = solve_brute_force(inst);
    out.status = "optimal";
    out.best_bound = out.plan.evacuated_total;
  } else if (method == "exact") {
    ExactResult r = solve_exact(inst, exact);
    out.plan = std::move(r.plan);
    out.status = std::string(to_string(r.status));
    out.best_bound = r.best_bound;
    out.nodes = r.nodes;
  } else if (method == "greedy") {
    out.plan = greedy_construct(inst);
    out.status = "heuristic";
    out.best_bound = inst.total_demand();
  } else if (method == "local-search" || method == "heuristic") {
    out.plan = local_search(inst, greedy_construct(inst), ls_config);
    out.status = "heuristic";
    out.best_bound = inst.total_demand();
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  return out;
}

SweepReport run_sweep(const SweepConfig& config) {
  struct Cell {
    double ratio;
    double t_max;
    const std::string* method;
  };
  std::vector<Cell> cells;
  for (double r : config.ratios) {
    for (double t : config.t_maxes) {
      for (const auto& m : config.methods) cells.push_back({r, t, &m});
    }
  }

  ExactConfig exact = config.exact;
  exact.workers = 1;
  SweepReport report;
  report.rows.resize(cells.size());
  const int count = static_cast<int>(cells.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, config.workers))
  for (int c = 0; c < count; ++c) {
    const Cell& cell = cells[c];
    SweepRow& row = report.rows[c];
    row.r_ratio = cell.ratio;
    row.t_max = cell.t_max;
    row.method = *cell.method;
    const auto start = std::chrono::steady_clock::now();
    try {
      GenConfig gen = config.base;
      gen.r_ratio = cell.ratio;
      gen.t_max = cell.t_max;
      const Instance inst = generate_instance(gen);
      MethodOutcome out = run_method(inst, row.method, exact, config.local_search);
      row.objective = out.plan.evacuated_total;
      row.ep = evacuation_percentage(inst, out.plan);
      bool any_used = false;
      for (const auto& r : out.plan.routes) any_used = any_used || r.used;
      if (any_used) row.atd = average_travel_distance(inst, out.plan);
      row.status = out.status;
    } catch (const std::exception& e) {
      row.objective.reset();
      row.ep.reset();
      row.atd.reset();
      row.status = std::string("error: ") + e.what();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

}  // namespace evacshare
