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

#include "evacshare/oracle.hpp"

#include <map>

namespace evacshare {

namespace {

struct RouteOption {
  RouteChoice route;
  std::vector<int> pickups;  // per carless position
  std::int64_t dkey = 0;
  int evacuated = 0;
  std::vector<int> encoding;
};

bool option_preferred(const RouteOption& a, const RouteOption& b) {
  if (a.dkey != b.dkey) return a.dkey < b.dkey;
  return a.encoding < b.encoding;
}

// All feasible routes of one vehicle, reduced to the preferred route for
// each (used, pickups) signature. Routes with equal signatures are
// interchangeable in any joint plan, so only the cheapest (then smallest
// code) can be part of the canonical optimum.
std::vector<RouteOption> vehicle_options(const Tables& tab, int k) {
  const int nh = static_cast<int>(tab.carless.size());
  // Keyed by (used, pickups per carless household).
  std::map<std::pair<bool, std::vector<int>>, RouteOption> best;

  RouteOption unused;
  unused.route.vehicle = k;
  unused.pickups.assign(nh, 0);
  append_encoding(unused.route, unused.encoding);
  best.emplace(std::make_pair(false, unused.pickups), unused);

  RouteChoice route;
  route.vehicle = k;
  route.used = true;
  std::vector<int> pick(nh, 0);
  std::vector<char> visited(nh, 0);

  auto record = [&](double clock, int at, int load) {
    for (int s : tab.gathering) {
      if (clock + tab.t(at, s) > tab.t_max) continue;
      route.destination = s;
      RouteOption opt;
      opt.route = route;
      opt.pickups = pick;
      opt.dkey = route_distance_key(tab, route);
      opt.evacuated = load;
      append_encoding(route, opt.encoding);
      auto [it, inserted] = best.try_emplace(std::make_pair(true, pick), opt);
      if (!inserted && option_preferred(opt, it->second)) it->second = std::move(opt);
    }
    route.destination = -1;
  };

  auto extend = [&](auto&& self, double clock, int at, int load) -> void {
    record(clock, at, load);
    for (int p = 0; p < nh; ++p) {
      if (visited[p]) continue;
      const int h = tab.carless[p];
      const int most = std::min(tab.capacity[k] - load, tab.demand[h]);
      for (int q = 0; q <= most; ++q) {
        const double next = advance_clock(clock, tab.t(at, h), tab.t_p, q);
        if (next > tab.t_max) continue;  // every completion would be late
        visited[p] = 1;
        pick[p] = q;
        route.stops.push_back(h);
        route.pickups.push_back(q);
        self(self, next, h, load + q);
        route.stops.pop_back();
        route.pickups.pop_back();
        pick[p] = 0;
        visited[p] = 0;
      }
    }
  };
  extend(extend, 0.0, k, tab.demand[k]);

  std::vector<RouteOption> out;
  out.reserve(best.size());
  for (auto& [_, opt] : best) out.push_back(std::move(opt));
  return out;
}

}  // namespace

PlanChoice solve_brute_force_choice(const Instance& inst, OracleLimits limits) {
  const Tables tab(inst);
  if (static_cast<int>(tab.owners.size()) > limits.max_vehicles ||
      static_cast<int>(tab.carless.size()) > limits.max_carless) {
    throw LimitExceededError("brute force limited to " + std::to_string(limits.max_vehicles) + " vehicles and " +
                             std::to_string(limits.max_carless) + " carless households");
  }
  const int nv = static_cast<int>(tab.owners.size());
  const int nh = static_cast<int>(tab.carless.size());

  std::vector<std::vector<RouteOption>> options;
  for (int k : tab.owners) options.push_back(vehicle_options(tab, k));

  std::vector<int> remaining(nh);
  for (int p = 0; p < nh; ++p) remaining[p] = tab.demand[tab.carless[p]];

  std::vector<const RouteOption*> chosen(nv, nullptr);
  std::vector<const RouteOption*> best_chosen;
  PlanKey best_key;
  bool have_best = false;

  auto encoding_of = [&](const std::vector<const RouteOption*>& pick) {
    std::vector<int> enc;
    for (const auto* o : pick) enc.insert(enc.end(), o->encoding.begin(), o->encoding.end());
    return enc;
  };

  auto joint = [&](auto&& self, int v, int evac, std::int64_t dkey) -> void {
    if (v == nv) {
      bool take = !have_best || evac > best_key.evacuated ||
                  (evac == best_key.evacuated && dkey < best_key.distance);
      if (!take && evac == best_key.evacuated && dkey == best_key.distance) {
        take = encoding_of(chosen) < best_key.encoding;
      }
      if (take) {
        have_best = true;
        best_chosen = chosen;
        best_key = {evac, dkey, encoding_of(chosen)};
      }
      return;
    }
    for (const auto& opt : options[v]) {
      bool fits = true;
      for (int p = 0; p < nh && fits; ++p) fits = opt.pickups[p] <= remaining[p];
      if (!fits) continue;
      for (int p = 0; p < nh; ++p) remaining[p] -= opt.pickups[p];
      chosen[v] = &opt;
      self(self, v + 1, evac + opt.evacuated, dkey + opt.dkey);
      for (int p = 0; p < nh; ++p) remaining[p] += opt.pickups[p];
    }
  };
  joint(joint, 0, 0, 0);

  PlanChoice plan;
  for (const auto* o : best_chosen) plan.push_back(o->route);
  return plan;
}

Plan solve_brute_force(const Instance& inst, OracleLimits limits) {
  Plan plan = to_plan(inst, solve_brute_force_choice(inst, limits));
  if (!check_feasibility(inst, plan).feasible()) {
    throw std::logic_error("brute force produced an infeasible plan");
  }
  return plan;
}

}  // namespace evacshare
