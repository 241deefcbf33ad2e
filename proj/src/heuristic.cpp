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

#include "evacshare/heuristic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace evacshare {

std::string_view to_string(Neighborhood n) {
  switch (n) {
    case Neighborhood::kRelocatePickup: return "relocate_pickup";
    case Neighborhood::kSwapPickups: return "swap_pickups";
    case Neighborhood::kIntraRoute2Opt: return "intra_route_2opt";
    case Neighborhood::kChangeDestination: return "change_destination";
  }
  return "?";
}

std::optional<Neighborhood> parse_neighborhood(std::string_view text) {
  for (auto n : {Neighborhood::kRelocatePickup, Neighborhood::kSwapPickups, Neighborhood::kIntraRoute2Opt,
                 Neighborhood::kChangeDestination}) {
    if (to_string(n) == text) return n;
  }
  return std::nullopt;
}

namespace {

// Denominator guard for zero-minute insertions.
constexpr double kRateEpsilon = 1e-9;

double end_clock(const Tables& tab, const RouteChoice& r) {
  double clock = 0.0;
  int at = r.vehicle;
  for (std::size_t s = 0; s < r.stops.size(); ++s) {
    clock = advance_clock(clock, tab.t(at, r.stops[s]), tab.t_p, r.pickups[s]);
    at = r.stops[s];
  }
  return clock;
}

int last_location(const RouteChoice& r) { return r.stops.empty() ? r.vehicle : r.stops.back(); }

int load_of(const Tables& tab, const RouteChoice& r) {
  return tab.demand[r.vehicle] + std::accumulate(r.pickups.begin(), r.pickups.end(), 0);
}

// Gathering place with the earliest arrival (then cheaper, then lower index).
int fastest_gathering(const Tables& tab, int at, double clock) {
  int best = -1;
  for (int s : tab.gathering) {
    const double arrival = clock + tab.t(at, s);
    if (arrival > tab.t_max) continue;
    if (best < 0) {
      best = s;
      continue;
    }
    const double best_arrival = clock + tab.t(at, best);
    if (arrival < best_arrival || (arrival == best_arrival && tab.dk(at, s) < tab.dk(at, best))) best = s;
  }
  return best;
}

// Cheapest reachable gathering place (then lower index).
int cheapest_gathering(const Tables& tab, int at, double clock) {
  int best = -1;
  for (int s : tab.gathering) {
    if (clock + tab.t(at, s) > tab.t_max) continue;
    if (best < 0 || tab.dk(at, s) < tab.dk(at, best)) best = s;
  }
  return best;
}

bool has_stop(const RouteChoice& r, int loc) { return std::find(r.stops.begin(), r.stops.end(), loc) != r.stops.end(); }

// Stops distinct, capacity respected, and a gathering place reachable;
// sets the destination to the cheapest reachable one.
bool reclose(const Tables& tab, RouteChoice& r) {
  if (!r.used) return true;
  if (load_of(tab, r) > tab.capacity[r.vehicle]) return false;
  for (std::size_t a = 0; a < r.stops.size(); ++a) {
    if (r.pickups[a] < 0) return false;
    for (std::size_t b = a + 1; b < r.stops.size(); ++b) {
      if (r.stops[a] == r.stops[b]) return false;
    }
  }
  r.destination = cheapest_gathering(tab, last_location(r), end_clock(tab, r));
  return r.destination >= 0;
}

bool route_feasible(const Tables& tab, const RouteChoice& r) {
  if (!r.used) return r.stops.empty();
  if (r.destination < 0 || load_of(tab, r) > tab.capacity[r.vehicle]) return false;
  return end_clock(tab, r) + tab.t(last_location(r), r.destination) <= tab.t_max;
}

struct Score {
  int evac = 0;
  std::int64_t dkey = 0;
  bool operator>(const Score& o) const { return evac > o.evac || (evac == o.evac && dkey < o.dkey); }
};

Score score_of(const Tables& tab, const PlanChoice& plan) {
  Score s;
  for (const auto& r : plan) {
    s.evac += route_evacuees(tab, r);
    s.dkey += route_distance_key(tab, r);
  }
  return s;
}

std::vector<int> served_amounts(const Tables& tab, const PlanChoice& plan) {
  std::vector<int> served(tab.n, 0);
  for (const auto& r : plan) {
    if (!r.used) continue;
    for (std::size_t s = 0; s < r.stops.size(); ++s) served[r.stops[s]] += r.pickups[s];
  }
  return served;
}

// Arrival at the fastest gathering place, or +inf.
double fastest_arrival(const Tables& tab, const RouteChoice& r) {
  const double clock = end_clock(tab, r);
  const int at = last_location(r);
  const int s = fastest_gathering(tab, at, clock);
  return s < 0 ? std::numeric_limits<double>::infinity() : clock + tab.t(at, s);
}

}  // namespace

PlanChoice greedy_construct_choice(const Instance& inst) {
  const Tables tab(inst);
  PlanChoice plan = empty_choice(tab);
  std::vector<int> remaining(tab.n, 0);
  for (int h : tab.carless) remaining[h] = tab.demand[h];

  std::vector<int> order(plan.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return tab.capacity[tab.owners[a]] > tab.capacity[tab.owners[b]];
  });

  for (int v : order) {
    RouteChoice& route = plan[v];
    const int k = route.vehicle;
    if (fastest_gathering(tab, k, 0.0) < 0) continue;
    route.used = true;

    while (true) {
      const double base = fastest_arrival(tab, route);
      const int spare = tab.capacity[k] - load_of(tab, route);
      if (spare <= 0) break;
      double best_rate = -1.0;
      RouteChoice best_route;
      int best_h = -1, best_amount = 0;
      for (int h : tab.carless) {
        if (remaining[h] == 0 || has_stop(route, h)) continue;
        for (std::size_t pos = 0; pos <= route.stops.size(); ++pos) {
          RouteChoice trial = route;
          trial.stops.insert(trial.stops.begin() + static_cast<long>(pos), h);
          trial.pickups.insert(trial.pickups.begin() + static_cast<long>(pos), 0);
          for (int amount = std::min(spare, remaining[h]); amount >= 1; --amount) {
            trial.pickups[pos] = amount;
            const double arrival = fastest_arrival(tab, trial);
            if (arrival > tab.t_max) continue;
            const double rate = amount / (std::max(0.0, arrival - base) + kRateEpsilon);
            if (rate > best_rate) {
              best_rate = rate;
              best_route = trial;
              best_h = h;
              best_amount = amount;
            }
            break;  // largest feasible amount for this position
          }
        }
      }
      if (best_h < 0) break;
      route = std::move(best_route);
      remaining[best_h] -= best_amount;
    }
    route.destination = fastest_gathering(tab, last_location(route), end_clock(tab, route));
  }
  return plan;
}

Plan greedy_construct(const Instance& inst) { return to_plan(inst, greedy_construct_choice(inst)); }

namespace {

class Descent {
 public:
  Descent(const Tables& tab, const LocalSearchConfig& config, PlanChoice plan)
      : tab_(tab), config_(config), plan_(std::move(plan)) {
    scan_.assign(tab.carless.begin(), tab.carless.end());
    if (config.seed != 0) {
      std::mt19937_64 rng(config.seed);
      for (std::size_t i = scan_.size(); i > 1; --i) std::swap(scan_[i - 1], scan_[rng() % i]);
    }
  }

  // Returns the number of accepted moves.
  int run(int budget) {
    int accepted = 0;
    while (accepted < budget && improve_once()) ++accepted;
    return accepted;
  }

  const PlanChoice& plan() const { return plan_; }
  PlanChoice& plan() { return plan_; }

 private:
  bool improve_once() {
    const Score current = score_of(tab_, plan_);
    for (auto n : config_.neighborhoods) {
      bool moved = false;
      switch (n) {
        case Neighborhood::kRelocatePickup: moved = relocate(current); break;
        case Neighborhood::kSwapPickups: moved = swap(current); break;
        case Neighborhood::kIntraRoute2Opt: moved = two_opt(current); break;
        case Neighborhood::kChangeDestination: moved = change_destination(current); break;
      }
      if (moved) return true;
    }
    return false;
  }

  bool accept_if_better(const Score& current, PlanChoice&& candidate) {
    if (!(score_of(tab_, candidate) > current)) return false;
    plan_ = std::move(candidate);
    return true;
  }

  // Moves pickup units of one household from the unserved pool or from
  // another route into a target route; also activates idle vehicles.
  bool relocate(const Score& current) {
    for (std::size_t v = 0; v < plan_.size(); ++v) {
      if (plan_[v].used) continue;
      PlanChoice cand = plan_;
      cand[v].used = true;
      if (reclose(tab_, cand[v]) && accept_if_better(current, std::move(cand))) return true;
    }
    const std::vector<int> served = served_amounts(tab_, plan_);
    for (int h : scan_) {
      // Source -1 is the unserved pool.
      for (int src = -1; src < static_cast<int>(plan_.size()); ++src) {
        int available = 0;
        std::size_t src_pos = 0;
        if (src < 0) {
          available = tab_.demand[h] - served[h];
        } else {
          const auto& r = plan_[src];
          auto it = std::find(r.stops.begin(), r.stops.end(), h);
          if (!r.used || it == r.stops.end()) continue;
          src_pos = static_cast<std::size_t>(it - r.stops.begin());
          available = r.pickups[src_pos];
        }
        if (available <= 0) continue;
        for (int dst = 0; dst < static_cast<int>(plan_.size()); ++dst) {
          if (dst == src || !plan_[dst].used) continue;
          const int spare = tab_.capacity[plan_[dst].vehicle] - load_of(tab_, plan_[dst]);
          for (int amount = std::min(available, spare); amount >= 1; --amount) {
            if (try_relocate(current, h, src, src_pos, dst, amount)) return true;
          }
        }
      }
    }
    return false;
  }

  bool try_relocate(const Score& current, int h, int src, std::size_t src_pos, int dst, int amount) {
    PlanChoice base = plan_;
    if (src >= 0) {
      RouteChoice& s = base[src];
      s.pickups[src_pos] -= amount;
      if (s.pickups[src_pos] == 0) {
        s.stops.erase(s.stops.begin() + static_cast<long>(src_pos));
        s.pickups.erase(s.pickups.begin() + static_cast<long>(src_pos));
      }
      if (!reclose(tab_, s)) return false;
    }
    const RouteChoice& d = base[dst];
    auto it = std::find(d.stops.begin(), d.stops.end(), h);
    if (it != d.stops.end()) {
      PlanChoice cand = base;
      cand[dst].pickups[static_cast<std::size_t>(it - d.stops.begin())] += amount;
      return reclose(tab_, cand[dst]) && accept_if_better(current, std::move(cand));
    }
    for (std::size_t pos = 0; pos <= d.stops.size(); ++pos) {
      PlanChoice cand = base;
      cand[dst].stops.insert(cand[dst].stops.begin() + static_cast<long>(pos), h);
      cand[dst].pickups.insert(cand[dst].pickups.begin() + static_cast<long>(pos), amount);
      if (reclose(tab_, cand[dst]) && accept_if_better(current, std::move(cand))) return true;
    }
    return false;
  }

  bool swap(const Score& current) {
    for (std::size_t a = 0; a < plan_.size(); ++a) {
      for (std::size_t b = a + 1; b < plan_.size(); ++b) {
        if (!plan_[a].used || !plan_[b].used) continue;
        for (std::size_t i = 0; i < plan_[a].stops.size(); ++i) {
          for (std::size_t j = 0; j < plan_[b].stops.size(); ++j) {
            const int ha = plan_[a].stops[i];
            const int hb = plan_[b].stops[j];
            if (ha == hb || has_stop(plan_[a], hb) || has_stop(plan_[b], ha)) continue;
            PlanChoice cand = plan_;
            std::swap(cand[a].stops[i], cand[b].stops[j]);
            std::swap(cand[a].pickups[i], cand[b].pickups[j]);
            if (reclose(tab_, cand[a]) && reclose(tab_, cand[b]) && accept_if_better(current, std::move(cand))) {
              return true;
            }
          }
        }
      }
    }
    return false;
  }

  bool two_opt(const Score& current) {
    for (std::size_t v = 0; v < plan_.size(); ++v) {
      const auto& r = plan_[v];
      if (!r.used) continue;
      for (std::size_t i = 0; i + 1 < r.stops.size(); ++i) {
        for (std::size_t j = i + 1; j < r.stops.size(); ++j) {
          PlanChoice cand = plan_;
          auto& c = cand[v];
          std::reverse(c.stops.begin() + static_cast<long>(i), c.stops.begin() + static_cast<long>(j) + 1);
          std::reverse(c.pickups.begin() + static_cast<long>(i), c.pickups.begin() + static_cast<long>(j) + 1);
          if (reclose(tab_, c) && accept_if_better(current, std::move(cand))) return true;
        }
      }
    }
    return false;
  }

  bool change_destination(const Score& current) {
    for (std::size_t v = 0; v < plan_.size(); ++v) {
      if (!plan_[v].used) continue;
      for (int s : tab_.gathering) {
        if (s == plan_[v].destination) continue;
        PlanChoice cand = plan_;
        cand[v].destination = s;
        if (route_feasible(tab_, cand[v]) && accept_if_better(current, std::move(cand))) return true;
      }
    }
    return false;
  }

  const Tables& tab_;
  const LocalSearchConfig& config_;
  PlanChoice plan_;
  std::vector<int> scan_;
};

// Forces the largest unserved household into the first route that can take
// it after ejecting that route's smallest pickup.
std::optional<PlanChoice> forced_insertion(const Tables& tab, const PlanChoice& plan) {
  const std::vector<int> served = served_amounts(tab, plan);
  int target = -1;
  for (int h : tab.carless) {
    const int unserved = tab.demand[h] - served[h];
    if (unserved > 0 && (target < 0 || unserved > tab.demand[target] - served[target])) target = h;
  }
  if (target < 0) return std::nullopt;
  const int unserved = tab.demand[target] - served[target];

  for (std::size_t v = 0; v < plan.size(); ++v) {
    if (!plan[v].used || plan[v].stops.empty() || has_stop(plan[v], target)) continue;
    RouteChoice base = plan[v];
    const auto smallest = std::min_element(base.pickups.begin(), base.pickups.end()) - base.pickups.begin();
    base.stops.erase(base.stops.begin() + smallest);
    base.pickups.erase(base.pickups.begin() + smallest);
    const int spare = tab.capacity[base.vehicle] - load_of(tab, base);
    for (int amount = std::min(spare, unserved); amount >= 1; --amount) {
      for (std::size_t pos = 0; pos <= base.stops.size(); ++pos) {
        RouteChoice trial = base;
        trial.stops.insert(trial.stops.begin() + static_cast<long>(pos), target);
        trial.pickups.insert(trial.pickups.begin() + static_cast<long>(pos), amount);
        if (reclose(tab, trial)) {
          PlanChoice out = plan;
          out[v] = std::move(trial);
          return out;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PlanChoice local_search_choice(const Instance& inst, const PlanChoice& start, const LocalSearchConfig& config) {
  const Plan as_plan = to_plan(inst, start);
  if (!check_feasibility(inst, as_plan).feasible()) throw InfeasibleStartError("start plan is infeasible");
  if (config.max_iterations <= 0) return start;

  const Tables tab(inst);
  Descent descent(tab, config, start);
  int used = descent.run(config.max_iterations);
  const PlanChoice local_opt = descent.plan();
  if (used >= config.max_iterations) return local_opt;

  auto restarted = forced_insertion(tab, local_opt);
  if (!restarted) return local_opt;
  Descent second(tab, config, std::move(*restarted));
  second.run(config.max_iterations - used - 1);
  if (score_of(tab, second.plan()) > score_of(tab, local_opt)) return second.plan();
  return local_opt;
}

Plan local_search(const Instance& inst, const Plan& start, const LocalSearchConfig& config) {
  const FeasibilityReport report = check_feasibility(inst, start);
  if (!report.feasible()) throw InfeasibleStartError("start plan is infeasible");
  if (config.max_iterations <= 0) return start;
  return to_plan(inst, local_search_choice(inst, to_choice(inst, start), config));
}

}  // namespace evacshare
