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

#include "evacshare/exact.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>

namespace evacshare {

std::string_view to_string(ExactStatus status) {
  return status == ExactStatus::kOptimal ? "optimal" : "limit_reached";
}

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
// Slack on travel-time triangle comparisons; keeps the zero-pickup filter a
// superset of the stops that can matter under floating-point clocks.
constexpr double kTriangleSlack = 1e-9;
constexpr std::int64_t kProfileBudget = 2'000'000;
constexpr int kSyncEvery = 256;

// Static data shared by every worker.
struct Problem {
  explicit Problem(const Instance& inst) : tab(inst) {}

  Tables tab;
  int n = 0;
  int nv = 0;
  int emax = 0;
  std::vector<char> zero_ok;            // [a * n + h]: a zero pickup at h after a may pay off
  std::vector<std::int64_t> min_out;    // cheapest arc from a location into H or S
  std::vector<double> sp;               // [a * n + b]: fastest time via carless households
  std::vector<double> min_to_s;         // fastest time from a location into S
  std::vector<char> reach_any;          // per vehicle position
  std::vector<int> extra_max;           // most extra persons a vehicle can carry alone
  std::vector<std::vector<std::int64_t>> profile;  // [v][a] cheapest route with a extra persons
  std::vector<int> own_suffix;          // [v] own households of vehicles v.. that can drive
  std::vector<int> extra_suffix;        // [v] sum of extra_max over vehicles v..
  std::vector<std::vector<std::int64_t>> suffix_cost;  // [v][e] cheapest way for v.. to move >= e

  // Necessary condition for finishing in time; zero-pickup stops may beat
  // the direct arc when travel times break the triangle inequality.
  bool closable(int at, double clock) const { return clock + min_to_s[at] <= tab.t_max + kTriangleSlack; }
};

void compute_zero_filter(Problem& p) {
  const Tables& tab = p.tab;
  p.zero_ok.assign(static_cast<std::size_t>(p.n) * p.n, 0);
  std::vector<int> targets = tab.carless;
  targets.insert(targets.end(), tab.gathering.begin(), tab.gathering.end());
  for (int a = 0; a < p.n; ++a) {
    if (tab.kind[a] == LocationKind::kGathering) continue;
    for (int h : tab.carless) {
      if (h == a) continue;
      bool useful = false;
      for (int b : targets) {
        if (b == a || b == h) continue;
        if (tab.t(a, h) + tab.t(h, b) < tab.t(a, b) + kTriangleSlack || tab.dk(a, h) + tab.dk(h, b) < tab.dk(a, b)) {
          useful = true;
          break;
        }
      }
      p.zero_ok[static_cast<std::size_t>(a) * p.n + h] = useful;
    }
  }
}

// Cheapest route per number of extra persons for one vehicle, ignoring the
// other vehicles. Falls back to a trivial bound if enumeration is too large.
void compute_profile(Problem& p, int v) {
  const Tables& tab = p.tab;
  const int k = tab.owners[v];
  const int spare = tab.capacity[k] - tab.demand[k];
  std::vector<std::int64_t> best(spare + 1, kInf);
  std::vector<char> visited(p.n, 0);
  std::int64_t budget = kProfileBudget;
  bool any = false;

  auto walk = [&](auto&& self, int at, double clock, int extra, std::int64_t dkey) -> bool {
    if (--budget < 0) return false;
    for (int s : tab.gathering) {
      if (clock + tab.t(at, s) <= tab.t_max) {
        best[extra] = std::min(best[extra], dkey + tab.dk(at, s));
        any = true;
      }
    }
    for (int h : tab.carless) {
      if (visited[h]) continue;
      const int qmax = std::min(spare - extra, tab.demand[h]);
      const bool zero = p.zero_ok[static_cast<std::size_t>(at) * p.n + h];
      for (int q = zero ? 0 : 1; q <= qmax; ++q) {
        const double next = advance_clock(clock, tab.t(at, h), tab.t_p, q);
        if (!p.closable(h, next)) continue;
        visited[h] = 1;
        const bool ok = self(self, h, next, extra + q, dkey + tab.dk(at, h));
        visited[h] = 0;
        if (!ok) return false;
      }
    }
    return true;
  };

  visited[k] = 1;
  if (walk(walk, k, 0.0, 0, 0)) {
    p.reach_any[v] = any;
    int top = 0;
    for (int a = 0; a <= spare; ++a) {
      if (best[a] < kInf) top = a;
    }
    p.extra_max[v] = any ? top : 0;
    p.profile[v] = std::move(best);
  } else {
    std::int64_t cheapest = kInf;
    for (int j = 0; j < p.n; ++j) {
      if (j != k && tab.kind[j] != LocationKind::kVehicleOwner) cheapest = std::min(cheapest, tab.dk(k, j));
    }
    p.reach_any[v] = 1;
    p.extra_max[v] = spare;
    p.profile[v].assign(spare + 1, cheapest);
  }
}

void prepare(Problem& p) {
  const Tables& tab = p.tab;
  p.n = tab.n;
  p.nv = static_cast<int>(tab.owners.size());
  for (int i = 0; i < p.n; ++i) {
    if (tab.kind[i] != LocationKind::kGathering) p.emax += tab.demand[i];
  }
  compute_zero_filter(p);

  p.sp = tab.time;
  for (int h : tab.carless) {
    for (int a = 0; a < p.n; ++a) {
      for (int b = 0; b < p.n; ++b) {
        auto& ab = p.sp[static_cast<std::size_t>(a) * p.n + b];
        ab = std::min(ab, p.sp[static_cast<std::size_t>(a) * p.n + h] + p.sp[static_cast<std::size_t>(h) * p.n + b]);
      }
    }
  }
  p.min_out.assign(p.n, kInf);
  p.min_to_s.assign(p.n, std::numeric_limits<double>::infinity());
  for (int a = 0; a < p.n; ++a) {
    for (int j = 0; j < p.n; ++j) {
      if (j == a || tab.kind[j] == LocationKind::kVehicleOwner) continue;
      p.min_out[a] = std::min(p.min_out[a], tab.dk(a, j));
      if (tab.kind[j] == LocationKind::kGathering) {
        p.min_to_s[a] = std::min(p.min_to_s[a], p.sp[static_cast<std::size_t>(a) * p.n + j]);
      }
    }
  }

  p.reach_any.assign(p.nv, 0);
  p.extra_max.assign(p.nv, 0);
  p.profile.assign(p.nv, {});
  for (int v = 0; v < p.nv; ++v) compute_profile(p, v);

  p.own_suffix.assign(p.nv + 1, 0);
  p.extra_suffix.assign(p.nv + 1, 0);
  p.suffix_cost.assign(p.nv + 1, std::vector<std::int64_t>(p.emax + 1, kInf));
  p.suffix_cost[p.nv][0] = 0;
  for (int v = p.nv - 1; v >= 0; --v) {
    const int own = tab.demand[tab.owners[v]];
    p.own_suffix[v] = p.own_suffix[v + 1] + (p.reach_any[v] ? own : 0);
    p.extra_suffix[v] = p.extra_suffix[v + 1] + p.extra_max[v];
    auto& cur = p.suffix_cost[v];
    const auto& next = p.suffix_cost[v + 1];
    for (int e = 0; e <= p.emax; ++e) {
      cur[e] = next[e];
      if (!p.reach_any[v]) continue;
      for (int a = 0; a < static_cast<int>(p.profile[v].size()); ++a) {
        if (p.profile[v][a] >= kInf) continue;
        const int rest = std::max(0, e - own - a);
        if (next[rest] >= kInf) continue;
        cur[e] = std::min(cur[e], p.profile[v][a] + next[rest]);
      }
    }
  }
}

struct Shared {
  std::mutex mu;
  PlanKey best_key;
  PlanChoice best_plan;
  std::atomic<std::int64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::chrono::steady_clock::time_point start;
  ExactConfig config;
};

enum class MoveType { kStart, kUnused, kExtend, kClose };

struct Move {
  MoveType type;
  int loc = -1;
  int q = 0;
};

struct State {
  int v = 0;
  bool open = false;
  int at = -1;
  double clock = 0.0;
  int load = 0;
  int evac = 0;
  int remaining_total = 0;
  std::int64_t dkey = 0;
  std::vector<int> remaining;   // per location
  std::vector<char> in_route;   // per location, current route only
  PlanChoice routes;
  std::vector<std::pair<int, double>> trail;  // (at, clock) before each extend/close
  std::vector<int> saved_load;                // load before each start
};

class Search {
 public:
  Search(const Problem& p, Shared& shared, State state) : p_(p), tab_(p.tab), shared_(shared), s_(std::move(state)) {
    refresh();
  }

  void run() {
    dfs();
    shared_.nodes.fetch_add(pending_);
    pending_ = 0;
  }

  std::vector<Move> children() const {
    std::vector<Move> out;
    if (s_.v == p_.nv) return out;
    if (!s_.open) {
      if (p_.reach_any[s_.v]) out.push_back({MoveType::kStart});
      out.push_back({MoveType::kUnused});
      return out;
    }
    const int k = tab_.owners[s_.v];
    int close_to = -1;
    for (int s : tab_.gathering) {
      if (s_.clock + tab_.t(s_.at, s) > tab_.t_max) continue;
      if (close_to < 0 || tab_.dk(s_.at, s) < tab_.dk(s_.at, close_to)) close_to = s;
    }
    if (close_to >= 0) out.push_back({MoveType::kClose, close_to});

    const int spare = tab_.capacity[k] - s_.load;
    int qs[64];
    for (int h : tab_.carless) {
      if (s_.in_route[h]) continue;
      const int qmax = std::min(spare, s_.remaining[h]);
      int count = 0;
      if (qmax >= 1) qs[count++] = qmax;
      if (qmax > 1) qs[count++] = 1;
      for (int q = qmax - 1; q >= 2 && count < 63; --q) qs[count++] = q;
      if (p_.zero_ok[static_cast<std::size_t>(s_.at) * p_.n + h]) qs[count++] = 0;
      for (int c = 0; c < count; ++c) {
        const double next = advance_clock(s_.clock, tab_.t(s_.at, h), tab_.t_p, qs[c]);
        if (p_.closable(h, next)) out.push_back({MoveType::kExtend, h, qs[c]});
      }
    }
    return out;
  }

  void apply(const Move& m) {
    switch (m.type) {
      case MoveType::kStart: {
        const int k = tab_.owners[s_.v];
        RouteChoice& r = s_.routes[s_.v];
        r.used = true;
        s_.saved_load.push_back(s_.load);
        s_.open = true;
        s_.at = k;
        s_.clock = 0.0;
        s_.load = tab_.demand[k];
        s_.evac += tab_.demand[k];
        s_.in_route[k] = 1;
        break;
      }
      case MoveType::kUnused:
        ++s_.v;
        break;
      case MoveType::kExtend: {
        RouteChoice& r = s_.routes[s_.v];
        s_.trail.emplace_back(s_.at, s_.clock);
        r.stops.push_back(m.loc);
        r.pickups.push_back(m.q);
        s_.clock = advance_clock(s_.clock, tab_.t(s_.at, m.loc), tab_.t_p, m.q);
        s_.dkey += tab_.dk(s_.at, m.loc);
        s_.at = m.loc;
        s_.load += m.q;
        s_.evac += m.q;
        s_.remaining[m.loc] -= m.q;
        s_.remaining_total -= m.q;
        s_.in_route[m.loc] = 1;
        break;
      }
      case MoveType::kClose: {
        RouteChoice& r = s_.routes[s_.v];
        s_.trail.emplace_back(s_.at, s_.clock);
        r.destination = m.loc;
        s_.dkey += tab_.dk(s_.at, m.loc);
        s_.open = false;
        s_.in_route[r.vehicle] = 0;
        for (int h : r.stops) s_.in_route[h] = 0;
        ++s_.v;
        break;
      }
    }
  }

  void undo(const Move& m) {
    switch (m.type) {
      case MoveType::kStart: {
        const int k = tab_.owners[s_.v];
        s_.routes[s_.v].used = false;
        s_.load = s_.saved_load.back();
        s_.saved_load.pop_back();
        s_.open = false;
        s_.evac -= tab_.demand[k];
        s_.in_route[k] = 0;
        break;
      }
      case MoveType::kUnused:
        --s_.v;
        break;
      case MoveType::kExtend: {
        RouteChoice& r = s_.routes[s_.v];
        std::tie(s_.at, s_.clock) = s_.trail.back();
        s_.trail.pop_back();
        r.stops.pop_back();
        r.pickups.pop_back();
        s_.dkey -= tab_.dk(s_.at, m.loc);
        s_.load -= m.q;
        s_.evac -= m.q;
        s_.remaining[m.loc] += m.q;
        s_.remaining_total += m.q;
        s_.in_route[m.loc] = 0;
        break;
      }
      case MoveType::kClose: {
        --s_.v;
        RouteChoice& r = s_.routes[s_.v];
        std::tie(s_.at, s_.clock) = s_.trail.back();
        s_.trail.pop_back();
        s_.dkey -= tab_.dk(s_.at, m.loc);
        r.destination = -1;
        s_.open = true;
        s_.in_route[r.vehicle] = 1;
        for (int h : r.stops) s_.in_route[h] = 1;
        break;
      }
    }
  }

  int current_extra_bound() const {
    if (!s_.open) return 0;
    const int spare = tab_.capacity[tab_.owners[s_.v]] - s_.load;
    if (spare <= 0) return 0;
    int reachable = 0;
    for (int h : tab_.carless) {
      if (s_.in_route[h] || s_.remaining[h] == 0) continue;
      const double next = s_.clock + p_.sp[static_cast<std::size_t>(s_.at) * p_.n + h] + tab_.t_p;
      if (p_.closable(h, next)) reachable += s_.remaining[h];
    }
    return std::min(spare, reachable);
  }

  int evac_bound(int cur_extra) const {
    const int next_v = s_.open ? s_.v + 1 : s_.v;
    return s_.evac + std::min(cur_extra + p_.extra_suffix[next_v], s_.remaining_total) + p_.own_suffix[next_v];
  }

  std::int64_t distance_bound(int target, int cur_extra) const {
    const int next_v = s_.open ? s_.v + 1 : s_.v;
    const int need = target - s_.evac - cur_extra;
    std::int64_t lb = s_.dkey + (s_.open ? p_.min_out[s_.at] : 0);
    if (need > 0) {
      if (need > p_.emax || p_.suffix_cost[next_v][need] >= kInf) return kInf;
      lb += p_.suffix_cost[next_v][need];
    }
    return lb;
  }

  int root_bound() const { return evac_bound(current_extra_bound()); }

  const State& state() const { return s_; }
  State& state() { return s_; }

 private:
  bool tick() {
    if (++pending_ >= kSyncEvery) flush();
    return shared_.stop.load(std::memory_order_relaxed);
  }

  void flush() {
    if (pending_ == 0) return;
    const std::int64_t total = shared_.nodes.fetch_add(pending_) + pending_;
    pending_ = 0;
    const auto& cfg = shared_.config;
    if (cfg.node_limit > 0 && total >= cfg.node_limit) shared_.stop = true;
    if (cfg.time_limit > 0) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - shared_.start).count();
      if (elapsed >= cfg.time_limit) shared_.stop = true;
    }
    refresh();
  }

  void refresh() {
    std::lock_guard<std::mutex> lock(shared_.mu);
    if (shared_.best_key.evacuated > inc_evac_ ||
        (shared_.best_key.evacuated == inc_evac_ && shared_.best_key.distance < inc_dkey_)) {
      inc_evac_ = shared_.best_key.evacuated;
      inc_dkey_ = shared_.best_key.distance;
    }
  }

  void leaf() {
    if (s_.evac < inc_evac_ || (s_.evac == inc_evac_ && s_.dkey > inc_dkey_)) return;
    PlanKey key{s_.evac, s_.dkey, {}};
    for (const auto& r : s_.routes) append_encoding(r, key.encoding);
    std::lock_guard<std::mutex> lock(shared_.mu);
    if (better(key, shared_.best_key)) {
      shared_.best_key = std::move(key);
      shared_.best_plan = s_.routes;
    }
    inc_evac_ = shared_.best_key.evacuated;
    inc_dkey_ = shared_.best_key.distance;
  }

  void dfs() {
    if (tick()) return;
    if (s_.v == p_.nv) {
      leaf();
      return;
    }
    const int extra = current_extra_bound();
    const int ub = evac_bound(extra);
    if (ub < inc_evac_) return;
    if (ub == inc_evac_ && distance_bound(inc_evac_, extra) > inc_dkey_) return;

    std::vector<Move> moves = children();
    if (moves.size() > 1) {
      std::vector<std::pair<int, int>> order;  // (-bound, position)
      order.reserve(moves.size());
      for (std::size_t i = 0; i < moves.size(); ++i) {
        apply(moves[i]);
        order.emplace_back(-evac_bound(current_extra_bound()), static_cast<int>(i));
        undo(moves[i]);
      }
      std::sort(order.begin(), order.end());
      std::vector<Move> sorted;
      sorted.reserve(moves.size());
      for (const auto& [_, i] : order) sorted.push_back(moves[i]);
      moves = std::move(sorted);
    }
    for (const auto& m : moves) {
      apply(m);
      dfs();
      undo(m);
      if (shared_.stop.load(std::memory_order_relaxed)) return;
    }
  }

  const Problem& p_;
  const Tables& tab_;
  Shared& shared_;
  State s_;
  int inc_evac_ = -1;
  std::int64_t inc_dkey_ = kInf;
  std::int64_t pending_ = 0;
};

State root_state(const Problem& p) {
  State s;
  s.remaining = p.tab.demand;
  for (int i = 0; i < p.n; ++i) {
    if (p.tab.kind[i] != LocationKind::kCarless) s.remaining[i] = 0;
    s.remaining_total += s.remaining[i];
  }
  s.in_route.assign(p.n, 0);
  s.routes = empty_choice(p.tab);
  return s;
}

// Breadth-first expansion of the top of the tree into independent subtrees.
std::vector<State> frontier(const Problem& p, Shared& shared, const State& root, std::size_t target) {
  std::vector<State> layer{root};
  for (int depth = 0; depth < 8 && layer.size() < target; ++depth) {
    std::vector<State> next;
    bool grew = false;
    for (auto& st : layer) {
      Search probe(p, shared, st);
      auto moves = probe.children();
      if (moves.empty()) {
        next.push_back(std::move(st));
        continue;
      }
      grew = true;
      shared.nodes.fetch_add(1);
      for (const auto& m : moves) {
        probe.apply(m);
        next.push_back(probe.state());
        probe.undo(m);
      }
    }
    layer = std::move(next);
    if (!grew) break;
  }
  return layer;
}

}  // namespace

ExactResult solve_exact(const Instance& inst, const ExactConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Problem problem(inst);
  prepare(problem);

  Shared shared;
  shared.config = config;
  shared.start = start;
  shared.best_plan = empty_choice(problem.tab);
  shared.best_key = plan_key(problem.tab, shared.best_plan);

  const State root = root_state(problem);
  const int root_bound = Search(problem, shared, root).root_bound();
  const int workers = std::max(1, config.workers);

  if (workers == 1) {
    Search(problem, shared, root).run();
  } else {
    std::vector<State> jobs = frontier(problem, shared, root, static_cast<std::size_t>(workers) * 8);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (shared.stop.load()) continue;
      Search(problem, shared, std::move(jobs[i])).run();
    }
  }

  ExactResult result;
  result.choice = shared.best_plan;
  result.plan = to_plan(inst, result.choice);
  result.objective = shared.best_key.evacuated;
  result.status = shared.stop.load() ? ExactStatus::kLimitReached : ExactStatus::kOptimal;
  result.best_bound = result.status == ExactStatus::kOptimal ? result.objective : std::max(root_bound, result.objective);
  result.nodes = shared.nodes.load();
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (const auto report = check_feasibility(inst, result.plan); !report.feasible()) {
    throw std::logic_error("exact search produced an infeasible plan: " + report.violations.front().detail);
  }
  return result;
}

}  // namespace evacshare
