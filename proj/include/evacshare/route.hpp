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

#pragma once

#include <cstdint>
#include <vector>

#include "evacshare/instance.hpp"

namespace evacshare {

/// Index-based route used inside the solvers. `stops` and `pickups` are
/// parallel; `destination` is a gathering index when used.
struct RouteChoice {
  int vehicle = -1;
  bool used = false;
  std::vector<int> stops;
  std::vector<int> pickups;
  int destination = -1;

  bool operator==(const RouteChoice&) const = default;
};

/// One RouteChoice per vehicle owner, in instance order.
using PlanChoice = std::vector<RouteChoice>;

/// Clock after driving `travel` minutes and boarding `pickup` persons.
/// Every component that replays a route goes through this so that the
/// floating-point results agree bit for bit.
inline double advance_clock(double clock, double travel, double t_p, int pickup) {
  return clock + travel + t_p * static_cast<double>(pickup);
}

/// Distances are compared in integer micro-miles so that sums are exact
/// and independent of summation order.
inline std::int64_t distance_key(double miles) {
  return static_cast<std::int64_t>(miles * 1e6 + (miles >= 0 ? 0.5 : -0.5));
}

/// Flat lookup tables derived from an Instance.
struct Tables {
  int n = 0;
  double t_p = 0.0;
  double t_max = 0.0;
  std::vector<double> time;          // n*n
  std::vector<double> dist;          // n*n miles
  std::vector<std::int64_t> dkey;    // n*n micro-miles
  std::vector<int> demand;
  std::vector<int> capacity;         // 0 for non-owners
  std::vector<LocationKind> kind;
  std::vector<int> owners;
  std::vector<int> carless;
  std::vector<int> gathering;

  explicit Tables(const Instance& inst);

  double t(int i, int j) const { return time[static_cast<std::size_t>(i) * n + j]; }
  double d(int i, int j) const { return dist[static_cast<std::size_t>(i) * n + j]; }
  std::int64_t dk(int i, int j) const { return dkey[static_cast<std::size_t>(i) * n + j]; }
};

struct RouteTimes {
  std::vector<double> depart;  // per stop
  double arrival = 0.0;
};

/// Replays a used route from clock 0 at the vehicle's own location.
RouteTimes route_times(const Tables& tab, const RouteChoice& route);

/// Arc distance of the route accumulated in travel order (0 if unused).
double route_distance(const Tables& tab, const RouteChoice& route);
std::int64_t route_distance_key(const Tables& tab, const RouteChoice& route);

/// Own household plus pickups for a used route, 0 otherwise.
int route_evacuees(const Tables& tab, const RouteChoice& route);

/// Self-delimiting route code: unused -> [0];
/// used -> [1, nstops, loc_1, pickup_1, ..., loc_n, pickup_n, destination].
void append_encoding(const RouteChoice& route, std::vector<int>& out);

/// Total order key shared by every solver: more evacuees first, then less
/// distance, then the lexicographically smaller encoding.
struct PlanKey {
  int evacuated = 0;
  std::int64_t distance = 0;
  std::vector<int> encoding;

  bool operator==(const PlanKey&) const = default;
};

/// True iff `a` strictly precedes `b` in the canonical order.
bool better(const PlanKey& a, const PlanKey& b);

PlanKey plan_key(const Tables& tab, const PlanChoice& plan);

/// All-unused plan for every owner.
PlanChoice empty_choice(const Tables& tab);

}  // namespace evacshare
