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

#include "evacshare/route.hpp"

namespace evacshare {

Tables::Tables(const Instance& inst)
    : n(static_cast<int>(inst.size())), t_p(inst.t_p), t_max(inst.t_max) {
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  time.resize(nn);
  dist.resize(nn);
  dkey.resize(nn);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t at = static_cast<std::size_t>(i) * n + j;
      time[at] = inst.time(i, j);
      dist[at] = inst.distance(i, j);
      dkey[at] = distance_key(dist[at]);
    }
  }
  demand.resize(n);
  capacity.resize(n);
  kind.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& loc = inst.locations[i];
    demand[i] = loc.demand;
    capacity[i] = loc.capacity.value_or(0);
    kind[i] = loc.kind;
    switch (loc.kind) {
      case LocationKind::kVehicleOwner: owners.push_back(i); break;
      case LocationKind::kCarless: carless.push_back(i); break;
      case LocationKind::kGathering: gathering.push_back(i); break;
    }
  }
}

RouteTimes route_times(const Tables& tab, const RouteChoice& route) {
  RouteTimes out;
  out.depart.reserve(route.stops.size());
  double clock = 0.0;
  int at = route.vehicle;
  for (std::size_t s = 0; s < route.stops.size(); ++s) {
    clock = advance_clock(clock, tab.t(at, route.stops[s]), tab.t_p, route.pickups[s]);
    out.depart.push_back(clock);
    at = route.stops[s];
  }
  out.arrival = route.destination >= 0 ? clock + tab.t(at, route.destination) : clock;
  return out;
}

double route_distance(const Tables& tab, const RouteChoice& route) {
  if (!route.used) return 0.0;
  double total = 0.0;
  int at = route.vehicle;
  for (int stop : route.stops) {
    total += tab.d(at, stop);
    at = stop;
  }
  if (route.destination >= 0) total += tab.d(at, route.destination);
  return total;
}

std::int64_t route_distance_key(const Tables& tab, const RouteChoice& route) {
  if (!route.used) return 0;
  std::int64_t total = 0;
  int at = route.vehicle;
  for (int stop : route.stops) {
    total += tab.dk(at, stop);
    at = stop;
  }
  if (route.destination >= 0) total += tab.dk(at, route.destination);
  return total;
}

int route_evacuees(const Tables& tab, const RouteChoice& route) {
  if (!route.used) return 0;
  int total = tab.demand[route.vehicle];
  for (int p : route.pickups) total += p;
  return total;
}

void append_encoding(const RouteChoice& route, std::vector<int>& out) {
  if (!route.used) {
    out.push_back(0);
    return;
  }
  out.push_back(1);
  out.push_back(static_cast<int>(route.stops.size()));
  for (std::size_t s = 0; s < route.stops.size(); ++s) {
    out.push_back(route.stops[s]);
    out.push_back(route.pickups[s]);
  }
  out.push_back(route.destination);
}

bool better(const PlanKey& a, const PlanKey& b) {
  if (a.evacuated != b.evacuated) return a.evacuated > b.evacuated;
  if (a.distance != b.distance) return a.distance < b.distance;
  return a.encoding < b.encoding;
}

PlanKey plan_key(const Tables& tab, const PlanChoice& plan) {
  PlanKey key;
  for (const auto& r : plan) {
    key.evacuated += route_evacuees(tab, r);
    key.distance += route_distance_key(tab, r);
    append_encoding(r, key.encoding);
  }
  return key;
}

PlanChoice empty_choice(const Tables& tab) {
  PlanChoice plan;
  plan.reserve(tab.owners.size());
  for (int k : tab.owners) {
    RouteChoice r;
    r.vehicle = k;
    plan.push_back(std::move(r));
  }
  return plan;
}

}  // namespace evacshare
