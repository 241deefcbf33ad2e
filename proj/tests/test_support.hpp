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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "evacshare/instance.hpp"

namespace evacshare::testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(EVACSHARE_TEST_DATA) + "/" + name; }

inline Instance t1(double t_max = 8.0) {
  Instance inst = parse_instance(read_text(data_path("t1.json")));
  inst.t_max = t_max;
  return inst;
}

struct SmallSpec {
  int max_vehicles = 3;
  int max_carless = 4;
  int max_gathering = 2;
  int max_demand = 3;
};

/// Oracle-scale instance. Odd seeds use small integer travel times so that
/// ties in time and distance are common; even seeds use Euclidean geometry.
/// t_max is drawn between zero and a horizon long enough for any route,
/// so roughly half of the draws bind.
inline Instance random_small(std::uint64_t seed, SmallSpec spec = {}) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 12345);
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  const int nr = pick(1, spec.max_vehicles);
  const int nh = pick(0, spec.max_carless);
  const int ns = pick(1, spec.max_gathering);
  const int n = nr + nh + ns;
  Instance inst;
  inst.name = "small-" + std::to_string(seed);
  inst.t_p = (seed % 3 == 0) ? 0.5 : 1.0;
  for (int i = 0; i < n; ++i) {
    Location loc;
    if (i < nr) {
      loc.id = "r" + std::to_string(i + 1);
      loc.kind = LocationKind::kVehicleOwner;
      loc.demand = pick(1, std::min(3, spec.max_demand));
      loc.capacity = pick(0, 1) ? 7 : 5;
    } else if (i < nr + nh) {
      loc.id = "h" + std::to_string(i - nr + 1);
      loc.kind = LocationKind::kCarless;
      loc.demand = pick(1, spec.max_demand);
    } else {
      loc.id = "s" + std::to_string(i - nr - nh + 1);
      loc.kind = LocationKind::kGathering;
    }
    inst.locations.push_back(loc);
  }
  Matrix time(n, std::vector<double>(n, 0.0));
  Matrix dist(n, std::vector<double>(n, 0.0));
  if (seed % 2 == 1) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) {
          time[i][j] = pick(1, 5);
          dist[i][j] = pick(1, 4) * 0.5;
        }
  } else {
    std::vector<std::pair<double, double>> pts(n);
    for (auto& p : pts) p = {unit() * 4.0, unit() * 4.0};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) {
          dist[i][j] = std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second) * 1.3;
          time[i][j] = dist[i][j] / 0.5;
        }
  }
  double max_t = 0.0;
  for (const auto& row : time)
    for (double v : row) max_t = std::max(max_t, v);
  const double horizon = (nh + 1) * max_t + inst.t_p * 7;
  inst.t_max = std::round(unit() * horizon * 0.6 * 4.0) / 4.0;
  inst.travel_time = std::move(time);
  inst.travel_distance = std::move(dist);
  return inst;
}

}  // namespace evacshare::testing
