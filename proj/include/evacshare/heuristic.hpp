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
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "evacshare/instance.hpp"
#include "evacshare/plan.hpp"
#include "evacshare/route.hpp"

namespace evacshare {

enum class Neighborhood { kRelocatePickup, kSwapPickups, kIntraRoute2Opt, kChangeDestination };

std::string_view to_string(Neighborhood n);
std::optional<Neighborhood> parse_neighborhood(std::string_view text);

struct LocalSearchConfig {
  int max_iterations = 1000;  // accepted moves
  std::vector<Neighborhood> neighborhoods = {Neighborhood::kRelocatePickup, Neighborhood::kSwapPickups,
                                             Neighborhood::kIntraRoute2Opt, Neighborhood::kChangeDestination};
  std::uint64_t seed = 0;  // permutes the carless scan order; 0 keeps instance order
};

class InfeasibleStartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vehicles by descending capacity insert the (household, amount, position)
/// with the best evacuees-per-added-minute rate until nothing fits, then
/// close at the fastest reachable gathering place.
PlanChoice greedy_construct_choice(const Instance& inst);
Plan greedy_construct(const Instance& inst);

/// First-improvement descent on (evacuees, -distance) followed by one
/// forced-insertion restart. Throws InfeasibleStartError.
PlanChoice local_search_choice(const Instance& inst, const PlanChoice& start, const LocalSearchConfig& config);
Plan local_search(const Instance& inst, const Plan& start, const LocalSearchConfig& config = {});

}  // namespace evacshare
