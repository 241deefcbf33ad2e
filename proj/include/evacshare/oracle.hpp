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

#include <stdexcept>

#include "evacshare/instance.hpp"
#include "evacshare/plan.hpp"
#include "evacshare/route.hpp"

namespace evacshare {

struct OracleLimits {
  int max_vehicles = 3;
  int max_carless = 4;
};

class LimitExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive reference solver. Enumerates every route of every vehicle
/// (stop order, pickup amounts including zero, destination), then every
/// joint combination that respects household demands, and returns the
/// canonical optimum (see PlanKey). Throws LimitExceededError when the
/// instance is larger than `limits`.
PlanChoice solve_brute_force_choice(const Instance& inst, OracleLimits limits = {});
Plan solve_brute_force(const Instance& inst, OracleLimits limits = {});

}  // namespace evacshare
