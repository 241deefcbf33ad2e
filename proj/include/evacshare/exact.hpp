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
#include <string_view>

#include "evacshare/instance.hpp"
#include "evacshare/plan.hpp"
#include "evacshare/route.hpp"

namespace evacshare {

struct ExactConfig {
  double time_limit = 0.0;        // seconds; <= 0 means unlimited
  std::int64_t node_limit = 0;    // <= 0 means unlimited
  int workers = 1;                // 1 runs the serial search
};

enum class ExactStatus { kOptimal, kLimitReached };

std::string_view to_string(ExactStatus status);

struct ExactResult {
  PlanChoice choice;
  Plan plan;
  ExactStatus status = ExactStatus::kOptimal;
  int objective = 0;
  int best_bound = 0;  // valid upper bound on the optimum
  std::int64_t nodes = 0;
  double seconds = 0.0;
};

/// Depth-first branch and bound over vehicles in instance order. A node
/// extends the open route by one (carless stop, pickup) or closes it at its
/// cheapest reachable gathering place. Nodes are fathomed when the deadline
/// cannot be met or when the evacuee bound (and, on ties, the distance
/// bound) cannot beat the incumbent. When optimal, the returned plan is the
/// canonical optimum under PlanKey, identical for every worker count.
ExactResult solve_exact(const Instance& inst, const ExactConfig& config = {});

}  // namespace evacshare
