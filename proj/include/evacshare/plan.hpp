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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evacshare/instance.hpp"
#include "evacshare/route.hpp"

namespace evacshare {

// Clock tolerance, minutes, for comparing stored and replayed timestamps.
inline constexpr double kTimestampTolerance = 1e-6;

struct Stop {
  std::string location;
  int pickup = 0;
  double depart_time = 0.0;

  bool operator==(const Stop&) const = default;
};

struct Route {
  std::string vehicle;
  bool used = false;
  std::vector<Stop> stops;
  std::optional<std::string> destination;
  std::optional<double> arrival_time;

  bool operator==(const Route&) const = default;
};

struct Plan {
  std::vector<Route> routes;
  int evacuated_total = 0;

  bool operator==(const Plan&) const = default;
};

enum class PlanViolationCode {
  kMissingRoute,
  kDuplicateRoute,
  kNotAVehicle,
  kUnusedRouteNotEmpty,
  kMissingDestination,
  kDestinationNotGathering,
  kStopNotCarless,
  kRevisitedLocation,
  kNegativePickup,
  kNegativeTime,
  kCapacityExceeded,
  kDemandExceeded,
  kDeadlineViolated,
  kTimestampMismatch,
  kEvacuatedTotalMismatch,
  kZeroPickup,  // warning only
};

std::string_view to_string(PlanViolationCode code);

struct PlanViolation {
  PlanViolationCode code;
  std::string vehicle;
  std::string location;
  std::string detail;
};

struct FeasibilityReport {
  std::vector<PlanViolation> violations;
  std::vector<PlanViolation> warnings;

  bool feasible() const { return violations.empty(); }
  bool has(PlanViolationCode code) const;
};

class UnknownIdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateInstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoUsedVehiclesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replays every used route (loads and per-vehicle clocks) and reports each
/// breached condition. Throws UnknownIdError for ids absent from `inst`.
FeasibilityReport check_feasibility(const Instance& inst, const Plan& plan);

/// evacuated_total over the persons living at R and H locations.
double evacuation_percentage(const Instance& inst, const Plan& plan);

/// Miles driven per used vehicle.
double average_travel_distance(const Instance& inst, const Plan& plan);

/// Id-based plan with timestamps replayed from the index form.
Plan to_plan(const Instance& inst, const PlanChoice& choice);

/// Index form, one entry per owner in instance order; vehicles without a
/// route come back unused. Throws UnknownIdError.
PlanChoice to_choice(const Instance& inst, const Plan& plan);

/// Same routes with timestamps and evacuated_total recomputed.
Plan restamp(const Instance& inst, const Plan& plan);

Plan parse_plan(std::string_view text);  // throws SchemaError
std::string serialize_plan(const Plan& plan);

}  // namespace evacshare
