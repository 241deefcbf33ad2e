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

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evacshare {

// Miles per minute used when an instance carries no distance matrix.
inline constexpr double kDefaultSpeedMilesPerMinute = 0.5;

enum class LocationKind { kVehicleOwner, kCarless, kGathering };

std::string_view to_string(LocationKind kind);
std::optional<LocationKind> parse_location_kind(std::string_view text);

struct Location {
  std::string id;
  LocationKind kind = LocationKind::kCarless;
  int demand = 0;                           // persons
  std::optional<int> capacity;              // seats, owners only
  std::optional<std::array<double, 2>> coord;  // metadata, never used

  bool operator==(const Location&) const = default;
};

using Matrix = std::vector<std::vector<double>>;

/// A ridesharing evacuation instance. Times are minutes, distances miles.
/// Matrix rows and columns follow the order of `locations`.
struct Instance {
  std::string name;
  std::vector<Location> locations;
  Matrix travel_time;
  std::optional<Matrix> travel_distance;
  double t_p = 0.0;    // boarding minutes per person
  double t_max = 0.0;  // deadline for reaching a gathering place

  bool operator==(const Instance&) const = default;

  std::size_t size() const { return locations.size(); }

  std::vector<int> owners() const { return indices_of(LocationKind::kVehicleOwner); }
  std::vector<int> carless() const { return indices_of(LocationKind::kCarless); }
  std::vector<int> gathering() const { return indices_of(LocationKind::kGathering); }

  /// Index of the location with this id, or -1.
  int index_of(std::string_view id) const;

  double time(int i, int j) const { return travel_time[i][j]; }

  /// Given distance, or travel time at the default speed when absent.
  double distance(int i, int j) const;

  /// Persons living at R and H locations.
  int total_demand() const;

 private:
  std::vector<int> indices_of(LocationKind kind) const;
};

struct BigMValues {
  double m_load = 0.0;  // persons; load-linking and load-propagation rows
  double m_time = 0.0;  // minutes; clock-propagation rows

  bool operator==(const BigMValues&) const = default;
};

/// m_load = max capacity, m_time = t_max + max travel time + t_p * max
/// capacity, each floored at 1 so the constant stays strictly positive.
BigMValues compute_big_m(const Instance& inst);

enum class ViolationCode {
  kDuplicateId,
  kEmptyId,
  kAmbiguousSanitizedId,
  kOwnerMissingCapacity,
  kCapacityOnNonOwner,
  kNonPositiveCapacity,
  kCapacityBelowDemand,
  kNegativeDemand,
  kGatheringWithDemand,
  kNoGatheringPlace,
  kMatrixNotSquare,
  kNonzeroDiagonal,
  kNegativeEntry,
  kNonFiniteEntry,
  kNegativeBoardingTime,
  kNegativeDeadline,
};

std::string_view to_string(ViolationCode code);

struct InstanceViolation {
  ViolationCode code;
  std::string id;  // offending location id, or matrix name
  std::string detail;

  bool operator==(const InstanceViolation&) const = default;
};

/// Every broken invariant; empty iff the instance is valid.
std::vector<InstanceViolation> validate(const Instance& inst);

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<InstanceViolation> violations);
  const std::vector<InstanceViolation>& violations() const { return violations_; }

 private:
  std::vector<InstanceViolation> violations_;
};

/// Parses and validates an instance JSON document.
/// Throws SchemaError or ValidationError.
Instance parse_instance(std::string_view text);

/// Parses without validating; schema errors still throw.
Instance parse_instance_unchecked(std::string_view text);

/// Canonical JSON text; deterministic for a given value.
std::string serialize_instance(const Instance& inst);

/// Location id reduced to [A-Za-z0-9_] for use in LP names.
std::string sanitize_id(std::string_view id);

}  // namespace evacshare
