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
#include <string>
#include <vector>

#include "evacshare/exact.hpp"
#include "evacshare/heuristic.hpp"
#include "evacshare/instance.hpp"

namespace evacshare {

struct GenConfig {
  int n_households = 14;
  int n_gathering = 8;
  double r_ratio = 0.5;
  int household_size = 3;
  std::vector<int> capacities = {5, 7};
  double area = 4.0;   // square side, miles
  double speed = 0.5;  // miles per minute
  double t_p = 1.0;
  double t_max = 15.0;
  std::uint64_t seed = 1;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// round(r_ratio * n_households), halves rounded up.
int owner_count(const GenConfig& config);

/// Uniform points in the square; households first, gathering places last.
/// Owners are the first owner_count() households and are listed first, so
/// ids read r1.., h1.., s1... Distances are Euclidean times a circuity factor
/// of 1.3. Throws ConfigError.
Instance generate_instance(const GenConfig& config);

struct SweepRow {
  double r_ratio = 0.0;
  double t_max = 0.0;
  std::string method;
  std::optional<int> objective;
  std::optional<double> ep;
  std::optional<double> atd;  // empty when no vehicle is used
  std::string status;
  double seconds = 0.0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

struct SweepConfig {
  GenConfig base;  // r_ratio and t_max are overwritten per cell
  std::vector<double> ratios = {0.3, 0.4, 0.5, 0.6, 0.7};
  std::vector<double> t_maxes = {5, 7, 9, 11, 13, 15};
  std::vector<std::string> methods = {"heuristic"};
  ExactConfig exact;               // `workers` is ignored inside cells
  LocalSearchConfig local_search;
  int workers = 1;                 // cells solved concurrently
};

/// Method names accepted by the CLI and the sweep.
const std::vector<std::string>& method_names();

/// Solves one instance with the named method. Throws std::invalid_argument
/// for an unknown name; solver errors propagate.
struct MethodOutcome {
  Plan plan;
  std::string status;
  int best_bound = 0;
  std::int64_t nodes = 0;
};
MethodOutcome run_method(const Instance& inst, const std::string& method, const ExactConfig& exact,
                         const LocalSearchConfig& local_search);

/// One row per (ratio, t_max, method) in that nesting order. A failing cell
/// records "error: ..." in its status and leaves the numeric fields empty.
SweepReport run_sweep(const SweepConfig& config);

class EmptyReport : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string report_csv(const SweepReport& report);
std::string report_svg(const SweepReport& report);

/// Reads back the output of report_csv.
SweepReport parse_report_csv(const std::string& text);

}  // namespace evacshare
