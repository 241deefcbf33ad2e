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

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evacshare/mip.hpp"

namespace evacshare {

/// CPLEX-style LP text: Maximize / Subject To / Bounds / Generals /
/// Binaries / End. Variables and rows keep model order; numbers use the
/// shortest representation that reads back to the same double.
std::string export_lp(const MipModel& model);

struct LpTerm {
  std::string var;
  double coef = 0.0;
};

struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;
  Sense sense = Sense::kEqual;
  double rhs = 0.0;
};

/// What parse_lp recovers from an LP file.
struct LpModel {
  bool maximize = true;
  std::string objective_name;
  std::vector<LpTerm> objective;
  std::vector<LpRow> rows;
  std::map<std::string, std::pair<double, double>> bounds;
  std::vector<std::string> generals;
  std::vector<std::string> binaries;

  /// Distinct variable names in order of first appearance.
  std::vector<std::string> variable_names() const;
};

class LpParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LpModel parse_lp(std::string_view text);

/// Shortest round-trip decimal form of a double ("inf"/"-inf" for infinities).
std::string format_number(double value);

}  // namespace evacshare
