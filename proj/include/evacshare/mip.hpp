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

#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "evacshare/instance.hpp"
#include "evacshare/plan.hpp"

namespace evacshare {

enum class VarKind { kBinary, kInteger, kContinuous };

struct MipVariable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

struct Term {
  int var = -1;
  double coef = 0.0;
};

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct MipConstraint {
  std::string name;
  std::string family;  // "c2" .. "c14", or "c4s" for the per-vehicle arrival rows
  std::vector<Term> terms;
  Sense sense = Sense::kEqual;
  double rhs = 0.0;
};

enum class MipMode { kVerbatim, kStrengthened };

std::string_view to_string(MipMode mode);
std::optional<MipMode> parse_mip_mode(std::string_view text);

/// Maximization model over x (arc), y (pickup), u (load), v (clock) and
/// z (activation) variables. Variables fixed to zero are not emitted, and
/// only variables referenced by the objective or a row are declared.
struct MipModel {
  std::string name;
  MipMode mode = MipMode::kStrengthened;
  std::vector<MipVariable> variables;
  std::vector<MipConstraint> constraints;
  std::vector<Term> objective;

  int find(std::string_view var_name) const;  // -1 if absent
  std::map<std::string, int> family_counts() const;
  int count_variables(char family) const;     // by leading letter
};

MipModel build_model(const Instance& inst, MipMode mode = MipMode::kStrengthened);

/// Rows violated by an assignment (one value per model variable), checked
/// with an absolute tolerance. Bounds and integrality are checked too and
/// reported under the variable's name.
std::vector<std::string> violated_rows(const MipModel& model, const std::vector<double>& values,
                                       double tol = 1e-6);

double objective_value(const MipModel& model, const std::vector<double>& values);

/// Maps a plan onto model variables using per-vehicle clocks. Exact only
/// when no carless household is visited by more than one vehicle, since the
/// model shares one clock per location.
std::vector<double> plan_assignment(const Instance& inst, const MipModel& model, const Plan& plan);

}  // namespace evacshare
