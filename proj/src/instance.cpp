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

#include "evacshare/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"

namespace evacshare {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(LocationKind kind) {
  switch (kind) {
    case LocationKind::kVehicleOwner: return "vehicle_owner";
    case LocationKind::kCarless: return "carless";
    case LocationKind::kGathering: return "gathering";
  }
  return "?";
}

std::optional<LocationKind> parse_location_kind(std::string_view text) {
  if (text == "vehicle_owner") return LocationKind::kVehicleOwner;
  if (text == "carless") return LocationKind::kCarless;
  if (text == "gathering") return LocationKind::kGathering;
  return std::nullopt;
}

int Instance::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < locations.size(); ++i) {
    if (locations[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

double Instance::distance(int i, int j) const {
  if (travel_distance) return (*travel_distance)[i][j];
  return travel_time[i][j] * kDefaultSpeedMilesPerMinute;
}

int Instance::total_demand() const {
  int total = 0;
  for (const auto& loc : locations) {
    if (loc.kind != LocationKind::kGathering) total += loc.demand;
  }
  return total;
}

std::vector<int> Instance::indices_of(LocationKind kind) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < locations.size(); ++i) {
    if (locations[i].kind == kind) out.push_back(static_cast<int>(i));
  }
  return out;
}

BigMValues compute_big_m(const Instance& inst) {
  double max_cap = 0.0;
  for (const auto& loc : inst.locations) {
    if (loc.kind == LocationKind::kVehicleOwner && loc.capacity) {
      max_cap = std::max(max_cap, static_cast<double>(*loc.capacity));
    }
  }
  double max_time = 0.0;
  for (const auto& row : inst.travel_time) {
    for (double t : row) max_time = std::max(max_time, t);
  }
  BigMValues m;
  m.m_load = std::max(1.0, max_cap);
  m.m_time = std::max(1.0, inst.t_max + max_time + inst.t_p * max_cap);
  return m;
}

std::string_view to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::kDuplicateId: return "DuplicateId";
    case ViolationCode::kEmptyId: return "EmptyId";
    case ViolationCode::kAmbiguousSanitizedId: return "AmbiguousSanitizedId";
    case ViolationCode::kOwnerMissingCapacity: return "OwnerMissingCapacity";
    case ViolationCode::kCapacityOnNonOwner: return "CapacityOnNonOwner";
    case ViolationCode::kNonPositiveCapacity: return "NonPositiveCapacity";
    case ViolationCode::kCapacityBelowDemand: return "CapacityBelowDemand";
    case ViolationCode::kNegativeDemand: return "NegativeDemand";
    case ViolationCode::kGatheringWithDemand: return "GatheringWithDemand";
    case ViolationCode::kNoGatheringPlace: return "NoGatheringPlace";
    case ViolationCode::kMatrixNotSquare: return "MatrixNotSquare";
    case ViolationCode::kNonzeroDiagonal: return "NonzeroDiagonal";
    case ViolationCode::kNegativeEntry: return "NegativeEntry";
    case ViolationCode::kNonFiniteEntry: return "NonFiniteEntry";
    case ViolationCode::kNegativeBoardingTime: return "NegativeBoardingTime";
    case ViolationCode::kNegativeDeadline: return "NegativeDeadline";
  }
  return "?";
}

std::string sanitize_id(std::string_view id) {
  std::string out(id);
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_';
    if (!ok) c = '_';
  }
  return out;
}

namespace {

void check_matrix(const Instance& inst, const Matrix& m, const std::string& name,
                  std::vector<InstanceViolation>& out) {
  const std::size_t n = inst.locations.size();
  bool square = m.size() == n;
  for (const auto& row : m) square = square && row.size() == n;
  if (!square) {
    out.push_back({ViolationCode::kMatrixNotSquare, name,
                   name + " must be " + std::to_string(n) + "x" + std::to_string(n)});
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m[i][j];
      const std::string& from = inst.locations[i].id;
      const std::string& to = inst.locations[j].id;
      if (!std::isfinite(v)) {
        out.push_back({ViolationCode::kNonFiniteEntry, from, name + "[" + from + "][" + to + "] is not finite"});
      } else if (v < 0.0) {
        out.push_back({ViolationCode::kNegativeEntry, from, name + "[" + from + "][" + to + "] < 0"});
      } else if (i == j && v != 0.0) {
        out.push_back({ViolationCode::kNonzeroDiagonal, from, name + "[" + from + "][" + from + "] != 0"});
      }
    }
  }
}

}  // namespace

std::vector<InstanceViolation> validate(const Instance& inst) {
  std::vector<InstanceViolation> out;
  std::set<std::string> seen;
  std::map<std::string, std::string> sanitized;
  bool any_gathering = false;

  for (const auto& loc : inst.locations) {
    if (loc.id.empty()) {
      out.push_back({ViolationCode::kEmptyId, loc.id, "empty location id"});
    } else if (!seen.insert(loc.id).second) {
      out.push_back({ViolationCode::kDuplicateId, loc.id, "duplicate id"});
    } else {
      auto [it, inserted] = sanitized.emplace(sanitize_id(loc.id), loc.id);
      if (!inserted) {
        out.push_back({ViolationCode::kAmbiguousSanitizedId, loc.id,
                       "sanitizes to the same name as " + it->second});
      }
    }
    if (loc.demand < 0) {
      out.push_back({ViolationCode::kNegativeDemand, loc.id, "negative demand"});
    }
    switch (loc.kind) {
      case LocationKind::kVehicleOwner:
        if (!loc.capacity) {
          out.push_back({ViolationCode::kOwnerMissingCapacity, loc.id, "vehicle owner missing capacity"});
        } else if (*loc.capacity <= 0) {
          out.push_back({ViolationCode::kNonPositiveCapacity, loc.id, "capacity must be positive"});
        } else if (*loc.capacity < loc.demand) {
          out.push_back({ViolationCode::kCapacityBelowDemand, loc.id,
                         "capacity < own demand (" + std::to_string(*loc.capacity) + " < " +
                             std::to_string(loc.demand) + ")"});
        }
        break;
      case LocationKind::kCarless:
        if (loc.capacity) {
          out.push_back({ViolationCode::kCapacityOnNonOwner, loc.id, "capacity given for a carless household"});
        }
        break;
      case LocationKind::kGathering:
        any_gathering = true;
        if (loc.capacity) {
          out.push_back({ViolationCode::kCapacityOnNonOwner, loc.id, "capacity given for a gathering place"});
        }
        if (loc.demand != 0) {
          out.push_back({ViolationCode::kGatheringWithDemand, loc.id, "gathering place with nonzero demand"});
        }
        break;
    }
  }
  if (!any_gathering) {
    out.push_back({ViolationCode::kNoGatheringPlace, "", "no gathering place"});
  }
  check_matrix(inst, inst.travel_time, "travel_time", out);
  if (inst.travel_distance) check_matrix(inst, *inst.travel_distance, "travel_distance", out);
  if (!(inst.t_p >= 0.0) || !std::isfinite(inst.t_p)) {
    out.push_back({ViolationCode::kNegativeBoardingTime, "t_p", "t_p must be a finite non-negative number"});
  }
  if (!(inst.t_max >= 0.0) || !std::isfinite(inst.t_max)) {
    out.push_back({ViolationCode::kNegativeDeadline, "t_max", "t_max must be a finite non-negative number"});
  }
  return out;
}

namespace {

std::string summarize(const std::vector<InstanceViolation>& violations) {
  std::string msg = "invalid instance:";
  for (const auto& v : violations) {
    msg += " [";
    msg += to_string(v.code);
    if (!v.id.empty()) msg += " " + v.id;
    msg += ": " + v.detail + "]";
  }
  return msg;
}

void require_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                  std::initializer_list<std::string_view> required, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw SchemaError(where + ": unknown key '" + key + "'");
    }
  }
  for (auto key : required) {
    if (!obj.contains(std::string(key))) {
      throw SchemaError(where + ": missing key '" + std::string(key) + "'");
    }
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where + ": expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 1e9) return static_cast<int>(d);
  }
  throw SchemaError(where + ": expected an integer");
}

Matrix matrix(const json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array of rows");
  Matrix m;
  m.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& row = v[i];
    const std::string row_where = where + "[" + std::to_string(i) + "]";
    if (!row.is_array()) throw SchemaError(row_where + ": expected an array");
    std::vector<double> r;
    r.reserve(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      r.push_back(number(row[j], row_where + "[" + std::to_string(j) + "]"));
    }
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

ValidationError::ValidationError(std::vector<InstanceViolation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

Instance parse_instance_unchecked(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  require_keys(doc, {"name", "t_p", "t_max", "locations", "travel_time", "travel_distance"},
               {"name", "t_p", "t_max", "locations", "travel_time"}, "instance");

  Instance inst;
  if (!doc["name"].is_string()) throw SchemaError("instance.name: expected a string");
  inst.name = doc["name"].get<std::string>();
  inst.t_p = number(doc["t_p"], "instance.t_p");
  inst.t_max = number(doc["t_max"], "instance.t_max");

  const auto& locs = doc["locations"];
  if (!locs.is_array()) throw SchemaError("instance.locations: expected an array");
  for (std::size_t i = 0; i < locs.size(); ++i) {
    const std::string where = "locations[" + std::to_string(i) + "]";
    const auto& l = locs[i];
    require_keys(l, {"id", "kind", "demand", "capacity", "coord"}, {"id", "kind", "demand"}, where);
    Location loc;
    if (!l["id"].is_string()) throw SchemaError(where + ".id: expected a string");
    loc.id = l["id"].get<std::string>();
    if (!l["kind"].is_string()) throw SchemaError(where + ".kind: expected a string");
    auto kind = parse_location_kind(l["kind"].get<std::string>());
    if (!kind) throw SchemaError(where + ".kind: unknown kind '" + l["kind"].get<std::string>() + "'");
    loc.kind = *kind;
    loc.demand = integer(l["demand"], where + ".demand");
    if (l.contains("capacity")) loc.capacity = integer(l["capacity"], where + ".capacity");
    if (l.contains("coord")) {
      const auto& c = l["coord"];
      if (!c.is_array() || c.size() != 2) throw SchemaError(where + ".coord: expected [lat, lon]");
      loc.coord = std::array<double, 2>{number(c[0], where + ".coord"), number(c[1], where + ".coord")};
    }
    inst.locations.push_back(std::move(loc));
  }
  inst.travel_time = matrix(doc["travel_time"], "travel_time");
  if (doc.contains("travel_distance")) inst.travel_distance = matrix(doc["travel_distance"], "travel_distance");
  return inst;
}

Instance parse_instance(std::string_view text) {
  Instance inst = parse_instance_unchecked(text);
  auto violations = validate(inst);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  ordered_json doc;
  doc["name"] = inst.name;
  doc["t_p"] = inst.t_p;
  doc["t_max"] = inst.t_max;
  ordered_json locs = ordered_json::array();
  for (const auto& loc : inst.locations) {
    ordered_json l;
    l["id"] = loc.id;
    l["kind"] = std::string(to_string(loc.kind));
    l["demand"] = loc.demand;
    if (loc.capacity) l["capacity"] = *loc.capacity;
    if (loc.coord) l["coord"] = {(*loc.coord)[0], (*loc.coord)[1]};
    locs.push_back(std::move(l));
  }
  doc["locations"] = std::move(locs);
  doc["travel_time"] = inst.travel_time;
  if (inst.travel_distance) doc["travel_distance"] = *inst.travel_distance;
  return doc.dump(2) + "\n";
}

}  // namespace evacshare
