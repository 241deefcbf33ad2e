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

#include "evacshare/plan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "json.hpp"

namespace evacshare {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(PlanViolationCode code) {
  switch (code) {
    case PlanViolationCode::kMissingRoute: return "MissingRoute";
    case PlanViolationCode::kDuplicateRoute: return "DuplicateRoute";
    case PlanViolationCode::kNotAVehicle: return "NotAVehicle";
    case PlanViolationCode::kUnusedRouteNotEmpty: return "UnusedRouteNotEmpty";
    case PlanViolationCode::kMissingDestination: return "MissingDestination";
    case PlanViolationCode::kDestinationNotGathering: return "DestinationNotGathering";
    case PlanViolationCode::kStopNotCarless: return "StopNotCarless";
    case PlanViolationCode::kRevisitedLocation: return "RevisitedLocation";
    case PlanViolationCode::kNegativePickup: return "NegativePickup";
    case PlanViolationCode::kNegativeTime: return "NegativeTime";
    case PlanViolationCode::kCapacityExceeded: return "CapacityExceeded";
    case PlanViolationCode::kDemandExceeded: return "DemandExceeded";
    case PlanViolationCode::kDeadlineViolated: return "DeadlineViolated";
    case PlanViolationCode::kTimestampMismatch: return "TimestampMismatch";
    case PlanViolationCode::kEvacuatedTotalMismatch: return "EvacuatedTotalMismatch";
    case PlanViolationCode::kZeroPickup: return "ZeroPickup";
  }
  return "?";
}

bool FeasibilityReport::has(PlanViolationCode code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [code](const PlanViolation& v) { return v.code == code; });
}

namespace {

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int require_id(const Instance& inst, const std::string& id, const char* what) {
  const int idx = inst.index_of(id);
  if (idx < 0) throw UnknownIdError(std::string("unknown ") + what + " id '" + id + "'");
  return idx;
}

}  // namespace

FeasibilityReport check_feasibility(const Instance& inst, const Plan& plan) {
  // Resolve every id up front so an unknown id never yields a partial report.
  for (const auto& route : plan.routes) {
    require_id(inst, route.vehicle, "vehicle");
    for (const auto& stop : route.stops) require_id(inst, stop.location, "stop");
    if (route.destination) require_id(inst, *route.destination, "destination");
  }

  const Tables tab(inst);
  FeasibilityReport report;
  auto violation = [&](PlanViolationCode code, std::string vehicle, std::string location, std::string detail) {
    report.violations.push_back({code, std::move(vehicle), std::move(location), std::move(detail)});
  };

  std::vector<int> picked(tab.n, 0);
  std::set<int> seen_vehicles;
  int total = 0;

  for (const auto& route : plan.routes) {
    const int k = inst.index_of(route.vehicle);
    if (tab.kind[k] != LocationKind::kVehicleOwner) {
      violation(PlanViolationCode::kNotAVehicle, route.vehicle, "", route.vehicle + " is not a vehicle owner");
      continue;
    }
    if (!seen_vehicles.insert(k).second) {
      violation(PlanViolationCode::kDuplicateRoute, route.vehicle, "", "more than one route for " + route.vehicle);
      continue;
    }
    if (!route.used) {
      if (!route.stops.empty() || route.destination || route.arrival_time) {
        violation(PlanViolationCode::kUnusedRouteNotEmpty, route.vehicle, "",
                  "unused route carries stops, destination or arrival time");
      }
      continue;
    }

    total += tab.demand[k];
    int load = tab.demand[k];
    double clock = 0.0;
    int at = k;
    std::set<int> visited{k};
    for (const auto& stop : route.stops) {
      const int loc = inst.index_of(stop.location);
      if (tab.kind[loc] != LocationKind::kCarless) {
        violation(PlanViolationCode::kStopNotCarless, route.vehicle, stop.location,
                  stop.location + " is not a carless household");
      }
      if (!visited.insert(loc).second) {
        violation(PlanViolationCode::kRevisitedLocation, route.vehicle, stop.location,
                  "route visits " + stop.location + " twice");
      }
      if (stop.pickup < 0) {
        violation(PlanViolationCode::kNegativePickup, route.vehicle, stop.location, "negative pickup");
      } else if (stop.pickup == 0) {
        report.warnings.push_back({PlanViolationCode::kZeroPickup, route.vehicle, stop.location,
                                   "stop boards nobody"});
      }
      if (stop.depart_time < 0.0) {
        violation(PlanViolationCode::kNegativeTime, route.vehicle, stop.location, "negative depart_time");
      }
      clock = advance_clock(clock, tab.t(at, loc), tab.t_p, stop.pickup);
      load += stop.pickup;
      if (load > tab.capacity[k]) {
        violation(PlanViolationCode::kCapacityExceeded, route.vehicle, stop.location,
                  "load " + std::to_string(load) + " > capacity " + std::to_string(tab.capacity[k]));
      }
      if (!(std::abs(stop.depart_time - clock) <= kTimestampTolerance)) {
        violation(PlanViolationCode::kTimestampMismatch, route.vehicle, stop.location,
                  "depart_time " + num(stop.depart_time) + " != " + num(clock));
      }
      total += stop.pickup;
      picked[loc] += stop.pickup;
      at = loc;
    }

    if (!route.destination) {
      violation(PlanViolationCode::kMissingDestination, route.vehicle, "", "used route without destination");
      continue;
    }
    const int dest = inst.index_of(*route.destination);
    if (tab.kind[dest] != LocationKind::kGathering) {
      violation(PlanViolationCode::kDestinationNotGathering, route.vehicle, *route.destination,
                *route.destination + " is not a gathering place");
    }
    const double arrival = clock + tab.t(at, dest);
    if (arrival > tab.t_max) {
      violation(PlanViolationCode::kDeadlineViolated, route.vehicle, *route.destination,
                "arrival " + num(arrival) + " > t_max " + num(tab.t_max));
    }
    if (!route.arrival_time) {
      violation(PlanViolationCode::kTimestampMismatch, route.vehicle, *route.destination, "missing arrival_time");
    } else if (!(std::abs(*route.arrival_time - arrival) <= kTimestampTolerance)) {
      violation(PlanViolationCode::kTimestampMismatch, route.vehicle, *route.destination,
                "arrival_time " + num(*route.arrival_time) + " != " + num(arrival));
    }
  }

  for (int k : tab.owners) {
    if (!seen_vehicles.count(k)) {
      violation(PlanViolationCode::kMissingRoute, inst.locations[k].id, "", "no route for vehicle");
    }
  }
  for (int h : tab.carless) {
    if (picked[h] > tab.demand[h]) {
      violation(PlanViolationCode::kDemandExceeded, "", inst.locations[h].id,
                std::to_string(picked[h]) + " > " + std::to_string(tab.demand[h]));
    }
  }
  if (plan.evacuated_total != total) {
    violation(PlanViolationCode::kEvacuatedTotalMismatch, "", "",
              "evacuated_total " + std::to_string(plan.evacuated_total) + " != " + std::to_string(total));
  }
  return report;
}

double evacuation_percentage(const Instance& inst, const Plan& plan) {
  const int total = inst.total_demand();
  if (total == 0) throw DegenerateInstanceError("instance has no persons to evacuate");
  return static_cast<double>(plan.evacuated_total) / static_cast<double>(total);
}

double average_travel_distance(const Instance& inst, const Plan& plan) {
  double miles = 0.0;
  int used = 0;
  for (const auto& route : plan.routes) {
    if (!route.used) continue;
    ++used;
    int at = require_id(inst, route.vehicle, "vehicle");
    for (const auto& stop : route.stops) {
      const int loc = require_id(inst, stop.location, "stop");
      miles += inst.distance(at, loc);
      at = loc;
    }
    if (route.destination) miles += inst.distance(at, require_id(inst, *route.destination, "destination"));
  }
  if (used == 0) throw NoUsedVehiclesError("no vehicle is used");
  return miles / used;
}

Plan to_plan(const Instance& inst, const PlanChoice& choice) {
  const Tables tab(inst);
  Plan plan;
  for (const auto& rc : choice) {
    Route r;
    r.vehicle = inst.locations[rc.vehicle].id;
    r.used = rc.used;
    if (rc.used) {
      const RouteTimes times = route_times(tab, rc);
      for (std::size_t s = 0; s < rc.stops.size(); ++s) {
        r.stops.push_back({inst.locations[rc.stops[s]].id, rc.pickups[s], times.depart[s]});
      }
      if (rc.destination >= 0) {
        r.destination = inst.locations[rc.destination].id;
        r.arrival_time = times.arrival;
      }
    }
    plan.evacuated_total += route_evacuees(tab, rc);
    plan.routes.push_back(std::move(r));
  }
  return plan;
}

PlanChoice to_choice(const Instance& inst, const Plan& plan) {
  const Tables tab(inst);
  PlanChoice choice = empty_choice(tab);
  for (const auto& route : plan.routes) {
    const int k = require_id(inst, route.vehicle, "vehicle");
    auto it = std::find_if(choice.begin(), choice.end(), [k](const RouteChoice& rc) { return rc.vehicle == k; });
    if (it == choice.end()) throw std::invalid_argument(route.vehicle + " is not a vehicle owner");
    it->used = route.used;
    it->stops.clear();
    it->pickups.clear();
    for (const auto& stop : route.stops) {
      it->stops.push_back(require_id(inst, stop.location, "stop"));
      it->pickups.push_back(stop.pickup);
    }
    it->destination = route.destination ? require_id(inst, *route.destination, "destination") : -1;
  }
  return choice;
}

Plan restamp(const Instance& inst, const Plan& plan) {
  const Tables tab(inst);
  Plan out = plan;
  out.evacuated_total = 0;
  for (auto& route : out.routes) {
    if (!route.used) continue;
    const int k = require_id(inst, route.vehicle, "vehicle");
    out.evacuated_total += tab.demand[k];
    double clock = 0.0;
    int at = k;
    for (auto& stop : route.stops) {
      const int loc = require_id(inst, stop.location, "stop");
      clock = advance_clock(clock, tab.t(at, loc), tab.t_p, stop.pickup);
      stop.depart_time = clock;
      out.evacuated_total += stop.pickup;
      at = loc;
    }
    if (route.destination) {
      route.arrival_time = clock + tab.t(at, require_id(inst, *route.destination, "destination"));
    }
  }
  return out;
}

namespace {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                std::initializer_list<std::string_view> required, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw SchemaError(where + ": unknown key '" + key + "'");
    }
  }
  for (auto key : required) {
    if (!obj.contains(std::string(key))) throw SchemaError(where + ": missing key '" + std::string(key) + "'");
  }
}

int as_int(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) {
    return static_cast<int>(v.get<double>());
  }
  throw SchemaError(where + ": expected an integer");
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where + ": expected a number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw SchemaError(where + ": expected a string");
  return v.get<std::string>();
}

}  // namespace

Plan parse_plan(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  check_keys(doc, {"routes", "evacuated_total"}, {"routes", "evacuated_total"}, "plan");
  Plan plan;
  plan.evacuated_total = as_int(doc["evacuated_total"], "plan.evacuated_total");
  if (!doc["routes"].is_array()) throw SchemaError("plan.routes: expected an array");
  for (std::size_t i = 0; i < doc["routes"].size(); ++i) {
    const auto& r = doc["routes"][i];
    const std::string where = "routes[" + std::to_string(i) + "]";
    check_keys(r, {"vehicle", "used", "stops", "destination", "arrival_time"}, {"vehicle", "used", "stops"}, where);
    Route route;
    route.vehicle = as_string(r["vehicle"], where + ".vehicle");
    if (!r["used"].is_boolean()) throw SchemaError(where + ".used: expected a boolean");
    route.used = r["used"].get<bool>();
    if (!r["stops"].is_array()) throw SchemaError(where + ".stops: expected an array");
    for (std::size_t s = 0; s < r["stops"].size(); ++s) {
      const auto& st = r["stops"][s];
      const std::string sw = where + ".stops[" + std::to_string(s) + "]";
      check_keys(st, {"location", "pickup", "depart_time"}, {"location", "pickup", "depart_time"}, sw);
      route.stops.push_back({as_string(st["location"], sw + ".location"), as_int(st["pickup"], sw + ".pickup"),
                             as_number(st["depart_time"], sw + ".depart_time")});
    }
    if (r.contains("destination")) route.destination = as_string(r["destination"], where + ".destination");
    if (r.contains("arrival_time")) route.arrival_time = as_number(r["arrival_time"], where + ".arrival_time");
    plan.routes.push_back(std::move(route));
  }
  return plan;
}

std::string serialize_plan(const Plan& plan) {
  ordered_json doc;
  ordered_json routes = ordered_json::array();
  for (const auto& route : plan.routes) {
    ordered_json r;
    r["vehicle"] = route.vehicle;
    r["used"] = route.used;
    ordered_json stops = ordered_json::array();
    for (const auto& stop : route.stops) {
      ordered_json s;
      s["location"] = stop.location;
      s["pickup"] = stop.pickup;
      s["depart_time"] = stop.depart_time;
      stops.push_back(std::move(s));
    }
    r["stops"] = std::move(stops);
    if (route.destination) r["destination"] = *route.destination;
    if (route.arrival_time) r["arrival_time"] = *route.arrival_time;
    routes.push_back(std::move(r));
  }
  doc["routes"] = std::move(routes);
  doc["evacuated_total"] = plan.evacuated_total;
  return doc.dump(2) + "\n";
}

}  // namespace evacshare
