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

#include "evacshare/mip.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace evacshare {

std::string_view to_string(MipMode mode) {
  return mode == MipMode::kVerbatim ? "verbatim" : "strengthened";
}

std::optional<MipMode> parse_mip_mode(std::string_view text) {
  if (text == "verbatim") return MipMode::kVerbatim;
  if (text == "strengthened") return MipMode::kStrengthened;
  return std::nullopt;
}

int MipModel::find(std::string_view var_name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == var_name) return static_cast<int>(i);
  }
  return -1;
}

std::map<std::string, int> MipModel::family_counts() const {
  std::map<std::string, int> counts;
  for (const auto& c : constraints) ++counts[c.family];
  return counts;
}

int MipModel::count_variables(char family) const {
  return static_cast<int>(std::count_if(variables.begin(), variables.end(),
                                        [family](const MipVariable& v) { return v.name.front() == family; }));
}

namespace {

class ModelBuilder {
 public:
  ModelBuilder(const Instance& inst, MipMode mode)
      : inst_(inst), mode_(mode), m_(compute_big_m(inst)), n_(static_cast<int>(inst.size())) {
    for (int i = 0; i < n_; ++i) {
      ids_.push_back(sanitize_id(inst.locations[i].id));
      switch (inst.locations[i].kind) {
        case LocationKind::kVehicleOwner: R_.push_back(i); RH_.push_back(i); break;
        case LocationKind::kCarless: H_.push_back(i); RH_.push_back(i); HS_.push_back(i); break;
        case LocationKind::kGathering: S_.push_back(i); HS_.push_back(i); break;
      }
    }
    declare_candidates();
  }

  MipModel build() {
    objective();
    c2();
    c3();
    c4();
    if (mode_ == MipMode::kStrengthened) c4_per_vehicle();
    c5();
    c6_c7();
    c8_c10(true);
    c9();
    c8_c10(false);
    c11();
    c12();
    c13();
    c14();
    return compact();
  }

 private:
  bool is_r(int i) const { return inst_.locations[i].kind == LocationKind::kVehicleOwner; }
  bool is_s(int i) const { return inst_.locations[i].kind == LocationKind::kGathering; }

  // Fixings: self loops, departures from another vehicle's start, and in
  // strengthened mode departures from S and arrivals into R.
  bool x_fixed(int i, int j, int k) const {
    if (i == j) return true;
    if (is_r(i) && i != k) return true;
    if (mode_ == MipMode::kStrengthened && (is_s(i) || is_r(j))) return true;
    return false;
  }
  bool yu_fixed(int i, int k) const { return is_r(i) && i != k; }

  void declare_candidates() {
    auto add = [&](std::string name, VarKind kind, double ub) {
      index_.emplace(name, static_cast<int>(vars_.size()));
      vars_.push_back({std::move(name), kind, 0.0, ub});
    };
    const double inf = std::numeric_limits<double>::infinity();
    for (int k : R_)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          if (!x_fixed(i, j, k)) add(xn(i, j, k), VarKind::kBinary, 1.0);
    for (int k : R_)
      for (int i = 0; i < n_; ++i)
        if (!yu_fixed(i, k)) add(yn(i, k), VarKind::kInteger, inf);
    for (int k : R_)
      for (int i = 0; i < n_; ++i)
        if (!yu_fixed(i, k)) add(un(i, k), VarKind::kContinuous, inf);
    for (int i = 0; i < n_; ++i) add(vn(i), VarKind::kContinuous, inf);
    for (int i = 0; i < n_; ++i) add(zn(i), VarKind::kBinary, 1.0);
  }

  std::string xn(int i, int j, int k) const { return "x_" + ids_[i] + "_" + ids_[j] + "_" + ids_[k]; }
  std::string yn(int i, int k) const { return "y_" + ids_[i] + "_" + ids_[k]; }
  std::string un(int i, int k) const { return "u_" + ids_[i] + "_" + ids_[k]; }
  std::string vn(int i) const { return "v_" + ids_[i]; }
  std::string zn(int i) const { return "z_" + ids_[i]; }

  // Row under construction; terms on fixed variables are dropped.
  struct Row {
    std::vector<Term> terms;
    void add(int var, double coef) {
      if (var < 0 || coef == 0.0) return;
      for (auto& t : terms) {
        if (t.var == var) {
          t.coef += coef;
          return;
        }
      }
      terms.push_back({var, coef});
    }
  };

  int var(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
  }
  int x(int i, int j, int k) const { return x_fixed(i, j, k) ? -1 : var(xn(i, j, k)); }
  int y(int i, int k) const { return yu_fixed(i, k) ? -1 : var(yn(i, k)); }
  int u(int i, int k) const { return yu_fixed(i, k) ? -1 : var(un(i, k)); }
  int v(int i) const { return var(vn(i)); }
  int z(int i) const { return var(zn(i)); }

  void emit(std::string name, std::string family, Row row, Sense sense, double rhs) {
    std::erase_if(row.terms, [](const Term& t) { return t.coef == 0.0; });
    if (row.terms.empty()) return;
    rows_.push_back({std::move(name), std::move(family), std::move(row.terms), sense, rhs});
  }

  void objective() {
    Row row;
    for (int k : R_)
      for (int i : RH_) row.add(y(i, k), 1.0);
    objective_ = std::move(row.terms);
  }

  void c2() {
    for (int i : R_) {
      Row row;
      for (int j = 0; j < n_; ++j) row.add(x(i, j, i), 1.0);
      row.add(z(i), -1.0);
      emit("c2_depart_" + ids_[i], "c2", std::move(row), Sense::kEqual, 0.0);
    }
  }

  void c3() {
    for (int j : H_)
      for (int k : R_) {
        Row row;
        for (int i : RH_) row.add(x(i, j, k), 1.0);
        for (int i : HS_) row.add(x(j, i, k), -1.0);
        emit("c3_flow_" + ids_[j] + "_" + ids_[k], "c3", std::move(row), Sense::kEqual, 0.0);
      }
  }

  void c4() {
    Row row;
    for (int k : R_)
      for (int i : RH_)
        for (int j : S_) row.add(x(i, j, k), 1.0);
    for (int i : R_) row.add(z(i), -1.0);
    emit("c4_arrive", "c4", std::move(row), Sense::kEqual, 0.0);
  }

  void c4_per_vehicle() {
    for (int k : R_) {
      Row row;
      for (int i = 0; i < n_; ++i)
        for (int j : S_) row.add(x(i, j, k), 1.0);
      row.add(z(k), -1.0);
      emit("c4s_arrive_" + ids_[k], "c4s", std::move(row), Sense::kEqual, 0.0);
    }
  }

  void c5() {
    for (int k : R_) {
      Row row;
      row.add(y(k, k), 1.0);
      row.add(z(k), -static_cast<double>(inst_.locations[k].demand));
      emit("c5_own_" + ids_[k], "c5", std::move(row), Sense::kEqual, 0.0);
    }
  }

  void c6_c7() {
    for (int i : H_) {
      Row lb;
      for (int k : R_) lb.add(y(i, k), 1.0);
      lb.add(z(i), -1.0);
      emit("c6_pick_lb_" + ids_[i], "c6", std::move(lb), Sense::kGreaterEqual, 0.0);
    }
    for (int i : H_) {
      Row ub;
      for (int k : R_) ub.add(y(i, k), 1.0);
      ub.add(z(i), -static_cast<double>(inst_.locations[i].demand));
      emit("c7_pick_ub_" + ids_[i], "c7", std::move(ub), Sense::kLessEqual, 0.0);
    }
  }

  // (8) links pickups, (10) links loads, to an inbound arc of vehicle k.
  void c8_c10(bool pickups) {
    for (int j : H_)
      for (int k : R_) {
        Row row;
        row.add(pickups ? y(j, k) : u(j, k), 1.0);
        for (int i : RH_) row.add(x(i, j, k), -m_.m_load);
        if (pickups) {
          emit("c8_y_link_" + ids_[j] + "_" + ids_[k], "c8", std::move(row), Sense::kLessEqual, 0.0);
        } else {
          emit("c10_u_link_" + ids_[j] + "_" + ids_[k], "c10", std::move(row), Sense::kLessEqual, 0.0);
        }
      }
  }

  void c9() {
    for (int k : R_) {
      Row row;
      row.add(u(k, k), 1.0);
      row.add(y(k, k), -1.0);
      emit("c9_u_start_" + ids_[k], "c9", std::move(row), Sense::kEqual, 0.0);
    }
  }

  // Big-M rows whose guarding arc is fixed to zero are implied and skipped.
  void c11() {
    for (int i : RH_)
      for (int j : H_)
        for (int k : R_) {
          const int arc = x(i, j, k);
          if (arc < 0) continue;
          Row row;
          row.add(u(j, k), 1.0);
          row.add(u(i, k), -1.0);
          row.add(y(j, k), -1.0);
          row.add(arc, -m_.m_load);
          emit("c11_u_prop_" + ids_[i] + "_" + ids_[j] + "_" + ids_[k], "c11", std::move(row),
               Sense::kGreaterEqual, -m_.m_load);
        }
  }

  void c12() {
    for (int i : RH_)
      for (int j : RH_)
        for (int k : R_) {
          const int arc = x(i, j, k);
          if (arc < 0) continue;
          Row row;
          row.add(v(j), 1.0);
          row.add(v(i), -1.0);
          row.add(y(j, k), -inst_.t_p);
          row.add(arc, -m_.m_time);
          emit("c12_time_" + ids_[i] + "_" + ids_[j] + "_" + ids_[k], "c12", std::move(row), Sense::kGreaterEqual,
               inst_.time(i, j) - m_.m_time);
        }
  }

  void c13() {
    for (int i : RH_)
      for (int j : S_)
        for (int k : R_) {
          const int arc = x(i, j, k);
          if (arc < 0) continue;
          Row row;
          row.add(v(i), 1.0);
          row.add(arc, inst_.time(i, j));
          emit("c13_deadline_" + ids_[i] + "_" + ids_[j] + "_" + ids_[k], "c13", std::move(row), Sense::kLessEqual,
               inst_.t_max);
        }
  }

  void c14() {
    for (int i : RH_)
      for (int k : R_) {
        Row row;
        row.add(u(i, k), 1.0);
        emit("c14_cap_" + ids_[i] + "_" + ids_[k], "c14", std::move(row), Sense::kLessEqual,
             static_cast<double>(*inst_.locations[k].capacity));
      }
  }

  MipModel compact() {
    std::vector<char> referenced(vars_.size(), 0);
    for (const auto& t : objective_) referenced[t.var] = 1;
    for (const auto& r : rows_)
      for (const auto& t : r.terms) referenced[t.var] = 1;
    std::vector<int> remap(vars_.size(), -1);
    MipModel model;
    model.name = inst_.name;
    model.mode = mode_;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (!referenced[i]) continue;
      remap[i] = static_cast<int>(model.variables.size());
      model.variables.push_back(vars_[i]);
    }
    for (auto& t : objective_) t.var = remap[t.var];
    for (auto& r : rows_)
      for (auto& t : r.terms) t.var = remap[t.var];
    model.objective = std::move(objective_);
    model.constraints = std::move(rows_);
    return model;
  }

  const Instance& inst_;
  MipMode mode_;
  BigMValues m_;
  int n_;
  std::vector<std::string> ids_;
  std::vector<int> R_, H_, S_, RH_, HS_;
  std::vector<MipVariable> vars_;
  std::unordered_map<std::string, int> index_;
  std::vector<MipConstraint> rows_;
  std::vector<Term> objective_;
};

}  // namespace

MipModel build_model(const Instance& inst, MipMode mode) { return ModelBuilder(inst, mode).build(); }

double objective_value(const MipModel& model, const std::vector<double>& values) {
  double total = 0.0;
  for (const auto& t : model.objective) total += t.coef * values.at(t.var);
  return total;
}

std::vector<std::string> violated_rows(const MipModel& model, const std::vector<double>& values, double tol) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < model.variables.size(); ++i) {
    const auto& var = model.variables[i];
    const double val = values.at(i);
    if (val < var.lower - tol || val > var.upper + tol) out.push_back(var.name + " (bounds)");
    if (var.kind != VarKind::kContinuous && std::abs(val - std::round(val)) > tol) {
      out.push_back(var.name + " (integrality)");
    }
  }
  for (const auto& row : model.constraints) {
    double lhs = 0.0;
    for (const auto& t : row.terms) lhs += t.coef * values.at(t.var);
    bool ok = true;
    switch (row.sense) {
      case Sense::kLessEqual: ok = lhs <= row.rhs + tol; break;
      case Sense::kGreaterEqual: ok = lhs >= row.rhs - tol; break;
      case Sense::kEqual: ok = std::abs(lhs - row.rhs) <= tol; break;
    }
    if (!ok) out.push_back(row.name);
  }
  return out;
}

std::vector<double> plan_assignment(const Instance& inst, const MipModel& model, const Plan& plan) {
  std::vector<double> values(model.variables.size(), 0.0);
  auto set = [&](const std::string& name, double value) {
    const int idx = model.find(name);
    if (idx < 0) {
      if (value != 0.0) throw std::invalid_argument("plan uses eliminated variable " + name);
      return;
    }
    values[idx] = value;
  };
  auto sid = [&](const std::string& id) { return sanitize_id(id); };

  std::map<std::string, int> picked;
  for (const auto& route : plan.routes) {
    if (!route.used) continue;
    const int k = inst.index_of(route.vehicle);
    if (k < 0) throw UnknownIdError("unknown vehicle " + route.vehicle);
    const std::string kid = sid(route.vehicle);
    const int own = inst.locations[k].demand;
    set("z_" + kid, 1.0);
    set("y_" + kid + "_" + kid, own);
    set("u_" + kid + "_" + kid, own);
    set("v_" + kid, 0.0);
    std::string at = kid;
    int load = own;
    for (const auto& stop : route.stops) {
      const std::string hid = sid(stop.location);
      set("x_" + at + "_" + hid + "_" + kid, 1.0);
      load += stop.pickup;
      set("y_" + hid + "_" + kid, stop.pickup);
      set("u_" + hid + "_" + kid, load);
      set("v_" + hid, stop.depart_time);
      picked[hid] += stop.pickup;
      at = hid;
    }
    if (route.destination) set("x_" + at + "_" + sid(*route.destination) + "_" + kid, 1.0);
  }
  for (const auto& [hid, amount] : picked) {
    if (amount > 0) set("z_" + hid, 1.0);
  }
  return values;
}

}  // namespace evacshare
