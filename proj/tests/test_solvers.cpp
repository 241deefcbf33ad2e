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

#include <gtest/gtest.h>

#include <json.hpp>

#include "evacshare/exact.hpp"
#include "evacshare/experiment.hpp"
#include "evacshare/heuristic.hpp"
#include "evacshare/oracle.hpp"
#include "test_support.hpp"

namespace evacshare {
namespace {

std::map<double, int> t1_ladder() {
  const auto doc = nlohmann::json::parse(
      testing::read_text(std::string(EVACSHARE_TEST_ORACLES) + "/t1_oracle.expected.json"));
  std::map<double, int> out;
  for (const auto& [t, obj] : doc["ladder"].items()) out[std::stod(t)] = obj.get<int>();
  return out;
}

TEST(T1, LadderFromIndependentEnumeration) {
  const auto ladder = t1_ladder();
  ASSERT_EQ(ladder.size(), 4u);
  for (const auto& [t_max, want] : ladder) {
    const Instance inst = testing::t1(t_max);
    EXPECT_EQ(solve_brute_force(inst).evacuated_total, want) << t_max;
    EXPECT_EQ(solve_exact(inst).objective, want) << t_max;
    EXPECT_EQ(greedy_construct(inst).evacuated_total, want) << t_max;
    EXPECT_EQ(local_search(inst, greedy_construct(inst)).evacuated_total, want) << t_max;
  }
}

TEST(T1, PartialPickupWinsAtSix) {
  const Plan p = solve_exact(testing::t1(6)).plan;
  ASSERT_EQ(p.routes.size(), 1u);
  ASSERT_EQ(p.routes[0].stops.size(), 1u);
  EXPECT_EQ(p.routes[0].stops[0].pickup, 2);
  EXPECT_DOUBLE_EQ(*p.routes[0].arrival_time, 6.0);
}

TEST(Oracle, MatchesExactOnSmallInstances) {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const Instance inst = testing::random_small(seed);
    const PlanChoice brute = solve_brute_force_choice(inst);
    const ExactResult exact = solve_exact(inst);
    ASSERT_EQ(exact.status, ExactStatus::kOptimal);
    EXPECT_EQ(exact.choice, brute) << "seed " << seed;
    EXPECT_EQ(exact.best_bound, exact.objective);
  }
}

TEST(Oracle, RefusesLargeInstances) {
  testing::SmallSpec spec{4, 4, 2, 3};
  for (std::uint64_t seed = 1; seed < 50; ++seed) {
    const Instance inst = testing::random_small(seed, spec);
    if (inst.owners().size() <= 3) continue;
    EXPECT_THROW(solve_brute_force(inst), LimitExceededError);
    return;
  }
  FAIL() << "no instance with four vehicles drawn";
}

TEST(Exact, SameAnswerForEveryWorkerCount) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = testing::random_small(seed);
    const ExactResult serial = solve_exact(inst);
    for (int workers : {2, 3, 8}) {
      ExactConfig config;
      config.workers = workers;
      EXPECT_EQ(solve_exact(inst, config).choice, serial.choice) << seed << " w" << workers;
    }
  }
  GenConfig gen;
  gen.r_ratio = 0.5;
  gen.t_max = 9;
  const Instance big = generate_instance(gen);
  const std::string serial = serialize_plan(solve_exact(big).plan);
  ExactConfig config;
  config.workers = 4;
  EXPECT_EQ(serialize_plan(solve_exact(big, config).plan), serial);
}

TEST(Exact, NodeLimitReportsBound) {
  GenConfig gen;
  gen.r_ratio = 0.5;
  gen.t_max = 11;
  const Instance inst = generate_instance(gen);
  ExactConfig config;
  config.node_limit = 50;
  const ExactResult r = solve_exact(inst, config);
  EXPECT_EQ(r.status, ExactStatus::kLimitReached);
  EXPECT_EQ(to_string(r.status), "limit_reached");
  EXPECT_GE(r.best_bound, r.objective);
  EXPECT_TRUE(check_feasibility(inst, r.plan).feasible());
  EXPECT_GE(r.best_bound, solve_exact(inst).objective);
}

TEST(Exact, ObjectiveNeverDropsWithLongerDeadline) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = testing::random_small(seed);
    int last = -1;
    for (double t : {0.0, 2.0, 4.0, 6.0, 8.0, 12.0, 20.0}) {
      inst.t_max = t;
      const int obj = solve_exact(inst).objective;
      EXPECT_GE(obj, last) << seed << " t_max " << t;
      last = obj;
    }
  }
}

TEST(Heuristic, SoundOnSmallInstances) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const Instance inst = testing::random_small(seed);
    const int best = solve_exact(inst).objective;
    const Plan greedy = greedy_construct(inst);
    ASSERT_TRUE(check_feasibility(inst, greedy).feasible()) << seed;
    LocalSearchConfig config;
    config.seed = seed % 4;
    const Plan improved = local_search(inst, greedy, config);
    ASSERT_TRUE(check_feasibility(inst, improved).feasible()) << seed;
    EXPECT_LE(improved.evacuated_total, best) << seed;
    EXPECT_GE(improved.evacuated_total, greedy.evacuated_total) << seed;
  }
}

TEST(Heuristic, ZeroIterationsReturnsStart) {
  const Instance inst = testing::random_small(5);
  const Plan start = greedy_construct(inst);
  LocalSearchConfig config;
  config.max_iterations = 0;
  EXPECT_EQ(local_search(inst, start, config), start);
}

TEST(Heuristic, InfeasibleStartThrows) {
  const Instance inst = testing::t1(6);
  Plan late;
  late.routes = {Route{"r1", true, {{"h1", 3, 5.0}}, "s1", 7.0}};
  late.evacuated_total = 6;
  EXPECT_THROW(local_search(inst, late), InfeasibleStartError);
}

TEST(Heuristic, SingleNeighborhoodsStaySound) {
  for (auto n : {Neighborhood::kRelocatePickup, Neighborhood::kSwapPickups, Neighborhood::kIntraRoute2Opt,
                 Neighborhood::kChangeDestination}) {
    EXPECT_EQ(parse_neighborhood(to_string(n)), n);
    LocalSearchConfig config;
    config.neighborhoods = {n};
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const Instance inst = testing::random_small(seed);
      const Plan out = local_search(inst, greedy_construct(inst), config);
      EXPECT_TRUE(check_feasibility(inst, out).feasible()) << to_string(n) << " " << seed;
    }
  }
  EXPECT_FALSE(parse_neighborhood("3-opt"));
}

TEST(Heuristic, RepeatableOnDefaultInstance) {
  const Instance inst = generate_instance(GenConfig{});
  const Plan a = local_search(inst, greedy_construct(inst));
  const Plan b = local_search(inst, greedy_construct(inst));
  EXPECT_EQ(serialize_plan(a), serialize_plan(b));
  EXPECT_TRUE(check_feasibility(inst, a).feasible());
}

}  // namespace
}  // namespace evacshare
