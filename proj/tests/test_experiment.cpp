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

#include "evacshare/experiment.hpp"
#include "evacshare/plan.hpp"

namespace evacshare {
namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(Generator, DeterministicPerSeed) {
  GenConfig c;
  c.seed = 42;
  EXPECT_EQ(serialize_instance(generate_instance(c)), serialize_instance(generate_instance(c)));
  GenConfig other = c;
  other.seed = 43;
  EXPECT_NE(serialize_instance(generate_instance(c)), serialize_instance(generate_instance(other)));
}

TEST(Generator, OwnerCountsFollowHalfUpRounding) {
  const std::pair<double, int> grid[] = {{0.3, 4}, {0.4, 6}, {0.5, 7}, {0.6, 8}, {0.7, 10}};
  for (const auto& [ratio, owners] : grid) {
    GenConfig c;
    c.r_ratio = ratio;
    const Instance inst = generate_instance(c);
    EXPECT_EQ(static_cast<int>(inst.owners().size()), owners) << ratio;
    EXPECT_EQ(static_cast<int>(inst.carless().size()), 14 - owners) << ratio;
    EXPECT_EQ(inst.gathering().size(), 8u);
  }
  GenConfig half;
  half.n_households = 5;
  half.r_ratio = 0.5;  // 2.5 rounds up
  EXPECT_EQ(owner_count(half), 3);
}

TEST(Generator, Layout) {
  GenConfig c;
  c.r_ratio = 0.3;
  const Instance inst = generate_instance(c);
  EXPECT_TRUE(validate(inst).empty());
  EXPECT_EQ(inst.locations[0].id, "r1");
  EXPECT_EQ(inst.locations[4].id, "h1");
  EXPECT_EQ(inst.locations[14].id, "s1");
  EXPECT_EQ(*inst.locations[0].capacity, 5);
  EXPECT_EQ(*inst.locations[1].capacity, 7);
  for (const auto& loc : inst.locations) {
    if (loc.kind != LocationKind::kGathering) EXPECT_EQ(loc.demand, 3);
  }
  ASSERT_TRUE(inst.travel_distance);
  EXPECT_DOUBLE_EQ(inst.time(0, 5), inst.distance(0, 5) / c.speed);
}

TEST(Generator, RejectsBadConfig) {
  auto bad = [](auto mutate) {
    GenConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(generate_instance(bad([](GenConfig& c) { c.r_ratio = 0.0; })), ConfigError);
  EXPECT_THROW(generate_instance(bad([](GenConfig& c) { c.r_ratio = 1.0; })), ConfigError);
  EXPECT_THROW(generate_instance(bad([](GenConfig& c) { c.n_households = 0; })), ConfigError);
  EXPECT_THROW(generate_instance(bad([](GenConfig& c) { c.n_gathering = 0; })), ConfigError);
  EXPECT_THROW(generate_instance(bad([](GenConfig& c) { c.capacities = {}; })), ConfigError);
  EXPECT_THROW(generate_instance(bad([](GenConfig& c) { c.capacities = {2}; })), ConfigError);
  EXPECT_THROW(generate_instance(bad([](GenConfig& c) { c.speed = 0; })), ConfigError);
}

TEST(Sweep, GridOrderAndCardinality) {
  SweepConfig config;
  const SweepReport report = run_sweep(config);
  ASSERT_EQ(report.rows.size(), 30u);
  EXPECT_EQ(report.rows[0].r_ratio, 0.3);
  EXPECT_EQ(report.rows[0].t_max, 5);
  EXPECT_EQ(report.rows[1].t_max, 7);
  EXPECT_EQ(report.rows[29].r_ratio, 0.7);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.method, "heuristic");
    ASSERT_TRUE(row.ep);
    EXPECT_GE(*row.ep, 0.0);
    EXPECT_LE(*row.ep, 1.0);
  }
  const std::string csv = report_csv(report);
  EXPECT_EQ(count_of(csv, "\r\n"), 31u);
}

TEST(Sweep, FailuresAreRecordedNotThrown) {
  SweepConfig config;
  config.ratios = {0.5};
  config.t_maxes = {9};
  config.methods = {"brute", "greedy"};
  const SweepReport report = run_sweep(config);
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_EQ(report.rows[0].status.rfind("error: ", 0), 0u);
  EXPECT_FALSE(report.rows[0].objective);
  EXPECT_TRUE(report.rows[1].objective);
}

TEST(Sweep, ExactEpIsMonotoneInDeadline) {
  SweepConfig config;
  config.ratios = {0.3, 0.6};
  config.methods = {"exact"};
  config.base.seed = 9;
  const SweepReport report = run_sweep(config);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& prev = report.rows[i - 1];
    const auto& cur = report.rows[i];
    ASSERT_EQ(cur.status, "optimal");
    if (prev.r_ratio == cur.r_ratio) EXPECT_GE(*cur.ep, *prev.ep);
  }
}

TEST(Sweep, SameRowsForEveryWorkerCount) {
  SweepConfig config;
  config.methods = {"greedy", "exact"};
  config.ratios = {0.4, 0.7};
  config.t_maxes = {5, 11};
  SweepReport a = run_sweep(config);
  config.workers = 3;
  SweepReport b = run_sweep(config);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    a.rows[i].seconds = b.rows[i].seconds = 0.0;
    EXPECT_EQ(a.rows[i], b.rows[i]);
  }
}

TEST(Report, CsvRoundTripsAtFullPrecision) {
  SweepReport report;
  report.rows.push_back({0.3, 5, "exact", 16, 16.0 / 42.0, 1.0 / 3.0, "optimal", 0.000123456789});
  report.rows.push_back({0.7, 15, "odd,\"name\"", std::nullopt, std::nullopt, std::nullopt, "error: a, b", 2.5});
  const SweepReport back = parse_report_csv(report_csv(report));
  ASSERT_EQ(back.rows.size(), 2u);
  EXPECT_EQ(back.rows[0], report.rows[0]);
  EXPECT_EQ(back.rows[1], report.rows[1]);
  EXPECT_NE(report_csv(report).find("\"odd,\"\"name\"\"\""), std::string::npos);
}

TEST(Report, SingleCellSvgHasOnePolylinePerChart) {
  SweepReport report;
  report.rows.push_back({0.5, 9, "exact", 39, 39.0 / 42.0, 2.1, "optimal", 0.1});
  const std::string svg = report_svg(report);
  EXPECT_EQ(count_of(svg, "<polyline"), 2u);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(Report, SvgHasOneSeriesPerRatio) {
  SweepConfig config;
  const std::string svg = report_svg(run_sweep(config));
  EXPECT_EQ(count_of(svg, "<polyline"), 10u);
}

TEST(Report, EmptyReportThrows) {
  EXPECT_THROW(report_csv(SweepReport{}), EmptyReport);
  EXPECT_THROW(report_svg(SweepReport{}), EmptyReport);
}

}  // namespace
}  // namespace evacshare
