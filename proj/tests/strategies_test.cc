// Copyright 2026 The Firebreak Authors
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

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "firebreak/errors.h"
#include "firebreak/io.h"
#include "firebreak/strategies.h"

namespace firebreak {
namespace {

const std::vector<Coordinate> kOrigin2{Coordinate{0, 0}};
const std::vector<Coordinate> kOrigin3{Coordinate{0, 0, 0}};

// Largest k with (k+1)(k+2)/2 <= 3n - k, by a scan independent of the
// generator's loop bounds.
int WallDistance(int n) {
  int best = -1;
  for (int k = 0; k <= 3 * n; ++k) {
    if ((k + 1) * (k + 2) / 2 <= 3 * n - k && k <= n) best = k;
  }
  return best;
}

std::int64_t Unburnt(const FireState& s) {
  return s.graph().vertex_count() - s.burnt_count();
}

TEST_CASE("stored optimal 2D schedule") {
  const PlacementSchedule schedule = OptimalTwoDimensional();
  CHECK(schedule.budget == 2);
  CHECK(schedule.steps.size() == 8);
  CHECK(schedule.total_placements() == 16);
  CHECK_NOTHROW(schedule.Validate());
  for (int radius : {9, 12, 20}) {
    const auto g = LatticeGraph::Make(LatticeSpec::Box(2, radius));
    const RunResult run = Run(g, kOrigin2, schedule, 12);
    CAPTURE(radius);
    CHECK(run.final_state.burnt_count() == 18);
    CHECK(run.final_state.defended_count() == 16);
    REQUIRE(run.trace.contained_at.has_value());
    CHECK(*run.trace.contained_at == 8);
    CHECK_FALSE(run.trace.boundary_contaminated);
    CHECK(run.trace.ReserveInequalityHolds());
  }
}

TEST_CASE("stored optimal 2D schedule matches the data file") {
  std::ifstream in(std::string(FIREBREAK_SOURCE_DIR) + "/data/optimal_2d.json");
  REQUIRE(in.good());
  std::stringstream text;
  text << in.rdbuf();
  const Json doc = ParseJson(text.str());
  CHECK(ScheduleFromJson(doc) == OptimalTwoDimensional());
  CHECK(doc.at("provenance").at("objective") == 18);
}

TEST_CASE("fire wall parameters") {
  const Firewall ten = FirewallStrategy(10);
  CHECK(ten.k == 5);
  CHECK(ten.predicted_saved == 56);
  CHECK(ten.schedule.budget == 1);
  CHECK(ten.schedule.steps.size() == 21);
  const Firewall one = FirewallStrategy(1);
  CHECK(one.k == 0);
  CHECK(one.predicted_saved == 1);
  REQUIRE(one.schedule.steps.size() == 1);
  CHECK(one.schedule.steps[0] == std::vector<Coordinate>{Coordinate{1, 1, 1}});
  CHECK_THROWS_AS(FirewallStrategy(0), DomainError);
  for (int n = 1; n <= 30; ++n) {
    const Firewall w = FirewallStrategy(n);
    CAPTURE(n);
    CHECK(w.k == WallDistance(n));
    CHECK(static_cast<int>(w.schedule.steps.size()) == (w.k + 1) * (w.k + 2) / 2);
    CHECK_NOTHROW(w.schedule.Validate());
    for (std::size_t i = 1; i < w.schedule.steps.size(); ++i) {
      CHECK(w.schedule.steps[i - 1][0] < w.schedule.steps[i][0]);
    }
  }
}

TEST_CASE("fire wall simulation") {
  for (int n : {1, 2, 3, 5, 10, 20, 40}) {
    const Firewall w = FirewallStrategy(n);
    const auto g = LatticeGraph::Make(w.spec);
    const RunResult run = Run(g, kOrigin3, w.schedule, 3 * n + 1);
    const FireState& s = run.final_state;
    CAPTURE(n);
    // Everything not burnt is the wall or behind it.
    CHECK(Unburnt(s) == w.predicted_saved);
    CHECK(static_cast<std::int64_t>(SavedVertices(s).size()) + s.defended_count() ==
          w.predicted_saved);
    // Every wall vertex is defended before the fire reaches distance 3n - k.
    const int arrival = 3 * n - w.k;
    for (std::size_t step = 0; step < w.schedule.steps.size(); ++step) {
      const int v = g->IndexOf(w.schedule.steps[step][0]);
      CHECK(g->distance(v) == arrival);
      CHECK(s.defend_time(v) == static_cast<int>(step) + 1);
      CHECK(s.defend_time(v) <= arrival);
    }
    if (n == 10) CHECK(Unburnt(s) == 56);
  }
}

TEST_CASE("fire wall scaling window") {
  double previous_quadratic = 1e9;
  for (int n : {10, 20, 40, 80}) {
    const Firewall w = FirewallStrategy(n);
    const auto g = LatticeGraph::Make(w.spec);
    const RunResult run = Run(g, kOrigin3, w.schedule, 3 * n);
    const double saved = static_cast<double>(Unburnt(run.final_state));
    CHECK(saved == w.predicted_saved);
    const double ratio = saved / std::pow(n, 1.5);
    CAPTURE(n);
    CHECK(ratio > 1.0);
    CHECK(ratio < 4.0);
    const double quadratic = saved / (static_cast<double>(n) * n);
    CHECK(quadratic < previous_quadratic);
    previous_quadratic = quadratic;
  }
}

TEST_CASE("greedy frontier policy") {
  const auto g = LatticeGraph::Make(LatticeSpec::Box(3, 12));
  const PlacementSchedule a = GreedyFrontierPolicy(g, kOrigin3, 4, 10);
  const PlacementSchedule b = GreedyFrontierPolicy(g, kOrigin3, 4, 10);
  CHECK(a == b);
  CHECK_NOTHROW(a.Validate());
  const RunResult run = Run(g, kOrigin3, a, 10);
  CHECK_FALSE(run.trace.contained_at.has_value());
  CHECK_FALSE(run.trace.boundary_contaminated);
  for (const auto& step : a.steps) CHECK(step.size() == 4);

  // With enough firefighters the whole first frontier goes at once.
  const auto plane = LatticeGraph::Make(LatticeSpec::Box(2, 4));
  const PlacementSchedule four = GreedyFrontierPolicy(plane, kOrigin2, 4, 3);
  const RunResult held = Run(plane, kOrigin2, four, 3);
  CHECK(held.final_state.burnt_count() == 1);
  REQUIRE(held.trace.contained_at.has_value());
  CHECK(*held.trace.contained_at == 1);
  CHECK_THROWS_AS(GreedyFrontierPolicy(plane, kOrigin2, -1, 3), DomainError);
}

TEST_CASE("strategy catalog") {
  const auto& catalog = StrategyCatalog();
  REQUIRE(catalog.size() == 3);
  CHECK(catalog[0].name == "optimal-2d");
  CHECK(catalog[1].name == "firewall");
  CHECK(catalog[2].name == "greedy");
}

}  // namespace
}  // namespace firebreak
