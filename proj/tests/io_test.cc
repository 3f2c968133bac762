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

#include <vector>

#include "doctest.h"
#include "firebreak/errors.h"
#include "firebreak/io.h"
#include "firebreak/rng.h"

namespace firebreak {
namespace {

TEST_CASE("spec round trip") {
  const std::vector<LatticeSpec> specs{
      LatticeSpec::Box(2, 10),
      LatticeSpec::Box(3, 4, Coordinate{1, -2, 0}),
      LatticeSpec::Octant(3, 12),
      LatticeSpec::Grid(3, 11),
      LatticeSpec::Grid(2, 5, Coordinate{4, 4}),
      LatticeSpec::Quotient(3, 2, 9),
  };
  for (const auto& spec : specs) {
    const Json j = SpecToJson(spec);
    CHECK(SpecFromJson(ParseJson(j.dump())) == spec);
  }
  CHECK(SpecToJson(specs[0]).dump() ==
        R"({"dimension":2,"geometry":"box","radius":10,"root":[0,0]})");
  CHECK(SpecFromJson(ParseJson(R"({"geometry":"box","dimension":2,"radius":3})")) ==
        LatticeSpec::Box(2, 3));
  CHECK_THROWS_AS(SpecFromJson(ParseJson(R"({"geometry":"torus","dimension":2})")),
                  DomainError);
  CHECK_THROWS_AS(SpecFromJson(ParseJson(R"({"geometry":"box","dimension":2,"radius":"x"})")),
                  DomainError);
  CHECK_THROWS_AS(SpecFromJson(ParseJson(R"({"geometry":"box","dimension":9,"radius":1})")),
                  DomainError);
}

TEST_CASE("schedule round trip and validation") {
  const PlacementSchedule s{2, {{Coordinate{1, 0}, Coordinate{-1, 0}}, {}, {Coordinate{0, 3}}}};
  const Json j = ScheduleToJson(s);
  CHECK(j.at("schema") == 1);
  CHECK(ScheduleFromJson(ParseJson(j.dump())) == s);
  CHECK(ScheduleFromJson(ParseJson(R"({"f":1,"steps":[[[0,1]]]})")).steps.size() == 1);
  CHECK_THROWS_AS(ScheduleFromJson(ParseJson(R"({"schema":2,"f":1,"steps":[]})")),
                  DomainError);
  CHECK_THROWS_AS(ScheduleFromJson(ParseJson(R"({"f":1,"steps":[[[0,1],[1,0]]]})")),
                  BudgetViolation);
  CHECK_THROWS_AS(ScheduleFromJson(ParseJson(R"({"f":1,"steps":[[[0.5,1]]]})")),
                  DomainError);
  CHECK_THROWS_AS(ScheduleFromJson(ParseJson(R"({"steps":[]})")), DomainError);
  CHECK_THROWS_AS(ParseJson("{"), DomainError);
}

TEST_CASE("trace round trip on random runs") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + static_cast<int>(rng.Below(2));
    const auto g = LatticeGraph::Make(LatticeSpec::Box(d, 5));
    const std::vector<Coordinate> origin{Coordinate::Zero(d)};
    const int f = static_cast<int>(rng.Below(4));
    const auto schedule = RandomPolicy(g, origin, f, 6, rng.Next());
    const RunResult run = Run(g, origin, schedule, 6);
    const Json j = TraceToJson(run.trace);
    CHECK(TraceFromJson(ParseJson(j.dump())) == run.trace);
    CHECK(TraceToJson(TraceFromJson(j)).dump() == j.dump());
  }
}

TEST_CASE("hall config") {
  const HallConfig c = HallConfigFromJson(ParseJson(
      R"({"schema":1,"hypothesis":{"f":4,"h":1,"a":[5,6]},"seed":3,"runs":7,
          "spec":{"geometry":"box","dimension":3,"radius":9}})"));
  CHECK(c.hypothesis.a == std::vector<int>{5, 6});
  CHECK(c.seed == 3);
  CHECK(c.runs == 7);
  CHECK(c.horizon == 8);
  CHECK(c.spec == LatticeSpec::Box(3, 9));
  CHECK_THROWS_AS(HallConfigFromJson(ParseJson(
                      R"({"hypothesis":{"f":6,"h":1,"a":[5,6]},"seed":1})")),
                  DomainError);
  CHECK_THROWS_AS(HallConfigFromJson(ParseJson(R"({"hypothesis":{"f":4,"h":1,"a":[5,6]}})")),
                  DomainError);
}

TEST_CASE("reports serialise deterministically") {
  const auto a = ReportToJson(CheckFirstShell(3)).dump();
  const auto b = ReportToJson(CheckFirstShell(3)).dump();
  CHECK(a == b);
  const Json j = ParseJson(a);
  CHECK(j.at("ok") == true);
  CHECK(j.at("counterexample").is_null());
  CHECK(j.at("subsets_checked") == 57);
}

}  // namespace
}  // namespace firebreak
