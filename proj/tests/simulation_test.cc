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

#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "firebreak/errors.h"
#include "firebreak/rng.h"
#include "firebreak/simulation.h"
#include "oracles.h"

namespace firebreak {
namespace {

std::shared_ptr<const LatticeGraph> Box(int d, int radius) {
  return LatticeGraph::Make(LatticeSpec::Box(d, radius));
}

FireState RootFire(const std::shared_ptr<const LatticeGraph>& g) {
  const Coordinate root = g->spec().root();
  return FireState(g, std::span<const Coordinate>(&root, 1));
}

TEST_CASE("deploy") {
  auto g = Box(2, 4);
  const FireState s0 = RootFire(g);
  const std::vector<Coordinate> one{Coordinate{2, 1}};
  const FireState s1 = Deploy(s0, one, 2);
  CHECK(s1.defended_count() == 1);
  CHECK(s1.IsDefended(Coordinate{2, 1}));
  CHECK(s1.time() == 0);
  CHECK(s0.defended_count() == 0);  // input untouched

  const std::vector<Coordinate> root{Coordinate{0, 0}};
  CHECK_THROWS_AS(Deploy(s0, root, 2), IllegalDefense);
  const std::vector<Coordinate> three{Coordinate{1, 0}, Coordinate{0, 1},
                                      Coordinate{-1, 0}};
  CHECK_THROWS_AS(Deploy(s0, three, 2), BudgetViolation);
  const std::vector<Coordinate> twice{Coordinate{1, 0}, Coordinate{1, 0}};
  CHECK_THROWS_AS(Deploy(s0, twice, 2), BudgetViolation);
  CHECK_THROWS_AS(Deploy(s1, one, 2), IllegalDefense);
  const std::vector<Coordinate> off{Coordinate{9, 0}};
  CHECK_THROWS_AS(Deploy(s0, off, 2), DomainError);
  CHECK_THROWS_AS(FireState(g, std::span<const Coordinate>()), DomainError);
}

TEST_CASE("spread") {
  auto g2 = Box(2, 6);
  const FireState s1 = Spread(RootFire(g2));
  CHECK(s1.burnt_count() == 5);
  CHECK(s1.time() == 1);

  const std::vector<Coordinate> ring{Coordinate{-1, 0}, Coordinate{0, -1},
                                     Coordinate{0, 1}, Coordinate{1, 0}};
  FireState walled = Deploy(RootFire(g2), ring, 4);
  CHECK(IsContained(walled));
  const FireState after = Spread(walled);
  CHECK(after.burnt_count() == 1);
  CHECK(IsContained(after));

  // |D_0| + |D_1| + |D_2| in Z^3 by enumerating the cube [-2, 2]^3.
  int ball = 0;
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y)
      for (int z = -2; z <= 2; ++z)
        if (std::abs(x) + std::abs(y) + std::abs(z) <= 2) ++ball;
  REQUIRE(ball == 25);
  auto g3 = Box(3, 6);
  CHECK(Spread(Spread(RootFire(g3))).burnt_count() == ball);
}

TEST_CASE("containment") {
  auto g = Box(2, 6);
  CHECK_FALSE(IsContained(RootFire(g)));
  CHECK(IsContained(FireState::FromSets(g, std::vector<Coordinate>{{0, 0}},
                                        std::vector<Coordinate>{{1, 0},
                                                                {-1, 0},
                                                                {0, 1},
                                                                {0, -1}},
                                        0)));
}

TEST_CASE("saved vertices") {
  auto g = LatticeGraph::Make(LatticeSpec::Grid(2, 5));
  CHECK(SavedVertices(RootFire(g)).empty());
  // Wall off the corner region at distance >= 2 from the root after step 1.
  const std::vector<Coordinate> wall{Coordinate{0, 1}, Coordinate{1, 0}};
  const FireState walled = Step(RootFire(g), wall, 2);
  CHECK(IsContained(walled));
  const auto saved = SavedVertices(walled);
  CHECK(saved.size() ==
        static_cast<std::size_t>(g->vertex_count() - walled.burnt_count() -
                                 walled.defended_count()));
  CHECK(saved.size() == 22);
  // Saved never overlaps burnt or defended.
  for (const Coordinate& v : saved) {
    CHECK_FALSE(walled.IsBurnt(v));
    CHECK_FALSE(walled.IsDefended(v));
  }
}

TEST_CASE("run records shells and reserves") {
  auto g = Box(2, 8);
  const std::vector<Coordinate> root{Coordinate{0, 0}};
  PlacementSchedule empty{2, {}};
  const RunResult r = Run(g, root, empty, 3);
  REQUIRE(r.trace.records.size() == 4);
  for (int k = 0; k <= 3; ++k) {
    CHECK(r.trace.records[k].burnt_in_shell ==
          static_cast<std::int64_t>(Sphere(g->spec(), k).members.size()));
    CHECK(r.trace.records[k].reserve == 0);
  }
  CHECK(r.trace.records[0].reserve == 0);
  CHECK_FALSE(r.trace.contained_at.has_value());
  CHECK(r.trace.ReserveInequalityHolds());

  // One reserve two shells out, then spent when the fire reaches it.
  PlacementSchedule reserve{1, {{Coordinate{2, 0}}, {Coordinate{0, 2}}}};
  const RunResult rr = Run(g, root, reserve, 3);
  CHECK(rr.trace.records[1].reserve == 1);
  CHECK(rr.trace.records[2].p_reserve_spent == 1);
  CHECK(rr.trace.records[2].reserve == 0);
  CHECK(rr.trace.ReserveInequalityHolds());

  PlacementSchedule too_long{1, {{}, {}, {}}};
  CHECK_THROWS_AS(Run(g, root, too_long, 2), DomainError);
}

TEST_CASE("boundary contamination") {
  auto g = Box(2, 2);
  const std::vector<Coordinate> root{Coordinate{0, 0}};
  const RunResult one = Run(g, root, PlacementSchedule{0, {}}, 1);
  CHECK_FALSE(one.trace.boundary_contaminated);
  const RunResult two = Run(g, root, PlacementSchedule{0, {}}, 2);
  CHECK(two.trace.boundary_contaminated);
}

TEST_CASE("random policy is deterministic and legal") {
  auto g = Box(3, 7);
  const std::vector<Coordinate> root{Coordinate{0, 0, 0}};
  const auto a = RandomPolicy(g, root, 4, 6, 42);
  const auto b = RandomPolicy(g, root, 4, 6, 42);
  CHECK(a == b);
  CHECK_NOTHROW(a.Validate());
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto s = RandomPolicy(g, root, 4, 6, seed);
    REQUIRE_NOTHROW(Run(g, root, s, 6));
  }
}

TEST_CASE("spread matches the coordinate oracle on random states") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + static_cast<int>(rng.Below(2));
    auto g = Box(d, 3);
    std::set<Coordinate> burnt, defended;
    for (int i = 0; i < g->vertex_count(); ++i) {
      const auto roll = rng.Below(10);
      if (roll < 2) burnt.insert(g->vertex(i));
      else if (roll < 4) defended.insert(g->vertex(i));
    }
    if (burnt.empty()) continue;
    const std::vector<Coordinate> bv(burnt.begin(), burnt.end());
    const std::vector<Coordinate> dv(defended.begin(), defended.end());
    const FireState s = FireState::FromSets(g, bv, dv, 0);
    const FireState next = Spread(s);
    const auto expected = oracles::Spread(g->spec(), burnt, defended);
    const auto got = next.Burnt();
    CHECK(std::set<Coordinate>(got.begin(), got.end()) == expected);
    // Containment is a fixed point of spread.
    if (IsContained(s)) CHECK(next.burnt_count() == s.burnt_count());
  }
}

TEST_CASE("trajectory invariants under random schedules") {
  auto g = Box(2, 9);
  const std::vector<Coordinate> root{Coordinate{0, 0}};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int f = 1 + static_cast<int>(seed % 3);
    const auto schedule = RandomPolicy(g, root, f, 8, seed);
    FireState state = RootFire(g);
    for (int t = 1; t <= 8; ++t) {
      const FireState next = Step(state, schedule.steps[t - 1], f);
      // Monotone and disjoint.
      for (const Coordinate& v : state.Burnt()) CHECK(next.IsBurnt(v));
      for (const Coordinate& v : state.Defended()) CHECK(next.IsDefended(v));
      for (const Coordinate& v : next.Burnt()) CHECK_FALSE(next.IsDefended(v));
      CHECK(next.defended_count() <= f * t);
      state = next;
    }
    const RunResult r = Run(g, root, schedule, 8);
    CHECK(r.final_state == state);
    CHECK(r.trace.ReserveInequalityHolds());
    // Per-shell counts at the horizon sum to the burnt total; B_k counts only
    // vertices burning exactly on schedule, so their sum is at most that.
    std::int64_t per_shell = 0, on_time = 0;
    for (int k = 0; k <= g->max_distance(); ++k) {
      for (int i : g->shell(k)) per_shell += state.burnt_at(i) ? 1 : 0;
    }
    for (const auto& rec : r.trace.records) on_time += rec.burnt_in_shell;
    CHECK(per_shell == state.burnt_count());
    CHECK(on_time <= state.burnt_count());
    // r_k recomputed from defend times and shells.
    for (const auto& rec : r.trace.records) {
      std::int64_t reserve = 0;
      for (int i = 0; i < g->vertex_count(); ++i) {
        if (state.defend_time(i) >= 0 && state.defend_time(i) <= rec.step &&
            g->distance(i) > rec.step) {
          ++reserve;
        }
      }
      if (rec.step > 0) CHECK(rec.reserve == reserve);
    }
  }
}

}  // namespace
}  // namespace firebreak
