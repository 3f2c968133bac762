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

#include "firebreak/strategies.h"

#include <algorithm>

#include "firebreak/errors.h"

namespace firebreak {

PlacementSchedule OptimalTwoDimensional() {
  return PlacementSchedule{
      2,
      {
          {Coordinate{-1, 0}, Coordinate{0, -1}},
          {Coordinate{-1, 1}, Coordinate{0, 2}},
          {Coordinate{1, -2}, Coordinate{2, -1}},
          {Coordinate{1, 3}, Coordinate{3, -1}},
          {Coordinate{4, -1}, Coordinate{5, 0}},
          {Coordinate{2, 4}, Coordinate{3, 3}},
          {Coordinate{4, 3}, Coordinate{6, 1}},
          {Coordinate{5, 3}, Coordinate{6, 2}},
      }};
}

Firewall FirewallStrategy(int n) {
  if (n < 1) throw DomainError("fire wall needs n >= 1");
  Firewall wall{LatticeSpec::Grid(3, n + 1), -1, {}, 0};
  wall.schedule.budget = 1;
  for (int k = 0; k <= n; ++k) {
    if ((k + 1) * (k + 2) / 2 <= 3 * n - k) wall.k = k;
  }
  if (wall.k < 0) return wall;
  const int k = wall.k;
  // Distance k from (n, n, n): (n - x) + (n - y) + (n - z) = k.
  for (int x = n - k; x <= n; ++x) {
    for (int y = n - k; y <= n; ++y) {
      const int z = 3 * n - k - x - y;
      if (z < n - k || z > n) continue;
      wall.schedule.steps.push_back({Coordinate{x, y, z}});
    }
  }
  wall.predicted_saved =
      static_cast<std::int64_t>(k + 1) * (k + 2) * (k + 3) / 6;
  return wall;
}

PlacementSchedule GreedyFrontierPolicy(std::shared_ptr<const LatticeGraph> graph,
                                       std::span<const Coordinate> outbreak,
                                       int f, int horizon) {
  if (f < 0) throw DomainError("budget must be non-negative");
  FireState state(graph, outbreak);
  PlacementSchedule schedule{f, {}};
  for (int t = 1; t <= horizon; ++t) {
    std::vector<int> frontier;
    for (int u : state.active()) {
      for (int w : graph->neighbors(u)) {
        if (!state.burnt_at(w) && !state.defended_at(w)) frontier.push_back(w);
      }
    }
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    if (static_cast<int>(frontier.size()) > f) frontier.resize(f);
    std::vector<Coordinate> placements;
    for (int v : frontier) placements.push_back(graph->vertex(v));
    DeployInPlace(state, placements, f);
    SpreadInPlace(state);
    schedule.steps.push_back(std::move(placements));
  }
  return schedule;
}

const std::vector<NamedStrategy>& StrategyCatalog() {
  static const std::vector<NamedStrategy> catalog{
      {"optimal-2d", "box 2D, f=2",
       "stored solver optimum: 18 burnt, contained after 8 steps"},
      {"firewall", "grid 3D, f=1",
       "defend the vertices at distance k from the far corner"},
      {"greedy", "any",
       "defend the f lexicographically smallest frontier vertices each step"},
  };
  return catalog;
}

}  // namespace firebreak
