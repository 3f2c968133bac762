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

#ifndef FIREBREAK_STRATEGIES_H_
#define FIREBREAK_STRATEGIES_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "firebreak/simulation.h"

namespace firebreak {

// Two firefighters per step in Z^2 from an outbreak at the origin: contains
// the fire after 8 steps with 18 burnt. Found by the exact solver with
// l = 7, T = 9 and checked in larger boxes; data/optimal_2d.json carries the
// same placements.
PlacementSchedule OptimalTwoDimensional();

struct Firewall {
  LatticeSpec spec;       // the grid {0..n}^3, outbreak at the origin
  int k = -1;             // wall distance from the far corner, -1 if none
  PlacementSchedule schedule;
  std::int64_t predicted_saved = 0;  // (k+1)(k+2)(k+3)/6, wall included
};

// Defends every vertex at distance k from (n, n, n), one per step in
// lexicographic order, for the largest k with (k+1)(k+2)/2 <= 3n - k.
// Throws DomainError for n < 1.
Firewall FirewallStrategy(int n);

// Each step defends the f lexicographically smallest vertices adjacent to the
// fire. Adaptive, so it is computed against the simulator.
PlacementSchedule GreedyFrontierPolicy(std::shared_ptr<const LatticeGraph> graph,
                                       std::span<const Coordinate> outbreak,
                                       int f, int horizon);

struct NamedStrategy {
  std::string name;
  std::string family;
  std::string description;
};

const std::vector<NamedStrategy>& StrategyCatalog();

}  // namespace firebreak

#endif  // FIREBREAK_STRATEGIES_H_
