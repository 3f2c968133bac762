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

// Exact depth-first branch-and-bound over firefighter schedules.
//
// Nodes are partial schedules in just-in-time form: at step t the search only
// decides which vertices of the current fire frontier are defended. A vertex
// first adjacent to the fire at step t must be defended at some step <= t, so
// a set of such decisions is realisable iff, for every step j, the number of
// decisions due by j is at most f * j (earliest-deadline-first then yields a
// concrete schedule). Defences that never touch the fire cannot change the
// outcome, so this loses no optimum while collapsing the space of schedules.

#ifndef FIREBREAK_SEARCH_H_
#define FIREBREAK_SEARCH_H_

#include <atomic>
#include <cstdint>
#include <optional>
#include <vector>

#include "firebreak/simulation.h"

namespace firebreak {

enum class SearchObjective {
  kTotalBurn,   // burnt vertices at the horizon
  kTargetBurn,  // burnt vertices at the horizon inside a target set
};

struct SearchProblem {
  FireState start;               // time t0 = start.time()
  int budget = 0;                // f
  int horizon = 0;               // final time T >= t0
  int last_placement_step = 0;   // placements allowed on steps t0+1 .. this
  SearchObjective objective = SearchObjective::kTotalBurn;
  std::vector<std::uint8_t> target;  // per vertex, for kTargetBurn
};

struct SearchOptions {
  std::optional<std::int64_t> node_limit;
  std::optional<double> time_limit_seconds;
  bool use_symmetry = true;
  bool use_transpositions = true;
  bool use_bounds = true;  // false gives plain exhaustive enumeration
  // Cap on stored transposition entries.
  std::int64_t transposition_capacity = 30'000'000;
  // Set from another thread to stop early; the result is then a bound.
  const std::atomic<bool>* cancel = nullptr;
};

enum class SearchStatus { kOptimal, kBound };

struct SearchResult {
  SearchStatus status = SearchStatus::kBound;
  bool has_incumbent = false;
  std::int64_t value = 0;        // incumbent objective
  std::int64_t lower_bound = 0;  // proven
  // Placements for steps t0+1 .. last_placement_step.
  PlacementSchedule schedule;
  bool contained = false;  // incumbent line contains the fire by the horizon
  std::int64_t nodes = 0;
  double seconds = 0.0;
};

SearchResult SearchSchedules(const SearchProblem& problem,
                             const SearchOptions& options);

// Admissible lower bound on the objective from the start state alone.
std::int64_t RootLowerBound(const SearchProblem& problem);

}  // namespace firebreak

#endif  // FIREBREAK_SEARCH_H_
