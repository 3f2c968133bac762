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

// Deploy-then-spread fire dynamics.
//
// A time step t >= 1 first places up to f firefighters on vertices that are
// neither burnt nor defended, then burns every undefended neighbour of a burnt
// vertex. "End of step t" always means after the spread.

#ifndef FIREBREAK_SIMULATION_H_
#define FIREBREAK_SIMULATION_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "firebreak/lattice.h"

namespace firebreak {

class FireState {
 public:
  // Time 0 with `outbreak` burning. Throws DomainError on an empty outbreak or
  // a vertex outside the graph.
  FireState(std::shared_ptr<const LatticeGraph> graph,
            std::span<const Coordinate> outbreak);

  // Arbitrary state, e.g. for oracle tests. Every burnt vertex is treated as
  // burning at `time`; defended vertices as placed at `time`.
  static FireState FromSets(std::shared_ptr<const LatticeGraph> graph,
                            std::span<const Coordinate> burnt,
                            std::span<const Coordinate> defended, int time);

  const LatticeGraph& graph() const { return *graph_; }
  const std::shared_ptr<const LatticeGraph>& graph_ptr() const { return graph_; }
  const LatticeSpec& spec() const { return graph_->spec(); }
  int time() const { return time_; }

  bool IsBurnt(const Coordinate& v) const;
  bool IsDefended(const Coordinate& v) const;
  bool burnt_at(int index) const { return burn_time_[index] >= 0; }
  bool defended_at(int index) const { return defend_time_[index] >= 0; }
  // -1 if never burnt / defended.
  int burn_time(int index) const { return burn_time_[index]; }
  int defend_time(int index) const { return defend_time_[index]; }

  std::vector<Coordinate> Burnt() const;     // lexicographic
  std::vector<Coordinate> Defended() const;  // lexicographic
  std::int64_t burnt_count() const { return burnt_count_; }
  std::int64_t defended_count() const { return defended_count_; }
  bool boundary_contaminated() const { return contaminated_; }

  // Burnt vertices that may still have unburnt, undefended neighbours.
  const std::vector<int>& active() const { return active_; }

  friend bool operator==(const FireState& a, const FireState& b);

 private:
  FireState() = default;

  friend FireState Deploy(const FireState&, std::span<const Coordinate>, int);
  friend FireState Spread(const FireState&);
  friend void DeployInPlace(FireState&, std::span<const Coordinate>, int);
  friend void SpreadInPlace(FireState&);

  std::shared_ptr<const LatticeGraph> graph_;
  std::vector<std::int32_t> burn_time_;
  std::vector<std::int32_t> defend_time_;
  std::vector<int> active_;
  int time_ = 0;
  std::int64_t burnt_count_ = 0;
  std::int64_t defended_count_ = 0;
  bool contaminated_ = false;
};

// Places firefighters. Throws BudgetViolation for more than f placements or a
// repeated vertex, IllegalDefense for a burnt or defended vertex, DomainError
// for a vertex outside the graph. The input state is unchanged.
FireState Deploy(const FireState& state, std::span<const Coordinate> placements,
                 int f);
// burnt' = burnt U (N(burnt) \ defended); time + 1.
FireState Spread(const FireState& state);
// Deploy then spread: one full time step.
FireState Step(const FireState& state, std::span<const Coordinate> placements,
               int f);

void DeployInPlace(FireState& state, std::span<const Coordinate> placements,
                   int f);
void SpreadInPlace(FireState& state);

// N(burnt) is a subset of burnt U defended.
bool IsContained(const FireState& state);

// Vertices neither burnt nor defended with no undefended path to the fire.
std::vector<Coordinate> SavedVertices(const FireState& state);

struct PlacementSchedule {
  int budget = 0;                                 // f
  std::vector<std::vector<Coordinate>> steps;     // steps[t - 1] is step t

  int total_placements() const;
  // Throws BudgetViolation when a step exceeds the budget or a vertex repeats.
  void Validate() const;

  friend bool operator==(const PlacementSchedule&, const PlacementSchedule&) =
      default;
};

struct StepRecord {
  int step = 0;
  std::vector<Coordinate> placements;
  std::int64_t p_in_next_shell = 0;  // placed this step inside D_step
  std::int64_t p_reserve_spent = 0;  // placed earlier inside D_step
  std::int64_t burnt_in_shell = 0;   // B_step
  std::int64_t reserve = 0;          // r_step: defended beyond D_step
  std::int64_t burnt_total = 0;
  std::int64_t defended_total = 0;
  bool contained = false;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct SimulationTrace {
  int budget = 0;
  std::vector<StepRecord> records;  // records[0] is the initial state
  std::optional<int> contained_at;
  bool boundary_contaminated = false;

  // r_{n+1} <= r_n + f - p_{n+1} - p_{<=n} for every consecutive pair.
  bool ReserveInequalityHolds() const;

  friend bool operator==(const SimulationTrace&, const SimulationTrace&) =
      default;
};

struct RunResult {
  SimulationTrace trace;
  FireState final_state;
};

// Runs `schedule` for `horizon` steps (steps past the schedule place nothing).
// Shells are measured from the spec's root. Errors propagate from Deploy.
RunResult Run(std::shared_ptr<const LatticeGraph> graph,
              std::span<const Coordinate> outbreak,
              const PlacementSchedule& schedule, int horizon);

// Seeded adaptive random placements: each step places up to f firefighters,
// mixing vertices next to the fire with reserves up to a few shells ahead.
PlacementSchedule RandomPolicy(std::shared_ptr<const LatticeGraph> graph,
                               std::span<const Coordinate> outbreak, int f,
                               int horizon, std::uint64_t seed);

}  // namespace firebreak

#endif  // FIREBREAK_SIMULATION_H_
