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

// The two 0-1 programs for fire containment in the box |x|, |y| <= l, and an
// exact solver for them.
//
// b(x, t) is 1 iff x is burnt at or before time t; d(x, t) likewise for
// defended. The programs are solved through the schedule search in search.h:
// the d-variables fix the b-cascade, so nodes are schedules, and assignments
// are rebuilt from the winning schedule by simulation.

#ifndef FIREBREAK_OPTIMIZE_H_
#define FIREBREAK_OPTIMIZE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "firebreak/search.h"
#include "firebreak/simulation.h"

namespace firebreak {

enum class ConstraintFamily {
  kFireSpreads,           // b(x,t) + d(x,t) - b(y,t-1) >= 0
  kDontDefendBurnt,       // b(x,t) + d(x,t) <= 1
  kStayBurnt,             // b(x,t) - b(x,t-1) >= 0
  kStayDefended,          // d(x,t) - d(x,t-1) >= 0
  kBudget,                // sum_x d(x,t) - d(x,t-1) <= f
  kBurnInitial,           // b(x,0) = [x is the origin]
  kDefendInitial,         // d(x,0) = 0
  kNoExtraTimeSteps,      // budget row of the deadline program
};

const char* FamilyName(ConstraintFamily family);

enum class Sense { kGreaterEqual, kLessEqual, kEqual };

struct Term {
  int variable;
  int coefficient;
};

struct Constraint {
  ConstraintFamily family;
  std::string name;
  std::vector<Term> terms;
  Sense sense;
  int rhs;
};

enum class ObjectiveKind { kMinTotalBurn, kBoundaryReach };

class IpModel {
 public:
  int radius() const { return radius_; }
  int horizon() const { return horizon_; }
  int budget() const { return budget_; }
  ObjectiveKind objective_kind() const { return kind_; }
  // Last step allowed to place firefighters (the horizon for min-burn).
  int deadline() const { return deadline_; }

  const LatticeGraph& graph() const { return *graph_; }
  const std::shared_ptr<const LatticeGraph>& graph_ptr() const { return graph_; }

  int variable_count() const { return 2 * graph_->vertex_count() * (horizon_ + 1); }
  int burn_var(int vertex, int t) const { return vertex * (horizon_ + 1) + t; }
  int defend_var(int vertex, int t) const {
    return (graph_->vertex_count() + vertex) * (horizon_ + 1) + t;
  }
  // b_x_y_t / d_x_y_t with negative coordinates written m<abs>.
  std::string variable_name(int variable) const;

  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Term>& objective() const { return objective_; }
  // Vertices counted by the boundary objective: |a| = l or |b| = l.
  bool on_boundary(int vertex) const;

 private:
  friend IpModel BuildMinBurnModel(int, int, int);
  friend IpModel BuildDeadlineModel(int, int, int, int);
  IpModel(int radius, int horizon, int budget, ObjectiveKind kind, int deadline);

  int radius_;
  int horizon_;
  int budget_;
  ObjectiveKind kind_;
  int deadline_;
  std::shared_ptr<const LatticeGraph> graph_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
};

// Throws DomainError unless l >= 1, T >= 1, f >= 0 (and 0 <= deadline <= T).
IpModel BuildMinBurnModel(int radius, int horizon, int budget);
IpModel BuildDeadlineModel(int radius, int horizon, int budget, int deadline);

struct SolveOptions {
  std::optional<std::int64_t> node_limit;
  std::optional<double> time_limit_seconds;
  // Accepted for interface stability; the search itself is sequential.
  int workers = 1;
  bool use_symmetry = true;
  bool use_transpositions = true;
  bool use_bounds = true;
  const std::atomic<bool>* cancel = nullptr;
};

enum class SolveStatus { kOptimal, kBound, kInfeasible };

const char* StatusName(SolveStatus status);

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::int64_t objective = 0;  // incumbent value
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  std::vector<std::uint8_t> assignment;  // empty without an incumbent
  PlacementSchedule schedule;
  bool contained = false;
  std::int64_t nodes = 0;
  double wall_seconds = 0.0;
};

Solution Solve(const IpModel& model, const SolveOptions& options = {});

// d-increments per step, trailing empty steps dropped. nullopt without an
// assignment.
std::optional<PlacementSchedule> ExtractStrategy(const Solution& solution,
                                                 const IpModel& model);

// b and d from simulating `schedule` from the origin for T steps.
std::vector<std::uint8_t> AssignmentFromSchedule(const IpModel& model,
                                                 const PlacementSchedule& schedule);

struct CheckReport {
  bool rows_ok = false;
  bool simulation_ok = false;  // simulated burns never exceed b per step
  std::vector<std::string> violated;  // row names, capped
  std::int64_t objective = 0;

  bool ok() const { return rows_ok && simulation_ok; }
};

CheckReport CheckAssignment(const IpModel& model,
                            std::span<const std::uint8_t> assignment);
bool VerifySolution(const IpModel& model,
                    std::span<const std::uint8_t> assignment);

// CPLEX LP text; byte-identical for equal models.
std::string ExportLp(const IpModel& model);

}  // namespace firebreak

#endif  // FIREBREAK_OPTIMIZE_H_
