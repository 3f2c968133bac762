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

#include "firebreak/simulation.h"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "firebreak/errors.h"
#include "firebreak/rng.h"

namespace firebreak {

FireState::FireState(std::shared_ptr<const LatticeGraph> graph,
                     std::span<const Coordinate> outbreak)
    : graph_(std::move(graph)) {
  if (outbreak.empty()) throw DomainError("outbreak must be nonempty");
  const int n = graph_->vertex_count();
  burn_time_.assign(n, -1);
  defend_time_.assign(n, -1);
  for (const Coordinate& v : outbreak) {
    const int i = graph_->RequireIndex(v);
    if (burn_time_[i] >= 0) continue;
    burn_time_[i] = 0;
    active_.push_back(i);
    ++burnt_count_;
    if (graph_->on_guard_boundary(i)) contaminated_ = true;
  }
  std::sort(active_.begin(), active_.end());
}

FireState FireState::FromSets(std::shared_ptr<const LatticeGraph> graph,
                              std::span<const Coordinate> burnt,
                              std::span<const Coordinate> defended, int time) {
  if (time < 0) throw DomainError("time must be nonnegative");
  FireState s;
  s.graph_ = std::move(graph);
  const int n = s.graph_->vertex_count();
  s.burn_time_.assign(n, -1);
  s.defend_time_.assign(n, -1);
  s.time_ = time;
  for (const Coordinate& v : burnt) {
    const int i = s.graph_->RequireIndex(v);
    if (s.burn_time_[i] >= 0) continue;
    s.burn_time_[i] = time;
    s.active_.push_back(i);
    ++s.burnt_count_;
    if (s.graph_->on_guard_boundary(i)) s.contaminated_ = true;
  }
  for (const Coordinate& v : defended) {
    const int i = s.graph_->RequireIndex(v);
    if (s.burn_time_[i] >= 0) {
      throw IllegalDefense("vertex " + v.ToString() + " is both burnt and defended");
    }
    if (s.defend_time_[i] >= 0) continue;
    s.defend_time_[i] = time;
    ++s.defended_count_;
  }
  std::sort(s.active_.begin(), s.active_.end());
  return s;
}

bool FireState::IsBurnt(const Coordinate& v) const {
  const int i = graph_->IndexOf(v);
  return i >= 0 && burn_time_[i] >= 0;
}

bool FireState::IsDefended(const Coordinate& v) const {
  const int i = graph_->IndexOf(v);
  return i >= 0 && defend_time_[i] >= 0;
}

std::vector<Coordinate> FireState::Burnt() const {
  std::vector<Coordinate> out;
  out.reserve(static_cast<std::size_t>(burnt_count_));
  for (int i = 0; i < graph_->vertex_count(); ++i) {
    if (burn_time_[i] >= 0) out.push_back(graph_->vertex(i));
  }
  return out;
}

std::vector<Coordinate> FireState::Defended() const {
  std::vector<Coordinate> out;
  out.reserve(static_cast<std::size_t>(defended_count_));
  for (int i = 0; i < graph_->vertex_count(); ++i) {
    if (defend_time_[i] >= 0) out.push_back(graph_->vertex(i));
  }
  return out;
}

bool operator==(const FireState& a, const FireState& b) {
  return a.graph_->spec() == b.graph_->spec() && a.time_ == b.time_ &&
         a.burn_time_ == b.burn_time_ && a.defend_time_ == b.defend_time_ &&
         a.contaminated_ == b.contaminated_;
}

void DeployInPlace(FireState& state, std::span<const Coordinate> placements,
                   int f) {
  if (f < 0) throw DomainError("budget f must be nonnegative");
  if (static_cast<int>(placements.size()) > f) {
    throw BudgetViolation(std::to_string(placements.size()) +
                          " placements exceed the budget of " + std::to_string(f));
  }
  std::vector<int> indices;
  indices.reserve(placements.size());
  for (const Coordinate& v : placements) {
    const int i = state.graph_->RequireIndex(v);
    if (std::find(indices.begin(), indices.end(), i) != indices.end()) {
      throw BudgetViolation("vertex " + v.ToString() + " placed twice in one step");
    }
    if (state.burn_time_[i] >= 0) {
      throw IllegalDefense("vertex " + v.ToString() + " is burnt");
    }
    if (state.defend_time_[i] >= 0) {
      throw IllegalDefense("vertex " + v.ToString() + " is already defended");
    }
    indices.push_back(i);
  }
  for (int i : indices) {
    state.defend_time_[i] = state.time_ + 1;
    ++state.defended_count_;
  }
}

void SpreadInPlace(FireState& state) {
  const LatticeGraph& g = *state.graph_;
  const int t = state.time_ + 1;
  std::vector<int> next;
  for (int u : state.active_) {
    for (int w : g.neighbors(u)) {
      if (state.burn_time_[w] >= 0 || state.defend_time_[w] >= 0) continue;
      state.burn_time_[w] = t;
      next.push_back(w);
      if (g.on_guard_boundary(w)) state.contaminated_ = true;
    }
  }
  std::sort(next.begin(), next.end());
  state.burnt_count_ += static_cast<std::int64_t>(next.size());
  state.active_ = std::move(next);
  state.time_ = t;
}

FireState Deploy(const FireState& state, std::span<const Coordinate> placements,
                 int f) {
  FireState next = state;
  DeployInPlace(next, placements, f);
  return next;
}

FireState Spread(const FireState& state) {
  FireState next = state;
  SpreadInPlace(next);
  return next;
}

FireState Step(const FireState& state, std::span<const Coordinate> placements,
               int f) {
  FireState next = state;
  DeployInPlace(next, placements, f);
  SpreadInPlace(next);
  return next;
}

bool IsContained(const FireState& state) {
  const LatticeGraph& g = state.graph();
  for (int u : state.active()) {
    for (int w : g.neighbors(u)) {
      if (!state.burnt_at(w) && !state.defended_at(w)) return false;
    }
  }
  return true;
}

std::vector<Coordinate> SavedVertices(const FireState& state) {
  const LatticeGraph& g = state.graph();
  const int n = g.vertex_count();
  // Flood from the fire through undefended vertices; the rest is saved.
  std::vector<std::uint8_t> reached(n, 0);
  std::vector<int> queue;
  for (int i = 0; i < n; ++i) {
    if (state.burnt_at(i)) {
      reached[i] = 1;
      queue.push_back(i);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int w : g.neighbors(queue[head])) {
      if (reached[w] || state.defended_at(w)) continue;
      reached[w] = 1;
      queue.push_back(w);
    }
  }
  std::vector<Coordinate> saved;
  for (int i = 0; i < n; ++i) {
    if (!reached[i] && !state.defended_at(i)) saved.push_back(g.vertex(i));
  }
  return saved;
}

int PlacementSchedule::total_placements() const {
  int total = 0;
  for (const auto& s : steps) total += static_cast<int>(s.size());
  return total;
}

void PlacementSchedule::Validate() const {
  if (budget < 0) throw DomainError("budget f must be nonnegative");
  std::set<Coordinate> seen;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    if (static_cast<int>(steps[t].size()) > budget) {
      throw BudgetViolation("step " + std::to_string(t + 1) + " places " +
                            std::to_string(steps[t].size()) +
                            " firefighters, budget is " + std::to_string(budget));
    }
    for (const Coordinate& v : steps[t]) {
      if (!seen.insert(v).second) {
        throw BudgetViolation("vertex " + v.ToString() + " appears twice in schedule");
      }
    }
  }
}

bool SimulationTrace::ReserveInequalityHolds() const {
  for (std::size_t i = 1; i < records.size(); ++i) {
    const StepRecord& prev = records[i - 1];
    const StepRecord& cur = records[i];
    if (cur.reserve >
        prev.reserve + budget - cur.p_in_next_shell - cur.p_reserve_spent) {
      return false;
    }
  }
  return true;
}

RunResult Run(std::shared_ptr<const LatticeGraph> graph,
              std::span<const Coordinate> outbreak,
              const PlacementSchedule& schedule, int horizon) {
  schedule.Validate();
  if (horizon < static_cast<int>(schedule.steps.size())) {
    throw DomainError("horizon " + std::to_string(horizon) +
                      " is shorter than the schedule");
  }
  const LatticeGraph& g = *graph;
  FireState state(graph, outbreak);
  const int shells = g.max_distance() + 1;
  std::vector<std::int64_t> burnt_per_shell(shells, 0);
  std::vector<std::int64_t> defended_per_shell(shells, 0);
  for (int i : state.active()) ++burnt_per_shell[g.distance(i)];

  auto reserve_beyond = [&](int k) {
    std::int64_t r = 0;
    for (int j = k + 1; j < shells; ++j) r += defended_per_shell[j];
    return r;
  };
  auto shell_count = [&](const std::vector<std::int64_t>& v, int k) {
    return k < shells ? v[k] : 0;
  };

  SimulationTrace trace;
  trace.budget = schedule.budget;
  StepRecord initial;
  initial.step = 0;
  initial.burnt_in_shell = shell_count(burnt_per_shell, 0);
  initial.reserve = 0;
  initial.burnt_total = state.burnt_count();
  initial.defended_total = 0;
  initial.contained = IsContained(state);
  trace.records.push_back(initial);
  if (initial.contained) trace.contained_at = 0;

  for (int t = 1; t <= horizon; ++t) {
    StepRecord rec;
    rec.step = t;
    if (t <= static_cast<int>(schedule.steps.size())) {
      rec.placements = schedule.steps[t - 1];
    }
    // p_{<=n}: reserves already standing in D_t before this step's placements.
    rec.p_reserve_spent = shell_count(defended_per_shell, t);
    DeployInPlace(state, rec.placements, schedule.budget);
    for (const Coordinate& v : rec.placements) {
      const int i = g.RequireIndex(v);
      if (g.distance(i) == t) ++rec.p_in_next_shell;
      ++defended_per_shell[g.distance(i)];
    }
    SpreadInPlace(state);
    for (int i : state.active()) ++burnt_per_shell[g.distance(i)];
    rec.burnt_in_shell = shell_count(burnt_per_shell, t);
    rec.reserve = reserve_beyond(t);
    rec.burnt_total = state.burnt_count();
    rec.defended_total = state.defended_count();
    rec.contained = IsContained(state);
    if (rec.contained && !trace.contained_at) trace.contained_at = t;
    trace.records.push_back(std::move(rec));
  }
  trace.boundary_contaminated = state.boundary_contaminated();
  return RunResult{std::move(trace), std::move(state)};
}

PlacementSchedule RandomPolicy(std::shared_ptr<const LatticeGraph> graph,
                               std::span<const Coordinate> outbreak, int f,
                               int horizon, std::uint64_t seed) {
  if (f < 0) throw DomainError("budget f must be nonnegative");
  Rng rng(seed);
  const LatticeGraph& g = *graph;
  FireState state(graph, outbreak);
  PlacementSchedule schedule;
  schedule.budget = f;
  for (int t = 1; t <= horizon; ++t) {
    std::vector<int> frontier;
    for (int u : state.active()) {
      for (int w : g.neighbors(u)) {
        if (!state.burnt_at(w) && !state.defended_at(w)) frontier.push_back(w);
      }
    }
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());

    const int count = rng.Chance(4, 5) ? f : static_cast<int>(rng.Below(f + 1));
    std::vector<int> chosen;
    auto usable = [&](int i) {
      return !state.burnt_at(i) && !state.defended_at(i) &&
             std::find(chosen.begin(), chosen.end(), i) == chosen.end();
    };
    for (int attempt = 0; static_cast<int>(chosen.size()) < count && attempt < 8 * (count + 1);
         ++attempt) {
      int candidate = -1;
      if (!frontier.empty() && rng.Chance(1, 2)) {
        candidate = frontier[rng.Below(frontier.size())];
      } else {
        const int k = t + static_cast<int>(rng.Below(4));
        std::span<const int> shell = g.shell(k);
        if (!shell.empty()) candidate = shell[rng.Below(shell.size())];
      }
      if (candidate >= 0 && usable(candidate)) chosen.push_back(candidate);
    }
    std::vector<Coordinate> placements;
    for (int i : chosen) placements.push_back(g.vertex(i));
    std::sort(placements.begin(), placements.end());
    DeployInPlace(state, placements, f);
    SpreadInPlace(state);
    schedule.steps.push_back(std::move(placements));
  }
  return schedule;
}

}  // namespace firebreak
