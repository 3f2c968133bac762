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

#include "firebreak/optimize.h"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "firebreak/errors.h"

namespace firebreak {
namespace {

std::string CoordName(const Coordinate& c) {
  std::string out;
  for (int i = 0; i < c.dimension(); ++i) {
    if (i > 0) out += '_';
    if (c[i] < 0) out += 'm';
    out += std::to_string(std::abs(c[i]));
  }
  return out;
}

constexpr std::size_t kMaxViolations = 20;
constexpr int kTermsPerLine = 8;

}  // namespace

const char* FamilyName(ConstraintFamily family) {
  switch (family) {
    case ConstraintFamily::kFireSpreads: return "fire_spreads";
    case ConstraintFamily::kDontDefendBurnt: return "dont_defend_burnt";
    case ConstraintFamily::kStayBurnt: return "stay_burnt";
    case ConstraintFamily::kStayDefended: return "stay_defended";
    case ConstraintFamily::kBudget: return "budget";
    case ConstraintFamily::kBurnInitial: return "burn_initial";
    case ConstraintFamily::kDefendInitial: return "defend_initial";
    case ConstraintFamily::kNoExtraTimeSteps: return "no_extra_time_steps";
  }
  return "unknown";
}

const char* StatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kBound: return "bound";
    case SolveStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

IpModel::IpModel(int radius, int horizon, int budget, ObjectiveKind kind,
                 int deadline)
    : radius_(radius),
      horizon_(horizon),
      budget_(budget),
      kind_(kind),
      deadline_(deadline),
      graph_(LatticeGraph::Make(LatticeSpec::Box(2, radius))) {
  const LatticeGraph& g = *graph_;
  const int n = g.vertex_count();
  const int T = horizon_;
  auto add = [&](ConstraintFamily family, std::string name,
                 std::vector<Term> terms, Sense sense, int rhs) {
    constraints_.push_back(
        {family, std::string(FamilyName(family)) + "_" + name, std::move(terms),
         sense, rhs});
  };
  auto tag = [&](int x, int t) {
    return CoordName(g.vertex(x)) + "_" + std::to_string(t);
  };

  for (int t = 1; t <= T; ++t) {
    for (int x = 0; x < n; ++x) {
      for (int y : g.neighbors(x)) {
        add(ConstraintFamily::kFireSpreads,
            tag(x, t) + "_" + CoordName(g.vertex(y)),
            {{burn_var(x, t), 1}, {defend_var(x, t), 1}, {burn_var(y, t - 1), -1}},
            Sense::kGreaterEqual, 0);
      }
    }
  }
  for (int t = 1; t <= T; ++t) {
    for (int x = 0; x < n; ++x) {
      add(ConstraintFamily::kDontDefendBurnt, tag(x, t),
          {{burn_var(x, t), 1}, {defend_var(x, t), 1}}, Sense::kLessEqual, 1);
    }
  }
  for (int t = 1; t <= T; ++t) {
    for (int x = 0; x < n; ++x) {
      add(ConstraintFamily::kStayBurnt, tag(x, t),
          {{burn_var(x, t), 1}, {burn_var(x, t - 1), -1}}, Sense::kGreaterEqual,
          0);
    }
  }
  for (int t = 1; t <= T; ++t) {
    for (int x = 0; x < n; ++x) {
      add(ConstraintFamily::kStayDefended, tag(x, t),
          {{defend_var(x, t), 1}, {defend_var(x, t - 1), -1}},
          Sense::kGreaterEqual, 0);
    }
  }
  for (int t = 1; t <= T; ++t) {
    std::vector<Term> terms;
    for (int x = 0; x < n; ++x) {
      terms.push_back({defend_var(x, t), 1});
      terms.push_back({defend_var(x, t - 1), -1});
    }
    if (kind_ == ObjectiveKind::kMinTotalBurn) {
      add(ConstraintFamily::kBudget, std::to_string(t), std::move(terms),
          Sense::kLessEqual, budget_);
    } else {
      add(ConstraintFamily::kNoExtraTimeSteps, std::to_string(t),
          std::move(terms), Sense::kLessEqual, t <= deadline_ ? budget_ : 0);
    }
  }
  const int origin = g.root_index();
  for (int x = 0; x < n; ++x) {
    add(ConstraintFamily::kBurnInitial, CoordName(g.vertex(x)),
        {{burn_var(x, 0), 1}}, Sense::kEqual, x == origin ? 1 : 0);
  }
  for (int x = 0; x < n; ++x) {
    add(ConstraintFamily::kDefendInitial, CoordName(g.vertex(x)),
        {{defend_var(x, 0), 1}}, Sense::kEqual, 0);
  }
  for (int x = 0; x < n; ++x) {
    if (kind_ == ObjectiveKind::kMinTotalBurn || on_boundary(x)) {
      objective_.push_back({burn_var(x, T), 1});
    }
  }
}

bool IpModel::on_boundary(int vertex) const {
  const Coordinate& c = graph_->vertex(vertex);
  return std::abs(c[0]) == radius_ || std::abs(c[1]) == radius_;
}

std::string IpModel::variable_name(int variable) const {
  const int n = graph_->vertex_count();
  const int per = horizon_ + 1;
  const bool defend = variable >= n * per;
  const int rest = defend ? variable - n * per : variable;
  return std::string(defend ? "d_" : "b_") +
         CoordName(graph_->vertex(rest / per)) + "_" +
         std::to_string(rest % per);
}

IpModel BuildMinBurnModel(int radius, int horizon, int budget) {
  if (radius < 1) throw DomainError("box radius must be at least 1");
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  if (budget < 0) throw DomainError("budget must be non-negative");
  return IpModel(radius, horizon, budget, ObjectiveKind::kMinTotalBurn, horizon);
}

IpModel BuildDeadlineModel(int radius, int horizon, int budget, int deadline) {
  if (radius < 1) throw DomainError("box radius must be at least 1");
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  if (budget < 0) throw DomainError("budget must be non-negative");
  if (deadline < 0 || deadline > horizon) {
    throw DomainError("deadline must lie in [0, T]");
  }
  return IpModel(radius, horizon, budget, ObjectiveKind::kBoundaryReach,
                 deadline);
}

std::vector<std::uint8_t> AssignmentFromSchedule(const IpModel& model,
                                                 const PlacementSchedule& schedule) {
  const LatticeGraph& g = model.graph();
  const Coordinate origin = g.vertex(g.root_index());
  const RunResult run = Run(model.graph_ptr(),
                            std::span<const Coordinate>(&origin, 1), schedule,
                            model.horizon());
  std::vector<std::uint8_t> a(model.variable_count(), 0);
  for (int x = 0; x < g.vertex_count(); ++x) {
    const int bt = run.final_state.burn_time(x);
    const int dt = run.final_state.defend_time(x);
    for (int t = 0; t <= model.horizon(); ++t) {
      a[model.burn_var(x, t)] = bt >= 0 && bt <= t;
      a[model.defend_var(x, t)] = dt >= 0 && dt <= t;
    }
  }
  return a;
}

Solution Solve(const IpModel& model, const SolveOptions& options) {
  const LatticeGraph& g = model.graph();
  const Coordinate origin = g.vertex(g.root_index());
  SearchProblem problem{FireState(model.graph_ptr(),
                                  std::span<const Coordinate>(&origin, 1)),
                        model.budget(), model.horizon(), model.deadline(),
                        SearchObjective::kTotalBurn, {}};
  if (model.objective_kind() == ObjectiveKind::kBoundaryReach) {
    problem.objective = SearchObjective::kTargetBurn;
    problem.target.assign(g.vertex_count(), 0);
    for (int x = 0; x < g.vertex_count(); ++x) {
      problem.target[x] = model.on_boundary(x);
    }
  }
  SearchOptions search;
  search.node_limit = options.node_limit;
  search.time_limit_seconds = options.time_limit_seconds;
  search.use_symmetry = options.use_symmetry;
  search.use_transpositions = options.use_transpositions;
  search.use_bounds = options.use_bounds;
  search.cancel = options.cancel;
  const SearchResult result = SearchSchedules(problem, search);

  Solution solution;
  solution.nodes = result.nodes;
  solution.wall_seconds = result.seconds;
  solution.lower = result.lower_bound;
  if (!result.has_incumbent) {
    solution.status = SolveStatus::kBound;
    solution.upper = -1;
    return solution;
  }
  solution.status = result.status == SearchStatus::kOptimal
                        ? SolveStatus::kOptimal
                        : SolveStatus::kBound;
  solution.objective = result.value;
  solution.upper = result.value;
  solution.schedule = result.schedule;
  while (!solution.schedule.steps.empty() &&
         solution.schedule.steps.back().empty()) {
    solution.schedule.steps.pop_back();
  }
  solution.contained = result.contained;
  solution.assignment = AssignmentFromSchedule(model, solution.schedule);
  return solution;
}

std::optional<PlacementSchedule> ExtractStrategy(const Solution& solution,
                                                 const IpModel& model) {
  if (static_cast<int>(solution.assignment.size()) != model.variable_count()) {
    return std::nullopt;
  }
  const LatticeGraph& g = model.graph();
  PlacementSchedule schedule;
  schedule.budget = model.budget();
  for (int t = 1; t <= model.horizon(); ++t) {
    std::vector<Coordinate> step;
    for (int x = 0; x < g.vertex_count(); ++x) {
      if (solution.assignment[model.defend_var(x, t)] &&
          !solution.assignment[model.defend_var(x, t - 1)]) {
        step.push_back(g.vertex(x));
      }
    }
    schedule.steps.push_back(std::move(step));
  }
  while (!schedule.steps.empty() && schedule.steps.back().empty()) {
    schedule.steps.pop_back();
  }
  return schedule;
}

CheckReport CheckAssignment(const IpModel& model,
                            std::span<const std::uint8_t> assignment) {
  CheckReport report;
  if (static_cast<int>(assignment.size()) != model.variable_count()) {
    report.violated.push_back("assignment size");
    return report;
  }
  report.rows_ok = true;
  for (std::uint8_t v : assignment) {
    if (v > 1) {
      report.rows_ok = false;
      report.violated.push_back("binary");
      break;
    }
  }
  for (const Constraint& row : model.constraints()) {
    long lhs = 0;
    for (const Term& term : row.terms) lhs += long{term.coefficient} * assignment[term.variable];
    const bool holds = row.sense == Sense::kGreaterEqual ? lhs >= row.rhs
                       : row.sense == Sense::kLessEqual  ? lhs <= row.rhs
                                                         : lhs == row.rhs;
    if (!holds) {
      report.rows_ok = false;
      if (report.violated.size() < kMaxViolations) report.violated.push_back(row.name);
    }
  }
  for (const Term& term : model.objective()) {
    report.objective += term.coefficient * assignment[term.variable];
  }
  if (!report.rows_ok) return report;

  // Simulating the d-increments can only burn fewer vertices than b claims.
  Solution wrapper;
  wrapper.assignment.assign(assignment.begin(), assignment.end());
  const PlacementSchedule schedule = *ExtractStrategy(wrapper, model);
  try {
    const auto simulated = AssignmentFromSchedule(model, schedule);
    report.simulation_ok = true;
    const LatticeGraph& g = model.graph();
    for (int t = 0; t <= model.horizon() && report.simulation_ok; ++t) {
      for (int x = 0; x < g.vertex_count(); ++x) {
        if (simulated[model.burn_var(x, t)] && !assignment[model.burn_var(x, t)]) {
          report.simulation_ok = false;
          report.violated.push_back("simulation burns " +
                                    model.variable_name(model.burn_var(x, t)));
          break;
        }
      }
    }
  } catch (const RuleViolation& e) {
    report.violated.push_back(std::string("simulation: ") + e.what());
  }
  return report;
}

bool VerifySolution(const IpModel& model,
                    std::span<const std::uint8_t> assignment) {
  return CheckAssignment(model, assignment).ok();
}

std::string ExportLp(const IpModel& model) {
  std::ostringstream out;
  auto write_terms = [&](const std::vector<Term>& terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i > 0 && i % kTermsPerLine == 0) out << "\n   ";
      const int c = terms[i].coefficient;
      if (i == 0) {
        out << (c < 0 ? "-" : "");
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      if (std::abs(c) != 1) out << std::abs(c) << ' ';
      out << model.variable_name(terms[i].variable);
    }
  };
  out << "\\ firebreak "
      << (model.objective_kind() == ObjectiveKind::kMinTotalBurn ? "min-burn"
                                                                 : "deadline")
      << " model: l=" << model.radius() << " T=" << model.horizon()
      << " f=" << model.budget();
  if (model.objective_kind() == ObjectiveKind::kBoundaryReach) {
    out << " deadline=" << model.deadline();
  }
  out << "\nMinimize\n obj: ";
  write_terms(model.objective());
  out << "\nSubject To\n";
  for (const Constraint& row : model.constraints()) {
    out << ' ' << row.name << ": ";
    write_terms(row.terms);
    out << (row.sense == Sense::kGreaterEqual ? " >= "
            : row.sense == Sense::kLessEqual  ? " <= "
                                              : " = ")
        << row.rhs << '\n';
  }
  out << "Binaries\n";
  for (int v = 0; v < model.variable_count(); ++v) {
    out << ' ' << model.variable_name(v);
    if ((v + 1) % kTermsPerLine == 0 || v + 1 == model.variable_count()) out << '\n';
  }
  out << "End\n";
  return out.str();
}

}  // namespace firebreak
