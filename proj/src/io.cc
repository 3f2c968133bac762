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

#include "firebreak/io.h"

#include <vector>

#include "firebreak/errors.h"

namespace firebreak {
namespace {

template <typename... Visitors>
struct Overloaded : Visitors... {
  using Visitors::operator()...;
};

void CheckSchema(const Json& j) {
  if (!j.is_object()) throw DomainError("expected a JSON object");
  if (j.contains("schema") && j.at("schema") != kSchemaVersion) {
    throw DomainError("unsupported schema version " + j.at("schema").dump());
  }
}

const Json& Member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

// nlohmann's type_error becomes DomainError with the field name.
template <typename T>
T Get(const Json& j, const char* key) {
  try {
    return Member(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DomainError(std::string("field \"") + key + "\" has the wrong type");
  }
}

template <typename T>
T GetOr(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? Get<T>(j, key) : fallback;
}

Json Placements(const std::vector<Coordinate>& placements) {
  Json out = Json::array();
  for (const Coordinate& v : placements) out.push_back(CoordinateToJson(v));
  return out;
}

std::vector<Coordinate> PlacementsFromJson(const Json& j) {
  if (!j.is_array()) throw DomainError("placements must be an array");
  std::vector<Coordinate> out;
  for (const Json& v : j) out.push_back(CoordinateFromJson(v));
  return out;
}

Json CounterexampleToJson(const Counterexample& c) {
  return {{"set", Placements(c.set)},
          {"sequence", c.sequence},
          {"required", c.required},
          {"actual", c.actual}};
}

}  // namespace

Json CoordinateToJson(const Coordinate& v) {
  return Json(std::vector<int>(v.entries().begin(), v.entries().end()));
}

Coordinate CoordinateFromJson(const Json& j) {
  if (!j.is_array() || j.empty() || j.size() > kMaxDimension) {
    throw DomainError("a coordinate is an array of 1.." +
                      std::to_string(kMaxDimension) + " integers");
  }
  std::vector<int> entries;
  for (const Json& x : j) {
    if (!x.is_number_integer()) throw DomainError("coordinate entries must be integers");
    entries.push_back(x.get<int>());
  }
  return Coordinate(entries);
}

Json SpecToJson(const LatticeSpec& spec) {
  Json j{{"geometry", spec.GeometryName()}, {"dimension", spec.dimension()}};
  std::visit(Overloaded{
                 [&](const BoxLattice& g) {
                   j["radius"] = g.radius;
                   j["root"] = CoordinateToJson(spec.root());
                 },
                 [&](const OctantGraph& g) { j["radius"] = g.radius; },
                 [&](const PathGrid& g) {
                   j["side"] = g.side;
                   j["root"] = CoordinateToJson(spec.root());
                 },
                 [&](const QuotientRoot& g) {
                   j["shell"] = g.shell;
                   j["outer_radius"] = g.outer_radius;
                 },
             },
             spec.geometry());
  return j;
}

LatticeSpec SpecFromJson(const Json& j) {
  CheckSchema(j);
  const auto geometry = Get<std::string>(j, "geometry");
  const int d = Get<int>(j, "dimension");
  if (d < 1 || d > kMaxDimension) throw DomainError("dimension out of range");
  auto root = [&] {
    return j.contains("root") ? CoordinateFromJson(j.at("root")) : Coordinate::Zero(d);
  };
  if (geometry == "box") return LatticeSpec::Box(d, Get<int>(j, "radius"), root());
  if (geometry == "octant") return LatticeSpec::Octant(d, Get<int>(j, "radius"));
  if (geometry == "grid") return LatticeSpec::Grid(d, Get<int>(j, "side"), root());
  if (geometry == "quotient") {
    return LatticeSpec::Quotient(d, Get<int>(j, "shell"), Get<int>(j, "outer_radius"));
  }
  throw DomainError("unknown geometry \"" + geometry + "\"");
}

Json ScheduleToJson(const PlacementSchedule& schedule) {
  Json steps = Json::array();
  for (const auto& step : schedule.steps) steps.push_back(Placements(step));
  return {{"schema", kSchemaVersion}, {"f", schedule.budget}, {"steps", steps}};
}

PlacementSchedule ScheduleFromJson(const Json& j) {
  CheckSchema(j);
  PlacementSchedule schedule;
  schedule.budget = Get<int>(j, "f");
  if (schedule.budget < 0) throw DomainError("f must be nonnegative");
  const Json& steps = Member(j, "steps");
  if (!steps.is_array()) throw DomainError("steps must be an array");
  for (const Json& step : steps) schedule.steps.push_back(PlacementsFromJson(step));
  schedule.Validate();
  return schedule;
}

Json StateToJson(const FireState& state) {
  Json burnt = Json::array();
  Json defended = Json::array();
  const LatticeGraph& g = state.graph();
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (state.burnt_at(i)) {
      burnt.push_back({{"v", CoordinateToJson(g.vertex(i))}, {"t", state.burn_time(i)}});
    } else if (state.defended_at(i)) {
      defended.push_back({{"v", CoordinateToJson(g.vertex(i))}, {"t", state.defend_time(i)}});
    }
  }
  return {{"time", state.time()},
          {"burnt", burnt},
          {"defended", defended},
          {"burnt_count", state.burnt_count()},
          {"defended_count", state.defended_count()},
          {"saved_count", SavedVertices(state).size()},
          {"contained", IsContained(state)},
          {"boundary_contaminated", state.boundary_contaminated()}};
}

Json TraceToJson(const SimulationTrace& trace) {
  Json records = Json::array();
  for (const StepRecord& r : trace.records) {
    records.push_back({{"step", r.step},
                       {"placements", Placements(r.placements)},
                       {"p_in_next_shell", r.p_in_next_shell},
                       {"p_reserve_spent", r.p_reserve_spent},
                       {"burnt_in_shell", r.burnt_in_shell},
                       {"reserve", r.reserve},
                       {"burnt_total", r.burnt_total},
                       {"defended_total", r.defended_total},
                       {"contained", r.contained}});
  }
  return {{"schema", kSchemaVersion},
          {"budget", trace.budget},
          {"records", records},
          {"contained_at", trace.contained_at ? Json(*trace.contained_at) : Json(nullptr)},
          {"boundary_contaminated", trace.boundary_contaminated}};
}

SimulationTrace TraceFromJson(const Json& j) {
  CheckSchema(j);
  SimulationTrace trace;
  trace.budget = Get<int>(j, "budget");
  for (const Json& r : Member(j, "records")) {
    StepRecord record;
    record.step = Get<int>(r, "step");
    record.placements = PlacementsFromJson(Member(r, "placements"));
    record.p_in_next_shell = Get<std::int64_t>(r, "p_in_next_shell");
    record.p_reserve_spent = Get<std::int64_t>(r, "p_reserve_spent");
    record.burnt_in_shell = Get<std::int64_t>(r, "burnt_in_shell");
    record.reserve = Get<std::int64_t>(r, "reserve");
    record.burnt_total = Get<std::int64_t>(r, "burnt_total");
    record.defended_total = Get<std::int64_t>(r, "defended_total");
    record.contained = Get<bool>(r, "contained");
    trace.records.push_back(std::move(record));
  }
  const Json& at = Member(j, "contained_at");
  if (!at.is_null()) trace.contained_at = Get<int>(j, "contained_at");
  trace.boundary_contaminated = Get<bool>(j, "boundary_contaminated");
  return trace;
}

Json ReportToJson(const ExpansionReport& r) {
  return {{"schema", kSchemaVersion},
          {"check", r.check},
          {"dimension", r.dimension},
          {"shell", r.shell},
          {"size_min", r.size_min},
          {"size_max", r.size_max},
          {"extra", r.extra},
          {"orthant_only", r.orthant_only},
          {"exhaustive", r.exhaustive},
          {"subsets_checked", r.subsets_checked},
          {"seed", r.seed},
          {"ok", r.ok()},
          {"counterexample", r.counterexample ? CounterexampleToJson(*r.counterexample)
                                              : Json(nullptr)}};
}

Json ReportToJson(const TrajectoryReport& r) {
  Json violation(nullptr);
  if (r.first_violation) {
    const auto& v = *r.first_violation;
    violation = {{"policy", v.policy},       {"seed", v.seed},
                 {"step", v.step},           {"burnt_in_shell", v.burnt_in_shell},
                 {"reserve", v.reserve},     {"bound", v.bound}};
  }
  Json hypothesis = Json::array();
  for (const auto& h : r.hypothesis_reports) hypothesis.push_back(ReportToJson(h));
  return {{"schema", kSchemaVersion},
          {"check", r.check},
          {"runs", r.runs},
          {"steps_checked", r.steps_checked},
          {"violations", r.violations},
          {"first_violation", violation},
          {"hypothesis_checked", r.hypothesis_checked},
          {"hypothesis_holds", r.hypothesis_holds},
          {"hypothesis_reports", hypothesis},
          {"ok", r.ok()}};
}

HallConfig HallConfigFromJson(const Json& j) {
  CheckSchema(j);
  HallConfig config;
  if (j.contains("spec")) config.spec = SpecFromJson(j.at("spec"));
  const Json& hyp = Member(j, "hypothesis");
  config.hypothesis.f = Get<int>(hyp, "f");
  config.hypothesis.h = Get<int>(hyp, "h");
  config.hypothesis.a = Get<std::vector<int>>(hyp, "a");
  config.hypothesis.Validate();
  config.seed = Get<std::uint64_t>(j, "seed");
  config.horizon = GetOr(j, "horizon", config.horizon);
  config.runs = GetOr(j, "runs", config.runs);
  config.greedy = GetOr(j, "greedy", config.greedy);
  config.verify_shells = GetOr(j, "verify_shells", config.verify_shells);
  config.verify_options.budget = GetOr(j, "budget", config.verify_options.budget);
  config.verify_options.workers = GetOr(j, "workers", config.verify_options.workers);
  config.verify_options.seed = config.seed;
  if (config.horizon < 0 || config.runs < 0) {
    throw DomainError("horizon and runs must be nonnegative");
  }
  return config;
}

Json SolutionToJson(const Solution& s) {
  return {{"schema", kSchemaVersion},
          {"status", StatusName(s.status)},
          {"objective", s.status == SolveStatus::kInfeasible ? Json(nullptr)
                                                              : Json(s.objective)},
          {"lower", s.lower},
          {"upper", s.upper},
          {"schedule", ScheduleToJson(s.schedule)},
          {"contained", s.contained},
          {"nodes", s.nodes}};
}

Json FirewallToJson(const Firewall& wall) {
  return {{"schema", kSchemaVersion},
          {"spec", SpecToJson(wall.spec)},
          {"k", wall.k},
          {"predicted_saved", wall.predicted_saved},
          {"schedule", ScheduleToJson(wall.schedule)}};
}

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace firebreak
