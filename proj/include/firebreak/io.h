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

// JSON documents shared by the CLI, the service and the data files.
//
// Every top-level document carries "schema": 1. Readers accept documents
// without the field and reject any other version with DomainError, as they do
// for missing or mistyped members.

#ifndef FIREBREAK_IO_H_
#define FIREBREAK_IO_H_

#include <string>

#include "json.hpp"
#include "firebreak/expansion.h"
#include "firebreak/lattice.h"
#include "firebreak/optimize.h"
#include "firebreak/simulation.h"
#include "firebreak/strategies.h"

namespace firebreak {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json CoordinateToJson(const Coordinate& v);
Coordinate CoordinateFromJson(const Json& j);

// {"geometry": "box", "dimension": 2, "radius": 10, "root": [0, 0]}, with
// "side" for grid and "shell" / "outer_radius" for quotient.
Json SpecToJson(const LatticeSpec& spec);
LatticeSpec SpecFromJson(const Json& j);

// {"schema": 1, "f": 2, "steps": [[[x, y], ...], ...]}
Json ScheduleToJson(const PlacementSchedule& schedule);
PlacementSchedule ScheduleFromJson(const Json& j);

Json StateToJson(const FireState& state);
Json TraceToJson(const SimulationTrace& trace);
SimulationTrace TraceFromJson(const Json& j);

Json ReportToJson(const ExpansionReport& report);
Json ReportToJson(const TrajectoryReport& report);
// {"schema": 1, "spec": ..., "hypothesis": {"f", "h", "a"}, "horizon",
// "seed", "runs", "greedy", "verify_shells", "budget", "workers"}; only
// "hypothesis" and "seed" are required.
HallConfig HallConfigFromJson(const Json& j);

Json SolutionToJson(const Solution& solution);
Json FirewallToJson(const Firewall& wall);

// Parses text, mapping parse errors to DomainError.
Json ParseJson(const std::string& text);

}  // namespace firebreak

#endif  // FIREBREAK_IO_H_
