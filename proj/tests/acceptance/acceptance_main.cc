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

// Acceptance run: one PASS/FAIL line per primary criterion.
//
//   acceptance [--tier fast|slow]
//
// The fast tier covers everything except the external LP cross-check, which
// needs python3 with highspy and about a minute. Exit status is 0 only when
// every line passes.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "firebreak/expansion.h"
#include "firebreak/optimize.h"
#include "firebreak/rng.h"
#include "firebreak/simulation.h"
#include "firebreak/strategies.h"
#include "../oracles.h"

namespace firebreak {
namespace {

// Time budgets, in seconds.
constexpr double kFastReplayBudget = 1.0;
constexpr double kMinBurnBudget = 4 * 3600.0;
constexpr double kDeadlineBudget = 2 * 3600.0;
constexpr double kLemmaBudget = 5 * 60.0;
constexpr double kTrajectoryBudget = 2 * 60.0;
constexpr double kFirewallBudget = 60.0;
constexpr double kOracleBudget = 10 * 60.0;
// The simulator criterion has no stated budget; this only guards hangs.
constexpr double kSimulatorBudget = 10 * 60.0;
constexpr double kExternalLpBudget = 4 * 3600.0;

// Exact integer criteria need no tolerance; counts compare with ==.
constexpr int kOptimalBurn = 18;
constexpr int kContainStep = 8;
constexpr int kSimulatorStates = 10'000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void Criterion(const std::string& name, double budget, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > budget) {
    o.pass = false;
    o.detail += " [over budget " + std::to_string(budget) + " s]";
  }
  if (!o.pass) ++failures;
  std::printf("%s  %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
              seconds);
  std::fflush(stdout);
}

std::string Str(std::int64_t v) { return std::to_string(v); }

Outcome FastReplay() {
  const auto g = LatticeGraph::Make(LatticeSpec::Box(2, 20));
  const std::vector<Coordinate> origin{Coordinate{0, 0}};
  const RunResult run = Run(g, origin, OptimalTwoDimensional(), 12);
  const auto burnt = run.final_state.burnt_count();
  const int at = run.trace.contained_at.value_or(-1);
  return {burnt == kOptimalBurn && at == kContainStep && !run.trace.boundary_contaminated,
          "burnt " + Str(burnt) + ", contained at " + Str(at)};
}

Outcome MinBurn() {
  const Solution s = Solve(BuildMinBurnModel(6, 9, 2));
  return {s.status == SolveStatus::kOptimal && s.objective == kOptimalBurn,
          std::string("status ") + StatusName(s.status) + ", value " + Str(s.objective) + ", " +
              Str(s.nodes) + " nodes"};
}

Outcome ExternalLp() {
  const auto dir = std::filesystem::temp_directory_path();
  const auto lp = dir / "firebreak_acceptance_l6_T9_f2.lp";
  std::ofstream(lp) << ExportLp(BuildMinBurnModel(6, 9, 2));
  const std::string script = std::string(FIREBREAK_SOURCE_DIR) + "/tests/highs_check.py";
  const std::string command = "python3 '" + script + "' '" + lp.string() + "' " +
                              Str(kOptimalBurn) + " 14400 > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  std::filesystem::remove(lp);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (code == 77) return {false, "highspy is not installed, external check not run"};
  return {code == 0, code == 0 ? "HiGHS optimum 18 on the exported LP"
                               : "HiGHS disagreed or failed, exit " + Str(code)};
}

Outcome Deadline() {
  const Solution seven = Solve(BuildDeadlineModel(6, 9, 2, 7));
  const Solution eight = Solve(BuildDeadlineModel(6, 9, 2, 8));
  const bool ok = seven.status == SolveStatus::kOptimal && seven.objective == 1 &&
                  eight.status == SolveStatus::kOptimal && eight.objective == 0;
  return {ok, "deadline 7 -> " + Str(seven.objective) + " (" + StatusName(seven.status) +
                  "), deadline 8 -> " + Str(eight.objective) + " (" + StatusName(eight.status) +
                  ")"};
}

Outcome Lemmas() {
  std::ostringstream detail;
  bool ok = true;
  auto take = [&](const ExpansionReport& r) {
    ok = ok && r.ok() && r.exhaustive;
    detail << r.check << " d" << r.dimension << " k" << r.shell << " "
           << (r.ok() ? "ok" : "COUNTEREXAMPLE") << (r.exhaustive ? "" : " (sampled)") << "; ";
  };
  for (int d = 3; d <= 5; ++d) take(CheckFirstShell(d));
  // Every subset size the budget can exhaust: all of D_1 and D_2, up to 6 on D_3.
  take(CheckFrontGrowth(3, 1, 4, 6));
  take(CheckFrontGrowth(3, 2, 4, 18));
  take(CheckFrontGrowth(3, 3, 4, 6));
  for (int f = 2; f <= 4; ++f) {
    for (int k = 1; k <= 4; ++k) {
      const auto r = CheckGrowthL3(f, k, 8);
      ok = ok && r.ok() && r.exhaustive;
    }
  }
  detail << "growth-l3 f2..4 k1..4 ok; ";
  for (int f = 1; f <= 6; ++f) {
    const auto r = CheckSigmaClaim(f, 5, 5);
    ok = ok && r.ok();
  }
  const auto g = SigmaExcess(std::vector<int>{4, 3, 2, 1});
  ok = ok && g == 5;
  detail << "sigma f<=6 ok; g(4,3,2,1) = " << g;
  return {ok, detail.str()};
}

Outcome Hall() {
  HallConfig config;
  config.spec = LatticeSpec::Box(3, 9);
  config.hypothesis = HallHypothesis{4, 1, {5, 6}};
  config.horizon = 8;
  config.seed = 0;
  config.runs = 1000;
  const TrajectoryReport r = CheckHallTrajectory(config);
  return {r.ok() && r.runs >= 1000,
          Str(r.runs) + " policies, " + Str(r.steps_checked) + " steps, " + Str(r.violations) +
              " violations"};
}

Outcome Octant() {
  const TrajectoryReport r = CheckOctantClaim(4, 0, 500, true);
  return {r.ok() && r.runs >= 500, Str(r.runs) + " policies, " + Str(r.violations) +
                                       " violations"};
}

Outcome Firewall() {
  std::ostringstream detail;
  bool ok = true;
  for (int n : {10, 20, 40}) {
    const firebreak::Firewall w = FirewallStrategy(n);
    const std::vector<Coordinate> origin{Coordinate{0, 0, 0}};
    const RunResult run = Run(LatticeGraph::Make(w.spec), origin, w.schedule, 3 * n);
    const auto unburnt =
        static_cast<std::int64_t>(run.final_state.graph().vertex_count()) -
        run.final_state.burnt_count();
    const std::int64_t formula = std::int64_t{w.k + 1} * (w.k + 2) * (w.k + 3) / 6;
    ok = ok && unburnt == formula && unburnt == w.predicted_saved;
    if (n == 10) ok = ok && unburnt == 56;
    detail << "n=" << n << " k=" << w.k << " saved " << unburnt << "/" << formula << "; ";
  }
  return {ok, detail.str()};
}

Outcome SolverOracle() {
  std::int64_t instances = 0;
  std::ostringstream mismatch;
  for (int l = 1; l <= 2; ++l) {
    const oracles::BurntSetOracle oracle(l);
    for (int T = 1; T <= 4; ++T) {
      for (int f = 0; f <= 2; ++f) {
        const Solution s = Solve(BuildMinBurnModel(l, T, f));
        ++instances;
        if (s.status != SolveStatus::kOptimal || s.objective != oracle.Optimum(T, f, T, false)) {
          mismatch << " min-burn l" << l << " T" << T << " f" << f;
        }
        for (int deadline = 0; deadline <= T; ++deadline) {
          const Solution d = Solve(BuildDeadlineModel(l, T, f, deadline));
          ++instances;
          if (d.status != SolveStatus::kOptimal ||
              d.objective != oracle.Optimum(T, f, deadline, true)) {
            mismatch << " deadline l" << l << " T" << T << " f" << f << " D" << deadline;
          }
        }
      }
    }
  }
  // Literal enumeration of every legal schedule where it is affordable.
  for (int T = 1; T <= 3; ++T) {
    for (int f = 0; f <= 2; ++f) {
      const IpModel m = BuildMinBurnModel(1, T, f);
      const Coordinate root{0, 0};
      const FireState start(m.graph_ptr(), std::span<const Coordinate>(&root, 1));
      ++instances;
      if (Solve(m).objective != oracles::BruteForce(start, f, T, T, nullptr)) {
        mismatch << " literal l1 T" << T << " f" << f;
      }
    }
  }
  const std::string bad = mismatch.str();
  return {bad.empty(), Str(instances) + " instances" + (bad.empty() ? ", all equal" : ", mismatch:" + bad)};
}

Outcome Simulator() {
  Rng rng(20261016);
  std::int64_t states = 0, mismatches = 0;
  while (states < kSimulatorStates) {
    const int d = 2 + static_cast<int>(rng.Below(2));
    const auto g = LatticeGraph::Make(LatticeSpec::Box(d, 3));
    std::set<Coordinate> burnt, defended;
    for (int i = 0; i < g->vertex_count(); ++i) {
      const auto roll = rng.Below(10);
      if (roll < 2) {
        burnt.insert(g->vertex(i));
      } else if (roll < 4) {
        defended.insert(g->vertex(i));
      }
    }
    if (burnt.empty()) continue;
    const std::vector<Coordinate> bv(burnt.begin(), burnt.end());
    const std::vector<Coordinate> dv(defended.begin(), defended.end());
    const auto got = Spread(FireState::FromSets(g, bv, dv, 0)).Burnt();
    mismatches += std::set<Coordinate>(got.begin(), got.end()) !=
                  oracles::Spread(g->spec(), burnt, defended);
    ++states;
  }
  std::int64_t traces = 0, broken = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int d = 2 + static_cast<int>(seed % 2);
    const auto g = LatticeGraph::Make(LatticeSpec::Box(d, d == 2 ? 9 : 6));
    const std::vector<Coordinate> origin{Coordinate::Zero(d)};
    const int f = 1 + static_cast<int>(seed % 4);
    const RunResult run = Run(g, origin, RandomPolicy(g, origin, f, 8, seed), 8);
    ++traces;
    broken += !run.trace.ReserveInequalityHolds();
  }
  return {mismatches == 0 && broken == 0,
          Str(states) + " random states, " + Str(mismatches) + " spread mismatches; " +
              Str(traces) + " traces, " + Str(broken) + " reserve-inequality failures"};
}

int Main(int argc, char** argv) {
  std::string tier = "fast";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--tier" && i + 1 < argc) {
      tier = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--tier fast|slow]\n";
      return 2;
    }
  }
  if (tier != "fast" && tier != "slow") {
    std::cerr << "tier must be fast or slow\n";
    return 2;
  }
  Criterion("optimal burn, stored schedule replay", kFastReplayBudget, FastReplay);
  Criterion("optimal burn, min-burn l=6 T=9 f=2 solve", kMinBurnBudget, MinBurn);
  if (tier == "slow") {
    Criterion("optimal burn, exported LP through an external solver", kExternalLpBudget,
              ExternalLp);
  }
  Criterion("seven-step impossibility, deadline 7 and 8", kDeadlineBudget, Deadline);
  Criterion("lemma suite, exhaustive", kLemmaBudget, Lemmas);
  Criterion("hall trajectory property, Z^3 f=4", kTrajectoryBudget, Hall);
  Criterion("octant claim, n=4", kTrajectoryBudget, Octant);
  Criterion("fire wall saved counts", kFirewallBudget, Firewall);
  Criterion("solver oracle equivalence, l<=2 T<=4 f<=2", kOracleBudget, SolverOracle);
  Criterion("simulator oracle and reserve inequality", kSimulatorBudget, Simulator);
  std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace firebreak

int main(int argc, char** argv) { return firebreak::Main(argc, argv); }
