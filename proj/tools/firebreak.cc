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

// firebreak: command-line entry point.
//
// Exit codes: 0 success, 1 domain error or failed check, 2 usage error.
// With --json exactly one JSON document goes to standard output; logs go to
// standard error at the level named by FIREBREAK_LOG (default warn).

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <thread>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "firebreak/errors.h"
#include "firebreak/expansion.h"
#include "firebreak/io.h"
#include "firebreak/optimize.h"
#include "firebreak/service.h"
#include "firebreak/simulation.h"
#include "firebreak/strategies.h"
#include "httplib.h"

namespace firebreak {
namespace {

struct Output {
  bool json = false;

  // Prints `doc` in JSON mode, `text` otherwise.
  void Emit(const Json& doc, const std::string& text) const {
    if (json) {
      std::cout << doc.dump(2) << '\n';
    } else {
      std::cout << text;
    }
  }
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw DomainError("cannot write " + path);
}

// Inline JSON when the argument starts with '{' or '[', else a file path.
Json JsonArgument(const std::string& argument) {
  const auto first = argument.find_first_not_of(" \t\n");
  if (first != std::string::npos && (argument[first] == '{' || argument[first] == '[')) {
    return ParseJson(argument);
  }
  return ParseJson(ReadFile(argument));
}

std::pair<int, int> ParseRange(const std::string& text) {
  static const std::regex pattern(R"((\d+)(?:\.\.(\d+))?)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw CLI::ValidationError("--sizes", "expected N or A..B, got " + text);
  }
  const int a = std::stoi(m[1]);
  const int b = m[2].matched ? std::stoi(m[2]) : a;
  if (b < a) throw CLI::ValidationError("--sizes", "empty range " + text);
  return {a, b};
}

std::string Describe(const Counterexample& c) {
  std::string out = "counterexample:";
  for (const auto& v : c.set) out += " " + v.ToString();
  for (int s : c.sequence) out += " " + std::to_string(s);
  out += " (needs " + std::to_string(c.required) + ", has " + std::to_string(c.actual) + ")";
  return out;
}

std::string Describe(const ExpansionReport& r) {
  std::ostringstream out;
  out << r.check << ": " << r.subsets_checked << " cases, "
      << (r.exhaustive ? "exhaustive" : "sampled (seed " + std::to_string(r.seed) + ")")
      << ", " << (r.ok() ? "no counterexample" : Describe(*r.counterexample)) << '\n';
  return out.str();
}

std::string Describe(const TrajectoryReport& r) {
  std::ostringstream out;
  for (const auto& h : r.hypothesis_reports) out << "  " << Describe(h);
  out << r.check << ": " << r.runs << " runs, " << r.steps_checked << " steps, "
      << r.violations << " violations\n";
  if (r.first_violation) {
    const auto& v = *r.first_violation;
    out << "first violation: " << v.policy << " seed " << v.seed << " step " << v.step
        << ": B = " << v.burnt_in_shell << " < " << v.bound << '\n';
  }
  return out.str();
}

std::string Describe(const PlacementSchedule& s) {
  std::ostringstream out;
  for (std::size_t t = 0; t < s.steps.size(); ++t) {
    out << "  step " << t + 1 << ":";
    for (const auto& v : s.steps[t]) out << ' ' << v.ToString();
    out << '\n';
  }
  return out.str();
}

int Simulate(const Output& out, const std::optional<std::string>& spec_arg,
             const std::optional<std::string>& schedule_arg,
             const std::optional<std::string>& strategy, int n, int f,
             std::optional<int> horizon, const std::optional<std::string>& outbreak_arg,
             const std::optional<std::string>& trace_out) {
  PlacementSchedule schedule;
  std::optional<LatticeSpec> spec;
  if (spec_arg) spec = SpecFromJson(JsonArgument(*spec_arg));
  if (schedule_arg) {
    schedule = ScheduleFromJson(JsonArgument(*schedule_arg));
  } else if (*strategy == "optimal-2d") {
    schedule = OptimalTwoDimensional();
  } else if (*strategy == "firewall") {
    Firewall wall = FirewallStrategy(n);
    schedule = wall.schedule;
    if (!spec) spec = wall.spec;
    if (!horizon) horizon = 3 * n;
  } else if (*strategy != "greedy") {
    throw CLI::ValidationError("--strategy", "unknown strategy " + *strategy);
  }

  int dimension = 2;
  for (const auto& step : schedule.steps) {
    if (!step.empty()) dimension = step.front().dimension();
  }
  if (!spec) spec = LatticeSpec::Box(dimension, 10);
  const auto graph = LatticeGraph::Make(*spec);
  std::vector<Coordinate> outbreak{spec->root()};
  if (outbreak_arg) {
    outbreak.clear();
    for (const Json& v : JsonArgument(*outbreak_arg)) outbreak.push_back(CoordinateFromJson(v));
  }
  if (strategy && *strategy == "greedy") {
    schedule = GreedyFrontierPolicy(graph, outbreak, f, horizon.value_or(10));
  }
  const int steps = horizon.value_or(static_cast<int>(schedule.steps.size()));
  if (steps < 0) throw DomainError("horizon must be nonnegative");

  const RunResult run = Run(graph, outbreak, schedule, steps);
  const FireState& s = run.final_state;
  const auto saved = SavedVertices(s).size();
  const Json trace = TraceToJson(run.trace);
  if (trace_out) WriteFile(*trace_out, trace.dump(2) + "\n");

  std::ostringstream text;
  text << "burnt " << s.burnt_count() << ", defended " << s.defended_count() << ", saved "
       << saved << ", unburnt " << graph->vertex_count() - s.burnt_count() << '\n';
  if (run.trace.contained_at) {
    text << "contained at step " << *run.trace.contained_at << '\n';
  } else {
    text << "not contained after " << steps << " steps\n";
  }
  if (run.trace.boundary_contaminated) text << "warning: fire reached the box surface\n";
  out.Emit({{"schema", kSchemaVersion},
            {"spec", SpecToJson(*spec)},
            {"horizon", steps},
            {"burnt", s.burnt_count()},
            {"defended", s.defended_count()},
            {"saved", saved},
            {"unburnt", graph->vertex_count() - s.burnt_count()},
            {"contained_at", run.trace.contained_at ? Json(*run.trace.contained_at) : Json()},
            {"boundary_contaminated", run.trace.boundary_contaminated},
            {"schedule", ScheduleToJson(schedule)},
            {"trace", trace}},
           text.str());
  return 0;
}

struct SolveArgs {
  int l = 6;
  int T = 9;
  int f = 2;
  int deadline = -1;
  std::optional<std::string> export_lp;
  std::optional<std::int64_t> node_limit;
  std::optional<double> time_limit;
  int workers = 1;
};

IpModel BuildModel(const SolveArgs& a, bool deadline_mode) {
  return deadline_mode ? BuildDeadlineModel(a.l, a.T, a.f, a.deadline)
                       : BuildMinBurnModel(a.l, a.T, a.f);
}

int SolveCommand(const Output& out, const SolveArgs& a, bool deadline_mode) {
  const IpModel model = BuildModel(a, deadline_mode);
  if (a.export_lp) WriteFile(*a.export_lp, ExportLp(model));
  SolveOptions options;
  options.node_limit = a.node_limit;
  options.time_limit_seconds = a.time_limit;
  options.workers = a.workers;
  spdlog::info("solving: l={} T={} f={} deadline={}", a.l, a.T, a.f, model.deadline());
  const Solution solution = Solve(model, options);
  spdlog::info("{} nodes in {:.3f} s", solution.nodes, solution.wall_seconds);

  Json doc = SolutionToJson(solution);
  doc["model"] = {{"objective", deadline_mode ? "boundary-reach" : "min-burn"},
                  {"l", a.l},
                  {"T", a.T},
                  {"f", a.f},
                  {"deadline", model.deadline()},
                  {"variables", model.variable_count()},
                  {"constraints", model.constraints().size()}};
  doc["verified"] = solution.assignment.empty()
                        ? Json()
                        : Json(VerifySolution(model, solution.assignment));
  // The model lives in a finite box; say so when the schedule leans on it.
  const std::vector<Coordinate> origin{Coordinate::Zero(2)};
  const RunResult run = Run(model.graph_ptr(), origin, solution.schedule, model.horizon());
  doc["boundary_contaminated"] = run.trace.boundary_contaminated;
  std::ostringstream text;
  text << "status " << StatusName(solution.status) << ", objective " << solution.objective
       << " (lower " << solution.lower << ", upper " << solution.upper << "), " << solution.nodes
       << " nodes\n";
  if (!solution.schedule.steps.empty()) {
    text << "schedule" << (solution.contained ? " (contains the fire)" : "") << ":\n"
         << Describe(solution.schedule);
  }
  if (run.trace.boundary_contaminated) {
    text << "note: the fire reaches the box surface under this schedule\n";
  }
  out.Emit(doc, text.str());
  return 0;
}

int ExportCommand(const Output& out, const SolveArgs& a, const std::optional<std::string>& path) {
  const bool deadline_mode = a.deadline >= 0;
  const IpModel model = BuildModel(a, deadline_mode);
  const std::string lp = ExportLp(model);
  if (!path) {
    if (out.json) throw CLI::ValidationError("--out", "required with --json");
    std::cout << lp;
    return 0;
  }
  WriteFile(*path, lp);
  out.Emit({{"schema", kSchemaVersion},
            {"path", *path},
            {"variables", model.variable_count()},
            {"constraints", model.constraints().size()}},
           "wrote " + *path + " (" + std::to_string(model.variable_count()) + " variables, " +
               std::to_string(model.constraints().size()) + " constraints)\n");
  return 0;
}

int Report(const Output& out, const ExpansionReport& r) {
  out.Emit(ReportToJson(r), Describe(r));
  return r.ok() ? 0 : 1;
}

int Report(const Output& out, const TrajectoryReport& r) {
  out.Emit(ReportToJson(r), Describe(r));
  return r.ok() && (!r.hypothesis_checked || r.hypothesis_holds) ? 0 : 1;
}

int Serve(const std::string& host, int port, const ServiceOptions& options) {
  // Block termination signals in every thread so sigwait below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Service service(options);
  const int recovered = service.Recover();
  if (recovered > 0) spdlog::info("recovered {} sessions", recovered);
  httplib::Server server;
  service.Register(server);
  const int bound = port == 0 ? server.bind_to_any_port(host) : server.bind_to_port(host, port);
  if (bound < 0 || (port != 0 && !bound)) throw DomainError("cannot bind " + host);
  const int actual = port == 0 ? bound : port;
  std::cout << "listening on http://" << host << ":" << actual << std::endl;
  std::thread listener([&] { server.listen_after_bind(); });
  int received = 0;
  sigwait(&signals, &received);
  spdlog::info("signal {}, shutting down", received);
  server.stop();
  listener.join();
  return 0;
}

void ConfigureLogging() {
  auto logger = spdlog::stderr_color_mt("firebreak");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("FIREBREAK_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

int Main(int argc, char** argv) {
  ConfigureLogging();
  CLI::App app{"Firefighter problem toolkit: simulation, exact solving, expansion checks."};
  app.name("firebreak");
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--json", out.json, "emit a single JSON document");
  int exit_code = 0;

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run a schedule through the simulator");
  std::optional<std::string> spec_arg, schedule_arg, strategy, outbreak_arg, trace_out;
  std::optional<int> horizon;
  int n = 10, sim_f = 2;
  simulate->add_option("--spec", spec_arg, "lattice spec: JSON text or file");
  auto* schedule_opt = simulate->add_option("--schedule", schedule_arg, "schedule JSON file");
  auto* strategy_opt = simulate->add_option("--strategy", strategy, "optimal-2d, firewall, greedy")
                           ->check(CLI::IsMember({"optimal-2d", "firewall", "greedy"}));
  schedule_opt->excludes(strategy_opt);
  simulate->add_option("--n", n, "fire wall grid size")->check(CLI::PositiveNumber);
  simulate->add_option("--f", sim_f, "greedy budget")->check(CLI::NonNegativeNumber);
  simulate->add_option("--horizon", horizon, "steps to run");
  simulate->add_option("--outbreak", outbreak_arg, "JSON array of burning vertices");
  simulate->add_option("--trace-out", trace_out, "write the trace JSON here");
  simulate->callback([&] {
    if (!schedule_arg && !strategy) {
      throw CLI::RequiredError("--schedule or --strategy");
    }
    exit_code = Simulate(out, spec_arg, schedule_arg, strategy, n, sim_f, horizon, outbreak_arg,
                         trace_out);
  });

  // solve
  auto* solve = app.add_subcommand("solve", "exact optimisation");
  solve->require_subcommand(1);
  SolveArgs solve_args;
  auto add_model_options = [&](CLI::App* cmd, SolveArgs& a) {
    cmd->add_option("--l", a.l, "box radius")->capture_default_str();
    cmd->add_option("--T", a.T, "horizon")->capture_default_str();
    cmd->add_option("--f", a.f, "firefighters per step")->capture_default_str();
  };
  auto add_solver_options = [&](CLI::App* cmd, SolveArgs& a) {
    add_model_options(cmd, a);
    cmd->add_option("--export-lp", a.export_lp, "also write the model in LP format");
    cmd->add_option("--node-limit", a.node_limit, "stop after this many nodes");
    cmd->add_option("--time-limit", a.time_limit, "stop after this many seconds");
    cmd->add_option("--workers", a.workers, "worker cap")->check(CLI::PositiveNumber);
  };
  auto* min_burn = solve->add_subcommand("min-burn", "minimise the burnt count at T");
  add_solver_options(min_burn, solve_args);
  min_burn->callback([&] { exit_code = SolveCommand(out, solve_args, false); });
  auto* deadline = solve->add_subcommand("deadline", "minimise boundary burns, no placements after the deadline");
  add_solver_options(deadline, solve_args);
  deadline->add_option("--deadline", solve_args.deadline, "last step with placements")->required();
  deadline->callback([&] { exit_code = SolveCommand(out, solve_args, true); });

  // export-lp
  auto* export_lp = app.add_subcommand("export-lp", "write the integer program in LP format");
  SolveArgs export_args;
  std::optional<std::string> export_path;
  add_model_options(export_lp, export_args);
  export_lp->add_option("--deadline", export_args.deadline, "deadline model when given");
  export_lp->add_option("--out", export_path, "output file (stdout if omitted)");
  export_lp->callback([&] { exit_code = ExportCommand(out, export_args, export_path); });

  // verify
  auto* verify = app.add_subcommand("verify", "finite checks of the expansion inequalities");
  verify->require_subcommand(1);
  ExpansionOptions eo;
  std::optional<std::uint64_t> seed;
  auto add_enum_options = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "sampling seed (default 0)");
    cmd->add_option("--budget", eo.budget, "exhaust when the subset count fits")
        ->capture_default_str();
    cmd->add_option("--workers", eo.workers, "threads")->check(CLI::PositiveNumber);
  };
  int d = 3, k = 2, vf = 4, cap = 8, max_len = 5, max_val = 5, runs = 500;
  std::string sizes = "4..8";
  auto* front = verify->add_subcommand("lemma-front-growth", "|A| >= 2d-2 expands by 2d-2");
  front->add_option("--d", d)->capture_default_str();
  front->add_option("--k", k)->capture_default_str();
  front->add_option("--sizes", sizes, "A..B")->capture_default_str();
  front->add_flag("--orthant", eo.orthant_only, "restrict to the positive orthant");
  add_enum_options(front);
  front->callback([&] {
    const auto [lo, hi] = ParseRange(sizes);
    eo.seed = seed.value_or(0);
    exit_code = Report(out, CheckFrontGrowth(d, k, lo, hi, eo));
  });
  auto* first = verify->add_subcommand("first-shell", "subsets of D_1 expand by 4d-6");
  first->add_option("--d", d)->capture_default_str();
  add_enum_options(first);
  first->callback([&] {
    eo.seed = seed.value_or(0);
    exit_code = Report(out, CheckFirstShell(d, eo));
  });
  auto* growth = verify->add_subcommand("growth-l3", "octant growth above (f-1)(f-2)/2");
  growth->add_option("--f", vf)->capture_default_str();
  growth->add_option("--k", k)->capture_default_str();
  growth->add_option("--cap", cap, "largest |A|")->capture_default_str();
  add_enum_options(growth);
  growth->callback([&] {
    eo.seed = seed.value_or(0);
    exit_code = Report(out, CheckGrowthL3(vf, k, cap, eo));
  });
  auto* sigma = verify->add_subcommand("sigma", "g(sigma) < f implies a small sum");
  sigma->add_option("--f", vf)->capture_default_str();
  sigma->add_option("--max-len", max_len)->capture_default_str();
  sigma->add_option("--max-val", max_val)->capture_default_str();
  sigma->callback([&] { exit_code = Report(out, CheckSigmaClaim(vf, max_len, max_val)); });
  auto* hall = verify->add_subcommand("hall", "Hall-type lower bound along trajectories");
  std::string config_path;
  hall->add_option("--config", config_path, "config JSON: text or file")->required();
  hall->add_option("--seed", seed, "overrides the config seed");
  hall->add_option("--workers", eo.workers, "threads")->check(CLI::PositiveNumber);
  hall->callback([&] {
    Json config_json = JsonArgument(config_path);
    if (seed) config_json["seed"] = *seed;
    HallConfig config = HallConfigFromJson(config_json);
    config.verify_options.workers = eo.workers;
    exit_code = Report(out, CheckHallTrajectory(config));
  });
  auto* octant = verify->add_subcommand("octant", "|B_t| - r_t >= (t^2+t+2)/2 in the octant");
  bool no_greedy = false;
  octant->add_option("--n", n)->capture_default_str();
  octant->add_option("--seed", seed, "policy seed")->required();
  octant->add_option("--runs", runs)->capture_default_str();
  octant->add_flag("--no-greedy", no_greedy, "skip the greedy policy");
  octant->callback([&] { exit_code = Report(out, CheckOctantClaim(n, *seed, runs, !no_greedy)); });

  // strategies
  auto* strategies = app.add_subcommand("strategies", "list or print named strategies");
  std::optional<std::string> show;
  int sf = 4, sh = 10;
  strategies->add_option("--strategy", show, "print this strategy's schedule")
      ->check(CLI::IsMember({"optimal-2d", "firewall", "greedy"}));
  strategies->add_option("--n", n, "fire wall grid size")->check(CLI::PositiveNumber);
  strategies->add_option("--f", sf, "greedy budget")->capture_default_str();
  strategies->add_option("--horizon", sh, "greedy horizon")->capture_default_str();
  strategies->add_option("--spec", spec_arg, "greedy lattice spec");
  strategies->callback([&] {
    if (!show) {
      Json list = Json::array();
      std::ostringstream text;
      for (const auto& s : StrategyCatalog()) {
        list.push_back({{"name", s.name}, {"family", s.family}, {"description", s.description}});
        text << s.name << " [" << s.family << "]: " << s.description << '\n';
      }
      out.Emit({{"schema", kSchemaVersion}, {"strategies", list}}, text.str());
      return;
    }
    if (*show == "optimal-2d") {
      const auto s = OptimalTwoDimensional();
      out.Emit(ScheduleToJson(s), Describe(s));
    } else if (*show == "firewall") {
      const Firewall wall = FirewallStrategy(n);
      out.Emit(FirewallToJson(wall), "k = " + std::to_string(wall.k) + ", predicted saved " +
                                         std::to_string(wall.predicted_saved) + "\n" +
                                         Describe(wall.schedule));
    } else {
      const LatticeSpec spec =
          spec_arg ? SpecFromJson(JsonArgument(*spec_arg)) : LatticeSpec::Box(3, sh + 2);
      const std::vector<Coordinate> origin{spec.root()};
      const auto s = GreedyFrontierPolicy(LatticeGraph::Make(spec), origin, sf, sh);
      out.Emit(ScheduleToJson(s), Describe(s));
    }
  });

  // serve
  auto* serve = app.add_subcommand("serve", "HTTP session service");
  std::string host = "127.0.0.1";
  int port = 8080;
  ServiceOptions so;
  std::optional<std::string> static_dir, log_dir;
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port, "0 picks a free port")->capture_default_str();
  serve->add_option("--static", static_dir, "web bundle served at /");
  serve->add_option("--log-dir", log_dir, "append-only turn logs, replayed on start");
  serve->add_option("--hint-workers", so.hint_workers)->check(CLI::PositiveNumber);
  serve->add_option("--max-hints", so.max_pending_hints, "hints queued or running at once")
      ->check(CLI::PositiveNumber);
  serve->add_option("--max-hint-nodes", so.max_hint_nodes)->check(CLI::PositiveNumber);
  serve->callback([&] {
    if (static_dir) so.static_dir = *static_dir;
    if (log_dir) so.log_dir = *log_dir;
    exit_code = Serve(host, port, so);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    if (out.json) {
      std::cout << Json{{"schema", kSchemaVersion}, {"error", e.what()}}.dump(2) << '\n';
    }
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}

}  // namespace
}  // namespace firebreak

int main(int argc, char** argv) { return firebreak::Main(argc, argv); }
