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

#include "firebreak/service.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include <spdlog/spdlog.h>

#include "firebreak/errors.h"
#include "firebreak/search.h"
#include "httplib.h"

namespace firebreak {
namespace {

constexpr std::int64_t kHintTranspositions = 2'000'000;

std::uint64_t SplitMix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Phase PhaseOf(const FireState& state) {
  if (IsContained(state)) return Phase::kContained;
  if (state.boundary_contaminated()) return Phase::kBoundaryContaminated;
  return Phase::kAwaitingPlacements;
}

std::vector<Coordinate> ParsePlacements(const Json& j) {
  if (!j.is_array()) throw DomainError("placements must be an array");
  std::vector<Coordinate> out;
  for (const Json& v : j) out.push_back(CoordinateFromJson(v));
  return out;
}

Json PlacementsJson(const std::vector<Coordinate>& placements) {
  Json out = Json::array();
  for (const Coordinate& v : placements) out.push_back(CoordinateToJson(v));
  return out;
}

bool ValidId(const std::string& id) {
  return !id.empty() && id.size() <= 64 &&
         std::all_of(id.begin(), id.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

// Runs `body`, mapping library errors to HTTP statuses.
void Respond(httplib::Response& res, const std::function<Json()>& body) {
  int status = 200;
  Json out;
  try {
    out = body();
  } catch (const ApiError& e) {
    status = e.status();
    out = {{"error", e.what()}};
  } catch (const RuleViolation& e) {
    status = 422;
    out = {{"error", e.what()}};
  } catch (const DomainError& e) {
    status = 400;
    out = {{"error", e.what()}};
  } catch (const std::exception& e) {
    spdlog::error("request failed: {}", e.what());
    status = 500;
    out = {{"error", e.what()}};
  }
  res.status = status;
  res.set_content(out.dump(), "application/json");
}

}  // namespace

const char* PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kAwaitingPlacements:
      return "awaiting_placements";
    case Phase::kContained:
      return "contained";
    case Phase::kBoundaryContaminated:
      return "boundary_contaminated";
  }
  return "unknown";
}

HintPool::HintPool(int workers, int capacity) : capacity_(std::max(1, capacity)) {
  for (int i = 0; i < std::max(1, workers); ++i) threads_.emplace_back([this] { Loop(); });
}

HintPool::~HintPool() { Shutdown(); }

bool HintPool::Submit(std::function<void()> task) {
  {
    std::lock_guard lock(mutex_);
    if (stopping_ || pending_ >= capacity_) return false;
    ++pending_;
    queue_.push_back(std::move(task));
  }
  ready_.notify_one();
  return true;
}

void HintPool::Shutdown() {
  {
    std::lock_guard lock(mutex_);
    if (stopping_.exchange(true)) return;
  }
  ready_.notify_all();
  for (auto& t : threads_) t.join();
  // Dropping queued tasks breaks their promises, so waiters see an error.
  queue_.clear();
}

void HintPool::Loop() {
  while (true) {
    std::function<void()> task;
    {
      std::unique_lock lock(mutex_);
      ready_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      task = std::move(queue_.front());
      queue_.pop_front();
    }
    task();
    std::lock_guard lock(mutex_);
    --pending_;
  }
}

Service::Service(ServiceOptions options)
    : options_(std::move(options)),
      id_state_(options_.id_seed ? *options_.id_seed
                                 : (std::uint64_t{std::random_device{}()} << 32) ^
                                       std::random_device{}()),
      pool_(options_.hint_workers, options_.max_pending_hints) {
  if (options_.log_dir) std::filesystem::create_directories(*options_.log_dir);
}

Service::~Service() {
  {
    std::shared_lock lock(sessions_mutex_);
    for (const auto& [id, s] : sessions_) s->hint_cancel->store(true);
  }
  pool_.Shutdown();
}

std::string Service::NewId() {
  std::lock_guard lock(id_mutex_);
  char buffer[33];
  const std::uint64_t hi = SplitMix(id_state_);
  const std::uint64_t lo = SplitMix(id_state_);
  std::snprintf(buffer, sizeof buffer, "%016llx%016llx",
                static_cast<unsigned long long>(hi), static_cast<unsigned long long>(lo));
  return buffer;
}

std::shared_ptr<Service::Session> Service::Build(const std::string& id,
                                                 const Json& request) const {
  if (!request.is_object()) throw ApiError(400, "request body must be a JSON object");
  auto s = std::make_shared<Session>();
  s->id = id;
  s->spec = request.contains("spec") ? SpecFromJson(request.at("spec")) : LatticeSpec::Box(2, 10);
  if (request.contains("f") && !request.at("f").is_number_integer()) {
    throw DomainError("f must be an integer");
  }
  s->f = request.value("f", 2);
  if (s->f < 0) throw DomainError("f must be nonnegative");
  s->graph = LatticeGraph::Make(s->spec);
  s->outbreak = request.contains("outbreak") ? ParsePlacements(request.at("outbreak"))
                                             : std::vector<Coordinate>{s->spec.root()};
  s->snapshots.emplace_back(s->graph, s->outbreak);
  s->hint_cancel = std::make_shared<std::atomic<bool>>(false);
  return s;
}

Json Service::CreateSession(const Json& request) {
  const std::string id = NewId();
  auto s = Build(id, request);
  Append(*s, {{"op", "create"},
              {"spec", SpecToJson(s->spec)},
              {"f", s->f},
              {"outbreak", PlacementsJson(s->outbreak)}});
  Json view = View(*s);
  std::unique_lock lock(sessions_mutex_);
  sessions_.emplace(id, std::move(s));
  spdlog::debug("session {} created", id);
  return view;
}

std::shared_ptr<Service::Session> Service::Find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ApiError(404, "no session " + id);
  return it->second;
}

Json Service::View(const Session& s) const {
  const FireState& state = s.snapshots.back();
  const PlacementSchedule schedule{s.f, s.turns};
  const RunResult run = Run(s.graph, s.outbreak, schedule, static_cast<int>(s.turns.size()));
  return {{"schema", kSchemaVersion},
          {"id", s.id},
          {"spec", SpecToJson(s.spec)},
          {"f", s.f},
          {"turn", s.turns.size()},
          {"phase", PhaseName(PhaseOf(state))},
          {"state", StateToJson(state)},
          {"schedule", ScheduleToJson(schedule)},
          {"trace", TraceToJson(run.trace)}};
}

Json Service::GetSession(const std::string& id) const {
  auto s = Find(id);
  std::shared_lock lock(s->mutex);
  return View(*s);
}

Json Service::SubmitTurn(const std::string& id, const Json& request) {
  auto s = Find(id);
  if (!request.is_object() || !request.contains("placements")) {
    throw ApiError(400, "expected {\"placements\": [...]}");
  }
  const auto placements = ParsePlacements(request.at("placements"));
  std::unique_lock lock(s->mutex);
  const Phase phase = PhaseOf(s->snapshots.back());
  if (phase != Phase::kAwaitingPlacements) {
    throw ApiError(409, std::string("session is ") + PhaseName(phase));
  }
  // Deploy validates before anything is stored.
  FireState next = Step(s->snapshots.back(), placements, s->f);
  s->hint_cancel->store(true);
  s->hint_cancel = std::make_shared<std::atomic<bool>>(false);
  s->turns.push_back(placements);
  s->snapshots.push_back(std::move(next));
  Append(*s, {{"op", "turn"},
              {"placements", PlacementsJson(placements)}});
  return View(*s);
}

Json Service::Undo(const std::string& id) {
  auto s = Find(id);
  std::unique_lock lock(s->mutex);
  if (s->turns.empty()) throw ApiError(409, "nothing to undo");
  s->hint_cancel->store(true);
  s->hint_cancel = std::make_shared<std::atomic<bool>>(false);
  s->turns.pop_back();
  s->snapshots.pop_back();
  Append(*s, {{"op", "undo"}});
  return View(*s);
}

Json Service::Hint(const std::string& id, std::optional<std::int64_t> budget,
                   std::optional<int> horizon) {
  auto s = Find(id);
  std::optional<FireState> state;
  int f = 0;
  std::shared_ptr<std::atomic<bool>> cancel;
  {
    std::shared_lock lock(s->mutex);
    state = s->snapshots.back();
    f = s->f;
    cancel = s->hint_cancel;
  }
  const int steps = horizon.value_or(options_.default_hint_horizon);
  if (steps < 1 || steps > 64) throw ApiError(400, "horizon must be in 1..64");
  const std::int64_t nodes = std::min(budget.value_or(options_.max_hint_nodes),
                                      options_.max_hint_nodes);
  if (nodes < 1) throw ApiError(400, "budget must be positive");
  if (IsContained(*state)) {
    return {{"schema", kSchemaVersion}, {"status", "contained"}, {"placements", Json::array()},
            {"value", state->burnt_count()}, {"lower_bound", state->burnt_count()},
            {"contained", true}, {"line", ScheduleToJson({f, {}})}};
  }

  SearchProblem problem{*state, f, state->time() + steps, state->time() + steps,
                        SearchObjective::kTotalBurn, {}};
  SearchOptions search;
  search.node_limit = nodes;
  search.time_limit_seconds = options_.hint_time_limit_seconds;
  search.transposition_capacity = kHintTranspositions;
  search.cancel = cancel.get();

  auto promise = std::make_shared<std::promise<SearchResult>>();
  auto future = promise->get_future();
  const bool queued = pool_.Submit([promise, problem, search, cancel] {
    try {
      promise->set_value(SearchSchedules(problem, search));
    } catch (...) {
      promise->set_exception(std::current_exception());
    }
  });
  if (!queued) throw ApiError(503, "hint capacity exhausted, retry later");
  SearchResult result;
  try {
    result = future.get();
  } catch (const std::future_error&) {
    throw ApiError(503, "service shutting down");
  }

  Json out{{"schema", kSchemaVersion},
           {"status", result.status == SearchStatus::kOptimal ? "optimal" : "bound"},
           {"lower_bound", result.lower_bound},
           {"nodes", result.nodes},
           {"horizon", steps},
           {"cancelled", cancel->load()}};
  if (!result.has_incumbent) {
    out["status"] = "no-hint";
    out["placements"] = Json::array();
    out["value"] = nullptr;
    out["contained"] = false;
    out["line"] = nullptr;
    return out;
  }
  PlacementSchedule line = result.schedule;
  while (!line.steps.empty() && line.steps.back().empty()) line.steps.pop_back();
  out["placements"] =
      line.steps.empty() ? Json::array() : PlacementsJson(line.steps.front());
  out["value"] = result.value;
  out["contained"] = result.contained;
  out["line"] = ScheduleToJson(line);
  return out;
}

void Service::Append(const Session& s, const Json& event) const {
  if (!options_.log_dir) return;
  std::ofstream out(*options_.log_dir / (s.id + ".jsonl"), std::ios::app);
  out << event.dump() << '\n';
  if (!out) throw ApiError(500, "cannot write the turn log");
}

int Service::Recover() {
  if (!options_.log_dir) return 0;
  int recovered = 0;
  std::vector<std::filesystem::path> logs;
  for (const auto& entry : std::filesystem::directory_iterator(*options_.log_dir)) {
    if (entry.path().extension() == ".jsonl") logs.push_back(entry.path());
  }
  std::sort(logs.begin(), logs.end());
  for (const auto& path : logs) {
    const std::string id = path.stem().string();
    if (!ValidId(id)) continue;
    std::ifstream in(path);
    std::string line;
    std::shared_ptr<Session> s;
    try {
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        const Json event = ParseJson(line);
        const std::string op = event.value("op", "");
        if (op == "create") {
          s = Build(id, event);
        } else if (s && op == "turn") {
          const auto placements = ParsePlacements(event.at("placements"));
          s->snapshots.push_back(Step(s->snapshots.back(), placements, s->f));
          s->turns.push_back(placements);
        } else if (s && op == "undo" && !s->turns.empty()) {
          s->turns.pop_back();
          s->snapshots.pop_back();
        } else {
          throw DomainError("unexpected event " + line);
        }
      }
    } catch (const std::exception& e) {
      spdlog::warn("skipping turn log {}: {}", path.string(), e.what());
      continue;
    }
    if (!s) continue;
    std::unique_lock lock(sessions_mutex_);
    sessions_[id] = std::move(s);
    ++recovered;
  }
  return recovered;
}

std::size_t Service::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

void Service::Register(httplib::Server& server) {
  auto parse = [](const httplib::Request& req) {
    try {
      return req.body.empty() ? Json::object() : Json::parse(req.body);
    } catch (const nlohmann::json::parse_error& e) {
      throw ApiError(400, std::string("invalid JSON: ") + e.what());
    }
  };
  auto optional_int = [](const httplib::Request& req,
                         const char* key) -> std::optional<std::int64_t> {
    if (!req.has_param(key)) return std::nullopt;
    const std::string text = req.get_param_value(key);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw ApiError(400, std::string("parameter ") + key + " must be an integer");
    }
  };

  server.Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
    Respond(res, [this] {
      return Json{{"status", "ok"}, {"sessions", session_count()}};
    });
  });
  server.Post("/sessions", [this, parse](const httplib::Request& req, httplib::Response& res) {
    Respond(res, [&] { return CreateSession(parse(req)); });
    if (res.status == 200) res.status = 201;
  });
  server.Get(R"(/sessions/([0-9a-f]+))", [this](const httplib::Request& req,
                                                 httplib::Response& res) {
    Respond(res, [&] { return GetSession(req.matches[1]); });
  });
  server.Post(R"(/sessions/([0-9a-f]+)/turns)",
              [this, parse](const httplib::Request& req, httplib::Response& res) {
                Respond(res, [&] { return SubmitTurn(req.matches[1], parse(req)); });
              });
  server.Post(R"(/sessions/([0-9a-f]+)/undo)",
              [this](const httplib::Request& req, httplib::Response& res) {
                Respond(res, [&] { return Undo(req.matches[1]); });
              });
  server.Get(R"(/sessions/([0-9a-f]+)/hint)",
             [this, optional_int](const httplib::Request& req, httplib::Response& res) {
               Respond(res, [&] {
                 const auto horizon = optional_int(req, "horizon");
                 std::optional<int> steps;
                 if (horizon) steps = static_cast<int>(std::clamp<std::int64_t>(*horizon, -1, 1000));
                 return Hint(req.matches[1], optional_int(req, "budget"), steps);
               });
             });
  if (options_.static_dir) {
    if (!server.set_mount_point("/", options_.static_dir->string())) {
      throw DomainError("static directory " + options_.static_dir->string() +
                        " does not exist");
    }
  }
}

}  // namespace firebreak
