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

// Turn-based game sessions over HTTP.
//
//   POST /sessions                 {"spec", "f", "outbreak"} -> view
//   GET  /sessions/{id}            -> view
//   POST /sessions/{id}/turns      {"placements": [[x, y], ...]} -> view
//   POST /sessions/{id}/undo       -> view
//   GET  /sessions/{id}/hint       ?budget=<nodes>&horizon=<steps>
//   GET  /healthz
//
// A view carries the session id, spec, f, phase, the current state and the
// trace of the turns so far, computed by the simulator from the turn log.
// Errors are {"error": reason} with status 400 (malformed request), 404
// (unknown session), 409 (wrong phase or empty history), 422 (illegal
// placement) or 503 (hint capacity exhausted).

#ifndef FIREBREAK_SERVICE_H_
#define FIREBREAK_SERVICE_H_

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

#include "firebreak/io.h"
#include "firebreak/simulation.h"

namespace httplib {
class Server;
}

namespace firebreak {

struct ServiceOptions {
  // Served at "/" when set.
  std::optional<std::filesystem::path> static_dir;
  // One append-only turn log per session when set; replayed by Recover().
  std::optional<std::filesystem::path> log_dir;
  int hint_workers = 1;
  // Hints queued or running at once, server-wide.
  int max_pending_hints = 4;
  std::int64_t max_hint_nodes = 5'000'000;
  double hint_time_limit_seconds = 20.0;
  int default_hint_horizon = 10;
  // Session ids come from this seed when set, else from std::random_device.
  std::optional<std::uint64_t> id_seed;
};

enum class Phase { kAwaitingPlacements, kContained, kBoundaryContaminated };

const char* PhaseName(Phase phase);

class ApiError : public std::runtime_error {
 public:
  ApiError(int status, const std::string& reason)
      : std::runtime_error(reason), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

// Runs hint searches on a fixed set of threads. Submit fails when the
// server-wide cap on queued plus running work is reached.
class HintPool {
 public:
  HintPool(int workers, int capacity);
  ~HintPool();

  // False when at capacity.
  bool Submit(std::function<void()> task);
  // Requests cancellation of every running search and drains the queue.
  void Shutdown();
  const std::atomic<bool>& stopping() const { return stopping_; }

 private:
  void Loop();

  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<std::function<void()>> queue_;
  int capacity_;
  int pending_ = 0;
  std::atomic<bool> stopping_{false};
  std::vector<std::thread> threads_;
};

class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Handlers for the endpoints above plus the static mount.
  void Register(httplib::Server& server);

  // The operations behind the endpoints. Throw ApiError.
  Json CreateSession(const Json& request);
  Json GetSession(const std::string& id) const;
  Json SubmitTurn(const std::string& id, const Json& request);
  Json Undo(const std::string& id);
  Json Hint(const std::string& id, std::optional<std::int64_t> budget,
            std::optional<int> horizon);

  // Rebuilds sessions from the turn logs in log_dir. Returns how many.
  int Recover();
  std::size_t session_count() const;

 private:
  struct Session {
    mutable std::shared_mutex mutex;
    std::string id;
    LatticeSpec spec = LatticeSpec::Box(2, 1);
    std::shared_ptr<const LatticeGraph> graph;
    int f = 0;
    std::vector<Coordinate> outbreak;
    std::vector<std::vector<Coordinate>> turns;
    std::vector<FireState> snapshots;  // snapshots[i] after i turns
    // Bumped by every mutation; running hints for older versions cancel.
    std::shared_ptr<std::atomic<bool>> hint_cancel;
  };

  std::shared_ptr<Session> Find(const std::string& id) const;
  std::shared_ptr<Session> Build(const std::string& id, const Json& request) const;
  Json View(const Session& session) const;
  void Append(const Session& session, const Json& event) const;
  std::string NewId();

  ServiceOptions options_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_mutex_;
  std::uint64_t id_state_;
  HintPool pool_;
};

}  // namespace firebreak

#endif  // FIREBREAK_SERVICE_H_
