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

// Independent oracles shared by the unit tests and the acceptance binary.
// None of them calls the search or the IP model.

#ifndef FIREBREAK_TESTS_ORACLES_H_
#define FIREBREAK_TESTS_ORACLES_H_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "firebreak/simulation.h"

namespace firebreak::oracles {

// ---------------------------------------------------------------------------
// Oracle 1: enumerate final burnt sets.
//
// A set B is the burnt set at time T of some schedule iff it is connected,
// contains the origin, every vertex is within distance T of the origin inside
// B, and the exits of B can be defended in time: an outside neighbour u of
// w in B with tau(w) < T must be defended by step min tau(w) + 1, and the
// number of exits due by step s is at most f * min(s, deadline).
// Coordinates and adjacency are computed here from scratch.
// ---------------------------------------------------------------------------
class BurntSetOracle {
 public:
  explicit BurntSetOracle(int radius) : radius_(radius) {
    const int side = 2 * radius + 1;
    n_ = side * side;
    if (n_ > 32) throw std::invalid_argument("oracle supports radius <= 2");
    nb_.assign(n_, 0);
    for (int i = 0; i < n_; ++i) {
      const int x = i % side - radius, y = i / side - radius;
      const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int a = x + dx[k], b = y + dy[k];
        if (std::abs(a) <= radius && std::abs(b) <= radius) {
          nb_[i] |= 1u << ((b + radius) * side + (a + radius));
        }
      }
      boundary_.push_back(std::abs(x) == radius || std::abs(y) == radius);
    }
    origin_ = radius * side + radius;
    Enumerate(1u << origin_, nb_[origin_], 0);
  }

  // Minimum burnt count (or boundary count) at horizon T.
  int Optimum(int T, int f, int deadline, bool boundary_objective) const {
    int best = std::numeric_limits<int>::max();
    for (const Candidate& c : candidates_) {
      if (c.eccentricity > T) continue;
      bool ok = true;
      int due_by = 0;
      for (int s = 1; s <= T && ok; ++s) {
        due_by += s < static_cast<int>(c.due_histogram.size()) ? c.due_histogram[s] : 0;
        ok = due_by <= f * std::min(s, deadline);
      }
      if (!ok) continue;
      best = std::min(best, boundary_objective ? c.boundary : c.size);
    }
    return best;
  }

  std::size_t candidate_count() const { return candidates_.size(); }

 private:
  struct Candidate {
    int size;
    int boundary;
    int eccentricity;
    // due_histogram[s] = exits due exactly at step s, counting only exits
    // the fire reaches by T; stored up to the largest possible step.
    std::vector<int> due_histogram;
  };

  void Record(std::uint32_t set) {
    std::vector<int> tau(n_, -1);
    std::vector<int> queue{origin_};
    tau[origin_] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int u = queue[h];
      for (std::uint32_t m = nb_[u] & set; m; m &= m - 1) {
        const int w = __builtin_ctz(m);
        if (tau[w] >= 0) continue;
        tau[w] = tau[u] + 1;
        queue.push_back(w);
      }
    }
    Candidate c{__builtin_popcount(set), 0, 0, std::vector<int>(n_ + 2, 0)};
    for (int v = 0; v < n_; ++v) {
      if (set >> v & 1u) {
        c.eccentricity = std::max(c.eccentricity, tau[v]);
        c.boundary += boundary_[v];
      }
    }
    // Exit deadlines. An exit with due step > T never matters; Optimum only
    // sums the histogram up to T.
    for (int u = 0; u < n_; ++u) {
      if (set >> u & 1u) continue;
      int due = std::numeric_limits<int>::max();
      for (std::uint32_t m = nb_[u] & set; m; m &= m - 1) {
        due = std::min(due, tau[__builtin_ctz(m)] + 1);
      }
      if (due < static_cast<int>(c.due_histogram.size())) ++c.due_histogram[due];
    }
    candidates_.push_back(std::move(c));
  }

  // Connected sets containing the origin, each produced once.
  void Enumerate(std::uint32_t set, std::uint32_t ext, std::uint32_t banned) {
    Record(set);
    ext &= ~banned & ~set;
    while (ext) {
      const int v = __builtin_ctz(ext);
      ext &= ext - 1;
      const std::uint32_t grow = nb_[v] & ~set & ~banned & ~(1u << v);
      Enumerate(set | 1u << v, ext | grow, banned);
      banned |= 1u << v;
    }
  }

  int radius_;
  int n_ = 0;
  int origin_ = 0;
  std::vector<std::uint32_t> nb_;
  std::vector<int> boundary_;
  std::vector<Candidate> candidates_;
};

// ---------------------------------------------------------------------------
// Oracle 2: every legal schedule, literally. Placements may go anywhere that
// is neither burnt nor defended, not only next to the fire.
// ---------------------------------------------------------------------------
inline std::int64_t BruteForce(const FireState& state, int f, int horizon,
                        int last_step, const std::vector<std::uint8_t>* target) {
  if (state.time() == horizon) {
    if (!target) return state.burnt_count();
    std::int64_t count = 0;
    for (int v = 0; v < state.graph().vertex_count(); ++v) {
      count += state.burnt_at(v) && (*target)[v];
    }
    return count;
  }
  std::vector<Coordinate> free;
  if (state.time() < last_step) {
    for (int v = 0; v < state.graph().vertex_count(); ++v) {
      if (!state.burnt_at(v) && !state.defended_at(v)) {
        free.push_back(state.graph().vertex(v));
      }
    }
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<Coordinate> pick;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    best = std::min(best, BruteForce(Step(state, pick, f), f, horizon,
                                     last_step, target));
    if (static_cast<int>(pick.size()) == f) return;
    for (std::size_t i = from; i < free.size(); ++i) {
      pick.push_back(free[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

// One spread computed from coordinates alone: v +- e_i filtered by Contains.
inline std::set<Coordinate> Spread(const LatticeSpec& spec,
                                   const std::set<Coordinate>& burnt,
                                   const std::set<Coordinate>& defended) {
  std::set<Coordinate> out = burnt;
  for (const Coordinate& v : burnt) {
    for (int i = 0; i < v.dimension(); ++i) {
      for (int delta : {-1, 1}) {
        Coordinate w = v;
        w[i] += delta;
        if (spec.Contains(w) && !defended.count(w)) out.insert(w);
      }
    }
  }
  return out;
}

}  // namespace firebreak::oracles

#endif  // FIREBREAK_TESTS_ORACLES_H_
