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

#include "firebreak/search.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "firebreak/errors.h"

namespace firebreak {
namespace {

using Clock = std::chrono::steady_clock;
using Words = std::vector<std::uint64_t>;

constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

inline bool Test(const Words& w, int i) { return (w[i >> 6] >> (i & 63)) & 1u; }
inline void Set(Words& w, int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }

struct WordsHash {
  std::size_t operator()(const Words& w) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t x : w) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xbf58476d1ce4e5b9ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

// Vertex permutations induced by signed axis permutations that preserve the
// graph, the start state and the target set. The identity comes first.
std::vector<std::vector<int>> SymmetryGroup(const SearchProblem& problem) {
  const LatticeGraph& g = problem.start.graph();
  const int n = g.vertex_count();
  const int d = g.spec().dimension();
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<std::vector<int>> group{identity};
  if (d > 4) return group;

  std::vector<int> axes(d);
  std::iota(axes.begin(), axes.end(), 0);
  do {
    for (std::uint32_t signs = 0; signs < (1u << d); ++signs) {
      bool is_identity = signs == 0;
      for (int i = 0; i < d; ++i) is_identity = is_identity && axes[i] == i;
      if (is_identity) continue;
      std::vector<int> perm(n, -1);
      bool ok = true;
      for (int v = 0; v < n && ok; ++v) {
        const Coordinate& c = g.vertex(v);
        Coordinate image = Coordinate::Zero(d);
        for (int i = 0; i < d; ++i) {
          image[axes[i]] = (signs >> i & 1u) ? -c[i] : c[i];
        }
        perm[v] = g.IndexOf(image);
        ok = perm[v] >= 0;
      }
      for (int v = 0; v < n && ok; ++v) {
        const auto nb = g.neighbors(v);
        std::vector<int> mapped;
        for (int w : nb) mapped.push_back(perm[w]);
        std::sort(mapped.begin(), mapped.end());
        const auto target_nb = g.neighbors(perm[v]);
        ok = std::equal(mapped.begin(), mapped.end(), target_nb.begin(),
                        target_nb.end());
        ok = ok && problem.start.burnt_at(v) == problem.start.burnt_at(perm[v]);
        ok = ok &&
             problem.start.defended_at(v) == problem.start.defended_at(perm[v]);
        if (problem.objective == SearchObjective::kTargetBurn) {
          ok = ok && problem.target[v] == problem.target[perm[v]];
        }
      }
      if (ok) group.push_back(std::move(perm));
    }
  } while (std::next_permutation(axes.begin(), axes.end()));
  return group;
}

struct Block {
  int vertex;
  int due;  // absolute step
};

class Searcher {
 public:
  Searcher(const SearchProblem& problem, const SearchOptions& options)
      : p_(problem),
        o_(options),
        g_(problem.start.graph()),
        n_(g_.vertex_count()),
        words_((n_ + 63) / 64),
        t0_(problem.start.time()),
        stamp_(n_, 0),
        target_(problem.objective == SearchObjective::kTargetBurn
                    ? problem.target
                    : std::vector<std::uint8_t>(n_, 0)) {
    if (o_.use_symmetry) group_ = SymmetryGroup(p_);
    else group_.push_back({});
  }

  SearchResult Run() {
    start_ = Clock::now();
    Words burnt(words_, 0), blocked(words_, 0);
    std::int64_t burnt_count = 0, target_count = 0;
    for (int v = 0; v < n_; ++v) {
      if (p_.start.burnt_at(v)) {
        Set(burnt, v);
        ++burnt_count;
        target_count += target_[v];
      }
      if (p_.start.defended_at(v)) Set(blocked, v);
    }
    // All burnt vertices act as sources: older ones may still border
    // unburnt vertices in an arbitrary start state.
    std::vector<int> active;
    for (int v = 0; v < n_; ++v) {
      if (Test(burnt, v)) active.push_back(v);
    }
    Node root{t0_, std::move(burnt), std::move(blocked), std::move(active), 0,
              burnt_count, target_count};
    Visit(root);

    SearchResult result;
    result.nodes = nodes_;
    result.has_incumbent = incumbent_ < kInfinity;
    result.value = result.has_incumbent ? incumbent_ : 0;
    if (aborted_) {
      result.status = SearchStatus::kBound;
      result.lower_bound = std::min(abort_lower_bound_, incumbent_);
    } else {
      result.status = SearchStatus::kOptimal;
      result.lower_bound = incumbent_;
    }
    result.contained = best_contained_;
    result.schedule = Realise(best_blocks_);
    result.seconds =
        std::chrono::duration<double>(Clock::now() - start_).count();
    return result;
  }

  std::int64_t RootBound() {
    Words burnt(words_, 0), blocked(words_, 0);
    std::int64_t burnt_count = 0, target_count = 0;
    std::vector<int> active;
    for (int v = 0; v < n_; ++v) {
      if (p_.start.burnt_at(v)) {
        Set(burnt, v);
        ++burnt_count;
        target_count += target_[v];
        active.push_back(v);
      }
      if (p_.start.defended_at(v)) Set(blocked, v);
    }
    Node root{t0_, std::move(burnt), std::move(blocked), std::move(active), 0,
              burnt_count, target_count};
    const std::vector<int> frontier = Frontier(root);
    return LowerBound(root, frontier);
  }

 private:
  struct Node {
    int time;
    Words burnt;
    Words blocked;
    std::vector<int> active;  // burnt at `time`
    std::int64_t used;        // blocks decided so far
    std::int64_t burnt_count;
    std::int64_t target_count;
  };

  // Blocks that can be due by absolute step j.
  std::int64_t Capacity(int j) const {
    const int last = std::min(j, p_.last_placement_step);
    return std::max<std::int64_t>(0, std::int64_t{p_.budget} * (last - t0_));
  }

  std::int64_t Value(const Node& node) const {
    return p_.objective == SearchObjective::kTotalBurn ? node.burnt_count
                                                       : node.target_count;
  }

  std::vector<int> Frontier(const Node& node) {
    ++epoch_;
    std::vector<int> frontier;
    for (int u : node.active) {
      for (int w : g_.neighbors(u)) {
        if (stamp_[w] == epoch_ || Test(node.burnt, w) || Test(node.blocked, w))
          continue;
        stamp_[w] = epoch_;
        frontier.push_back(w);
      }
    }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
  }

  // Vertex-disjoint walks leaving the fire. Each unblocked walk keeps burning
  // one new vertex per step; blocking it costs one firefighter due by the step
  // the fire would reach the blocked vertex. The bound charges the cheapest
  // way to spend the remaining capacity on those walks.
  std::int64_t LowerBound(const Node& node, const std::vector<int>& frontier) {
    const std::int64_t base = Value(node);
    if (!o_.use_bounds || frontier.empty() || node.time >= p_.horizon) {
      return base;
    }
    const int steps = p_.horizon - node.time;
    ++epoch_;
    for (int v : frontier) stamp_[v] = epoch_;
    // Walk lengths (total burn) or arrival offsets at a target (target burn).
    std::vector<int> lengths;
    lengths.reserve(frontier.size());
    for (int v : frontier) {
      if (p_.objective == SearchObjective::kTotalBurn) {
        int length = 1, at = v;
        while (length < steps) {
          int next = -1;
          for (int w : g_.neighbors(at)) {
            if (stamp_[w] == epoch_ || Test(node.burnt, w) ||
                Test(node.blocked, w) || g_.distance(w) <= g_.distance(at))
              continue;
            next = w;
            break;
          }
          if (next < 0) break;
          stamp_[next] = epoch_;
          at = next;
          ++length;
        }
        lengths.push_back(length);
      } else {
        int length = 1, at = v;
        while (!target_[at] && length < steps) {
          int next = -1;
          for (int w : g_.neighbors(at)) {
            if (stamp_[w] == epoch_ || Test(node.burnt, w) ||
                Test(node.blocked, w) || to_target_[w] >= to_target_[at])
              continue;
            next = w;
            break;
          }
          if (next < 0) break;
          stamp_[next] = epoch_;
          at = next;
          ++length;
        }
        if (target_[at]) lengths.push_back(length);
      }
    }
    if (lengths.empty()) return base;
    std::sort(lengths.begin(), lengths.end(), std::greater<>());

    if (p_.objective == SearchObjective::kTargetBurn) {
      // Hall deficiency: walks reaching a target within j steps each need a
      // block due by time + j.
      std::int64_t deficiency = 0;
      std::vector<int> ascending(lengths.rbegin(), lengths.rend());
      for (std::size_t i = 0; i < ascending.size(); ++i) {
        if (i + 1 < ascending.size() && ascending[i + 1] == ascending[i])
          continue;
        const std::int64_t need = static_cast<std::int64_t>(i + 1);
        const std::int64_t cap =
            Capacity(node.time + ascending[i]) - node.used;
        deficiency = std::max(deficiency, need - cap);
      }
      return base + deficiency;
    }

    // Greedy over steps: block the longest live walks first.
    std::int64_t cost = 0, spent = 0;
    std::size_t blocked = 0;  // prefix of `lengths` already blocked
    for (int j = 1; j <= steps; ++j) {
      const std::int64_t cap = Capacity(node.time + j) - node.used;
      while (blocked < lengths.size() && spent < cap) {
        ++blocked;
        ++spent;
      }
      for (std::size_t i = blocked; i < lengths.size() && lengths[i] >= j; ++i)
        ++cost;
    }
    return base + cost;
  }

  bool ShouldStop() {
    if (aborted_) return true;
    if (o_.node_limit && nodes_ >= *o_.node_limit) aborted_ = true;
    if ((nodes_ & 255) == 0) {
      if (o_.cancel && o_.cancel->load(std::memory_order_relaxed))
        aborted_ = true;
      if (o_.time_limit_seconds &&
          std::chrono::duration<double>(Clock::now() - start_).count() >
              *o_.time_limit_seconds)
        aborted_ = true;
    }
    return aborted_;
  }

  void Record(std::int64_t value, bool contained) {
    if (value >= incumbent_) return;
    incumbent_ = value;
    best_blocks_ = blocks_;
    best_contained_ = contained;
  }

  Words CanonicalKey(const Node& node) {
    Words best;
    for (const auto& perm : group_) {
      Words key(1 + 2 * words_, 0);
      key[0] = static_cast<std::uint64_t>(node.time);
      for (int w = 0; w < words_; ++w) {
        for (std::uint64_t bits = node.burnt[w]; bits; bits &= bits - 1) {
          const int v = w * 64 + __builtin_ctzll(bits);
          const int image = perm.empty() ? v : perm[v];
          key[1 + (image >> 6)] |= std::uint64_t{1} << (image & 63);
        }
        for (std::uint64_t bits = node.blocked[w]; bits; bits &= bits - 1) {
          const int v = w * 64 + __builtin_ctzll(bits);
          const int image = perm.empty() ? v : perm[v];
          key[1 + words_ + (image >> 6)] |= std::uint64_t{1} << (image & 63);
        }
      }
      if (best.empty() || key < best) best = std::move(key);
    }
    return best;
  }

  void Visit(Node& node) {
    ++nodes_;
    if (ShouldStop()) return;
    const std::int64_t value = Value(node);
    if (node.time >= p_.horizon) {
      Record(value, Frontier(node).empty());
      return;
    }
    const std::vector<int> frontier = Frontier(node);
    const std::int64_t avail = Capacity(node.time + 1) - node.used;
    if (static_cast<std::int64_t>(frontier.size()) <= avail) {
      // Blocking the whole frontier contains the fire at the current value,
      // which no continuation can beat.
      for (int v : frontier) blocks_.push_back({v, node.time + 1});
      Record(value, true);
      blocks_.resize(blocks_.size() - frontier.size());
      return;
    }
    const std::int64_t bound = LowerBound(node, frontier);
    if (bound >= incumbent_) return;

    const int width = static_cast<int>(frontier.size());
    const int max_size = static_cast<int>(std::min<std::int64_t>(avail, width - 1));
    std::vector<int> chosen;
    std::vector<std::uint8_t> in_s(width);
    for (int size = max_size; size >= 0 && !aborted_; --size) {
      if (p_.objective == SearchObjective::kTotalBurn &&
          node.burnt_count + (width - size) >= incumbent_)
        break;
      // Lexicographic combinations of `size` frontier positions.
      std::vector<int> idx(size);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        std::fill(in_s.begin(), in_s.end(), 0);
        for (int i : idx) in_s[i] = 1;
        Expand(node, frontier, in_s, size);
        if (aborted_) break;
        int i = size - 1;
        while (i >= 0 && idx[i] == width - size + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int k = i + 1; k < size; ++k) idx[k] = idx[k - 1] + 1;
      }
    }
    if (aborted_) abort_lower_bound_ = std::min(abort_lower_bound_, bound);
  }

  void Expand(const Node& node, const std::vector<int>& frontier,
              const std::vector<std::uint8_t>& in_s, int size) {
    Node child{node.time + 1, node.burnt, node.blocked, {}, node.used + size,
               node.burnt_count, node.target_count};
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const int v = frontier[i];
      if (in_s[i]) {
        Set(child.blocked, v);
      } else {
        Set(child.burnt, v);
        child.active.push_back(v);
        ++child.burnt_count;
        child.target_count += target_[v];
      }
    }
    if (p_.objective == SearchObjective::kTargetBurn &&
        child.target_count >= incumbent_)
      return;
    if (o_.use_transpositions) {
      Words key = CanonicalKey(child);
      auto it = table_.find(key);
      if (it != table_.end()) {
        if (it->second <= child.used) return;
        it->second = static_cast<std::int32_t>(child.used);
      } else if (static_cast<std::int64_t>(table_.size()) <
                 o_.transposition_capacity) {
        table_.emplace(std::move(key), static_cast<std::int32_t>(child.used));
      }
    }
    const std::size_t mark = blocks_.size();
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      if (in_s[i]) blocks_.push_back({frontier[i], node.time + 1});
    }
    Visit(child);
    blocks_.resize(mark);
  }

  // Earliest-deadline-first realisation of a feasible block set.
  PlacementSchedule Realise(std::vector<Block> blocks) const {
    PlacementSchedule schedule;
    schedule.budget = p_.budget;
    const int steps = std::max(0, p_.last_placement_step - t0_);
    schedule.steps.assign(steps, {});
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
      return std::pair(a.due, a.vertex) < std::pair(b.due, b.vertex);
    });
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const int step = static_cast<int>(i / std::max(1, p_.budget));
      if (step >= steps || t0_ + step + 1 > blocks[i].due) {
        throw std::logic_error("infeasible block set in realisation");
      }
      schedule.steps[step].push_back(g_.vertex(blocks[i].vertex));
    }
    for (auto& step : schedule.steps) std::sort(step.begin(), step.end());
    return schedule;
  }

 public:
  void PrepareTargets() {
    if (p_.objective != SearchObjective::kTargetBurn) return;
    to_target_.assign(n_, std::numeric_limits<int>::max());
    std::vector<int> queue;
    for (int v = 0; v < n_; ++v) {
      if (target_[v]) {
        to_target_[v] = 0;
        queue.push_back(v);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      for (int w : g_.neighbors(u)) {
        if (to_target_[w] != std::numeric_limits<int>::max()) continue;
        to_target_[w] = to_target_[u] + 1;
        queue.push_back(w);
      }
    }
  }

 private:
  const SearchProblem& p_;
  const SearchOptions& o_;
  const LatticeGraph& g_;
  const int n_;
  const int words_;
  const int t0_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint8_t> target_;
  std::vector<int> to_target_;
  std::vector<std::vector<int>> group_;
  std::unordered_map<Words, std::int32_t, WordsHash> table_;
  std::vector<Block> blocks_;
  std::vector<Block> best_blocks_;
  bool best_contained_ = false;
  std::int64_t incumbent_ = kInfinity;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
  std::int64_t abort_lower_bound_ = kInfinity;
  Clock::time_point start_;
};

void CheckProblem(const SearchProblem& problem) {
  if (problem.budget < 0) throw DomainError("budget must be non-negative");
  const int t0 = problem.start.time();
  if (problem.horizon < t0) throw DomainError("horizon precedes the start time");
  if (problem.last_placement_step > problem.horizon) {
    throw DomainError("placements after the horizon");
  }
  if (problem.objective == SearchObjective::kTargetBurn &&
      static_cast<int>(problem.target.size()) !=
          problem.start.graph().vertex_count()) {
    throw DomainError("target mask does not match the graph");
  }
}

}  // namespace

SearchResult SearchSchedules(const SearchProblem& problem,
                             const SearchOptions& options) {
  CheckProblem(problem);
  Searcher searcher(problem, options);
  searcher.PrepareTargets();
  return searcher.Run();
}

std::int64_t RootLowerBound(const SearchProblem& problem) {
  CheckProblem(problem);
  SearchOptions options;
  Searcher searcher(problem, options);
  searcher.PrepareTargets();
  return searcher.RootBound();
}

}  // namespace firebreak
