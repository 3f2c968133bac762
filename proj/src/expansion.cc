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

#include "firebreak/expansion.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>
#include <utility>

#include "firebreak/errors.h"
#include "firebreak/rng.h"
#include "firebreak/strategies.h"

namespace firebreak {
namespace {

// A shell and, for each member, its neighbours in the next shell.
struct ShellData {
  std::vector<Coordinate> members;
  std::vector<std::vector<int>> up;
  int next_size = 0;
};

ShellData ShellFromSpec(const LatticeSpec& spec, int k, bool orthant_only) {
  ShellData data;
  data.members = (orthant_only ? SpherePositive(spec, k) : Sphere(spec, k)).members;
  const auto next =
      (orthant_only ? SpherePositive(spec, k + 1) : Sphere(spec, k + 1)).members;
  std::unordered_map<Coordinate, int, CoordinateHash> index;
  for (std::size_t i = 0; i < next.size(); ++i) index[next[i]] = static_cast<int>(i);
  data.next_size = static_cast<int>(next.size());
  for (const Coordinate& v : data.members) {
    std::vector<int> up;
    for (const Coordinate& w : Neighbors(v, spec)) {
      auto it = index.find(w);
      if (it != index.end()) up.push_back(it->second);
    }
    data.up.push_back(std::move(up));
  }
  return data;
}

ShellData ShellFromGraph(const LatticeGraph& g, int k) {
  ShellData data;
  if (k > g.max_distance()) return data;
  std::unordered_map<int, int> index;
  if (k + 1 <= g.max_distance()) {
    const auto next = g.shell(k + 1);
    for (std::size_t i = 0; i < next.size(); ++i) index[next[i]] = static_cast<int>(i);
    data.next_size = static_cast<int>(next.size());
  }
  for (int v : g.shell(k)) {
    data.members.push_back(g.vertex(v));
    std::vector<int> up;
    for (int w : g.neighbors(v)) {
      auto it = index.find(w);
      if (it != index.end()) up.push_back(it->second);
    }
    data.up.push_back(std::move(up));
  }
  return data;
}

double SubsetCount(int n, int lo, int hi) {
  double total = 0;
  for (int s = lo; s <= hi && s <= n; ++s) {
    double c = 1;
    for (int i = 0; i < s; ++i) c = c * (n - i) / (i + 1);
    total += c;
  }
  return total;
}

struct Found {
  std::vector<int> key;     // ordering key; smaller wins
  std::vector<int> subset;  // member indices
  std::int64_t actual = 0;
};

// Incremental |N(A) n next shell| under add/remove.
class Coverage {
 public:
  explicit Coverage(const ShellData& s) : s_(s), count_(s.next_size, 0) {}
  void Add(int i) {
    for (int w : s_.up[i]) covered_ += count_[w]++ == 0;
  }
  void Remove(int i) {
    for (int w : s_.up[i]) covered_ -= --count_[w] == 0;
  }
  std::int64_t covered() const { return covered_; }

 private:
  const ShellData& s_;
  std::vector<int> count_;
  std::int64_t covered_ = 0;
};

std::int64_t Cover(const ShellData& s, const std::vector<int>& subset) {
  Coverage c(s);
  for (int i : subset) c.Add(i);
  return c.covered();
}

void Keep(std::optional<Found>& best, Found candidate) {
  if (!best || candidate.key < best->key) best = std::move(candidate);
}

// Exhaustive depth-first pass over subsets whose first element index is
// congruent to `worker` modulo `workers`.
void Exhaust(const ShellData& s, int lo, int hi, int extra, int worker,
             int workers, std::int64_t& checked, std::optional<Found>& best) {
  const int n = static_cast<int>(s.members.size());
  Coverage cover(s);
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int start) -> void {
    const int size = static_cast<int>(chosen.size());
    if (size >= lo) {
      ++checked;
      if (cover.covered() < size + extra && (!best || chosen < best->key)) {
        best = Found{chosen, chosen, cover.covered()};
      }
    }
    if (size == hi) return;
    for (int i = start; i < n; ++i) {
      chosen.push_back(i);
      cover.Add(i);
      self(self, i + 1);
      cover.Remove(i);
      chosen.pop_back();
    }
  };
  for (int first = worker; first < n; first += workers) {
    chosen.assign(1, first);
    cover.Add(first);
    rec(rec, first + 1);
    cover.Remove(first);
  }
}

// Slices, orthant parts and unions of two orthant parts, as prefixes and
// suffixes of each sorted group, with sizes in [lo, hi].
std::vector<std::vector<int>> StructuredFamilies(const ShellData& s, int lo,
                                                 int hi) {
  std::set<std::vector<int>> out;
  const int n = static_cast<int>(s.members.size());
  if (n == 0) return {};
  const int d = s.members[0].dimension();
  auto emit_group = [&](const std::vector<int>& group) {
    for (int size = lo; size <= hi && size <= static_cast<int>(group.size()); ++size) {
      out.insert(std::vector<int>(group.begin(), group.begin() + size));
      out.insert(std::vector<int>(group.end() - size, group.end()));
    }
  };
  std::map<std::pair<int, int>, std::vector<int>> slices;
  std::map<std::uint32_t, std::vector<int>> orthants;
  for (int i = 0; i < n; ++i) {
    for (int axis = 0; axis < d; ++axis) slices[{axis, s.members[i][axis]}].push_back(i);
    orthants[OrthantOf(s.members[i])].push_back(i);
  }
  for (const auto& [key, group] : slices) emit_group(group);
  for (const auto& [key, group] : orthants) emit_group(group);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  emit_group(all);
  for (auto a = orthants.begin(); a != orthants.end(); ++a) {
    for (auto b = std::next(a); b != orthants.end(); ++b) {
      const auto& ga = a->second;
      const auto& gb = b->second;
      for (int size = std::max(lo, 2); size <= hi; ++size) {
        for (int x = 1; x < size; ++x) {
          if (x > static_cast<int>(ga.size()) || size - x > static_cast<int>(gb.size()))
            continue;
          std::vector<int> u(ga.begin(), ga.begin() + x);
          u.insert(u.end(), gb.begin(), gb.begin() + (size - x));
          std::sort(u.begin(), u.end());
          out.insert(std::move(u));
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

std::vector<int> SampleSubset(int n, int lo, int hi, std::uint64_t seed,
                              std::int64_t index) {
  Rng rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(index + 1));
  const int size = lo + static_cast<int>(rng.Below(hi - lo + 1));
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < size; ++i) {
    std::swap(pool[i], pool[i + rng.Below(n - i)]);
  }
  std::vector<int> subset(pool.begin(), pool.begin() + size);
  std::sort(subset.begin(), subset.end());
  return subset;
}

struct EngineResult {
  bool exhaustive = true;
  std::int64_t checked = 0;
  std::optional<Found> found;
};

template <typename Work>
void RunWorkers(int workers, Work work) {
  if (workers <= 1) {
    work(0);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  for (auto& t : pool) t.join();
}

EngineResult SearchSubsets(const ShellData& s, int lo, int hi, int extra,
                           const ExpansionOptions& options) {
  EngineResult result;
  const int n = static_cast<int>(s.members.size());
  lo = std::max(lo, 1);
  hi = std::min(hi, n);
  if (lo > hi) return result;
  const int workers = std::max(1, options.workers);
  std::vector<std::int64_t> checked(workers, 0);
  std::vector<std::optional<Found>> best(workers);

  if (SubsetCount(n, lo, hi) <= static_cast<double>(options.budget)) {
    RunWorkers(workers, [&](int w) {
      Exhaust(s, lo, hi, extra, w, workers, checked[w], best[w]);
    });
  } else {
    result.exhaustive = false;
    const auto families = StructuredFamilies(s, lo, hi);
    const std::int64_t total =
        static_cast<std::int64_t>(families.size()) + std::max<std::int64_t>(0, options.budget);
    RunWorkers(workers, [&](int w) {
      for (std::int64_t i = w; i < total; i += workers) {
        const std::size_t fi = static_cast<std::size_t>(i);
        std::vector<int> subset =
            fi < families.size()
                ? families[fi]
                : SampleSubset(n, lo, hi, options.seed,
                               i - static_cast<std::int64_t>(families.size()));
        ++checked[w];
        const std::int64_t covered = Cover(s, subset);
        if (covered < static_cast<std::int64_t>(subset.size()) + extra) {
          Keep(best[w], Found{{static_cast<int>(i)}, std::move(subset), covered});
        }
      }
    });
  }
  for (int w = 0; w < workers; ++w) {
    result.checked += checked[w];
    if (best[w]) Keep(result.found, *best[w]);
  }
  return result;
}

ExpansionReport MakeReport(std::string check, const ShellData& s, int d, int k,
                           int lo, int hi, int extra,
                           const ExpansionOptions& options) {
  ExpansionReport report;
  report.check = std::move(check);
  report.dimension = d;
  report.shell = k;
  report.size_min = lo;
  report.size_max = hi;
  report.extra = extra;
  report.orthant_only = options.orthant_only;
  report.seed = options.seed;
  const EngineResult r = SearchSubsets(s, lo, hi, extra, options);
  report.exhaustive = r.exhaustive;
  report.subsets_checked = r.checked;
  if (r.found) {
    Counterexample cx;
    for (int i : r.found->subset) cx.set.push_back(s.members[i]);
    cx.required = static_cast<std::int64_t>(cx.set.size()) + extra;
    cx.actual = r.found->actual;
    report.counterexample = std::move(cx);
  }
  return report;
}

}  // namespace

std::int64_t ExpansionSize(std::span<const Coordinate> set, int k,
                           const LatticeSpec& spec, bool orthant_only) {
  std::set<Coordinate> up;
  for (const Coordinate& v : set) {
    if (!spec.Contains(v) || spec.Distance(v) != k ||
        (orthant_only && !spec.InPositiveOrthant(v))) {
      throw DomainError(v.ToString() + " is not in shell " + std::to_string(k));
    }
    for (const Coordinate& w : Neighbors(v, spec)) {
      if (spec.Distance(w) != k + 1) continue;
      if (orthant_only && !spec.InPositiveOrthant(w)) continue;
      up.insert(w);
    }
  }
  return static_cast<std::int64_t>(up.size());
}

ExpansionReport CheckFrontGrowth(int d, int k, int size_min, int size_max,
                                 const ExpansionOptions& options) {
  if (d < 3) throw DomainError("front growth is stated for d >= 3");
  if (k < 0) throw DomainError("shell index must be nonnegative");
  const LatticeSpec spec = LatticeSpec::Box(d, k + 1);
  const ShellData s = ShellFromSpec(spec, k, options.orthant_only);
  const int lo = std::max(size_min, 2 * d - 2);
  return MakeReport("front-growth", s, d, k, lo, size_max, 2 * d - 2, options);
}

ExpansionReport CheckFirstShell(int d, const ExpansionOptions& options) {
  if (d < 3) throw DomainError("first-shell growth is stated for d >= 3");
  ExpansionOptions exhaustive = options;
  exhaustive.orthant_only = false;
  exhaustive.budget = std::max<std::int64_t>(options.budget, std::int64_t{1} << (2 * d));
  const ShellData s = ShellFromSpec(LatticeSpec::Box(d, 2), 1, false);
  return MakeReport("first-shell", s, d, 1, 2, 2 * d, 4 * d - 6, exhaustive);
}

ExpansionReport CheckGrowthL3(int f, int k, int size_cap,
                              const ExpansionOptions& options) {
  if (f < 1) throw DomainError("f must be at least 1");
  if (k < 0) throw DomainError("shell index must be nonnegative");
  ExpansionOptions orthant = options;
  orthant.orthant_only = true;
  const ShellData s = ShellFromSpec(LatticeSpec::Box(3, k + 1), k, true);
  const int threshold = (f - 1) * (f - 2) / 2;
  return MakeReport("growth-l3", s, 3, k, threshold + 1, size_cap, f, orthant);
}

std::int64_t SigmaExcess(std::span<const int> sigma) {
  if (sigma.empty()) throw DomainError("sigma sequence is empty");
  std::int64_t g = 0;
  int previous = 0;
  for (int value : sigma) {
    if (value < 1) throw DomainError("sigma entries must be positive");
    g += std::max(0, value + 1 - previous);
    previous = value;
  }
  return g;
}

ExpansionReport CheckSigmaClaim(int f, int max_len, int max_val) {
  if (f < 1 || max_len < 1 || max_val < 1) {
    throw DomainError("sigma check needs positive parameters");
  }
  ExpansionReport report;
  report.check = "sigma";
  report.dimension = 3;
  report.size_min = 1;
  report.size_max = max_len;
  report.extra = f;
  const std::int64_t cap = static_cast<std::int64_t>(f - 1) * (f - 2) / 2;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<int> sigma(len, 1);
    while (true) {
      ++report.subsets_checked;
      const std::int64_t sum = std::accumulate(sigma.begin(), sigma.end(), std::int64_t{0});
      if (SigmaExcess(sigma) < f && sum > cap && !report.counterexample) {
        report.counterexample = Counterexample{{}, sigma, cap, sum};
      }
      int i = len - 1;
      while (i >= 0 && sigma[i] == max_val) sigma[i--] = 1;
      if (i < 0) break;
      ++sigma[i];
    }
  }
  return report;
}

void HallHypothesis::Validate() const {
  if (f < 1) throw DomainError("hypothesis needs f >= 1");
  if (h < 0) throw DomainError("hypothesis needs h >= 0");
  if (static_cast<int>(a.size()) != h + 1) {
    throw DomainError("hypothesis needs exactly h + 1 growth constants");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < f) {
      throw DomainError("growth constant a_" + std::to_string(i) + " = " +
                        std::to_string(a[i]) + " is below f = " + std::to_string(f));
    }
  }
}

std::int64_t HallHypothesis::SizeThreshold(int k) const {
  std::int64_t t = 1;
  for (int i = 0; i < std::min(k, h + 1); ++i) t += a[i] - f;
  return t;
}

int HallHypothesis::Extra(int k) const { return k <= h ? a[k] : f; }

std::int64_t HallLowerBound(const HallHypothesis& hyp, int n,
                            std::int64_t reserve) {
  if (n < 0) throw DomainError("step must be nonnegative");
  if (n == 0) return 1;
  std::int64_t bound = 1 + reserve;
  const int last = std::min(n - 1, hyp.h);
  for (int i = 0; i <= last; ++i) bound += hyp.a[i] - hyp.f;
  return bound;
}

std::vector<ExpansionReport> VerifyHallHypothesis(const LatticeGraph& graph,
                                                  const HallHypothesis& hyp,
                                                  int max_shell,
                                                  const ExpansionOptions& options) {
  hyp.Validate();
  std::vector<ExpansionReport> reports;
  for (int k = 0; k <= max_shell && k < graph.max_distance(); ++k) {
    const ShellData s = ShellFromGraph(graph, k);
    const int lo = static_cast<int>(std::min<std::int64_t>(
        hyp.SizeThreshold(k), static_cast<std::int64_t>(s.members.size()) + 1));
    reports.push_back(MakeReport("hall-hypothesis", s,
                                 graph.spec().dimension(), k, lo,
                                 static_cast<int>(s.members.size()),
                                 hyp.Extra(k), options));
  }
  return reports;
}

namespace {

template <typename Bound>
void CheckRun(TrajectoryReport& report, const SimulationTrace& trace,
              const std::string& policy, std::uint64_t seed, Bound bound) {
  ++report.runs;
  for (const StepRecord& rec : trace.records) {
    ++report.steps_checked;
    const std::int64_t need = bound(rec.step, rec.reserve);
    const bool ok = report.check == "octant"
                        ? rec.burnt_in_shell - rec.reserve >= need
                        : rec.burnt_in_shell >= need;
    if (ok) continue;
    ++report.violations;
    if (!report.first_violation) {
      report.first_violation = TrajectoryViolation{
          policy, seed, rec.step, rec.burnt_in_shell, rec.reserve, need};
    }
  }
}

}  // namespace

TrajectoryReport CheckHallTrajectory(const HallConfig& config) {
  config.hypothesis.Validate();
  if (config.horizon < 0) throw DomainError("horizon must be nonnegative");
  TrajectoryReport report;
  report.check = "hall";
  const auto graph = LatticeGraph::Make(config.spec);
  const Coordinate root = config.spec.root();
  const std::span<const Coordinate> outbreak(&root, 1);
  if (config.verify_shells >= 0) {
    report.hypothesis_checked = true;
    report.hypothesis_reports = VerifyHallHypothesis(
        *graph, config.hypothesis, config.verify_shells, config.verify_options);
    report.hypothesis_holds = std::all_of(
        report.hypothesis_reports.begin(), report.hypothesis_reports.end(),
        [](const ExpansionReport& r) { return r.ok(); });
  }
  auto bound = [&](int n, std::int64_t reserve) {
    return HallLowerBound(config.hypothesis, n, reserve);
  };
  const int f = config.hypothesis.f;
  for (int r = 0; r < config.runs; ++r) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(r);
    const auto schedule = RandomPolicy(graph, outbreak, f, config.horizon, seed);
    CheckRun(report, Run(graph, outbreak, schedule, config.horizon).trace,
             "random", seed, bound);
  }
  if (config.greedy) {
    const auto schedule = GreedyFrontierPolicy(graph, outbreak, f, config.horizon);
    CheckRun(report, Run(graph, outbreak, schedule, config.horizon).trace,
             "greedy", 0, bound);
  }
  return report;
}

TrajectoryReport CheckOctantClaim(int n, std::uint64_t seed, int runs,
                                  bool greedy) {
  if (n < 1) throw DomainError("octant claim needs n >= 1");
  TrajectoryReport report;
  report.check = "octant";
  const auto graph = LatticeGraph::Make(LatticeSpec::Octant(3, 3 * n));
  const Coordinate root = Coordinate::Zero(3);
  const std::span<const Coordinate> outbreak(&root, 1);
  const int horizon = 3 * n;
  auto bound = [](int t, std::int64_t) {
    return (static_cast<std::int64_t>(t) * t + t + 2) / 2;
  };
  for (int r = 0; r < runs; ++r) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(r);
    const auto schedule = RandomPolicy(graph, outbreak, 1, horizon, s);
    CheckRun(report, Run(graph, outbreak, schedule, horizon).trace, "random", s,
             bound);
  }
  if (greedy) {
    const auto schedule = GreedyFrontierPolicy(graph, outbreak, 1, horizon);
    CheckRun(report, Run(graph, outbreak, schedule, horizon).trace, "greedy", 0,
             bound);
  }
  return report;
}

}  // namespace firebreak
