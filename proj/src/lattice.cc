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

#include "firebreak/lattice.h"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "firebreak/errors.h"

namespace firebreak {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int Sum(const Coordinate& v) {
  int s = 0;
  for (int x : v.entries()) s += x;
  return s;
}

bool AllNonNegative(const Coordinate& v) {
  return std::all_of(v.entries().begin(), v.entries().end(),
                     [](int x) { return x >= 0; });
}

int L1Distance(const Coordinate& a, const Coordinate& b) {
  int s = 0;
  for (int i = 0; i < a.dimension(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

void CheckDimension(int dimension) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw DomainError("dimension must be in [1, " +
                      std::to_string(kMaxDimension) + "], got " +
                      std::to_string(dimension));
  }
}

// Calls visit(v) for every v with l1 norm `k`, in lexicographic order.
void ForEachShellPoint(int dimension, int k, bool positive_only,
                       const std::function<void(const Coordinate&)>& visit) {
  Coordinate v = Coordinate::Zero(dimension);
  std::function<void(int, int)> rec = [&](int axis, int remaining) {
    if (axis == dimension - 1) {
      if (remaining == 0) {
        v[axis] = 0;
        visit(v);
        return;
      }
      if (!positive_only) {
        v[axis] = -remaining;
        visit(v);
      }
      v[axis] = remaining;
      visit(v);
      return;
    }
    for (int x = positive_only ? 0 : -remaining; x <= remaining; ++x) {
      v[axis] = x;
      rec(axis + 1, remaining - std::abs(x));
    }
    v[axis] = 0;
  };
  rec(0, k);
}

// Lattice neighbours v +- e_i (unfiltered).
void LatticeNeighbors(const Coordinate& v, std::vector<Coordinate>& out) {
  for (int i = 0; i < v.dimension(); ++i) {
    Coordinate w = v;
    w[i] -= 1;
    out.push_back(w);
    w[i] += 2;
    out.push_back(w);
  }
}

void AppendNeighbors(const Coordinate& v, const LatticeSpec& spec,
                     std::vector<Coordinate>& out) {
  const std::size_t start = out.size();
  if (const auto* q = std::get_if<QuotientRoot>(&spec.geometry())) {
    if (v == spec.root()) {
      // N(D_k^+) within D_{k+1}^+: every u there has a lattice neighbour in D_k^+.
      if (q->shell + 1 <= q->outer_radius) {
        ForEachShellPoint(spec.dimension(), q->shell + 1, true,
                          [&](const Coordinate& u) { out.push_back(u); });
      }
    } else {
      std::vector<Coordinate> raw;
      LatticeNeighbors(v, raw);
      bool touches_root = false;
      for (const Coordinate& w : raw) {
        if (!AllNonNegative(w)) continue;
        const int s = Sum(w);
        if (s == q->shell) {
          touches_root = true;
        } else if (s > q->shell && s <= q->outer_radius) {
          out.push_back(w);
        }
      }
      if (touches_root) out.push_back(spec.root());
    }
  } else {
    std::vector<Coordinate> raw;
    LatticeNeighbors(v, raw);
    for (const Coordinate& w : raw) {
      if (spec.Contains(w)) out.push_back(w);
    }
  }
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
}

}  // namespace

Coordinate::Coordinate(std::initializer_list<int> entries)
    : Coordinate(std::span<const int>(entries.begin(), entries.size())) {}

Coordinate::Coordinate(std::span<const int> entries) {
  if (entries.empty() || entries.size() > kMaxDimension) {
    throw DomainError("coordinate dimension must be in [1, " +
                      std::to_string(kMaxDimension) + "]");
  }
  dimension_ = static_cast<int>(entries.size());
  std::copy(entries.begin(), entries.end(), entries_.begin());
}

Coordinate Coordinate::Zero(int dimension) {
  CheckDimension(dimension);
  Coordinate c;
  c.dimension_ = dimension;
  return c;
}

int Coordinate::L1Norm() const {
  int s = 0;
  for (int x : entries()) s += std::abs(x);
  return s;
}

std::string Coordinate::ToString() const {
  std::ostringstream out;
  out << '(';
  for (int i = 0; i < dimension_; ++i) {
    if (i) out << ',';
    out << entries_[i];
  }
  out << ')';
  return out.str();
}

std::size_t CoordinateHash::operator()(const Coordinate& c) const noexcept {
  std::size_t h = static_cast<std::size_t>(c.dimension()) * 0x9e3779b97f4a7c15ULL;
  for (int x : c.entries()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x)) +
         0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

LatticeSpec::LatticeSpec(int dimension, Geometry geometry, Coordinate root)
    : dimension_(dimension), geometry_(geometry), root_(root) {}

LatticeSpec LatticeSpec::Box(int dimension, int radius) {
  CheckDimension(dimension);
  return Box(dimension, radius, Coordinate::Zero(dimension));
}

LatticeSpec LatticeSpec::Box(int dimension, int radius, const Coordinate& root) {
  CheckDimension(dimension);
  if (radius < 0) throw DomainError("box radius must be nonnegative");
  LatticeSpec spec(dimension, BoxLattice{radius}, root);
  if (root.dimension() != dimension || !spec.Contains(root)) {
    throw DomainError("root " + root.ToString() + " is not in the box");
  }
  return spec;
}

LatticeSpec LatticeSpec::Octant(int dimension, int radius) {
  CheckDimension(dimension);
  if (radius < 0) throw DomainError("octant radius must be nonnegative");
  return LatticeSpec(dimension, OctantGraph{radius}, Coordinate::Zero(dimension));
}

LatticeSpec LatticeSpec::Grid(int dimension, int side) {
  CheckDimension(dimension);
  return Grid(dimension, side, Coordinate::Zero(dimension));
}

LatticeSpec LatticeSpec::Grid(int dimension, int side, const Coordinate& root) {
  CheckDimension(dimension);
  if (side < 1) throw DomainError("grid side must be positive");
  LatticeSpec spec(dimension, PathGrid{side}, root);
  if (root.dimension() != dimension || !spec.Contains(root)) {
    throw DomainError("root " + root.ToString() + " is not in the grid");
  }
  return spec;
}

LatticeSpec LatticeSpec::Quotient(int dimension, int shell, int outer_radius) {
  CheckDimension(dimension);
  if (shell < 0) throw DomainError("quotient shell must be nonnegative");
  if (outer_radius <= shell) {
    throw DomainError("quotient outer radius must exceed the shell index");
  }
  return LatticeSpec(dimension, QuotientRoot{shell, outer_radius},
                     Coordinate::Zero(dimension));
}

std::string LatticeSpec::GeometryName() const {
  return std::visit(Overloaded{
                        [](const BoxLattice&) { return std::string("box"); },
                        [](const OctantGraph&) { return std::string("octant"); },
                        [](const PathGrid&) { return std::string("grid"); },
                        [](const QuotientRoot&) { return std::string("quotient"); },
                    },
                    geometry_);
}

bool LatticeSpec::Contains(const Coordinate& v) const {
  if (v.dimension() != dimension_) return false;
  return std::visit(
      Overloaded{
          [&](const BoxLattice& g) {
            return std::all_of(v.entries().begin(), v.entries().end(),
                               [&](int x) { return std::abs(x) <= g.radius; });
          },
          [&](const OctantGraph& g) {
            return AllNonNegative(v) && Sum(v) <= g.radius;
          },
          [&](const PathGrid& g) {
            return std::all_of(v.entries().begin(), v.entries().end(),
                               [&](int x) { return x >= 0 && x < g.side; });
          },
          [&](const QuotientRoot& g) {
            if (v == root_) return true;
            const int s = Sum(v);
            return AllNonNegative(v) && s > g.shell && s <= g.outer_radius;
          },
      },
      geometry_);
}

int LatticeSpec::Distance(const Coordinate& v) const {
  if (!Contains(v)) {
    throw DomainError("vertex " + v.ToString() + " is not in the " +
                      GeometryName() + " graph");
  }
  if (const auto* q = std::get_if<QuotientRoot>(&geometry_)) {
    return v == root_ ? 0 : Sum(v) - q->shell;
  }
  return L1Distance(v, root_);
}

int LatticeSpec::MaxDistance() const {
  return std::visit(
      Overloaded{
          [&](const BoxLattice& g) {
            int s = 0;
            for (int x : root_.entries()) s += std::max(g.radius - x, g.radius + x);
            return s;
          },
          [&](const OctantGraph& g) { return g.radius; },
          [&](const PathGrid& g) {
            int s = 0;
            for (int x : root_.entries()) s += std::max(x, g.side - 1 - x);
            return s;
          },
          [&](const QuotientRoot& g) { return g.outer_radius - g.shell; },
      },
      geometry_);
}

bool LatticeSpec::OnGuardBoundary(const Coordinate& v) const {
  return std::visit(
      Overloaded{
          [&](const BoxLattice& g) {
            return std::any_of(v.entries().begin(), v.entries().end(),
                               [&](int x) { return std::abs(x) == g.radius; });
          },
          [](const OctantGraph&) { return false; },
          [](const PathGrid&) { return false; },
          [&](const QuotientRoot& g) {
            return v != root_ && Sum(v) == g.outer_radius;
          },
      },
      geometry_);
}

bool LatticeSpec::InPositiveOrthant(const Coordinate& v) const {
  for (int i = 0; i < dimension_; ++i) {
    if (v[i] - root_[i] < 0) return false;
  }
  return true;
}

std::vector<Coordinate> Neighbors(const Coordinate& v, const LatticeSpec& spec) {
  if (!spec.Contains(v)) {
    throw DomainError("vertex " + v.ToString() + " is not in the " +
                      spec.GeometryName() + " graph");
  }
  std::vector<Coordinate> out;
  AppendNeighbors(v, spec, out);
  return out;
}

std::vector<Coordinate> LatticeShell(int dimension, int k, bool positive_only) {
  CheckDimension(dimension);
  std::vector<Coordinate> out;
  if (k < 0) return out;
  ForEachShellPoint(dimension, k, positive_only,
                    [&](const Coordinate& v) { out.push_back(v); });
  return out;
}

namespace {

Shell SphereImpl(const LatticeSpec& spec, int k, bool positive_only) {
  Shell shell{k, {}};
  if (k < 0) throw DomainError("shell index must be nonnegative");
  if (k > spec.MaxDistance()) return shell;
  if (const auto* q = std::get_if<QuotientRoot>(&spec.geometry())) {
    if (k == 0) {
      shell.members.push_back(spec.root());
    } else {
      // Quotient vertices are all nonnegative already.
      ForEachShellPoint(spec.dimension(), q->shell + k, true,
                        [&](const Coordinate& u) {
                          if (spec.Contains(u)) shell.members.push_back(u);
                        });
    }
    return shell;
  }
  const Coordinate& root = spec.root();
  ForEachShellPoint(spec.dimension(), k, positive_only, [&](const Coordinate& u) {
    Coordinate v = u;
    for (int i = 0; i < v.dimension(); ++i) v[i] += root[i];
    if (spec.Contains(v)) shell.members.push_back(v);
  });
  // Translation preserves lexicographic order.
  return shell;
}

}  // namespace

Shell Sphere(const LatticeSpec& spec, int k) { return SphereImpl(spec, k, false); }

Shell SpherePositive(const LatticeSpec& spec, int k) {
  return SphereImpl(spec, k, true);
}

Coordinate AdvanceToward(const Coordinate& v, int axis) {
  if (axis < 0 || axis >= v.dimension()) {
    throw DomainError("axis " + std::to_string(axis) + " out of range for " +
                      v.ToString());
  }
  Coordinate w = v;
  w[axis] += (v[axis] >= 0) ? 1 : -1;
  return w;
}

std::uint32_t OrthantOf(const Coordinate& v) {
  std::uint32_t mask = 0;
  for (int i = 0; i < v.dimension(); ++i) {
    if (v[i] < 0) mask |= (1u << i);
  }
  return mask;
}

LatticeGraph::LatticeGraph(const LatticeSpec& spec) : spec_(spec) {
  const int d = spec.dimension();
  // Enumerate a bounding box in lexicographic order and filter.
  Coordinate lo = Coordinate::Zero(d);
  Coordinate hi = Coordinate::Zero(d);
  std::visit(Overloaded{
                 [&](const BoxLattice& g) {
                   for (int i = 0; i < d; ++i) {
                     lo[i] = -g.radius;
                     hi[i] = g.radius;
                   }
                 },
                 [&](const OctantGraph& g) {
                   for (int i = 0; i < d; ++i) hi[i] = g.radius;
                 },
                 [&](const PathGrid& g) {
                   for (int i = 0; i < d; ++i) hi[i] = g.side - 1;
                 },
                 [&](const QuotientRoot& g) {
                   for (int i = 0; i < d; ++i) hi[i] = g.outer_radius;
                 },
             },
             spec.geometry());
  const bool simplex = std::holds_alternative<OctantGraph>(spec.geometry()) ||
                       std::holds_alternative<QuotientRoot>(spec.geometry());
  Coordinate v = lo;
  std::function<void(int, int)> rec = [&](int axis, int partial_sum) {
    if (axis == d) {
      if (spec.Contains(v)) vertices_.push_back(v);
      return;
    }
    for (int x = lo[axis]; x <= hi[axis]; ++x) {
      if (simplex && partial_sum + x > hi[axis]) break;
      v[axis] = x;
      rec(axis + 1, partial_sum + x);
    }
  };
  rec(0, 0);

  index_.reserve(vertices_.size() * 2);
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
    index_.emplace(vertices_[i], i);
  }
  offsets_.reserve(vertices_.size() + 1);
  offsets_.push_back(0);
  distance_.reserve(vertices_.size());
  guard_.reserve(vertices_.size());
  std::vector<Coordinate> buffer;
  for (const Coordinate& u : vertices_) {
    buffer.clear();
    AppendNeighbors(u, spec, buffer);
    for (const Coordinate& w : buffer) adjacency_.push_back(index_.at(w));
    offsets_.push_back(static_cast<int>(adjacency_.size()));
    distance_.push_back(spec.Distance(u));
    guard_.push_back(spec.OnGuardBoundary(u) ? 1 : 0);
    max_distance_ = std::max(max_distance_, distance_.back());
  }
  root_index_ = index_.at(spec.root());
  shells_.resize(static_cast<std::size_t>(max_distance_) + 1);
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
    shells_[distance_[i]].push_back(i);
  }
}

std::span<const int> LatticeGraph::shell(int k) const {
  if (k < 0 || k > max_distance_) return {};
  return shells_[k];
}

std::shared_ptr<const LatticeGraph> LatticeGraph::Make(const LatticeSpec& spec) {
  return std::make_shared<const LatticeGraph>(spec);
}

int LatticeGraph::IndexOf(const Coordinate& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

int LatticeGraph::RequireIndex(const Coordinate& v) const {
  const int i = IndexOf(v);
  if (i < 0) {
    throw DomainError("vertex " + v.ToString() + " is not in the " +
                      spec_.GeometryName() + " graph");
  }
  return i;
}

}  // namespace firebreak
