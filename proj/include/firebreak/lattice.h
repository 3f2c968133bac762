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

// Square-lattice geometry: coordinates, the finite graph families the toolkit
// simulates on, distance shells and orthants.

#ifndef FIREBREAK_LATTICE_H_
#define FIREBREAK_LATTICE_H_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace firebreak {

inline constexpr int kMaxDimension = 8;

// An integer lattice point. Ordering is lexicographic on the entries.
class Coordinate {
 public:
  Coordinate() = default;
  Coordinate(std::initializer_list<int> entries);
  explicit Coordinate(std::span<const int> entries);

  static Coordinate Zero(int dimension);

  int dimension() const { return dimension_; }
  int operator[](int axis) const { return entries_[axis]; }
  int& operator[](int axis) { return entries_[axis]; }

  std::span<const int> entries() const {
    return {entries_.data(), static_cast<std::size_t>(dimension_)};
  }

  // Sum of absolute values.
  int L1Norm() const;
  std::string ToString() const;

  friend auto operator<=>(const Coordinate&, const Coordinate&) = default;

 private:
  int dimension_ = 0;
  std::array<int, kMaxDimension> entries_{};
};

struct CoordinateHash {
  std::size_t operator()(const Coordinate& c) const noexcept;
};

// Truncated Z^d: every v with |v_i| <= radius. Stand-in for the infinite
// lattice; fire touching the box surface marks a run boundary-contaminated.
struct BoxLattice {
  int radius = 0;
  friend bool operator==(const BoxLattice&, const BoxLattice&) = default;
};

// Nonnegative orthant cut at l1 radius: v_i >= 0 and sum(v) <= radius.
struct OctantGraph {
  int radius = 0;
  friend bool operator==(const OctantGraph&, const OctantGraph&) = default;
};

// P_n x ... x P_n: 0 <= v_i <= side - 1.
struct PathGrid {
  int side = 0;
  friend bool operator==(const PathGrid&, const PathGrid&) = default;
};

// Nonnegative vertices at distance >= shell from the origin with the whole
// shell identified into one root vertex. The root is labelled by the origin.
// The graph is cut at outer_radius; reaching it marks contamination.
struct QuotientRoot {
  int shell = 0;
  int outer_radius = 0;
  friend bool operator==(const QuotientRoot&, const QuotientRoot&) = default;
};

using Geometry = std::variant<BoxLattice, OctantGraph, PathGrid, QuotientRoot>;

class LatticeSpec {
 public:
  // Root defaults to the origin. Throws DomainError on bad parameters.
  static LatticeSpec Box(int dimension, int radius);
  static LatticeSpec Box(int dimension, int radius, const Coordinate& root);
  static LatticeSpec Octant(int dimension, int radius);
  static LatticeSpec Grid(int dimension, int side);
  static LatticeSpec Grid(int dimension, int side, const Coordinate& root);
  static LatticeSpec Quotient(int dimension, int shell, int outer_radius);

  int dimension() const { return dimension_; }
  const Geometry& geometry() const { return geometry_; }
  const Coordinate& root() const { return root_; }
  std::string GeometryName() const;

  bool Contains(const Coordinate& v) const;
  // Graph distance from the root; v must be a vertex.
  int Distance(const Coordinate& v) const;
  // Largest distance any vertex can have.
  int MaxDistance() const;
  // True on the surface of a stand-in for an infinite graph (box faces,
  // quotient outer radius).
  bool OnGuardBoundary(const Coordinate& v) const;
  // True when v lies in the all-nonnegative orthant around the root.
  bool InPositiveOrthant(const Coordinate& v) const;

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

 private:
  LatticeSpec(int dimension, Geometry geometry, Coordinate root);

  int dimension_ = 0;
  Geometry geometry_;
  Coordinate root_;
};

// Exactly the vertices of `spec` adjacent to v, in lexicographic order.
// Throws DomainError if v is not a vertex of spec.
std::vector<Coordinate> Neighbors(const Coordinate& v, const LatticeSpec& spec);

struct Shell {
  int index = 0;
  std::vector<Coordinate> members;  // lexicographic
};

// D_k of spec. Empty when k exceeds the geometry's radius.
Shell Sphere(const LatticeSpec& spec, int k);
// D_k^+: the part of D_k in the all-nonnegative orthant around the root.
Shell SpherePositive(const LatticeSpec& spec, int k);

// D_k of the unbounded lattice Z^d around the origin, optionally restricted to
// the nonnegative orthant.
std::vector<Coordinate> LatticeShell(int dimension, int k, bool positive_only);

// v with coordinate `axis` (0-based) pushed one step away from the
// x_axis = -1/2 hyperplane. Stays in v's orthant and moves one shell outward.
Coordinate AdvanceToward(const Coordinate& v, int axis);

// Orthant index: bit i is set when v_i < 0.
std::uint32_t OrthantOf(const Coordinate& v);

// Finite indexed form of a LatticeSpec used by the simulator and solvers.
// Vertices are stored in lexicographic order; adjacency is CSR.
class LatticeGraph {
 public:
  explicit LatticeGraph(const LatticeSpec& spec);

  static std::shared_ptr<const LatticeGraph> Make(const LatticeSpec& spec);

  const LatticeSpec& spec() const { return spec_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const Coordinate& vertex(int index) const { return vertices_[index]; }
  const std::vector<Coordinate>& vertices() const { return vertices_; }

  // -1 when v is not a vertex.
  int IndexOf(const Coordinate& v) const;
  // Throws DomainError when v is not a vertex.
  int RequireIndex(const Coordinate& v) const;

  std::span<const int> neighbors(int index) const {
    return {adjacency_.data() + offsets_[index],
            adjacency_.data() + offsets_[index + 1]};
  }
  int distance(int index) const { return distance_[index]; }
  bool on_guard_boundary(int index) const { return guard_[index] != 0; }
  int root_index() const { return root_index_; }
  int max_distance() const { return max_distance_; }
  // Vertex indices at distance k, ascending. Empty past max_distance().
  std::span<const int> shell(int k) const;

 private:
  LatticeSpec spec_;
  std::vector<Coordinate> vertices_;
  std::unordered_map<Coordinate, int, CoordinateHash> index_;
  std::vector<int> offsets_;
  std::vector<int> adjacency_;
  std::vector<int> distance_;
  std::vector<std::uint8_t> guard_;
  std::vector<std::vector<int>> shells_;
  int root_index_ = -1;
  int max_distance_ = 0;
};

}  // namespace firebreak

#endif  // FIREBREAK_LATTICE_H_
