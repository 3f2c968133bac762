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

// Finite checks of shell-expansion inequalities and of the Hall-type lower
// bound on burnt vertices.
//
// Every check enumerates subsets A of a shell D_k and compares
// |N(A) n D_(k+1)| with |A| + c. Enumeration is exhaustive when the number of
// subsets fits the budget, otherwise seeded samples plus structured families
// (slices and orthant unions). Results are deterministic for a fixed seed and
// do not depend on the worker count.

#ifndef FIREBREAK_EXPANSION_H_
#define FIREBREAK_EXPANSION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "firebreak/lattice.h"
#include "firebreak/simulation.h"

namespace firebreak {

// |N(A) n D_(k+1)|, or n D_(k+1)^+ when orthant_only. Throws DomainError if
// A is not inside D_k (D_k^+) of `spec`.
std::int64_t ExpansionSize(std::span<const Coordinate> set, int k,
                           const LatticeSpec& spec, bool orthant_only);

struct ExpansionOptions {
  bool orthant_only = false;
  std::int64_t budget = 10'000'000;  // exhaust when the subset count fits
  std::uint64_t seed = 0;
  int workers = 1;
};

struct Counterexample {
  std::vector<Coordinate> set;  // A, lexicographic
  std::vector<int> sequence;    // sigma checks only
  std::int64_t required = 0;
  std::int64_t actual = 0;
};

struct ExpansionReport {
  std::string check;
  int dimension = 0;
  int shell = 0;
  int size_min = 0;
  int size_max = 0;
  int extra = 0;  // the c in |A| + c
  bool orthant_only = false;
  bool exhaustive = true;
  std::int64_t subsets_checked = 0;
  std::uint64_t seed = 0;
  std::optional<Counterexample> counterexample;

  bool ok() const { return !counterexample.has_value(); }
};

// |A| >= 2d - 2 implies expansion >= |A| + 2d - 2. Sizes below 2d - 2 are
// outside the claim and skipped; size_min in the report is the effective one.
ExpansionReport CheckFrontGrowth(int d, int k, int size_min, int size_max,
                                 const ExpansionOptions& options = {});
// Every A in D_1 with |A| >= 2: expansion >= |A| + 4d - 6.
ExpansionReport CheckFirstShell(int d, const ExpansionOptions& options = {});
// A in D_k^+ of Z^3 with (f-1)(f-2)/2 < |A| <= size_cap: expansion inside
// D_(k+1)^+ is at least |A| + f.
ExpansionReport CheckGrowthL3(int f, int k, int size_cap,
                              const ExpansionOptions& options = {});

// g(sigma) = sum_r max(0, sigma_r + 1 - sigma_(r-1)), sigma before the first
// entry taken as 0. Throws DomainError on an empty or non-positive sequence.
std::int64_t SigmaExcess(std::span<const int> sigma);
// Over positive sequences of length <= max_len with entries <= max_val:
// g(sigma) < f implies sum(sigma) <= (f-1)(f-2)/2.
ExpansionReport CheckSigmaClaim(int f, int max_len, int max_val);

struct HallHypothesis {
  int f = 0;
  int h = 0;
  std::vector<int> a;  // a_0 .. a_h

  // Throws DomainError unless f >= 1, h >= 0, |a| = h + 1, every a_i >= f.
  void Validate() const;
  // Minimum |A| for which shell k must expand (k >= 1).
  std::int64_t SizeThreshold(int k) const;
  // Required extra expansion at shell k.
  int Extra(int k) const;
};

// 1 if n = 0; 1 + r_n + sum_{i<n} (a_i - f) if n <= h + 1; capped at i <= h.
std::int64_t HallLowerBound(const HallHypothesis& hypothesis, int n,
                            std::int64_t reserve);

// Checks the expansion hypotheses on shells 0..max_shell of `graph`.
std::vector<ExpansionReport> VerifyHallHypothesis(
    const LatticeGraph& graph, const HallHypothesis& hypothesis, int max_shell,
    const ExpansionOptions& options = {});

struct TrajectoryViolation {
  std::string policy;  // "random" or "greedy"
  std::uint64_t seed = 0;
  int step = 0;
  std::int64_t burnt_in_shell = 0;
  std::int64_t reserve = 0;
  std::int64_t bound = 0;
};

struct TrajectoryReport {
  std::string check;
  std::int64_t runs = 0;
  std::int64_t steps_checked = 0;
  std::int64_t violations = 0;
  std::optional<TrajectoryViolation> first_violation;
  bool hypothesis_checked = false;
  bool hypothesis_holds = false;
  std::vector<ExpansionReport> hypothesis_reports;

  bool ok() const { return violations == 0; }
};

struct HallConfig {
  LatticeSpec spec = LatticeSpec::Box(3, 9);
  HallHypothesis hypothesis;
  int horizon = 8;
  std::uint64_t seed = 0;
  int runs = 100;
  bool greedy = true;
  // Hypothesis verification on shells 0..verify_shells (-1 skips it).
  int verify_shells = -1;
  ExpansionOptions verify_options;
};

// Runs seeded random policies (and the greedy frontier policy) from the root
// and compares B_n with HallLowerBound at every step. Validates the
// hypothesis first (DomainError on a malformed one).
TrajectoryReport CheckHallTrajectory(const HallConfig& config);

// |B_t| - r_t >= (t^2 + t + 2) / 2 for t <= 3n in the octant graph of radius
// 3n with one firefighter per step.
TrajectoryReport CheckOctantClaim(int n, std::uint64_t seed, int runs,
                                  bool greedy);

}  // namespace firebreak

#endif  // FIREBREAK_EXPANSION_H_
