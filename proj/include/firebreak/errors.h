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

#ifndef FIREBREAK_ERRORS_H_
#define FIREBREAK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace firebreak {

// A value lies outside the domain of an operation: a coordinate that is not a
// vertex of the graph, a malformed parameter, a set outside its shell.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base for violations of the game rules.
class RuleViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A firefighter was placed on a burnt or already defended vertex.
class IllegalDefense : public RuleViolation {
 public:
  using RuleViolation::RuleViolation;
};

// More than f placements in one step, or the same vertex twice.
class BudgetViolation : public RuleViolation {
 public:
  using RuleViolation::RuleViolation;
};

}  // namespace firebreak

#endif  // FIREBREAK_ERRORS_H_
