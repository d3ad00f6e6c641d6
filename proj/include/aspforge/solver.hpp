// Copyright 2026 The aspforge Authors
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

#ifndef ASPFORGE_SOLVER_HPP_
#define ASPFORGE_SOLVER_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "aspforge/grounding.hpp"
#include "aspforge/syntax.hpp"

namespace aspforge {

// Total violation weight per priority level; levels with zero total are not
// stored. Vectors are ordered lexicographically from the highest level down,
// smaller weight first.
struct CostVector {
  std::map<long long, long long> per_level;

  static int compare(const CostVector& a, const CostVector& b);
  std::string to_string() const;  // "0" or "w@l" pairs, highest level first
};

bool operator==(const CostVector& a, const CostVector& b);
inline bool operator!=(const CostVector& a, const CostVector& b) {
  return !(a == b);
}
inline bool operator<(const CostVector& a, const CostVector& b) {
  return CostVector::compare(a, b) < 0;
}

struct AnswerSet {
  std::vector<Atom> atoms;  // sorted
  CostVector cost;
};

struct SolveResult {
  std::vector<AnswerSet> all;      // every answer set, sorted by atom set
  std::vector<AnswerSet> optimal;  // the subset with minimal cost
};

struct SolveOptions {
  std::size_t max_atoms = 24;        // enumerator universe cap
  std::size_t max_models = 1'000'000;
};

// Gelfond-Lifschitz reduct: drops weak constraints, deletes every rule whose
// negated body intersects the candidate, and strips the remaining negations.
GroundProgram reduct(const GroundProgram& program,
                     const std::vector<Atom>& candidate);

// True iff the candidate satisfies every rule of the positive program and no
// proper subset does. The program must carry no negated atoms.
bool is_minimal_model(const GroundProgram& positive_program,
                      const std::vector<Atom>& candidate);

// Enumerates every answer set (minimal models of the reduct w.r.t.
// themselves), attaches weak-constraint costs, and selects the optimal ones.
// Throws CapacityError when the atom universe exceeds options.max_atoms.
SolveResult answer_sets(const GroundProgram& program,
                        const SolveOptions& options = {});

}  // namespace aspforge

#endif  // ASPFORGE_SOLVER_HPP_
