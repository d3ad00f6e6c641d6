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

#ifndef ASPFORGE_GROUNDING_HPP_
#define ASPFORGE_GROUNDING_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aspforge/syntax.hpp"

namespace aspforge {

// A rule over constant terms only. Comparison literals have been evaluated
// and removed; the body is split into its positive and negated atoms.
struct GroundRule {
  std::vector<Atom> head;
  std::vector<Atom> pos;
  std::vector<Atom> neg;
  std::optional<WeakAnnotation> weak;

  bool is_weak() const { return weak.has_value(); }
};

int compare(const GroundRule& a, const GroundRule& b);
bool operator==(const GroundRule& a, const GroundRule& b);
inline bool operator<(const GroundRule& a, const GroundRule& b) {
  return compare(a, b) < 0;
}

struct GroundProgram {
  std::vector<GroundRule> rules;      // sorted, duplicate-free
  std::vector<Atom> atom_universe;    // sorted, duplicate-free
};

enum class GroundMode {
  Naive,   // all substitutions over the Herbrand universe
  Pruned,  // substitutions whose positive body is possibly derivable
};

struct GroundOptions {
  GroundMode mode = GroundMode::Pruned;
  std::size_t max_rules = 1'000'000;
};

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All constants appearing anywhere in the program or the facts; integers
// ascending, then symbolic constants, then strings, each lexicographic.
std::vector<Term> herbrand_universe(const Program& program,
                                    const std::vector<Rule>& facts);

// Instantiates every rule over the Herbrand universe. Comparison literals
// are evaluated per substitution: instantiations whose comparisons fail are
// dropped, surviving rules carry no comparisons. Distinct anonymous terms
// instantiate independently; facts are included verbatim. Requires every
// rule to be safe; throws CapacityError when the instantiation count would
// exceed options.max_rules.
GroundProgram ground(const Program& program, const std::vector<Rule>& facts,
                     const GroundOptions& options = {});

// Evaluation of a ground comparison. Ordering operators require two
// integers and evaluate to false otherwise; equality operators compare
// constants structurally, so mixed-kind operands are simply unequal.
bool eval_comparison(const Term& lhs, CmpOp op, const Term& rhs);

Rule to_rule(const GroundRule& rule);
std::string render(const GroundProgram& program);

}  // namespace aspforge

#endif  // ASPFORGE_GROUNDING_HPP_
