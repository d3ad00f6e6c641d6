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

#ifndef ASPFORGE_ORACLE_HPP_
#define ASPFORGE_ORACLE_HPP_

#include <cstddef>

#include "aspforge/grounding.hpp"
#include "aspforge/solver.hpp"

namespace aspforge {

// Same contract as answer_sets, implemented by exhaustive enumeration of
// every subset of the atom universe with no pruning whatsoever. Kept free of
// any code shared with the production solver so the two can anchor each
// other in tests. Throws CapacityError above max_atoms (default 20).
SolveResult answer_sets_oracle(const GroundProgram& program,
                               std::size_t max_atoms = 20);

}  // namespace aspforge

#endif  // ASPFORGE_ORACLE_HPP_
