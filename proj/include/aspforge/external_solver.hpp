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

#ifndef ASPFORGE_EXTERNAL_SOLVER_HPP_
#define ASPFORGE_EXTERNAL_SOLVER_HPP_

#include <optional>
#include <string>

#include "aspforge/solver.hpp"

namespace aspforge {

// Adapter for a system-installed ASP solver (clingo-compatible output).
// The program text goes to the child's standard input; models are read from
// lines following "Answer:" headers, optimization values from
// "Optimization:" lines. Exit statuses 10/20/30 mean SAT/UNSAT/OPT; anything
// else marks the input as rejected.
struct ExternalResult {
  bool accepted = false;
  SolveResult result;
  int exit_code = -1;
  std::string raw_output;
};

// Command from the ASPFORGE_SOLVER environment variable, if set.
std::optional<std::string> external_solver_command();

// Runs `command` (a shell command line) on the given program text.
// Optimization values are positional (highest priority first) as printed by
// the solver; they are mapped to descending synthetic levels, which keeps
// cost-vector comparisons between two runs of the same solver meaningful.
ExternalResult solve_external(const std::string& command,
                              const std::string& program_text);

}  // namespace aspforge

#endif  // ASPFORGE_EXTERNAL_SOLVER_HPP_
