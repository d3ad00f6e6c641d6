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

#include "aspforge/external_solver.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "aspforge/hashing.hpp"
#include "aspforge/syntax.hpp"

namespace aspforge {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::optional<Atom> parse_model_atom(const std::string& token) {
  ParseResult parsed = parse_program(token + ".");
  if (!parsed.ok() || parsed.program->rules.size() != 1) return std::nullopt;
  const Rule& rule = parsed.program->rules.front();
  if (rule.head.size() != 1 || !rule.body.empty()) return std::nullopt;
  return rule.head.front();
}

}  // namespace

std::optional<std::string> external_solver_command() {
  const char* cmd = std::getenv("ASPFORGE_SOLVER");
  if (cmd == nullptr || *cmd == '\0') return std::nullopt;
  return std::string(cmd);
}

ExternalResult solve_external(const std::string& command,
                              const std::string& program_text) {
  ExternalResult out;

  const std::string stem =
      "aspforge-" + to_hex(fnv1a64(program_text)) + "-" +
      std::to_string(static_cast<unsigned long>(::getpid()));
  const std::filesystem::path input_path =
      std::filesystem::temp_directory_path() / (stem + ".lp");
  {
    std::ofstream f(input_path, std::ios::binary | std::ios::trunc);
    f << program_text;
  }

  const std::string shell_command =
      command + " < " + input_path.string() + " 2>/dev/null";
  FILE* pipe = ::popen(shell_command.c_str(), "r");
  if (pipe == nullptr) {
    std::filesystem::remove(input_path);
    return out;
  }
  std::string output;
  char buffer[4096];
  std::size_t n;
  while ((n = ::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    output.append(buffer, n);
  }
  const int status = ::pclose(pipe);
  std::filesystem::remove(input_path);

  out.raw_output = output;
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (out.exit_code != 10 && out.exit_code != 20 && out.exit_code != 30) {
    return out;  // rejected input or solver failure
  }
  out.accepted = true;

  // Model lines follow "Answer:" headers; an "Optimization:" line carries
  // the cost of the model printed just before it.
  std::istringstream lines(output);
  std::string line;
  bool expect_model = false;
  std::vector<std::vector<long long>> opt_values;
  while (std::getline(lines, line)) {
    if (line.rfind("Answer", 0) == 0) {
      expect_model = true;
      continue;
    }
    if (line.rfind("Optimization:", 0) == 0) {
      std::vector<long long> values;
      for (const std::string& tok : split_ws(line.substr(13))) {
        try {
          values.push_back(std::stoll(tok));
        } catch (const std::exception&) {
          values.clear();
          break;
        }
      }
      if (!out.result.all.empty()) {
        while (opt_values.size() < out.result.all.size() - 1) {
          opt_values.push_back({});
        }
        opt_values.push_back(values);
      }
      continue;
    }
    if (expect_model) {
      expect_model = false;
      AnswerSet model;
      for (const std::string& tok : split_ws(line)) {
        if (auto atom = parse_model_atom(tok)) {
          model.atoms.push_back(*atom);
        }
      }
      std::sort(model.atoms.begin(), model.atoms.end());
      out.result.all.push_back(std::move(model));
    }
  }
  while (opt_values.size() < out.result.all.size()) opt_values.push_back({});

  // Positional optimization values, highest priority first, become
  // synthetic descending levels.
  for (std::size_t i = 0; i < out.result.all.size(); ++i) {
    const std::vector<long long>& values = opt_values[i];
    CostVector cost;
    long long level = static_cast<long long>(values.size());
    for (long long v : values) {
      if (v != 0) cost.per_level[level] = v;
      --level;
    }
    out.result.all[i].cost = cost;
  }

  if (!out.result.all.empty()) {
    const CostVector* best = &out.result.all.front().cost;
    for (const AnswerSet& m : out.result.all) {
      if (CostVector::compare(m.cost, *best) < 0) best = &m.cost;
    }
    for (const AnswerSet& m : out.result.all) {
      if (m.cost == *best) out.result.optimal.push_back(m);
    }
  }
  return out;
}

}  // namespace aspforge
