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

#ifndef ASPFORGE_EVAL_HPP_
#define ASPFORGE_EVAL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aspforge/corpus.hpp"
#include "aspforge/grounding.hpp"
#include "aspforge/instances.hpp"
#include "aspforge/solver.hpp"
#include "aspforge/templates.hpp"

namespace aspforge {

enum class FailureStage { None, Parse, Safety, Ground, Solve, Mismatch };

std::string to_string(FailureStage stage);

struct HitRecord {
  std::string record_id;
  int run_index = 0;
  bool syntactic = false;
  bool semantic = false;  // implies syntactic
  FailureStage failure_stage = FailureStage::None;
  std::string detail;
};

std::string hit_to_json(const HitRecord& hit);

enum class CompareMode { Full, Projected };

std::string to_string(CompareMode mode);
CompareMode parse_compare_mode(const std::string& name);

// A candidate-program source. generate() may be called concurrently from
// worker threads; implementations must either be pure or synchronize.
class Provider {
 public:
  struct Response {
    std::optional<std::string> text;
    std::string error;  // nonempty when no candidate could be produced

    static Response of(std::string t) { return {std::move(t), {}}; }
    static Response failed(std::string e) { return {std::nullopt, std::move(e)}; }
  };

  virtual ~Provider() = default;
  virtual std::string descriptor() const = 0;
  virtual Response generate(const CorpusRecord& record,
                            std::uint64_t run_seed) = 0;
};

struct EvalOptions {
  CompareMode mode = CompareMode::Full;
  bool lenient_extract = false;  // salvage rules from prose/fenced output
  GroundOptions ground;
  SolveOptions solve;
  int runs = 1;
  std::uint64_t seed = 0;
  int jobs = 1;                 // 0 = hardware concurrency
  std::string solver_command;   // nonempty: score through an external solver
};

struct SyntacticOutcome {
  bool hit = false;
  std::optional<Program> program;
  FailureStage stage = FailureStage::None;
  std::string detail;
};

// A candidate scores a syntactic hit when it parses to at least one rule of
// the fragment and every rule is safe (unsafe programs are grounding errors
// for a real solver, hence syntactic misses here). With lenient extraction,
// a failed whole-text parse falls back to the longest contiguous block of
// lines that parses.
SyntacticOutcome syntactic_hit(std::string_view text,
                               bool lenient_extract = false);

struct SemanticOutcome {
  bool hit = false;
  FailureStage stage = FailureStage::None;
  std::string detail;
};

// For every instance F, SolveResult(candidate ∪ F) must match
// SolveResult(gold ∪ F): equality of the sets of answer-set atom sets and of
// the multiset of optimal cost vectors. Projected mode first restricts every
// answer set to gold_preds plus the instance's fact predicates. Candidate
// capacity errors are misses (stage ground/solve), not exceptions.
SemanticOutcome semantic_hit(const Program& candidate, const Program& gold,
                             const std::vector<FactInstance>& instances,
                             CompareMode mode = CompareMode::Full,
                             const std::set<std::string>& gold_preds = {},
                             const GroundOptions& ground_options = {},
                             const SolveOptions& solve_options = {});

// Same comparison, but both programs are shipped as text to an external
// solver command; usable on candidates outside the built-in fragment.
SemanticOutcome semantic_hit_external(const std::string& solver_command,
                                      const std::string& candidate_text,
                                      const std::string& gold_text,
                                      const std::vector<FactInstance>& instances,
                                      CompareMode mode = CompareMode::Full,
                                      const std::set<std::string>& gold_preds = {});

struct TaskScore {
  double syntactic = 0.0;
  double semantic = 0.0;
  std::size_t attempts = 0;
};

struct EvalReport {
  std::map<TaskClass, TaskScore> per_task;
  double overall_syntactic = 0.0;  // unweighted mean over task rows
  double overall_semantic = 0.0;
  int runs = 1;
  std::string provider;
  std::string mode = "full";
};

struct EvalOutcome {
  EvalReport report;
  std::vector<HitRecord> hits;  // sorted by (record id, run)
};

// Queries the provider once per record and run, scores syntactic and
// semantic hits against the record's instances, and aggregates per-task
// accuracies. Provider errors score as double misses; the batch never
// aborts. Deterministic for deterministic providers, independently of jobs.
EvalOutcome evaluate(const std::vector<CorpusRecord>& records,
                     Provider& provider, const EvalOptions& options);

enum class ReportFormat { Table, Csv, Json };

ReportFormat parse_report_format(const std::string& name);
std::string render_report(const EvalReport& report, ReportFormat format);
EvalReport load_report_json(const std::string& json_text);

}  // namespace aspforge

#endif  // ASPFORGE_EVAL_HPP_
