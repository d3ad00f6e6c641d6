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

#ifndef ASPFORGE_TEMPLATES_HPP_
#define ASPFORGE_TEMPLATES_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aspforge/syntax.hpp"

namespace aspforge {

// The nine task families. Order matches the dataset proportion table and is
// the canonical report order.
enum class TaskClass {
  Assignment,
  Constraint,
  Combination,
  Join,
  TransitiveClosure,
  Preference,
  ValueFiltering,
  NegativeFiltering,
  NumericFiltering,
};

inline constexpr std::array<TaskClass, 9> kAllTasks = {
    TaskClass::Assignment,       TaskClass::Constraint,
    TaskClass::Combination,      TaskClass::Join,
    TaskClass::TransitiveClosure, TaskClass::Preference,
    TaskClass::ValueFiltering,   TaskClass::NegativeFiltering,
    TaskClass::NumericFiltering,
};

// Stable machine name ("transitive_closure") used in files and flags.
std::string to_string(TaskClass task);
// Human name as it appears in reports ("Transitive closure").
std::string display_name(TaskClass task);
TaskClass parse_task_class(const std::string& name);

struct VocabularyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Symbol pools the templates draw from. Train and test partitions of the
// same vocabulary never share a predicate or label.
struct Vocabulary {
  std::vector<std::string> predicates;
  std::vector<std::string> labels;
  std::vector<std::string> fields;
  long long value_min = 0;
  long long value_max = 50;
  std::string partition = "full";  // "full", "train" or "test"

  static Vocabulary defaults();
  static Vocabulary parse(const std::string& text);
  static Vocabulary load(const std::string& path);

  // Deterministic disjoint pools: the first round(fraction*n) entries of
  // each list form the train partition, the remainder the test partition.
  Vocabulary train_partition(double train_fraction = 0.7) const;
  Vocabulary test_partition(double train_fraction = 0.7) const;

  std::string canonical_text() const;  // vocabulary file round-trip form
  std::string checksum() const;
};

using Bindings = std::map<std::string, std::string>;

struct TaskInstance {
  TaskClass task = TaskClass::Assignment;
  std::string prompt;
  Program gold;
  Bindings bindings;
  std::uint64_t seed = 0;
};

// The natural-language template of a class, with [PLACEHOLDER] slots.
const std::string& template_text(TaskClass task);

// Draws placeholder values from the vocabulary; deterministic in
// (task, vocab, seed). Throws VocabularyError when a class needs more
// distinct symbols than the vocabulary supplies.
Bindings draw_bindings(TaskClass task, const Vocabulary& vocab,
                       std::uint64_t seed);

// Builds the prompt and gold program for concrete placeholder values.
TaskInstance realize(TaskClass task, const Bindings& bindings);

// instantiate = draw_bindings + realize.
TaskInstance instantiate(TaskClass task, const Vocabulary& vocab,
                         std::uint64_t seed);

// Names of the predicates the gold program defines, for projected
// answer-set comparison.
std::set<std::string> gold_head_predicates(TaskClass task,
                                           const Bindings& bindings);

}  // namespace aspforge

#endif  // ASPFORGE_TEMPLATES_HPP_
