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

#ifndef ASPFORGE_CORPUS_HPP_
#define ASPFORGE_CORPUS_HPP_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "aspforge/templates.hpp"

namespace aspforge {

inline constexpr const char* kCorpusSchema = "aspforge-corpus/1";
inline constexpr const char* kManifestSchema = "aspforge-manifest/1";

struct CorpusRecord {
  std::string id;  // stable hash of (task, bindings, seed)
  TaskClass task = TaskClass::Assignment;
  std::string prompt;
  std::string gold_text;  // canonical rendering
  Bindings bindings;
  std::uint64_t seed = 0;
  std::string split;  // "train", "validation" or "test"
};

struct CorpusManifest {
  std::size_t total = 0;
  std::map<TaskClass, std::size_t> per_task;
  std::map<TaskClass, double> proportions;
  std::uint64_t master_seed = 0;
  std::string vocabulary_checksum;
  std::string corpus_checksum;  // over the corpus.jsonl bytes
};

struct ProportionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Proportions from the dataset table: Assignment 27%, Constraint 13.5%,
// Combination 2.7%, Join 24.3%, Transitive closure 2.7%, Preference 10.8%,
// Value/Negative filtering 2.7% each, Numeric filtering 13.5%.
std::map<TaskClass, double> table_proportions();
std::map<TaskClass, double> uniform_proportions();

// Per-task record counts: round(total * proportion), with a
// largest-remainder correction so counts sum to round(total * sum(p)).
// The published percentages sum to 0.999, so the effective corpus size for
// them is slightly below the requested total; proportions are treated as
// weights rather than rescaled.
std::map<TaskClass, std::size_t> plan_counts(
    std::size_t total, const std::map<TaskClass, double>& proportions);

struct BuildResult {
  std::vector<CorpusRecord> records;  // ordered by (task, index)
  CorpusManifest manifest;
};

// Deterministic in (total, proportions, vocab, master_seed) and independent
// of the number of worker threads. Duplicate (task, bindings) draws are
// regenerated with the next derived seed, up to a bounded retry count.
BuildResult build_corpus(std::size_t total,
                         const std::map<TaskClass, double>& proportions,
                         const Vocabulary& vocab, std::uint64_t master_seed,
                         int jobs = 1);

// Stratified split: per class, records ordered by id; the first
// round(ratio*n) become "train", the rest "validation".
void split_corpus(std::vector<CorpusRecord>& records, double train_ratio = 0.8);

// Evenly distributed test set over a vocabulary disjoint from training.
BuildResult build_test_corpus(std::size_t per_task, const Vocabulary& test_vocab,
                              std::uint64_t seed, int jobs = 1);

// corpus.jsonl (schema header line + one record per line) plus a
// manifest.json sidecar, written atomically into the directory.
void save_corpus(const BuildResult& corpus, const std::string& directory);

struct LoadedCorpus {
  std::vector<CorpusRecord> records;
  CorpusManifest manifest;
};

// Verifies the schema version and the manifest checksum.
LoadedCorpus load_corpus(const std::string& directory);

std::string record_to_json(const CorpusRecord& record);
CorpusRecord record_from_json(const std::string& line);

}  // namespace aspforge

#endif  // ASPFORGE_CORPUS_HPP_
