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

#include "aspforge/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "aspforge/hashing.hpp"

namespace aspforge {

namespace {

using nlohmann::json;

std::string bindings_key(TaskClass task, const Bindings& bindings) {
  std::string key = to_string(task);
  for (const auto& [k, v] : bindings) {
    key += '\x1f';
    key += k;
    key += '\x1e';
    key += v;
  }
  return key;
}

std::string record_id(TaskClass task, const Bindings& bindings,
                      std::uint64_t seed) {
  return to_hex(fnv1a64(bindings_key(task, bindings) + '\x1f' +
                        std::to_string(seed)));
}

std::uint64_t record_seed(std::uint64_t master_seed, TaskClass task,
                          std::size_t index, std::size_t attempt) {
  return combine_seeds({master_seed,
                        static_cast<std::uint64_t>(task) + 1,
                        static_cast<std::uint64_t>(index),
                        static_cast<std::uint64_t>(attempt)});
}

CorpusRecord make_record(TaskClass task, const Vocabulary& vocab,
                         std::uint64_t seed) {
  TaskInstance instance = instantiate(task, vocab, seed);
  CorpusRecord record;
  record.task = task;
  record.prompt = std::move(instance.prompt);
  record.gold_text = render(instance.gold);
  record.bindings = std::move(instance.bindings);
  record.seed = seed;
  record.id = record_id(task, record.bindings, seed);
  return record;
}

// Generates per (task, index) slots in parallel, then resolves duplicate
// bindings sequentially in slot order so the result does not depend on the
// thread count.
BuildResult build_records(const std::map<TaskClass, std::size_t>& counts,
                          const Vocabulary& vocab, std::uint64_t master_seed,
                          int jobs) {
  struct Slot {
    TaskClass task;
    std::size_t index;
  };
  std::vector<Slot> slots;
  for (TaskClass t : kAllTasks) {
    auto it = counts.find(t);
    if (it == counts.end()) continue;
    for (std::size_t i = 0; i < it->second; ++i) slots.push_back({t, i});
  }

  std::vector<CorpusRecord> drafts(slots.size());
  int workers = jobs;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> worker_errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = cursor.fetch_add(1); i < slots.size();
             i = cursor.fetch_add(1)) {
          drafts[i] = make_record(slots[i].task, vocab,
                                  record_seed(master_seed, slots[i].task,
                                              slots[i].index, 0));
        }
      } catch (...) {
        worker_errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& err : worker_errors) {
    if (err) std::rethrow_exception(err);
  }

  // Duplicate bindings are regenerated with the next derived seed. Small
  // binding spaces (two-predicate classes over a small vocabulary) exhaust
  // the retries; the duplicate is then kept, since its distinct seed keeps
  // the record id unique. Ids themselves must never collide.
  constexpr std::size_t kMaxAttempts = 64;
  std::set<std::string> seen_bindings;
  std::set<std::string> seen_ids;
  std::vector<CorpusRecord> records;
  records.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    CorpusRecord record = std::move(drafts[i]);
    std::size_t attempt = 0;
    auto regenerate = [&] {
      ++attempt;
      record = make_record(slots[i].task, vocab,
                           record_seed(master_seed, slots[i].task,
                                       slots[i].index, attempt));
    };
    while (attempt < kMaxAttempts &&
           seen_bindings.count(bindings_key(record.task, record.bindings))) {
      regenerate();
    }
    while (seen_ids.count(record.id)) {
      if (attempt >= 4 * kMaxAttempts) {
        throw VocabularyError("cannot derive a unique record id for " +
                              to_string(record.task));
      }
      regenerate();
    }
    seen_bindings.insert(bindings_key(record.task, record.bindings));
    seen_ids.insert(record.id);
    records.push_back(std::move(record));
  }

  BuildResult out;
  out.records = std::move(records);
  out.manifest.total = out.records.size();
  for (const CorpusRecord& r : out.records) out.manifest.per_task[r.task]++;
  out.manifest.master_seed = master_seed;
  out.manifest.vocabulary_checksum = vocab.checksum();
  return out;
}

std::string checksum_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return to_hex(fnv1a64(buffer.str()));
}

void atomic_write(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << contents;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::map<TaskClass, double> table_proportions() {
  return {
      {TaskClass::Assignment, 0.27},   {TaskClass::Constraint, 0.135},
      {TaskClass::Combination, 0.027}, {TaskClass::Join, 0.243},
      {TaskClass::TransitiveClosure, 0.027}, {TaskClass::Preference, 0.108},
      {TaskClass::ValueFiltering, 0.027},
      {TaskClass::NegativeFiltering, 0.027},
      {TaskClass::NumericFiltering, 0.135},
  };
}

std::map<TaskClass, double> uniform_proportions() {
  std::map<TaskClass, double> p;
  for (TaskClass t : kAllTasks) p[t] = 1.0 / 9.0;
  return p;
}

std::map<TaskClass, std::size_t> plan_counts(
    std::size_t total, const std::map<TaskClass, double>& proportions) {
  double sum = 0.0;
  for (const auto& [task, p] : proportions) {
    if (p < 0.0) throw ProportionError("negative proportion for " + to_string(task));
    sum += p;
  }
  if (std::abs(sum - 1.0) > 0.01) {
    throw ProportionError("proportions sum to " + std::to_string(sum) +
                          "; expected 1 (within 0.01)");
  }
  if (total < proportions.size()) {
    throw ProportionError("total smaller than the number of task classes");
  }

  const long long target =
      std::llround(static_cast<double>(total) * sum);
  std::map<TaskClass, std::size_t> counts;
  std::vector<std::pair<double, TaskClass>> remainders;
  long long assigned = 0;
  for (TaskClass t : kAllTasks) {
    auto it = proportions.find(t);
    if (it == proportions.end()) continue;
    const double exact = static_cast<double>(total) * it->second;
    const long long count = std::llround(exact);
    counts[t] = static_cast<std::size_t>(count);
    assigned += count;
    remainders.push_back({exact - static_cast<double>(count), t});
  }
  // largest-remainder correction toward the target sum
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  std::size_t i = 0;
  while (assigned < target && !remainders.empty()) {
    counts[remainders[i % remainders.size()].second]++;
    ++assigned;
    ++i;
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first < b.first;
              return a.second < b.second;
            });
  i = 0;
  while (assigned > target && !remainders.empty()) {
    TaskClass t = remainders[i % remainders.size()].second;
    if (counts[t] > 0) {
      counts[t]--;
      --assigned;
    }
    ++i;
  }
  return counts;
}

BuildResult build_corpus(std::size_t total,
                         const std::map<TaskClass, double>& proportions,
                         const Vocabulary& vocab, std::uint64_t master_seed,
                         int jobs) {
  BuildResult out =
      build_records(plan_counts(total, proportions), vocab, master_seed, jobs);
  out.manifest.proportions = proportions;
  split_corpus(out.records);
  return out;
}

void split_corpus(std::vector<CorpusRecord>& records, double train_ratio) {
  std::map<TaskClass, std::vector<std::size_t>> by_task;
  for (std::size_t i = 0; i < records.size(); ++i) {
    by_task[records[i].task].push_back(i);
  }
  for (auto& [task, indices] : by_task) {
    std::sort(indices.begin(), indices.end(),
              [&records](std::size_t a, std::size_t b) {
                return records[a].id < records[b].id;
              });
    const auto train_count = static_cast<std::size_t>(
        std::llround(train_ratio * static_cast<double>(indices.size())));
    for (std::size_t rank = 0; rank < indices.size(); ++rank) {
      records[indices[rank]].split =
          rank < train_count ? "train" : "validation";
    }
  }
}

BuildResult build_test_corpus(std::size_t per_task,
                              const Vocabulary& test_vocab, std::uint64_t seed,
                              int jobs) {
  std::map<TaskClass, std::size_t> counts;
  for (TaskClass t : kAllTasks) counts[t] = per_task;
  BuildResult out = build_records(counts, test_vocab, seed, jobs);
  for (TaskClass t : kAllTasks) out.manifest.proportions[t] = 1.0 / 9.0;
  for (CorpusRecord& r : out.records) r.split = "test";
  return out;
}

std::string record_to_json(const CorpusRecord& record) {
  json j;
  j["id"] = record.id;
  j["task"] = to_string(record.task);
  j["prompt"] = record.prompt;
  j["gold"] = record.gold_text;
  j["bindings"] = record.bindings;
  j["seed"] = record.seed;
  j["split"] = record.split;
  return j.dump();
}

CorpusRecord record_from_json(const std::string& line) {
  json j = json::parse(line);
  CorpusRecord record;
  record.id = j.at("id").get<std::string>();
  record.task = parse_task_class(j.at("task").get<std::string>());
  record.prompt = j.at("prompt").get<std::string>();
  record.gold_text = j.at("gold").get<std::string>();
  record.bindings = j.at("bindings").get<Bindings>();
  record.seed = j.at("seed").get<std::uint64_t>();
  record.split = j.at("split").get<std::string>();
  return record;
}

void save_corpus(const BuildResult& corpus, const std::string& directory) {
  std::filesystem::create_directories(directory);
  const std::string corpus_path =
      (std::filesystem::path(directory) / "corpus.jsonl").string();
  std::string body;
  body += json{{"schema", kCorpusSchema}}.dump();
  body += '\n';
  for (const CorpusRecord& r : corpus.records) {
    body += record_to_json(r);
    body += '\n';
  }
  atomic_write(corpus_path, body);

  json manifest;
  manifest["schema"] = kManifestSchema;
  manifest["total"] = corpus.manifest.total;
  json per_task = json::object();
  for (const auto& [task, count] : corpus.manifest.per_task) {
    per_task[to_string(task)] = count;
  }
  manifest["per_task"] = per_task;
  json proportions = json::object();
  for (const auto& [task, p] : corpus.manifest.proportions) {
    proportions[to_string(task)] = p;
  }
  manifest["proportions"] = proportions;
  manifest["master_seed"] = corpus.manifest.master_seed;
  manifest["vocabulary_checksum"] = corpus.manifest.vocabulary_checksum;
  manifest["corpus_checksum"] = to_hex(fnv1a64(body));
  atomic_write((std::filesystem::path(directory) / "manifest.json").string(),
               manifest.dump(2) + "\n");
}

LoadedCorpus load_corpus(const std::string& directory) {
  const std::string corpus_path =
      (std::filesystem::path(directory) / "corpus.jsonl").string();
  const std::string manifest_path =
      (std::filesystem::path(directory) / "manifest.json").string();

  std::ifstream manifest_in(manifest_path, std::ios::binary);
  if (!manifest_in) {
    throw std::runtime_error("cannot open " + manifest_path);
  }
  json manifest = json::parse(manifest_in);
  if (manifest.value("schema", "") != kManifestSchema) {
    throw VersionError("unknown manifest schema: " +
                       manifest.value("schema", "<missing>"));
  }

  LoadedCorpus out;
  out.manifest.total = manifest.at("total").get<std::size_t>();
  for (const auto& [name, count] : manifest.at("per_task").items()) {
    out.manifest.per_task[parse_task_class(name)] = count.get<std::size_t>();
  }
  for (const auto& [name, p] : manifest.at("proportions").items()) {
    out.manifest.proportions[parse_task_class(name)] = p.get<double>();
  }
  out.manifest.master_seed = manifest.at("master_seed").get<std::uint64_t>();
  out.manifest.vocabulary_checksum =
      manifest.at("vocabulary_checksum").get<std::string>();
  out.manifest.corpus_checksum =
      manifest.at("corpus_checksum").get<std::string>();

  if (checksum_file(corpus_path) != out.manifest.corpus_checksum) {
    throw IntegrityError("corpus checksum mismatch for " + corpus_path);
  }

  std::ifstream in(corpus_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + corpus_path);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      json header = json::parse(line);
      if (header.value("schema", "") != kCorpusSchema) {
        throw VersionError("unknown corpus schema: " +
                           header.value("schema", "<missing>"));
      }
      continue;
    }
    out.records.push_back(record_from_json(line));
  }
  if (out.records.size() != out.manifest.total) {
    throw IntegrityError("record count differs from manifest total");
  }
  return out;
}

}  // namespace aspforge
