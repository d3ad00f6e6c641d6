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

#ifndef ASPFORGE_PROVIDERS_HPP_
#define ASPFORGE_PROVIDERS_HPP_

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aspforge/eval.hpp"

namespace aspforge {

// Canonical fault classes mirroring the wrong encodings real models produce:
// dropped negation, wrong labels, off-by-one thresholds, missing recursion,
// broken joins, collapsed guesses, hardened preferences, renamed outputs and
// missing rules.
enum class FaultClass {
  DropNegation,
  SwapLabel,
  OffByOneThreshold,
  DropRecursiveRule,
  WrongJoinVariable,
  DropDisjunct,
  WeakToStrong,
  RenameHead,
  DeleteRule,
};

inline constexpr std::array<FaultClass, 9> kAllFaults = {
    FaultClass::DropNegation,      FaultClass::SwapLabel,
    FaultClass::OffByOneThreshold, FaultClass::DropRecursiveRule,
    FaultClass::WrongJoinVariable, FaultClass::DropDisjunct,
    FaultClass::WeakToStrong,      FaultClass::RenameHead,
    FaultClass::DeleteRule,
};

std::string to_string(FaultClass fault);
FaultClass parse_fault_class(const std::string& name);

// Applies the fault's AST transformation at its first applicable site;
// nullopt when the program has no such site. The result always parses and
// stays safe; whether it changes the semantics is verified separately.
std::optional<Program> apply_fault(FaultClass fault, const Program& gold);

class GoldEchoProvider : public Provider {
 public:
  std::string descriptor() const override { return "gold-echo"; }
  Response generate(const CorpusRecord& record, std::uint64_t run_seed) override;
};

// Emits a candidate whose semantics provably differ from the gold program on
// the record's own instances: the primary fault is tried first, the other
// fault classes in order after it, each verified with the solver before
// emission. A record no fault applies to yields an error response.
class MutantProvider : public Provider {
 public:
  explicit MutantProvider(FaultClass primary,
                          GroundOptions ground_options = {},
                          SolveOptions solve_options = {})
      : primary_(primary),
        ground_options_(ground_options),
        solve_options_(solve_options) {}

  std::string descriptor() const override {
    return "mutant:" + to_string(primary_);
  }
  Response generate(const CorpusRecord& record, std::uint64_t run_seed) override;

  // The fault actually applied for a record, exposed for tests.
  std::optional<FaultClass> verified_fault(const CorpusRecord& record) const;

 private:
  FaultClass primary_;
  GroundOptions ground_options_;
  SolveOptions solve_options_;
};

// Replays candidates recorded as JSON Lines of {"id": ..., "candidate": ...}.
class ReplayProvider : public Provider {
 public:
  static ReplayProvider from_file(const std::string& path);
  static ReplayProvider from_entries(std::map<std::string, std::string> entries);

  std::string descriptor() const override { return "replay"; }
  Response generate(const CorpusRecord& record, std::uint64_t run_seed) override;

 private:
  std::map<std::string, std::string> by_id_;
};

// Generic chat-completion client. The request shape lives in configuration:
// a body template with a {{prompt}} slot, a header set (with an optional
// {{api_key}} slot filled from the named environment variable), and a dotted
// path selecting the completion text in the response JSON.
struct HttpProviderConfig {
  std::string endpoint;  // e.g. https://host:port/v1/chat/completions
  std::map<std::string, std::string> headers;
  std::string body_template;
  std::string response_path;  // e.g. choices.0.message.content
  std::string api_key_env;    // name of the env var holding the key
  int timeout_seconds = 60;
  int max_retries = 3;        // on 429 and 5xx, with exponential backoff
  int max_concurrency = 4;
  int backoff_base_ms = 1000;
  bool strip_code_fences = true;

  static HttpProviderConfig from_json(const std::string& text);
  static HttpProviderConfig load(const std::string& path);
};

class HttpProvider : public Provider {
 public:
  explicit HttpProvider(HttpProviderConfig config);
  ~HttpProvider() override;

  std::string descriptor() const override;
  Response generate(const CorpusRecord& record, std::uint64_t run_seed) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Provider factory for the CLI: "gold-echo", "mutant", "mutant:<fault>",
// "replay" (with a replay file) or "http" (with a config file).
std::unique_ptr<Provider> make_provider(const std::string& name,
                                        const std::string& replay_path,
                                        const std::string& config_path);

}  // namespace aspforge

#endif  // ASPFORGE_PROVIDERS_HPP_
