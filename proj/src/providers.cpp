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

#include "aspforge/providers.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <semaphore>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include <httplib.h>
#include <json.hpp>

namespace aspforge {

namespace {

using nlohmann::json;

}  // namespace

std::string to_string(FaultClass fault) {
  switch (fault) {
    case FaultClass::DropNegation: return "drop_negation";
    case FaultClass::SwapLabel: return "swap_label";
    case FaultClass::OffByOneThreshold: return "off_by_one_threshold";
    case FaultClass::DropRecursiveRule: return "drop_recursive_rule";
    case FaultClass::WrongJoinVariable: return "wrong_join_variable";
    case FaultClass::DropDisjunct: return "drop_disjunct";
    case FaultClass::WeakToStrong: return "weak_to_strong";
    case FaultClass::RenameHead: return "rename_head";
    case FaultClass::DeleteRule: return "delete_rule";
  }
  return "unknown";
}

FaultClass parse_fault_class(const std::string& name) {
  for (FaultClass f : kAllFaults) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown fault class: " + name);
}

namespace {

std::optional<Program> drop_negation(const Program& gold) {
  Program out = gold;
  for (Rule& rule : out.rules) {
    for (Literal& literal : rule.body) {
      if (literal.kind == Literal::Kind::Negated) {
        literal.kind = Literal::Kind::Positive;
        return out;
      }
    }
  }
  return std::nullopt;
}

std::optional<Program> swap_label(const Program& gold) {
  Program out = gold;
  for (Rule& rule : out.rules) {
    for (Atom& atom : rule.head) {
      for (Term& t : atom.terms) {
        if (t.kind == TermKind::String) {
          t.text += '_';
          return out;
        }
      }
    }
    for (Literal& literal : rule.body) {
      if (literal.kind == Literal::Kind::Comparison) continue;
      for (Term& t : literal.atom.terms) {
        if (t.kind == TermKind::String) {
          t.text += '_';
          return out;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Program> off_by_one_threshold(const Program& gold) {
  Program out = gold;
  for (Rule& rule : out.rules) {
    for (Literal& literal : rule.body) {
      if (literal.kind != Literal::Kind::Comparison) continue;
      switch (literal.op) {
        case CmpOp::Ge: literal.op = CmpOp::Gt; return out;
        case CmpOp::Gt: literal.op = CmpOp::Ge; return out;
        case CmpOp::Le: literal.op = CmpOp::Lt; return out;
        case CmpOp::Lt: literal.op = CmpOp::Le; return out;
        default: break;
      }
    }
  }
  return std::nullopt;
}

bool references_own_head(const Rule& rule) {
  for (const Atom& head : rule.head) {
    for (const Literal& literal : rule.body) {
      if (literal.kind == Literal::Kind::Comparison) continue;
      if (literal.atom.predicate == head.predicate &&
          literal.atom.arity() == head.arity()) {
        return true;
      }
    }
  }
  return false;
}

std::optional<Program> drop_recursive_rule(const Program& gold) {
  if (gold.rules.size() < 2) return std::nullopt;
  Program out = gold;
  for (std::size_t i = 0; i < out.rules.size(); ++i) {
    if (references_own_head(out.rules[i])) {
      out.rules.erase(out.rules.begin() + static_cast<long>(i));
      return out;
    }
  }
  return std::nullopt;
}

std::optional<Program> wrong_join_variable(const Program& gold) {
  Program out = gold;
  for (Rule& rule : out.rules) {
    std::map<std::string, std::vector<Literal*>> occurrences;
    std::set<std::string> used;
    for (Literal& literal : rule.body) {
      if (literal.kind != Literal::Kind::Positive) continue;
      std::set<std::string> in_this_atom;
      for (const Term& t : literal.atom.terms) {
        if (t.kind == TermKind::Variable) {
          used.insert(t.text);
          if (in_this_atom.insert(t.text).second) {
            occurrences[t.text].push_back(&literal);
          }
        }
      }
    }
    for (auto& [name, literals] : occurrences) {
      if (literals.size() < 2) continue;
      std::string fresh = "W";
      while (used.count(fresh)) fresh += "1";
      for (Term& t : literals.back()->atom.terms) {
        if (t.kind == TermKind::Variable && t.text == name) {
          t = Term::variable(fresh);
          return out;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Program> drop_disjunct(const Program& gold) {
  Program out = gold;
  for (Rule& rule : out.rules) {
    if (rule.head.size() >= 2) {
      rule.head.pop_back();
      return out;
    }
  }
  return std::nullopt;
}

std::optional<Program> weak_to_strong(const Program& gold) {
  Program out = gold;
  for (Rule& rule : out.rules) {
    if (rule.is_weak()) {
      rule.weak.reset();
      return out;
    }
  }
  return std::nullopt;
}

std::optional<Program> rename_head(const Program& gold) {
  for (const Rule& rule : gold.rules) {
    if (rule.head.empty()) continue;
    const std::string name = rule.head.front().predicate;
    Program out = gold;
    for (Rule& r : out.rules) {
      for (Atom& a : r.head) {
        if (a.predicate == name) a.predicate = name + "_m";
      }
      for (Literal& l : r.body) {
        if (l.kind == Literal::Kind::Comparison) continue;
        if (l.atom.predicate == name) l.atom.predicate = name + "_m";
      }
    }
    return out;
  }
  return std::nullopt;
}

std::optional<Program> delete_rule(const Program& gold) {
  if (gold.rules.size() < 2) return std::nullopt;
  Program out = gold;
  out.rules.erase(out.rules.begin());
  return out;
}

}  // namespace

std::optional<Program> apply_fault(FaultClass fault, const Program& gold) {
  switch (fault) {
    case FaultClass::DropNegation: return drop_negation(gold);
    case FaultClass::SwapLabel: return swap_label(gold);
    case FaultClass::OffByOneThreshold: return off_by_one_threshold(gold);
    case FaultClass::DropRecursiveRule: return drop_recursive_rule(gold);
    case FaultClass::WrongJoinVariable: return wrong_join_variable(gold);
    case FaultClass::DropDisjunct: return drop_disjunct(gold);
    case FaultClass::WeakToStrong: return weak_to_strong(gold);
    case FaultClass::RenameHead: return rename_head(gold);
    case FaultClass::DeleteRule: return delete_rule(gold);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// GoldEchoProvider

Provider::Response GoldEchoProvider::generate(const CorpusRecord& record,
                                              std::uint64_t /*run_seed*/) {
  return Response::of(record.gold_text);
}

// ---------------------------------------------------------------------------
// MutantProvider

namespace {

struct VerifiedMutant {
  FaultClass fault;
  std::string text;
};

std::optional<VerifiedMutant> find_verified_mutant(
    FaultClass primary, const CorpusRecord& record,
    const GroundOptions& ground_options, const SolveOptions& solve_options) {
  ParseResult gold_parse = parse_program(record.gold_text);
  if (!gold_parse.ok()) return std::nullopt;
  const Program& gold = *gold_parse.program;
  const std::vector<FactInstance> instances = default_instances(record);

  std::vector<FaultClass> order{primary};
  for (FaultClass f : kAllFaults) {
    if (f != primary) order.push_back(f);
  }
  for (FaultClass fault : order) {
    std::optional<Program> mutant = apply_fault(fault, gold);
    if (!mutant) continue;
    const std::string text = render(*mutant);
    SyntacticOutcome syn = syntactic_hit(text);
    if (!syn.hit) continue;
    SemanticOutcome sem =
        semantic_hit(*syn.program, gold, instances, CompareMode::Full, {},
                     ground_options, solve_options);
    if (!sem.hit) return VerifiedMutant{fault, text};
  }
  return std::nullopt;
}

}  // namespace

Provider::Response MutantProvider::generate(const CorpusRecord& record,
                                            std::uint64_t /*run_seed*/) {
  auto mutant =
      find_verified_mutant(primary_, record, ground_options_, solve_options_);
  if (!mutant) {
    return Response::failed("no applicable semantics-changing fault for record " +
                            record.id);
  }
  return Response::of(mutant->text);
}

std::optional<FaultClass> MutantProvider::verified_fault(
    const CorpusRecord& record) const {
  auto mutant =
      find_verified_mutant(primary_, record, ground_options_, solve_options_);
  if (!mutant) return std::nullopt;
  return mutant->fault;
}

// ---------------------------------------------------------------------------
// ReplayProvider

ReplayProvider ReplayProvider::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open replay file: " + path);
  std::map<std::string, std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    entries[j.at("id").get<std::string>()] =
        j.at("candidate").get<std::string>();
  }
  return from_entries(std::move(entries));
}

ReplayProvider ReplayProvider::from_entries(
    std::map<std::string, std::string> entries) {
  ReplayProvider provider;
  provider.by_id_ = std::move(entries);
  return provider;
}

Provider::Response ReplayProvider::generate(const CorpusRecord& record,
                                            std::uint64_t /*run_seed*/) {
  auto it = by_id_.find(record.id);
  if (it == by_id_.end()) {
    return Response::failed("no replay candidate for record " + record.id);
  }
  return Response::of(it->second);
}

// ---------------------------------------------------------------------------
// HttpProvider

HttpProviderConfig HttpProviderConfig::from_json(const std::string& text) {
  json j = json::parse(text);
  HttpProviderConfig config;
  config.endpoint = j.at("endpoint").get<std::string>();
  if (j.contains("headers")) {
    for (const auto& [name, value] : j.at("headers").items()) {
      config.headers[name] = value.get<std::string>();
    }
  }
  config.body_template = j.at("body_template").get<std::string>();
  config.response_path = j.at("response_path").get<std::string>();
  config.api_key_env = j.value("api_key_env", "");
  config.timeout_seconds = j.value("timeout_seconds", 60);
  config.max_retries = j.value("max_retries", 3);
  config.max_concurrency = j.value("max_concurrency", 4);
  config.backoff_base_ms = j.value("backoff_base_ms", 1000);
  config.strip_code_fences = j.value("strip_code_fences", true);
  return config;
}

HttpProviderConfig HttpProviderConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open provider config: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

namespace {

void replace_token(std::string& text, const std::string& token,
                   const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(token, pos)) != std::string::npos) {
    text.replace(pos, token.size(), value);
    pos += value.size();
  }
}

std::string json_escape(const std::string& text) {
  std::string quoted = json(text).dump();
  return quoted.substr(1, quoted.size() - 2);
}

std::string strip_fences(const std::string& text) {
  std::size_t open = text.find("```");
  if (open == std::string::npos) return text;
  std::size_t body_start = text.find('\n', open);
  if (body_start == std::string::npos) return text;
  ++body_start;
  std::size_t close = text.find("```", body_start);
  std::string body = close == std::string::npos
                         ? text.substr(body_start)
                         : text.substr(body_start, close - body_start);
  return body;
}

const json* walk_path(const json& root, const std::string& path) {
  const json* node = &root;
  std::istringstream in(path);
  std::string token;
  while (std::getline(in, token, '.')) {
    if (token.empty()) return nullptr;
    if (std::all_of(token.begin(), token.end(), [](unsigned char c) {
          return std::isdigit(c);
        })) {
      std::size_t index = std::stoul(token);
      if (!node->is_array() || index >= node->size()) return nullptr;
      node = &(*node)[index];
    } else {
      if (!node->is_object() || !node->contains(token)) return nullptr;
      node = &node->at(token);
    }
  }
  return node;
}

}  // namespace

struct HttpProvider::Impl {
  HttpProviderConfig config;
  std::string base_url;
  std::string path;
  std::counting_semaphore<4096> slots;

  explicit Impl(HttpProviderConfig c)
      : config(std::move(c)),
        slots(std::max(1, std::min(4096, config.max_concurrency))) {
    const std::size_t scheme_end = config.endpoint.find("://");
    if (scheme_end == std::string::npos) {
      throw std::runtime_error("endpoint must include a scheme: " +
                               config.endpoint);
    }
    const std::size_t path_start =
        config.endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
      base_url = config.endpoint;
      path = "/";
    } else {
      base_url = config.endpoint.substr(0, path_start);
      path = config.endpoint.substr(path_start);
    }
  }
};

HttpProvider::HttpProvider(HttpProviderConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

HttpProvider::~HttpProvider() = default;

std::string HttpProvider::descriptor() const {
  return "http:" + impl_->config.endpoint;
}

Provider::Response HttpProvider::generate(const CorpusRecord& record,
                                          std::uint64_t /*run_seed*/) {
  const HttpProviderConfig& config = impl_->config;

  std::string api_key;
  if (!config.api_key_env.empty()) {
    const char* value = std::getenv(config.api_key_env.c_str());
    if (value == nullptr) {
      return Response::failed("environment variable " + config.api_key_env +
                              " is not set");
    }
    api_key = value;
  }

  std::string body = config.body_template;
  replace_token(body, "{{prompt}}", json_escape(record.prompt));

  httplib::Headers headers;
  std::string content_type = "application/json";
  for (const auto& [name, value] : config.headers) {
    std::string resolved = value;
    replace_token(resolved, "{{api_key}}", api_key);
    if (name == "Content-Type" || name == "content-type") {
      content_type = resolved;
    } else {
      headers.emplace(name, resolved);
    }
  }

  impl_->slots.acquire();
  struct Release {
    std::counting_semaphore<4096>& s;
    ~Release() { s.release(); }
  } release{impl_->slots};

  std::string last_error;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0) {
      const auto delay = std::chrono::milliseconds(
          static_cast<long long>(config.backoff_base_ms) * (1ll << (attempt - 1)));
      std::this_thread::sleep_for(delay);
    }
    httplib::Client client(impl_->base_url);
    client.set_connection_timeout(config.timeout_seconds, 0);
    client.set_read_timeout(config.timeout_seconds, 0);
    client.set_write_timeout(config.timeout_seconds, 0);

    httplib::Result result = client.Post(impl_->path, headers, body, content_type);
    if (!result) {
      last_error = "transport error: " + httplib::to_string(result.error());
      continue;  // retry network failures alongside 5xx
    }
    if (result->status == 429 || result->status >= 500) {
      last_error = "status " + std::to_string(result->status);
      continue;
    }
    if (result->status < 200 || result->status >= 300) {
      return Response::failed("status " + std::to_string(result->status) + ": " +
                              result->body.substr(0, 200));
    }
    json parsed;
    try {
      parsed = json::parse(result->body);
    } catch (const json::exception& e) {
      return Response::failed(std::string("response is not JSON: ") + e.what());
    }
    const json* node = walk_path(parsed, config.response_path);
    if (node == nullptr || !node->is_string()) {
      return Response::failed("response path '" + config.response_path +
                              "' not found or not a string");
    }
    std::string text = node->get<std::string>();
    if (config.strip_code_fences) text = strip_fences(text);
    return Response::of(std::move(text));
  }
  return Response::failed("retries exhausted; last error: " + last_error);
}

// ---------------------------------------------------------------------------

std::unique_ptr<Provider> make_provider(const std::string& name,
                                        const std::string& replay_path,
                                        const std::string& config_path) {
  if (name == "gold-echo") return std::make_unique<GoldEchoProvider>();
  if (name == "mutant") {
    return std::make_unique<MutantProvider>(FaultClass::DropNegation);
  }
  if (name.rfind("mutant:", 0) == 0) {
    return std::make_unique<MutantProvider>(
        parse_fault_class(name.substr(7)));
  }
  if (name == "replay") {
    if (replay_path.empty()) {
      throw std::invalid_argument("replay provider needs --replay FILE");
    }
    return std::make_unique<ReplayProvider>(
        ReplayProvider::from_file(replay_path));
  }
  if (name == "http") {
    if (config_path.empty()) {
      throw std::invalid_argument("http provider needs --provider-config FILE");
    }
    return std::make_unique<HttpProvider>(HttpProviderConfig::load(config_path));
  }
  throw std::invalid_argument("unknown provider: " + name);
}

}  // namespace aspforge
