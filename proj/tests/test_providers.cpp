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

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "aspforge/eval.hpp"
#include "aspforge/instances.hpp"
#include "aspforge/providers.hpp"
#include "aspforge/templates.hpp"

using namespace aspforge;

namespace {

CorpusRecord record_for(TaskClass task, Bindings bindings,
                        std::uint64_t seed = 7) {
  TaskInstance instance = realize(task, bindings);
  CorpusRecord record;
  record.id = "prov-" + to_string(task);
  record.task = task;
  record.prompt = instance.prompt;
  record.gold_text = render(instance.gold);
  record.bindings = std::move(bindings);
  record.seed = seed;
  return record;
}

std::map<TaskClass, CorpusRecord> reference_records() {
  return {
      {TaskClass::Assignment,
       record_for(TaskClass::Assignment,
                  {{"predicate", "city"}, {"labels", "moscow,rome,dubai"}})},
      {TaskClass::Constraint,
       record_for(TaskClass::Constraint,
                  {{"predicate", "car"}, {"value", "11"}, {"label", "red"}})},
      {TaskClass::Combination,
       record_for(TaskClass::Combination,
                  {{"predicate_1", "city"}, {"predicate_2", "airport"}})},
      {TaskClass::Join,
       record_for(TaskClass::Join, {{"predicate_1", "owner"},
                                    {"predicate_2", "restaurant"},
                                    {"fields_1", "ID,surname,name,restaurantID"},
                                    {"fields_2", "ID,description"},
                                    {"field", "description"}})},
      {TaskClass::TransitiveClosure,
       record_for(TaskClass::TransitiveClosure,
                  {{"predicate_1", "arrivals"}, {"predicate_2", "flight"}})},
      {TaskClass::Preference,
       record_for(TaskClass::Preference, {{"predicate", "house"},
                                          {"value", "18"},
                                          {"label", "flat"},
                                          {"cost", "2"},
                                          {"level", "2"}})},
      {TaskClass::ValueFiltering,
       record_for(TaskClass::ValueFiltering,
                  {{"predicate", "color"}, {"label", "purple"}})},
      {TaskClass::NegativeFiltering,
       record_for(TaskClass::NegativeFiltering, {{"predicate_1", "vehicle"},
                                                 {"predicate_2", "moto"},
                                                 {"label", "kawasaki"}})},
      {TaskClass::NumericFiltering,
       record_for(TaskClass::NumericFiltering,
                  {{"predicate", "size"},
                   {"comparison", "greater or equal"},
                   {"value", "5"}})},
  };
}

Program gold_of(const CorpusRecord& record) {
  return *parse_program(record.gold_text).program;
}

}  // namespace

TEST_SUITE("providers") {

TEST_CASE("gold echo returns the canonical gold text") {
  CorpusRecord record = reference_records().at(TaskClass::Assignment);
  GoldEchoProvider provider;
  Provider::Response response = provider.generate(record, 1);
  REQUIRE(response.text);
  CHECK(*response.text == record.gold_text);
}

TEST_CASE("fault transformations hit their intended sites") {
  auto records = reference_records();

  auto mutated = apply_fault(FaultClass::OffByOneThreshold,
                             gold_of(records.at(TaskClass::NumericFiltering)));
  REQUIRE(mutated);
  CHECK(render(*mutated) == "select(X) :- size(X,C), C>5.\n");

  auto no_recursion = apply_fault(
      FaultClass::DropRecursiveRule,
      gold_of(records.at(TaskClass::TransitiveClosure)));
  REQUIRE(no_recursion);
  CHECK(render(*no_recursion) == "arrivals(X,Y) :- flight(X,Y).\n");

  auto no_negation = apply_fault(
      FaultClass::DropNegation, gold_of(records.at(TaskClass::NegativeFiltering)));
  REQUIRE(no_negation);
  CHECK(render(*no_negation) ==
        "select(X) :- vehicle(X), moto(X,\"kawasaki\").\n");

  auto hardened = apply_fault(FaultClass::WeakToStrong,
                              gold_of(records.at(TaskClass::Preference)));
  REQUIRE(hardened);
  CHECK(render(*hardened) == ":- assign(18,\"flat\").\n");

  auto collapsed = apply_fault(FaultClass::DropDisjunct,
                               gold_of(records.at(TaskClass::Assignment)));
  REQUIRE(collapsed);
  CHECK(render(*collapsed) ==
        "assign(X,\"moscow\") | assign(X,\"rome\") :- city(X).\n");

  auto unjoined = apply_fault(FaultClass::WrongJoinVariable,
                              gold_of(records.at(TaskClass::Join)));
  REQUIRE(unjoined);
  CHECK(render(*unjoined) ==
        "owner_restaurant(X,Z) :- owner(X,_,_,Y), restaurant(W,Z).\n");

  auto renamed = apply_fault(FaultClass::RenameHead,
                             gold_of(records.at(TaskClass::ValueFiltering)));
  REQUIRE(renamed);
  CHECK(render(*renamed) == "select_m(X) :- color(X,\"purple\").\n");
}

TEST_CASE("inapplicable faults return nothing") {
  auto records = reference_records();
  CHECK_FALSE(apply_fault(FaultClass::DropNegation,
                          gold_of(records.at(TaskClass::Assignment))));
  CHECK_FALSE(apply_fault(FaultClass::DeleteRule,
                          gold_of(records.at(TaskClass::Combination))));
  CHECK_FALSE(apply_fault(FaultClass::RenameHead,
                          gold_of(records.at(TaskClass::Constraint))));
  CHECK_FALSE(apply_fault(FaultClass::OffByOneThreshold,
                          gold_of(records.at(TaskClass::ValueFiltering))));
  CHECK_FALSE(apply_fault(FaultClass::WrongJoinVariable,
                          gold_of(records.at(TaskClass::Combination))));
}

TEST_CASE("every verified mutant is a syntactic hit and a semantic miss") {
  auto records = reference_records();
  std::set<FaultClass> exercised;
  for (const auto& [task, record] : records) {
    const Program gold = gold_of(record);
    const auto instances = default_instances(record);
    for (FaultClass fault : kAllFaults) {
      auto mutated = apply_fault(fault, gold);
      if (!mutated) continue;
      const std::string text = render(*mutated);
      SyntacticOutcome syn = syntactic_hit(text);
      REQUIRE_MESSAGE(syn.hit, to_string(fault) << " on " << to_string(task)
                                                << ": " << syn.detail);
      SemanticOutcome sem = semantic_hit(*syn.program, gold, instances);
      if (!sem.hit) exercised.insert(fault);
    }
  }
  // all nine fault classes are semantics-changing somewhere
  CHECK(exercised.size() == kAllFaults.size());
}

TEST_CASE("the mutant provider verifies before emitting") {
  auto records = reference_records();
  for (const auto& [task, record] : records) {
    MutantProvider provider(FaultClass::DropNegation);
    Provider::Response response = provider.generate(record, 1);
    REQUIRE_MESSAGE(response.text, to_string(task) << ": " << response.error);
    SyntacticOutcome syn = syntactic_hit(*response.text);
    REQUIRE(syn.hit);
    SemanticOutcome sem = semantic_hit(
        *syn.program, gold_of(record), default_instances(record));
    CHECK_FALSE(sem.hit);
  }
}

TEST_CASE("mutant fallback picks an applicable fault") {
  auto record = reference_records().at(TaskClass::Combination);
  // DropNegation never applies to the combination gold; the provider falls
  // through to a fault that does
  MutantProvider provider(FaultClass::DropNegation);
  auto fault = provider.verified_fault(record);
  REQUIRE(fault.has_value());
  CHECK(*fault == FaultClass::RenameHead);
}

TEST_CASE("replay provider looks up by id and reports missing ids") {
  auto record = reference_records().at(TaskClass::Constraint);
  ReplayProvider provider = ReplayProvider::from_entries(
      {{record.id, record.gold_text}});
  Provider::Response hit = provider.generate(record, 0);
  REQUIRE(hit.text);
  CHECK(*hit.text == record.gold_text);
  auto other = reference_records().at(TaskClass::Join);
  Provider::Response miss = provider.generate(other, 0);
  CHECK_FALSE(miss.text);
  CHECK(miss.error.find(other.id) != std::string::npos);
}

TEST_CASE("http provider extracts completions and retries transient errors") {
  std::atomic<int> flaky_calls{0};
  std::atomic<int> throttled_calls{0};
  std::string seen_auth, seen_prompt;

  httplib::Server server;
  server.Post("/v1/chat/completions",
              [&](const httplib::Request& req, httplib::Response& res) {
                auto auth = req.get_header_value("Authorization");
                seen_auth = auth;
                nlohmann::json body = nlohmann::json::parse(req.body);
                seen_prompt = body["messages"][0]["content"];
                nlohmann::json reply = {
                    {"choices",
                     {{{"message",
                        {{"content",
                          "```asp\ncombination(X,Y) :- city(X), "
                          "airport(Y).\n```"}}}}}}};
                res.set_content(reply.dump(), "application/json");
              });
  server.Post("/flaky", [&](const httplib::Request&, httplib::Response& res) {
    if (flaky_calls.fetch_add(1) == 0) {
      res.status = 500;
      return;
    }
    res.set_content(R"({"text":"p."})", "application/json");
  });
  server.Post("/throttled",
              [&](const httplib::Request&, httplib::Response& res) {
                if (throttled_calls.fetch_add(1) < 2) {
                  res.status = 429;
                  return;
                }
                res.set_content(R"({"text":"q."})", "application/json");
              });
  server.Post("/bad-request",
              [&](const httplib::Request&, httplib::Response& res) {
                res.status = 400;
                res.set_content("nope", "text/plain");
              });

  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread server_thread([&server] { server.listen_after_bind(); });
  server.wait_until_ready();
  const std::string base = "http://127.0.0.1:" + std::to_string(port);

  CorpusRecord record = reference_records().at(TaskClass::Combination);

  SUBCASE("chat-completion shape with fence stripping") {
    setenv("ASPFORGE_TEST_KEY", "sk-local-test", 1);
    HttpProviderConfig config;
    config.endpoint = base + "/v1/chat/completions";
    config.headers = {{"Authorization", "Bearer {{api_key}}"},
                      {"Content-Type", "application/json"}};
    config.body_template =
        R"({"model":"m","messages":[{"role":"user","content":"{{prompt}}"}]})";
    config.response_path = "choices.0.message.content";
    config.api_key_env = "ASPFORGE_TEST_KEY";
    HttpProvider provider(config);
    Provider::Response response = provider.generate(record, 1);
    REQUIRE_MESSAGE(response.text, response.error);
    CHECK(*response.text == "combination(X,Y) :- city(X), airport(Y).\n");
    CHECK(seen_auth == "Bearer sk-local-test");
    CHECK(seen_prompt == record.prompt);
  }

  SUBCASE("missing api key environment variable") {
    unsetenv("ASPFORGE_MISSING_KEY");
    HttpProviderConfig config;
    config.endpoint = base + "/v1/chat/completions";
    config.body_template = R"({"content":"{{prompt}}"})";
    config.response_path = "choices.0.message.content";
    config.api_key_env = "ASPFORGE_MISSING_KEY";
    HttpProvider provider(config);
    Provider::Response response = provider.generate(record, 1);
    CHECK_FALSE(response.text);
    CHECK(response.error.find("ASPFORGE_MISSING_KEY") != std::string::npos);
  }

  SUBCASE("retry once on a 500 then succeed") {
    HttpProviderConfig config;
    config.endpoint = base + "/flaky";
    config.body_template = R"({"content":"{{prompt}}"})";
    config.response_path = "text";
    config.backoff_base_ms = 1;
    HttpProvider provider(config);
    Provider::Response response = provider.generate(record, 1);
    REQUIRE_MESSAGE(response.text, response.error);
    CHECK(*response.text == "p.");
    CHECK(flaky_calls.load() == 2);
  }

  SUBCASE("retry twice on 429 then succeed") {
    HttpProviderConfig config;
    config.endpoint = base + "/throttled";
    config.body_template = R"({"content":"{{prompt}}"})";
    config.response_path = "text";
    config.backoff_base_ms = 1;
    HttpProvider provider(config);
    Provider::Response response = provider.generate(record, 1);
    REQUIRE_MESSAGE(response.text, response.error);
    CHECK(*response.text == "q.");
    CHECK(throttled_calls.load() == 3);
  }

  SUBCASE("client errors do not retry") {
    HttpProviderConfig config;
    config.endpoint = base + "/bad-request";
    config.body_template = R"({"content":"{{prompt}}"})";
    config.response_path = "text";
    config.backoff_base_ms = 1;
    HttpProvider provider(config);
    Provider::Response response = provider.generate(record, 1);
    CHECK_FALSE(response.text);
    CHECK(response.error.find("400") != std::string::npos);
  }

  SUBCASE("wrong response path is an error") {
    HttpProviderConfig config;
    config.endpoint = base + "/flaky";
    config.body_template = R"({"content":"{{prompt}}"})";
    config.response_path = "missing.field";
    config.backoff_base_ms = 1;
    flaky_calls = 1;  // skip the flaky 500
    HttpProvider provider(config);
    Provider::Response response = provider.generate(record, 1);
    CHECK_FALSE(response.text);
    CHECK(response.error.find("missing.field") != std::string::npos);
  }

  server.stop();
  server_thread.join();
}

TEST_CASE("http provider config parses and validates") {
  HttpProviderConfig config = HttpProviderConfig::from_json(R"({
    "endpoint": "https://api.example.com/v1/chat/completions",
    "headers": {"Authorization": "Bearer {{api_key}}"},
    "body_template": "{\"content\":\"{{prompt}}\"}",
    "response_path": "choices.0.text",
    "api_key_env": "EXAMPLE_KEY",
    "timeout_seconds": 30,
    "max_retries": 2,
    "max_concurrency": 8,
    "strip_code_fences": false
  })");
  CHECK(config.endpoint == "https://api.example.com/v1/chat/completions");
  CHECK(config.timeout_seconds == 30);
  CHECK(config.max_retries == 2);
  CHECK(config.max_concurrency == 8);
  CHECK_FALSE(config.strip_code_fences);
  CHECK(config.api_key_env == "EXAMPLE_KEY");
}

TEST_CASE("provider factory resolves names") {
  CHECK(make_provider("gold-echo", "", "")->descriptor() == "gold-echo");
  CHECK(make_provider("mutant:rename_head", "", "")->descriptor() ==
        "mutant:rename_head");
  CHECK_THROWS_AS(make_provider("nonsense", "", ""), std::invalid_argument);
  CHECK_THROWS_AS(make_provider("replay", "", ""), std::invalid_argument);
  CHECK_THROWS_AS(make_provider("http", "", ""), std::invalid_argument);
}

}  // TEST_SUITE
