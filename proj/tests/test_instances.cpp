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

#include <algorithm>
#include <set>
#include <string>

#include "aspforge/grounding.hpp"
#include "aspforge/instances.hpp"
#include "aspforge/solver.hpp"
#include "aspforge/templates.hpp"

using namespace aspforge;

namespace {

CorpusRecord record_for(TaskClass task, Bindings bindings,
                        std::uint64_t seed = 99) {
  TaskInstance instance = realize(task, bindings);
  CorpusRecord record;
  record.id = "fixture-" + to_string(task);
  record.task = task;
  record.prompt = instance.prompt;
  record.gold_text = render(instance.gold);
  record.bindings = std::move(bindings);
  record.seed = seed;
  return record;
}

Program gold_of(const CorpusRecord& record) {
  return *parse_program(record.gold_text).program;
}

std::set<std::string> atoms_of(const SolveResult& result, std::size_t index) {
  std::set<std::string> out;
  for (const Atom& a : result.all.at(index).atoms) out.insert(render(a));
  return out;
}

}  // namespace

TEST_SUITE("instances") {

TEST_CASE("instances are deterministic in record and seed") {
  CorpusRecord record = record_for(
      TaskClass::Join, {{"predicate_1", "owner"},
                        {"predicate_2", "restaurant"},
                        {"fields_1", "ID,surname,name,restaurantID"},
                        {"fields_2", "ID,description"},
                        {"field", "description"}});
  auto a = make_instances(record, 5, 2);
  auto b = make_instances(record, 5, 2);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(render_facts(a[i].facts) == render_facts(b[i].facts));
    CHECK(a[i].descriptor == b[i].descriptor);
  }
}

TEST_CASE("facts are ground and drawn from the reserved namespace") {
  for (TaskClass task : kAllTasks) {
    Vocabulary vocab = Vocabulary::defaults().train_partition();
    TaskInstance t = instantiate(task, vocab, 123);
    CorpusRecord record;
    record.id = "ns-" + to_string(task);
    record.task = task;
    record.bindings = t.bindings;
    record.gold_text = render(t.gold);
    record.seed = 123;
    for (const FactInstance& instance : default_instances(record)) {
      CHECK(!instance.facts.empty());
      CHECK(!instance.descriptor.empty());
      for (const Rule& f : instance.facts) {
        CHECK(f.is_fact());
        CHECK(is_ground(f));
      }
    }
  }
}

TEST_CASE("assignment facts give nine answer sets for three labels") {
  CorpusRecord record = record_for(
      TaskClass::Assignment,
      {{"predicate", "city"}, {"labels", "moscow,rome,dubai"}});
  auto instances = default_instances(record);
  REQUIRE(instances.size() == 2);
  REQUIRE(instances[0].facts.size() == 2);  // two elements
  SolveResult result =
      answer_sets(ground(gold_of(record), instances[0].facts));
  CHECK(result.all.size() == 9);
  // the three-element variant gives 27
  REQUIRE(instances[1].facts.size() == 3);
  SolveResult bigger =
      answer_sets(ground(gold_of(record), instances[1].facts));
  CHECK(bigger.all.size() == 27);
}

TEST_CASE("numeric filtering facts cover the boundary") {
  CorpusRecord record = record_for(TaskClass::NumericFiltering,
                                   {{"predicate", "size"},
                                    {"comparison", "greater or equal"},
                                    {"value", "5"}});
  auto instances = default_instances(record);
  CHECK(render_facts(instances[0].facts) ==
        "size(e1,4).\nsize(e2,5).\nsize(e3,7).\n");
  SolveResult result =
      answer_sets(ground(gold_of(record), instances[0].facts));
  REQUIRE(result.all.size() == 1);
  std::set<std::string> atoms = atoms_of(result, 0);
  CHECK(atoms.count("select(e2)"));
  CHECK(atoms.count("select(e3)"));
  CHECK_FALSE(atoms.count("select(e1)"));
}

TEST_CASE("closure facts derive the indirect pair") {
  CorpusRecord record = record_for(
      TaskClass::TransitiveClosure,
      {{"predicate_1", "arrivals"}, {"predicate_2", "flight"}});
  auto instances = default_instances(record);
  SolveResult result =
      answer_sets(ground(gold_of(record), instances[0].facts));
  REQUIRE(result.all.size() == 1);
  std::set<std::string> atoms = atoms_of(result, 0);
  CHECK(atoms.count("arrivals(c1,c2)"));
  CHECK(atoms.count("arrivals(c2,c3)"));
  CHECK(atoms.count("arrivals(c1,c3)"));  // only derivable transitively
  CHECK(atoms.count("arrivals(c4,c5)"));  // the disconnected edge
  CHECK_FALSE(atoms.count("arrivals(c3,c1)"));
  CHECK_FALSE(atoms.count("arrivals(c1,c4)"));
}

TEST_CASE("constraint instances split into incoherent and coherent") {
  CorpusRecord record = record_for(
      TaskClass::Constraint,
      {{"predicate", "car"}, {"value", "11"}, {"label", "red"}});
  auto instances = default_instances(record);
  REQUIRE(instances.size() == 2);
  CHECK(answer_sets(ground(gold_of(record), instances[0].facts)).all.empty());
  CHECK(answer_sets(ground(gold_of(record), instances[1].facts)).all.size() ==
        1);
}

TEST_CASE("preference instances differ in cost") {
  CorpusRecord record = record_for(TaskClass::Preference,
                                   {{"predicate", "house"},
                                    {"value", "18"},
                                    {"label", "flat"},
                                    {"cost", "2"},
                                    {"level", "2"}});
  auto instances = default_instances(record);
  SolveResult with = answer_sets(ground(gold_of(record), instances[0].facts));
  REQUIRE(with.all.size() == 1);
  CHECK(with.all[0].cost.to_string() == "2@2");
  SolveResult without =
      answer_sets(ground(gold_of(record), instances[1].facts));
  REQUIRE(without.all.size() == 1);
  CHECK(without.all[0].cost.to_string() == "0");
}

TEST_CASE("join instances carry joinable and non-joinable rows") {
  CorpusRecord record = record_for(
      TaskClass::Join, {{"predicate_1", "owner"},
                        {"predicate_2", "restaurant"},
                        {"fields_1", "ID,surname,name,restaurantID"},
                        {"fields_2", "ID,description"},
                        {"field", "description"}});
  auto instances = default_instances(record);
  SolveResult result =
      answer_sets(ground(gold_of(record), instances[0].facts));
  REQUIRE(result.all.size() == 1);
  std::set<std::string> atoms = atoms_of(result, 0);
  int joined = 0;
  for (const std::string& a : atoms) {
    if (a.rfind("owner_restaurant(", 0) == 0) ++joined;
  }
  CHECK(joined == 1);  // exactly the joinable row
}

TEST_CASE("gold is coherent on every instance except the forbidden one") {
  Vocabulary vocab = Vocabulary::defaults().train_partition();
  for (TaskClass task : kAllTasks) {
    TaskInstance t = instantiate(task, vocab, 2026);
    CorpusRecord record;
    record.id = "coherent-" + to_string(task);
    record.task = task;
    record.bindings = t.bindings;
    record.gold_text = render(t.gold);
    record.seed = 2026;
    auto instances = default_instances(record);
    for (std::size_t k = 0; k < instances.size(); ++k) {
      SolveResult result =
          answer_sets(ground(t.gold, instances[k].facts));
      if (task == TaskClass::Constraint && k == 0) {
        CHECK(result.all.empty());
      } else {
        CHECK(!result.all.empty());
      }
    }
  }
}

}  // TEST_SUITE
