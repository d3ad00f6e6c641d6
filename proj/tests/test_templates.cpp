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

#include "aspforge/corpus.hpp"
#include "aspforge/grounding.hpp"
#include "aspforge/hashing.hpp"
#include "aspforge/instances.hpp"
#include "aspforge/solver.hpp"
#include "aspforge/templates.hpp"

using namespace aspforge;

namespace {

// The canonical instantiation of each class, used as ground truth across the
// test suites.
Bindings reference_bindings(TaskClass task) {
  switch (task) {
    case TaskClass::Assignment:
      return {{"predicate", "city"}, {"labels", "moscow,rome,dubai"}};
    case TaskClass::Constraint:
      return {{"predicate", "car"}, {"value", "11"}, {"label", "red"}};
    case TaskClass::Combination:
      return {{"predicate_1", "city"}, {"predicate_2", "airport"}};
    case TaskClass::Join:
      return {{"predicate_1", "owner"},
              {"predicate_2", "restaurant"},
              {"fields_1", "ID,surname,name,restaurantID"},
              {"fields_2", "ID,description"},
              {"field", "description"}};
    case TaskClass::TransitiveClosure:
      return {{"predicate_1", "arrivals"}, {"predicate_2", "flight"}};
    case TaskClass::Preference:
      return {{"predicate", "house"},
              {"value", "18"},
              {"label", "flat"},
              {"cost", "2"},
              {"level", "2"}};
    case TaskClass::ValueFiltering:
      return {{"predicate", "color"}, {"label", "purple"}};
    case TaskClass::NegativeFiltering:
      return {{"predicate_1", "vehicle"},
              {"predicate_2", "moto"},
              {"label", "kawasaki"}};
    case TaskClass::NumericFiltering:
      return {{"predicate", "size"},
              {"comparison", "greater or equal"},
              {"value", "5"}};
  }
  return {};
}

}  // namespace

TEST_SUITE("templates") {

TEST_CASE("assignment reference pair") {
  TaskInstance t = realize(TaskClass::Assignment,
                           reference_bindings(TaskClass::Assignment));
  CHECK(t.prompt ==
        "Write an ASP program for the following problem. Assign exactly a "
        "label among a given set of labels to a set of elements. The set of "
        "elements is expressed by predicate city. The labels are "
        "moscow,rome,dubai.");
  CHECK(render(t.gold) ==
        "assign(X,\"moscow\") | assign(X,\"rome\") | assign(X,\"dubai\") :- "
        "city(X).\n");
}

TEST_CASE("constraint reference pair") {
  TaskInstance t =
      realize(TaskClass::Constraint, reference_bindings(TaskClass::Constraint));
  CHECK(t.prompt ==
        "Write an ASP program for the following problem. Prevent the "
        "predicate car with value 11 from having label \"red\".");
  CHECK(render(t.gold) == ":- assign(11,\"red\").\n");
}

TEST_CASE("combination reference pair") {
  TaskInstance t = realize(TaskClass::Combination,
                           reference_bindings(TaskClass::Combination));
  CHECK(t.prompt ==
        "Write an ASP program for the following problem. Generate all the "
        "combinations of elements from two sets. The two sets are "
        "represented by predicates city and airport.");
  CHECK(render(t.gold) == "combination(X,Y) :- city(X), airport(Y).\n");
}

TEST_CASE("join reference pair") {
  TaskInstance t = realize(TaskClass::Join, reference_bindings(TaskClass::Join));
  CHECK(t.prompt ==
        "Write an ASP program for the following problem. Consider predicate "
        "\"owner\" having fields \"ID\",\"surname\",\"name\",\"restaurantID\", "
        "and the predicate \"restaurant\" having fields "
        "\"ID\",\"description\". Define a predicate \"owner_restaurant\" that "
        "associates to each owner the description of restaurant.");
  CHECK(render(t.gold) ==
        "owner_restaurant(X,Z) :- owner(X,_,_,Y), restaurant(Y,Z).\n");
}

TEST_CASE("transitive closure reference pair") {
  TaskInstance t = realize(TaskClass::TransitiveClosure,
                           reference_bindings(TaskClass::TransitiveClosure));
  CHECK(t.prompt ==
        "Write an ASP program for the following problem. Define predicate "
        "\"arrivals\" as the transitive closure of predicate \"flight\".");
  CHECK(render(t.gold) ==
        "arrivals(X,Y) :- flight(X,Y).\n"
        "arrivals(X,Y) :- flight(X,Z), arrivals(Z,Y).\n");
}

TEST_CASE("preference reference pair") {
  TaskInstance t =
      realize(TaskClass::Preference, reference_bindings(TaskClass::Preference));
  CHECK(t.prompt ==
        "Write an ASP program for the following problem. I would prefer that "
        "predicate house with value 18 is not associated with \"flat\". If "
        "this occurs, it costs 2 at level 2.");
  CHECK(render(t.gold) == ":~ assign(18,\"flat\"). [2@2]\n");
}

TEST_CASE("value filtering reference pair") {
  TaskInstance t = realize(TaskClass::ValueFiltering,
                           reference_bindings(TaskClass::ValueFiltering));
  CHECK(t.prompt ==
        "Write an ASP program for the following problem. Select all values "
        "associated to the predicate color with label \"purple\".");
  CHECK(render(t.gold) == "select(X) :- color(X,\"purple\").\n");
}

TEST_CASE("negative filtering reference pair") {
  TaskInstance t = realize(TaskClass::NegativeFiltering,
                           reference_bindings(TaskClass::NegativeFiltering));
  CHECK(t.prompt ==
        "Write an ASP program for the following problem. Select all values "
        "associated with predicate vehicle but not associated with predicate "
        "moto and label \"kawasaki\".");
  CHECK(render(t.gold) ==
        "select(X) :- vehicle(X), not moto(X,\"kawasaki\").\n");
}

TEST_CASE("numeric filtering reference pair") {
  TaskInstance t = realize(TaskClass::NumericFiltering,
                           reference_bindings(TaskClass::NumericFiltering));
  CHECK(t.prompt ==
        "Write an ASP program for the following problem. Select all values "
        "associated with predicate size with a value greater or equal than "
        "5.");
  CHECK(render(t.gold) == "select(X) :- size(X,C), C>=5.\n");
}

TEST_CASE("instantiate is deterministic") {
  Vocabulary vocab = Vocabulary::defaults().train_partition();
  for (TaskClass task : kAllTasks) {
    for (std::uint64_t seed : {1ull, 77ull, 123456789ull}) {
      TaskInstance a = instantiate(task, vocab, seed);
      TaskInstance b = instantiate(task, vocab, seed);
      CHECK(a.prompt == b.prompt);
      CHECK(a.bindings == b.bindings);
      CHECK(render(a.gold) == render(b.gold));
    }
  }
}

TEST_CASE("prompt equals the template with placeholders substituted") {
  // independent substitution of the bound values into the template
  auto substitute = [](TaskClass task, const Bindings& bindings) {
    std::string text = template_text(task);
    auto sub = [&text](const std::string& token, const std::string& value) {
      std::size_t pos = 0;
      while ((pos = text.find(token, pos)) != std::string::npos) {
        text.replace(pos, token.size(), value);
        pos += value.size();
      }
    };
    auto quote_list = [](const std::string& joined) {
      std::string out;
      std::string item;
      for (char c : joined + ",") {
        if (c == ',') {
          if (!out.empty()) out += ',';
          out += '"' + item + '"';
          item.clear();
        } else {
          item += c;
        }
      }
      return out;
    };
    for (const auto& [key, value] : bindings) {
      if (key == "labels") sub("[LABELS]", value);
      else if (key == "fields_1") sub("[FIELDS_1]", quote_list(value));
      else if (key == "fields_2") sub("[FIELDS_2]", quote_list(value));
      else if (key == "field") sub("[FIELD]", value);
      else if (key == "predicate_1") sub("[PREDICATE_1]", value);
      else if (key == "predicate_2") sub("[PREDICATE_2]", value);
      else if (key == "predicate") sub("[PREDICATE]", value);
      else if (key == "value") sub("[VALUE]", value);
      else if (key == "label") sub("[LABEL]", value);
      else if (key == "cost") sub("[COST]", value);
      else if (key == "level") sub("[LEVEL]", value);
      else if (key == "comparison") sub("[COMPARISON]", value);
    }
    return text;
  };

  Vocabulary vocab = Vocabulary::defaults().train_partition();
  SeededRng rng(8);
  for (TaskClass task : kAllTasks) {
    for (int i = 0; i < 50; ++i) {
      TaskInstance t = instantiate(task, vocab, rng.next());
      CHECK(t.prompt == substitute(task, t.bindings));
    }
  }
}

TEST_CASE("gold programs parse safely and solve over harness facts") {
  Vocabulary vocab = Vocabulary::defaults().train_partition();
  SeededRng seeds(20260810);
  for (TaskClass task : kAllTasks) {
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t seed = seeds.next();
      TaskInstance t = instantiate(task, vocab, seed);
      ParseResult parsed = parse_program(render(t.gold));
      REQUIRE(parsed.ok());
      REQUIRE(*parsed.program == t.gold);
      REQUIRE_FALSE(check_safety(t.gold));

      CorpusRecord record;
      record.id = to_hex(seed);
      record.task = task;
      record.bindings = t.bindings;
      record.seed = seed;
      record.gold_text = render(t.gold);
      for (const FactInstance& instance : default_instances(record)) {
        SolveResult result =
            answer_sets(ground(t.gold, instance.facts));
        if (task == TaskClass::Constraint &&
            instance.descriptor.find("incoherence") != std::string::npos) {
          CHECK(result.all.empty());
        } else {
          CHECK(!result.all.empty());
        }
      }
    }
  }
}

TEST_CASE("assignment label count stays in range") {
  Vocabulary vocab = Vocabulary::defaults().train_partition();
  SeededRng rng(99);
  std::set<std::size_t> seen;
  for (int i = 0; i < 300; ++i) {
    Bindings b = draw_bindings(TaskClass::Assignment, vocab, rng.next());
    std::size_t commas =
        static_cast<std::size_t>(std::count(b.at("labels").begin(),
                                            b.at("labels").end(), ','));
    seen.insert(commas + 1);
    CHECK(commas + 1 >= 2);
    CHECK(commas + 1 <= 5);
  }
  CHECK(seen.size() == 4);  // all of 2..5 appear
}

TEST_CASE("join arities stay in range and share one key") {
  Vocabulary vocab = Vocabulary::defaults().train_partition();
  SeededRng rng(1234);
  for (int i = 0; i < 300; ++i) {
    Bindings b = draw_bindings(TaskClass::Join, vocab, rng.next());
    TaskInstance t = realize(TaskClass::Join, b);
    const Rule& rule = t.gold.rules.front();
    REQUIRE(rule.body.size() == 2);
    CHECK(rule.body[0].atom.arity() >= 2);
    CHECK(rule.body[0].atom.arity() <= 5);
    CHECK(rule.body[1].atom.arity() >= 2);
    CHECK(rule.body[1].atom.arity() <= 5);
    // Y joins the two atoms
    int y_count = 0;
    for (const Literal& l : rule.body) {
      for (const Term& term : l.atom.terms) {
        if (term == Term::variable("Y")) ++y_count;
      }
    }
    CHECK(y_count == 2);
  }
}

TEST_CASE("numeric filtering draws all four phrasings with matching ops") {
  Vocabulary vocab = Vocabulary::defaults().train_partition();
  SeededRng rng(5);
  std::set<std::string> seen;
  for (int i = 0; i < 200; ++i) {
    TaskInstance t = instantiate(TaskClass::NumericFiltering, vocab, rng.next());
    const std::string phrase = t.bindings.at("comparison");
    seen.insert(phrase);
    const Literal& cmp = t.gold.rules[0].body[1];
    REQUIRE(cmp.kind == Literal::Kind::Comparison);
    if (phrase == "greater") CHECK(cmp.op == CmpOp::Gt);
    if (phrase == "greater or equal") CHECK(cmp.op == CmpOp::Ge);
    if (phrase == "lower") CHECK(cmp.op == CmpOp::Lt);
    if (phrase == "lower or equal") CHECK(cmp.op == CmpOp::Le);
  }
  CHECK(seen.size() == 4);
}

TEST_CASE("gold head predicates per class") {
  CHECK(gold_head_predicates(TaskClass::Assignment,
                             reference_bindings(TaskClass::Assignment)) ==
        std::set<std::string>{"assign"});
  CHECK(gold_head_predicates(TaskClass::Join,
                             reference_bindings(TaskClass::Join)) ==
        std::set<std::string>{"owner_restaurant"});
  CHECK(gold_head_predicates(TaskClass::ValueFiltering,
                             reference_bindings(TaskClass::ValueFiltering)) ==
        std::set<std::string>{"select"});
  CHECK(gold_head_predicates(TaskClass::TransitiveClosure,
                             reference_bindings(TaskClass::TransitiveClosure)) ==
        std::set<std::string>{"arrivals"});
}

TEST_CASE("vocabulary partitions are disjoint") {
  Vocabulary full = Vocabulary::defaults();
  Vocabulary train = full.train_partition();
  Vocabulary test = full.test_partition();
  CHECK(train.partition == "train");
  CHECK(test.partition == "test");
  CHECK(!train.predicates.empty());
  CHECK(!test.predicates.empty());
  for (const std::string& p : test.predicates) {
    CHECK(std::find(train.predicates.begin(), train.predicates.end(), p) ==
          train.predicates.end());
  }
  for (const std::string& l : test.labels) {
    CHECK(std::find(train.labels.begin(), train.labels.end(), l) ==
          train.labels.end());
  }
}

TEST_CASE("vocabulary file round trip and checksum") {
  Vocabulary original = Vocabulary::defaults();
  Vocabulary reparsed = Vocabulary::parse(original.canonical_text());
  CHECK(reparsed.predicates == original.predicates);
  CHECK(reparsed.labels == original.labels);
  CHECK(reparsed.fields == original.fields);
  CHECK(reparsed.value_min == original.value_min);
  CHECK(reparsed.value_max == original.value_max);
  CHECK(reparsed.checksum() == original.checksum());
}

TEST_CASE("vocabulary rejects malformed input") {
  CHECK_THROWS_AS(Vocabulary::parse("[predicates]\nNotLower\n"),
                  VocabularyError);
  CHECK_THROWS_AS(Vocabulary::parse("[labels]\nwith,comma\n"), VocabularyError);
  CHECK_THROWS_AS(Vocabulary::parse("[values]\nmin = ten\n"), VocabularyError);
  CHECK_THROWS_AS(Vocabulary::parse("[unknown]\nx\n"), VocabularyError);
  CHECK_THROWS_AS(Vocabulary::parse("orphan\n"), VocabularyError);
  CHECK_THROWS_AS(
      Vocabulary::parse("[predicates]\ncity\ncity\n"), VocabularyError);
  CHECK_THROWS_AS(Vocabulary::parse("[values]\nmin = 9\nmax = 3\n"),
                  VocabularyError);
}

TEST_CASE("vocabulary errors when a class needs more symbols") {
  Vocabulary tiny;
  tiny.predicates = {"city"};
  tiny.labels = {"red"};
  tiny.fields = {};
  CHECK_THROWS_AS(draw_bindings(TaskClass::Assignment, tiny, 1),
                  VocabularyError);
  CHECK_THROWS_AS(draw_bindings(TaskClass::Combination, tiny, 1),
                  VocabularyError);
  Vocabulary no_fields;
  no_fields.predicates = {"owner", "restaurant"};
  no_fields.labels = {"red"};
  no_fields.fields = {};
  CHECK_THROWS_AS(draw_bindings(TaskClass::Join, no_fields, 1),
                  VocabularyError);
}

}  // TEST_SUITE
