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
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aspforge/corpus.hpp"
#include "aspforge/eval.hpp"
#include "aspforge/external_solver.hpp"
#include "aspforge/grounding.hpp"
#include "aspforge/instances.hpp"
#include "aspforge/oracle.hpp"
#include "aspforge/providers.hpp"
#include "aspforge/solver.hpp"
#include "aspforge/templates.hpp"
#include "../support/random_programs.hpp"

using namespace aspforge;
using aspforge::testing::random_ground_program;
using aspforge::testing::result_fingerprint;

namespace {

int failures = 0;
std::string cli_path = "./aspforge";

struct Criterion {
  std::string name;
  std::vector<std::string> problems;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  explicit Criterion(std::string n) : name(std::move(n)) {}

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }

  void finish() {
    char timing[64];
    std::snprintf(timing, sizeof(timing), "%.1fs", seconds());
    if (problems.empty()) {
      std::cout << "[PASS] " << name << " (" << timing << ")\n";
    } else {
      ++failures;
      std::cout << "[FAIL] " << name << " (" << timing << ")\n";
      for (const std::string& p : problems) std::cout << "       - " << p << "\n";
    }
  }
};

std::string temp_dir(const std::string& tag) {
  auto path = std::filesystem::temp_directory_path() /
              ("aspforge-acceptance-" + tag + "-" +
               std::to_string(::getpid()));
  std::filesystem::remove_all(path);
  std::filesystem::create_directories(path);
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Program parse_or_die(const std::string& text) {
  ParseResult parsed = parse_program(text);
  if (!parsed.ok()) {
    std::cerr << "acceptance harness bug, unparseable fixture: " << text
              << "\n";
    std::exit(2);
  }
  return *parsed.program;
}

CorpusRecord fixture_record(TaskClass task, Bindings bindings) {
  TaskInstance instance = realize(task, bindings);
  CorpusRecord record;
  record.id = "acceptance-" + to_string(task);
  record.task = task;
  record.prompt = instance.prompt;
  record.gold_text = render(instance.gold);
  record.bindings = std::move(bindings);
  record.seed = 4242;
  return record;
}

// ---------------------------------------------------------------------------

void criterion_1_gold_self_verification() {
  Criterion c("criterion 1: gold self-verification (900 records, runs=5)");
  Vocabulary vocab = Vocabulary::defaults().train_partition();
  BuildResult corpus = build_corpus(900, uniform_proportions(), vocab, 42, 0);
  c.require(corpus.records.size() == 900, "corpus size is not 900");
  for (TaskClass t : kAllTasks) {
    c.require(corpus.manifest.per_task.at(t) == 100,
              "per-task count is not 100 for " + to_string(t));
  }
  GoldEchoProvider provider;
  EvalOptions options;
  options.runs = 5;
  options.jobs = 0;  // all cores
  options.seed = 1;
  EvalOutcome outcome = evaluate(corpus.records, provider, options);
  c.require(outcome.report.per_task.size() == 9, "missing task rows");
  for (const auto& [task, score] : outcome.report.per_task) {
    c.require(score.syntactic == 1.0,
              to_string(task) + " syntactic != 1.00 (" +
                  std::to_string(score.syntactic) + ")");
    c.require(score.semantic == 1.0,
              to_string(task) + " semantic != 1.00 (" +
                  std::to_string(score.semantic) + ")");
    c.require(score.attempts == 500, to_string(task) + " attempts != 500");
  }
  c.require(outcome.report.overall_syntactic == 1.0, "total syntactic != 1.00");
  c.require(outcome.report.overall_semantic == 1.0, "total semantic != 1.00");
  c.require(outcome.hits.size() == 4500, "hit stream is not 900x5");
  c.require(c.seconds() <= 300.0, "runtime exceeded 5 minutes");
  c.finish();
}

void criterion_2_proportion_fidelity() {
  Criterion c("criterion 2: proportion fidelity (gen-dataset --total 37000)");
  const std::string dir_a = temp_dir("gen-a");
  const std::string dir_b = temp_dir("gen-b");
  auto run_cli = [&](const std::string& out_dir) {
    const std::string command = cli_path +
                                " gen-dataset --total 37000 --seed 7 --out " +
                                out_dir + " > /dev/null";
    return std::system(command.c_str()) == 0;
  };
  c.require(run_cli(dir_a), "gen-dataset run 1 failed");
  c.require(run_cli(dir_b), "gen-dataset run 2 failed");
  if (!c.problems.empty()) {
    c.finish();
    return;
  }

  const std::map<TaskClass, long long> expected = {
      {TaskClass::Assignment, 9990},
      {TaskClass::Constraint, 4995},
      {TaskClass::Combination, 999},
      {TaskClass::Join, 8991},
      {TaskClass::TransitiveClosure, 999},
      {TaskClass::Preference, 3996},
      {TaskClass::ValueFiltering, 999},
      {TaskClass::NegativeFiltering, 999},
      {TaskClass::NumericFiltering, 4995},
  };
  nlohmann::json manifest = nlohmann::json::parse(slurp(dir_a + "/manifest.json"));
  for (const auto& [task, count] : expected) {
    const long long actual =
        manifest.at("per_task").at(to_string(task)).get<long long>();
    c.require(std::llabs(actual - count) <= 1,
              to_string(task) + " count " + std::to_string(actual) +
                  " deviates from " + std::to_string(count) + " by more than 1");
  }

  LoadedCorpus loaded = load_corpus(dir_a);
  std::map<TaskClass, long long> train, total;
  for (const CorpusRecord& r : loaded.records) {
    total[r.task]++;
    if (r.split == "train") train[r.task]++;
  }
  for (TaskClass t : kAllTasks) {
    const double target = 0.8 * static_cast<double>(total[t]);
    c.require(std::abs(static_cast<double>(train[t]) - target) <= 1.0,
              to_string(t) + " split " + std::to_string(train[t]) + "/" +
                  std::to_string(total[t]) + " misses 80-20 by more than 1");
  }

  c.require(slurp(dir_a + "/corpus.jsonl") == slurp(dir_b + "/corpus.jsonl"),
            "corpus.jsonl differs between identical runs");
  c.require(slurp(dir_a + "/manifest.json") == slurp(dir_b + "/manifest.json"),
            "manifest.json differs between identical runs");
  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
  c.finish();
}

void criterion_3_solver_oracle_equivalence() {
  Criterion c("criterion 3: solver-oracle equivalence (1000 random programs)");
  SeededRng rng(20262026);
  SolveOptions options;
  options.max_atoms = 20;
  int disagreements = 0;
  for (int i = 0; i < 1000; ++i) {
    GroundProgram program = random_ground_program(rng);
    SolveResult fast = answer_sets(program, options);
    SolveResult slow = answer_sets_oracle(program);
    if (result_fingerprint(fast) != result_fingerprint(slow)) {
      ++disagreements;
      if (disagreements == 1) {
        c.require(false, "first disagreement on program:\n" + render(program));
      }
    }
  }
  c.require(disagreements == 0,
            std::to_string(disagreements) + " of 1000 programs disagree");
  c.require(c.seconds() <= 120.0, "runtime exceeded 2 minutes");
  c.finish();
}

void criterion_4_semantics_fixtures() {
  Criterion c("criterion 4: semantics fixtures (exact counts and optima)");
  auto solve_text = [](const std::string& program_text,
                       const std::string& facts_text = "") {
    return answer_sets(ground(parse_or_die(program_text),
                              parse_or_die(facts_text).rules));
  };

  c.require(solve_text("p | q.").all.size() == 2, "{p|q.} must have 2 answer sets");
  c.require(solve_text("p :- not q. q :- not p.").all.size() == 2,
            "even negation loop must have 2 answer sets");
  c.require(solve_text("a. :- a.").all.empty(),
            "{a. :- a.} must be incoherent");

  SolveResult weak = solve_text("p | q. :~ p. [1@2] :~ q. [5@1]");
  c.require(weak.optimal.size() == 1 &&
                render(weak.optimal.front().atoms.front()) == "q",
            "lexicographic optimum must be {q}");

  SolveResult guesses = solve_text(
      R"(assign(X,"moscow") | assign(X,"rome") | assign(X,"dubai") :- city(X).)",
      "city(c1). city(c2).");
  c.require(guesses.all.size() == 9,
            "2 cities x 3 labels must give 9 answer sets, got " +
                std::to_string(guesses.all.size()));

  // transitive closure on a 3-chain, against direct reachability
  SolveResult closure = solve_text(
      "arrivals(X,Y) :- flight(X,Y).\n"
      "arrivals(X,Y) :- flight(X,Z), arrivals(Z,Y).",
      "flight(c1,c2). flight(c2,c3).");
  c.require(closure.all.size() == 1, "closure program must be deterministic");
  if (closure.all.size() == 1) {
    std::set<std::string> derived;
    for (const Atom& a : closure.all[0].atoms) {
      if (a.predicate == "arrivals") derived.insert(render(a));
    }
    const std::set<std::string> expected = {
        "arrivals(c1,c2)", "arrivals(c2,c3)", "arrivals(c1,c3)"};
    c.require(derived == expected,
              "closure atoms differ from reachability on the 3-chain");
  }
  c.finish();
}

void criterion_5_mutation_kill_rate() {
  Criterion c("criterion 5: mutation kill rate (all applicable mutants)");
  const std::map<TaskClass, Bindings> bindings = {
      {TaskClass::Assignment,
       {{"predicate", "city"}, {"labels", "moscow,rome,dubai"}}},
      {TaskClass::Constraint,
       {{"predicate", "car"}, {"value", "11"}, {"label", "red"}}},
      {TaskClass::Combination,
       {{"predicate_1", "city"}, {"predicate_2", "airport"}}},
      {TaskClass::Join,
       {{"predicate_1", "owner"},
        {"predicate_2", "restaurant"},
        {"fields_1", "ID,surname,name,restaurantID"},
        {"fields_2", "ID,description"},
        {"field", "description"}}},
      {TaskClass::TransitiveClosure,
       {{"predicate_1", "arrivals"}, {"predicate_2", "flight"}}},
      {TaskClass::Preference,
       {{"predicate", "house"},
        {"value", "18"},
        {"label", "flat"},
        {"cost", "2"},
        {"level", "2"}}},
      {TaskClass::ValueFiltering,
       {{"predicate", "color"}, {"label", "purple"}}},
      {TaskClass::NegativeFiltering,
       {{"predicate_1", "vehicle"},
        {"predicate_2", "moto"},
        {"label", "kawasaki"}}},
      {TaskClass::NumericFiltering,
       {{"predicate", "size"},
        {"comparison", "greater or equal"},
        {"value", "5"}}},
  };

  std::set<FaultClass> covered;
  int verified_mutants = 0;
  for (const auto& [task, b] : bindings) {
    CorpusRecord record = fixture_record(task, b);
    Program gold = parse_or_die(record.gold_text);
    auto instances = default_instances(record);
    for (FaultClass fault : kAllFaults) {
      auto mutated = apply_fault(fault, gold);
      if (!mutated) continue;
      const std::string text = render(*mutated);
      // verification step: the mutant must change the solve result
      SyntacticOutcome syn = syntactic_hit(text);
      c.require(syn.hit, to_string(fault) + " on " + to_string(task) +
                             " is not syntactically valid");
      if (!syn.hit) continue;
      SemanticOutcome sem = semantic_hit(*syn.program, gold, instances);
      if (sem.hit) continue;  // not semantics-changing here, not a mutant
      ++verified_mutants;
      covered.insert(fault);

      // scoring the verified mutant must yield syntactic=1, semantic=0
      ReplayProvider provider =
          ReplayProvider::from_entries({{record.id, text}});
      EvalOptions options;
      options.runs = 1;
      options.jobs = 1;
      EvalOutcome outcome = evaluate({record}, provider, options);
      const TaskScore& score = outcome.report.per_task.at(task);
      c.require(score.syntactic == 1.0,
                to_string(fault) + " on " + to_string(task) +
                    " does not score syntactic=1");
      c.require(score.semantic == 0.0,
                to_string(fault) + " on " + to_string(task) +
                    " escaped the kill (semantic != 0)");
    }
  }
  c.require(covered.size() == kAllFaults.size(),
            "only " + std::to_string(covered.size()) +
                " of 9 fault classes produced verified mutants");
  c.require(verified_mutants >= 9, "fewer verified mutants than task classes");
  c.finish();
}

void criterion_6_reference_failure_fixtures() {
  Criterion c("criterion 6: reference failure fixtures");

  // a join over a label relation instead of a guessed assignment
  CorpusRecord assignment = fixture_record(
      TaskClass::Assignment,
      {{"predicate", "city"}, {"labels", "moscow,rome,dubai"}});
  const std::string join_for_guess =
      "assign_label(City, Label) :- city(City), label(City, Label).";
  SyntacticOutcome join_syn = syntactic_hit(join_for_guess);
  c.require(join_syn.hit, "the join-for-guess candidate must parse");
  if (join_syn.hit) {
    SemanticOutcome sem = semantic_hit(
        *join_syn.program, parse_or_die(assignment.gold_text),
        default_instances(assignment), CompareMode::Full,
        gold_head_predicates(assignment.task, assignment.bindings));
    c.require(!sem.hit, "the join-for-guess candidate must miss semantically");
  }

  // arity confusion plus a variable in predicate position
  const std::string bad_join = "owner_restaurant(X,Z):-owner(X,Y),Z(Y).";
  c.require(!syntactic_hit(bad_join).hit,
            "the malformed join output must be a syntactic miss");

  // cardinality-rule encoding, outside the supported fragment
  const std::string choice_encoding =
      "1 { assigned(X, L) : label(L) } 1 :- city(X).\n"
      ":- assigned(X1, L), assigned(X2, L), X1 != X2.";
  c.require(!syntactic_hit(choice_encoding).hit,
            "the choice-rule encoding must be a syntactic miss in the "
            "built-in fragment");

  // with an external solver configured, the choice encoding is accepted
  // syntactically but still classified as a semantic miss
  if (auto solver = external_solver_command()) {
    const auto instances = default_instances(assignment);
    ExternalResult probe = solve_external(
        *solver, choice_encoding + "\n" + render_facts(instances[0].facts));
    c.require(probe.accepted,
              "external solver rejected the choice encoding (expected accept)");
    SemanticOutcome sem = semantic_hit_external(
        *solver, choice_encoding, assignment.gold_text, instances);
    c.require(!sem.hit,
              "external backend must classify the choice encoding as a "
              "semantic miss");
    std::cout << "       (external backend verified: " << *solver << ")\n";
  }
  c.finish();
}

void criterion_7_property_suites() {
  Criterion c("criterion 7: property suites");
  Vocabulary vocab = Vocabulary::defaults().train_partition();
  SeededRng rng(123123);

  // round-trip parsing over generated gold programs
  for (TaskClass task : kAllTasks) {
    for (int i = 0; i < 50; ++i) {
      TaskInstance t = instantiate(task, vocab, rng.next());
      ParseResult back = parse_program(render(t.gold));
      c.require(back.ok() && *back.program == t.gold,
                "round-trip failure on " + to_string(task));
    }
  }

  // permutation invariance of both hits
  CorpusRecord negf = fixture_record(TaskClass::NegativeFiltering,
                                     {{"predicate_1", "vehicle"},
                                      {"predicate_2", "moto"},
                                      {"label", "kawasaki"}});
  Program gold = parse_or_die(negf.gold_text);
  const std::string permuted =
      "select(X) :- not moto(X,\"kawasaki\"), vehicle(X).";
  SyntacticOutcome syn = syntactic_hit(permuted);
  c.require(syn.hit, "permuted candidate must stay a syntactic hit");
  if (syn.hit) {
    SemanticOutcome sem =
        semantic_hit(*syn.program, gold, default_instances(negf));
    c.require(sem.hit, "permuted candidate must stay a semantic hit");
  }

  // antichain, facts-in-every-model, weak-strip invariance
  SolveOptions options;
  options.max_atoms = 20;
  for (int i = 0; i < 300; ++i) {
    GroundProgram program = random_ground_program(rng);
    SolveResult result = answer_sets(program, options);
    for (const AnswerSet& a : result.all) {
      for (const AnswerSet& b : result.all) {
        if (&a != &b) {
          c.require(!std::includes(a.atoms.begin(), a.atoms.end(),
                                   b.atoms.begin(), b.atoms.end()),
                    "answer sets are not an antichain");
        }
      }
    }
    GroundProgram stripped = program;
    stripped.rules.erase(
        std::remove_if(stripped.rules.begin(), stripped.rules.end(),
                       [](const GroundRule& r) { return r.is_weak(); }),
        stripped.rules.end());
    SolveResult no_weak = answer_sets(stripped, options);
    c.require(no_weak.all.size() == result.all.size(),
              "weak constraints changed the set of answer sets");
  }

  // facts persist in every model
  {
    GroundProgram program =
        ground(parse_or_die("p | q :- f."), parse_or_die("f. g.").rules);
    SolveResult result = answer_sets(program);
    c.require(!result.all.empty(), "fact program must be coherent");
    for (const AnswerSet& m : result.all) {
      c.require(std::binary_search(m.atoms.begin(), m.atoms.end(),
                                   Atom{"f", {}}),
                "fact f missing from an answer set");
      c.require(std::binary_search(m.atoms.begin(), m.atoms.end(),
                                   Atom{"g", {}}),
                "fact g missing from an answer set");
    }
  }

  // definite programs equal their immediate-consequence fixpoint
  {
    GroundProgram program = ground(
        parse_or_die("b :- a. c :- b. d :- c, missing."),
        parse_or_die("a.").rules);
    SolveResult result = answer_sets(program);
    c.require(result.all.size() == 1, "definite program must be deterministic");
    std::set<std::string> atoms;
    for (const Atom& a : result.all[0].atoms) atoms.insert(render(a));
    c.require(atoms == std::set<std::string>{"a", "b", "c"},
              "definite program fixpoint mismatch");
  }
  c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];
  }
  std::cout << "aspforge acceptance suite (cli: " << cli_path << ")\n";

  criterion_1_gold_self_verification();
  criterion_2_proportion_fidelity();
  criterion_3_solver_oracle_equivalence();
  criterion_4_semantics_fixtures();
  criterion_5_mutation_kill_rate();
  criterion_6_reference_failure_fixtures();
  criterion_7_property_suites();

  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failures << " acceptance criteria failed\n";
  return 1;
}
