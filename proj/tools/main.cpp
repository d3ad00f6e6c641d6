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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
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

namespace {

using namespace aspforge;

constexpr const char* kVersion =
    "aspforge 1.0.0 (corpus schema aspforge-corpus/1, manifest schema "
    "aspforge-manifest/1, report schema aspforge-report/1)";

struct BackendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + path);
    out << contents;
  }
  std::filesystem::rename(tmp, path);
}

// Every run logs its effective configuration, so results can be reproduced
// from the log alone.
void log_config(const std::string& subcommand, const nlohmann::json& config) {
  nlohmann::json line = config;
  line["subcommand"] = subcommand;
  std::cerr << "config: " << line.dump() << "\n";
}

Program parse_or_fail(const std::string& text, const std::string& origin) {
  ParseResult parsed = parse_program(text);
  if (!parsed.ok()) {
    throw DataError(origin + ":" + parsed.error->to_string());
  }
  return std::move(*parsed.program);
}

std::vector<Rule> load_facts(const std::string& path) {
  if (path.empty()) return {};
  Program program = parse_or_fail(read_file(path), path);
  for (const Rule& r : program.rules) {
    if (!r.is_fact() || !is_ground(r)) {
      throw DataError(path + ": facts file must contain ground facts only");
    }
  }
  return program.rules;
}

Vocabulary resolve_vocabulary(const std::string& vocab_path,
                              const std::string& partition) {
  Vocabulary base =
      vocab_path.empty() ? Vocabulary::defaults() : Vocabulary::load(vocab_path);
  if (partition == "train") return base.train_partition();
  if (partition == "test") return base.test_partition();
  return base;
}

GroundOptions ground_options(const std::string& mode, std::size_t cap) {
  GroundOptions options;
  options.mode = mode == "naive" ? GroundMode::Naive : GroundMode::Pruned;
  options.max_rules = cap;
  return options;
}

int run(int argc, char** argv) {
  CLI::App app{"NL->ASP benchmark corpus generator and verification harness"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // parse
  std::string parse_file, parse_out;
  CLI::App* cmd_parse =
      app.add_subcommand("parse", "Parse a program and print its canonical form");
  cmd_parse->add_option("file", parse_file, "program file")->required();
  cmd_parse->add_option("--out", parse_out, "output file (default stdout)");

  // ground
  std::string ground_file, ground_facts, ground_mode = "pruned", ground_out;
  std::size_t ground_cap = 1'000'000;
  CLI::App* cmd_ground =
      app.add_subcommand("ground", "Ground a program over its Herbrand universe");
  cmd_ground->add_option("file", ground_file, "program file")->required();
  cmd_ground->add_option("--facts", ground_facts, "ground facts file");
  cmd_ground->add_option("--mode", ground_mode, "naive|pruned")
      ->check(CLI::IsMember({"naive", "pruned"}));
  cmd_ground->add_option("--cap", ground_cap, "ground rule cap");
  cmd_ground->add_option("--out", ground_out, "output file (default stdout)");

  // solve
  std::string solve_file, solve_facts, solve_mode = "pruned", solve_out;
  std::size_t solve_max_atoms = 24;
  bool solve_oracle = false;
  CLI::App* cmd_solve =
      app.add_subcommand("solve", "Print all answer sets and the optimal cost");
  cmd_solve->add_option("file", solve_file, "program file")->required();
  cmd_solve->add_option("--facts", solve_facts, "ground facts file");
  cmd_solve->add_option("--mode", solve_mode, "grounding mode: naive|pruned")
      ->check(CLI::IsMember({"naive", "pruned"}));
  cmd_solve->add_option("--max-atoms", solve_max_atoms, "enumerator atom cap");
  cmd_solve->add_flag("--oracle", solve_oracle,
                      "use the brute-force reference enumerator");
  cmd_solve->add_option("--out", solve_out, "output file (default stdout)");

  // gen-dataset
  std::size_t gen_total = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_vocab, gen_out, gen_partition = "train";
  double gen_ratio = 0.8;
  bool gen_uniform = false;
  int gen_jobs = 0;
  CLI::App* cmd_gen =
      app.add_subcommand("gen-dataset", "Generate the benchmark corpus");
  cmd_gen->add_option("--total", gen_total, "number of records")->required();
  cmd_gen->add_option("--seed", gen_seed, "master seed")->required();
  cmd_gen->add_option("--vocab", gen_vocab, "vocabulary file (default built-in)");
  cmd_gen->add_option("--out", gen_out, "output directory")->required();
  cmd_gen->add_option("--ratio", gen_ratio, "train fraction of the split");
  cmd_gen->add_flag("--uniform", gen_uniform,
                    "uniform proportions instead of the dataset table");
  cmd_gen->add_option("--partition", gen_partition,
                      "vocabulary partition: train|test|full")
      ->check(CLI::IsMember({"train", "test", "full"}));
  cmd_gen->add_option("--jobs", gen_jobs, "worker threads (0 = cores)");

  // gen-testset
  std::size_t test_per_task = 0;
  std::uint64_t test_seed = 0;
  std::string test_vocab, test_out;
  int test_jobs = 0;
  CLI::App* cmd_test =
      app.add_subcommand("gen-testset", "Generate the evenly distributed test set");
  cmd_test->add_option("--per-task", test_per_task, "records per class")
      ->required();
  cmd_test->add_option("--seed", test_seed, "master seed")->required();
  cmd_test->add_option("--vocab", test_vocab, "vocabulary file (default built-in)");
  cmd_test->add_option("--out", test_out, "output directory")->required();
  cmd_test->add_option("--jobs", test_jobs, "worker threads (0 = cores)");

  // instances
  std::string inst_corpus, inst_out, inst_id;
  std::size_t inst_count = 2;
  CLI::App* cmd_inst = app.add_subcommand(
      "instances", "Emit the fact instances used for semantic comparison");
  cmd_inst->add_option("--corpus", inst_corpus, "corpus directory")->required();
  cmd_inst->add_option("--out", inst_out, "output directory");
  cmd_inst->add_option("--id", inst_id, "only this record id");
  cmd_inst->add_option("--count", inst_count, "instances per record");

  // eval
  std::string eval_corpus, eval_provider, eval_replay, eval_config;
  std::string eval_mode = "full", eval_report = "table", eval_out, eval_hits;
  std::string eval_split = "all", eval_solver_cmd, eval_ground_mode = "pruned";
  int eval_runs = 1, eval_jobs = 0;
  std::uint64_t eval_seed = 0;
  bool eval_lenient = false;
  CLI::App* cmd_eval =
      app.add_subcommand("eval", "Score a provider against a corpus");
  cmd_eval->add_option("--corpus", eval_corpus, "corpus directory")->required();
  cmd_eval->add_option("--provider", eval_provider,
                       "gold-echo | mutant[:fault] | replay | http")
      ->required();
  cmd_eval->add_option("--replay", eval_replay, "replay file for --provider replay");
  cmd_eval->add_option("--provider-config", eval_config,
                       "config file for --provider http");
  cmd_eval->add_option("--runs", eval_runs, "repetitions per record");
  cmd_eval->add_option("--mode", eval_mode, "full|projected")
      ->check(CLI::IsMember({"full", "projected"}));
  cmd_eval->add_option("--report", eval_report, "table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cmd_eval->add_option("--out", eval_out, "report output file");
  cmd_eval->add_option("--hits", eval_hits, "per-run hit records (JSON lines)");
  cmd_eval->add_option("--seed", eval_seed, "run seed");
  cmd_eval->add_option("--jobs", eval_jobs, "worker threads (0 = cores)");
  cmd_eval->add_flag("--lenient", eval_lenient,
                     "salvage rules from prose or fenced output");
  cmd_eval->add_option("--split", eval_split,
                       "train|validation|test|all records")
      ->check(CLI::IsMember({"train", "validation", "test", "all"}));
  std::size_t eval_max_atoms = 24;
  cmd_eval->add_option("--ground-mode", eval_ground_mode, "naive|pruned")
      ->check(CLI::IsMember({"naive", "pruned"}));
  cmd_eval->add_option("--max-atoms", eval_max_atoms,
                       "enumerator atom cap per grounded instance");
  cmd_eval->add_option(
      "--solver-cmd", eval_solver_cmd,
      "external solver command (default: $ASPFORGE_SOLVER if set)");

  // report
  std::string report_in, report_format = "table", report_out;
  CLI::App* cmd_report =
      app.add_subcommand("report", "Re-render a saved JSON report");
  cmd_report->add_option("--in", report_in, "report JSON file")->required();
  cmd_report->add_option("--format", report_format, "table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cmd_report->add_option("--out", report_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (cmd_parse->parsed()) {
    log_config("parse", {{"file", parse_file}, {"out", parse_out}});
    Program program = parse_or_fail(read_file(parse_file), parse_file);
    write_output(parse_out, render(program));
    return 0;
  }

  if (cmd_ground->parsed()) {
    log_config("ground", {{"file", ground_file},
                          {"facts", ground_facts},
                          {"mode", ground_mode},
                          {"cap", ground_cap},
                          {"out", ground_out}});
    Program program = parse_or_fail(read_file(ground_file), ground_file);
    if (auto err = check_safety(program)) {
      throw DataError(ground_file + ": unsafe variable " + err->variable);
    }
    GroundProgram grounded = ground(program, load_facts(ground_facts),
                                    ground_options(ground_mode, ground_cap));
    write_output(ground_out, render(grounded));
    return 0;
  }

  if (cmd_solve->parsed()) {
    log_config("solve", {{"file", solve_file},
                         {"facts", solve_facts},
                         {"mode", solve_mode},
                         {"max_atoms", solve_max_atoms},
                         {"oracle", solve_oracle},
                         {"out", solve_out}});
    Program program = parse_or_fail(read_file(solve_file), solve_file);
    if (auto err = check_safety(program)) {
      throw DataError(solve_file + ": unsafe variable " + err->variable);
    }
    GroundProgram grounded = ground(program, load_facts(solve_facts),
                                    ground_options(solve_mode, 1'000'000));
    SolveOptions options;
    options.max_atoms = solve_max_atoms;
    SolveResult result = solve_oracle ? answer_sets_oracle(grounded, solve_max_atoms)
                                      : answer_sets(grounded, options);
    std::string out;
    if (result.all.empty()) {
      out = "UNSATISFIABLE\n";
    } else {
      for (const AnswerSet& model : result.all) {
        for (std::size_t i = 0; i < model.atoms.size(); ++i) {
          if (i > 0) out += ' ';
          out += render(model.atoms[i]);
        }
        out += '\n';
      }
    }
    bool has_weak = false;
    for (const GroundRule& r : grounded.rules) has_weak = has_weak || r.is_weak();
    if (has_weak && !result.optimal.empty()) {
      out += "Optimal cost: " + result.optimal.front().cost.to_string() + "\n";
      for (const AnswerSet& model : result.optimal) {
        out += "Optimal:";
        for (const Atom& a : model.atoms) out += " " + render(a);
        out += '\n';
      }
    }
    write_output(solve_out, out);
    return 0;
  }

  if (cmd_gen->parsed()) {
    log_config("gen-dataset",
               {{"total", gen_total},
                {"seed", gen_seed},
                {"vocab", gen_vocab.empty() ? "<built-in>" : gen_vocab},
                {"partition", gen_partition},
                {"out", gen_out},
                {"ratio", gen_ratio},
                {"uniform", gen_uniform},
                {"jobs", gen_jobs}});
    Vocabulary vocab = resolve_vocabulary(gen_vocab, gen_partition);
    BuildResult corpus = build_corpus(
        gen_total, gen_uniform ? uniform_proportions() : table_proportions(),
        vocab, gen_seed, gen_jobs);
    split_corpus(corpus.records, gen_ratio);
    save_corpus(corpus, gen_out);
    std::cout << "wrote " << corpus.records.size() << " records to " << gen_out
              << "\n";
    return 0;
  }

  if (cmd_test->parsed()) {
    log_config("gen-testset",
               {{"per_task", test_per_task},
                {"seed", test_seed},
                {"vocab", test_vocab.empty() ? "<built-in>" : test_vocab},
                {"out", test_out},
                {"jobs", test_jobs}});
    Vocabulary vocab = resolve_vocabulary(test_vocab, "test");
    BuildResult corpus =
        build_test_corpus(test_per_task, vocab, test_seed, test_jobs);
    save_corpus(corpus, test_out);
    std::cout << "wrote " << corpus.records.size() << " records to " << test_out
              << "\n";
    return 0;
  }

  if (cmd_inst->parsed()) {
    log_config("instances", {{"corpus", inst_corpus},
                             {"out", inst_out},
                             {"id", inst_id},
                             {"count", inst_count}});
    LoadedCorpus corpus = load_corpus(inst_corpus);
    if (inst_out.empty() && inst_id.empty()) {
      throw DataError("instances: need --out DIR or --id ID");
    }
    if (!inst_out.empty()) std::filesystem::create_directories(inst_out);
    std::size_t written = 0;
    for (const CorpusRecord& record : corpus.records) {
      if (!inst_id.empty() && record.id != inst_id) continue;
      std::vector<FactInstance> instances =
          make_instances(record, record.seed, inst_count);
      for (std::size_t k = 0; k < instances.size(); ++k) {
        std::string text = "% " + instances[k].descriptor + "\n" +
                           render_facts(instances[k].facts);
        if (inst_out.empty()) {
          std::cout << "% record " << record.id << " instance " << k << "\n"
                    << text;
        } else {
          write_output((std::filesystem::path(inst_out) /
                        (record.id + "." + std::to_string(k) + ".lp"))
                           .string(),
                       text);
        }
        ++written;
      }
    }
    if (written == 0) throw DataError("instances: no matching records");
    if (!inst_out.empty()) {
      std::cout << "wrote " << written << " instance files to " << inst_out
                << "\n";
    }
    return 0;
  }

  if (cmd_eval->parsed()) {
    log_config("eval", {{"corpus", eval_corpus},
                        {"provider", eval_provider},
                        {"runs", eval_runs},
                        {"mode", eval_mode},
                        {"report", eval_report},
                        {"seed", eval_seed},
                        {"jobs", eval_jobs},
                        {"lenient", eval_lenient},
                        {"split", eval_split},
                        {"ground_mode", eval_ground_mode},
                        {"solver_cmd", eval_solver_cmd}});
    LoadedCorpus corpus = load_corpus(eval_corpus);
    std::vector<CorpusRecord> records;
    for (CorpusRecord& r : corpus.records) {
      if (eval_split == "all" || r.split == eval_split) {
        records.push_back(std::move(r));
      }
    }
    if (records.empty()) throw DataError("eval: no records selected");

    std::unique_ptr<Provider> provider;
    try {
      provider = make_provider(eval_provider, eval_replay, eval_config);
    } catch (const std::exception& e) {
      throw BackendError(std::string("provider setup failed: ") + e.what());
    }

    EvalOptions options;
    options.mode = parse_compare_mode(eval_mode);
    options.lenient_extract = eval_lenient;
    options.runs = eval_runs;
    options.seed = eval_seed;
    options.jobs = eval_jobs;
    options.ground = ground_options(eval_ground_mode, 1'000'000);
    options.solve.max_atoms = eval_max_atoms;
    if (!eval_solver_cmd.empty()) {
      options.solver_command = eval_solver_cmd;
    } else if (auto env_cmd = external_solver_command()) {
      options.solver_command = *env_cmd;
    }
    if (!options.solver_command.empty()) {
      ExternalResult probe = solve_external(options.solver_command, "p.\n");
      if (!probe.accepted) {
        throw BackendError("external solver '" + options.solver_command +
                           "' failed the probe (exit " +
                           std::to_string(probe.exit_code) + ")");
      }
    }

    EvalOutcome outcome = evaluate(records, *provider, options);
    const std::string rendered =
        render_report(outcome.report, parse_report_format(eval_report));
    if (eval_out.empty()) {
      std::cout << rendered;
    } else {
      write_output(eval_out, rendered);
      std::cout << "wrote report to " << eval_out << "\n";
    }
    if (!eval_hits.empty()) {
      std::string lines;
      for (const HitRecord& hit : outcome.hits) {
        lines += hit_to_json(hit);
        lines += '\n';
      }
      write_output(eval_hits, lines);
    }
    return 0;
  }

  if (cmd_report->parsed()) {
    log_config("report", {{"in", report_in},
                          {"format", report_format},
                          {"out", report_out}});
    EvalReport report = load_report_json(read_file(report_in));
    write_output(report_out,
                 render_report(report, parse_report_format(report_format)));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BackendError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const VocabularyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ProportionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const VersionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IntegrityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
