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

#include "aspforge/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "aspforge/external_solver.hpp"
#include "aspforge/hashing.hpp"

namespace aspforge {

namespace {

using nlohmann::json;

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  lines.push_back(current);
  return lines;
}

bool is_fence_line(const std::string& line) {
  std::size_t i = line.find_first_not_of(" \t");
  return i != std::string::npos && line.compare(i, 3, "```") == 0;
}

// Longest contiguous block of lines that parses to a nonempty program;
// fence lines are blanked first. Used only under --lenient.
std::optional<Program> extract_rules(std::string_view text) {
  std::vector<std::string> lines = split_lines(text);
  for (std::string& line : lines) {
    if (is_fence_line(line)) line.clear();
  }
  const std::size_t n = lines.size();
  for (std::size_t len = n; len >= 1; --len) {
    for (std::size_t start = 0; start + len <= n; ++start) {
      std::string chunk;
      for (std::size_t i = start; i < start + len; ++i) {
        chunk += lines[i];
        chunk += '\n';
      }
      ParseResult parsed = parse_program(chunk);
      if (parsed.ok() && !parsed.program->rules.empty()) {
        return std::move(parsed.program);
      }
    }
  }
  return std::nullopt;
}

std::set<std::string> fact_predicates(const FactInstance& instance) {
  std::set<std::string> preds;
  for (const Rule& f : instance.facts) {
    for (const Atom& a : f.head) preds.insert(a.predicate);
  }
  return preds;
}

std::vector<Atom> project(const std::vector<Atom>& atoms,
                          const std::set<std::string>& preds) {
  std::vector<Atom> out;
  for (const Atom& a : atoms) {
    if (preds.count(a.predicate)) out.push_back(a);
  }
  return out;
}

std::string atoms_key(const std::vector<Atom>& atoms) {
  std::string key;
  for (const Atom& a : atoms) {
    key += render(a);
    key += ' ';
  }
  return key;
}

// Canonical views of a SolveResult under one comparison mode.
struct ResultView {
  std::vector<std::string> all_sets;       // full: multiset; projected: set
  std::vector<std::string> optimal_costs;  // full mode
  std::vector<std::string> optimal_pairs;  // projected mode: set + cost
};

ResultView view_of(const SolveResult& result, CompareMode mode,
                   const std::set<std::string>& projection) {
  ResultView view;
  if (mode == CompareMode::Full) {
    for (const AnswerSet& m : result.all) view.all_sets.push_back(atoms_key(m.atoms));
    for (const AnswerSet& m : result.optimal) {
      view.optimal_costs.push_back(m.cost.to_string());
    }
  } else {
    std::set<std::string> sets, pairs;
    for (const AnswerSet& m : result.all) {
      sets.insert(atoms_key(project(m.atoms, projection)));
    }
    for (const AnswerSet& m : result.optimal) {
      pairs.insert(atoms_key(project(m.atoms, projection)) + "| " +
                   m.cost.to_string());
    }
    view.all_sets.assign(sets.begin(), sets.end());
    view.optimal_pairs.assign(pairs.begin(), pairs.end());
  }
  std::sort(view.all_sets.begin(), view.all_sets.end());
  std::sort(view.optimal_costs.begin(), view.optimal_costs.end());
  return view;
}

std::optional<std::string> mismatch_of(const ResultView& candidate,
                                       const ResultView& gold) {
  if (candidate.all_sets != gold.all_sets) {
    return "answer sets differ (" + std::to_string(candidate.all_sets.size()) +
           " vs " + std::to_string(gold.all_sets.size()) + ")";
  }
  if (candidate.optimal_costs != gold.optimal_costs) {
    return "optimal cost vectors differ";
  }
  if (candidate.optimal_pairs != gold.optimal_pairs) {
    return "optimal answer sets differ";
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(FailureStage stage) {
  switch (stage) {
    case FailureStage::None: return "none";
    case FailureStage::Parse: return "parse";
    case FailureStage::Safety: return "safety";
    case FailureStage::Ground: return "ground";
    case FailureStage::Solve: return "solve";
    case FailureStage::Mismatch: return "mismatch";
  }
  return "none";
}

std::string hit_to_json(const HitRecord& hit) {
  json j;
  j["record_id"] = hit.record_id;
  j["run"] = hit.run_index;
  j["syntactic"] = hit.syntactic;
  j["semantic"] = hit.semantic;
  j["failure_stage"] = to_string(hit.failure_stage);
  j["detail"] = hit.detail;
  return j.dump();
}

std::string to_string(CompareMode mode) {
  return mode == CompareMode::Full ? "full" : "projected";
}

CompareMode parse_compare_mode(const std::string& name) {
  if (name == "full") return CompareMode::Full;
  if (name == "projected") return CompareMode::Projected;
  throw std::invalid_argument("unknown comparison mode: " + name);
}

SyntacticOutcome syntactic_hit(std::string_view text, bool lenient_extract) {
  SyntacticOutcome out;
  ParseResult parsed = parse_program(text);
  if (!parsed.ok()) {
    if (lenient_extract) {
      if (auto extracted = extract_rules(text)) {
        parsed.program = std::move(extracted);
        parsed.error.reset();
      }
    }
    if (!parsed.ok()) {
      out.stage = FailureStage::Parse;
      out.detail = parsed.error->to_string();
      return out;
    }
  }
  if (parsed.program->rules.empty()) {
    out.stage = FailureStage::Parse;
    out.detail = "no rules";
    return out;
  }
  if (auto err = check_safety(*parsed.program)) {
    out.stage = FailureStage::Safety;
    out.detail = "unsafe variable " + err->variable;
    return out;
  }
  out.hit = true;
  out.program = std::move(parsed.program);
  return out;
}

SemanticOutcome semantic_hit(const Program& candidate, const Program& gold,
                             const std::vector<FactInstance>& instances,
                             CompareMode mode,
                             const std::set<std::string>& gold_preds,
                             const GroundOptions& ground_options,
                             const SolveOptions& solve_options) {
  SemanticOutcome out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const FactInstance& instance = instances[i];
    std::set<std::string> projection = gold_preds;
    for (const std::string& p : fact_predicates(instance)) projection.insert(p);

    SolveResult gold_result = answer_sets(
        ground(gold, instance.facts, ground_options), solve_options);

    SolveResult candidate_result;
    try {
      candidate_result = answer_sets(
          ground(candidate, instance.facts, ground_options), solve_options);
    } catch (const CapacityError& e) {
      out.stage = FailureStage::Solve;
      out.detail = "instance " + std::to_string(i) + ": " + e.what();
      return out;
    } catch (const std::invalid_argument& e) {
      out.stage = FailureStage::Ground;
      out.detail = "instance " + std::to_string(i) + ": " + e.what();
      return out;
    }

    auto mismatch = mismatch_of(view_of(candidate_result, mode, projection),
                                view_of(gold_result, mode, projection));
    if (mismatch) {
      out.stage = FailureStage::Mismatch;
      out.detail = "instance " + std::to_string(i) + " (" +
                   instance.descriptor + "): " + *mismatch;
      return out;
    }
  }
  out.hit = true;
  return out;
}

SemanticOutcome semantic_hit_external(
    const std::string& solver_command, const std::string& candidate_text,
    const std::string& gold_text, const std::vector<FactInstance>& instances,
    CompareMode mode, const std::set<std::string>& gold_preds) {
  SemanticOutcome out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const FactInstance& instance = instances[i];
    std::set<std::string> projection = gold_preds;
    for (const std::string& p : fact_predicates(instance)) projection.insert(p);
    const std::string facts_text = render_facts(instance.facts);

    ExternalResult gold_result =
        solve_external(solver_command, gold_text + "\n" + facts_text);
    if (!gold_result.accepted) {
      throw std::runtime_error("external solver rejected the gold program");
    }
    ExternalResult candidate_result =
        solve_external(solver_command, candidate_text + "\n" + facts_text);
    if (!candidate_result.accepted) {
      out.stage = FailureStage::Solve;
      out.detail = "instance " + std::to_string(i) +
                   ": external solver rejected the candidate (exit " +
                   std::to_string(candidate_result.exit_code) + ")";
      return out;
    }
    auto mismatch =
        mismatch_of(view_of(candidate_result.result, mode, projection),
                    view_of(gold_result.result, mode, projection));
    if (mismatch) {
      out.stage = FailureStage::Mismatch;
      out.detail = "instance " + std::to_string(i) + ": " + *mismatch;
      return out;
    }
  }
  out.hit = true;
  return out;
}

namespace {

struct ScoredCandidate {
  bool syntactic = false;
  bool semantic = false;
  FailureStage stage = FailureStage::None;
  std::string detail;
};

ScoredCandidate score_candidate(const std::string& text,
                                const CorpusRecord& record,
                                const Program& gold,
                                const std::vector<FactInstance>& instances,
                                const std::set<std::string>& gold_preds,
                                const EvalOptions& options) {
  ScoredCandidate score;
  SyntacticOutcome syn = syntactic_hit(text, options.lenient_extract);

  if (!options.solver_command.empty()) {
    bool accepted = syn.hit;
    if (!accepted) {
      // the external solver may accept constructs outside the fragment
      ExternalResult probe = solve_external(
          options.solver_command,
          text + "\n" + render_facts(instances.front().facts));
      accepted = probe.accepted;
    }
    if (!accepted) {
      score.stage = syn.stage;
      score.detail = syn.detail;
      return score;
    }
    score.syntactic = true;
    SemanticOutcome sem =
        semantic_hit_external(options.solver_command, text, record.gold_text,
                              instances, options.mode, gold_preds);
    score.semantic = sem.hit;
    score.stage = sem.stage;
    score.detail = sem.detail;
    return score;
  }

  if (!syn.hit) {
    score.stage = syn.stage;
    score.detail = syn.detail;
    return score;
  }
  score.syntactic = true;
  SemanticOutcome sem =
      semantic_hit(*syn.program, gold, instances, options.mode, gold_preds,
                   options.ground, options.solve);
  score.semantic = sem.hit;
  score.stage = sem.stage;
  score.detail = sem.detail;
  return score;
}

}  // namespace

EvalOutcome evaluate(const std::vector<CorpusRecord>& records,
                     Provider& provider, const EvalOptions& options) {
  const int runs = std::max(1, options.runs);
  std::vector<std::vector<HitRecord>> per_record(records.size());

  int jobs = options.jobs;
  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
  }

  std::atomic<std::size_t> cursor{0};
  std::vector<std::exception_ptr> worker_errors(static_cast<std::size_t>(jobs));
  auto work = [&](int worker) {
    try {
      for (std::size_t idx = cursor.fetch_add(1); idx < records.size();
           idx = cursor.fetch_add(1)) {
        const CorpusRecord& record = records[idx];
        const std::vector<FactInstance> instances = default_instances(record);
        ParseResult gold_parse = parse_program(record.gold_text);
        if (!gold_parse.ok()) {
          throw std::runtime_error("record " + record.id +
                                   " carries an unparseable gold program");
        }
        const Program gold = std::move(*gold_parse.program);
        const std::set<std::string> gold_preds =
            gold_head_predicates(record.task, record.bindings);

        std::map<std::string, ScoredCandidate> memo;
        for (int run = 0; run < runs; ++run) {
          HitRecord hit;
          hit.record_id = record.id;
          hit.run_index = run;
          const std::uint64_t run_seed = combine_seeds(
              {options.seed, fnv1a64(record.id), static_cast<std::uint64_t>(run)});
          Provider::Response response = provider.generate(record, run_seed);
          if (!response.text) {
            hit.failure_stage = FailureStage::Parse;
            hit.detail = "provider error: " + response.error;
          } else {
            auto it = memo.find(*response.text);
            if (it == memo.end()) {
              it = memo.emplace(*response.text,
                                score_candidate(*response.text, record, gold,
                                                instances, gold_preds, options))
                       .first;
            }
            hit.syntactic = it->second.syntactic;
            hit.semantic = it->second.semantic;
            hit.failure_stage = it->second.stage;
            hit.detail = it->second.detail;
          }
          per_record[idx].push_back(std::move(hit));
        }
      }
    } catch (...) {
      worker_errors[static_cast<std::size_t>(worker)] = std::current_exception();
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& err : worker_errors) {
    if (err) std::rethrow_exception(err);
  }

  EvalOutcome outcome;
  struct Tally {
    std::size_t syn = 0, sem = 0, attempts = 0;
  };
  std::map<TaskClass, Tally> tallies;
  for (std::size_t idx = 0; idx < records.size(); ++idx) {
    Tally& tally = tallies[records[idx].task];
    for (HitRecord& hit : per_record[idx]) {
      tally.attempts++;
      tally.syn += hit.syntactic ? 1 : 0;
      tally.sem += hit.semantic ? 1 : 0;
      outcome.hits.push_back(std::move(hit));
    }
  }
  std::sort(outcome.hits.begin(), outcome.hits.end(),
            [](const HitRecord& a, const HitRecord& b) {
              if (a.record_id != b.record_id) return a.record_id < b.record_id;
              return a.run_index < b.run_index;
            });

  outcome.report.runs = runs;
  outcome.report.provider = provider.descriptor();
  outcome.report.mode = to_string(options.mode);
  double syn_sum = 0.0, sem_sum = 0.0;
  for (const auto& [task, tally] : tallies) {
    TaskScore score;
    score.attempts = tally.attempts;
    score.syntactic = tally.attempts == 0
                          ? 0.0
                          : static_cast<double>(tally.syn) /
                                static_cast<double>(tally.attempts);
    score.semantic = tally.attempts == 0
                         ? 0.0
                         : static_cast<double>(tally.sem) /
                               static_cast<double>(tally.attempts);
    outcome.report.per_task[task] = score;
    syn_sum += score.syntactic;
    sem_sum += score.semantic;
  }
  const double rows = static_cast<double>(tallies.size());
  outcome.report.overall_syntactic = rows == 0 ? 0.0 : syn_sum / rows;
  outcome.report.overall_semantic = rows == 0 ? 0.0 : sem_sum / rows;
  return outcome;
}

// ---------------------------------------------------------------------------
// Report rendering

ReportFormat parse_report_format(const std::string& name) {
  if (name == "table") return ReportFormat::Table;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format: " + name);
}

namespace {

std::string fixed2(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string fixed4(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", v);
  return buffer;
}

}  // namespace

std::string render_report(const EvalReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table: {
      std::ostringstream out;
      out << "Problem              Syntactic  Semantic\n";
      for (TaskClass t : kAllTasks) {
        auto it = report.per_task.find(t);
        if (it == report.per_task.end()) continue;
        std::string name = display_name(t);
        name.resize(21, ' ');
        out << name << fixed2(it->second.syntactic) << "       "
            << fixed2(it->second.semantic) << "\n";
      }
      std::string total = "Total (avg)";
      total.resize(21, ' ');
      out << total << fixed2(report.overall_syntactic) << "       "
          << fixed2(report.overall_semantic) << "\n";
      out << "runs=" << report.runs << " provider=" << report.provider
          << " mode=" << report.mode << "\n";
      return out.str();
    }
    case ReportFormat::Csv: {
      std::string out = "task,syntactic,semantic\n";
      for (TaskClass t : kAllTasks) {
        auto it = report.per_task.find(t);
        if (it == report.per_task.end()) continue;
        out += display_name(t) + "," + fixed4(it->second.syntactic) + "," +
               fixed4(it->second.semantic) + "\n";
      }
      out += "Total," + fixed4(report.overall_syntactic) + "," +
             fixed4(report.overall_semantic) + "\n";
      return out;
    }
    case ReportFormat::Json: {
      json j;
      j["schema"] = "aspforge-report/1";
      j["provider"] = report.provider;
      j["mode"] = report.mode;
      j["runs"] = report.runs;
      json per_task = json::object();
      for (const auto& [task, score] : report.per_task) {
        per_task[to_string(task)] = {{"syntactic", score.syntactic},
                                     {"semantic", score.semantic},
                                     {"attempts", score.attempts}};
      }
      j["per_task"] = per_task;
      j["overall"] = {{"syntactic", report.overall_syntactic},
                      {"semantic", report.overall_semantic}};
      return j.dump(2) + "\n";
    }
  }
  return "";
}

EvalReport load_report_json(const std::string& json_text) {
  json j = json::parse(json_text);
  if (j.value("schema", "") != "aspforge-report/1") {
    throw VersionError("unknown report schema: " + j.value("schema", "<missing>"));
  }
  EvalReport report;
  report.provider = j.at("provider").get<std::string>();
  report.mode = j.at("mode").get<std::string>();
  report.runs = j.at("runs").get<int>();
  for (const auto& [name, score] : j.at("per_task").items()) {
    TaskScore s;
    s.syntactic = score.at("syntactic").get<double>();
    s.semantic = score.at("semantic").get<double>();
    s.attempts = score.value("attempts", std::size_t{0});
    report.per_task[parse_task_class(name)] = s;
  }
  report.overall_syntactic = j.at("overall").at("syntactic").get<double>();
  report.overall_semantic = j.at("overall").at("semantic").get<double>();
  return report;
}

}  // namespace aspforge
