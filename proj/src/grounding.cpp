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

#include "aspforge/grounding.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace aspforge {

namespace {

template <typename T>
int compare_vectors(const std::vector<T>& a, const std::vector<T>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() < b.size()) return -1;
  if (a.size() > b.size()) return 1;
  return 0;
}

void collect_constants(const Term& t, std::set<Term>& out) {
  if (t.is_constant()) out.insert(t);
}

void collect_constants(const Rule& r, std::set<Term>& out) {
  for (const Atom& a : r.head) {
    for (const Term& t : a.terms) collect_constants(t, out);
  }
  for (const Literal& l : r.body) {
    if (l.kind == Literal::Kind::Comparison) {
      collect_constants(l.lhs, out);
      collect_constants(l.rhs, out);
    } else {
      for (const Term& t : l.atom.terms) collect_constants(t, out);
    }
  }
  if (r.weak) {
    for (const Term& t : r.weak->tuple) collect_constants(t, out);
  }
}

// Rewrites each anonymous occurrence into a fresh variable. Parsed variable
// names start with an uppercase letter, so "_N" can never capture.
Rule rename_anonymous(const Rule& rule) {
  Rule out = rule;
  int counter = 0;
  auto fix = [&counter](Term& t) {
    if (t.kind == TermKind::Anonymous) {
      t = Term::variable("_" + std::to_string(++counter));
    }
  };
  for (Atom& a : out.head) {
    for (Term& t : a.terms) fix(t);
  }
  for (Literal& l : out.body) {
    if (l.kind == Literal::Kind::Comparison) {
      fix(l.lhs);
      fix(l.rhs);
    } else {
      for (Term& t : l.atom.terms) fix(t);
    }
  }
  if (out.weak) {
    for (Term& t : out.weak->tuple) fix(t);
  }
  return out;
}

std::vector<std::string> variables_in_order(const Rule& rule) {
  std::vector<std::string> vars;
  std::set<std::string> seen;
  auto add = [&](const Term& t) {
    if (t.kind == TermKind::Variable && seen.insert(t.text).second)
      vars.push_back(t.text);
  };
  for (const Atom& a : rule.head) {
    for (const Term& t : a.terms) add(t);
  }
  for (const Literal& l : rule.body) {
    if (l.kind == Literal::Kind::Comparison) {
      add(l.lhs);
      add(l.rhs);
    } else {
      for (const Term& t : l.atom.terms) add(t);
    }
  }
  if (rule.weak) {
    for (const Term& t : rule.weak->tuple) add(t);
  }
  return vars;
}

using Binding = std::map<std::string, Term>;

Term substitute(const Term& t, const Binding& binding) {
  if (t.kind == TermKind::Variable) {
    auto it = binding.find(t.text);
    if (it != binding.end()) return it->second;
  }
  return t;
}

Atom substitute(const Atom& a, const Binding& binding) {
  Atom out;
  out.predicate = a.predicate;
  out.terms.reserve(a.terms.size());
  for (const Term& t : a.terms) out.terms.push_back(substitute(t, binding));
  return out;
}

// Builds the ground rule for one substitution; nullopt when a comparison
// evaluates to false.
std::optional<GroundRule> instantiate(const Rule& rule, const Binding& binding) {
  GroundRule out;
  for (const Atom& a : rule.head) out.head.push_back(substitute(a, binding));
  for (const Literal& l : rule.body) {
    switch (l.kind) {
      case Literal::Kind::Positive:
        out.pos.push_back(substitute(l.atom, binding));
        break;
      case Literal::Kind::Negated:
        out.neg.push_back(substitute(l.atom, binding));
        break;
      case Literal::Kind::Comparison: {
        Term lhs = substitute(l.lhs, binding);
        Term rhs = substitute(l.rhs, binding);
        if (!eval_comparison(lhs, l.op, rhs)) return std::nullopt;
        break;
      }
    }
  }
  if (rule.weak) {
    WeakAnnotation weak = *rule.weak;
    for (Term& t : weak.tuple) t = substitute(t, binding);
    out.weak = std::move(weak);
  }
  return out;
}

struct AtomIndex {
  std::map<std::pair<std::string, std::size_t>, std::vector<Atom>> by_signature;
  std::set<Atom> members;

  bool insert(const Atom& a) {
    if (!members.insert(a).second) return false;
    by_signature[{a.predicate, a.arity()}].push_back(a);
    return true;
  }

  const std::vector<Atom>* lookup(const Atom& pattern) const {
    auto it = by_signature.find({pattern.predicate, pattern.arity()});
    return it == by_signature.end() ? nullptr : &it->second;
  }
};

bool unify(const Atom& pattern, const Atom& ground, Binding& binding,
           std::vector<std::string>& bound_here) {
  for (std::size_t i = 0; i < pattern.terms.size(); ++i) {
    const Term& p = pattern.terms[i];
    const Term& g = ground.terms[i];
    if (p.kind == TermKind::Variable) {
      auto it = binding.find(p.text);
      if (it == binding.end()) {
        binding.emplace(p.text, g);
        bound_here.push_back(p.text);
      } else if (!(it->second == g)) {
        return false;
      }
    } else if (!(p == g)) {
      return false;
    }
  }
  return true;
}

class Grounder {
 public:
  Grounder(const Program& program, const std::vector<Rule>& facts,
           const GroundOptions& options)
      : options_(options) {
    for (const Rule& r : facts) {
      if (!r.is_fact() || !is_ground(r)) {
        throw std::invalid_argument(
            "instance facts must be ground rules with a head and no body");
      }
    }
    for (const Rule& r : program.rules) {
      if (auto err = check_safety(r)) {
        throw std::invalid_argument("cannot ground unsafe rule (variable " +
                                    err->variable + "): " + render(r));
      }
    }
    universe_ = herbrand_universe(program, facts);
    for (const Rule& r : program.rules) rules_.push_back(rename_anonymous(r));
    facts_ = facts;
    work_limit_ = options_.max_rules * 50;
  }

  GroundProgram run() {
    for (const Rule& f : facts_) {
      GroundRule g;
      g.head = f.head;
      emit(std::move(g));
    }
    if (options_.mode == GroundMode::Pruned) {
      compute_possible();
      for (const Rule& r : rules_) {
        match_positive(r, [this, &r](Binding& binding) {
          complete_free_vars(r, binding, [this, &r](const Binding& full) {
            if (auto g = instantiate(r, full)) emit(std::move(*g));
          });
        });
      }
    } else {
      for (const Rule& r : rules_) enumerate_naive(r);
    }

    GroundProgram out;
    out.rules.assign(result_.begin(), result_.end());
    std::set<Atom> atoms;
    for (const GroundRule& g : out.rules) {
      for (const Atom& a : g.head) atoms.insert(a);
      for (const Atom& a : g.pos) atoms.insert(a);
      for (const Atom& a : g.neg) atoms.insert(a);
    }
    out.atom_universe.assign(atoms.begin(), atoms.end());
    return out;
  }

 private:
  void emit(GroundRule g) {
    if (result_.size() >= options_.max_rules) {
      throw CapacityError("ground rule count exceeds cap of " +
                          std::to_string(options_.max_rules));
    }
    result_.insert(std::move(g));
  }

  void spend_work() {
    if (++work_ > work_limit_) {
      throw CapacityError("grounding work exceeds limit; instantiation "
                          "appears to be running away");
    }
  }

  // Least fixpoint of the comparison-aware, negation-blind one-step
  // operator; every atom true in some stable model is in this set. New
  // atoms are collected per pass and inserted afterwards: the match
  // enumeration iterates the index's candidate vectors, which must not
  // grow mid-pass.
  void compute_possible() {
    for (const Rule& f : facts_) {
      for (const Atom& a : f.head) possible_.insert(a);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Atom> discovered;
      for (const Rule& r : rules_) {
        if (r.head.empty()) continue;
        match_positive(r, [this, &r, &discovered](Binding& binding) {
          complete_free_vars(r, binding,
                             [this, &r, &discovered](const Binding& full) {
            auto g = instantiate(r, full);
            if (!g) return;
            for (const Atom& a : g->head) {
              if (!possible_.members.count(a)) discovered.push_back(a);
            }
          });
        });
      }
      for (const Atom& a : discovered) {
        if (possible_.insert(a)) changed = true;
      }
    }
  }

  // Enumerates bindings that match every positive body atom against the
  // possible-atom set.
  template <typename Fn>
  void match_positive(const Rule& rule, Fn&& fn) {
    std::vector<const Atom*> pos;
    for (const Literal& l : rule.body) {
      if (l.kind == Literal::Kind::Positive) pos.push_back(&l.atom);
    }
    Binding binding;
    match_rec(pos, 0, binding, fn);
  }

  template <typename Fn>
  void match_rec(const std::vector<const Atom*>& pos, std::size_t i,
                 Binding& binding, Fn&& fn) {
    spend_work();
    if (i == pos.size()) {
      fn(binding);
      return;
    }
    const std::vector<Atom>* candidates = possible_.lookup(*pos[i]);
    if (candidates == nullptr) return;
    for (const Atom& ground : *candidates) {
      spend_work();
      std::vector<std::string> bound_here;
      if (unify(*pos[i], ground, binding, bound_here)) {
        match_rec(pos, i + 1, binding, fn);
      }
      for (const std::string& v : bound_here) binding.erase(v);
    }
  }

  // Variables not bound by any positive body atom (anonymous occurrences in
  // heads or negated atoms) range over the whole universe.
  template <typename Fn>
  void complete_free_vars(const Rule& rule, Binding& binding, Fn&& fn) {
    std::vector<std::string> free;
    for (const std::string& v : variables_in_order(rule)) {
      if (!binding.count(v)) free.push_back(v);
    }
    complete_rec(free, 0, binding, fn);
  }

  template <typename Fn>
  void complete_rec(const std::vector<std::string>& free, std::size_t i,
                    Binding& binding, Fn&& fn) {
    spend_work();
    if (i == free.size()) {
      fn(binding);
      return;
    }
    for (const Term& c : universe_) {
      binding[free[i]] = c;
      complete_rec(free, i + 1, binding, fn);
    }
    binding.erase(free[i]);
  }

  void enumerate_naive(const Rule& rule) {
    const std::vector<std::string> vars = variables_in_order(rule);
    double product = 1.0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      product *= static_cast<double>(universe_.size());
      if (product > static_cast<double>(options_.max_rules)) {
        throw CapacityError(
            "naive grounding would enumerate more than " +
            std::to_string(options_.max_rules) + " substitutions");
      }
    }
    Binding binding;
    naive_rec(rule, vars, 0, binding);
  }

  void naive_rec(const Rule& rule, const std::vector<std::string>& vars,
                 std::size_t i, Binding& binding) {
    spend_work();
    if (i == vars.size()) {
      if (auto g = instantiate(rule, binding)) emit(std::move(*g));
      return;
    }
    for (const Term& c : universe_) {
      binding[vars[i]] = c;
      naive_rec(rule, vars, i + 1, binding);
    }
    binding.erase(vars[i]);
  }

  GroundOptions options_;
  std::vector<Term> universe_;
  std::vector<Rule> rules_;
  std::vector<Rule> facts_;
  AtomIndex possible_;
  std::set<GroundRule> result_;
  std::size_t work_ = 0;
  std::size_t work_limit_ = 0;
};

}  // namespace

int compare(const GroundRule& a, const GroundRule& b) {
  if (a.is_weak() != b.is_weak()) return a.is_weak() ? 1 : -1;
  if (int c = compare_vectors(a.head, b.head); c != 0) return c;
  if (int c = compare_vectors(a.pos, b.pos); c != 0) return c;
  if (int c = compare_vectors(a.neg, b.neg); c != 0) return c;
  if (a.is_weak()) return compare(*a.weak, *b.weak);
  return 0;
}

bool operator==(const GroundRule& a, const GroundRule& b) {
  return compare(a, b) == 0;
}

std::vector<Term> herbrand_universe(const Program& program,
                                    const std::vector<Rule>& facts) {
  std::set<Term> constants;
  for (const Rule& r : program.rules) collect_constants(r, constants);
  for (const Rule& r : facts) collect_constants(r, constants);
  return {constants.begin(), constants.end()};
}

bool eval_comparison(const Term& lhs, CmpOp op, const Term& rhs) {
  switch (op) {
    case CmpOp::Eq:
      return compare(lhs, rhs) == 0;
    case CmpOp::Ne:
      return compare(lhs, rhs) != 0;
    default:
      break;
  }
  if (lhs.kind != TermKind::Integer || rhs.kind != TermKind::Integer)
    return false;
  switch (op) {
    case CmpOp::Lt: return lhs.number < rhs.number;
    case CmpOp::Le: return lhs.number <= rhs.number;
    case CmpOp::Gt: return lhs.number > rhs.number;
    case CmpOp::Ge: return lhs.number >= rhs.number;
    default: return false;
  }
}

GroundProgram ground(const Program& program, const std::vector<Rule>& facts,
                     const GroundOptions& options) {
  return Grounder(program, facts, options).run();
}

Rule to_rule(const GroundRule& g) {
  Rule out;
  out.head = g.head;
  for (const Atom& a : g.pos) out.body.push_back(Literal::positive(a));
  for (const Atom& a : g.neg) out.body.push_back(Literal::negated(a));
  out.weak = g.weak;
  return out;
}

std::string render(const GroundProgram& program) {
  std::string out;
  for (const GroundRule& g : program.rules) {
    out += render(to_rule(g));
    out += '\n';
  }
  return out;
}

}  // namespace aspforge
