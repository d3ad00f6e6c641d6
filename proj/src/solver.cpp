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

#include "aspforge/solver.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>

namespace aspforge {

int CostVector::compare(const CostVector& a, const CostVector& b) {
  auto ia = a.per_level.rbegin();
  auto ib = b.per_level.rbegin();
  while (ia != a.per_level.rend() || ib != b.per_level.rend()) {
    long long level_a = ia != a.per_level.rend() ? ia->first
                                                 : std::numeric_limits<long long>::min();
    long long level_b = ib != b.per_level.rend() ? ib->first
                                                 : std::numeric_limits<long long>::min();
    if (level_a > level_b) {
      // a carries weight at a level where b has none
      if (ia->second != 0) return ia->second > 0 ? 1 : -1;
      ++ia;
      continue;
    }
    if (level_b > level_a) {
      if (ib->second != 0) return ib->second > 0 ? -1 : 1;
      ++ib;
      continue;
    }
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    ++ia;
    ++ib;
  }
  return 0;
}

bool operator==(const CostVector& a, const CostVector& b) {
  return CostVector::compare(a, b) == 0;
}

std::string CostVector::to_string() const {
  if (per_level.empty()) return "0";
  std::string out;
  for (auto it = per_level.rbegin(); it != per_level.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += std::to_string(it->second) + "@" + std::to_string(it->first);
  }
  return out;
}

namespace {

using Mask = std::uint64_t;

struct MaskRule {
  Mask head = 0, pos = 0, neg = 0;
};

struct WeakMaskRule {
  Mask pos = 0, neg = 0;
  long long weight = 0, level = 0;
  std::string tuple_key;
};

struct AtomTable {
  std::vector<Atom> atoms;  // sorted
  std::map<Atom, int> index;

  explicit AtomTable(const std::vector<Atom>& universe) {
    atoms = universe;
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    for (std::size_t i = 0; i < atoms.size(); ++i)
      index.emplace(atoms[i], static_cast<int>(i));
  }

  Mask mask_of(const std::vector<Atom>& list) const {
    Mask m = 0;
    for (const Atom& a : list) m |= Mask(1) << index.at(a);
    return m;
  }
};

// Exhaustive model search over subsets of `space`, with unit propagation.
// Invokes fn on every model; fn returns false to stop the search early.
class ModelSearch {
 public:
  ModelSearch(const std::vector<MaskRule>& rules, Mask space)
      : rules_(rules), space_(space) {}

  template <typename Fn>
  bool for_each_model(Mask forced_true, Mask forced_false, Fn&& fn) {
    return dfs(forced_true, forced_false | ~space_, fn);
  }

 private:
  template <typename Fn>
  bool dfs(Mask t, Mask f, Fn&& fn) {
    // propagate to fixpoint
    bool changed = true;
    while (changed) {
      changed = false;
      for (const MaskRule& r : rules_) {
        if ((r.head & t) || (r.pos & f) || (r.neg & t)) continue;  // satisfied
        Mask undec = ~t & ~f;
        Mask hu = r.head & undec, pu = r.pos & undec, nu = r.neg & undec;
        int open = std::popcount(hu) + std::popcount(pu) + std::popcount(nu);
        if (open == 0) return true;  // conflict: rule unsatisfiable
        if (open == 1) {
          if (hu) t |= hu;
          else if (pu) f |= pu;
          else t |= nu;
          changed = true;
        }
      }
    }
    Mask undec = space_ & ~t & ~f;
    if (undec == 0) return fn(t & space_);
    Mask bit = undec & (~undec + 1);  // lowest undecided atom
    if (!dfs(t, f | bit, fn)) return false;
    return dfs(t | bit, f, fn);
  }

  const std::vector<MaskRule>& rules_;
  Mask space_;
};

// Clause view of the reduct restricted to atoms of a model M: satisfied by
// M' ⊆ M iff some positive body atom is outside M' or some head atom inside
// M is in M'. Used to search for a proper submodel.
struct ReductClause {
  Mask head_in = 0;  // head & M
  Mask pos = 0;      // positive body, subset of M
};

class SubmodelSearch {
 public:
  SubmodelSearch(const std::vector<ReductClause>& clauses, Mask model)
      : clauses_(clauses), model_(model) {}

  // True iff some proper subset of the model satisfies every clause.
  bool exists_proper_submodel() {
    Mask rest = model_;
    while (rest) {
      Mask bit = rest & (~rest + 1);
      rest &= rest - 1;
      if (sat(0, (~model_) | bit)) return true;
    }
    return false;
  }

 private:
  bool sat(Mask t, Mask f) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const ReductClause& c : clauses_) {
        if ((c.head_in & t) || (c.pos & f)) continue;
        Mask undec = ~t & ~f;
        Mask hu = c.head_in & undec, pu = c.pos & undec;
        int open = std::popcount(hu) + std::popcount(pu);
        if (open == 0) return false;
        if (open == 1) {
          if (hu) t |= hu;
          else f |= pu;
          changed = true;
        }
      }
    }
    Mask undec = model_ & ~t & ~f;
    if (undec == 0) return true;
    Mask bit = undec & (~undec + 1);
    // keeping the atom first finds the near-copy submodels quickly
    if (sat(t | bit, f)) return true;
    return sat(t, f | bit);
  }

  const std::vector<ReductClause>& clauses_;
  Mask model_;
};

std::string tuple_key(const WeakAnnotation& weak) {
  std::string key;
  for (const Term& t : weak.tuple) {
    key += render(t);
    key += '\x1f';
  }
  return key;
}

CostVector cost_of_model(Mask model, const std::vector<WeakMaskRule>& weak) {
  std::set<std::tuple<long long, long long, std::string>> violated;
  for (const WeakMaskRule& w : weak) {
    if ((w.pos & ~model) == 0 && (w.neg & model) == 0) {
      violated.insert({w.level, w.weight, w.tuple_key});
    }
  }
  CostVector cost;
  for (const auto& [level, weight, key] : violated) cost.per_level[level] += weight;
  for (auto it = cost.per_level.begin(); it != cost.per_level.end();) {
    it = it->second == 0 ? cost.per_level.erase(it) : std::next(it);
  }
  return cost;
}

// Over-approximation of the atoms derivable in any answer set: the least
// fixpoint that fires every rule whose positive body is covered, ignoring
// negation and crediting every head atom. Answer sets are minimal models of
// their reduct, hence contained in this set; forcing the rest false up front
// keeps the model enumeration from wandering through unsupported atoms.
Mask derivable_mask(const std::vector<MaskRule>& rules) {
  Mask derivable = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const MaskRule& r : rules) {
      if (r.head == 0) continue;
      if ((r.pos & ~derivable) != 0) continue;
      if ((r.head & ~derivable) != 0) {
        derivable |= r.head;
        changed = true;
      }
    }
  }
  return derivable;
}

bool is_stable(Mask model, const std::vector<MaskRule>& strong) {
  // reduct w.r.t. the model, restricted to clauses a submodel could violate
  std::vector<ReductClause> clauses;
  for (const MaskRule& r : strong) {
    if (r.neg & model) continue;       // deleted by the reduct
    if (r.pos & ~model) continue;      // body false under any subset
    clauses.push_back({r.head & model, r.pos});
  }
  return !SubmodelSearch(clauses, model).exists_proper_submodel();
}

}  // namespace

GroundProgram reduct(const GroundProgram& program,
                     const std::vector<Atom>& candidate) {
  std::set<Atom> in(candidate.begin(), candidate.end());
  GroundProgram out;
  out.atom_universe = program.atom_universe;
  for (const GroundRule& r : program.rules) {
    if (r.is_weak()) continue;
    bool deleted = std::any_of(r.neg.begin(), r.neg.end(),
                               [&in](const Atom& a) { return in.count(a) > 0; });
    if (deleted) continue;
    GroundRule kept;
    kept.head = r.head;
    kept.pos = r.pos;
    out.rules.push_back(std::move(kept));
  }
  return out;
}

bool is_minimal_model(const GroundProgram& positive_program,
                      const std::vector<Atom>& candidate) {
  std::set<Atom> atoms(positive_program.atom_universe.begin(),
                       positive_program.atom_universe.end());
  for (const GroundRule& r : positive_program.rules) {
    for (const Atom& a : r.head) atoms.insert(a);
    for (const Atom& a : r.pos) atoms.insert(a);
  }
  for (const Atom& a : candidate) atoms.insert(a);
  AtomTable table({atoms.begin(), atoms.end()});
  if (table.atoms.size() > 63) {
    throw CapacityError("minimal-model check supports at most 63 atoms");
  }

  Mask model = table.mask_of(candidate);
  std::vector<MaskRule> rules;
  for (const GroundRule& r : positive_program.rules) {
    if (r.is_weak()) continue;
    rules.push_back({table.mask_of(r.head), table.mask_of(r.pos), 0});
  }
  for (const MaskRule& r : rules) {
    bool satisfied = (r.head & model) != 0 || (r.pos & ~model) != 0;
    if (!satisfied) return false;
  }
  return is_stable(model, rules);
}

SolveResult answer_sets(const GroundProgram& program,
                        const SolveOptions& options) {
  std::vector<Atom> universe = program.atom_universe;
  for (const GroundRule& r : program.rules) {
    universe.insert(universe.end(), r.head.begin(), r.head.end());
    universe.insert(universe.end(), r.pos.begin(), r.pos.end());
    universe.insert(universe.end(), r.neg.begin(), r.neg.end());
  }
  AtomTable table(universe);
  const std::size_t cap = std::min<std::size_t>(options.max_atoms, 63);
  if (table.atoms.size() > cap) {
    throw CapacityError("atom universe of " + std::to_string(table.atoms.size()) +
                        " exceeds the enumerator cap of " + std::to_string(cap));
  }
  const int n = static_cast<int>(table.atoms.size());

  std::vector<MaskRule> strong;
  std::vector<WeakMaskRule> weak;
  for (const GroundRule& r : program.rules) {
    if (r.is_weak()) {
      weak.push_back({table.mask_of(r.pos), table.mask_of(r.neg),
                      r.weak->weight, r.weak->level, tuple_key(*r.weak)});
    } else {
      strong.push_back(
          {table.mask_of(r.head), table.mask_of(r.pos), table.mask_of(r.neg)});
    }
  }

  const Mask space = n == 64 ? ~Mask(0) : (Mask(1) << n) - 1;
  const Mask never = space & ~derivable_mask(strong);

  std::vector<Mask> stable_masks;
  ModelSearch search(strong, space);
  bool completed = search.for_each_model(0, never, [&](Mask model) {
    if (is_stable(model, strong)) {
      stable_masks.push_back(model);
      if (stable_masks.size() > options.max_models) return false;
    }
    return true;
  });
  if (!completed) {
    throw CapacityError("answer set count exceeds cap of " +
                        std::to_string(options.max_models));
  }

  std::sort(stable_masks.begin(), stable_masks.end());
  SolveResult result;
  for (Mask m : stable_masks) {
    AnswerSet as;
    for (int i = 0; i < n; ++i) {
      if (m & (Mask(1) << i)) as.atoms.push_back(table.atoms[i]);
    }
    as.cost = cost_of_model(m, weak);
    result.all.push_back(std::move(as));
  }
  if (!result.all.empty()) {
    const CostVector* best = &result.all.front().cost;
    for (const AnswerSet& as : result.all) {
      if (CostVector::compare(as.cost, *best) < 0) best = &as.cost;
    }
    for (const AnswerSet& as : result.all) {
      if (as.cost == *best) result.optimal.push_back(as);
    }
  }
  return result;
}

}  // namespace aspforge
