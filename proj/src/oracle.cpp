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

#include "aspforge/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace aspforge {

namespace {

struct FlatRule {
  std::uint64_t head = 0, pos = 0, neg = 0;
  bool weak = false;
  long long weight = 0, level = 0;
  std::string tuple;
};

// M satisfies head :- pos (a positive rule) iff some head atom is in M or
// some positive body atom is not.
bool satisfies_positive(const FlatRule& r, std::uint64_t m) {
  return (r.head & m) != 0 || (r.pos & ~m) != 0;
}

}  // namespace

SolveResult answer_sets_oracle(const GroundProgram& program,
                               std::size_t max_atoms) {
  std::set<Atom> atom_set(program.atom_universe.begin(),
                          program.atom_universe.end());
  for (const GroundRule& r : program.rules) {
    for (const Atom& a : r.head) atom_set.insert(a);
    for (const Atom& a : r.pos) atom_set.insert(a);
    for (const Atom& a : r.neg) atom_set.insert(a);
  }
  std::vector<Atom> atoms(atom_set.begin(), atom_set.end());
  if (atoms.size() > max_atoms || atoms.size() > 63) {
    throw CapacityError("oracle universe of " + std::to_string(atoms.size()) +
                        " atoms exceeds its cap of " +
                        std::to_string(std::min<std::size_t>(max_atoms, 63)));
  }
  std::map<Atom, int> index;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    index.emplace(atoms[i], static_cast<int>(i));
  auto mask_of = [&index](const std::vector<Atom>& list) {
    std::uint64_t m = 0;
    for (const Atom& a : list) m |= std::uint64_t(1) << index.at(a);
    return m;
  };

  std::vector<FlatRule> strong, weak;
  for (const GroundRule& r : program.rules) {
    FlatRule f;
    f.head = mask_of(r.head);
    f.pos = mask_of(r.pos);
    f.neg = mask_of(r.neg);
    if (r.is_weak()) {
      f.weak = true;
      f.weight = r.weak->weight;
      f.level = r.weak->level;
      for (const Term& t : r.weak->tuple) {
        f.tuple += render(t);
        f.tuple += ';';
      }
      weak.push_back(f);
    } else {
      strong.push_back(f);
    }
  }

  const int n = static_cast<int>(atoms.size());
  const std::uint64_t top = std::uint64_t(1) << n;
  std::vector<std::uint64_t> stable;

  for (std::uint64_t m = 0; m < top; ++m) {
    // Gelfond-Lifschitz reduct of the strong part w.r.t. m.
    std::vector<FlatRule> reduct;
    for (const FlatRule& r : strong) {
      if ((r.neg & m) != 0) continue;
      FlatRule kept;
      kept.head = r.head;
      kept.pos = r.pos;
      reduct.push_back(kept);
    }
    bool model = true;
    for (const FlatRule& r : reduct) {
      if (!satisfies_positive(r, m)) {
        model = false;
        break;
      }
    }
    if (!model) continue;
    bool minimal = true;
    if (m != 0) {
      // every proper subset of m, via the standard submask walk
      for (std::uint64_t sub = (m - 1) & m;; sub = (sub - 1) & m) {
        bool sub_model = true;
        for (const FlatRule& r : reduct) {
          if (!satisfies_positive(r, sub)) {
            sub_model = false;
            break;
          }
        }
        if (sub_model) {
          minimal = false;
          break;
        }
        if (sub == 0) break;
      }
    }
    if (minimal) stable.push_back(m);
  }

  SolveResult result;
  for (std::uint64_t m : stable) {
    AnswerSet as;
    for (int i = 0; i < n; ++i) {
      if (m & (std::uint64_t(1) << i)) as.atoms.push_back(atoms[i]);
    }
    std::set<std::tuple<long long, long long, std::string>> violated;
    for (const FlatRule& w : weak) {
      if ((w.pos & ~m) == 0 && (w.neg & m) == 0) {
        violated.insert({w.level, w.weight, w.tuple});
      }
    }
    for (const auto& [level, wgt, key] : violated) as.cost.per_level[level] += wgt;
    for (auto it = as.cost.per_level.begin(); it != as.cost.per_level.end();) {
      it = it->second == 0 ? as.cost.per_level.erase(it) : std::next(it);
    }
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
