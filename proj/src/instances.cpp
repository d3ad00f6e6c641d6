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

#include "aspforge/instances.hpp"

#include <sstream>
#include <string>
#include <vector>

#include "aspforge/hashing.hpp"

namespace aspforge {

namespace {

Rule fact(Atom atom) {
  Rule r;
  r.head.push_back(std::move(atom));
  return r;
}

Term sym(const std::string& name) { return Term::symbol(name); }

std::string get(const Bindings& b, const std::string& key) {
  auto it = b.find(key);
  if (it == b.end()) {
    throw std::invalid_argument("record bindings lack '" + key + "'");
  }
  return it->second;
}

long long get_int(const Bindings& b, const std::string& key) {
  return std::stoll(get(b, key));
}

std::vector<std::string> split_list(const std::string& joined) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(joined);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

FactInstance assignment_instance(const CorpusRecord& record, std::size_t k,
                                 SeededRng& rng) {
  const std::string pred = get(record.bindings, "predicate");
  std::size_t elements = k == 0 ? 2 : (k == 1 ? 3 : 2 + rng.below(2));
  FactInstance out;
  for (std::size_t i = 1; i <= elements; ++i) {
    out.facts.push_back(fact({pred, {sym("c" + std::to_string(i))}}));
  }
  out.descriptor = std::to_string(elements) + " elements to label";
  return out;
}

FactInstance constraint_instance(const CorpusRecord& record, std::size_t k) {
  const Term value = Term::integer(get_int(record.bindings, "value"));
  const std::string label = get(record.bindings, "label");
  FactInstance out;
  if (k % 2 == 0) {
    out.facts.push_back(fact({"assign", {value, Term::string(label)}}));
    out.descriptor = "forbidden assignment present; expect incoherence";
  } else {
    out.facts.push_back(fact({"assign", {value, Term::string("c1")}}));
    out.descriptor = "forbidden assignment absent; expect coherence";
  }
  return out;
}

FactInstance combination_instance(const CorpusRecord& record, std::size_t k) {
  const std::string p1 = get(record.bindings, "predicate_1");
  const std::string p2 = get(record.bindings, "predicate_2");
  FactInstance out;
  const std::size_t left = k % 2 == 0 ? 2 : 3;
  for (std::size_t i = 1; i <= left; ++i) {
    out.facts.push_back(fact({p1, {sym("c" + std::to_string(i))}}));
  }
  for (std::size_t i = 1; i <= 2; ++i) {
    out.facts.push_back(fact({p2, {sym("e" + std::to_string(i))}}));
  }
  out.descriptor = std::to_string(left) + "x2 cross product";
  return out;
}

FactInstance join_instance(const CorpusRecord& record, std::size_t k) {
  const std::string p1 = get(record.bindings, "predicate_1");
  const std::string p2 = get(record.bindings, "predicate_2");
  const std::vector<std::string> fields1 =
      split_list(get(record.bindings, "fields_1"));
  const std::vector<std::string> fields2 =
      split_list(get(record.bindings, "fields_2"));
  const std::string key_field = p2 + "ID";
  std::size_t key_pos = 0;
  for (std::size_t i = 0; i < fields1.size(); ++i) {
    if (fields1[i] == key_field) key_pos = i + 1;
  }

  int filler = 0;
  auto p1_row = [&](const std::string& id, const std::string& key) {
    Atom row{p1, {}};
    for (std::size_t i = 1; i <= fields1.size(); ++i) {
      if (i == 1) row.terms.push_back(sym(id));
      else if (i == key_pos) row.terms.push_back(sym(key));
      else row.terms.push_back(sym("c" + std::to_string(10 + ++filler)));
    }
    return fact(std::move(row));
  };
  auto p2_row = [&](const std::string& key) {
    Atom row{p2, {}};
    for (std::size_t i = 1; i <= fields2.size(); ++i) {
      if (i == 1) row.terms.push_back(sym(key));
      else row.terms.push_back(sym("c" + std::to_string(10 + ++filler)));
    }
    return fact(std::move(row));
  };

  FactInstance out;
  out.facts.push_back(p1_row("c1", "e1"));     // joins with the e1 row below
  out.facts.push_back(p1_row("c2", "e2"));     // no matching right-hand row
  if (k % 2 == 1) out.facts.push_back(p1_row("c3", "e1"));
  out.facts.push_back(p2_row("e1"));
  out.facts.push_back(p2_row("e3"));           // no matching left-hand row
  out.descriptor = "joinable and non-joinable rows";
  return out;
}

FactInstance closure_instance(const CorpusRecord& record, std::size_t k) {
  const std::string base = get(record.bindings, "predicate_2");
  FactInstance out;
  const std::size_t chain = k % 2 == 0 ? 3 : 4;
  for (std::size_t i = 1; i + 1 <= chain; ++i) {
    out.facts.push_back(fact({base,
                              {sym("c" + std::to_string(i)),
                               sym("c" + std::to_string(i + 1))}}));
  }
  out.facts.push_back(fact({base,
                            {sym("c" + std::to_string(chain + 1)),
                             sym("c" + std::to_string(chain + 2))}}));
  out.descriptor = std::to_string(chain) +
                   "-node chain plus a disconnected edge; indirect pairs "
                   "derivable only transitively";
  return out;
}

FactInstance preference_instance(const CorpusRecord& record, std::size_t k) {
  const Term value = Term::integer(get_int(record.bindings, "value"));
  const std::string label = get(record.bindings, "label");
  FactInstance out;
  if (k % 2 == 0) {
    out.facts.push_back(fact({"assign", {value, Term::string(label)}}));
    out.descriptor = "penalized assignment present; cost is paid";
  } else {
    out.facts.push_back(fact({"assign", {value, Term::string("c1")}}));
    out.descriptor = "penalized assignment absent; zero cost";
  }
  return out;
}

FactInstance value_filtering_instance(const CorpusRecord& record,
                                      std::size_t k) {
  const std::string pred = get(record.bindings, "predicate");
  const std::string label = get(record.bindings, "label");
  FactInstance out;
  out.facts.push_back(fact({pred, {sym("e1"), Term::string(label)}}));
  out.facts.push_back(fact({pred, {sym("e2"), Term::string("c1")}}));
  if (k % 2 == 1) {
    out.facts.push_back(fact({pred, {sym("e3"), Term::string(label)}}));
  }
  out.descriptor = "rows matching and not matching the label";
  return out;
}

FactInstance negative_filtering_instance(const CorpusRecord& record,
                                         std::size_t k) {
  const std::string p1 = get(record.bindings, "predicate_1");
  const std::string p2 = get(record.bindings, "predicate_2");
  const std::string label = get(record.bindings, "label");
  FactInstance out;
  out.facts.push_back(fact({p1, {sym("e1")}}));
  out.facts.push_back(fact({p1, {sym("e2")}}));
  out.facts.push_back(fact({p2, {sym("e1"), Term::string(label)}}));
  if (k % 2 == 1) {
    // present in the negated predicate, but under a different label
    out.facts.push_back(fact({p2, {sym("e2"), Term::string("c1")}}));
  }
  out.descriptor = "elements present and absent in the negated predicate";
  return out;
}

FactInstance numeric_filtering_instance(const CorpusRecord& record,
                                        std::size_t k) {
  const std::string pred = get(record.bindings, "predicate");
  const long long value = get_int(record.bindings, "value");
  const long long below = k % 2 == 0 ? 1 : 2;
  const long long above = k % 2 == 0 ? 2 : 1;
  FactInstance out;
  out.facts.push_back(fact({pred, {sym("e1"), Term::integer(value - below)}}));
  out.facts.push_back(fact({pred, {sym("e2"), Term::integer(value)}}));
  out.facts.push_back(fact({pred, {sym("e3"), Term::integer(value + above)}}));
  out.descriptor = "values below, at and above the threshold";
  return out;
}

}  // namespace

std::vector<FactInstance> make_instances(const CorpusRecord& record,
                                         std::uint64_t seed,
                                         std::size_t count) {
  SeededRng rng(combine_seeds({fnv1a64(record.id), seed}));
  std::vector<FactInstance> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    switch (record.task) {
      case TaskClass::Assignment:
        out.push_back(assignment_instance(record, k, rng));
        break;
      case TaskClass::Constraint:
        out.push_back(constraint_instance(record, k));
        break;
      case TaskClass::Combination:
        out.push_back(combination_instance(record, k));
        break;
      case TaskClass::Join:
        out.push_back(join_instance(record, k));
        break;
      case TaskClass::TransitiveClosure:
        out.push_back(closure_instance(record, k));
        break;
      case TaskClass::Preference:
        out.push_back(preference_instance(record, k));
        break;
      case TaskClass::ValueFiltering:
        out.push_back(value_filtering_instance(record, k));
        break;
      case TaskClass::NegativeFiltering:
        out.push_back(negative_filtering_instance(record, k));
        break;
      case TaskClass::NumericFiltering:
        out.push_back(numeric_filtering_instance(record, k));
        break;
    }
  }
  return out;
}

std::vector<FactInstance> default_instances(const CorpusRecord& record) {
  return make_instances(record, record.seed, 2);
}

std::string render_facts(const std::vector<Rule>& facts) {
  std::string out;
  for (const Rule& f : facts) {
    out += render(f);
    out += '\n';
  }
  return out;
}

}  // namespace aspforge
