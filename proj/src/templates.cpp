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

#include "aspforge/templates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "aspforge/hashing.hpp"

namespace aspforge {

std::string to_string(TaskClass task) {
  switch (task) {
    case TaskClass::Assignment: return "assignment";
    case TaskClass::Constraint: return "constraint";
    case TaskClass::Combination: return "combination";
    case TaskClass::Join: return "join";
    case TaskClass::TransitiveClosure: return "transitive_closure";
    case TaskClass::Preference: return "preference";
    case TaskClass::ValueFiltering: return "value_filtering";
    case TaskClass::NegativeFiltering: return "negative_filtering";
    case TaskClass::NumericFiltering: return "numeric_filtering";
  }
  return "unknown";
}

std::string display_name(TaskClass task) {
  switch (task) {
    case TaskClass::Assignment: return "Assignment";
    case TaskClass::Constraint: return "Constraint";
    case TaskClass::Combination: return "Combination";
    case TaskClass::Join: return "Join";
    case TaskClass::TransitiveClosure: return "Transitive closure";
    case TaskClass::Preference: return "Preference";
    case TaskClass::ValueFiltering: return "Value filtering";
    case TaskClass::NegativeFiltering: return "Negative filtering";
    case TaskClass::NumericFiltering: return "Numeric filtering";
  }
  return "Unknown";
}

TaskClass parse_task_class(const std::string& name) {
  for (TaskClass t : kAllTasks) {
    if (to_string(t) == name) return t;
  }
  throw std::invalid_argument("unknown task class: " + name);
}

// ---------------------------------------------------------------------------
// Vocabulary

namespace {

const char* const kDefaultPredicates[] = {
    "city",     "airport",  "car",      "owner",    "restaurant", "flight",
    "house",    "color",    "vehicle",  "moto",     "size",       "person",
    "student",  "course",   "book",     "author",   "movie",      "actor",
    "team",     "player",   "hotel",    "guest",    "road",       "bridge",
    "port",     "train",    "station",  "product",  "order",      "customer",
    "employee", "company",  "device",   "sensor",   "node",       "task",
    "worker",   "machine",  "tool",     "animal",   "plant",      "river",
    "mountain", "island",   "street",   "building", "room",       "door",
    "window",   "school",   "teacher",  "doctor",   "patient",    "store",
    "item",     "shelf",    "box",      "truck",    "garden",     "market",
};

const char* const kDefaultLabels[] = {
    "moscow",  "rome",    "dubai",   "red",      "flat",     "purple",
    "kawasaki", "paris",  "london",  "berlin",   "madrid",   "tokyo",
    "blue",    "green",   "yellow",  "orange",   "black",    "white",
    "pink",    "brown",   "small",   "medium",   "large",    "tiny",
    "huge",    "cold",    "warm",    "hot",      "fast",     "slow",
    "ducati",  "yamaha",  "honda",   "suzuki",   "north",    "south",
    "east",    "west",    "spring",  "summer",   "autumn",   "winter",
    "gold",    "silver",  "bronze",  "copper",   "iron",     "steel",
    "wood",    "glass",   "stone",   "brick",    "sand",     "clay",
    "round",   "square",  "oval",    "narrow",   "wide",     "deep",
    "shallow", "bright",  "dark",    "light",    "heavy",    "soft",
    "hard",    "smooth",  "rough",   "clean",    "dirty",    "fresh",
    "dry",     "wet",     "open",    "closed",   "full",     "empty",
    "early",   "late",
};

const char* const kDefaultFields[] = {
    "surname",  "name",     "description", "address",  "phone",
    "email",    "code",     "category",    "status",   "level",
    "rank",     "score",    "title",       "genre",    "brand",
    "model",    "year",     "price",       "weight",   "height",
    "quantity", "capacity", "duration",    "distance", "region",
    "country",  "currency", "language",    "format",   "version",
};

bool valid_symbol_name(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool valid_list_item(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c != '"' && c != ',' && c != '\n' && c != '\r';
  });
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> head_slice(const std::vector<std::string>& v,
                                    std::size_t n) {
  return {v.begin(), v.begin() + static_cast<long>(n)};
}

std::vector<std::string> tail_slice(const std::vector<std::string>& v,
                                    std::size_t n) {
  return {v.begin() + static_cast<long>(n), v.end()};
}

}  // namespace

Vocabulary Vocabulary::defaults() {
  Vocabulary v;
  v.predicates.assign(std::begin(kDefaultPredicates),
                      std::end(kDefaultPredicates));
  v.labels.assign(std::begin(kDefaultLabels), std::end(kDefaultLabels));
  v.fields.assign(std::begin(kDefaultFields), std::end(kDefaultFields));
  v.value_min = 0;
  v.value_max = 50;
  return v;
}

Vocabulary Vocabulary::parse(const std::string& text) {
  Vocabulary v;
  v.predicates.clear();
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      if (section != "predicates" && section != "labels" &&
          section != "fields" && section != "values") {
        throw VocabularyError("line " + std::to_string(line_no) +
                              ": unknown section [" + section + "]");
      }
      continue;
    }
    if (section.empty()) {
      throw VocabularyError("line " + std::to_string(line_no) +
                            ": item before any section header");
    }
    if (section == "values") {
      std::size_t eq = line.find('=');
      if (eq == std::string::npos) {
        throw VocabularyError("line " + std::to_string(line_no) +
                              ": expected 'min = N' or 'max = N'");
      }
      std::string key = trim(line.substr(0, eq));
      std::string val = trim(line.substr(eq + 1));
      try {
        if (key == "min") v.value_min = std::stoll(val);
        else if (key == "max") v.value_max = std::stoll(val);
        else throw VocabularyError("line " + std::to_string(line_no) +
                                   ": unknown value key '" + key + "'");
      } catch (const VocabularyError&) {
        throw;
      } catch (const std::exception&) {
        throw VocabularyError("line " + std::to_string(line_no) +
                              ": '" + val + "' is not an integer");
      }
      continue;
    }
    if (section == "predicates") {
      if (!valid_symbol_name(line)) {
        throw VocabularyError("line " + std::to_string(line_no) + ": '" + line +
                              "' is not a valid predicate name");
      }
      v.predicates.push_back(line);
    } else if (section == "labels") {
      if (!valid_list_item(line)) {
        throw VocabularyError("line " + std::to_string(line_no) + ": '" + line +
                              "' is not a valid label");
      }
      v.labels.push_back(line);
    } else {
      if (!valid_list_item(line)) {
        throw VocabularyError("line " + std::to_string(line_no) + ": '" + line +
                              "' is not a valid field name");
      }
      v.fields.push_back(line);
    }
  }
  if (v.value_max < v.value_min) {
    throw VocabularyError("value range is empty (max < min)");
  }
  auto check_distinct = [](const std::vector<std::string>& items,
                           const char* what) {
    std::set<std::string> seen(items.begin(), items.end());
    if (seen.size() != items.size()) {
      throw VocabularyError(std::string("duplicate entries in ") + what);
    }
  };
  check_distinct(v.predicates, "[predicates]");
  check_distinct(v.labels, "[labels]");
  check_distinct(v.fields, "[fields]");
  return v;
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw VocabularyError("cannot open vocabulary file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

Vocabulary Vocabulary::train_partition(double train_fraction) const {
  Vocabulary v = *this;
  v.predicates = head_slice(predicates,
                            static_cast<std::size_t>(std::llround(
                                train_fraction * predicates.size())));
  v.labels = head_slice(labels, static_cast<std::size_t>(std::llround(
                                    train_fraction * labels.size())));
  v.fields = head_slice(fields, static_cast<std::size_t>(std::llround(
                                    train_fraction * fields.size())));
  v.partition = "train";
  return v;
}

Vocabulary Vocabulary::test_partition(double train_fraction) const {
  Vocabulary v = *this;
  v.predicates = tail_slice(predicates,
                            static_cast<std::size_t>(std::llround(
                                train_fraction * predicates.size())));
  v.labels = tail_slice(labels, static_cast<std::size_t>(std::llround(
                                    train_fraction * labels.size())));
  v.fields = tail_slice(fields, static_cast<std::size_t>(std::llround(
                                    train_fraction * fields.size())));
  v.partition = "test";
  return v;
}

std::string Vocabulary::canonical_text() const {
  std::string out = "[predicates]\n";
  for (const std::string& p : predicates) out += p + "\n";
  out += "[labels]\n";
  for (const std::string& l : labels) out += l + "\n";
  out += "[fields]\n";
  for (const std::string& f : fields) out += f + "\n";
  out += "[values]\nmin = " + std::to_string(value_min) +
         "\nmax = " + std::to_string(value_max) + "\n";
  return out;
}

std::string Vocabulary::checksum() const {
  return to_hex(fnv1a64(canonical_text()));
}

// ---------------------------------------------------------------------------
// Templates

namespace {

const std::string kTemplates[] = {
    // Assignment
    "Write an ASP program for the following problem. Assign exactly a label "
    "among a given set of labels to a set of elements. The set of elements "
    "is expressed by predicate [PREDICATE]. The labels are [LABELS].",
    // Constraint
    "Write an ASP program for the following problem. Prevent the predicate "
    "[PREDICATE] with value [VALUE] from having label \"[LABEL]\".",
    // Combination
    "Write an ASP program for the following problem. Generate all the "
    "combinations of elements from two sets. The two sets are represented "
    "by predicates [PREDICATE_1] and [PREDICATE_2].",
    // Join
    "Write an ASP program for the following problem. Consider predicate "
    "\"[PREDICATE_1]\" having fields [FIELDS_1], and the predicate "
    "\"[PREDICATE_2]\" having fields [FIELDS_2]. Define a predicate "
    "\"[PREDICATE_1]_[PREDICATE_2]\" that associates to each [PREDICATE_1] "
    "the [FIELD] of [PREDICATE_2].",
    // TransitiveClosure
    "Write an ASP program for the following problem. Define predicate "
    "\"[PREDICATE_1]\" as the transitive closure of predicate "
    "\"[PREDICATE_2]\".",
    // Preference
    "Write an ASP program for the following problem. I would prefer that "
    "predicate [PREDICATE] with value [VALUE] is not associated with "
    "\"[LABEL]\". If this occurs, it costs [COST] at level [LEVEL].",
    // ValueFiltering
    "Write an ASP program for the following problem. Select all values "
    "associated to the predicate [PREDICATE] with label \"[LABEL]\".",
    // NegativeFiltering
    "Write an ASP program for the following problem. Select all values "
    "associated with predicate [PREDICATE_1] but not associated with "
    "predicate [PREDICATE_2] and label \"[LABEL]\".",
    // NumericFiltering
    "Write an ASP program for the following problem. Select all values "
    "associated with predicate [PREDICATE] with a value [COMPARISON] than "
    "[VALUE].",
};

void replace_all(std::string& text, const std::string& token,
                 const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(token, pos)) != std::string::npos) {
    text.replace(pos, token.size(), value);
    pos += value.size();
  }
}

std::vector<std::string> split(const std::string& joined, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(joined);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::string quote_join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ',';
    out += '"' + items[i] + '"';
  }
  return out;
}

const std::string& binding(const Bindings& b, const std::string& key) {
  auto it = b.find(key);
  if (it == b.end()) {
    throw std::invalid_argument("missing binding '" + key + "'");
  }
  return it->second;
}

long long int_binding(const Bindings& b, const std::string& key) {
  return std::stoll(binding(b, key));
}

std::string pick(SeededRng& rng, const std::vector<std::string>& pool) {
  return pool[rng.below(pool.size())];
}

std::vector<std::string> sample_distinct(SeededRng& rng,
                                         const std::vector<std::string>& pool,
                                         std::size_t k) {
  std::vector<std::string> remaining = pool;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = rng.below(remaining.size());
    out.push_back(remaining[j]);
    remaining.erase(remaining.begin() + static_cast<long>(j));
  }
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw VocabularyError(what);
}

CmpOp comparison_op(const std::string& phrase) {
  if (phrase == "greater") return CmpOp::Gt;
  if (phrase == "greater or equal") return CmpOp::Ge;
  if (phrase == "lower") return CmpOp::Lt;
  if (phrase == "lower or equal") return CmpOp::Le;
  throw std::invalid_argument("unknown comparison phrasing: " + phrase);
}

const char* const kComparisonPhrases[] = {"greater", "greater or equal",
                                          "lower", "lower or equal"};

}  // namespace

const std::string& template_text(TaskClass task) {
  return kTemplates[static_cast<int>(task)];
}

Bindings draw_bindings(TaskClass task, const Vocabulary& vocab,
                       std::uint64_t seed) {
  SeededRng rng(mix64(seed ^ 0x7461736b73656564ull));
  Bindings b;
  switch (task) {
    case TaskClass::Assignment: {
      require(!vocab.predicates.empty(), "assignment needs a predicate");
      require(vocab.labels.size() >= 2, "assignment needs at least 2 labels");
      b["predicate"] = pick(rng, vocab.predicates);
      std::size_t hi = std::min<std::size_t>(5, vocab.labels.size());
      std::size_t count = static_cast<std::size_t>(rng.range(2, static_cast<long long>(hi)));
      b["labels"] = join(sample_distinct(rng, vocab.labels, count), ",");
      break;
    }
    case TaskClass::Constraint: {
      require(!vocab.predicates.empty(), "constraint needs a predicate");
      require(!vocab.labels.empty(), "constraint needs a label");
      b["predicate"] = pick(rng, vocab.predicates);
      b["value"] = std::to_string(rng.range(vocab.value_min, vocab.value_max));
      b["label"] = pick(rng, vocab.labels);
      break;
    }
    case TaskClass::Combination: {
      require(vocab.predicates.size() >= 2,
              "combination needs 2 distinct predicates");
      auto p = sample_distinct(rng, vocab.predicates, 2);
      b["predicate_1"] = p[0];
      b["predicate_2"] = p[1];
      break;
    }
    case TaskClass::Join: {
      require(vocab.predicates.size() >= 2, "join needs 2 distinct predicates");
      auto p = sample_distinct(rng, vocab.predicates, 2);
      const std::string& p1 = p[0];
      const std::string& p2 = p[1];
      auto a1 = static_cast<std::size_t>(rng.range(2, 5));
      auto a2 = static_cast<std::size_t>(rng.range(2, 5));
      auto key_pos = static_cast<std::size_t>(rng.range(2, static_cast<long long>(a1)));
      auto target_pos = static_cast<std::size_t>(rng.range(2, static_cast<long long>(a2)));
      const std::string key_field = p2 + "ID";
      std::vector<std::string> pool;
      for (const std::string& f : vocab.fields) {
        if (f != "ID" && f != key_field) pool.push_back(f);
      }
      const std::size_t need = (a1 - 2) + (a2 - 1);
      require(pool.size() >= need, "join needs " + std::to_string(need) +
                                       " distinct field names");
      auto names = sample_distinct(rng, pool, need);
      std::size_t next = 0;
      std::vector<std::string> fields1(a1), fields2(a2);
      fields1[0] = "ID";
      for (std::size_t i = 1; i < a1; ++i) {
        fields1[i] = (i + 1 == key_pos) ? key_field : names[next++];
      }
      fields2[0] = "ID";
      for (std::size_t i = 1; i < a2; ++i) fields2[i] = names[next++];
      b["predicate_1"] = p1;
      b["predicate_2"] = p2;
      b["fields_1"] = join(fields1, ",");
      b["fields_2"] = join(fields2, ",");
      b["field"] = fields2[target_pos - 1];
      break;
    }
    case TaskClass::TransitiveClosure: {
      require(vocab.predicates.size() >= 2,
              "transitive closure needs 2 distinct predicates");
      auto p = sample_distinct(rng, vocab.predicates, 2);
      b["predicate_1"] = p[0];
      b["predicate_2"] = p[1];
      break;
    }
    case TaskClass::Preference: {
      require(!vocab.predicates.empty(), "preference needs a predicate");
      require(!vocab.labels.empty(), "preference needs a label");
      b["predicate"] = pick(rng, vocab.predicates);
      b["value"] = std::to_string(rng.range(vocab.value_min, vocab.value_max));
      b["label"] = pick(rng, vocab.labels);
      b["cost"] = std::to_string(rng.range(1, 5));
      b["level"] = std::to_string(rng.range(1, 3));
      break;
    }
    case TaskClass::ValueFiltering: {
      require(!vocab.predicates.empty(), "value filtering needs a predicate");
      require(!vocab.labels.empty(), "value filtering needs a label");
      b["predicate"] = pick(rng, vocab.predicates);
      b["label"] = pick(rng, vocab.labels);
      break;
    }
    case TaskClass::NegativeFiltering: {
      require(vocab.predicates.size() >= 2,
              "negative filtering needs 2 distinct predicates");
      require(!vocab.labels.empty(), "negative filtering needs a label");
      auto p = sample_distinct(rng, vocab.predicates, 2);
      b["predicate_1"] = p[0];
      b["predicate_2"] = p[1];
      b["label"] = pick(rng, vocab.labels);
      break;
    }
    case TaskClass::NumericFiltering: {
      require(!vocab.predicates.empty(), "numeric filtering needs a predicate");
      b["predicate"] = pick(rng, vocab.predicates);
      b["comparison"] = kComparisonPhrases[rng.below(4)];
      b["value"] = std::to_string(rng.range(vocab.value_min, vocab.value_max));
      break;
    }
  }
  return b;
}

TaskInstance realize(TaskClass task, const Bindings& bindings) {
  TaskInstance instance;
  instance.task = task;
  instance.bindings = bindings;

  std::string prompt = template_text(task);
  Program gold;
  const Term var_x = Term::variable("X");
  const Term var_y = Term::variable("Y");
  const Term var_z = Term::variable("Z");

  switch (task) {
    case TaskClass::Assignment: {
      const std::string pred = binding(bindings, "predicate");
      const std::vector<std::string> labels = split(binding(bindings, "labels"), ',');
      replace_all(prompt, "[PREDICATE]", pred);
      replace_all(prompt, "[LABELS]", join(labels, ","));
      Rule rule;
      for (const std::string& label : labels) {
        rule.head.push_back({"assign", {var_x, Term::string(label)}});
      }
      rule.body.push_back(Literal::positive({pred, {var_x}}));
      gold.rules.push_back(std::move(rule));
      break;
    }
    case TaskClass::Constraint: {
      replace_all(prompt, "[PREDICATE]", binding(bindings, "predicate"));
      replace_all(prompt, "[VALUE]", binding(bindings, "value"));
      replace_all(prompt, "[LABEL]", binding(bindings, "label"));
      Rule rule;
      rule.body.push_back(Literal::positive(
          {"assign",
           {Term::integer(int_binding(bindings, "value")),
            Term::string(binding(bindings, "label"))}}));
      gold.rules.push_back(std::move(rule));
      break;
    }
    case TaskClass::Combination: {
      const std::string p1 = binding(bindings, "predicate_1");
      const std::string p2 = binding(bindings, "predicate_2");
      replace_all(prompt, "[PREDICATE_1]", p1);
      replace_all(prompt, "[PREDICATE_2]", p2);
      Rule rule;
      rule.head.push_back({"combination", {var_x, var_y}});
      rule.body.push_back(Literal::positive({p1, {var_x}}));
      rule.body.push_back(Literal::positive({p2, {var_y}}));
      gold.rules.push_back(std::move(rule));
      break;
    }
    case TaskClass::Join: {
      const std::string p1 = binding(bindings, "predicate_1");
      const std::string p2 = binding(bindings, "predicate_2");
      const std::vector<std::string> fields1 = split(binding(bindings, "fields_1"), ',');
      const std::vector<std::string> fields2 = split(binding(bindings, "fields_2"), ',');
      const std::string target = binding(bindings, "field");
      const std::string key_field = p2 + "ID";
      std::size_t key_pos = 0, target_pos = 0;
      for (std::size_t i = 0; i < fields1.size(); ++i) {
        if (fields1[i] == key_field) key_pos = i + 1;
      }
      for (std::size_t i = 0; i < fields2.size(); ++i) {
        if (fields2[i] == target) target_pos = i + 1;
      }
      if (key_pos < 2 || target_pos < 2) {
        throw std::invalid_argument(
            "join bindings lack a key field or a target field");
      }
      replace_all(prompt, "[PREDICATE_1]", p1);
      replace_all(prompt, "[PREDICATE_2]", p2);
      replace_all(prompt, "[FIELDS_1]", quote_join(fields1));
      replace_all(prompt, "[FIELDS_2]", quote_join(fields2));
      replace_all(prompt, "[FIELD]", target);
      Rule rule;
      rule.head.push_back({p1 + "_" + p2, {var_x, var_z}});
      int anon = 0;
      Atom left{p1, {}};
      for (std::size_t i = 1; i <= fields1.size(); ++i) {
        if (i == 1) left.terms.push_back(var_x);
        else if (i == key_pos) left.terms.push_back(var_y);
        else left.terms.push_back(Term::anonymous(++anon));
      }
      Atom right{p2, {}};
      for (std::size_t i = 1; i <= fields2.size(); ++i) {
        if (i == 1) right.terms.push_back(var_y);
        else if (i == target_pos) right.terms.push_back(var_z);
        else right.terms.push_back(Term::anonymous(++anon));
      }
      rule.body.push_back(Literal::positive(std::move(left)));
      rule.body.push_back(Literal::positive(std::move(right)));
      gold.rules.push_back(std::move(rule));
      break;
    }
    case TaskClass::TransitiveClosure: {
      const std::string closure = binding(bindings, "predicate_1");
      const std::string base = binding(bindings, "predicate_2");
      replace_all(prompt, "[PREDICATE_1]", closure);
      replace_all(prompt, "[PREDICATE_2]", base);
      Rule direct;
      direct.head.push_back({closure, {var_x, var_y}});
      direct.body.push_back(Literal::positive({base, {var_x, var_y}}));
      Rule recursive;
      recursive.head.push_back({closure, {var_x, var_y}});
      recursive.body.push_back(Literal::positive({base, {var_x, var_z}}));
      recursive.body.push_back(Literal::positive({closure, {var_z, var_y}}));
      gold.rules.push_back(std::move(direct));
      gold.rules.push_back(std::move(recursive));
      break;
    }
    case TaskClass::Preference: {
      replace_all(prompt, "[PREDICATE]", binding(bindings, "predicate"));
      replace_all(prompt, "[VALUE]", binding(bindings, "value"));
      replace_all(prompt, "[LABEL]", binding(bindings, "label"));
      replace_all(prompt, "[COST]", binding(bindings, "cost"));
      replace_all(prompt, "[LEVEL]", binding(bindings, "level"));
      Rule rule;
      rule.body.push_back(Literal::positive(
          {"assign",
           {Term::integer(int_binding(bindings, "value")),
            Term::string(binding(bindings, "label"))}}));
      rule.weak = WeakAnnotation{int_binding(bindings, "cost"),
                                 int_binding(bindings, "level"),
                                 {}};
      gold.rules.push_back(std::move(rule));
      break;
    }
    case TaskClass::ValueFiltering: {
      const std::string pred = binding(bindings, "predicate");
      const std::string label = binding(bindings, "label");
      replace_all(prompt, "[PREDICATE]", pred);
      replace_all(prompt, "[LABEL]", label);
      Rule rule;
      rule.head.push_back({"select", {var_x}});
      rule.body.push_back(
          Literal::positive({pred, {var_x, Term::string(label)}}));
      gold.rules.push_back(std::move(rule));
      break;
    }
    case TaskClass::NegativeFiltering: {
      const std::string p1 = binding(bindings, "predicate_1");
      const std::string p2 = binding(bindings, "predicate_2");
      const std::string label = binding(bindings, "label");
      replace_all(prompt, "[PREDICATE_1]", p1);
      replace_all(prompt, "[PREDICATE_2]", p2);
      replace_all(prompt, "[LABEL]", label);
      Rule rule;
      rule.head.push_back({"select", {var_x}});
      rule.body.push_back(Literal::positive({p1, {var_x}}));
      rule.body.push_back(
          Literal::negated({p2, {var_x, Term::string(label)}}));
      gold.rules.push_back(std::move(rule));
      break;
    }
    case TaskClass::NumericFiltering: {
      const std::string pred = binding(bindings, "predicate");
      const std::string phrase = binding(bindings, "comparison");
      replace_all(prompt, "[PREDICATE]", pred);
      replace_all(prompt, "[COMPARISON]", phrase);
      replace_all(prompt, "[VALUE]", binding(bindings, "value"));
      const Term var_c = Term::variable("C");
      Rule rule;
      rule.head.push_back({"select", {var_x}});
      rule.body.push_back(Literal::positive({pred, {var_x, var_c}}));
      rule.body.push_back(Literal::comparison(
          var_c, comparison_op(phrase),
          Term::integer(int_binding(bindings, "value"))));
      gold.rules.push_back(std::move(rule));
      break;
    }
  }

  instance.prompt = std::move(prompt);
  instance.gold = std::move(gold);
  return instance;
}

TaskInstance instantiate(TaskClass task, const Vocabulary& vocab,
                         std::uint64_t seed) {
  TaskInstance instance = realize(task, draw_bindings(task, vocab, seed));
  instance.seed = seed;
  return instance;
}

std::set<std::string> gold_head_predicates(TaskClass task,
                                           const Bindings& bindings) {
  switch (task) {
    case TaskClass::Assignment:
    case TaskClass::Constraint:
    case TaskClass::Preference:
      return {"assign"};
    case TaskClass::Combination:
      return {"combination"};
    case TaskClass::Join:
      return {binding(bindings, "predicate_1") + "_" +
              binding(bindings, "predicate_2")};
    case TaskClass::TransitiveClosure:
      return {binding(bindings, "predicate_1")};
    case TaskClass::ValueFiltering:
    case TaskClass::NegativeFiltering:
    case TaskClass::NumericFiltering:
      return {"select"};
  }
  return {};
}

}  // namespace aspforge
