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

#include "aspforge/syntax.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

namespace aspforge {

namespace {

int kind_rank(TermKind k) {
  switch (k) {
    case TermKind::Integer: return 0;
    case TermKind::Symbol: return 1;
    case TermKind::String: return 2;
    case TermKind::Variable: return 3;
    case TermKind::Anonymous: return 4;
  }
  return 5;
}

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

int compare_int(long long a, long long b) { return a < b ? -1 : (a > b ? 1 : 0); }

}  // namespace

int compare(const Term& a, const Term& b) {
  int ra = kind_rank(a.kind), rb = kind_rank(b.kind);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind) {
    case TermKind::Integer:
      return compare_int(a.number, b.number);
    case TermKind::Symbol:
    case TermKind::String:
    case TermKind::Variable:
      return a.text.compare(b.text) < 0 ? -1 : (a.text == b.text ? 0 : 1);
    case TermKind::Anonymous:
      return 0;  // all anonymous terms are structurally equal
  }
  return 0;
}

bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }

int compare(const Atom& a, const Atom& b) {
  if (int c = a.predicate.compare(b.predicate); c != 0) return c < 0 ? -1 : 1;
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  return compare_vectors(a.terms, b.terms);
}

bool operator==(const Atom& a, const Atom& b) { return compare(a, b) == 0; }

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

int compare(const Literal& a, const Literal& b) {
  if (a.kind != b.kind)
    return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  if (a.kind == Literal::Kind::Comparison) {
    if (int c = compare(a.lhs, b.lhs); c != 0) return c;
    if (a.op != b.op)
      return static_cast<int>(a.op) < static_cast<int>(b.op) ? -1 : 1;
    return compare(a.rhs, b.rhs);
  }
  return compare(a.atom, b.atom);
}

bool operator==(const Literal& a, const Literal& b) { return compare(a, b) == 0; }

int compare(const WeakAnnotation& a, const WeakAnnotation& b) {
  if (int c = compare_int(a.level, b.level); c != 0) return c;
  if (int c = compare_int(a.weight, b.weight); c != 0) return c;
  return compare_vectors(a.tuple, b.tuple);
}

bool operator==(const WeakAnnotation& a, const WeakAnnotation& b) {
  return compare(a, b) == 0;
}

int compare(const Rule& a, const Rule& b) {
  if (a.is_weak() != b.is_weak()) return a.is_weak() ? 1 : -1;
  if (int c = compare_vectors(a.head, b.head); c != 0) return c;
  if (int c = compare_vectors(a.body, b.body); c != 0) return c;
  if (a.is_weak()) return compare(*a.weak, *b.weak);
  return 0;
}

bool operator==(const Rule& a, const Rule& b) { return compare(a, b) == 0; }

bool operator==(const Program& a, const Program& b) {
  return a.rules.size() == b.rules.size() &&
         std::equal(a.rules.begin(), a.rules.end(), b.rules.begin());
}

// ---------------------------------------------------------------------------
// Rendering

std::string render(const Term& term) {
  switch (term.kind) {
    case TermKind::Integer: return std::to_string(term.number);
    case TermKind::Symbol: return term.text;
    case TermKind::String: return "\"" + term.text + "\"";
    case TermKind::Variable: return term.text;
    case TermKind::Anonymous: return "_";
  }
  return "_";
}

std::string render(const Atom& atom) {
  std::string out = atom.predicate;
  if (!atom.terms.empty()) {
    out += '(';
    for (std::size_t i = 0; i < atom.terms.size(); ++i) {
      if (i > 0) out += ',';
      out += render(atom.terms[i]);
    }
    out += ')';
  }
  return out;
}

std::string render(const Literal& literal) {
  switch (literal.kind) {
    case Literal::Kind::Positive:
      return render(literal.atom);
    case Literal::Kind::Negated:
      return "not " + render(literal.atom);
    case Literal::Kind::Comparison:
      return render(literal.lhs) + std::string(to_string(literal.op)) +
             render(literal.rhs);
  }
  return "";
}

std::string render(const Rule& rule) {
  std::string out;
  if (rule.is_weak()) {
    out = ":~ ";
  } else if (rule.head.empty()) {
    out = ":- ";
  }
  for (std::size_t i = 0; i < rule.head.size(); ++i) {
    if (i > 0) out += " | ";
    out += render(rule.head[i]);
  }
  if (!rule.body.empty()) {
    if (!rule.head.empty()) out += " :- ";
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
      if (i > 0) out += ", ";
      out += render(rule.body[i]);
    }
  }
  out += '.';
  if (rule.is_weak()) {
    out += " [" + std::to_string(rule.weak->weight) + "@" +
           std::to_string(rule.weak->level);
    for (const Term& t : rule.weak->tuple) out += "," + render(t);
    out += ']';
  }
  return out;
}

std::string render(const Program& program) {
  std::string out;
  for (const Rule& r : program.rules) {
    out += render(r);
    out += '\n';
  }
  return out;
}

std::string ParseError::to_string() const {
  std::ostringstream os;
  os << line << ":" << column << ": " << message;
  return os.str();
}

// ---------------------------------------------------------------------------
// Safety

namespace {

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.kind == TermKind::Variable) out.push_back(t.text);
}

void collect_variables(const Atom& a, std::vector<std::string>& out) {
  for (const Term& t : a.terms) collect_variables(t, out);
}

}  // namespace

std::optional<SafetyError> check_safety(const Rule& rule) {
  std::set<std::string> provided;
  for (const Literal& l : rule.body) {
    if (l.kind == Literal::Kind::Positive) {
      for (const Term& t : l.atom.terms) {
        if (t.kind == TermKind::Variable) provided.insert(t.text);
      }
    }
  }

  // Demands in textual order: head, then body negations and comparisons,
  // then the weak tuple.
  std::vector<std::string> demanded;
  for (const Atom& a : rule.head) collect_variables(a, demanded);
  for (const Literal& l : rule.body) {
    if (l.kind == Literal::Kind::Negated) {
      collect_variables(l.atom, demanded);
    } else if (l.kind == Literal::Kind::Comparison) {
      collect_variables(l.lhs, demanded);
      collect_variables(l.rhs, demanded);
    }
  }
  if (rule.weak) {
    for (const Term& t : rule.weak->tuple) collect_variables(t, demanded);
  }

  for (const std::string& v : demanded) {
    if (!provided.count(v)) return SafetyError{v};
  }
  return std::nullopt;
}

std::optional<SafetyError> check_safety(const Program& program) {
  for (const Rule& r : program.rules) {
    if (auto err = check_safety(r)) return err;
  }
  return std::nullopt;
}

bool is_ground(const Term& term) { return term.is_constant(); }

bool is_ground(const Atom& atom) {
  return std::all_of(atom.terms.begin(), atom.terms.end(),
                     [](const Term& t) { return is_ground(t); });
}

bool is_ground(const Rule& rule) {
  for (const Atom& a : rule.head) {
    if (!is_ground(a)) return false;
  }
  for (const Literal& l : rule.body) {
    if (l.kind == Literal::Kind::Comparison) {
      if (!is_ground(l.lhs) || !is_ground(l.rhs)) return false;
    } else if (!is_ground(l.atom)) {
      return false;
    }
  }
  if (rule.weak) {
    for (const Term& t : rule.weak->tuple) {
      if (!is_ground(t)) return false;
    }
  }
  return true;
}

}  // namespace aspforge
