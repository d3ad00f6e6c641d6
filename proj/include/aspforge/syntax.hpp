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

#ifndef ASPFORGE_SYNTAX_HPP_
#define ASPFORGE_SYNTAX_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aspforge {

// AST for the supported ASP fragment: disjunctive rules, negation as
// failure, comparison literals, strong constraints and weak constraints.
// Aggregates, choice rules, intervals, arithmetic terms and directives are
// deliberately not representable; the parser rejects them.

enum class TermKind { Integer, Symbol, String, Variable, Anonymous };

struct Term {
  TermKind kind = TermKind::Anonymous;
  long long number = 0;   // Integer
  std::string text;       // Symbol / String / Variable name
  int anon_id = 0;        // Anonymous: per-rule occurrence id, ignored by ==

  static Term integer(long long v) {
    Term t;
    t.kind = TermKind::Integer;
    t.number = v;
    return t;
  }
  static Term symbol(std::string name) {
    Term t;
    t.kind = TermKind::Symbol;
    t.text = std::move(name);
    return t;
  }
  static Term string(std::string value) {
    Term t;
    t.kind = TermKind::String;
    t.text = std::move(value);
    return t;
  }
  static Term variable(std::string name) {
    Term t;
    t.kind = TermKind::Variable;
    t.text = std::move(name);
    return t;
  }
  static Term anonymous(int id = 0) {
    Term t;
    t.kind = TermKind::Anonymous;
    t.anon_id = id;
    return t;
  }

  bool is_constant() const {
    return kind == TermKind::Integer || kind == TermKind::Symbol ||
           kind == TermKind::String;
  }
};

// Total order on terms: integers ascending, then symbolic constants, then
// strings, then variables; anonymous last. Two anonymous terms compare
// equal regardless of occurrence id.
int compare(const Term& a, const Term& b);
bool operator==(const Term& a, const Term& b);
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

struct Atom {
  std::string predicate;
  std::vector<Term> terms;

  std::size_t arity() const { return terms.size(); }
};

int compare(const Atom& a, const Atom& b);
bool operator==(const Atom& a, const Atom& b);
inline bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
inline bool operator<(const Atom& a, const Atom& b) { return compare(a, b) < 0; }

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };

std::string_view to_string(CmpOp op);

struct Literal {
  enum class Kind { Positive, Negated, Comparison };

  Kind kind = Kind::Positive;
  Atom atom;            // Positive / Negated
  Term lhs, rhs;        // Comparison
  CmpOp op = CmpOp::Eq; // Comparison

  static Literal positive(Atom a) {
    Literal l;
    l.kind = Kind::Positive;
    l.atom = std::move(a);
    return l;
  }
  static Literal negated(Atom a) {
    Literal l;
    l.kind = Kind::Negated;
    l.atom = std::move(a);
    return l;
  }
  static Literal comparison(Term lhs, CmpOp op, Term rhs) {
    Literal l;
    l.kind = Kind::Comparison;
    l.lhs = std::move(lhs);
    l.op = op;
    l.rhs = std::move(rhs);
    return l;
  }
};

int compare(const Literal& a, const Literal& b);
bool operator==(const Literal& a, const Literal& b);
inline bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }

struct WeakAnnotation {
  long long weight = 0;
  long long level = 0;
  std::vector<Term> tuple;
};

int compare(const WeakAnnotation& a, const WeakAnnotation& b);
bool operator==(const WeakAnnotation& a, const WeakAnnotation& b);

struct Rule {
  std::vector<Atom> head;      // empty for constraints and weak constraints
  std::vector<Literal> body;
  std::optional<WeakAnnotation> weak;

  bool is_fact() const { return !head.empty() && body.empty() && !weak; }
  bool is_constraint() const { return head.empty() && !weak; }
  bool is_weak() const { return weak.has_value(); }
};

int compare(const Rule& a, const Rule& b);
bool operator==(const Rule& a, const Rule& b);
inline bool operator!=(const Rule& a, const Rule& b) { return !(a == b); }
inline bool operator<(const Rule& a, const Rule& b) { return compare(a, b) < 0; }

struct Program {
  std::vector<Rule> rules;
};

bool operator==(const Program& a, const Program& b);
inline bool operator!=(const Program& a, const Program& b) { return !(a == b); }

// ---------------------------------------------------------------------------
// Parsing

struct ParseError {
  std::size_t offset = 0;  // byte offset into the input
  int line = 1;
  int column = 1;
  std::string message;     // expected-token summary

  std::string to_string() const;
};

struct ParseResult {
  std::optional<Program> program;
  std::optional<ParseError> error;

  bool ok() const { return program.has_value(); }
};

// Total: never throws on malformed input; any text yields a Program or a
// ParseError. `%` starts a comment running to end of line. Anonymous terms
// are numbered per rule in textual order so distinct occurrences ground
// independently.
ParseResult parse_program(std::string_view text);

// ---------------------------------------------------------------------------
// Canonical printing
//
// One rule per line, no space after commas inside term lists, ` :- ` between
// head and body, ` | ` between head atoms, `, ` between body literals, weak
// annotations as ` [w@l]` / ` [w@l,t1,...]` after the dot. The canonical form
// is a fixed point: parse(render(p)) == p and render is idempotent on it.

std::string render(const Term& term);
std::string render(const Atom& atom);
std::string render(const Literal& literal);
std::string render(const Rule& rule);
std::string render(const Program& program);

// ---------------------------------------------------------------------------
// Safety

struct SafetyError {
  std::string variable;  // first offending variable in textual order
};

// A rule is safe when every variable occurring in the head, in a negated
// atom, in a comparison, or in the weak tuple also occurs in at least one
// positive body atom. Anonymous terms are exempt.
std::optional<SafetyError> check_safety(const Rule& rule);
std::optional<SafetyError> check_safety(const Program& program);

bool is_ground(const Term& term);
bool is_ground(const Atom& atom);
bool is_ground(const Rule& rule);

}  // namespace aspforge

#endif  // ASPFORGE_SYNTAX_HPP_
