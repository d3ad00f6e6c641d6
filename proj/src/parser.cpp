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

#include <cctype>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>

#include "aspforge/syntax.hpp"

namespace aspforge {

namespace {

enum class Tok {
  End,
  Identifier,   // lowercase-initial
  Variable,     // uppercase-initial
  Integer,
  String,
  Dot,
  Comma,
  Pipe,
  ColonDash,    // :-
  ColonSim,     // :~
  LParen,
  RParen,
  LBracket,
  RBracket,
  At,
  Underscore,
  Lt, Le, Gt, Ge, Eq, Ne,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long long number = 0;
  std::size_t offset = 0;
  int line = 1;
  int column = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult run() {
    advance();
    if (failed_) return fail_result();
    Program program;
    while (tok_.kind != Tok::End) {
      anon_counter_ = 0;
      Rule rule = parse_rule();
      if (failed_) return fail_result();
      program.rules.push_back(std::move(rule));
    }
    ParseResult result;
    result.program = std::move(program);
    return result;
  }

 private:
  ParseResult fail_result() {
    ParseResult result;
    result.error = error_;
    return result;
  }

  void set_error(const Token& at, std::string message) {
    if (failed_) return;
    failed_ = true;
    error_.offset = at.offset;
    error_.line = at.line;
    error_.column = at.column;
    error_.message = std::move(message);
  }

  void set_error_here(std::string message) {
    Token at;
    at.offset = pos_;
    at.line = line_;
    at.column = column_;
    set_error(at, std::move(message));
  }

  // ---- lexer -------------------------------------------------------------

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void advance() {
    skip_space_and_comments();
    tok_ = Token{};
    tok_.offset = pos_;
    tok_.line = line_;
    tok_.column = column_;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = text_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      lex_name(Tok::Identifier);
      return;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      lex_name(Tok::Variable);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lex_integer(false);
      return;
    }
    switch (c) {
      case '"': lex_string(); return;
      case '.':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '.') {
          set_error(tok_, "interval '..' is outside the supported fragment");
          return;
        }
        tok_.kind = Tok::Dot;
        return;
      case ',': bump(); tok_.kind = Tok::Comma; return;
      case '|': bump(); tok_.kind = Tok::Pipe; return;
      case '(': bump(); tok_.kind = Tok::LParen; return;
      case ')': bump(); tok_.kind = Tok::RParen; return;
      case '[': bump(); tok_.kind = Tok::LBracket; return;
      case ']': bump(); tok_.kind = Tok::RBracket; return;
      case '@': bump(); tok_.kind = Tok::At; return;
      case '_':
        bump();
        if (pos_ < text_.size() &&
            (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
             text_[pos_] == '_')) {
          set_error(tok_, "identifiers may not start with '_'");
          return;
        }
        tok_.kind = Tok::Underscore;
        return;
      case ':':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '-') {
          bump();
          tok_.kind = Tok::ColonDash;
          return;
        }
        if (pos_ < text_.size() && text_[pos_] == '~') {
          bump();
          tok_.kind = Tok::ColonSim;
          return;
        }
        set_error(tok_,
                  "conditional literals ':' are outside the supported "
                  "fragment; expected ':-' or ':~'");
        return;
      case '<':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          bump();
          tok_.kind = Tok::Le;
        } else {
          tok_.kind = Tok::Lt;
        }
        return;
      case '>':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          bump();
          tok_.kind = Tok::Ge;
        } else {
          tok_.kind = Tok::Gt;
        }
        return;
      case '=':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '=') bump();  // accept '=='
        tok_.kind = Tok::Eq;
        return;
      case '!':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          bump();
          tok_.kind = Tok::Ne;
          return;
        }
        set_error(tok_, "expected '=' after '!'");
        return;
      case '-':
        bump();
        if (pos_ < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          lex_integer(true);
          return;
        }
        set_error(tok_,
                  "'-' is outside the supported fragment (no classical "
                  "negation or arithmetic)");
        return;
      case '{':
      case '}':
        set_error(tok_, "choice construct '{...}' is outside the supported "
                        "fragment");
        return;
      case '#':
        set_error(tok_, "'#' directives and aggregates are outside the "
                        "supported fragment");
        return;
      default:
        set_error(tok_, std::string("unexpected character '") + c + "'");
        return;
    }
  }

  void lex_name(Tok kind) {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      bump();
    }
    tok_.kind = kind;
    tok_.text = std::string(text_.substr(start, pos_ - start));
  }

  void lex_integer(bool negative) {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      bump();
    }
    std::string digits(text_.substr(start, pos_ - start));
    errno = 0;
    char* end = nullptr;
    unsigned long long magnitude = std::strtoull(digits.c_str(), &end, 10);
    const unsigned long long limit =
        negative
            ? static_cast<unsigned long long>(
                  std::numeric_limits<long long>::max()) + 1ull
            : static_cast<unsigned long long>(
                  std::numeric_limits<long long>::max());
    if (errno == ERANGE || magnitude > limit) {
      set_error(tok_, "integer literal does not fit in 64 bits");
      return;
    }
    tok_.kind = Tok::Integer;
    tok_.number = negative ? -static_cast<long long>(magnitude)
                           : static_cast<long long>(magnitude);
  }

  void lex_string() {
    bump();  // opening quote
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
      bump();
    }
    if (pos_ >= text_.size() || text_[pos_] != '"') {
      set_error(tok_, "unterminated string constant");
      return;
    }
    tok_.kind = Tok::String;
    tok_.text = std::string(text_.substr(start, pos_ - start));
    bump();  // closing quote
  }

  // ---- grammar -----------------------------------------------------------

  bool expect(Tok kind, const char* what) {
    if (tok_.kind != kind) {
      set_error(tok_, std::string("expected ") + what + ", found " +
                          describe(tok_));
      return false;
    }
    advance();
    return !failed_;
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End: return "end of input";
      case Tok::Identifier: return "'" + t.text + "'";
      case Tok::Variable: return "variable '" + t.text + "'";
      case Tok::Integer: return "integer " + std::to_string(t.number);
      case Tok::String: return "string \"" + t.text + "\"";
      case Tok::Dot: return "'.'";
      case Tok::Comma: return "','";
      case Tok::Pipe: return "'|'";
      case Tok::ColonDash: return "':-'";
      case Tok::ColonSim: return "':~'";
      case Tok::LParen: return "'('";
      case Tok::RParen: return "')'";
      case Tok::LBracket: return "'['";
      case Tok::RBracket: return "']'";
      case Tok::At: return "'@'";
      case Tok::Underscore: return "'_'";
      case Tok::Lt: return "'<'";
      case Tok::Le: return "'<='";
      case Tok::Gt: return "'>'";
      case Tok::Ge: return "'>='";
      case Tok::Eq: return "'='";
      case Tok::Ne: return "'!='";
    }
    return "?";
  }

  static bool is_cmp(Tok k) {
    return k == Tok::Lt || k == Tok::Le || k == Tok::Gt || k == Tok::Ge ||
           k == Tok::Eq || k == Tok::Ne;
  }

  static CmpOp cmp_of(Tok k) {
    switch (k) {
      case Tok::Lt: return CmpOp::Lt;
      case Tok::Le: return CmpOp::Le;
      case Tok::Gt: return CmpOp::Gt;
      case Tok::Ge: return CmpOp::Ge;
      case Tok::Eq: return CmpOp::Eq;
      default: return CmpOp::Ne;
    }
  }

  Rule parse_rule() {
    Rule rule;
    if (tok_.kind == Tok::ColonDash) {
      advance();
      if (failed_) return rule;
      rule.body = parse_body();
      if (failed_) return rule;
      expect(Tok::Dot, "'.' at end of constraint");
      return rule;
    }
    if (tok_.kind == Tok::ColonSim) {
      advance();
      if (failed_) return rule;
      rule.body = parse_body();
      if (failed_) return rule;
      if (!expect(Tok::Dot, "'.' at end of weak constraint")) return rule;
      rule.weak = parse_weak_annotation();
      return rule;
    }
    if (tok_.kind == Tok::Integer || tok_.kind == Tok::Variable) {
      set_error(tok_,
                "a rule must start with an atom, ':-' or ':~' (choice and "
                "cardinality constructs are outside the supported fragment)");
      return rule;
    }
    rule.head.push_back(parse_atom("head atom"));
    if (failed_) return rule;
    while (tok_.kind == Tok::Pipe) {
      advance();
      if (failed_) return rule;
      rule.head.push_back(parse_atom("head atom after '|'"));
      if (failed_) return rule;
    }
    if (tok_.kind == Tok::Dot) {
      advance();
      return rule;  // fact (or disjunctive fact)
    }
    if (tok_.kind == Tok::ColonDash) {
      advance();
      if (failed_) return rule;
      rule.body = parse_body();
      if (failed_) return rule;
      expect(Tok::Dot, "'.' at end of rule");
      return rule;
    }
    set_error(tok_, std::string("expected '.', '|' or ':-' after rule head, "
                                "found ") + describe(tok_));
    return rule;
  }

  std::vector<Literal> parse_body() {
    std::vector<Literal> body;
    body.push_back(parse_literal());
    if (failed_) return body;
    while (tok_.kind == Tok::Comma) {
      advance();
      if (failed_) return body;
      body.push_back(parse_literal());
      if (failed_) return body;
    }
    return body;
  }

  Literal parse_literal() {
    if (tok_.kind == Tok::Identifier && tok_.text == "not") {
      advance();
      if (failed_) return Literal{};
      Atom atom = parse_atom("atom after 'not'");
      return Literal::negated(std::move(atom));
    }
    // Either an atom or a comparison between two terms.
    if (tok_.kind == Tok::Identifier) {
      Token name = tok_;
      advance();
      if (failed_) return Literal{};
      if (tok_.kind == Tok::LParen) {
        Atom atom;
        atom.predicate = name.text;
        atom.terms = parse_term_list();
        if (failed_) return Literal{};
        if (is_cmp(tok_.kind)) {
          set_error(tok_, "comparison operands must be terms, not atoms");
          return Literal{};
        }
        return Literal::positive(std::move(atom));
      }
      if (is_cmp(tok_.kind)) {
        CmpOp op = cmp_of(tok_.kind);
        advance();
        if (failed_) return Literal{};
        Term rhs = parse_term("right-hand side of comparison");
        return Literal::comparison(Term::symbol(name.text), op, rhs);
      }
      Atom atom;
      atom.predicate = name.text;
      return Literal::positive(std::move(atom));
    }
    if (tok_.kind == Tok::Variable || tok_.kind == Tok::Integer ||
        tok_.kind == Tok::String || tok_.kind == Tok::Underscore) {
      Term lhs = parse_term("comparison operand");
      if (failed_) return Literal{};
      if (!is_cmp(tok_.kind)) {
        set_error(tok_, std::string("expected comparison operator after "
                                    "term, found ") + describe(tok_));
        return Literal{};
      }
      CmpOp op = cmp_of(tok_.kind);
      advance();
      if (failed_) return Literal{};
      Term rhs = parse_term("right-hand side of comparison");
      return Literal::comparison(std::move(lhs), op, std::move(rhs));
    }
    set_error(tok_, std::string("expected body literal, found ") +
                        describe(tok_));
    return Literal{};
  }

  Atom parse_atom(const char* context) {
    Atom atom;
    if (tok_.kind != Tok::Identifier) {
      set_error(tok_, std::string("expected ") + context +
                          " (a lowercase predicate name), found " +
                          describe(tok_));
      return atom;
    }
    if (tok_.text == "not") {
      set_error(tok_, "'not' is a reserved word and cannot be a predicate");
      return atom;
    }
    atom.predicate = tok_.text;
    advance();
    if (failed_) return atom;
    if (tok_.kind == Tok::LParen) {
      atom.terms = parse_term_list();
    }
    return atom;
  }

  std::vector<Term> parse_term_list() {
    std::vector<Term> terms;
    advance();  // consume '('
    if (failed_) return terms;
    terms.push_back(parse_term("term"));
    if (failed_) return terms;
    while (tok_.kind == Tok::Comma) {
      advance();
      if (failed_) return terms;
      terms.push_back(parse_term("term"));
      if (failed_) return terms;
    }
    expect(Tok::RParen, "')' or ',' in term list");
    return terms;
  }

  Term parse_term(const char* context) {
    switch (tok_.kind) {
      case Tok::Identifier: {
        if (tok_.text == "not") {
          set_error(tok_, "'not' is a reserved word and cannot be a term");
          return Term{};
        }
        Term t = Term::symbol(tok_.text);
        advance();
        if (!failed_ && tok_.kind == Tok::LParen) {
          set_error(tok_, "function terms are outside the supported fragment");
          return Term{};
        }
        return t;
      }
      case Tok::Variable: {
        Term t = Term::variable(tok_.text);
        advance();
        return t;
      }
      case Tok::Integer: {
        Term t = Term::integer(tok_.number);
        advance();
        return t;
      }
      case Tok::String: {
        Term t = Term::string(tok_.text);
        advance();
        return t;
      }
      case Tok::Underscore: {
        Term t = Term::anonymous(++anon_counter_);
        advance();
        return t;
      }
      default:
        set_error(tok_, std::string("expected ") + context + ", found " +
                            describe(tok_));
        return Term{};
    }
  }

  std::optional<WeakAnnotation> parse_weak_annotation() {
    WeakAnnotation weak;
    if (!expect(Tok::LBracket, "'[' introducing weak-constraint weight"))
      return std::nullopt;
    if (tok_.kind != Tok::Integer) {
      set_error(tok_, std::string("expected integer weight, found ") +
                          describe(tok_));
      return std::nullopt;
    }
    weak.weight = tok_.number;
    advance();
    if (failed_) return std::nullopt;
    if (!expect(Tok::At, "'@' between weight and level")) return std::nullopt;
    if (tok_.kind != Tok::Integer) {
      set_error(tok_, std::string("expected integer level, found ") +
                          describe(tok_));
      return std::nullopt;
    }
    weak.level = tok_.number;
    advance();
    if (failed_) return std::nullopt;
    while (tok_.kind == Tok::Comma) {
      advance();
      if (failed_) return std::nullopt;
      weak.tuple.push_back(parse_term("weak-constraint tuple term"));
      if (failed_) return std::nullopt;
    }
    if (!expect(Tok::RBracket, "']' closing weak-constraint annotation"))
      return std::nullopt;
    return weak;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token tok_;
  bool failed_ = false;
  ParseError error_;
  int anon_counter_ = 0;
};

}  // namespace

ParseResult parse_program(std::string_view text) {
  return Parser(text).run();
}

}  // namespace aspforge
