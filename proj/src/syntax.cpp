/*
 * Copyright 2026 The lpdiag Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lpdiag/syntax.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace lpdiag {

ParseError::ParseError(std::size_t line, std::size_t column,
                       std::string expected, std::string found)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": expected " + expected + " but found " + found),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok {
  kIdent,
  kVar,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
  kBar,
  kNeck,
  kQueryMark,
  kEnd,
  kEof
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::kEof:
      return "end of input";
    case Tok::kIdent:
    case Tok::kVar:
      return "'" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_layout();
      std::size_t line = line_, col = col_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::kEof, "", line, col});
        return out;
      }
      char c = text_[pos_];
      auto single = [&](Tok k) {
        advance();
        out.push_back({k, std::string(1, c), line, col});
      };
      if (std::islower(static_cast<unsigned char>(c))) {
        out.push_back({Tok::kIdent, word(), line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          num += text_[pos_];
          advance();
        }
        out.push_back({Tok::kIdent, num, line, col});
      } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back({Tok::kVar, word(), line, col});
      } else if (c == '(') {
        single(Tok::kLParen);
      } else if (c == ')') {
        single(Tok::kRParen);
      } else if (c == '[') {
        single(Tok::kLBracket);
      } else if (c == ']') {
        single(Tok::kRBracket);
      } else if (c == ',') {
        single(Tok::kComma);
      } else if (c == '|') {
        single(Tok::kBar);
      } else if (c == '.') {
        single(Tok::kEnd);
      } else if (c == ':' && peek(1) == '-') {
        advance();
        advance();
        out.push_back({Tok::kNeck, ":-", line, col});
      } else if (c == '?' && peek(1) == '-') {
        advance();
        advance();
        out.push_back({Tok::kQueryMark, "?-", line, col});
      } else {
        throw ParseError(line, col, "a term, ',', '.', or ':-'",
                         "'" + std::string(1, c) + "'");
      }
    }
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_layout() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string word() {
    std::string w;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      w += text_[pos_];
      advance();
    }
    return w;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  bool at(Tok k) const { return tokens_[pos_].kind == k; }
  const Token& current() const { return tokens_[pos_]; }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(what);
    return tokens_[pos_++];
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = current();
    throw ParseError(t.line, t.column, what, describe(t));
  }

  Term term() {
    const Token& t = current();
    switch (t.kind) {
      case Tok::kVar: {
        ++pos_;
        if (t.text == "_") return Term::variable("_" + std::to_string(++anon_));
        return Term::variable(t.text);
      }
      case Tok::kIdent: {
        std::string name = t.text;
        ++pos_;
        if (!at(Tok::kLParen)) return Term::constant(std::move(name));
        ++pos_;
        std::vector<Term> args;
        args.push_back(term());
        while (at(Tok::kComma)) {
          ++pos_;
          args.push_back(term());
        }
        expect(Tok::kRParen, "',' or ')'");
        return Term::compound(std::move(name), std::move(args));
      }
      case Tok::kLBracket: {
        ++pos_;
        if (at(Tok::kRBracket)) {
          ++pos_;
          return Term::constant(std::string(kNil));
        }
        std::vector<Term> items;
        items.push_back(term());
        while (at(Tok::kComma)) {
          ++pos_;
          items.push_back(term());
        }
        std::optional<Term> tail;
        if (at(Tok::kBar)) {
          ++pos_;
          tail = term();
        }
        expect(Tok::kRBracket, "',', '|' or ']'");
        return make_list(items, tail);
      }
      default:
        fail("a term");
    }
  }

  Term atom() {
    const Token& t = current();
    if (t.kind != Tok::kIdent) fail("an atom");
    return term();
  }

  Clause clause() {
    anon_ = 0;
    Clause c{atom(), {}, 0};
    if (at(Tok::kNeck)) {
      ++pos_;
      c.body.push_back(atom());
      while (at(Tok::kComma)) {
        ++pos_;
        c.body.push_back(atom());
      }
    }
    expect(Tok::kEnd, at(Tok::kNeck) || !c.body.empty() ? "',' or '.'"
                                                        : "':-' or '.'");
    return c;
  }

  Program program() {
    Program p;
    while (!at(Tok::kEof)) p.add(clause());
    return p;
  }

  Query query() {
    if (at(Tok::kQueryMark)) ++pos_;
    Query q;
    q.push_back(atom());
    while (at(Tok::kComma)) {
      ++pos_;
      q.push_back(atom());
    }
    if (at(Tok::kEnd)) ++pos_;
    expect(Tok::kEof, "',' or end of query");
    return q;
  }

  Term lone_term() {
    Term t = term();
    if (at(Tok::kEnd)) ++pos_;
    expect(Tok::kEof, "end of term");
    return t;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t anon_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

Clause parse_clause(std::string_view text) {
  Parser p(text);
  Clause c = p.clause();
  p.expect(Tok::kEof, "end of clause");
  c.ordinal = 1;
  return c;
}

Query parse_query(std::string_view text) { return Parser(text).query(); }

Term parse_term(std::string_view text) { return Parser(text).lone_term(); }

std::string to_string(const Clause& clause) {
  std::string out = to_string(clause.head);
  if (!clause.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < clause.body.size(); ++i) {
      if (i) out += ", ";
      out += to_string(clause.body[i]);
    }
  }
  out += ".";
  return out;
}

std::string to_string(const Program& program) {
  std::string out;
  for (const Clause& c : program.clauses()) {
    out += to_string(c);
    out += "\n";
  }
  return out;
}

std::string to_string(const Query& query) {
  std::string out;
  for (std::size_t i = 0; i < query.size(); ++i) {
    if (i) out += ", ";
    out += to_string(query[i]);
  }
  return out;
}

}  // namespace lpdiag
