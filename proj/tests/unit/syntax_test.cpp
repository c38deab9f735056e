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

#include <gtest/gtest.h>

#include "generator.hpp"
#include "lpdiag/syntax.hpp"

namespace lpdiag {
namespace {

TEST(Parse, Fact) {
  Program p = parse_program("app([],L,L).");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_TRUE(p.clause(1).is_fact());
  EXPECT_EQ(to_string(p.clause(1).head), "app([],L,L)");
}

TEST(Parse, RuleBody) {
  Program p = parse_program("p :- q, r.");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.clause(1).body.size(), 2u);
  EXPECT_EQ(to_string(p.clause(1)), "p :- q, r.");
}

TEST(Parse, UnclosedArgumentList) {
  try {
    parse_program("p(X :- q.");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 5u);
    EXPECT_NE(e.expected().find("')'"), std::string::npos) << e.expected();
  }
}

TEST(Parse, ErrorLineNumbers) {
  try {
    parse_program("p.\n% comment\nq(a.\n");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Parse, ListSugar) {
  Term t = parse_term("[a,b|T]");
  EXPECT_EQ(t.name(), ".");
  EXPECT_EQ(t.arg(0), Term::constant("a"));
  EXPECT_EQ(t.arg(1).arg(1), Term::variable("T"));
  EXPECT_EQ(parse_term("[]"), Term::constant("[]"));
  EXPECT_EQ(to_string(parse_term("[a|[b|[]]]")), "[a,b]");
}

TEST(Parse, CommentsAndOrdinals) {
  Program p = parse_program(
      "% even numbers\n"
      "even(0).   % base\n"
      "even(s(s(X))) :- even(X).\n");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.clause(2).ordinal, 2u);
  EXPECT_EQ(p.clauses_for(parse_term("even(A)")).size(), 2u);
}

TEST(Parse, Query) {
  Query q = parse_query("?- app(X,Y,[1]), p.");
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(to_string(q), "app(X,Y,[1]), p");
  EXPECT_THROW(parse_query(""), ParseError);
}

TEST(Parse, AnonymousVariablesAreDistinct) {
  Term t = parse_term("f(_,_)");
  EXPECT_FALSE(t.arg(0) == t.arg(1));
}

TEST(Parse, RejectsTrailingInput) {
  EXPECT_THROW(parse_term("f(a) g"), ParseError);
  EXPECT_THROW(parse_program("p :- ."), ParseError);
  EXPECT_THROW(parse_program("X."), ParseError);
}

void expect_same(const Program& a, const Program& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 1; i <= a.size(); ++i) {
    EXPECT_EQ(a.clause(i).head, b.clause(i).head);
    EXPECT_EQ(a.clause(i).body, b.clause(i).body);
  }
}

TEST(Parse, PrintThenParseIsIdentity) {
  expect_same(parse_program(to_string(parse_program(
                  "app([],L,L).\napp([H|T],L,[H|R]) :- app(T,L,R).\n"
                  "p([a,[b],c|T],s(0)) :- q([]), r.\n"))),
              parse_program("app([],L,L).\napp([H|T],L,[H|R]) :- app(T,L,R).\n"
                            "p([a,[b],c|T],s(0)) :- q([]), r.\n"));
  testing::Generator gen(3);
  for (int i = 0; i < 300; ++i) {
    Program p = gen.program(6, 3);
    expect_same(parse_program(to_string(p)), p);
  }
}

}  // namespace
}  // namespace lpdiag
