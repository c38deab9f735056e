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

#include <fstream>
#include <sstream>

#include "lpdiag/diagnoser.hpp"
#include "lpdiag/syntax.hpp"

namespace lpdiag {
namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(LPDIAG_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A program with its specification pair and an oracle over them.
struct Fixture {
  Fixture(const std::string& program, const std::string& spec,
          std::map<std::size_t, Truth> script = {})
      : p(parse_program(program)),
        specs(parse_spec_file(spec)),
        human(std::move(script)),
        oracle(specs.corr, specs.comp, p, human) {}

  Program p;
  SpecPair specs;
  ScriptedChannel human;
  Oracle oracle;
};

Fixture even_bug() {
  return Fixture(read_data("even_bug.pl"), read_data("even.spec"));
}

TEST(Incorrectness, EvenBugProofTree) {
  Fixture f = even_bug();
  IncorrectnessResult r = diagnose_incorrect_answer(
      parse_term("even(s(0))"), parse_term("even(s(0))"), f.p, f.oracle);
  ASSERT_EQ(r.outcome, Outcome::kFound) << r.message;
  EXPECT_EQ(r.clause_ordinal, 2u);
  EXPECT_EQ(to_string(r.head), "even(s(0))");
  ASSERT_EQ(r.body.size(), 1u);
  EXPECT_EQ(to_string(r.body[0]), "even(0)");
  EXPECT_EQ(r.tree_nodes, 2u);
  EXPECT_EQ(f.oracle.machine_count(), 2u);
  EXPECT_EQ(f.oracle.human_count(), 0u);
}

TEST(Incorrectness, WrongFactIsLeaf) {
  Fixture f("p(b).\n", "%% corr\np(a).\n%% compl\np(a).\n");
  IncorrectnessResult r =
      diagnose_query_incorrectness(parse_term("p(X)"), f.p, f.oracle);
  ASSERT_EQ(r.outcome, Outcome::kFound) << r.message;
  EXPECT_EQ(r.clause_ordinal, 1u);
  EXPECT_TRUE(r.body.empty());
  EXPECT_EQ(to_string(*r.symptom), "p(b)");
}

TEST(Incorrectness, InsertionSortDescendsToInsert) {
  Fixture f(read_data("isort_bug.pl"), read_data("isort.spec"));
  IncorrectnessResult r = diagnose_incorrect_answer(
      parse_term("isort([2,1],Ys)"), parse_term("isort([2,1],[2,1])"), f.p,
      f.oracle);
  ASSERT_EQ(r.outcome, Outcome::kFound) << r.message;
  EXPECT_EQ(r.clause_ordinal, 4u);
  EXPECT_EQ(to_string(r.head), "insert(2,[1],[2,1])");
  ASSERT_EQ(r.path.size(), 2u);
  EXPECT_EQ(to_string(r.path[0]), "isort([2,1],[2,1])");
  EXPECT_EQ(r.tree_nodes, 5u);
  EXPECT_LE(f.oracle.log().size(), r.tree_nodes);
}

TEST(Incorrectness, SuccessTraceModeMatchesProofTree) {
  for (bool restart : {false, true}) {
    Fixture f = even_bug();
    DiagnosisOptions opts;
    opts.mode = SearchMode::kSuccessTrace;
    opts.restart = restart;
    IncorrectnessResult r = diagnose_incorrect_answer(
        parse_term("even(X)"), parse_term("even(s(0))"), f.p, f.oracle, opts);
    ASSERT_EQ(r.outcome, Outcome::kFound) << r.message;
    EXPECT_EQ(r.clause_ordinal, 2u);
    EXPECT_EQ(to_string(r.head), "even(s(0))");
  }
}

const char* kTwoBugs =
    "p(X) :- q(X), r(X).\n"
    "q(c).\n"
    "q(a).\n"
    "q(b).\n"
    "r(b).\n";
const char* kTwoBugsSpec =
    "%% corr\np(a).\nq(a).\nq(b).\nr(b).\n"
    "%% compl\np(a).\nq(a).\nq(b).\nr(b).\n";

TEST(Incorrectness, SearchTraceMeetsOtherBugFirst) {
  Fixture tree(kTwoBugs, kTwoBugsSpec);
  IncorrectnessResult a = diagnose_incorrect_answer(
      parse_term("p(X)"), parse_term("p(b)"), tree.p, tree.oracle);
  ASSERT_EQ(a.outcome, Outcome::kFound);
  EXPECT_EQ(a.clause_ordinal, 1u);

  for (bool restart : {false, true}) {
    Fixture f(kTwoBugs, kTwoBugsSpec);
    DiagnosisOptions opts;
    opts.mode = SearchMode::kSearchTrace;
    opts.restart = restart;
    IncorrectnessResult r = diagnose_incorrect_answer(
        parse_term("p(X)"), parse_term("p(b)"), f.p, f.oracle, opts);
    ASSERT_EQ(r.outcome, Outcome::kFound) << r.message;
    EXPECT_EQ(r.clause_ordinal, 2u);
    EXPECT_EQ(to_string(r.head), "q(c)");
    EXPECT_TRUE(r.body.empty());
  }
}

TEST(Incorrectness, CorrectAnswerIsNotASymptom) {
  for (SearchMode m : {SearchMode::kProofTree, SearchMode::kSuccessTrace,
                       SearchMode::kSearchTrace}) {
    Fixture f = even_bug();
    DiagnosisOptions opts;
    opts.mode = m;
    IncorrectnessResult r = diagnose_incorrect_answer(
        parse_term("even(X)"), parse_term("even(0)"), f.p, f.oracle, opts);
    EXPECT_EQ(r.outcome, Outcome::kNotASymptom) << mode_name(m);
  }
}

TEST(Incorrectness, AnswerNotComputed) {
  Fixture f = even_bug();
  IncorrectnessResult r = diagnose_incorrect_answer(
      parse_term("even(X)"), parse_term("odd(0)"), f.p, f.oracle);
  EXPECT_EQ(r.outcome, Outcome::kNotASymptom);
}

TEST(Incorrectness, UndecidedWithoutHuman) {
  Fixture f("p(X) :- q(X).\nq(Y).\n", "%% corr\np(a).\nq(a).\n%% compl\n");
  IncorrectnessResult r =
      diagnose_query_incorrectness(parse_term("p(X)"), f.p, f.oracle);
  EXPECT_EQ(r.outcome, Outcome::kUndecided);
  ASSERT_TRUE(f.oracle.unanswered());
  EXPECT_EQ(f.oracle.unanswered()->text(), "correct: p(_G2)");
}

TEST(Incorrectness, ScriptedHumanCompletes) {
  Fixture f("p(X) :- q(X).\nq(Y).\n", "%% corr\np(a).\nq(a).\n%% compl\n",
            {{1, Truth::kNo}, {2, Truth::kNo}});
  IncorrectnessResult r =
      diagnose_query_incorrectness(parse_term("p(X)"), f.p, f.oracle);
  ASSERT_EQ(r.outcome, Outcome::kFound) << r.message;
  EXPECT_EQ(r.clause_ordinal, 2u);
  EXPECT_EQ(f.oracle.human_count(), 2u);
}

TEST(Incorrectness, TruncatedRun) {
  Fixture f("p(X) :- p(X).\np(a).\n", "%% corr\n%% compl\n");
  DiagnosisOptions opts;
  opts.mode = SearchMode::kSearchTrace;
  opts.budget.max_steps = 200;
  IncorrectnessResult r = diagnose_incorrect_answer(
      parse_term("p(X)"), parse_term("p(a)"), f.p, f.oracle, opts);
  EXPECT_EQ(r.outcome, Outcome::kTruncatedTree) << r.message;
}

TEST(Incompleteness, MissingClause) {
  Fixture f(read_data("even_fact.pl"), read_data("even.spec"));
  IncompletenessResult r =
      diagnose_incompleteness(parse_term("even(s(s(0)))"), f.p, f.oracle);
  ASSERT_EQ(r.outcome, Outcome::kFound) << r.message;
  EXPECT_EQ(to_string(r.error_atom), "even(s(s(0)))");
  EXPECT_EQ(to_string(r.procedure), "even/1");
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(to_string(*r.witness), "even(s(s(0)))");
  ASSERT_EQ(r.levels.size(), 1u);
  EXPECT_EQ(r.levels[0].entries, 0u);
}

TEST(Incompleteness, GeneralSymptomRestartsFromWitness) {
  Fixture f(read_data("even_fact.pl"), read_data("even.spec"));
  IncompletenessResult r =
      diagnose_incompleteness(parse_term("even(X)"), f.p, f.oracle);
  ASSERT_EQ(r.outcome, Outcome::kFound) << r.message;
  EXPECT_EQ(to_string(*r.witness), "even(s(s(0)))");
  EXPECT_EQ(to_string(*r.symptom), "even(X)");
}

TEST(Incompleteness, RecursesIntoCallee) {
  Fixture f(read_data("even_wrong.pl"), read_data("even_wrong.spec"));
  IncompletenessResult r =
      diagnose_incompleteness(parse_term("even(s(s(0)))"), f.p, f.oracle);
  ASSERT_EQ(r.outcome, Outcome::kFound) << r.message;
  EXPECT_EQ(to_string(r.error_atom), "wrong(0)");
  EXPECT_EQ(to_string(r.procedure), "wrong/1");
  EXPECT_EQ(to_string(*r.witness), "wrong(0)");
  ASSERT_EQ(r.path.size(), 2u);
  ASSERT_EQ(r.levels.size(), 2u);
  EXPECT_EQ(r.levels[0].entries, 1u);
  for (const LevelStats& l : r.levels) EXPECT_LE(l.questions, l.entries + 1);
}

TEST(Incompleteness, CompleteProgram) {
  Fixture f("even(0).\neven(s(s(X))) :- even(X).\n", read_data("even.spec"));
  IncompletenessResult r =
      diagnose_incompleteness(parse_term("even(0)"), f.p, f.oracle);
  EXPECT_EQ(r.outcome, Outcome::kNotASymptom);
}

TEST(Incompleteness, Truncated) {
  Fixture f("p :- p.\n", "%% corr\np.\n%% compl\np.\n");
  Budget b;
  b.max_steps = 100;
  IncompletenessResult r = diagnose_incompleteness(parse_term("p"), f.p,
                                                   f.oracle, b);
  EXPECT_EQ(r.outcome, Outcome::kTruncatedTree);
}

TEST(Modes, Names) {
  for (SearchMode m : {SearchMode::kProofTree, SearchMode::kSuccessTrace,
                       SearchMode::kSearchTrace}) {
    EXPECT_EQ(parse_mode(mode_name(m)), m);
  }
  EXPECT_FALSE(parse_mode("bfs"));
  EXPECT_STREQ(outcome_name(Outcome::kTruncatedTree), "truncated-tree");
}

}  // namespace
}  // namespace lpdiag
