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

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "generator.hpp"
#include "lpdiag/boxtrace.hpp"
#include "lpdiag/diagnoser.hpp"
#include "lpdiag/engine.hpp"
#include "lpdiag/oracle.hpp"
#include "lpdiag/syntax.hpp"

namespace lpdiag {
namespace {

using Clock = std::chrono::steady_clock;
using testing::Generator;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& name, const Outcome& o) {
  if (!o.pass) ++failures;
  std::cout << "criterion " << n << " " << (o.pass ? "PASS" : "FAIL") << "  "
            << name << ": " << o.detail << "\n";
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

Budget run_budget() {
  Budget b;
  b.max_steps = 3000;
  b.max_depth = 60;
  return b;
}

std::vector<SolveResult> engine_runs;

Outcome engine_fixpoint() {
  auto start = Clock::now();
  Generator gen(101);
  std::vector<Term> atoms = testing::ground_atoms(4);
  std::size_t compared = 0, succeeded = 0, truncated = 0, mismatches = 0;
  std::string first;
  for (int i = 0; i < 100; ++i) {
    Program p = gen.program(6, 4);
    std::set<Term> model = tp_oracle(p, 12, 400, testing::test_signature());
    for (const Term& a : atoms) {
      SolveResult r = solve({a}, p, run_budget());
      if (r.stats.truncated) {
        ++truncated;
      } else {
        ++compared;
        if (!r.answers.empty()) ++succeeded;
        if (r.answers.empty() == (model.count(a) > 0)) {
          if (mismatches++ == 0) first = to_string(p) + " on " + to_string(a);
        }
      }
      engine_runs.push_back(std::move(r));
    }
  }
  double secs = seconds_since(start);
  Outcome o;
  o.pass = mismatches == 0 && compared > 0 && secs < 60.0;
  o.detail = "100 programs, " + std::to_string(compared) + " ground atoms compared (" +
             std::to_string(succeeded) + " provable), " +
             std::to_string(truncated) + " truncated runs skipped, " +
             std::to_string(mismatches) + " mismatches, " + std::to_string(secs) +
             " s";
  if (!first.empty()) o.detail += "; first mismatch: " + first;
  return o;
}

Outcome event_grammar() {
  std::size_t streams = 0, events = 0, violations = 0;
  std::string first;
  for (const SolveResult& r : engine_runs) {
    ++streams;
    events += r.events.size();
    if (auto v = events_wellformed(r.events, !r.stats.truncated)) {
      if (violations++ == 0) first = v->message;
    }
  }
  Outcome o;
  o.pass = violations == 0 && streams > 0;
  o.detail = std::to_string(streams) + " streams, " + std::to_string(events) +
             " events, " + std::to_string(violations) + " violations";
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

std::vector<std::string> texts(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const Term& t : ts) out.push_back(to_string(t));
  return out;
}

Outcome dual_construction() {
  Generator gen(202);
  Budget b = run_budget();
  b.max_steps = 2000;
  b.max_depth = 40;
  std::size_t checked = 0, mismatches = 0;
  std::string first;
  for (int i = 0; i < 200; ++i) {
    Program p = gen.program();
    SolveResult r = solve({gen.query(2)}, p, b);
    std::string text = render_events(r.events);
    for (std::size_t id = 0; id < r.tree.size(); ++id) {
      if (!r.tree.node(id).query.empty()) continue;
      Derivation d = r.tree.derivation_to(id);
      for (std::size_t pos = 0; pos + 1 < d.size(); ++pos) {
        Subderivation s = subderivation_for(d, pos);
        if (!s.closed()) continue;
        ++checked;
        auto exit = exit_event_for(r.events, d, s);
        bool same = exit && texts(reconstruct_success_trace(text, *exit)) ==
                                texts(success_trace_for(d, s).answers);
        if (!same && mismatches++ == 0) first = to_string(p);
      }
    }
  }
  Outcome o;
  o.pass = mismatches == 0 && checked > 0;
  o.detail = "200 runs, " + std::to_string(checked) + " closed subderivations, " +
             std::to_string(mismatches) + " mismatches";
  if (!first.empty()) o.detail += "; first in: " + first;
  return o;
}

struct Bench {
  std::size_t cases = 0;
  std::size_t found = 0;
  std::size_t undecided = 0;
  std::size_t other = 0;
  std::size_t failed = 0;
  std::size_t bound_violations = 0;
  std::string first;
};

Bench incorrectness_bench;
Bench incompleteness_bench;

constexpr int kModelDepth = 8;

Specification spec_of(Role role, const Program& p) {
  return Specification(role, p, Bounds{kModelDepth, 100});
}

bool error_instance_exists(const Clause& c, const std::set<Term>& model) {
  bool found = false;
  testing::for_each_ground_clause(c, 4, [&](const Clause& g) {
    if (model.count(g.head)) return true;
    for (const Term& b : g.body) {
      if (!model.count(b)) return true;
    }
    found = true;
    return false;
  });
  return found;
}

Outcome incorrectness_soundness() {
  Generator gen(303);
  std::vector<Term> atoms = testing::ground_atoms(2);
  Bench& bench = incorrectness_bench;
  for (int attempt = 0; bench.cases < 60 && attempt < 5000; ++attempt) {
    Program intended = gen.range_restricted();
    std::optional<Program> buggy = gen.mutate_atom(intended);
    if (!buggy) continue;
    std::set<Term> model =
        tp_oracle(intended, kModelDepth, 400, testing::test_signature());
    std::optional<Term> symptom;
    for (const Term& a : atoms) {
      if (model.count(a)) continue;
      SolveResult r = solve({a}, *buggy, run_budget());
      if (!r.stats.truncated && !r.answers.empty()) {
        symptom = a;
        break;
      }
    }
    if (!symptom) continue;
    ++bench.cases;
    Specification corr = spec_of(Role::kCorr, intended);
    Specification comp = spec_of(Role::kCompl, intended);
    ClosedChannel human;
    Oracle oracle(corr, comp, *buggy, human);
    DiagnosisOptions opts;
    opts.budget = run_budget();
    IncorrectnessResult r =
        diagnose_incorrect_answer(*symptom, *symptom, *buggy, oracle, opts);
    if (oracle.log().size() > r.tree_nodes && r.tree_nodes > 0) {
      ++bench.bound_violations;
    }
    if (r.outcome == lpdiag::Outcome::kUndecided) {
      ++bench.undecided;
      continue;
    }
    if (r.outcome != lpdiag::Outcome::kFound) {
      ++bench.other;
      continue;
    }
    ++bench.found;
    const Clause& c = buggy->clauses().at(r.clause_ordinal - 1);
    if (!error_instance_exists(c, model)) {
      if (bench.failed++ == 0) {
        bench.first = to_string(*buggy) + " symptom " + to_string(*symptom);
      }
    }
  }
  Outcome o;
  o.pass = bench.cases >= 50 && bench.failed == 0 && bench.other == 0;
  o.detail = std::to_string(bench.cases) + " mutants, " + std::to_string(bench.found) +
             " clauses reported, " + std::to_string(bench.failed) +
             " without a yes-body/no-head instance, " +
             std::to_string(bench.undecided) + " undecided (excluded), " +
             std::to_string(bench.other) + " other outcomes";
  if (!bench.first.empty()) o.detail += "; first: " + bench.first;
  return o;
}

bool uncovered(const Term& witness, const Program& p, const std::set<Term>& model) {
  for (const Clause& c : p.clauses()) {
    auto s = unify(c.head, witness);
    if (!s) continue;
    Clause inst{s->apply(c.head), s->apply(c.body), c.ordinal};
    bool covers = false;
    testing::for_each_ground_clause(inst, kModelDepth, [&](const Clause& g) {
      for (const Term& b : g.body) {
        if (!model.count(b)) return true;
      }
      covers = true;
      return false;
    });
    if (covers) return false;
  }
  return true;
}

Outcome incompleteness_soundness() {
  Generator gen(404);
  std::vector<Term> atoms = testing::ground_atoms(2);
  Bench& bench = incompleteness_bench;
  for (int attempt = 0; bench.cases < 60 && attempt < 5000; ++attempt) {
    Program intended = gen.range_restricted();
    std::vector<Clause> kept = intended.clauses();
    kept.erase(kept.begin() + gen.uniform(0, static_cast<int>(kept.size()) - 1));
    Program buggy(kept);
    std::set<Term> model =
        tp_oracle(intended, kModelDepth, 400, testing::test_signature());
    std::optional<Term> symptom;
    for (const Term& a : atoms) {
      if (!model.count(a)) continue;
      SolveResult r = solve({a}, buggy, run_budget());
      if (!r.stats.truncated && r.answers.empty()) {
        symptom = a;
        break;
      }
    }
    if (!symptom) continue;
    ++bench.cases;
    Specification corr = spec_of(Role::kCorr, intended);
    Specification comp = spec_of(Role::kCompl, intended);
    ClosedChannel human;
    Oracle oracle(corr, comp, buggy, human);
    IncompletenessResult r =
        diagnose_incompleteness(*symptom, buggy, oracle, run_budget());
    for (const LevelStats& l : r.levels) {
      if (l.questions > l.entries) ++bench.bound_violations;
    }
    if (r.outcome == lpdiag::Outcome::kUndecided) {
      ++bench.undecided;
      continue;
    }
    bool ok = r.outcome == lpdiag::Outcome::kFound && r.witness &&
              model.count(*r.witness) && uncovered(*r.witness, buggy, model);
    if (ok) {
      ++bench.found;
    } else if (bench.failed++ == 0) {
      bench.first = to_string(buggy) + " symptom " + to_string(*symptom) + " " +
                    outcome_name(r.outcome) + " " + r.message;
    }
  }
  Outcome o;
  o.pass = bench.cases >= 50 && bench.failed == 0 && bench.undecided == 0;
  o.detail = std::to_string(bench.cases) + " deletion mutants, " +
             std::to_string(bench.found) + " uncovered witnesses in the intended model, " +
             std::to_string(bench.failed) + " failures, " +
             std::to_string(bench.undecided) + " undecided";
  if (!bench.first.empty()) o.detail += "; first: " + bench.first;
  return o;
}

std::string read_path(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run_cli(const std::string& args) {
  std::string cmd = "cd '" LPDIAG_TEST_DATA "' && '" LPDIAG_CLI "' " + args + " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

Outcome desk_example() {
  struct Case {
    const char* golden;
    const char* args;
  };
  const Case cases[] = {
      {"diagnose_corr_even.out",
       "diagnose corr even_bug.pl --spec even.spec -q 'even(s(0))' "
       "--answers even_answers.json"},
      {"diagnose_compl_even.out",
       "diagnose compl even_fact.pl --spec even.spec -q 'even(s(s(0)))'"},
  };
  Outcome o;
  std::string matched;
  for (const Case& c : cases) {
    bool same = run_cli(c.args) == read_path(std::string(LPDIAG_GOLDEN) + "/" + c.golden);
    o.pass = o.pass && same;
    matched += std::string(c.golden) + (same ? " matches" : " differs") + ", ";
  }

  SpecPair specs = parse_spec_file(read_path(LPDIAG_TEST_DATA "/even.spec"));
  Program bug = parse_program(read_path(LPDIAG_TEST_DATA "/even_bug.pl"));
  ClosedChannel human;
  Oracle corr_oracle(specs.corr, specs.comp, bug, human);
  IncorrectnessResult ir =
      diagnose_query_incorrectness(parse_term("even(s(0))"), bug, corr_oracle);
  bool corr_ok = ir.outcome == lpdiag::Outcome::kFound && ir.clause_ordinal == 2 &&
                 to_string(ir.head) == "even(s(0))" && ir.body.size() == 1 &&
                 to_string(ir.body[0]) == "even(0)" &&
                 corr_oracle.machine_count() <= 2 && corr_oracle.human_count() == 0;

  Program fact = parse_program(read_path(LPDIAG_TEST_DATA "/even_fact.pl"));
  Oracle compl_oracle(specs.corr, specs.comp, fact, human);
  IncompletenessResult cr =
      diagnose_incompleteness(parse_term("even(s(s(0)))"), fact, compl_oracle);
  bool compl_ok = cr.outcome == lpdiag::Outcome::kFound &&
                  cr.procedure.name == "even" && cr.procedure.arity == 1 &&
                  cr.witness && to_string(*cr.witness) == "even(s(s(0)))";
  o.pass = o.pass && corr_ok && compl_ok;
  o.detail = matched + "corr clause " + std::to_string(ir.clause_ordinal) + " with " +
             std::to_string(corr_oracle.machine_count()) + " machine questions" +
             (corr_ok ? "" : " (unexpected)") + ", compl witness " +
             (cr.witness ? to_string(*cr.witness) : "none") +
             (compl_ok ? "" : " (unexpected)");
  return o;
}

Outcome question_bounds() {
  Outcome o;
  std::size_t cases = incorrectness_bench.cases + incompleteness_bench.cases;
  std::size_t violations =
      incorrectness_bench.bound_violations + incompleteness_bench.bound_violations;
  o.pass = violations == 0 && cases > 0;
  o.detail = std::to_string(incorrectness_bench.cases) + " incorrectness and " +
             std::to_string(incompleteness_bench.cases) + " incompleteness sessions, " +
             std::to_string(violations) + " over the bound";
  return o;
}

}  // namespace
}  // namespace lpdiag

int main() {
  using namespace lpdiag;
  report(1, "engine agrees with the bounded fixpoint", engine_fixpoint());
  report(2, "event grammar well-formed", event_grammar());
  report(3, "dual success-trace construction", dual_construction());
  report(4, "incorrectness soundness", incorrectness_soundness());
  report(5, "incompleteness soundness", incompleteness_soundness());
  report(6, "even desk example", desk_example());
  report(7, "question-count bounds", question_bounds());
  return failures == 0 ? 0 : 1;
}
