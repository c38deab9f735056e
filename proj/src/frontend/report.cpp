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

#include "lpdiag/frontend/report.hpp"

#include "lpdiag/frontend/json_io.hpp"
#include "lpdiag/syntax.hpp"

namespace lpdiag {

namespace {

std::string list_text(const std::vector<Term>& ts) {
  std::string out = "[";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ", ";
    out += to_string(ts[i]);
  }
  return out + "]";
}

void tree_lines(const ProofTree& t, const std::string& prefix, bool last,
                bool root, std::string& out) {
  if (root) {
    out += to_string(t.atom);
  } else {
    out += prefix + (last ? "`-- " : "+-- ") + to_string(t.atom);
  }
  out += "  [clause " + std::to_string(t.clause_ordinal) + "]\n";
  std::string inner = root ? "" : prefix + (last ? "    " : "|   ");
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    tree_lines(t.children[i], inner, i + 1 == t.children.size(), false, out);
  }
}

}  // namespace

std::string render_answers(const SolveResult& r) {
  std::string out;
  for (const Answer& a : r.answers) {
    std::vector<std::string> vars;
    for (const Term& t : a.query) collect_variables(t, vars);
    if (vars.empty()) {
      out += "true\n";
      continue;
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (i) out += ", ";
      out += vars[i] + " = " + to_string(a.binding.apply(Term::variable(vars[i])));
    }
    out += "\n";
  }
  if (r.answers.empty() && !r.stats.truncated) out += "false\n";
  if (r.stats.truncated) out += "% truncated: " + r.stats.truncation_reason + "\n";
  return out;
}

std::string render_proof_tree(const ProofTree& t) {
  std::string out;
  tree_lines(t, "", true, true, out);
  return out;
}

std::string render_success_trace(const SuccessTrace& t) {
  std::string out = to_string(t.for_atom) + "  [clause " +
                    std::to_string(t.clause_ordinal) + "]\n";
  for (const Term& a : t.answers) out += "  " + to_string(a) + "\n";
  return out;
}

std::string render_search_trace(const TopLevelTrace& t) {
  std::string out = to_string(t.for_atom) + " answers " + list_text(t.answers) + "\n";
  for (const TraceEntry& e : t.entries) {
    out += "  " + std::to_string(e.invocation) + " " + to_string(e.call) +
           " answers " + list_text(e.answers) + "\n";
  }
  if (!t.complete()) {
    out += "% truncated: " + t.stats.truncation_reason + "\n";
  }
  return out;
}

std::string render_questions(const Oracle& oracle) {
  std::string out = "questions: " + std::to_string(oracle.log().size()) +
                    " (machine " + std::to_string(oracle.machine_count()) +
                    ", human " + std::to_string(oracle.human_count()) + ")\n";
  std::size_t n = 0;
  for (const Verdict& v : oracle.log()) {
    out += "  " + std::to_string(++n) + ". " + question_text(v) + " -> " +
           truth_name(v.value) + " (" + source_name(v.source) + ")\n";
  }
  return out;
}

std::string render_incorrectness(const IncorrectnessResult& r,
                                 const Program& p, const Oracle& oracle) {
  std::string out;
  if (r.symptom) out += "symptom: " + to_string(*r.symptom) + "\n";
  if (r.outcome == Outcome::kFound) {
    out += "incorrect clause " + std::to_string(r.clause_ordinal) + ": " +
           to_string(p.clause(r.clause_ordinal)) + "\n";
    out += "error instance: " +
           to_string(Clause{r.head, r.body, r.clause_ordinal}) + "\n";
  } else {
    out += "outcome: " + std::string(outcome_name(r.outcome)) + "\n";
    if (!r.message.empty()) out += "message: " + r.message + "\n";
  }
  return out + render_questions(oracle);
}

std::string render_incompleteness(const IncompletenessResult& r,
                                  const Oracle& oracle) {
  std::string out;
  if (r.symptom) out += "symptom: " + to_string(*r.symptom) + "\n";
  if (r.outcome == Outcome::kFound) {
    out += "incompleteness error: " + to_string(r.error_atom) + "\n";
    out += "procedure: " + to_string(r.procedure) + "\n";
    if (r.witness) out += "uncovered witness: " + to_string(*r.witness) + "\n";
  } else {
    out += "outcome: " + std::string(outcome_name(r.outcome)) + "\n";
    if (!r.message.empty()) out += "message: " + r.message + "\n";
  }
  return out + render_questions(oracle);
}

}  // namespace lpdiag
