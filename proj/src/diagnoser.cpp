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

#include "lpdiag/diagnoser.hpp"

#include <stdexcept>

namespace lpdiag {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kFound:
      return "found";
    case Outcome::kUndecided:
      return "undecided";
    case Outcome::kNotASymptom:
      return "not-a-symptom";
    case Outcome::kTruncatedTree:
      return "truncated-tree";
  }
  return "?";
}

const char* mode_name(SearchMode m) {
  switch (m) {
    case SearchMode::kProofTree:
      return "tree";
    case SearchMode::kSuccessTrace:
      return "alg4";
    case SearchMode::kSearchTrace:
      return "alg5";
  }
  return "?";
}

std::optional<SearchMode> parse_mode(std::string_view text) {
  if (text == "tree") return SearchMode::kProofTree;
  if (text == "alg4") return SearchMode::kSuccessTrace;
  if (text == "alg5") return SearchMode::kSearchTrace;
  return std::nullopt;
}

namespace {

// Ends a search that cannot go on.
struct Stop {
  Outcome outcome;
  std::string message;
};

std::string undecided_message(const Oracle& oracle, const Term& atom) {
  if (oracle.unanswered()) {
    return "no verdict for question " +
           std::to_string(oracle.unanswered()->seq) + ": " +
           oracle.unanswered()->text();
  }
  return "verdict unknown for " + to_string(atom);
}

// Judges `atom`; a missing verdict stops the search.
bool incorrect(Oracle& oracle, const Term& atom, const std::string& context) {
  Verdict v;
  try {
    v = oracle.judge_correct(atom, context);
  } catch (const ChannelClosed&) {
    throw Stop{Outcome::kUndecided, undecided_message(oracle, atom)};
  }
  if (v.value == Truth::kUnknown) {
    throw Stop{Outcome::kUndecided, undecided_message(oracle, atom)};
  }
  return v.value == Truth::kNo;
}

std::string path_context(const std::vector<Term>& path, const Term& atom) {
  std::string out;
  for (const Term& t : path) out += to_string(t) + " > ";
  return out + to_string(atom);
}

struct Located {
  SolveResult run;
  std::size_t index = 0;

  const Answer& answer() const { return run.answers[index]; }
};

// Runs `atom` until it computes a variant of `answer`.
Located locate(const Term& atom, const Term& answer, const Program& p,
               const Budget& budget) {
  if (!is_instance_of(answer, atom)) {
    throw Stop{Outcome::kNotASymptom,
               to_string(answer) + " is not an instance of " + to_string(atom)};
  }
  Located loc;
  loc.run = solve({atom}, p, budget, [&](const Answer& a) {
    return !is_variant(a.atom(), answer);
  });
  for (std::size_t i = 0; i < loc.run.answers.size(); ++i) {
    if (is_variant(loc.run.answers[i].atom(), answer)) {
      loc.index = i;
      return loc;
    }
  }
  if (loc.run.stats.truncated) {
    throw Stop{Outcome::kTruncatedTree,
               "budget exhausted (" + loc.run.stats.truncation_reason +
                   ") before " + to_string(answer) + " was computed"};
  }
  throw Stop{Outcome::kNotASymptom,
             to_string(answer) + " is not a computed answer for " +
                 to_string(atom)};
}

void fill_instance(IncorrectnessResult& r, const ProofTree& node) {
  r.outcome = Outcome::kFound;
  r.clause_ordinal = node.clause_ordinal;
  r.head = node.atom;
  r.body.clear();
  for (const ProofTree& c : node.children) r.body.push_back(c.atom);
}

IncorrectnessResult by_success_trace(const Term& atom, const Term& answer,
                                     const Program& p, Oracle& oracle,
                                     const DiagnosisOptions& opts) {
  IncorrectnessResult r;
  r.symptom = answer;
  Located loc = locate(atom, answer, p, opts.budget);
  Derivation d = loc.run.derivation_for(loc.answer());
  Subderivation sub = subderivation_for(d, 0);
  if (!incorrect(oracle, *sub.answer, to_string(*sub.answer))) {
    throw Stop{Outcome::kNotASymptom, to_string(answer) + " is correct"};
  }
  r.path.push_back(*sub.answer);
  for (;;) {
    bool descended = false;
    for (const TopLevelCall& c : top_level_calls(d, sub)) {
      const Term& b = *c.sub.answer;
      if (!incorrect(oracle, b, path_context(r.path, b))) continue;
      r.path.push_back(b);
      if (opts.restart) {
        loc = locate(b, b, p, opts.budget);
        d = loc.run.derivation_for(loc.answer());
        sub = subderivation_for(d, 0);
      } else {
        sub = c.sub;
      }
      descended = true;
      break;
    }
    if (!descended) break;
  }
  fill_instance(r, proof_tree_for(d, sub));
  return r;
}

std::size_t call_index(const std::vector<BoxEvent>& events, int invocation) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].port == Port::kCall && events[i].invocation == invocation) {
      return i;
    }
  }
  throw std::logic_error("no Call for invocation " +
                         std::to_string(invocation));
}

IncorrectnessResult by_search_trace(const Term& atom, const Term& answer,
                                    const Program& p, Oracle& oracle,
                                    const DiagnosisOptions& opts) {
  IncorrectnessResult r;
  r.symptom = answer;
  Located loc = locate(atom, answer, p, opts.budget);
  std::size_t target = loc.answer().event_count - 1;
  std::size_t call = call_index(loc.run.events, loc.run.events[target].invocation);
  const Term root = loc.run.events[target].atom;
  if (!incorrect(oracle, root, to_string(root))) {
    throw Stop{Outcome::kNotASymptom, to_string(answer) + " is correct"};
  }
  r.path.push_back(root);
  for (;;) {
    const std::vector<BoxEvent>& events = loc.run.events;
    int inner = events[target].depth + 1;
    bool moved = false;
    for (std::size_t i = call + 1; i < target; ++i) {
      const BoxEvent& e = events[i];
      if (e.port != Port::kExit || e.depth != inner) continue;
      if (!incorrect(oracle, e.atom, path_context(r.path, e.atom))) continue;
      r.path.push_back(e.atom);
      if (opts.restart) {
        Term b = e.atom;
        loc = locate(b, b, p, opts.budget);
        target = loc.answer().event_count - 1;
        call = call_index(loc.run.events, loc.run.events[target].invocation);
      } else {
        target = i;
        call = call_index(events, e.invocation);
      }
      moved = true;
      break;
    }
    if (!moved) break;
  }
  const BoxEvent& exit = loc.run.events[target];
  Derivation d = loc.run.tree.derivation_to(exit.node);
  std::size_t call_node = loc.run.events[call].node;
  std::size_t pos = 0;
  while (d.nodes[pos] != call_node) ++pos;
  fill_instance(r, proof_tree_for(d, subderivation_for(d, pos)));
  return r;
}

}  // namespace

IncorrectnessResult diagnose_incorrectness(const ProofTree& tree,
                                           Oracle& oracle) {
  IncorrectnessResult r;
  r.symptom = tree.atom;
  r.tree_nodes = tree.size();
  try {
    if (!incorrect(oracle, tree.atom, to_string(tree.atom))) {
      r.outcome = Outcome::kNotASymptom;
      r.message = to_string(tree.atom) + " is correct";
      return r;
    }
    r.path.push_back(tree.atom);
    const ProofTree* node = &tree;
    for (;;) {
      const ProofTree* next = nullptr;
      for (const ProofTree& c : node->children) {
        if (incorrect(oracle, c.atom, path_context(r.path, c.atom))) {
          next = &c;
          break;
        }
      }
      if (!next) break;
      node = next;
      r.path.push_back(node->atom);
    }
    fill_instance(r, *node);
  } catch (const Stop& s) {
    r.outcome = s.outcome;
    r.message = s.message;
  }
  return r;
}

IncorrectnessResult diagnose_incorrect_answer(const Term& atom,
                                              const Term& answer,
                                              const Program& p, Oracle& oracle,
                                              const DiagnosisOptions& opts) {
  try {
    switch (opts.mode) {
      case SearchMode::kProofTree: {
        Located loc = locate(atom, answer, p, opts.budget);
        Derivation d = loc.run.derivation_for(loc.answer());
        IncorrectnessResult r =
            diagnose_incorrectness(proof_tree_for(d, subderivation_for(d, 0)),
                                   oracle);
        r.symptom = answer;
        return r;
      }
      case SearchMode::kSuccessTrace:
        return by_success_trace(atom, answer, p, oracle, opts);
      case SearchMode::kSearchTrace:
        return by_search_trace(atom, answer, p, oracle, opts);
    }
  } catch (const Stop& s) {
    IncorrectnessResult r;
    r.symptom = answer;
    r.outcome = s.outcome;
    r.message = s.message;
    return r;
  }
  return {};
}

IncorrectnessResult diagnose_query_incorrectness(const Term& atom,
                                                 const Program& p,
                                                 Oracle& oracle,
                                                 const DiagnosisOptions& opts) {
  std::optional<Term> symptom;
  IncorrectnessResult r;
  try {
    SolveResult run = solve({atom}, p, opts.budget, [&](const Answer& a) {
      if (!incorrect(oracle, a.atom(), to_string(a.atom()))) return true;
      symptom = a.atom();
      return false;
    });
    if (!symptom) {
      if (run.stats.truncated) {
        r.outcome = Outcome::kTruncatedTree;
        r.message = "budget exhausted (" + run.stats.truncation_reason +
                    ") with no incorrect answer found";
      } else {
        r.outcome = Outcome::kNotASymptom;
        r.message = "no incorrect answer for " + to_string(atom);
      }
      return r;
    }
  } catch (const Stop& s) {
    r.outcome = s.outcome;
    r.message = s.message;
    return r;
  }
  return diagnose_incorrect_answer(atom, *symptom, p, oracle, opts);
}

namespace {

TopLevelTrace complete_trace(const Term& atom, const Program& p,
                             const Budget& budget) {
  TopLevelTrace t = search_trace_for(atom, p, budget);
  if (!t.complete()) {
    throw Stop{Outcome::kTruncatedTree,
               "budget exhausted (" + t.stats.truncation_reason +
                   ") while searching " + to_string(atom)};
  }
  return t;
}

Verdict judge_complete(Oracle& oracle, const Term& atom,
                       const std::vector<Term>& answers,
                       const std::string& context) {
  Verdict v;
  try {
    v = oracle.judge_complete(atom, answers, context);
  } catch (const ChannelClosed&) {
    throw Stop{Outcome::kUndecided, undecided_message(oracle, atom)};
  }
  if (v.value == Truth::kUnknown) {
    throw Stop{Outcome::kUndecided, undecided_message(oracle, atom)};
  }
  return v;
}

}  // namespace

IncompletenessResult diagnose_incompleteness(const Term& atom,
                                             const Program& p, Oracle& oracle,
                                             const Budget& budget) {
  IncompletenessResult r;
  r.symptom = atom;
  r.error_atom = atom;
  r.procedure = PredicateKey::of(atom);
  try {
    TopLevelTrace trace = complete_trace(atom, p, budget);
    Verdict v = judge_complete(oracle, atom, trace.answers, to_string(atom));
    if (v.value == Truth::kYes) {
      r.outcome = Outcome::kNotASymptom;
      r.message = "all required answers for " + to_string(atom) +
                  " are computed";
      return r;
    }
    Term current = atom;
    if (v.witness) {
      current = *v.witness;
      trace = complete_trace(current, p, budget);
    }
    r.path.push_back(current);
    for (;;) {
      LevelStats level{current, trace.entries.size(), 0};
      std::size_t asked = oracle.log().size();
      std::optional<Term> next;
      try {
        for (std::size_t k = 0; k < trace.entries.size(); ++k) {
          const TraceEntry& e = trace.entries[k];
          std::string context = "entry " + std::to_string(k + 1) + " of " +
                                to_string(current);
          Verdict ev = judge_complete(oracle, e.call, e.answers, context);
          if (ev.value == Truth::kNo) {
            next = ev.witness ? *ev.witness : e.call;
            break;
          }
        }
      } catch (const Stop&) {
        level.questions = oracle.log().size() - asked;
        r.levels.push_back(level);
        throw;
      }
      level.questions = oracle.log().size() - asked;
      r.levels.push_back(level);
      if (!next) break;
      current = *next;
      r.path.push_back(current);
      trace = complete_trace(current, p, budget);
    }
    r.error_atom = current;
    r.procedure = PredicateKey::of(current);
    r.witness = find_uncovered_instance(oracle.comp(), current, p);
    if (r.witness) {
      r.outcome = Outcome::kFound;
    } else {
      r.outcome = Outcome::kUndecided;
      r.message = "no uncovered instance of " + to_string(current) +
                  " within bounds";
    }
  } catch (const Stop& s) {
    r.outcome = s.outcome;
    r.message = s.message;
  }
  return r;
}

}  // namespace lpdiag
