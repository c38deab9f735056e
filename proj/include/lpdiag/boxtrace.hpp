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

#ifndef LPDIAG_BOXTRACE_HPP_
#define LPDIAG_BOXTRACE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpdiag/engine.hpp"
#include "lpdiag/events.hpp"
#include "lpdiag/term.hpp"

namespace lpdiag {

struct Violation {
  /// 0-based index of the first offending event.
  std::size_t index = 0;
  std::string message;
};

/// \brief Checks the four-port grammar of an event stream.
///
/// Per invocation: Call (Exit Redo)* (Exit | Fail), constant depth, unique
/// Call. Across invocations: boxes nest, Exit and Fail close the innermost
/// running box, Redo reopens the last exited child of the running box,
/// consecutive Exits decrease depth by one. With `complete`, no box may be
/// left running at the end.
std::optional<Violation> events_wellformed(const std::vector<BoxEvent>& events,
                                           bool complete = true);

/// A span Q_start ... Q_end of a derivation evaluating the first atom of
/// Q_start. Open when the call did not succeed within the derivation.
struct Subderivation {
  std::size_t start = 0;
  std::optional<std::size_t> end;
  Term call_atom = Term::constant("true");
  /// The computed answer for call_atom; set when closed.
  std::optional<Term> answer;

  bool closed() const { return end.has_value(); }
};

Subderivation subderivation_for(const Derivation& d, std::size_t position);

struct TopLevelCall {
  /// The body atom instance at the moment it is selected.
  Term atom;
  Subderivation sub;
};

/// Top-level calls of `s` in body order. Stops at the first body atom never
/// selected within the derivation.
std::vector<TopLevelCall> top_level_calls(const Derivation& d,
                                          const Subderivation& s);

struct SuccessTrace {
  Term for_atom = Term::constant("true");
  std::vector<Term> answers;
  std::size_t clause_ordinal = 0;
};

SuccessTrace success_trace_for(const Derivation& d, const Subderivation& s);

struct TraceEntry {
  int invocation = 0;
  Term call = Term::constant("true");
  std::vector<Term> answers;
};

/// \brief Every top-level call made while searching for all answers of one
/// atom, each with all of its answers.
///
/// Variant calls from different invocations stay separate entries.
struct TopLevelTrace {
  Term for_atom = Term::constant("true");
  std::vector<Term> answers;
  std::vector<TraceEntry> entries;
  TreeStats stats;

  bool complete() const { return stats.complete(); }
};

TopLevelTrace search_trace_for(const Term& atom, const Program& p,
                               const Budget& budget = {});

/// Exit atoms of one invocation, in emission order.
std::vector<Term> all_answers_for(int invocation,
                                  const std::vector<BoxEvent>& events);

struct ProofTree {
  Term atom = Term::constant("true");
  std::size_t clause_ordinal = 0;
  /// Index in the derivation of the query whose first atom this node is.
  std::size_t position = 0;
  std::vector<ProofTree> children;

  std::size_t size() const;
};

/// Proof tree for a closed subderivation, every node instantiated to the
/// bindings in force when `s` succeeds.
ProofTree proof_tree_for(const Derivation& d, const Subderivation& s);

/// True iff every node with its children is an instance of its clause.
bool proof_tree_sound(const ProofTree& t, const Program& p);

/// \brief Success trace recovered from rendered event text alone.
///
/// `exit_line` is the 0-based line of an Exit item. Walks backwards, taking
/// each Exit one level deeper and jumping to its Call, until any other item
/// is met.
std::vector<Term> reconstruct_success_trace(std::string_view text,
                                            std::size_t exit_line);
std::vector<Term> reconstruct_success_trace(const std::vector<BoxEvent>& events,
                                            std::size_t exit_index);

/// Index of the Exit event at which closed subderivation `s` succeeded.
std::optional<std::size_t> exit_event_for(const std::vector<BoxEvent>& events,
                                          const Derivation& d,
                                          const Subderivation& s);

}  // namespace lpdiag

#endif  // LPDIAG_BOXTRACE_HPP_
