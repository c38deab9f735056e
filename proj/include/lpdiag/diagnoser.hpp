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

#ifndef LPDIAG_DIAGNOSER_HPP_
#define LPDIAG_DIAGNOSER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lpdiag/boxtrace.hpp"
#include "lpdiag/engine.hpp"
#include "lpdiag/oracle.hpp"

namespace lpdiag {

enum class Outcome { kFound, kUndecided, kNotASymptom, kTruncatedTree };

const char* outcome_name(Outcome o);

enum class SearchMode { kProofTree, kSuccessTrace, kSearchTrace };

const char* mode_name(SearchMode m);
std::optional<SearchMode> parse_mode(std::string_view text);

struct DiagnosisOptions {
  SearchMode mode = SearchMode::kProofTree;
  /// Re-run the engine on each incorrect answer found.
  bool restart = false;
  Budget budget;
};

struct IncorrectnessResult {
  Outcome outcome = Outcome::kUndecided;
  /// The incorrect answer the search started from.
  std::optional<Term> symptom;
  std::size_t clause_ordinal = 0;
  /// The error instance head :- body.
  Term head = Term::constant("true");
  std::vector<Term> body;
  /// Atoms judged incorrect, from the symptom down to `head`.
  std::vector<Term> path;
  /// Nodes of the proof tree of the symptom (proof-tree mode).
  std::size_t tree_nodes = 0;
  std::string message;
};

/// Top-down search of a proof tree whose root is a symptom: descend into
/// the leftmost incorrect child until every child is correct.
IncorrectnessResult diagnose_incorrectness(const ProofTree& tree,
                                           Oracle& oracle);

/// Diagnoses the computed answer `answer` of `atom` in the given mode.
IncorrectnessResult diagnose_incorrect_answer(const Term& atom,
                                              const Term& answer,
                                              const Program& p, Oracle& oracle,
                                              const DiagnosisOptions& opts = {});

/// Solves `atom`, takes the first answer judged incorrect and diagnoses it.
IncorrectnessResult diagnose_query_incorrectness(const Term& atom,
                                                 const Program& p,
                                                 Oracle& oracle,
                                                 const DiagnosisOptions& opts = {});

struct LevelStats {
  Term atom = Term::constant("true");
  std::size_t entries = 0;
  std::size_t questions = 0;
};

struct IncompletenessResult {
  Outcome outcome = Outcome::kUndecided;
  std::optional<Term> symptom;
  Term error_atom = Term::constant("true");
  std::optional<Term> witness;
  PredicateKey procedure;
  /// Symptoms visited, starting with the first.
  std::vector<Term> path;
  std::vector<LevelStats> levels;
  std::string message;
};

/// Top-down search through top-level search traces, restarting from a
/// ground witness whenever one is known.
IncompletenessResult diagnose_incompleteness(const Term& atom,
                                             const Program& p, Oracle& oracle,
                                             const Budget& budget = {});

}  // namespace lpdiag

#endif  // LPDIAG_DIAGNOSER_HPP_
