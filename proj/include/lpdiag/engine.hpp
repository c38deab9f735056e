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

#ifndef LPDIAG_ENGINE_HPP_
#define LPDIAG_ENGINE_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lpdiag/events.hpp"
#include "lpdiag/herbrand.hpp"
#include "lpdiag/program.hpp"
#include "lpdiag/term.hpp"

namespace lpdiag {

/// Limits that keep every run finite. `max_steps` counts resolution
/// attempts, including failed head unifications; `max_depth` bounds the
/// length of a derivation; `max_answers` bounds the answers collected.
struct Budget {
  std::size_t max_steps = 100000;
  std::size_t max_depth = 10000;
  std::size_t max_answers = 1000;
};

enum class RunStatus { kSuccess, kFailure, kExhaustedBudget };

const char* status_name(RunStatus s);

/// One LD-resolution step: the clause (renamed apart) and the mgu of the
/// selected atom with its head.
struct Step {
  std::size_t clause_ordinal = 0;
  Clause renamed;
  Substitution mgu;
};

/// A node of the recorded LD-tree.
struct LdNode {
  std::optional<std::size_t> parent;
  Query query;
  /// The step from the parent's query to this one; empty at the root.
  std::optional<Step> step;
  /// Invocation number of the box whose Call selected this query's first
  /// atom, 0 if the first atom was never called.
  int front_invocation = 0;
  std::size_t depth = 0;
};

/// \brief A recorded LD-derivation Q0, Q1, ... with input clauses and mgus.
///
/// `steps[i]` takes `queries[i]` to `queries[i + 1]`. `nodes` and
/// `invocations` link each query to the LD-tree and to the box of its first
/// atom.
struct Derivation {
  std::vector<Query> queries;
  std::vector<Step> steps;
  std::vector<std::size_t> nodes;
  std::vector<int> invocations;
  RunStatus status = RunStatus::kFailure;

  std::size_t size() const { return queries.size(); }
};

class LdTree {
 public:
  std::size_t add(LdNode node);
  const LdNode& node(std::size_t id) const { return nodes_.at(id); }
  LdNode& node(std::size_t id) { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }

  /// The branch from the root to `id`.
  Derivation derivation_to(std::size_t id) const;

 private:
  std::vector<LdNode> nodes_;
};

/// A computed answer: bindings restricted to the query variables.
struct Answer {
  Query query;
  Substitution binding;
  /// binding applied to the query.
  Query instance;
  std::size_t leaf = 0;
  /// Number of events emitted before this answer was reached.
  std::size_t event_count = 0;

  const Term& atom() const { return instance.front(); }
};

struct TreeStats {
  RunStatus status = RunStatus::kFailure;
  std::size_t steps = 0;
  std::size_t nodes = 0;
  std::size_t answers = 0;
  /// The budget cut the search.
  bool truncated = false;
  /// The caller stopped the search after an answer.
  bool stopped = false;
  std::string truncation_reason;

  /// Every branch of the LD-tree was explored.
  bool complete() const { return !truncated && !stopped; }
};

struct SolveResult {
  std::vector<Answer> answers;
  std::vector<BoxEvent> events;
  LdTree tree;
  TreeStats stats;

  Derivation derivation_for(const Answer& a) const {
    return tree.derivation_to(a.leaf);
  }
};

/// Return false to stop the search after this answer.
using AnswerCallback = std::function<bool(const Answer&)>;

/// One resolution step with the first atom of `q`. Renames the clause apart
/// using `names`. Returns nullopt if the head does not unify.
std::optional<std::pair<Query, Step>> resolve_step(const Query& q,
                                                   const Program& p,
                                                   std::size_t clause_ordinal,
                                                   NameSupply& names);

/// \brief LD-resolution with Prolog's control: leftmost selection, textual
/// clause order, depth-first backtracking.
///
/// Records the four-port event stream and the LD-tree. After an answer
/// with no choicepoint left the search ends, as the Prolog top level does.
SolveResult solve(const Query& q, const Program& p, const Budget& budget = {},
                  const AnswerCallback& on_answer = {});

/// Replays `d` from its first query and checks every recorded query and mgu.
bool replay_matches(const Derivation& d, const Program& p);

/// \brief Ground atoms of the least Herbrand model reachable bottom-up.
///
/// Iterates the immediate-consequence operator at most `iteration_bound`
/// times, keeping only atoms whose depth is at most `depth_bound`. Clause
/// variables not bound by the body range over the program's Herbrand
/// universe.
std::set<Term> tp_oracle(const Program& p, int depth_bound,
                         int iteration_bound);
/// As above over the language of `p` extended with `extra`.
std::set<Term> tp_oracle(const Program& p, int depth_bound, int iteration_bound,
                         const Signature& extra);

}  // namespace lpdiag

#endif  // LPDIAG_ENGINE_HPP_
