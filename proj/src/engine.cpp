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

#include "lpdiag/engine.hpp"

#include <cassert>
#include <map>

#include "lpdiag/herbrand.hpp"

namespace lpdiag {

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::kSuccess:
      return "success";
    case RunStatus::kFailure:
      return "failure";
    case RunStatus::kExhaustedBudget:
      return "exhausted-budget";
  }
  return "?";
}

std::size_t LdTree::add(LdNode node) {
  if (node.parent) node.depth = nodes_.at(*node.parent).depth + 1;
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

Derivation LdTree::derivation_to(std::size_t id) const {
  std::vector<std::size_t> path;
  for (std::optional<std::size_t> cur = id; cur; cur = nodes_.at(*cur).parent) {
    path.push_back(*cur);
  }
  Derivation d;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    const LdNode& n = nodes_.at(*it);
    if (n.step) d.steps.push_back(*n.step);
    d.queries.push_back(n.query);
    d.nodes.push_back(*it);
    d.invocations.push_back(n.front_invocation);
  }
  d.status = d.queries.back().empty() ? RunStatus::kSuccess
                                      : RunStatus::kFailure;
  return d;
}

std::optional<std::pair<Query, Step>> resolve_step(const Query& q,
                                                   const Program& p,
                                                   std::size_t clause_ordinal,
                                                   NameSupply& names) {
  assert(!q.empty());
  Clause renamed = names.rename(p.clause(clause_ordinal));
  std::optional<Substitution> mgu = unify(q.front(), renamed.head);
  if (!mgu) return std::nullopt;
  Query next = mgu->apply(renamed.body);
  for (std::size_t i = 1; i < q.size(); ++i) next.push_back(mgu->apply(q[i]));
  return std::make_pair(std::move(next),
                        Step{clause_ordinal, std::move(renamed), *mgu});
}

namespace {

// Goals are kept in reverse: back() is the leftmost atom of the query.
struct Goal {
  enum Kind { kAtom, kExit, kAnswer };
  Kind kind;
  Term term;
  // kAtom: box of the clause whose body produced it (0 for the query);
  // kExit: the box that exits when this marker is reached.
  int box = 0;
};

struct Box {
  int depth = 0;
  int parent = 0;
  Term call_atom = Term::constant("true");
  Term last_exit = Term::constant("true");
  std::vector<int> children;
  std::size_t cp_height = 0;
  std::size_t call_node = 0;
  std::size_t exit_node = 0;
  std::size_t clause = 0;
};

struct ChoicePoint {
  int box;
  std::size_t next;
  std::vector<Goal> goals;
  std::size_t node;
};

struct BudgetStop {
  std::string reason;
};

class Machine {
 public:
  Machine(const Query& q, const Program& p, const Budget& budget,
          const AnswerCallback& on_answer)
      : query_(q),
        program_(p),
        budget_(budget),
        on_answer_(on_answer),
        names_(NameSupply::after(q)) {}

  SolveResult run() {
    out_.tree.add(LdNode{std::nullopt, query_, std::nullopt, 0, 0});
    boxes_.push_back(Box{});  // pseudo-box for the query itself
    goals_.push_back({Goal::kAnswer, Term::compound("$answer", query_), 0});
    for (auto it = query_.rbegin(); it != query_.rend(); ++it) {
      goals_.push_back({Goal::kAtom, *it, 0});
    }
    try {
      loop();
    } catch (const BudgetStop& stop) {
      out_.stats.truncated = true;
      out_.stats.truncation_reason = stop.reason;
    }
    out_.stats.nodes = out_.tree.size();
    out_.stats.answers = out_.answers.size();
    if (out_.stats.truncated) {
      out_.stats.status = RunStatus::kExhaustedBudget;
    } else {
      out_.stats.status = out_.answers.empty() ? RunStatus::kFailure
                                               : RunStatus::kSuccess;
    }
    return std::move(out_);
  }

 private:
  void loop() {
    for (;;) {
      Goal& g = goals_.back();
      switch (g.kind) {
        case Goal::kExit:
          exit_box(g);
          break;
        case Goal::kAnswer:
          if (!answer()) return;
          if (!backtrack(0)) return;
          break;
        case Goal::kAtom: {
          int box = call(g);
          if (!try_clauses(box, 0) && !fail_box(box)) return;
          break;
        }
      }
    }
  }

  void emit(Port port, int inv, const Term& atom, bool nondet,
            std::size_t node, std::size_t clause = 0) {
    out_.events.push_back(
        BoxEvent{port, inv, boxes_[inv].depth, atom, nondet, node, clause});
  }

  int call(const Goal& g) {
    int inv = static_cast<int>(boxes_.size());
    Box b;
    b.depth = boxes_[g.box].depth + 1;
    b.parent = g.box;
    b.call_atom = g.term;
    b.cp_height = cps_.size();
    b.call_node = node_;
    boxes_.push_back(std::move(b));
    boxes_[g.box].children.push_back(inv);
    out_.tree.node(node_).front_invocation = inv;
    emit(Port::kCall, inv, g.term, false, node_);
    return inv;
  }

  bool may_resolve(const Term& atom, std::size_t ordinal) {
    // Throwaway names: '$' never occurs in parsed variables.
    const Clause& c = program_.clause(ordinal);
    Substitution s;
    std::size_t n = 0;
    for (const std::string& v : variables_of(c.head)) {
      s.bind(v, Term::variable("$" + std::to_string(++n)));
    }
    return unify(atom, s.apply(c.head)).has_value();
  }

  bool try_clauses(int box, std::size_t from) {
    const Term atom = goals_.back().term;
    const std::vector<std::size_t>& ords = program_.clauses_for(atom);
    for (std::size_t k = from; k < ords.size(); ++k) {
      if (out_.stats.steps == budget_.max_steps) throw BudgetStop{"max_steps"};
      ++out_.stats.steps;
      Clause renamed = names_.rename(program_.clause(ords[k]));
      std::optional<Substitution> mgu = unify(atom, renamed.head);
      if (!mgu) continue;
      for (std::size_t j = k + 1; j < ords.size(); ++j) {
        if (may_resolve(atom, ords[j])) {
          cps_.push_back(ChoicePoint{box, j, goals_, node_});
          break;
        }
      }
      if (out_.tree.node(node_).depth + 1 > budget_.max_depth) {
        throw BudgetStop{"max_depth"};
      }
      std::vector<Goal> next;
      next.reserve(goals_.size() + renamed.body.size() + 1);
      Substitution::Memo memo;
      for (std::size_t i = 0; i + 1 < goals_.size(); ++i) {
        next.push_back({goals_[i].kind, mgu->apply(goals_[i].term, memo),
                        goals_[i].box});
      }
      next.push_back({Goal::kExit, mgu->apply(atom, memo), box});
      for (auto it = renamed.body.rbegin(); it != renamed.body.rend(); ++it) {
        next.push_back({Goal::kAtom, mgu->apply(*it, memo), box});
      }
      goals_ = std::move(next);
      boxes_[box].clause = ords[k];
      node_ = out_.tree.add(LdNode{node_, current_query(),
                                   Step{ords[k], std::move(renamed), *mgu}, 0,
                                   0});
      return true;
    }
    return false;
  }

  Query current_query() const {
    Query q;
    for (auto it = goals_.rbegin(); it != goals_.rend(); ++it) {
      if (it->kind == Goal::kAtom) q.push_back(it->term);
    }
    return q;
  }

  void exit_box(const Goal& g) {
    Box& b = boxes_[g.box];
    b.last_exit = g.term;
    b.exit_node = node_;
    emit(Port::kExit, g.box, g.term, cps_.size() > b.cp_height, node_,
         b.clause);
    goals_.pop_back();
  }

  // Records an answer; false when the search should end.
  bool answer() {
    const Term& inst = goals_.back().term;
    Answer a;
    a.query = query_;
    a.instance = inst.args();
    if (auto m = match(Term::compound("$answer", query_), inst)) a.binding = *m;
    a.leaf = node_;
    a.event_count = out_.events.size();
    out_.answers.push_back(a);
    bool more = !on_answer_ || on_answer_(out_.answers.back());
    if (cps_.empty()) return false;
    if (!more) {
      out_.stats.stopped = true;
      return false;
    }
    if (out_.answers.size() >= budget_.max_answers) {
      throw BudgetStop{"max_answers"};
    }
    return true;
  }

  void remove_child(int inv) {
    std::vector<int>& kids = boxes_[boxes_[inv].parent].children;
    assert(!kids.empty() && kids.back() == inv);
    kids.pop_back();
  }

  // Fails box `inv` and backtracks into what precedes it.
  bool fail_box(int inv) {
    emit(Port::kFail, inv, boxes_[inv].call_atom, false,
         boxes_[inv].call_node);
    remove_child(inv);
    return backtrack(boxes_[inv].parent);
  }

  // Tries the next clause for `inv` if it has a choicepoint; otherwise
  // emits its Fail. All boxes created after the choicepoint are gone.
  bool retry(int inv) {
    if (!cps_.empty() && cps_.back().box == inv) {
      ChoicePoint cp = std::move(cps_.back());
      cps_.pop_back();
      goals_ = std::move(cp.goals);
      node_ = cp.node;
      if (try_clauses(inv, cp.next)) return true;
    }
    emit(Port::kFail, inv, boxes_[inv].call_atom, false,
         boxes_[inv].call_node);
    remove_child(inv);
    return false;
  }

  // Backtracks into the last exited child of `parent`, or retries `parent`
  // itself when it has none. Emits Redo on the way in and Fail on the way
  // out, innermost last. False when the whole search is exhausted.
  bool backtrack(int parent) {
    for (;;) {
      std::vector<int>& kids = boxes_[parent].children;
      if (!kids.empty()) {
        int b = kids.back();
        for (;;) {
          emit(Port::kRedo, b, boxes_[b].last_exit, false,
               boxes_[b].exit_node);
          if (boxes_[b].children.empty()) break;
          b = boxes_[b].children.back();
        }
        if (retry(b)) return true;
        parent = boxes_[b].parent;
        continue;
      }
      if (parent == 0) return false;
      int failing = parent;
      parent = boxes_[failing].parent;
      if (retry(failing)) return true;
    }
  }

  const Query& query_;
  const Program& program_;
  const Budget& budget_;
  const AnswerCallback& on_answer_;
  NameSupply names_;
  SolveResult out_;
  std::vector<Box> boxes_;
  std::vector<Goal> goals_;
  std::vector<ChoicePoint> cps_;
  std::size_t node_ = 0;
};

}  // namespace

SolveResult solve(const Query& q, const Program& p, const Budget& budget,
                  const AnswerCallback& on_answer) {
  return Machine(q, p, budget, on_answer).run();
}

bool replay_matches(const Derivation& d, const Program& p) {
  if (d.queries.size() != d.steps.size() + 1) return false;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& s = d.steps[i];
    const Query& q = d.queries[i];
    if (q.empty()) return false;
    const Clause& original = p.clause(s.clause_ordinal);
    Query lhs{original.head}, rhs{s.renamed.head};
    lhs.insert(lhs.end(), original.body.begin(), original.body.end());
    rhs.insert(rhs.end(), s.renamed.body.begin(), s.renamed.body.end());
    if (!is_variant(Term::compound("c", lhs), Term::compound("c", rhs))) {
      return false;
    }
    std::optional<Substitution> mgu = unify(q.front(), s.renamed.head);
    if (!mgu || !(*mgu == s.mgu)) return false;
    Query next = mgu->apply(s.renamed.body);
    for (std::size_t j = 1; j < q.size(); ++j) next.push_back(mgu->apply(q[j]));
    if (next != d.queries[i + 1]) return false;
  }
  return true;
}

namespace {

void join_body(const Clause& c, std::size_t i, const Substitution& sigma,
               const std::map<PredicateKey, std::vector<Term>>& facts,
               const std::function<void(const Substitution&)>& done) {
  if (i == c.body.size()) {
    done(sigma);
    return;
  }
  Term pattern = sigma.apply(c.body[i]);
  auto it = facts.find(PredicateKey::of(pattern));
  if (it == facts.end()) return;
  for (const Term& f : it->second) {
    std::optional<Substitution> m = match(pattern, f);
    if (!m) continue;
    Substitution next = sigma;
    for (const auto& [v, t] : m->bindings()) next.bind(v, t);
    join_body(c, i + 1, next, facts, done);
  }
}

}  // namespace

std::set<Term> tp_oracle(const Program& p, int depth_bound,
                         int iteration_bound) {
  return tp_oracle(p, depth_bound, iteration_bound, Signature{});
}

std::set<Term> tp_oracle(const Program& p, int depth_bound, int iteration_bound,
                         const Signature& extra) {
  Signature sig = extra;
  sig.add(p);
  HerbrandUniverse universe(sig);
  std::set<Term> model;
  for (int iter = 0; iter < iteration_bound; ++iter) {
    std::map<PredicateKey, std::vector<Term>> facts;
    for (const Term& a : model) facts[PredicateKey::of(a)].push_back(a);
    std::set<Term> next = model;
    for (const Clause& c : p.clauses()) {
      join_body(c, 0, Substitution{}, facts, [&](const Substitution& s) {
        Term head = s.apply(c.head);
        if (head.is_ground()) {
          if (atom_depth(head) <= depth_bound) next.insert(head);
          return;
        }
        for_each_ground_instance(head, universe, depth_bound,
                                 [&](const Term& g) {
                                   next.insert(g);
                                   return true;
                                 });
      });
    }
    if (next.size() == model.size()) break;
    model = std::move(next);
  }
  return model;
}

}  // namespace lpdiag
