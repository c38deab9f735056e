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

#include "lpdiag/boxtrace.hpp"

#include <map>

namespace lpdiag {

namespace {

enum class BoxState { kRunning, kExited, kFailed };

struct BoxInfo {
  int depth = 0;
  int parent = 0;
  BoxState state = BoxState::kRunning;
  std::vector<int> live;  // exited children, oldest first
};

std::string describe(const BoxEvent& e) {
  return std::string(port_name(e.port)) + " of invocation " +
         std::to_string(e.invocation);
}

}  // namespace

std::optional<Violation> events_wellformed(const std::vector<BoxEvent>& events,
                                           bool complete) {
  std::map<int, BoxInfo> boxes;
  std::vector<int> running;
  std::vector<int> roots_live;
  int must_redo = 0;  // a reopened box must reopen its last child next
  auto bad = [](std::size_t i, std::string msg) {
    return Violation{i, std::move(msg)};
  };
  auto live_of = [&](int parent) -> std::vector<int>& {
    return parent == 0 ? roots_live : boxes[parent].live;
  };

  for (std::size_t i = 0; i < events.size(); ++i) {
    const BoxEvent& e = events[i];
    if (e.invocation <= 0 || e.depth <= 0) {
      return bad(i, "invocation and depth must be positive");
    }
    if (must_redo && !(e.port == Port::kRedo && e.invocation == must_redo)) {
      return bad(i, "expected Redo of invocation " + std::to_string(must_redo));
    }
    must_redo = 0;
    int top = running.empty() ? 0 : running.back();
    auto it = boxes.find(e.invocation);
    if (e.port == Port::kCall) {
      if (it != boxes.end()) return bad(i, "second Call of an invocation");
      int expected = top == 0 ? 1 : boxes[top].depth + 1;
      if (e.depth != expected) {
        return bad(i, "Call at depth " + std::to_string(e.depth) +
                          ", expected " + std::to_string(expected));
      }
      boxes[e.invocation] = BoxInfo{e.depth, top, BoxState::kRunning, {}};
      running.push_back(e.invocation);
      continue;
    }
    if (it == boxes.end()) return bad(i, describe(e) + " before its Call");
    BoxInfo& b = it->second;
    if (e.depth != b.depth) return bad(i, "depth changed within invocation");
    switch (e.port) {
      case Port::kExit:
      case Port::kFail:
        if (b.state != BoxState::kRunning) {
          return bad(i, describe(e) + " while the box is not running");
        }
        if (top != e.invocation) {
          return bad(i, describe(e) + " while an inner box is running");
        }
        if (e.port == Port::kFail && !b.live.empty()) {
          return bad(i, "Fail with exited children still open");
        }
        if (e.port == Port::kExit && i > 0 &&
            events[i - 1].port == Port::kExit &&
            events[i - 1].depth != e.depth + 1) {
          return bad(i, "consecutive Exits must decrease depth by one");
        }
        running.pop_back();
        if (e.port == Port::kExit) {
          b.state = BoxState::kExited;
          live_of(b.parent).push_back(e.invocation);
        } else {
          b.state = BoxState::kFailed;
        }
        break;
      case Port::kRedo: {
        if (b.state != BoxState::kExited) {
          return bad(i, "Redo of a box that has not exited");
        }
        if (b.parent != top) {
          return bad(i, "Redo outside the running box");
        }
        std::vector<int>& live = live_of(top);
        if (live.empty() || live.back() != e.invocation) {
          return bad(i, "Redo of a box other than the last exited one");
        }
        live.pop_back();
        b.state = BoxState::kRunning;
        running.push_back(e.invocation);
        if (!b.live.empty()) must_redo = b.live.back();
        break;
      }
      case Port::kCall:
        break;
    }
  }
  if (must_redo) {
    return bad(events.size(),
               "stream ends before Redo of invocation " +
                   std::to_string(must_redo));
  }
  if (complete && !running.empty()) {
    return bad(events.size(), "stream ends with invocation " +
                                  std::to_string(running.back()) +
                                  " still running");
  }
  return std::nullopt;
}

namespace {

Term instantiate(const Derivation& d, Term t, std::size_t from,
                 std::size_t to) {
  for (std::size_t i = from; i < to; ++i) t = d.steps[i].mgu.apply(t);
  return t;
}

}  // namespace

Subderivation subderivation_for(const Derivation& d, std::size_t position) {
  const Query& q = d.queries.at(position);
  Subderivation s;
  s.start = position;
  s.call_atom = q.front();
  for (std::size_t l = position + 1; l < d.queries.size(); ++l) {
    if (d.queries[l].size() + 1 == q.size()) {
      s.end = l;
      s.answer = instantiate(d, s.call_atom, position, l);
      break;
    }
  }
  return s;
}

std::vector<TopLevelCall> top_level_calls(const Derivation& d,
                                          const Subderivation& s) {
  std::vector<TopLevelCall> out;
  if (s.start + 1 >= d.queries.size()) return out;
  std::size_t n = d.steps[s.start].renamed.body.size();
  std::size_t k = s.start + 1;
  std::size_t limit = s.end ? *s.end : d.queries.size() - 1;
  std::size_t i = k;
  for (std::size_t j = 1; j <= n; ++j) {
    std::size_t want = d.queries[k].size() + 1 - j;
    while (i <= limit && d.queries[i].size() != want) ++i;
    if (i > limit) break;
    Subderivation sub = subderivation_for(d, i);
    out.push_back(TopLevelCall{d.queries[i].front(), sub});
    if (!sub.closed()) break;
    i = *sub.end;
  }
  return out;
}

SuccessTrace success_trace_for(const Derivation& d, const Subderivation& s) {
  SuccessTrace t;
  t.for_atom = s.call_atom;
  t.clause_ordinal = d.steps.at(s.start).clause_ordinal;
  for (const TopLevelCall& c : top_level_calls(d, s)) {
    if (c.sub.answer) t.answers.push_back(*c.sub.answer);
  }
  return t;
}

std::vector<Term> all_answers_for(int invocation,
                                  const std::vector<BoxEvent>& events) {
  std::vector<Term> out;
  for (const BoxEvent& e : events) {
    if (e.port == Port::kExit && e.invocation == invocation) {
      out.push_back(e.atom);
    }
  }
  return out;
}

TopLevelTrace search_trace_for(const Term& atom, const Program& p,
                               const Budget& budget) {
  SolveResult r = solve({atom}, p, budget);
  TopLevelTrace t;
  t.for_atom = atom;
  t.stats = r.stats;
  t.answers = all_answers_for(1, r.events);
  std::map<int, std::size_t> index;
  for (const BoxEvent& e : r.events) {
    if (e.depth != 2) continue;
    if (e.port == Port::kCall) {
      index[e.invocation] = t.entries.size();
      t.entries.push_back(TraceEntry{e.invocation, e.atom, {}});
    } else if (e.port == Port::kExit) {
      t.entries[index.at(e.invocation)].answers.push_back(e.atom);
    }
  }
  return t;
}

std::size_t ProofTree::size() const {
  std::size_t n = 1;
  for (const ProofTree& c : children) n += c.size();
  return n;
}

namespace {

ProofTree build(const Derivation& d, const Subderivation& s,
                std::size_t final_end) {
  ProofTree t;
  t.atom = instantiate(d, s.call_atom, s.start, final_end);
  t.clause_ordinal = d.steps.at(s.start).clause_ordinal;
  t.position = s.start;
  for (const TopLevelCall& c : top_level_calls(d, s)) {
    t.children.push_back(build(d, c.sub, final_end));
  }
  return t;
}

}  // namespace

ProofTree proof_tree_for(const Derivation& d, const Subderivation& s) {
  return build(d, s, *s.end);
}

bool proof_tree_sound(const ProofTree& t, const Program& p) {
  const Clause& c = p.clause(t.clause_ordinal);
  if (c.body.size() != t.children.size()) return false;
  std::vector<Term> node{t.atom};
  for (const ProofTree& ch : t.children) node.push_back(ch.atom);
  NameSupply names = NameSupply::after(node);
  Clause renamed = names.rename(c);
  std::vector<Term> general{renamed.head};
  general.insert(general.end(), renamed.body.begin(), renamed.body.end());
  if (!is_instance_of(Term::compound("c", node),
                      Term::compound("c", general))) {
    return false;
  }
  for (const ProofTree& ch : t.children) {
    if (!proof_tree_sound(ch, p)) return false;
  }
  return true;
}

std::vector<Term> reconstruct_success_trace(const std::vector<BoxEvent>& events,
                                            std::size_t exit_index) {
  if (exit_index >= events.size()) {
    throw MalformedTrace(exit_index + 1, "no such line");
  }
  const BoxEvent& exit = events[exit_index];
  if (exit.port != Port::kExit) {
    throw MalformedTrace(exit_index + 1, "not an Exit item");
  }
  auto find_call = [&](int inv, std::size_t before,
                       std::size_t line) -> std::size_t {
    for (std::size_t j = before; j-- > 0;) {
      if (events[j].invocation == inv && events[j].port == Port::kCall) {
        return j;
      }
    }
    throw MalformedTrace(line + 1, "no Call item for invocation " +
                                       std::to_string(inv));
  };
  find_call(exit.invocation, exit_index, exit_index);
  std::vector<Term> reversed;
  std::size_t i = exit_index;
  while (i > 0) {
    const BoxEvent& prev = events[i - 1];
    if (prev.port != Port::kExit || prev.depth != exit.depth + 1) break;
    reversed.push_back(prev.atom);
    std::size_t call = find_call(prev.invocation, i - 1, i - 1);
    if (events[call].depth != prev.depth) {
      throw MalformedTrace(call + 1, "Call depth differs from its Exit");
    }
    i = call;
  }
  return {reversed.rbegin(), reversed.rend()};
}

std::vector<Term> reconstruct_success_trace(std::string_view text,
                                            std::size_t exit_line) {
  return reconstruct_success_trace(parse_events(text), exit_line);
}

std::optional<std::size_t> exit_event_for(const std::vector<BoxEvent>& events,
                                          const Derivation& d,
                                          const Subderivation& s) {
  if (!s.end) return std::nullopt;
  int inv = d.invocations.at(s.start);
  std::size_t node = d.nodes.at(*s.end);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const BoxEvent& e = events[i];
    if (e.port == Port::kExit && e.invocation == inv && e.node == node) {
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace lpdiag
