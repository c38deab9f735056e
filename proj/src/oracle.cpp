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

#include "lpdiag/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <functional>
#include <regex>
#include <sstream>

#include "lpdiag/syntax.hpp"

namespace lpdiag {

const char* role_name(Role r) { return r == Role::kCorr ? "corr" : "compl"; }

const char* truth_name(Truth t) {
  switch (t) {
    case Truth::kYes:
      return "yes";
    case Truth::kNo:
      return "no";
    case Truth::kUnknown:
      return "unknown";
  }
  return "?";
}

const char* source_name(Source s) {
  return s == Source::kMachine ? "machine" : "human";
}

std::optional<Truth> parse_truth(std::string_view text) {
  if (text == "yes") return Truth::kYes;
  if (text == "no") return Truth::kNo;
  if (text == "unknown") return Truth::kUnknown;
  return std::nullopt;
}

namespace {

// Renames every variable of `t` to `<prefix><n>`, numbering from `next`.
Term rename_vars(const Term& t, const std::string& prefix, std::size_t& next) {
  if (t.is_ground()) return t;
  Substitution s;
  for (const std::string& v : variables_of(t)) {
    s.bind(v, Term::variable(prefix + std::to_string(next++)));
  }
  return s.apply(t);
}

Term normalize(const Term& t) {
  std::size_t n = 1;
  return rename_vars(t, "_V", n);
}

}  // namespace

// ---------------------------------------------------------------------------
// Specification

Specification::Specification(Role role, Program defining, Bounds bounds,
                             std::size_t max_model_atoms)
    : role_(role), program_(std::move(defining)), bounds_(bounds) {
  for (const Clause& c : program_.clauses()) {
    if (c.is_fact() && c.head.is_ground()) explicit_.push_back(c.head);
  }
  signature_.add(program_);
  compute(max_model_atoms);
  prune();
}

void Specification::prune() {
  std::vector<Term> kept;
  for (std::size_t i = 0; i < model_.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < model_.size() && !redundant; ++j) {
      redundant = i != j && is_instance_of(model_[i], model_[j]) &&
                  !is_instance_of(model_[j], model_[i]);
    }
    if (!redundant) kept.push_back(model_[i]);
  }
  model_ = std::move(kept);
  index_.clear();
  for (std::size_t i = 0; i < model_.size(); ++i) {
    index_[PredicateKey::of(model_[i])].push_back(i);
  }
}

void Specification::compute(std::size_t max_atoms) {
  auto add = [&](const Term& atom) {
    PredicateKey key = PredicateKey::of(atom);
    std::vector<std::size_t>& ids = index_[key];
    for (std::size_t id : ids) {
      if (is_instance_of(atom, model_[id])) return false;
    }
    model_.push_back(atom);
    ids.push_back(model_.size() - 1);
    return true;
  };
  for (const Term& a : explicit_) add(a);

  for (int iter = 0; iter < bounds_.iterations; ++iter) {
    std::vector<Term> snapshot = model_;
    std::map<PredicateKey, std::vector<Term>> by_pred;
    for (const Term& a : snapshot) by_pred[PredicateKey::of(a)].push_back(a);
    std::vector<Term> derived;
    for (const Clause& c : program_.clauses()) {
      NameSupply names(1);
      Clause r = names.rename(c);
      std::size_t fresh = 1;
      std::function<void(std::size_t, const Substitution&)> join =
          [&](std::size_t i, const Substitution& sigma) {
            if (i == r.body.size()) {
              Term head = normalize(sigma.apply(r.head));
              if (atom_depth(head) <= bounds_.depth) derived.push_back(head);
              return;
            }
            Term goal = sigma.apply(r.body[i]);
            auto it = by_pred.find(PredicateKey::of(goal));
            if (it == by_pred.end()) return;
            for (const Term& m : it->second) {
              Term m2 = rename_vars(m, "_M", fresh);
              if (auto mgu = unify(goal, m2)) join(i + 1, sigma.then(*mgu));
            }
          };
      join(0, Substitution{});
    }
    std::sort(derived.begin(), derived.end(), enumeration_less);
    bool added = false;
    for (const Term& h : derived) {
      if (add(h)) added = true;
      if (model_.size() > max_atoms) return;
    }
    if (!added) {
      converged_ = true;
      return;
    }
  }
}

bool Specification::subsumes(const Term& a) const {
  auto it = index_.find(PredicateKey::of(a));
  if (it == index_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](std::size_t id) { return is_instance_of(a, model_[id]); });
}

Truth Specification::holds(const Term& a) const {
  if (subsumes(a)) return Truth::kYes;
  if (atom_depth(a) > bounds_.depth) return Truth::kUnknown;
  return converged_ ? Truth::kNo : Truth::kUnknown;
}

std::optional<std::vector<Term>> Specification::ground_members(
    const Term& a, const Signature& extra, std::size_t limit) const {
  Signature sig = signature_;
  sig.merge(extra);
  sig.add_atom(a);
  HerbrandUniverse universe(sig);
  std::set<Term> found;
  auto it = index_.find(PredicateKey::of(a));
  if (it == index_.end()) return std::vector<Term>{};
  std::size_t fresh = 1;
  for (std::size_t id : it->second) {
    Term m = rename_vars(model_[id], "_M", fresh);
    std::optional<Substitution> mgu = unify(a, m);
    if (!mgu) continue;
    Term inst = mgu->apply(a);
    if (atom_depth(inst) > bounds_.depth) continue;
    auto ground = ground_instances(inst, universe, bounds_.depth, limit);
    if (!ground) return std::nullopt;
    found.insert(ground->begin(), ground->end());
    if (found.size() > limit) return std::nullopt;
  }
  std::vector<Term> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), enumeration_less);
  return out;
}

SpecPair parse_spec_file(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
  static const std::regex bounds_re(
      R"(^%%\s*bounds\s+depth\s*=\s*(\d+)\s+iter\s*=\s*(\d+)\s*$)");
  static const std::regex section_re(R"(^%%\s*(corr|compl)\s*$)");
  Bounds bounds;
  std::string corr_text, comp_text;
  int section = 0;  // 1 corr, 2 compl
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    std::smatch m;
    std::string corr_line, comp_line;
    if (std::regex_match(line, m, bounds_re)) {
      bounds.depth = std::stoi(m[1]);
      bounds.iterations = std::stoi(m[2]);
      if (bounds.depth <= 0 || bounds.iterations <= 0) {
        throw ParseError(i + 1, 1, "positive bounds", line);
      }
    } else if (std::regex_match(line, m, section_re)) {
      section = m[1] == "corr" ? 1 : 2;
    } else if (line.rfind("%%", 0) == 0) {
      throw ParseError(i + 1, 1, "'%% bounds', '%% corr' or '%% compl'", line);
    } else if (section == 1) {
      corr_line = line;
    } else if (section == 2) {
      comp_line = line;
    } else if (line.find_first_not_of(" \t\r") != std::string::npos &&
               line.find_first_not_of(" \t\r") != line.find('%')) {
      throw ParseError(i + 1, 1, "'%% corr' or '%% compl' section", line);
    }
    corr_text += corr_line + "\n";
    comp_text += comp_line + "\n";
  }
  return SpecPair{Specification(Role::kCorr, parse_program(corr_text), bounds),
                  Specification(Role::kCompl, parse_program(comp_text), bounds)};
}

// ---------------------------------------------------------------------------
// Symptoms and coverage

Truth is_incorrectness_symptom(const Specification& corr, const Term& answer) {
  if (answer.is_ground()) {
    switch (corr.holds(answer)) {
      case Truth::kYes:
        return Truth::kNo;
      case Truth::kNo:
        return Truth::kYes;
      case Truth::kUnknown:
        return Truth::kUnknown;
    }
  }
  if (corr.subsumes(answer)) return Truth::kNo;
  Signature sig = corr.signature();
  sig.add_atom(answer);
  HerbrandUniverse universe(sig);
  Truth result = Truth::kUnknown;
  bool complete = for_each_ground_instance(
      answer, universe, corr.bounds().depth, [&](const Term& g) {
        if (corr.holds(g) == Truth::kNo) {
          result = Truth::kYes;
          return false;
        }
        return true;
      });
  (void)complete;
  return result;
}

IncompletenessCheck is_incompleteness_symptom(const Specification& comp,
                                              const Term& a,
                                              const std::vector<Term>& answers,
                                              const Program& p,
                                              bool truncated) {
  if (truncated) throw TruncatedTree();
  Signature extra;
  extra.add(p);
  for (const Term& t : answers) extra.add_atom(t);
  auto members = comp.ground_members(a, extra);
  if (!members) return {Truth::kUnknown, std::nullopt};
  for (const Term& g : *members) {
    bool answered = std::any_of(answers.begin(), answers.end(),
                                [&](const Term& t) { return is_instance_of(g, t); });
    if (!answered) return {Truth::kYes, g};
  }
  return {comp.converged() ? Truth::kNo : Truth::kUnknown, std::nullopt};
}

bool covered(const Specification& comp, const Term& a, const Program& p) {
  Signature sig = comp.signature();
  sig.add(p);
  Term least = sig.least_constant();
  const std::vector<Term>& model = comp.model();
  for (std::size_t ordinal : p.clauses_for(a)) {
    NameSupply names = NameSupply::after({a});
    Clause c = names.rename(p.clause(ordinal));
    std::optional<Substitution> head = unify(a, c.head);
    if (!head) continue;
    std::size_t fresh = 1;
    bool found = false;
    std::function<void(std::size_t, const Substitution&)> join =
        [&](std::size_t i, const Substitution& sigma) {
          if (found) return;
          if (i == c.body.size()) {
            Query body = sigma.apply(c.body);
            Substitution fill;
            for (const Term& b : body) {
              for (const std::string& v : variables_of(b)) fill.bind(v, least);
            }
            for (const Term& b : fill.apply(body)) {
              if (comp.holds(b) != Truth::kYes) return;
            }
            found = true;
            return;
          }
          Term goal = sigma.apply(c.body[i]);
          for (const Term& m : model) {
            if (m.name() != goal.name() || m.arity() != goal.arity()) continue;
            Term m2 = rename_vars(m, "_M", fresh);
            if (auto mgu = unify(goal, m2)) join(i + 1, sigma.then(*mgu));
            if (found) return;
          }
        };
    join(0, *head);
    if (found) return true;
  }
  return false;
}

std::optional<Term> find_uncovered_instance(const Specification& comp,
                                            const Term& a, const Program& p) {
  Signature extra;
  extra.add(p);
  auto members = comp.ground_members(a, extra);
  if (!members) return std::nullopt;
  for (const Term& g : *members) {
    if (!covered(comp, g, p)) return g;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Oracle

std::string HumanQuestion::text() const {
  if (role == Role::kCorr) return "correct: " + to_string(atom);
  std::string out = "complete: " + to_string(atom) + " answers [";
  for (std::size_t i = 0; i < answers.size(); ++i) {
    if (i) out += ", ";
    out += to_string(answers[i]);
  }
  return out + "]";
}

Truth ScriptedChannel::ask(const HumanQuestion& q) {
  auto it = verdicts_.find(q.seq);
  if (it == verdicts_.end()) throw ChannelClosed();
  return it->second;
}

Oracle::Oracle(const Specification& corr, const Specification& comp,
               const Program& program, HumanChannel& human)
    : corr_(corr), comp_(comp), program_(program), human_(human) {}

namespace {

std::string now_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Verdict Oracle::ask_human(HumanQuestion q, Verdict v) {
  q.seq = human_count() + 1;
  Truth answer;
  try {
    answer = human_.ask(q);
  } catch (const ChannelClosed&) {
    unanswered_ = q;
    throw;
  }
  v.value = answer;
  v.source = Source::kHuman;
  v.seq = q.seq;
  journal_.push_back(JournalEntry{q.seq, q.text(), answer, now_utc()});
  return v;
}

Verdict Oracle::judge_correct(const Term& atom, const std::string& context) {
  std::string key = "corr|" + to_string(normalize(atom));
  if (auto it = cache_.find(key); it != cache_.end()) return log_[it->second];
  Verdict v;
  v.role = Role::kCorr;
  v.atom = atom;
  Truth machine = Truth::kUnknown;
  if (atom.is_ground()) {
    machine = corr_.holds(atom);
  } else if (corr_.subsumes(atom)) {
    machine = Truth::kYes;
  }
  if (machine != Truth::kUnknown) {
    v.value = machine;
  } else {
    v = ask_human(HumanQuestion{0, Role::kCorr, atom, {}, context}, v);
  }
  cache_[key] = log_.size();
  log_.push_back(v);
  return v;
}

Verdict Oracle::judge_complete(const Term& atom,
                               const std::vector<Term>& answers,
                               const std::string& context) {
  std::vector<std::string> texts;
  for (const Term& t : answers) texts.push_back(to_string(normalize(t)));
  std::sort(texts.begin(), texts.end());
  std::string key = "compl|" + to_string(normalize(atom));
  for (const std::string& s : texts) key += "|" + s;
  if (auto it = cache_.find(key); it != cache_.end()) return log_[it->second];
  Verdict v;
  v.role = Role::kCompl;
  v.atom = atom;
  v.answers = answers;
  IncompletenessCheck check =
      is_incompleteness_symptom(comp_, atom, answers, program_);
  if (check.symptom == Truth::kYes) {
    v.value = Truth::kNo;
    v.witness = check.witness;
  } else if (check.symptom == Truth::kNo) {
    v.value = Truth::kYes;
  } else {
    v = ask_human(HumanQuestion{0, Role::kCompl, atom, answers, context}, v);
  }
  cache_[key] = log_.size();
  log_.push_back(v);
  return v;
}

std::size_t Oracle::machine_count() const {
  return static_cast<std::size_t>(
      std::count_if(log_.begin(), log_.end(),
                    [](const Verdict& v) { return v.source == Source::kMachine; }));
}

std::size_t Oracle::human_count() const { return log_.size() - machine_count(); }

}  // namespace lpdiag
