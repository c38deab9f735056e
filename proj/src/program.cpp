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

#include "lpdiag/program.hpp"

#include <algorithm>
#include <cctype>

namespace lpdiag {

std::string to_string(const PredicateKey& key) {
  return key.name + "/" + std::to_string(key.arity);
}

std::vector<std::string> Clause::variables() const {
  std::vector<std::string> out;
  collect_variables(head, out);
  for (const Term& b : body) collect_variables(b, out);
  return out;
}

Program::Program(std::vector<Clause> clauses) {
  for (Clause& c : clauses) add(std::move(c));
}

void Program::add(Clause clause) {
  clause.ordinal = clauses_.size() + 1;
  index_[PredicateKey::of(clause.head)].push_back(clause.ordinal);
  clauses_.push_back(std::move(clause));
}

const std::vector<std::size_t>& Program::clauses_for(
    const PredicateKey& key) const {
  static const std::vector<std::size_t> kNone;
  auto it = index_.find(key);
  return it == index_.end() ? kNone : it->second;
}

std::vector<PredicateKey> Program::predicates() const {
  std::vector<PredicateKey> out;
  for (const auto& [k, v] : index_) {
    (void)v;
    out.push_back(k);
  }
  return out;
}

namespace {

void max_generated(const Term& t, std::size_t& best) {
  if (t.is_ground()) return;
  if (t.is_variable()) {
    const std::string& n = t.name();
    if (n.size() > 2 && n[0] == '_' && n[1] == 'G' &&
        std::all_of(n.begin() + 2, n.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
      best = std::max<std::size_t>(best, std::stoull(n.substr(2)));
    }
    return;
  }
  for (const Term& a : t.args()) max_generated(a, best);
}

}  // namespace

NameSupply NameSupply::after(const std::vector<Term>& terms) {
  std::size_t best = 0;
  for (const Term& t : terms) max_generated(t, best);
  return NameSupply(best + 1);
}

std::string NameSupply::fresh() { return "_G" + std::to_string(next_++); }

Clause NameSupply::rename(const Clause& clause) {
  Substitution s;
  for (const std::string& v : clause.variables()) {
    s.bind(v, Term::variable(fresh()));
  }
  return Clause{s.apply(clause.head), s.apply(clause.body), clause.ordinal};
}

}  // namespace lpdiag
