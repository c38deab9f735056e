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

#ifndef LPDIAG_PROGRAM_HPP_
#define LPDIAG_PROGRAM_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "lpdiag/term.hpp"

namespace lpdiag {

/// A sequence of atoms; the empty query is the success terminal.
using Query = std::vector<Term>;

struct PredicateKey {
  std::string name;
  std::size_t arity = 0;

  static PredicateKey of(const Term& atom) { return {atom.name(), atom.arity()}; }
  friend auto operator<=>(const PredicateKey&, const PredicateKey&) = default;
};

std::string to_string(const PredicateKey& key);

/// A definite clause `head :- body`. `ordinal` is the 1-based position in
/// the program text.
struct Clause {
  Term head;
  std::vector<Term> body;
  std::size_t ordinal = 0;

  bool is_fact() const { return body.empty(); }
  std::vector<std::string> variables() const;
};

/// \brief Clauses in textual order, indexed by predicate.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Clause> clauses);

  /// Appends a clause; its ordinal is reassigned to the next position.
  void add(Clause clause);

  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }

  /// 1-based lookup.
  const Clause& clause(std::size_t ordinal) const { return clauses_.at(ordinal - 1); }

  /// Ordinals of the clauses for a predicate, in textual order.
  const std::vector<std::size_t>& clauses_for(const PredicateKey& key) const;
  const std::vector<std::size_t>& clauses_for(const Term& atom) const {
    return clauses_for(PredicateKey::of(atom));
  }

  std::vector<PredicateKey> predicates() const;

 private:
  std::vector<Clause> clauses_;
  std::map<PredicateKey, std::vector<std::size_t>> index_;
};

/// Renames clause variables apart with names `_G<n>`, drawing `n` from a
/// monotone counter.
class NameSupply {
 public:
  explicit NameSupply(std::size_t next = 1) : next_(next) {}

  /// A supply whose names cannot collide with `_G<n>` names already in use
  /// by `terms`.
  static NameSupply after(const std::vector<Term>& terms);

  std::string fresh();
  Clause rename(const Clause& clause);
  std::size_t peek() const { return next_; }

 private:
  std::size_t next_;
};

}  // namespace lpdiag

#endif  // LPDIAG_PROGRAM_HPP_
