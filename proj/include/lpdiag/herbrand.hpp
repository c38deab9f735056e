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

#ifndef LPDIAG_HERBRAND_HPP_
#define LPDIAG_HERBRAND_HPP_

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lpdiag/program.hpp"
#include "lpdiag/term.hpp"

namespace lpdiag {

/// Function symbols (including constants) occurring in argument positions.
class Signature {
 public:
  void add_term(const Term& t);
  /// Adds the argument symbols of an atom; the predicate is not a function
  /// symbol.
  void add_atom(const Term& atom);
  void add(const Clause& clause);
  void add(const Program& program);
  void merge(const Signature& other);

  const std::set<std::pair<std::string, std::size_t>>& symbols() const {
    return symbols_;
  }
  bool has_constant() const;
  /// The least constant, or `a` when the signature has none.
  Term least_constant() const;

 private:
  std::set<std::pair<std::string, std::size_t>> symbols_;
};

/// \brief Ground terms over a signature, generated by depth layers.
///
/// Layer k holds the terms of depth exactly k in enumeration order. Layers
/// are built on demand and the whole universe is capped at `max_terms`.
class HerbrandUniverse {
 public:
  HerbrandUniverse(Signature sig, std::size_t max_terms = 200000);

  /// Terms of depth <= `depth`, ordered by depth then structure. Returns
  /// nullptr if the cap would be exceeded.
  const std::vector<Term>* up_to(int depth);

  const Signature& signature() const { return sig_; }

 private:
  bool build_layer(int k);

  Signature sig_;
  std::size_t max_terms_;
  std::vector<std::vector<Term>> layers_;
  std::vector<std::vector<Term>> cumulative_;
  bool capped_ = false;
};

/// Calls `visit` for every ground instance of `pattern` with atom depth at
/// most `max_depth`, in no particular order. Stops early when `visit`
/// returns false. Returns false if the universe cap was hit or the visit
/// stopped early.
bool for_each_ground_instance(const Term& pattern, HerbrandUniverse& universe,
                              int max_depth,
                              const std::function<bool(const Term&)>& visit);

/// Ground instances of `pattern` within `max_depth` in enumeration order,
/// or nullopt when more than `limit` exist.
std::optional<std::vector<Term>> ground_instances(const Term& pattern,
                                                  HerbrandUniverse& universe,
                                                  int max_depth,
                                                  std::size_t limit = 100000);

}  // namespace lpdiag

#endif  // LPDIAG_HERBRAND_HPP_
