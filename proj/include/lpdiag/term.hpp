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

#ifndef LPDIAG_TERM_HPP_
#define LPDIAG_TERM_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lpdiag {

/// \brief An immutable first-order term.
///
/// A term is either a variable or a compound `f(t1,...,tn)`; constants are
/// compounds with no arguments. Terms share structure and are cheap to copy.
/// Depth, groundness and a structural hash are computed once at
/// construction.
class Term {
 public:
  static Term variable(std::string name);
  static Term compound(std::string functor, std::vector<Term> args = {});
  static Term constant(std::string name) { return compound(std::move(name)); }

  bool is_variable() const;
  bool is_constant() const { return !is_variable() && arity() == 0; }
  bool is_compound() const { return !is_variable(); }

  /// Variable name, or functor for compounds.
  const std::string& name() const;
  std::size_t arity() const;
  const std::vector<Term>& args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }

  /// Constants and variables have depth 0; `f(...)` is one more than its
  /// deepest argument.
  int depth() const;
  bool is_ground() const;
  std::size_t hash() const;

  /// Identity of the shared node; equal ids imply equal terms.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  /// Structural order: variables before compounds, then name, arity, args.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Orders ground instances for enumeration: by depth, then structurally.
bool enumeration_less(const Term& a, const Term& b);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Canonical text: `f(a,b)`, lists re-sugared as `[a,b|T]`.
std::string to_string(const Term& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

/// Atom depth: the deepest argument (predicate symbol not counted).
int atom_depth(const Term& atom);

bool occurs(std::string_view var, const Term& t);

/// Variables in first-occurrence order, without duplicates.
std::vector<std::string> variables_of(const Term& t);
void collect_variables(const Term& t, std::vector<std::string>& out);

Term make_list(const std::vector<Term>& items,
               std::optional<Term> tail = std::nullopt);
inline constexpr std::string_view kNil = "[]";
inline constexpr std::string_view kCons = ".";

/// \brief A finite, idempotent set of variable bindings.
///
/// Construction through `bind` keeps the map idempotent only if the caller
/// binds to terms already free of the domain; `unify` maintains that.
class Substitution {
 public:
  using Map = std::map<std::string, Term, std::less<>>;

  Substitution() = default;

  const Term* lookup(std::string_view var) const;
  bool contains(std::string_view var) const { return lookup(var) != nullptr; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Map& bindings() const { return bindings_; }

  /// Raw insertion. Self-bindings are dropped.
  void bind(std::string var, Term value);

  Term apply(const Term& t) const;
  std::vector<Term> apply(const std::vector<Term>& ts) const;

  /// Images of already visited nodes, so that shared subterms stay shared.
  using Memo = std::unordered_map<const void*, Term>;
  Term apply(const Term& t, Memo& memo) const;

  /// `this` followed by `after`: apply(compose(after), t) ==
  /// after.apply(this->apply(t)).
  Substitution then(const Substitution& after) const;

  Substitution restricted_to(const std::vector<std::string>& vars) const;

  bool is_idempotent() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map bindings_;
};

std::string to_string(const Substitution& s);

/// Most general unifier with occur-check. The result is idempotent and
/// its domain is a subset of the variables of `a` and `b`.
std::optional<Substitution> unify(const Term& a, const Term& b);
std::optional<Substitution> unify(const std::vector<Term>& a,
                                  const std::vector<Term>& b);

/// One-way matching: a substitution σ over the variables of `pattern` with
/// σ(pattern) == target. Variables of `target` are treated as constants.
std::optional<Substitution> match(const Term& pattern, const Term& target);

/// True iff `specific` is an instance of `general`.
bool is_instance_of(const Term& specific, const Term& general);

/// True iff each is an instance of the other.
bool is_variant(const Term& a, const Term& b);

}  // namespace lpdiag

#endif  // LPDIAG_TERM_HPP_
