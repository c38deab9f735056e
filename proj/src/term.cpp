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

#include "lpdiag/term.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace lpdiag {

struct Term::Node {
  bool variable = false;
  std::string name;
  std::vector<Term> args;
  int depth = 0;
  bool ground = true;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->variable = true;
  node->ground = false;
  node->hash = mix(0x51ed27, std::hash<std::string>{}(name));
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  std::size_t h = mix(0x2545f491, std::hash<std::string>{}(functor));
  h = mix(h, args.size());
  int depth = 0;
  bool ground = true;
  for (const Term& a : args) {
    depth = std::max(depth, a.depth() + 1);
    ground = ground && a.is_ground();
    h = mix(h, a.hash());
  }
  node->name = std::move(functor);
  node->args = std::move(args);
  node->depth = depth;
  node->ground = ground;
  node->hash = h;
  return Term(std::move(node));
}

bool Term::is_variable() const { return node_->variable; }
const std::string& Term::name() const { return node_->name; }
std::size_t Term::arity() const { return node_->args.size(); }
const std::vector<Term>& Term::args() const { return node_->args; }
int Term::depth() const { return node_->depth; }
bool Term::is_ground() const { return node_->ground; }
std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.is_variable() != b.is_variable() ||
      a.name() != b.name() || a.arity() != b.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.arg(i) == b.arg(i))) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_variable() != b.is_variable()) {
    return a.is_variable() ? std::strong_ordering::less
                           : std::strong_ordering::greater;
  }
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.arg(i) <=> b.arg(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool enumeration_less(const Term& a, const Term& b) {
  if (a.depth() != b.depth()) return a.depth() < b.depth();
  return a < b;
}

namespace {

void print(const Term& t, std::string& out) {
  if (t.is_variable()) {
    out += t.name();
    return;
  }
  if (t.name() == kCons && t.arity() == 2) {
    out += '[';
    const Term* cur = &t;
    bool first = true;
    while (cur->is_compound() && cur->name() == kCons && cur->arity() == 2) {
      if (!first) out += ',';
      first = false;
      print(cur->arg(0), out);
      cur = &cur->arg(1);
    }
    if (!(cur->is_constant() && cur->name() == kNil)) {
      out += '|';
      print(*cur, out);
    }
    out += ']';
    return;
  }
  out += t.name();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    print(t.arg(i), out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  return os << to_string(t);
}

int atom_depth(const Term& atom) {
  int d = 0;
  if (atom.is_variable()) return 0;
  for (const Term& a : atom.args()) d = std::max(d, a.depth());
  return d;
}

bool occurs(std::string_view var, const Term& t) {
  if (t.is_ground()) return false;
  if (t.is_variable()) return t.name() == var;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs(var, a); });
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_ground()) return;
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) {
      out.push_back(t.name());
    }
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

std::vector<std::string> variables_of(const Term& t) {
  std::vector<std::string> out;
  collect_variables(t, out);
  return out;
}

Term make_list(const std::vector<Term>& items, std::optional<Term> tail) {
  Term result = tail ? *tail : Term::constant(std::string(kNil));
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    result = Term::compound(std::string(kCons), {*it, result});
  }
  return result;
}

// ---------------------------------------------------------------------------
// Substitution

const Term* Substitution::lookup(std::string_view var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(std::string var, Term value) {
  if (value.is_variable() && value.name() == var) return;
  bindings_.insert_or_assign(std::move(var), std::move(value));
}

Term Substitution::apply(const Term& t) const {
  if (t.is_ground() || bindings_.empty()) return t;
  if (t.is_variable()) {
    const Term* v = lookup(t.name());
    return v ? *v : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  return Term::compound(t.name(), std::move(args));
}

Term Substitution::apply(const Term& t, Memo& memo) const {
  if (t.is_ground() || bindings_.empty()) return t;
  if (t.is_variable()) {
    const Term* v = lookup(t.name());
    return v ? *v : t;
  }
  if (auto it = memo.find(t.id()); it != memo.end()) return it->second;
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(a, memo));
    changed = changed || args.back().id() != a.id();
  }
  Term out = changed ? Term::compound(t.name(), std::move(args)) : t;
  memo.emplace(t.id(), out);
  return out;
}

std::vector<Term> Substitution::apply(const std::vector<Term>& ts) const {
  Memo memo;
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const Term& t : ts) out.push_back(apply(t, memo));
  return out;
}

Substitution Substitution::then(const Substitution& after) const {
  Substitution out;
  for (const auto& [v, t] : bindings_) out.bind(v, after.apply(t));
  for (const auto& [v, t] : after.bindings_) {
    if (!contains(v)) out.bind(v, t);
  }
  return out;
}

Substitution Substitution::restricted_to(
    const std::vector<std::string>& vars) const {
  Substitution out;
  for (const std::string& v : vars) {
    if (const Term* t = lookup(v)) out.bind(v, *t);
  }
  return out;
}

bool Substitution::is_idempotent() const {
  for (const auto& [v, t] : bindings_) {
    (void)v;
    for (const std::string& w : variables_of(t)) {
      if (contains(w)) return false;
    }
  }
  return true;
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += v;
    out += "=";
    out += to_string(t);
  }
  out += "}";
  return out;
}

// ---------------------------------------------------------------------------
// Unification

namespace {

// Adds var↦value to an idempotent substitution, keeping it idempotent.
// `value` must already be fully applied and free of `var`.
void extend(Substitution& s, const std::string& var, const Term& value) {
  Substitution single;
  single.bind(var, value);
  Substitution updated;
  for (const auto& [v, t] : s.bindings()) updated.bind(v, single.apply(t));
  updated.bind(var, value);
  s = std::move(updated);
}

bool unify_into(Substitution& s, std::vector<std::pair<Term, Term>> work) {
  while (!work.empty()) {
    auto [x, y] = std::move(work.back());
    work.pop_back();
    x = s.apply(x);
    y = s.apply(y);
    if (x == y) continue;
    if (x.is_variable()) {
      if (occurs(x.name(), y)) return false;
      extend(s, x.name(), y);
    } else if (y.is_variable()) {
      if (occurs(y.name(), x)) return false;
      extend(s, y.name(), x);
    } else {
      if (x.name() != y.name() || x.arity() != y.arity()) return false;
      // Reverse push keeps left-to-right processing order.
      for (std::size_t i = x.arity(); i-- > 0;) {
        work.emplace_back(x.arg(i), y.arg(i));
      }
    }
  }
  return true;
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Substitution s;
  if (!unify_into(s, {{a, b}})) return std::nullopt;
  return s;
}

std::optional<Substitution> unify(const std::vector<Term>& a,
                                  const std::vector<Term>& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<std::pair<Term, Term>> work;
  for (std::size_t i = a.size(); i-- > 0;) work.emplace_back(a[i], b[i]);
  Substitution s;
  if (!unify_into(s, std::move(work))) return std::nullopt;
  return s;
}

std::optional<Substitution> match(const Term& pattern, const Term& target) {
  // Identity bindings are dropped by Substitution::bind, so track the
  // pattern variables that map to themselves separately.
  Substitution s;
  std::vector<std::string> identity;
  std::function<bool(const Term&, const Term&)> go =
      [&](const Term& p, const Term& t) -> bool {
    if (p.is_variable()) {
      if (const Term* bound = s.lookup(p.name())) return *bound == t;
      if (std::find(identity.begin(), identity.end(), p.name()) !=
          identity.end()) {
        return t.is_variable() && t.name() == p.name();
      }
      if (t.is_variable() && t.name() == p.name()) {
        identity.push_back(p.name());
      } else {
        s.bind(p.name(), t);
      }
      return true;
    }
    if (t.is_variable()) return false;
    if (p.name() != t.name() || p.arity() != t.arity()) return false;
    for (std::size_t i = 0; i < p.arity(); ++i) {
      if (!go(p.arg(i), t.arg(i))) return false;
    }
    return true;
  };
  if (!go(pattern, target)) return std::nullopt;
  return s;
}

bool is_instance_of(const Term& specific, const Term& general) {
  if (general.is_ground()) return general == specific;
  return match(general, specific).has_value();
}

bool is_variant(const Term& a, const Term& b) {
  return is_instance_of(a, b) && is_instance_of(b, a);
}

}  // namespace lpdiag
