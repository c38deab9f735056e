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

#include "lpdiag/herbrand.hpp"

#include <algorithm>

namespace lpdiag {

void Signature::add_term(const Term& t) {
  if (t.is_variable()) return;
  symbols_.emplace(t.name(), t.arity());
  for (const Term& a : t.args()) add_term(a);
}

void Signature::add_atom(const Term& atom) {
  if (atom.is_variable()) return;
  for (const Term& a : atom.args()) add_term(a);
}

void Signature::add(const Clause& clause) {
  add_atom(clause.head);
  for (const Term& b : clause.body) add_atom(b);
}

void Signature::add(const Program& program) {
  for (const Clause& c : program.clauses()) add(c);
}

void Signature::merge(const Signature& other) {
  symbols_.insert(other.symbols_.begin(), other.symbols_.end());
}

bool Signature::has_constant() const {
  return std::any_of(symbols_.begin(), symbols_.end(),
                     [](const auto& s) { return s.second == 0; });
}

Term Signature::least_constant() const {
  for (const auto& [name, arity] : symbols_) {
    if (arity == 0) return Term::constant(name);
  }
  return Term::constant("a");
}

HerbrandUniverse::HerbrandUniverse(Signature sig, std::size_t max_terms)
    : sig_(std::move(sig)), max_terms_(max_terms) {}

bool HerbrandUniverse::build_layer(int k) {
  std::vector<Term> layer;
  if (k == 0) {
    for (const auto& [name, arity] : sig_.symbols()) {
      if (arity == 0) layer.push_back(Term::constant(name));
    }
    if (layer.empty()) layer.push_back(sig_.least_constant());
  } else {
    const std::vector<Term>& below = cumulative_[k - 1];
    std::size_t total = cumulative_[k - 1].size();
    for (const auto& [name, arity] : sig_.symbols()) {
      if (arity == 0) continue;
      // Tuples over `below` with at least one argument of depth k-1.
      std::vector<std::size_t> idx(arity, 0);
      for (;;) {
        bool deep = false;
        std::vector<Term> args;
        args.reserve(arity);
        for (std::size_t i : idx) {
          args.push_back(below[i]);
          deep = deep || below[i].depth() == k - 1;
        }
        if (deep) {
          layer.push_back(Term::compound(name, std::move(args)));
          if (total + layer.size() > max_terms_) return false;
        }
        std::size_t pos = 0;
        while (pos < arity && ++idx[pos] == below.size()) idx[pos++] = 0;
        if (pos == arity) break;
      }
    }
  }
  std::sort(layer.begin(), layer.end(), enumeration_less);
  std::vector<Term> cum = k == 0 ? std::vector<Term>{} : cumulative_[k - 1];
  cum.insert(cum.end(), layer.begin(), layer.end());
  layers_.push_back(std::move(layer));
  cumulative_.push_back(std::move(cum));
  return true;
}

const std::vector<Term>* HerbrandUniverse::up_to(int depth) {
  if (depth < 0) depth = 0;
  while (!capped_ && static_cast<int>(layers_.size()) <= depth) {
    if (!build_layer(static_cast<int>(layers_.size()))) capped_ = true;
  }
  if (static_cast<int>(cumulative_.size()) <= depth) return nullptr;
  return &cumulative_[depth];
}

namespace {

// Deepest position (nesting level below the atom's arguments) at which each
// variable occurs.
void variable_positions(const Term& t, int level,
                        std::vector<std::pair<std::string, int>>& out) {
  if (t.is_ground()) return;
  if (t.is_variable()) {
    for (auto& [n, l] : out) {
      if (n == t.name()) {
        l = std::max(l, level);
        return;
      }
    }
    out.emplace_back(t.name(), level);
    return;
  }
  for (const Term& a : t.args()) variable_positions(a, level + 1, out);
}

}  // namespace

bool for_each_ground_instance(const Term& pattern, HerbrandUniverse& universe,
                              int max_depth,
                              const std::function<bool(const Term&)>& visit) {
  if (atom_depth(pattern) > max_depth) return true;
  std::vector<std::pair<std::string, int>> vars;
  if (!pattern.is_variable()) {
    for (const Term& a : pattern.args()) variable_positions(a, 0, vars);
  }
  if (vars.empty()) return visit(pattern);
  std::vector<const std::vector<Term>*> domains;
  for (const auto& [name, level] : vars) {
    (void)name;
    const std::vector<Term>* d = universe.up_to(max_depth - level);
    if (d == nullptr) return false;
    domains.push_back(d);
  }
  std::vector<std::size_t> idx(vars.size(), 0);
  for (;;) {
    Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      s.bind(vars[i].first, (*domains[i])[idx[i]]);
    }
    Term inst = s.apply(pattern);
    if (atom_depth(inst) <= max_depth && !visit(inst)) return false;
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == domains[pos]->size()) {
      idx[pos++] = 0;
    }
    if (pos == idx.size()) return true;
  }
}

std::optional<std::vector<Term>> ground_instances(const Term& pattern,
                                                  HerbrandUniverse& universe,
                                                  int max_depth,
                                                  std::size_t limit) {
  std::vector<Term> out;
  bool overflow = false;
  bool done = for_each_ground_instance(
      pattern, universe, max_depth, [&](const Term& t) {
        if (out.size() >= limit) {
          overflow = true;
          return false;
        }
        out.push_back(t);
        return true;
      });
  if (!done || overflow) return std::nullopt;
  std::sort(out.begin(), out.end(), enumeration_less);
  return out;
}

}  // namespace lpdiag
