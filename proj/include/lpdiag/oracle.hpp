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

#ifndef LPDIAG_ORACLE_HPP_
#define LPDIAG_ORACLE_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lpdiag/herbrand.hpp"
#include "lpdiag/program.hpp"
#include "lpdiag/term.hpp"

namespace lpdiag {

enum class Role { kCorr, kCompl };
enum class Truth { kYes, kNo, kUnknown };
enum class Source { kMachine, kHuman };

const char* role_name(Role r);
const char* truth_name(Truth t);
const char* source_name(Source s);
std::optional<Truth> parse_truth(std::string_view text);

struct Bounds {
  int depth = 6;
  int iterations = 40;
};

/// \brief An intended interpretation given by a definite program, read
/// bottom-up under bounds.
///
/// The bounded model is computed once, at construction, from non-ground
/// clause instances; atoms deeper than the depth bound are discarded.
class Specification {
 public:
  Specification(Role role, Program defining, Bounds bounds = {},
                std::size_t max_model_atoms = 20000);

  Role role() const { return role_; }
  const Program& program() const { return program_; }
  const Bounds& bounds() const { return bounds_; }
  /// Ground facts of the defining program.
  const std::vector<Term>& explicit_atoms() const { return explicit_; }
  /// Model atoms, possibly non-ground, none an instance of another.
  const std::vector<Term>& model() const { return model_; }
  /// No iteration added atoms before the bounds were reached.
  bool converged() const { return converged_; }
  const Signature& signature() const { return signature_; }

  /// Yes if `a` is an instance of a model atom; unknown if deeper than the
  /// depth bound or if the model did not converge; no otherwise.
  Truth holds(const Term& a) const;
  /// Some model atom has `a` as an instance.
  bool subsumes(const Term& a) const;

  /// \brief Ground instances of `a` in the interpretation, within the depth
  /// bound, in enumeration order.
  ///
  /// Function symbols of `extra` widen the universe. Returns nullopt if the
  /// enumeration exceeds `limit`.
  std::optional<std::vector<Term>> ground_members(
      const Term& a, const Signature& extra, std::size_t limit = 50000) const;

 private:
  void compute(std::size_t max_atoms);
  void prune();

  Role role_;
  Program program_;
  Bounds bounds_;
  std::vector<Term> explicit_;
  std::vector<Term> model_;
  std::map<PredicateKey, std::vector<std::size_t>> index_;
  bool converged_ = false;
  Signature signature_;
};

struct SpecPair {
  Specification corr;
  Specification comp;
};

/// Parses the two-section specification format. Line numbers in parse
/// errors refer to the whole file.
SpecPair parse_spec_file(std::string_view text);

/// Thrown when answers come from a search cut by the budget.
class TruncatedTree : public std::runtime_error {
 public:
  TruncatedTree() : std::runtime_error("search tree truncated by budget") {}
};

Truth is_incorrectness_symptom(const Specification& corr, const Term& answer);

struct IncompletenessCheck {
  Truth symptom = Truth::kUnknown;
  /// A ground instance of the atom, in the specification and an instance of
  /// no answer.
  std::optional<Term> witness;
};

/// Throws TruncatedTree when `truncated`.
IncompletenessCheck is_incompleteness_symptom(const Specification& comp,
                                              const Term& a,
                                              const std::vector<Term>& answers,
                                              const Program& p,
                                              bool truncated = false);

/// Some clause of `p` has a ground instance with head `a` and every body
/// atom a member of `comp`.
bool covered(const Specification& comp, const Term& a, const Program& p);

/// First ground instance of `a` in `comp` that is not covered.
std::optional<Term> find_uncovered_instance(const Specification& comp,
                                            const Term& a, const Program& p);

// ---------------------------------------------------------------------------
// Oracle sessions

class ChannelClosed : public std::runtime_error {
 public:
  ChannelClosed() : std::runtime_error("human channel closed") {}
};

struct HumanQuestion {
  /// 1-based count of questions put to the human.
  std::size_t seq = 0;
  Role role = Role::kCorr;
  Term atom = Term::constant("true");
  /// Completeness questions: the computed answers for `atom`.
  std::vector<Term> answers;
  std::string context;

  /// Canonical one-line wording.
  std::string text() const;
};

/// Answers questions the machine cannot decide. Throws ChannelClosed when no
/// verdict can be had.
class HumanChannel {
 public:
  virtual ~HumanChannel() = default;
  virtual Truth ask(const HumanQuestion& q) = 0;
};

class ClosedChannel : public HumanChannel {
 public:
  Truth ask(const HumanQuestion&) override { throw ChannelClosed(); }
};

/// Verdicts keyed by question seq.
class ScriptedChannel : public HumanChannel {
 public:
  explicit ScriptedChannel(std::map<std::size_t, Truth> verdicts)
      : verdicts_(std::move(verdicts)) {}
  Truth ask(const HumanQuestion& q) override;

 private:
  std::map<std::size_t, Truth> verdicts_;
};

struct Verdict {
  Truth value = Truth::kUnknown;
  Source source = Source::kMachine;
  Role role = Role::kCorr;
  Term atom = Term::constant("true");
  std::vector<Term> answers;
  std::optional<Term> witness;
  /// Seq of the human question; 0 for machine verdicts.
  std::size_t seq = 0;
};

struct JournalEntry {
  std::size_t seq = 0;
  std::string question;
  Truth verdict = Truth::kUnknown;
  std::string timestamp;
};

/// \brief Decides the questions of a diagnosis: machine first, then human.
///
/// Each distinct question is asked once; repeats return the cached verdict
/// and are not logged again.
class Oracle {
 public:
  Oracle(const Specification& corr, const Specification& comp,
         const Program& program, HumanChannel& human);

  /// Is every ground instance of `atom` in S_corr?
  Verdict judge_correct(const Term& atom, const std::string& context = "");
  /// Are all answers required by S_compl among `answers`?
  Verdict judge_complete(const Term& atom, const std::vector<Term>& answers,
                         const std::string& context = "");

  const std::vector<Verdict>& log() const { return log_; }
  const std::vector<JournalEntry>& journal() const { return journal_; }
  std::size_t machine_count() const;
  std::size_t human_count() const;
  /// The human question that went unanswered, if any.
  const std::optional<HumanQuestion>& unanswered() const { return unanswered_; }

  const Specification& corr() const { return corr_; }
  const Specification& comp() const { return comp_; }

 private:
  Verdict ask_human(HumanQuestion q, Verdict v);

  const Specification& corr_;
  const Specification& comp_;
  const Program& program_;
  HumanChannel& human_;
  std::map<std::string, std::size_t> cache_;
  std::vector<Verdict> log_;
  std::vector<JournalEntry> journal_;
  std::optional<HumanQuestion> unanswered_;
};

}  // namespace lpdiag

#endif  // LPDIAG_ORACLE_HPP_
