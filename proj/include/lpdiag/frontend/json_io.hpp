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

#ifndef LPDIAG_FRONTEND_JSON_IO_HPP_
#define LPDIAG_FRONTEND_JSON_IO_HPP_

#include "json.hpp"

#include "lpdiag/boxtrace.hpp"
#include "lpdiag/diagnoser.hpp"
#include "lpdiag/oracle.hpp"
#include "lpdiag/syntax.hpp"

namespace lpdiag {

using Json = nlohmann::ordered_json;

/// {"text": canonical text, "term": structure}. Variables are {"var": name},
/// everything else {"functor": f, "args": [...]}.
Json term_json(const Term& t);
Json term_structure(const Term& t);
Json terms_json(const std::vector<Term>& ts);

/// Wording of the question a verdict answers.
std::string question_text(const Verdict& v);
Json verdict_json(const Verdict& v);
Json question_json(const HumanQuestion& q);
Json journal_json(const std::vector<JournalEntry>& journal);

Json incorrectness_json(const IncorrectnessResult& r, const Program& p,
                        const Oracle& oracle);
Json incompleteness_json(const IncompletenessResult& r, const Oracle& oracle);

Json proof_tree_json(const ProofTree& t);
Json search_trace_json(const TopLevelTrace& t);
Json events_json(const std::vector<BoxEvent>& events);
Json parse_error_json(const ParseError& e);

/// Scripted verdicts: an object {"1": "no", ...} or an array of verdicts
/// where element i answers question i + 1.
std::map<std::size_t, Truth> parse_script(const Json& doc);

}  // namespace lpdiag

#endif  // LPDIAG_FRONTEND_JSON_IO_HPP_
