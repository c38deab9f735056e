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

#ifndef LPDIAG_FRONTEND_REPORT_HPP_
#define LPDIAG_FRONTEND_REPORT_HPP_

#include <string>

#include "lpdiag/boxtrace.hpp"
#include "lpdiag/diagnoser.hpp"

namespace lpdiag {

/// One line per answer, `X = t, Y = u` in query variable order, `true` for a
/// ground query, `false` when there is none. A truncated search ends with a
/// `% truncated: <reason>` line.
std::string render_answers(const SolveResult& r);

/// Indented tree, one node per line with its clause number.
std::string render_proof_tree(const ProofTree& t);
std::string render_success_trace(const SuccessTrace& t);
std::string render_search_trace(const TopLevelTrace& t);

std::string render_questions(const Oracle& oracle);
std::string render_incorrectness(const IncorrectnessResult& r,
                                 const Program& p, const Oracle& oracle);
std::string render_incompleteness(const IncompletenessResult& r,
                                  const Oracle& oracle);

}  // namespace lpdiag

#endif  // LPDIAG_FRONTEND_REPORT_HPP_
