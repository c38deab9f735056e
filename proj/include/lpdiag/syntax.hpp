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

#ifndef LPDIAG_SYNTAX_HPP_
#define LPDIAG_SYNTAX_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lpdiag/program.hpp"
#include "lpdiag/term.hpp"

namespace lpdiag {

/// Thrown for malformed program, query or term text. Line and column are
/// 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string expected,
             std::string found);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
  std::string found_;
};

// Concrete syntax: definite clauses `h :- b1, ..., bn.` and facts `h.`;
// identifiers start with a lowercase letter or are numerals; variables start
// with an uppercase letter or `_`; `[a,b|T]` is sugar for '.'/2 and `[]`;
// `%` starts a line comment. A lone `_` gets a fresh `_<n>` name.

Program parse_program(std::string_view text);
Clause parse_clause(std::string_view text);
/// A conjunction `a, b, c` with optional leading `?-` and trailing `.`.
Query parse_query(std::string_view text);
Term parse_term(std::string_view text);

std::string to_string(const Clause& clause);
std::string to_string(const Program& program);
std::string to_string(const Query& query);

}  // namespace lpdiag

#endif  // LPDIAG_SYNTAX_HPP_
