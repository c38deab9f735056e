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

#ifndef LPDIAG_EVENTS_HPP_
#define LPDIAG_EVENTS_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lpdiag/term.hpp"

namespace lpdiag {

enum class Port { kCall, kExit, kRedo, kFail };

const char* port_name(Port p);

/// \brief One debugger item of the four-port box model.
///
/// All events of one box share `invocation` and `depth`. `nondet` is only
/// meaningful on Exit: choicepoints created inside the box are still alive.
/// `node` and `clause` link the event to the recorded LD-tree and are not
/// part of the rendered text.
struct BoxEvent {
  Port port = Port::kCall;
  int invocation = 0;
  int depth = 0;
  Term atom = Term::constant("true");
  bool nondet = false;
  std::size_t node = 0;
  /// Clause used by the box; set on Exit only.
  std::size_t clause = 0;

  friend bool operator==(const BoxEvent& a, const BoxEvent& b) {
    return a.port == b.port && a.invocation == b.invocation &&
           a.depth == b.depth && a.atom == b.atom && a.nondet == b.nondet;
  }
};

/// Thrown for event text that does not follow the line format.
class MalformedTrace : public std::runtime_error {
 public:
  MalformedTrace(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  /// 1-based line number.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// `[? ]<invocation> <depth> <Port>: <atom>` without the newline.
std::string render_event(const BoxEvent& e);

/// One line per event. With `hide_deterministic_redo`, a Redo is omitted
/// when the Exit it reopens was not marked `?`.
std::string render_events(const std::vector<BoxEvent>& events,
                          bool hide_deterministic_redo = false);

BoxEvent parse_event_line(std::string_view line, std::size_t line_number = 1);
std::vector<BoxEvent> parse_events(std::string_view text);

}  // namespace lpdiag

#endif  // LPDIAG_EVENTS_HPP_
