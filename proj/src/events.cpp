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

#include "lpdiag/events.hpp"

#include <charconv>
#include <map>

#include "lpdiag/syntax.hpp"

namespace lpdiag {

const char* port_name(Port p) {
  switch (p) {
    case Port::kCall:
      return "Call";
    case Port::kExit:
      return "Exit";
    case Port::kRedo:
      return "Redo";
    case Port::kFail:
      return "Fail";
  }
  return "?";
}

std::string render_event(const BoxEvent& e) {
  std::string out;
  if (e.port == Port::kExit && e.nondet) out += "? ";
  out += std::to_string(e.invocation);
  out += ' ';
  out += std::to_string(e.depth);
  out += ' ';
  out += port_name(e.port);
  out += ": ";
  out += to_string(e.atom);
  return out;
}

std::string render_events(const std::vector<BoxEvent>& events,
                          bool hide_deterministic_redo) {
  std::string out;
  std::map<int, bool> last_exit_nondet;
  for (const BoxEvent& e : events) {
    if (e.port == Port::kExit) last_exit_nondet[e.invocation] = e.nondet;
    if (hide_deterministic_redo && e.port == Port::kRedo &&
        !last_exit_nondet[e.invocation]) {
      continue;
    }
    out += render_event(e);
    out += '\n';
  }
  return out;
}

namespace {

bool read_int(std::string_view& s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || out <= 0) return false;
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return true;
}

}  // namespace

BoxEvent parse_event_line(std::string_view line, std::size_t line_number) {
  BoxEvent e;
  std::string_view s = line;
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  if (s.substr(0, 2) == "? ") {
    e.nondet = true;
    s.remove_prefix(2);
  }
  if (!read_int(s, e.invocation) || s.empty() || s[0] != ' ') {
    throw MalformedTrace(line_number, "expected invocation number");
  }
  s.remove_prefix(1);
  if (!read_int(s, e.depth) || s.empty() || s[0] != ' ') {
    throw MalformedTrace(line_number, "expected depth");
  }
  s.remove_prefix(1);
  bool found = false;
  for (Port p : {Port::kCall, Port::kExit, Port::kRedo, Port::kFail}) {
    std::string tag = std::string(port_name(p)) + ": ";
    if (s.substr(0, tag.size()) == tag) {
      e.port = p;
      s.remove_prefix(tag.size());
      found = true;
      break;
    }
  }
  if (!found) throw MalformedTrace(line_number, "expected port");
  if (e.nondet && e.port != Port::kExit) {
    throw MalformedTrace(line_number, "'?' marker on a non-Exit item");
  }
  try {
    e.atom = parse_term(s);
  } catch (const ParseError& err) {
    throw MalformedTrace(line_number, std::string("bad atom: ") + err.what());
  }
  return e;
}

std::vector<BoxEvent> parse_events(std::string_view text) {
  std::vector<BoxEvent> out;
  std::size_t line_number = 0;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    ++line_number;
    if (line.empty() || line == "\r") {
      if (nl == std::string_view::npos || nl + 1 == text.size()) break;
      throw MalformedTrace(line_number, "empty line");
    }
    out.push_back(parse_event_line(line, line_number));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

}  // namespace lpdiag
