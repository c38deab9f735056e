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

#include "lpdiag/frontend/session.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <vector>

namespace lpdiag {

const char* state_name(SessionState s) {
  switch (s) {
    case SessionState::kRunning:
      return "running";
    case SessionState::kAwaitingAnswer:
      return "awaiting_answer";
    case SessionState::kDone:
      return "done";
    case SessionState::kUndecided:
      return "undecided";
  }
  return "?";
}

namespace {

// Answers from the verdicts given so far; notes the first question past them.
class ReplayChannel : public HumanChannel {
 public:
  explicit ReplayChannel(const std::map<std::size_t, Truth>& verdicts)
      : verdicts_(verdicts) {}

  Truth ask(const HumanQuestion& q) override {
    auto it = verdicts_.find(q.seq);
    if (it == verdicts_.end()) {
      missed_ = true;
      throw ChannelClosed();
    }
    return it->second;
  }

  bool missed() const { return missed_; }

 private:
  const std::map<std::size_t, Truth>& verdicts_;
  bool missed_ = false;
};

class BadRequest : public std::runtime_error {
 public:
  BadRequest(int status, Json body)
      : std::runtime_error(body.dump()), status_(status), body_(std::move(body)) {}
  int status() const { return status_; }
  const Json& body() const { return body_; }

 private:
  int status_;
  Json body_;
};

Json error_doc(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

HttpResponse reply(int status, const Json& doc) {
  return HttpResponse{status, doc.dump() + "\n"};
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const Json& field(const Json& body, const char* name) {
  if (!body.contains(name)) {
    throw BadRequest(400, error_doc("request", std::string("missing field '") + name + "'"));
  }
  return body.at(name);
}

std::string string_field(const Json& body, const char* name) {
  const Json& v = field(body, name);
  if (!v.is_string()) {
    throw BadRequest(400, error_doc("request", std::string("field '") + name + "' must be a string"));
  }
  return v.get<std::string>();
}

// Runs `f`, turning parse errors into 422 responses tagged with `what`.
template <typename F>
auto parsing(const std::string& what, F f) {
  try {
    return f();
  } catch (const ParseError& e) {
    Json err = parse_error_json(e);
    err["in"] = what;
    throw BadRequest(422, Json{{"error", err}});
  }
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : path) {
    if (c == '?') break;
    if (c == '/') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

struct SessionService::Session {
  std::string id;
  SessionKind kind = SessionKind::kIncorrectness;
  std::string program_text;
  std::string spec_text;
  Program program;
  std::unique_ptr<SpecPair> specs;
  Term query = Term::constant("true");
  std::optional<Term> answer;
  DiagnosisOptions options;
  std::map<std::size_t, Truth> verdicts;
  std::vector<JournalEntry> journal;
  SessionState state = SessionState::kRunning;
  std::optional<HumanQuestion> pending;
  Json result;
  std::optional<Term> symptom;
  std::mutex mu;

  Json request_json() const {
    Json out{{"kind", kind == SessionKind::kIncorrectness ? "incorrectness"
                                                         : "incompleteness"},
             {"program_text", program_text},
             {"spec", spec_text},
             {"query", to_string(query)}};
    if (answer) out["answer"] = to_string(*answer);
    out["mode"] = mode_name(options.mode);
    out["restart"] = options.restart;
    out["budget"] = Json{{"max_steps", options.budget.max_steps},
                         {"max_depth", options.budget.max_depth},
                         {"max_answers", options.budget.max_answers}};
    return out;
  }

  Json state_json() const {
    Json out{{"id", id},
             {"kind", kind == SessionKind::kIncorrectness ? "incorrectness"
                                                         : "incompleteness"},
             {"state", state_name(state)}};
    out["question"] = pending ? question_json(*pending) : Json();
    out["result"] = result;
    out["answered"] = journal.size();
    return out;
  }
};

SessionService::SessionService(std::optional<std::filesystem::path> journal_dir)
    : journal_dir_(std::move(journal_dir)) {}

SessionService::~SessionService() = default;

HttpResponse SessionService::handle(const std::string& method,
                                    const std::string& path,
                                    const std::string& body) {
  try {
    std::vector<std::string> parts = split_path(path);
    auto parse_body = [&]() {
      Json doc = Json::parse(body, nullptr, false);
      if (doc.is_discarded() || !doc.is_object()) {
        throw BadRequest(400, error_doc("request", "body must be a JSON object"));
      }
      return doc;
    };
    if (parts.size() == 1 && parts[0] == "health" && method == "GET") {
      return reply(200, Json{{"status", "ok"}});
    }
    if (!parts.empty() && parts[0] == "programs") {
      if (parts.size() == 1 && method == "POST") return create_program(parse_body());
      if (parts.size() == 2 && method == "GET") return get_program(parts[1]);
    }
    if (!parts.empty() && parts[0] == "sessions") {
      if (parts.size() == 1 && method == "POST") return create_session(parse_body());
      if (parts.size() >= 2) {
        std::shared_ptr<Session> s = find(parts[1]);
        if (!s) {
          return reply(404, error_doc("not_found", "unknown session " + parts[1]));
        }
        std::string tail = parts.size() == 3 ? parts[2] : "";
        if (parts.size() <= 3) {
          std::lock_guard<std::mutex> lock(s->mu);
          return session_route(*s, method, tail, body);
        }
      }
    }
    return reply(404, error_doc("not_found", method + " " + path));
  } catch (const BadRequest& e) {
    return reply(e.status(), e.body());
  }
}

HttpResponse SessionService::create_program(const Json& body) {
  auto stored = std::make_shared<StoredProgram>();
  stored->text = string_field(body, "text");
  stored->program = parsing("program", [&] { return parse_program(stored->text); });
  std::lock_guard<std::mutex> lock(mu_);
  std::string id = "p" + std::to_string(next_program_++);
  programs_[id] = stored;
  return reply(201, Json{{"id", id}, {"clauses", stored->program.size()}});
}

HttpResponse SessionService::get_program(const std::string& id) {
  std::shared_ptr<StoredProgram> p;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = programs_.find(id);
    if (it != programs_.end()) p = it->second;
  }
  if (!p) return reply(404, error_doc("not_found", "unknown program " + id));
  Json clauses = Json::array();
  for (const Clause& c : p->program.clauses()) clauses.push_back(to_string(c));
  return reply(200, Json{{"id", id}, {"text", p->text}, {"clauses", clauses}});
}

HttpResponse SessionService::create_session(const Json& body) {
  auto s = std::make_shared<Session>();
  std::string kind = string_field(body, "kind");
  if (kind == "incorrectness" || kind == "corr") {
    s->kind = SessionKind::kIncorrectness;
  } else if (kind == "incompleteness" || kind == "compl") {
    s->kind = SessionKind::kIncompleteness;
  } else {
    throw BadRequest(400, error_doc("request", "unknown kind '" + kind + "'"));
  }
  if (body.contains("program")) {
    std::string id = string_field(body, "program");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = programs_.find(id);
    if (it == programs_.end()) {
      throw BadRequest(404, error_doc("not_found", "unknown program " + id));
    }
    s->program_text = it->second->text;
    s->program = it->second->program;
  } else {
    s->program_text = string_field(body, "program_text");
    s->program = parsing("program", [&] { return parse_program(s->program_text); });
  }
  s->spec_text = string_field(body, "spec");
  s->specs = std::make_unique<SpecPair>(
      parsing("spec", [&] { return parse_spec_file(s->spec_text); }));
  Query q = parsing("query", [&] { return parse_query(string_field(body, "query")); });
  if (q.size() != 1) {
    throw BadRequest(422, error_doc("query", "the query must be a single atom"));
  }
  s->query = q.front();
  if (body.contains("answer")) {
    s->answer = parsing("answer", [&] { return parse_term(string_field(body, "answer")); });
  }
  if (body.contains("mode")) {
    auto m = parse_mode(string_field(body, "mode"));
    if (!m) throw BadRequest(400, error_doc("request", "unknown mode"));
    s->options.mode = *m;
  }
  if (body.contains("restart")) {
    if (!body["restart"].is_boolean()) {
      throw BadRequest(400, error_doc("request", "field 'restart' must be a boolean"));
    }
    s->options.restart = body["restart"].get<bool>();
  }
  if (body.contains("budget")) {
    const Json& b = body["budget"];
    auto set = [&](const char* name, std::size_t& slot) {
      if (!b.contains(name)) return;
      if (!b[name].is_number_unsigned() || b[name].get<std::size_t>() == 0) {
        throw BadRequest(400, error_doc("request", std::string("budget.") + name +
                                                       " must be a positive integer"));
      }
      slot = b[name].get<std::size_t>();
    };
    set("max_steps", s->options.budget.max_steps);
    set("max_depth", s->options.budget.max_depth);
    set("max_answers", s->options.budget.max_answers);
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    s->id = "s" + std::to_string(next_session_++);
    sessions_[s->id] = s;
  }
  std::lock_guard<std::mutex> lock(s->mu);
  advance(*s);
  return reply(201, s->state_json());
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

HttpResponse SessionService::session_route(Session& s, const std::string& method,
                                           const std::string& tail,
                                           const std::string& body) {
  if (method == "GET" && tail.empty()) return reply(200, s.state_json());
  if (method == "GET" && tail == "question") {
    if (!s.pending) return reply(404, Json{{"state", state_name(s.state)}});
    return reply(200, question_json(*s.pending));
  }
  if (method == "GET" && tail == "result") {
    if (s.state != SessionState::kDone && s.state != SessionState::kUndecided) {
      return reply(404, Json{{"state", state_name(s.state)}});
    }
    return reply(200, s.result);
  }
  if (method == "GET" && tail == "journal") {
    return reply(200, Json{{"session", s.id},
                           {"request", s.request_json()},
                           {"journal", journal_json(s.journal)}});
  }
  if (method == "GET" && tail == "prooftree") {
    std::optional<Term> target = s.answer ? s.answer : s.symptom;
    if (!target) {
      return reply(404, error_doc("not_found", "no symptom known yet"));
    }
    SolveResult r = solve({s.query}, s.program, s.options.budget,
                          [&](const Answer& a) { return !is_variant(a.atom(), *target); });
    for (const Answer& a : r.answers) {
      if (!is_variant(a.atom(), *target)) continue;
      Derivation d = r.derivation_for(a);
      return reply(200, proof_tree_json(proof_tree_for(d, subderivation_for(d, 0))));
    }
    return reply(404, error_doc("not_found", to_string(*target) + " was not computed"));
  }
  if (method == "GET" && tail == "trace") {
    return reply(200, search_trace_json(search_trace_for(s.query, s.program,
                                                         s.options.budget)));
  }
  if (method == "POST" && tail == "answer") {
    Json doc = Json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      return reply(400, error_doc("request", "body must be a JSON object"));
    }
    if (!s.pending) {
      return reply(409, Json{{"error", Json{{"kind", "conflict"},
                                            {"message", "no question is pending"}}},
                             {"state", state_name(s.state)}});
    }
    if (doc.contains("seq") &&
        (!doc["seq"].is_number_unsigned() || doc["seq"].get<std::size_t>() != s.pending->seq)) {
      return reply(409, Json{{"error", Json{{"kind", "conflict"},
                                            {"message", "stale question number"}}},
                             {"state", state_name(s.state)}});
    }
    if (!doc.contains("verdict") || !doc["verdict"].is_string() ||
        !parse_truth(doc["verdict"].get<std::string>())) {
      return reply(422, error_doc("verdict", "verdict must be yes, no or unknown"));
    }
    Truth t = *parse_truth(doc["verdict"].get<std::string>());
    s.verdicts[s.pending->seq] = t;
    s.journal.push_back(JournalEntry{s.pending->seq, s.pending->text(), t, utc_now()});
    advance(s);
    return reply(200, s.state_json());
  }
  return reply(404, error_doc("not_found", method + " " + tail));
}

void SessionService::advance(Session& s) {
  s.state = SessionState::kRunning;
  s.pending.reset();
  ReplayChannel channel(s.verdicts);
  Oracle oracle(s.specs->corr, s.specs->comp, s.program, channel);
  Outcome outcome;
  if (s.kind == SessionKind::kIncorrectness) {
    IncorrectnessResult r =
        s.answer ? diagnose_incorrect_answer(s.query, *s.answer, s.program, oracle, s.options)
                 : diagnose_query_incorrectness(s.query, s.program, oracle, s.options);
    outcome = r.outcome;
    if (r.symptom) s.symptom = r.symptom;
    s.result = incorrectness_json(r, s.program, oracle);
  } else {
    IncompletenessResult r =
        diagnose_incompleteness(s.query, s.program, oracle, s.options.budget);
    outcome = r.outcome;
    s.result = incompleteness_json(r, oracle);
  }
  if (channel.missed() && oracle.unanswered()) {
    s.state = SessionState::kAwaitingAnswer;
    s.pending = oracle.unanswered();
    s.result = Json();
    return;
  }
  s.state = outcome == Outcome::kUndecided ? SessionState::kUndecided
                                           : SessionState::kDone;
  dump(s);
}

void SessionService::dump(const Session& s) {
  if (!journal_dir_) return;
  std::error_code ec;
  std::filesystem::create_directories(*journal_dir_, ec);
  std::ofstream out(*journal_dir_ / (s.id + ".json"));
  out << Json{{"session", s.id},
              {"request", s.request_json()},
              {"journal", journal_json(s.journal)},
              {"result", s.result}}
             .dump(2)
      << "\n";
}

}  // namespace lpdiag
