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

#ifndef LPDIAG_FRONTEND_SESSION_HPP_
#define LPDIAG_FRONTEND_SESSION_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "lpdiag/frontend/json_io.hpp"

namespace lpdiag {

struct HttpResponse {
  int status = 200;
  std::string body;
};

enum class SessionKind { kIncorrectness, kIncompleteness };
enum class SessionState { kRunning, kAwaitingAnswer, kDone, kUndecided };

const char* state_name(SessionState s);

/// \brief In-memory diagnosis sessions behind a JSON request interface.
///
/// A session re-runs its diagnosis from the start whenever a verdict
/// arrives, answering earlier questions from its verdict record, so every
/// state is a function of the verdicts given so far.
///
///   GET  /health
///   POST /programs                     {"text"}
///   GET  /programs/{id}
///   POST /sessions                     {"kind", "program" | "program_text",
///                                       "spec", "query", "answer"?, "mode"?,
///                                       "restart"?, "budget"?}
///   GET  /sessions/{id}
///   GET  /sessions/{id}/question
///   POST /sessions/{id}/answer         {"verdict", "seq"?}
///   GET  /sessions/{id}/result
///   GET  /sessions/{id}/journal
///   GET  /sessions/{id}/prooftree
///   GET  /sessions/{id}/trace
class SessionService {
 public:
  explicit SessionService(std::optional<std::filesystem::path> journal_dir = {});
  ~SessionService();

  HttpResponse handle(const std::string& method, const std::string& path,
                      const std::string& body);

 private:
  struct Session;
  struct StoredProgram {
    std::string text;
    Program program;
  };

  HttpResponse create_program(const Json& body);
  HttpResponse get_program(const std::string& id);
  HttpResponse create_session(const Json& body);
  HttpResponse session_route(Session& s, const std::string& method,
                             const std::string& tail, const std::string& body);
  std::shared_ptr<Session> find(const std::string& id);
  void advance(Session& s);
  void dump(const Session& s);

  std::optional<std::filesystem::path> journal_dir_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<StoredProgram>> programs_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::size_t next_program_ = 1;
  std::size_t next_session_ = 1;
};

/// Serves a SessionService over HTTP on a background thread.
class HttpServer {
 public:
  explicit HttpServer(SessionService& service);
  ~HttpServer();

  /// Binds `host:port`; port 0 picks a free port. Returns the bound port or
  /// -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lpdiag

#endif  // LPDIAG_FRONTEND_SESSION_HPP_
