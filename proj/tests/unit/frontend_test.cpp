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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "lpdiag/frontend/json_io.hpp"
#include "lpdiag/frontend/report.hpp"
#include "lpdiag/frontend/session.hpp"

namespace lpdiag {
namespace {

std::string read_path(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& name) {
  return read_path(std::string(LPDIAG_TEST_DATA) + "/" + name);
}

Json parse(const HttpResponse& r) { return Json::parse(r.body); }

TEST(TermJson, Structure) {
  Json j = term_json(parse_term("f(X,[a])"));
  EXPECT_EQ(j["text"], "f(X,[a])");
  EXPECT_EQ(j["term"]["functor"], "f");
  EXPECT_EQ(j["term"]["args"][0]["var"], "X");
  EXPECT_EQ(j["term"]["args"][1]["functor"], ".");
  EXPECT_EQ(j["term"]["args"][1]["args"][1]["functor"], "[]");
}

TEST(Script, Formats) {
  auto a = parse_script(Json::parse(R"(["no","yes"])"));
  EXPECT_EQ(a.at(1), Truth::kNo);
  EXPECT_EQ(a.at(2), Truth::kYes);
  auto b = parse_script(Json::parse(R"({"3":"unknown"})"));
  EXPECT_EQ(b.at(3), Truth::kUnknown);
  EXPECT_THROW(parse_script(Json::parse(R"({"x":"no"})")), std::invalid_argument);
  EXPECT_THROW(parse_script(Json::parse(R"(["maybe"])")), std::invalid_argument);
  EXPECT_THROW(parse_script(Json::parse("3")), std::invalid_argument);
}

TEST(Report, Answers) {
  Program p = parse_program(data("app.pl"));
  EXPECT_EQ(render_answers(solve(parse_query("app(X,Y,[1])"), p)),
            "X = [], Y = [1]\nX = [1], Y = []\n");
  EXPECT_EQ(render_answers(solve(parse_query("app([],[],[])"), p)), "true\n");
  Budget b;
  b.max_steps = 5;
  EXPECT_EQ(render_answers(solve(parse_query("p"), parse_program("p :- p."), b)),
            "% truncated: max_steps\n");
}

TEST(Report, ProofTree) {
  ProofTree leaf{parse_term("q"), 3, 0, {}};
  ProofTree mid{parse_term("r"), 2, 0, {leaf}};
  ProofTree root{parse_term("p"), 1, 0, {mid, leaf}};
  EXPECT_EQ(render_proof_tree(root),
            "p  [clause 1]\n"
            "+-- r  [clause 2]\n"
            "|   `-- q  [clause 3]\n"
            "`-- q  [clause 3]\n");
}

Json even_session_request(const std::string& kind = "incorrectness") {
  return Json{{"kind", kind},
              {"program_text", data("even_bug.pl")},
              {"spec", data("even.spec")},
              {"query", "even(s(0))"}};
}

TEST(Service, EvenBugSessionMatchesCli) {
  SessionService svc;
  HttpResponse created = svc.handle("POST", "/sessions", even_session_request().dump());
  ASSERT_EQ(created.status, 201) << created.body;
  Json state = parse(created);
  EXPECT_EQ(state["state"], "done");
  EXPECT_TRUE(state["question"].is_null());
  std::string id = state["id"];
  HttpResponse result = svc.handle("GET", "/sessions/" + id + "/result", "");
  ASSERT_EQ(result.status, 200);
  EXPECT_EQ(parse(result), Json::parse(read_path(std::string(LPDIAG_GOLDEN) +
                                                 "/diagnose_corr_even_json.out")));
  EXPECT_EQ(parse(result)["clause"]["ordinal"], 2);
  HttpResponse q = svc.handle("GET", "/sessions/" + id + "/question", "");
  EXPECT_EQ(q.status, 404);
  EXPECT_EQ(parse(q)["state"], "done");
  HttpResponse tree = svc.handle("GET", "/sessions/" + id + "/prooftree", "");
  ASSERT_EQ(tree.status, 200);
  EXPECT_EQ(parse(tree)["children"][0]["atom"]["text"], "even(0)");
  HttpResponse trace = svc.handle("GET", "/sessions/" + id + "/trace", "");
  ASSERT_EQ(trace.status, 200);
  EXPECT_EQ(parse(trace)["entries"].size(), 1u);
}

Json open_request() {
  return Json{{"kind", "incorrectness"},
              {"program_text", data("open.pl")},
              {"spec", data("open.spec")},
              {"query", "p(X)"}};
}

TEST(Service, HumanQuestionsStepThroughStates) {
  SessionService svc;
  Json state = parse(svc.handle("POST", "/sessions", open_request().dump()));
  std::string id = state["id"];
  ASSERT_EQ(state["state"], "awaiting_answer");
  EXPECT_EQ(state["question"]["seq"], 1);
  EXPECT_EQ(state["question"]["question"], "correct: p(_G2)");
  EXPECT_EQ(svc.handle("GET", "/sessions/" + id + "/result", "").status, 404);

  HttpResponse stale = svc.handle("POST", "/sessions/" + id + "/answer",
                                  R"({"seq": 2, "verdict": "no"})");
  EXPECT_EQ(stale.status, 409);
  HttpResponse bad = svc.handle("POST", "/sessions/" + id + "/answer",
                                R"({"verdict": "maybe"})");
  EXPECT_EQ(bad.status, 422);

  HttpResponse first = svc.handle("POST", "/sessions/" + id + "/answer",
                                  R"({"seq": 1, "verdict": "no"})");
  ASSERT_EQ(first.status, 200);
  state = parse(first);
  EXPECT_EQ(state["state"], "awaiting_answer");
  EXPECT_EQ(state["question"]["seq"], 2);
  EXPECT_EQ(state["question"]["question"], "correct: q(_G2)");
  EXPECT_EQ(svc.handle("GET", "/sessions/" + id + "/question", "").status, 200);

  state = parse(svc.handle("POST", "/sessions/" + id + "/answer",
                           R"({"verdict": "no"})"));
  EXPECT_EQ(state["state"], "done");
  EXPECT_EQ(state["result"]["clause"]["ordinal"], 2);
  EXPECT_EQ(state["answered"], 2);

  HttpResponse again = svc.handle("POST", "/sessions/" + id + "/answer",
                                  R"({"verdict": "no"})");
  EXPECT_EQ(again.status, 409);

  Json journal = parse(svc.handle("GET", "/sessions/" + id + "/journal", ""));
  ASSERT_EQ(journal["journal"].size(), 2u);
  EXPECT_EQ(journal["journal"][1]["question"], "correct: q(_G2)");
  EXPECT_EQ(journal["journal"][1]["verdict"], "no");
}

TEST(Service, UnknownVerdictIsUndecided) {
  SessionService svc;
  Json state = parse(svc.handle("POST", "/sessions", open_request().dump()));
  std::string id = state["id"];
  state = parse(svc.handle("POST", "/sessions/" + id + "/answer",
                           R"({"verdict": "unknown"})"));
  EXPECT_EQ(state["state"], "undecided");
  EXPECT_EQ(state["result"]["outcome"], "undecided");
}

// Replays the journal of a finished session into a fresh one.
std::string replay(SessionService& svc, const Json& journal_doc) {
  Json request = journal_doc["request"];
  Json state = parse(svc.handle("POST", "/sessions", request.dump()));
  std::string id = state["id"];
  for (const Json& e : journal_doc["journal"]) {
    Json answer{{"seq", e["seq"]}, {"verdict", e["verdict"]}};
    svc.handle("POST", "/sessions/" + id + "/answer", answer.dump());
  }
  return svc.handle("GET", "/sessions/" + id + "/result", "").body;
}

TEST(Service, JournalReplayIsByteIdentical) {
  for (const Json& request :
       {open_request(), even_session_request(),
        even_session_request("incompleteness")}) {
    SessionService svc;
    Json state = parse(svc.handle("POST", "/sessions", request.dump()));
    std::string id = state["id"];
    while (state["state"] == "awaiting_answer") {
      state = parse(svc.handle("POST", "/sessions/" + id + "/answer",
                               R"({"verdict": "no"})"));
    }
    std::string original = svc.handle("GET", "/sessions/" + id + "/result", "").body;
    Json journal = parse(svc.handle("GET", "/sessions/" + id + "/journal", ""));
    SessionService other;
    EXPECT_EQ(replay(other, journal), original);
    EXPECT_EQ(replay(svc, journal), original);
  }
}

TEST(Service, ProgramStoreAndErrors) {
  SessionService svc;
  HttpResponse p = svc.handle("POST", "/programs",
                              Json{{"text", data("even_bug.pl")}}.dump());
  ASSERT_EQ(p.status, 201);
  std::string pid = parse(p)["id"];
  EXPECT_EQ(parse(svc.handle("GET", "/programs/" + pid, ""))["clauses"].size(), 2u);
  Json req{{"kind", "compl"}, {"program", pid}, {"spec", data("even.spec")},
           {"query", "even(s(s(0)))"}};
  Json state = parse(svc.handle("POST", "/sessions", req.dump()));
  EXPECT_EQ(state["state"], "done");
  EXPECT_EQ(state["result"]["outcome"], "not-a-symptom");

  HttpResponse bad = svc.handle("POST", "/programs", R"({"text": "p(X :- q."})");
  EXPECT_EQ(bad.status, 422);
  EXPECT_EQ(parse(bad)["error"]["line"], 1);
  EXPECT_EQ(parse(bad)["error"]["column"], 5);

  req["spec"] = "%% corr\np(.\n";
  EXPECT_EQ(svc.handle("POST", "/sessions", req.dump()).status, 422);
  req["program"] = "p99";
  EXPECT_EQ(svc.handle("POST", "/sessions", req.dump()).status, 404);
  EXPECT_EQ(svc.handle("GET", "/sessions/s99", "").status, 404);
  EXPECT_EQ(svc.handle("GET", "/programs/p99", "").status, 404);
  EXPECT_EQ(svc.handle("POST", "/sessions", "not json").status, 400);
  EXPECT_EQ(svc.handle("POST", "/sessions", R"({"kind":"x"})").status, 400);
  EXPECT_EQ(svc.handle("GET", "/nowhere", "").status, 404);
  EXPECT_EQ(svc.handle("GET", "/health", "").status, 200);
}

TEST(Service, JournalDirectory) {
  auto dir = std::filesystem::temp_directory_path() / "lpdiag_journal_test";
  std::filesystem::remove_all(dir);
  SessionService svc(dir);
  Json state = parse(svc.handle("POST", "/sessions", even_session_request().dump()));
  std::string id = state["id"];
  Json dumped = Json::parse(read_path((dir / (id + ".json")).string()));
  EXPECT_EQ(dumped["result"], state["result"]);
  std::filesystem::remove_all(dir);
}

TEST(Http, LiveSocketWalk) {
  SessionService svc;
  HttpServer server(svc);
  int port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  server.start();
  httplib::Client cli("127.0.0.1", port);
  auto health = cli.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  auto created = cli.Post("/sessions", open_request().dump(), "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 201);
  Json state = Json::parse(created->body);
  std::string id = state["id"];
  while (state["state"] == "awaiting_answer") {
    auto r = cli.Post(("/sessions/" + id + "/answer").c_str(),
                      R"({"verdict":"no"})", "application/json");
    ASSERT_TRUE(r);
    ASSERT_EQ(r->status, 200);
    state = Json::parse(r->body);
  }
  auto result = cli.Get(("/sessions/" + id + "/result").c_str());
  ASSERT_TRUE(result);
  EXPECT_EQ(Json::parse(result->body)["clause"]["ordinal"], 2);
  auto missing = cli.Get("/sessions/zz/question");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  server.stop();
}

}  // namespace
}  // namespace lpdiag
