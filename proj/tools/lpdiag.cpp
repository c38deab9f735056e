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

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lpdiag/frontend/json_io.hpp"
#include "lpdiag/frontend/report.hpp"
#include "lpdiag/frontend/session.hpp"

namespace lpdiag {
namespace {

constexpr int kExitError = 2;

struct CliError {
  std::string kind;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"io", "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename F>
auto parse_in(const std::string& where, F f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw CliError{"parse", where + ":" + e.what()};
  }
}

Program load_program(const std::string& path) {
  std::string text = read_file(path);
  return parse_in(path, [&] { return parse_program(text); });
}

Query load_query(const std::string& text) {
  return parse_in("query", [&] { return parse_query(text); });
}

Term single_atom(const std::string& text) {
  Query q = load_query(text);
  if (q.size() != 1) throw CliError{"query", "expected a single atom"};
  return q.front();
}

class StdinChannel : public HumanChannel {
 public:
  Truth ask(const HumanQuestion& q) override {
    for (;;) {
      std::cerr << "? " << q.text() << " [yes/no/unknown]: " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line)) throw ChannelClosed();
      if (line == "y" || line == "yes") return Truth::kYes;
      if (line == "n" || line == "no") return Truth::kNo;
      if (line == "u" || line == "unknown") return Truth::kUnknown;
    }
  }
};

struct Common {
  std::string file;
  std::string query;
  bool json = false;
  Budget budget;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("file", c.file, "Program file")->required();
  cmd->add_option("-q,--query", c.query, "Query")->required();
  cmd->add_option("--max-steps", c.budget.max_steps, "Resolution attempts")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-depth", c.budget.max_depth, "Derivation length")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-answers", c.budget.max_answers, "Answers collected")
      ->check(CLI::PositiveNumber);
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

// The derivation of answer `n` (1-based) of a single-atom query.
struct Located {
  SolveResult run;
  Derivation d;
  Subderivation sub;
};

Located nth_answer(const Common& c, std::size_t n) {
  Program p = load_program(c.file);
  Term atom = single_atom(c.query);
  Located out;
  std::size_t seen = 0;
  out.run = solve({atom}, p, c.budget, [&](const Answer&) { return ++seen < n; });
  if (out.run.answers.size() < n) {
    throw CliError{"query", "answer " + std::to_string(n) + " not computed"};
  }
  out.d = out.run.derivation_for(out.run.answers[n - 1]);
  out.sub = subderivation_for(out.d, 0);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Pure Prolog interpreter, box tracer and declarative diagnoser"};
  app.require_subcommand(1);

  Common solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Print the answers of a query");
  add_common(solve_cmd, solve_opts);

  Common trace_opts;
  bool sicstus_redo = false;
  auto* trace_cmd = app.add_subcommand("trace", "Print the four-port trace");
  add_common(trace_cmd, trace_opts);
  trace_cmd->add_flag("--sicstus-redo", sicstus_redo,
                      "Hide Redo items whose Exit was deterministic");

  Common st_opts;
  std::size_t st_answer = 1;
  auto* st_cmd = app.add_subcommand("success-trace",
                                    "Top-level success trace of an answer");
  add_common(st_cmd, st_opts);
  st_cmd->add_option("-n,--answer", st_answer, "Answer number")
      ->check(CLI::PositiveNumber);

  Common search_opts;
  auto* search_cmd =
      app.add_subcommand("search-trace", "Top-level search trace of an atom");
  add_common(search_cmd, search_opts);
  search_cmd->add_flag("--json", search_opts.json, "JSON output");

  Common tree_opts;
  std::size_t tree_answer = 1;
  auto* tree_cmd = app.add_subcommand("prooftree", "Proof tree of an answer");
  add_common(tree_cmd, tree_opts);
  tree_cmd->add_option("-n,--answer", tree_answer, "Answer number")
      ->check(CLI::PositiveNumber);
  tree_cmd->add_flag("--json", tree_opts.json, "JSON output");

  Common diag_opts;
  std::string kind, spec_file, answers_file, answer_atom, mode = "tree";
  bool interactive = false, restart = false;
  auto* diag_cmd = app.add_subcommand("diagnose", "Locate an error");
  diag_cmd->add_option("kind", kind, "corr or compl")
      ->required()
      ->check(CLI::IsMember({"corr", "compl"}));
  add_common(diag_cmd, diag_opts);
  diag_cmd->add_option("--spec", spec_file, "Specification file")->required();
  diag_cmd->add_option("--answer", answer_atom,
                       "Computed answer to diagnose (corr)");
  diag_cmd->add_option("--mode", mode, "tree, alg4 or alg5")
      ->check(CLI::IsMember({"tree", "alg4", "alg5"}));
  diag_cmd->add_flag("--restart", restart, "Restart the engine at each step");
  auto* inter = diag_cmd->add_flag("--interactive", interactive,
                                   "Ask undecided questions on the terminal");
  auto* scripted = diag_cmd->add_option("--answers", answers_file,
                                        "JSON file of scripted verdicts");
  inter->excludes(scripted);
  diag_cmd->add_flag("--json", diag_opts.json, "JSON output");

  std::string host = "127.0.0.1", journal_dir;
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP session service");
  serve_cmd->add_option("--host", host, "Address to bind");
  serve_cmd->add_option("--port", port, "Port, 0 for any")
      ->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--journal-dir", journal_dir,
                        "Write finished session journals here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "error: usage: " << msg << "\n";
    return kExitError;
  }

  if (*solve_cmd) {
    Program p = load_program(solve_opts.file);
    std::cout << render_answers(solve(load_query(solve_opts.query), p, solve_opts.budget));
    return 0;
  }
  if (*trace_cmd) {
    Program p = load_program(trace_opts.file);
    SolveResult r = solve(load_query(trace_opts.query), p, trace_opts.budget);
    std::cout << render_events(r.events, sicstus_redo);
    return 0;
  }
  if (*st_cmd) {
    Located l = nth_answer(st_opts, st_answer);
    std::cout << render_success_trace(success_trace_for(l.d, l.sub));
    return 0;
  }
  if (*search_cmd) {
    Program p = load_program(search_opts.file);
    TopLevelTrace t = search_trace_for(single_atom(search_opts.query), p,
                                       search_opts.budget);
    if (search_opts.json) {
      print_json(search_trace_json(t));
    } else {
      std::cout << render_search_trace(t);
    }
    return 0;
  }
  if (*tree_cmd) {
    Located l = nth_answer(tree_opts, tree_answer);
    ProofTree t = proof_tree_for(l.d, l.sub);
    if (tree_opts.json) {
      print_json(proof_tree_json(t));
    } else {
      std::cout << render_proof_tree(t);
    }
    return 0;
  }
  if (*diag_cmd) {
    Program p = load_program(diag_opts.file);
    std::string spec_text = read_file(spec_file);
    SpecPair specs = parse_in(spec_file, [&] { return parse_spec_file(spec_text); });
    Term atom = single_atom(diag_opts.query);
    std::unique_ptr<HumanChannel> human;
    if (interactive) {
      human = std::make_unique<StdinChannel>();
    } else if (!answers_file.empty()) {
      Json doc = Json::parse(read_file(answers_file), nullptr, false);
      if (doc.is_discarded()) throw CliError{"answers", answers_file + ": not JSON"};
      try {
        human = std::make_unique<ScriptedChannel>(parse_script(doc));
      } catch (const std::invalid_argument& e) {
        throw CliError{"answers", answers_file + ": " + e.what()};
      }
    } else {
      human = std::make_unique<ClosedChannel>();
    }
    Oracle oracle(specs.corr, specs.comp, p, *human);
    Outcome outcome;
    if (kind == "corr") {
      DiagnosisOptions opts;
      opts.mode = *parse_mode(mode);
      opts.restart = restart;
      opts.budget = diag_opts.budget;
      IncorrectnessResult r =
          answer_atom.empty()
              ? diagnose_query_incorrectness(atom, p, oracle, opts)
              : diagnose_incorrect_answer(
                    atom, parse_in("answer", [&] { return parse_term(answer_atom); }),
                    p, oracle, opts);
      outcome = r.outcome;
      if (diag_opts.json) {
        print_json(incorrectness_json(r, p, oracle));
      } else {
        std::cout << render_incorrectness(r, p, oracle);
      }
    } else {
      IncompletenessResult r = diagnose_incompleteness(atom, p, oracle, diag_opts.budget);
      outcome = r.outcome;
      if (diag_opts.json) {
        print_json(incompleteness_json(r, oracle));
      } else {
        std::cout << render_incompleteness(r, oracle);
      }
    }
    return outcome == Outcome::kFound || outcome == Outcome::kNotASymptom ? 0 : 1;
  }
  if (*serve_cmd) {
    SessionService service(journal_dir.empty()
                               ? std::nullopt
                               : std::optional<std::filesystem::path>(journal_dir));
    HttpServer server(service);
    int bound = server.bind(host, port);
    if (bound < 0) {
      throw CliError{"io", "cannot bind " + host + ":" + std::to_string(port)};
    }
    std::cerr << "listening on http://" << host << ":" << bound << "\n";
    server.listen();
    return 0;
  }
  return kExitError;
}

}  // namespace
}  // namespace lpdiag

int main(int argc, char** argv) {
  try {
    return lpdiag::run(argc, argv);
  } catch (const lpdiag::CliError& e) {
    std::cerr << "error: " << e.kind << ": " << e.message << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
  }
  return lpdiag::kExitError;
}
