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

#include "lpdiag/frontend/json_io.hpp"

#include <stdexcept>

namespace lpdiag {

Json term_structure(const Term& t) {
  if (t.is_variable()) return Json{{"var", t.name()}};
  Json args = Json::array();
  for (const Term& a : t.args()) args.push_back(term_structure(a));
  return Json{{"functor", t.name()}, {"args", std::move(args)}};
}

Json term_json(const Term& t) {
  return Json{{"text", to_string(t)}, {"term", term_structure(t)}};
}

Json terms_json(const std::vector<Term>& ts) {
  Json out = Json::array();
  for (const Term& t : ts) out.push_back(term_json(t));
  return out;
}

std::string question_text(const Verdict& v) {
  return HumanQuestion{v.seq, v.role, v.atom, v.answers, ""}.text();
}

Json verdict_json(const Verdict& v) {
  Json out{{"role", role_name(v.role)},
           {"question", question_text(v)},
           {"atom", term_json(v.atom)},
           {"verdict", truth_name(v.value)},
           {"source", source_name(v.source)}};
  if (v.role == Role::kCompl) out["answers"] = terms_json(v.answers);
  if (v.witness) out["witness"] = term_json(*v.witness);
  if (v.source == Source::kHuman) out["seq"] = v.seq;
  return out;
}

Json question_json(const HumanQuestion& q) {
  Json out{{"seq", q.seq},
           {"role", role_name(q.role)},
           {"question", q.text()},
           {"atom", term_json(q.atom)},
           {"context", q.context}};
  if (q.role == Role::kCompl) out["answers"] = terms_json(q.answers);
  return out;
}

Json journal_json(const std::vector<JournalEntry>& journal) {
  Json out = Json::array();
  for (const JournalEntry& e : journal) {
    out.push_back(Json{{"seq", e.seq},
                       {"question", e.question},
                       {"verdict", truth_name(e.verdict)},
                       {"timestamp", e.timestamp}});
  }
  return out;
}

namespace {

Json questions_json(const Oracle& oracle) {
  Json log = Json::array();
  for (const Verdict& v : oracle.log()) log.push_back(verdict_json(v));
  return Json{{"total", oracle.log().size()},
              {"machine", oracle.machine_count()},
              {"human", oracle.human_count()},
              {"log", std::move(log)}};
}

}  // namespace

Json incorrectness_json(const IncorrectnessResult& r, const Program& p,
                        const Oracle& oracle) {
  Json out{{"kind", "incorrectness"}, {"outcome", outcome_name(r.outcome)}};
  out["symptom"] = r.symptom ? term_json(*r.symptom) : Json();
  if (r.outcome == Outcome::kFound) {
    out["clause"] = Json{{"ordinal", r.clause_ordinal},
                         {"text", to_string(p.clause(r.clause_ordinal))}};
    out["error_instance"] =
        Json{{"head", term_json(r.head)}, {"body", terms_json(r.body)}};
  }
  out["path"] = terms_json(r.path);
  out["tree_nodes"] = r.tree_nodes;
  out["message"] = r.message;
  out["questions"] = questions_json(oracle);
  return out;
}

Json incompleteness_json(const IncompletenessResult& r, const Oracle& oracle) {
  Json out{{"kind", "incompleteness"}, {"outcome", outcome_name(r.outcome)}};
  out["symptom"] = r.symptom ? term_json(*r.symptom) : Json();
  if (r.outcome == Outcome::kFound) {
    out["error_atom"] = term_json(r.error_atom);
    out["procedure"] = to_string(r.procedure);
    out["witness"] = r.witness ? term_json(*r.witness) : Json();
  }
  out["path"] = terms_json(r.path);
  Json levels = Json::array();
  for (const LevelStats& l : r.levels) {
    levels.push_back(Json{{"atom", term_json(l.atom)},
                          {"entries", l.entries},
                          {"questions", l.questions}});
  }
  out["levels"] = std::move(levels);
  out["message"] = r.message;
  out["questions"] = questions_json(oracle);
  return out;
}

Json proof_tree_json(const ProofTree& t) {
  Json children = Json::array();
  for (const ProofTree& c : t.children) children.push_back(proof_tree_json(c));
  return Json{{"atom", term_json(t.atom)},
              {"clause", t.clause_ordinal},
              {"children", std::move(children)}};
}

Json search_trace_json(const TopLevelTrace& t) {
  Json entries = Json::array();
  for (const TraceEntry& e : t.entries) {
    entries.push_back(Json{{"invocation", e.invocation},
                           {"call", term_json(e.call)},
                           {"answers", terms_json(e.answers)}});
  }
  return Json{{"for", term_json(t.for_atom)},
              {"answers", terms_json(t.answers)},
              {"entries", std::move(entries)},
              {"complete", t.complete()}};
}

Json events_json(const std::vector<BoxEvent>& events) {
  Json out = Json::array();
  for (const BoxEvent& e : events) {
    Json j{{"port", port_name(e.port)},
           {"invocation", e.invocation},
           {"depth", e.depth},
           {"atom", term_json(e.atom)}};
    if (e.port == Port::kExit) j["nondet"] = e.nondet;
    out.push_back(std::move(j));
  }
  return out;
}

Json parse_error_json(const ParseError& e) {
  return Json{{"kind", "parse"},
              {"line", e.line()},
              {"column", e.column()},
              {"expected", e.expected()},
              {"found", e.found()},
              {"message", e.what()}};
}

std::map<std::size_t, Truth> parse_script(const Json& doc) {
  std::map<std::size_t, Truth> out;
  auto verdict = [](const Json& v) {
    if (!v.is_string()) throw std::invalid_argument("verdict must be a string");
    auto t = parse_truth(v.get<std::string>());
    if (!t) {
      throw std::invalid_argument("unknown verdict '" + v.get<std::string>() +
                                  "'");
    }
    return *t;
  };
  if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) out[i + 1] = verdict(doc[i]);
  } else if (doc.is_object()) {
    for (const auto& [k, v] : doc.items()) {
      std::size_t pos = 0;
      unsigned long seq = 0;
      try {
        seq = std::stoul(k, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != k.size() || seq == 0) {
        throw std::invalid_argument("bad question number '" + k + "'");
      }
      out[seq] = verdict(v);
    }
  } else {
    throw std::invalid_argument("answers must be an object or an array");
  }
  return out;
}

}  // namespace lpdiag
