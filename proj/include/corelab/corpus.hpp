//
//   Copyright 2026 the corelab authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "corelab/errors.hpp"
#include "corelab/io.hpp"
#include "corelab/language_tag.hpp"
#include "corelab/unicode.hpp"

namespace corelab {

using Json = nlohmann::ordered_json;

// One prompt/reasoning/answer record. Fields beyond the schema are preserved
// opaquely so corpora from other pipelines survive a round trip.
struct ReasoningTrace {
  std::string id;
  std::string model;
  std::string prompt_language;  // ISO code of the prompt
  std::string dataset;
  std::string domain;
  std::string prompt;
  std::string reasoning;
  std::string answer;
  std::optional<std::string> gold;
  std::optional<bool> correct;
  std::optional<int> fluency;   // 1..3 rating, filled by attach_ratings
  std::optional<int> accuracy;  // 1..3 rating, filled by attach_ratings
  Json extras = Json::object();
};

enum class RatingDimension { Fluency, Accuracy };

inline const char* rating_dimension_name(RatingDimension d) {
  return d == RatingDimension::Fluency ? "fluency" : "accuracy";
}

struct RatingRecord {
  std::string trace_id;
  RatingDimension dimension = RatingDimension::Accuracy;
  int score = 0;  // rubric scale 1..3
  std::string rater;
};

namespace detail {

inline const char* kTraceFields[] = {"id",     "model",     "prompt_language",
                                     "dataset", "domain",   "prompt",
                                     "reasoning", "answer", "gold",
                                     "correct", "fluency",  "accuracy"};

inline std::string require_string(const Json& obj, const char* field,
                                  std::size_t line_no) {
  auto it = obj.find(field);
  if (it == obj.end()) {
    throw InputError("line " + std::to_string(line_no) + ": missing field " + field);
  }
  if (!it->is_string()) {
    throw InputError("line " + std::to_string(line_no) + ": field " + field +
                     " must be a string");
  }
  return it->get<std::string>();
}

}  // namespace detail

inline ReasoningTrace trace_from_json(const Json& obj, std::size_t line_no) {
  if (!obj.is_object()) {
    throw InputError("line " + std::to_string(line_no) + ": not a JSON object");
  }
  ReasoningTrace t;
  t.id = detail::require_string(obj, "id", line_no);
  t.model = detail::require_string(obj, "model", line_no);
  t.prompt_language = detail::require_string(obj, "prompt_language", line_no);
  t.dataset = detail::require_string(obj, "dataset", line_no);
  t.domain = detail::require_string(obj, "domain", line_no);
  t.prompt = detail::require_string(obj, "prompt", line_no);
  t.reasoning = detail::require_string(obj, "reasoning", line_no);
  t.answer = detail::require_string(obj, "answer", line_no);
  if (auto it = obj.find("gold"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) {
      throw InputError("line " + std::to_string(line_no) + ": field gold must be a string");
    }
    t.gold = it->get<std::string>();
  }
  if (auto it = obj.find("correct"); it != obj.end() && !it->is_null()) {
    if (!it->is_boolean()) {
      throw InputError("line " + std::to_string(line_no) +
                       ": field correct must be a boolean");
    }
    if (!t.gold.has_value()) {
      throw InputError("line " + std::to_string(line_no) + ": correct without gold");
    }
    t.correct = it->get<bool>();
  }
  for (const char* field : {"fluency", "accuracy"}) {
    if (auto it = obj.find(field); it != obj.end() && !it->is_null()) {
      if (!it->is_number_integer()) {
        throw InputError("line " + std::to_string(line_no) + ": field " + field +
                         " must be an integer");
      }
      (field[0] == 'f' ? t.fluency : t.accuracy) = it->get<int>();
    }
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* field : detail::kTraceFields) {
      if (it.key() == field) known = true;
    }
    if (!known) t.extras[it.key()] = it.value();
  }
  return t;
}

inline Json trace_to_json(const ReasoningTrace& t) {
  Json obj = Json::object();
  obj["id"] = t.id;
  obj["model"] = t.model;
  obj["prompt_language"] = t.prompt_language;
  obj["dataset"] = t.dataset;
  obj["domain"] = t.domain;
  obj["prompt"] = t.prompt;
  obj["reasoning"] = t.reasoning;
  obj["answer"] = t.answer;
  if (t.gold) obj["gold"] = *t.gold;
  if (t.correct) obj["correct"] = *t.correct;
  if (t.fluency) obj["fluency"] = *t.fluency;
  if (t.accuracy) obj["accuracy"] = *t.accuracy;
  for (auto it = t.extras.begin(); it != t.extras.end(); ++it) {
    obj[it.key()] = it.value();
  }
  return obj;
}

// One JSON object per line. Whitespace-only lines are skipped; anything else
// that fails to parse is an error carrying its line number.
inline std::vector<ReasoningTrace> read_corpus(const std::string& path) {
  auto lines = read_lines(path);
  std::vector<ReasoningTrace> traces;
  std::unordered_map<std::string, std::size_t> seen;  // id -> line number
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::size_t line_no = i + 1;
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
    ReasoningTrace t = trace_from_json(obj, line_no);
    auto [it, inserted] = seen.emplace(t.id, line_no);
    if (!inserted) {
      throw InputError("duplicate id '" + t.id + "' at lines " +
                       std::to_string(it->second) + " and " + std::to_string(line_no));
    }
    traces.push_back(std::move(t));
  }
  return traces;
}

inline void write_corpus(const std::vector<ReasoningTrace>& traces, std::ostream& out) {
  for (const auto& t : traces) {
    out << trace_to_json(t).dump() << '\n';
  }
}

// --- correctness scoring ----------------------------------------------------

// Last standalone choice letter A-D (either case, optionally parenthesized).
// Standalone means not flanked by Latin letters or ASCII digits, which keeps
// letters inside words out while accepting "(C)", "C." and CJK-adjacent "…是C".
inline std::optional<char> extract_choice_letter(const std::string& answer) {
  std::vector<char32_t> cps;
  try {
    cps = decode_utf8(answer);
  } catch (const InputError&) {
    return std::nullopt;
  }
  auto blocks = [](char32_t cp) {
    return (cp >= '0' && cp <= '9') || script_of(cp) == Script::Latin;
  };
  std::optional<char> last;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    char32_t cp = cps[i];
    bool is_choice = (cp >= 'A' && cp <= 'D') || (cp >= 'a' && cp <= 'd');
    if (!is_choice) continue;
    if (i > 0 && blocks(cps[i - 1])) continue;
    if (i + 1 < cps.size() && blocks(cps[i + 1])) continue;
    last = static_cast<char>(cp >= 'a' ? cp - 'a' + 'A' : cp);
  }
  return last;
}

// Case-insensitive comparison of the extracted choice letter against gold.
// Returns false and records a diagnostic when no letter can be extracted.
inline bool score_correctness(const ReasoningTrace& trace, Diagnostics* diag = nullptr) {
  if (!trace.gold.has_value()) {
    throw InputError("trace '" + trace.id + "': score_correctness requires gold");
  }
  auto letter = extract_choice_letter(trace.answer);
  if (!letter.has_value()) {
    warn(diag, "trace '" + trace.id + "': unparseable answer");
    return false;
  }
  const std::string& gold = *trace.gold;
  if (gold.size() != 1) return false;
  char g = gold[0];
  if (g >= 'a' && g <= 'z') g = static_cast<char>(g - 'a' + 'A');
  return g == *letter;
}

// --- rating ingestion ---------------------------------------------------------

inline std::vector<RatingRecord> read_ratings(const std::string& path) {
  auto lines = read_lines(path);
  std::vector<RatingRecord> records;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw InputError("line " + std::to_string(i + 1) + ": " + e.what());
    }
    RatingRecord r;
    r.trace_id = detail::require_string(obj, "trace_id", i + 1);
    std::string dim = detail::require_string(obj, "dimension", i + 1);
    if (dim == "fluency") {
      r.dimension = RatingDimension::Fluency;
    } else if (dim == "accuracy") {
      r.dimension = RatingDimension::Accuracy;
    } else {
      throw InputError("line " + std::to_string(i + 1) + ": unknown dimension '" +
                       dim + "'");
    }
    if (!obj.contains("score") || !obj["score"].is_number_integer()) {
      throw InputError("line " + std::to_string(i + 1) + ": missing integer score");
    }
    r.score = obj["score"].get<int>();
    r.rater = obj.value("rater", "");
    records.push_back(std::move(r));
  }
  return records;
}

// Later records override earlier ones for the same (trace, dimension).
// Records with out-of-rubric scores are rejected with a diagnostic;
// unresolvable trace ids fail the whole call.
inline void attach_ratings(std::vector<ReasoningTrace>& corpus,
                           const std::vector<RatingRecord>& ratings,
                           Diagnostics* diag = nullptr) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < corpus.size(); ++i) index.emplace(corpus[i].id, i);
  std::string missing;
  for (const auto& r : ratings) {
    if (index.count(r.trace_id) == 0) {
      if (!missing.empty()) missing += ", ";
      missing += r.trace_id;
    }
  }
  if (!missing.empty()) {
    throw InputError("ratings reference unknown trace ids: " + missing);
  }
  for (const auto& r : ratings) {
    if (r.score < 1 || r.score > 3) {
      warn(diag, "rating for trace '" + r.trace_id + "' rejected: score " +
                     std::to_string(r.score) + " outside 1..3");
      continue;
    }
    ReasoningTrace& t = corpus[index[r.trace_id]];
    (r.dimension == RatingDimension::Fluency ? t.fluency : t.accuracy) = r.score;
  }
}

}  // namespace corelab
