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

#include <string>
#include <vector>

#include <json.hpp>

#include "corelab/corpus.hpp"
#include "corelab/lid.hpp"
#include "corelab/metrics.hpp"
#include "corelab/tokenize.hpp"

namespace corelab {

// Tokenize + tag + metric extraction for one trace. Errors from the lower
// layers are re-raised with the trace id attached.
inline SwitchMetrics compute_all(const ReasoningTrace& trace, const LidConfig& lid,
                                 const SegmenterRegistry& segmenters,
                                 LidDiagnostics* lid_diag = nullptr) {
  try {
    TokenizedText tagged = tag_words(
        tokenize(trace.reasoning, LanguageTag::iso(trace.prompt_language), segmenters),
        lid, lid_diag);
    SwitchMetrics m = compute_metrics(tagged, LanguageTag::iso(trace.prompt_language));
    m.fluency = trace.fluency;
    m.accuracy = trace.accuracy;
    return m;
  } catch (const InputError& e) {
    throw InputError("trace '" + trace.id + "': " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError("trace '" + trace.id + "': " + e.what());
  }
}

inline Json metrics_to_json(const std::string& trace_id, const SwitchMetrics& m) {
  Json obj = Json::object();
  obj["id"] = trace_id;
  obj["n_tokens"] = m.n_tokens;
  obj["n_independent"] = m.n_independent;
  Json counts = Json::object();
  for (const auto& [lang, n] : m.language_counts) counts[lang] = n;
  obj["language_counts"] = counts;
  obj["cmi"] = m.cmi;
  obj["m_index"] = m.m_index;
  obj["i_index"] = m.i_index;
  obj["burstiness"] = m.burstiness ? Json(*m.burstiness) : Json(nullptr);
  obj["memory"] = m.memory ? Json(*m.memory) : Json(nullptr);
  obj["matrix_language"] = m.matrix_language ? Json(*m.matrix_language) : Json(nullptr);
  obj["matrix_class"] =
      m.matrix_class ? Json(matrix_class_name(*m.matrix_class)) : Json(nullptr);
  obj["fluency"] = m.fluency ? Json(*m.fluency) : Json(nullptr);
  obj["accuracy"] = m.accuracy ? Json(*m.accuracy) : Json(nullptr);
  return obj;
}

struct MetricsRow {
  std::string id;
  SwitchMetrics metrics;
};

inline MetricsRow metrics_from_json(const Json& obj, std::size_t line_no) {
  auto fail = [&](const std::string& what) {
    throw InputError("line " + std::to_string(line_no) + ": " + what);
  };
  if (!obj.is_object()) fail("not a JSON object");
  MetricsRow row;
  if (!obj.contains("id") || !obj["id"].is_string()) fail("missing field id");
  row.id = obj["id"].get<std::string>();
  SwitchMetrics& m = row.metrics;
  m.n_tokens = obj.value("n_tokens", std::int64_t{0});
  m.n_independent = obj.value("n_independent", std::int64_t{0});
  if (obj.contains("language_counts") && obj["language_counts"].is_object()) {
    for (auto it = obj["language_counts"].begin(); it != obj["language_counts"].end();
         ++it) {
      m.language_counts[it.key()] = it.value().get<std::int64_t>();
    }
  }
  m.cmi = obj.value("cmi", 0.0);
  m.m_index = obj.value("m_index", 0.0);
  m.i_index = obj.value("i_index", 0.0);
  auto opt_double = [&](const char* field) -> std::optional<double> {
    if (!obj.contains(field) || obj[field].is_null()) return std::nullopt;
    return obj[field].get<double>();
  };
  m.burstiness = opt_double("burstiness");
  m.memory = opt_double("memory");
  if (obj.contains("matrix_language") && !obj["matrix_language"].is_null()) {
    m.matrix_language = obj["matrix_language"].get<std::string>();
  }
  if (obj.contains("matrix_class") && !obj["matrix_class"].is_null()) {
    m.matrix_class = matrix_class_from_name(obj["matrix_class"].get<std::string>());
    if (!m.matrix_class.has_value()) fail("unknown matrix_class");
  }
  auto opt_int = [&](const char* field) -> std::optional<int> {
    if (!obj.contains(field) || obj[field].is_null()) return std::nullopt;
    return obj[field].get<int>();
  };
  m.fluency = opt_int("fluency");
  m.accuracy = opt_int("accuracy");
  return row;
}

inline std::vector<MetricsRow> read_metrics(const std::string& path) {
  auto lines = read_lines(path);
  std::vector<MetricsRow> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string::npos) continue;
    Json obj;
    try {
      obj = Json::parse(lines[i]);
    } catch (const Json::parse_error& e) {
      throw InputError("line " + std::to_string(i + 1) + ": " + e.what());
    }
    rows.push_back(metrics_from_json(obj, i + 1));
  }
  return rows;
}

// Gold LID corpus: JSONL of {text, tokens: [{text, lang}]}.
inline std::vector<GoldInstance> read_gold_lid(const std::string& path) {
  auto lines = read_lines(path);
  std::vector<GoldInstance> gold;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string::npos) continue;
    Json obj;
    try {
      obj = Json::parse(lines[i]);
    } catch (const Json::parse_error& e) {
      throw InputError("line " + std::to_string(i + 1) + ": " + e.what());
    }
    GoldInstance inst;
    if (!obj.contains("text") || !obj["text"].is_string()) {
      throw InputError("line " + std::to_string(i + 1) + ": missing field text");
    }
    inst.text = obj["text"].get<std::string>();
    if (!obj.contains("tokens") || !obj["tokens"].is_array()) {
      throw InputError("line " + std::to_string(i + 1) + ": missing field tokens");
    }
    for (const auto& tok : obj["tokens"]) {
      GoldToken gt;
      gt.text = tok.at("text").get<std::string>();
      gt.lang = LanguageTag::from_string(tok.at("lang").get<std::string>());
      inst.tokens.push_back(std::move(gt));
    }
    gold.push_back(std::move(inst));
  }
  return gold;
}

inline Json lid_report_to_json(const LidReport& report) {
  Json obj = Json::object();
  obj["total_tokens"] = report.total_tokens;
  obj["scored_tokens"] = report.scored_tokens;
  obj["correct_tokens"] = report.correct_tokens;
  obj["accuracy"] = report.accuracy;
  Json confusion = Json::array();
  for (const auto& [pair, count] : report.confusion) {
    confusion.push_back(
        {{"gold", pair.first}, {"predicted", pair.second}, {"count", count}});
  }
  obj["confusion"] = confusion;
  Json mismatches = Json::array();
  for (const auto& outcome : report.tokens) {
    if (outcome.gold == outcome.predicted) continue;
    mismatches.push_back({{"instance", outcome.instance},
                          {"text", outcome.text},
                          {"gold", outcome.gold.to_string()},
                          {"predicted", outcome.predicted.to_string()}});
  }
  obj["mismatches"] = mismatches;
  return obj;
}

}  // namespace corelab
