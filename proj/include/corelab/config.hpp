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

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "corelab/errors.hpp"
#include "corelab/io.hpp"
#include "corelab/lid.hpp"
#include "corelab/tokenize.hpp"
#include "corelab/unicode.hpp"

namespace corelab {

// Parsed data/registry.json: the language inventory (code -> scripts,
// wordlist, characteristic diacritics) and the per-script segmenter
// dictionaries. Relative paths resolve against the registry file's directory.
struct Registry {
  struct LanguageSpec {
    std::vector<Script> scripts;
    std::optional<std::string> wordlist_path;
    std::set<char32_t> diacritics;
  };

  std::map<std::string, LanguageSpec> languages;  // code order = candidate order
  std::map<Script, std::string> segmenter_paths;
  std::filesystem::path base_dir;

  static Registry load(const std::string& path) {
    Registry reg;
    reg.base_dir = std::filesystem::path(path).parent_path();
    nlohmann::ordered_json doc;
    try {
      doc = nlohmann::ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("registry " + path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("languages") ||
        !doc["languages"].is_object()) {
      throw ConfigError("registry " + path + ": missing 'languages' object");
    }
    for (auto it = doc["languages"].begin(); it != doc["languages"].end(); ++it) {
      const std::string code = it.key();
      if (code.empty() || code == "none" || code == "unknown") {
        throw ConfigError("registry: invalid language code '" + code + "'");
      }
      LanguageSpec spec;
      const auto& entry = it.value();
      if (!entry.contains("scripts") || !entry["scripts"].is_array() ||
          entry["scripts"].empty()) {
        throw ConfigError("registry: language '" + code + "' needs a scripts list");
      }
      for (const auto& s : entry["scripts"]) {
        auto script = script_from_name(s.get<std::string>());
        if (!script.has_value()) {
          throw ConfigError("registry: unknown script '" + s.get<std::string>() +
                            "' for language '" + code + "'");
        }
        spec.scripts.push_back(*script);
      }
      if (entry.contains("wordlist") && !entry["wordlist"].is_null()) {
        spec.wordlist_path = (reg.base_dir / entry["wordlist"].get<std::string>()).string();
      }
      if (entry.contains("diacritics") && !entry["diacritics"].is_null()) {
        for (char32_t cp : decode_utf8(entry["diacritics"].get<std::string>())) {
          spec.diacritics.insert(simple_lower(cp));
        }
      }
      reg.languages.emplace(code, std::move(spec));
    }
    if (doc.contains("segmenters")) {
      for (auto it = doc["segmenters"].begin(); it != doc["segmenters"].end(); ++it) {
        auto script = script_from_name(it.key());
        if (!script.has_value()) {
          throw ConfigError("registry: unknown segmenter script '" + it.key() + "'");
        }
        reg.segmenter_paths[*script] =
            (reg.base_dir / it.value().get<std::string>()).string();
      }
    }
    return reg;
  }
};

// Wordlist file: one word per line, lowercased and NFC-normalized on load.
inline std::unordered_set<std::string> load_wordlist(const std::string& path) {
  std::unordered_set<std::string> words;
  for (auto& line : read_lines(path)) {
    if (line.empty()) continue;
    words.insert(to_lower(nfc(line)));
  }
  if (words.empty()) throw ConfigError("wordlist is empty: " + path);
  return words;
}

inline LidConfig build_lid_config(const Registry& registry) {
  LidConfig config;
  for (const auto& [code, spec] : registry.languages) {
    config.languages.push_back(code);
    for (Script script : spec.scripts) {
      config.script_map[script].push_back(code);
    }
    if (spec.wordlist_path.has_value()) {
      config.wordlists[code] = load_wordlist(*spec.wordlist_path);
    }
    if (!spec.diacritics.empty()) {
      config.diacritic_rules[code] = spec.diacritics;
    }
  }
  config.build_trigrams();
  config.validate();
  return config;
}

inline SegmenterRegistry build_segmenters(const Registry& registry) {
  SegmenterRegistry segmenters;
  for (const auto& [script, path] : registry.segmenter_paths) {
    segmenters.register_file(script, path);
  }
  return segmenters;
}

}  // namespace corelab
