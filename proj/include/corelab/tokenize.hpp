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

#include <cstddef>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "corelab/errors.hpp"
#include "corelab/language_tag.hpp"
#include "corelab/unicode.hpp"

namespace corelab {

// One word token. Byte offsets index into the NFC-normalized source held by
// the owning TokenizedText, so `text == source.substr(begin, end - begin)`.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
  Script script = Script::Common;
  LanguageTag tag;  // Unknown until the lid pass runs
};

struct TokenizedText {
  std::string source;  // NFC form of the input
  std::vector<Token> tokens;
};

// Newline-delimited reasoning steps; blank and whitespace-only lines dropped.
struct StepSequence {
  std::vector<std::string> steps;
  std::string original;
};

// Scripts written without whitespace between words; runs in these scripts go
// through a dictionary segmenter.
inline bool is_unspaced_script(Script s) {
  switch (s) {
    case Script::Han:
    case Script::Hiragana:
    case Script::Katakana:
    case Script::Thai:
    case Script::Myanmar:
      return true;
    default:
      return false;
  }
}

// Greedy longest-match dictionaries for unspaced scripts, keyed by script.
// A per-language override can shadow the script default (e.g. a Japanese
// lexicon for Han runs when the text is known to be Japanese).
class SegmenterRegistry {
 public:
  struct Dictionary {
    std::unordered_set<std::u32string> words;
    std::size_t max_len = 0;  // code points

    void insert(const std::vector<char32_t>& word) {
      if (word.empty()) return;
      words.emplace(word.begin(), word.end());
      max_len = std::max(max_len, word.size());
    }
    bool contains(std::u32string_view w) const {
      return words.count(std::u32string(w)) > 0;
    }
  };

  void register_words(Script script, const std::vector<std::string>& words) {
    Dictionary& dict = by_script_[script];
    for (const auto& w : words) dict.insert(decode_utf8(nfc(w)));
  }

  // Dictionary file: UTF-8, one entry per line, NFC, no comments.
  void register_file(Script script, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open segmenter dictionary: " + path);
    Dictionary& dict = by_script_[script];
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      dict.insert(decode_utf8(nfc(line)));
    }
  }

  void register_override(Script script, std::string_view language,
                         const std::vector<std::string>& words) {
    Dictionary& dict = overrides_[{script, std::string(language)}];
    for (const auto& w : words) dict.insert(decode_utf8(nfc(w)));
  }

  bool has(Script script) const { return by_script_.count(script) > 0; }

  const Dictionary* dictionary_for(Script script, const LanguageTag& hint) const {
    if (hint.is_iso()) {
      auto it = overrides_.find({script, hint.code()});
      if (it != overrides_.end()) return &it->second;
    }
    auto it = by_script_.find(script);
    return it == by_script_.end() ? nullptr : &it->second;
  }

 private:
  std::map<Script, Dictionary> by_script_;
  std::map<std::pair<Script, std::string>, Dictionary> overrides_;
};

namespace detail {

struct CpRun {
  std::size_t first = 0;  // index into the decoded cp array
  std::size_t count = 0;
  Script script = Script::Common;  // first non-Common script in the run
};

struct DecodedText {
  std::vector<char32_t> cps;
  std::vector<std::size_t> offsets;  // byte offset of each cp; +1 sentinel
};

inline DecodedText decode_with_offsets(std::string_view s) {
  DecodedText d;
  std::size_t i = 0;
  char32_t cp;
  std::size_t len;
  while (i < s.size()) {
    if (!utf8_next(s, i, &cp, &len)) {
      throw InputError("invalid UTF-8 at byte " + std::to_string(i));
    }
    d.cps.push_back(cp);
    d.offsets.push_back(i);
    i += len;
  }
  d.offsets.push_back(s.size());
  return d;
}

inline Script majority_script(const std::vector<char32_t>& cps, std::size_t first,
                              std::size_t count) {
  std::map<Script, std::size_t> tally;
  for (std::size_t i = first; i < first + count; ++i) {
    Script s = script_of(cps[i]);
    if (s != Script::Common) ++tally[s];
  }
  if (tally.empty()) return Script::Common;
  std::size_t best = 0;
  for (const auto& [s, n] : tally) best = std::max(best, n);
  // Tie goes to the script that appears first in the word.
  for (std::size_t i = first; i < first + count; ++i) {
    Script s = script_of(cps[i]);
    if (s != Script::Common && tally[s] == best) return s;
  }
  return Script::Common;
}

}  // namespace detail

// Majority script over the word's non-Common code points; all-Common words
// are Common; ties break toward the earlier code point.
inline Script classify_script(std::string_view word) {
  auto cps = decode_utf8(word);
  return detail::majority_script(cps, 0, cps.size());
}

// Splits on whitespace, then at boundaries between distinct non-Common
// scripts; runs in unspaced scripts are segmented by greedy longest match
// against the registered dictionary, single code points as fallback.
inline TokenizedText tokenize(std::string_view text, const LanguageTag& language_hint,
                              const SegmenterRegistry& segmenters) {
  TokenizedText out;
  out.source = nfc(text);
  const auto d = detail::decode_with_offsets(out.source);
  const std::size_t n = d.cps.size();

  auto emit = [&](std::size_t first, std::size_t count) {
    Token t;
    t.begin = d.offsets[first];
    t.end = d.offsets[first + count];
    t.text = out.source.substr(t.begin, t.end - t.begin);
    t.script = detail::majority_script(d.cps, first, count);
    out.tokens.push_back(std::move(t));
  };

  auto segment_run = [&](const detail::CpRun& run) {
    if (!is_unspaced_script(run.script)) {
      emit(run.first, run.count);
      return;
    }
    const auto* dict = segmenters.dictionary_for(run.script, language_hint);
    if (dict == nullptr) {
      throw ConfigError(std::string("no segmenter dictionary registered for script ") +
                        script_name(run.script));
    }
    std::size_t pos = run.first;
    const std::size_t run_end = run.first + run.count;
    while (pos < run_end) {
      std::size_t best = 1;
      std::size_t max_try = std::min(dict->max_len, run_end - pos);
      for (std::size_t len = max_try; len >= 2; --len) {
        if (dict->contains(std::u32string_view(&d.cps[pos], len))) {
          best = len;
          break;
        }
      }
      emit(pos, best);
      pos += best;
    }
  };

  std::size_t i = 0;
  while (i < n) {
    if (is_whitespace(d.cps[i])) {
      ++i;
      continue;
    }
    // Maximal non-whitespace chunk.
    std::size_t chunk_end = i;
    while (chunk_end < n && !is_whitespace(d.cps[chunk_end])) ++chunk_end;

    // Split the chunk into runs at boundaries between distinct non-Common
    // scripts; Common code points attach to the run in progress.
    detail::CpRun run{i, 0, Script::Common};
    for (std::size_t j = i; j < chunk_end; ++j) {
      Script s = script_of(d.cps[j]);
      if (s != Script::Common) {
        if (run.script != Script::Common && s != run.script) {
          segment_run(run);
          run = detail::CpRun{j, 0, s};
        } else {
          run.script = s;
        }
      }
      ++run.count;
    }
    if (run.count > 0) segment_run(run);
    i = chunk_end;
  }
  return out;
}

// Newline split; steps that are empty or whitespace-only are dropped.
inline StepSequence segment_steps(std::string_view reasoning) {
  StepSequence out;
  out.original = std::string(reasoning);
  std::size_t start = 0;
  while (start <= reasoning.size()) {
    std::size_t nl = reasoning.find('\n', start);
    std::string_view line = reasoning.substr(
        start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    bool blank = true;
    for (std::size_t i = 0; i < line.size() && blank;) {
      char32_t cp;
      std::size_t len;
      if (utf8_next(line, i, &cp, &len)) {
        if (!is_whitespace(cp)) blank = false;
        i += len;
      } else {
        blank = false;  // undecodable bytes count as content
      }
    }
    if (!blank) out.steps.emplace_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

}  // namespace corelab
