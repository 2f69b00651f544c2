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

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "corelab/errors.hpp"
#include "corelab/language_tag.hpp"
#include "corelab/tokenize.hpp"
#include "corelab/unicode.hpp"

namespace corelab {

// Character-trigram log-likelihood tables, one per language, built from the
// bundled wordlists. Tokens are padded with start/end sentinels so even
// single-letter tokens contribute one trigram. Add-one smoothing over the
// union trigram vocabulary keeps scores comparable across languages.
class TrigramModel {
 public:
  static constexpr char32_t kStart = 0x0002;
  static constexpr char32_t kEnd = 0x0003;

  void train(const std::string& language,
             const std::unordered_set<std::string>& words) {
    auto& counts = counts_[language];
    for (const auto& w : words) {
      for (std::uint64_t key : token_trigrams(w)) {
        ++counts[key];
        vocabulary_.insert(key);
      }
    }
  }

  void finalize() {
    double v = static_cast<double>(vocabulary_.size()) + 1.0;
    for (auto& [lang, counts] : counts_) {
      double total = 0;
      for (const auto& [key, c] : counts) total += c;
      auto& table = log_prob_[lang];
      table.reserve(counts.size());
      double denom = std::log(total + v);
      for (const auto& [key, c] : counts) {
        table[key] = std::log(static_cast<double>(c) + 1.0) - denom;
      }
      floor_[lang] = -denom;  // log(1 / (total + V))
    }
  }

  bool trained(const std::string& language) const {
    return log_prob_.count(language) > 0;
  }

  double score(const std::string& language, const std::string& token) const {
    auto lit = log_prob_.find(language);
    if (lit == log_prob_.end()) return -1e300;
    double floor = floor_.at(language);
    double s = 0;
    for (std::uint64_t key : token_trigrams(token)) {
      auto it = lit->second.find(key);
      s += it == lit->second.end() ? floor : it->second;
    }
    return s;
  }

  static std::vector<std::uint64_t> token_trigrams(std::string_view token) {
    std::vector<char32_t> cps;
    cps.push_back(kStart);
    for (char32_t cp : decode_utf8(token)) cps.push_back(simple_lower(cp));
    cps.push_back(kEnd);
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i + 2 < cps.size(); ++i) {
      out.push_back(pack(cps[i], cps[i + 1], cps[i + 2]));
    }
    return out;
  }

 private:
  static std::uint64_t pack(char32_t a, char32_t b, char32_t c) {
    return (static_cast<std::uint64_t>(a) << 42) |
           (static_cast<std::uint64_t>(b) << 21) | static_cast<std::uint64_t>(c);
  }

  std::map<std::string, std::unordered_map<std::uint64_t, std::int64_t>> counts_;
  std::map<std::string, std::unordered_map<std::uint64_t, double>> log_prob_;
  std::map<std::string, double> floor_;
  std::unordered_set<std::uint64_t> vocabulary_;
};

// Candidate inventory plus everything needed to resolve a token to one of
// the candidates: the script map, per-language wordlists (lowercase NFC),
// characteristic diacritic sets, and the trigram tables.
struct LidConfig {
  std::vector<std::string> languages;  // candidate order; breaks score ties
  std::map<Script, std::vector<std::string>> script_map;
  std::map<std::string, std::unordered_set<std::string>> wordlists;
  std::map<std::string, std::set<char32_t>> diacritic_rules;
  TrigramModel trigrams;

  void build_trigrams() {
    for (const auto& [lang, words] : wordlists) trigrams.train(lang, words);
    trigrams.finalize();
  }

  // Candidate inventory sanity: each language reachable from some script,
  // and a wordlist for every Latin-script candidate.
  void validate() const {
    for (const auto& lang : languages) {
      bool reachable = false;
      bool latin = false;
      for (const auto& [script, cands] : script_map) {
        for (const auto& c : cands) {
          if (c == lang) {
            reachable = true;
            if (script == Script::Latin) latin = true;
          }
        }
      }
      if (!reachable) {
        throw ConfigError("language '" + lang + "' is not reachable from any script");
      }
      if (latin && wordlists.count(lang) == 0) {
        throw ConfigError("Latin-script language '" + lang + "' has no wordlist");
      }
    }
  }
};

struct LidDiagnostics {
  std::map<std::string, std::int64_t> unconfigured_scripts;  // script name -> tokens
  std::int64_t unknown_tokens = 0;
};

namespace detail {

inline std::string pick_by_trigram(const LidConfig& config,
                                   const std::vector<std::string>& candidates,
                                   const std::string& lowered) {
  std::string best;
  double best_score = 0;
  for (const auto& lang : config.languages) {  // config order decides ties
    bool eligible = false;
    for (const auto& c : candidates) {
      if (c == lang) eligible = true;
    }
    if (!eligible || !config.trigrams.trained(lang)) continue;
    double s = config.trigrams.score(lang, lowered);
    if (best.empty() || s > best_score) {
      best = lang;
      best_score = s;
    }
  }
  return best;
}

inline LanguageTag tag_one(const Token& token, const LidConfig& config,
                           LidDiagnostics* diag) {
  if (token.script == Script::Common) return LanguageTag::independent();
  auto sit = config.script_map.find(token.script);
  if (sit == config.script_map.end() || sit->second.empty()) {
    if (diag != nullptr) {
      ++diag->unconfigured_scripts[script_name(token.script)];
      ++diag->unknown_tokens;
    }
    return LanguageTag::unknown();
  }
  const auto& candidates = sit->second;
  if (candidates.size() == 1) return LanguageTag::iso(candidates.front());

  const std::string lowered = to_lower(token.text);
  std::vector<std::string> matches;
  for (const auto& lang : candidates) {
    auto wit = config.wordlists.find(lang);
    if (wit != config.wordlists.end() && wit->second.count(lowered) > 0) {
      matches.push_back(lang);
    }
  }
  if (matches.size() == 1) return LanguageTag::iso(matches.front());

  // Characteristic code points narrow the field before trigrams, both for
  // multi-list matches and for tokens outside every wordlist.
  const auto& pool = matches.size() > 1 ? matches : candidates;
  std::vector<std::string> by_diacritic;
  auto cps = decode_utf8(lowered);
  for (const auto& lang : pool) {
    auto dit = config.diacritic_rules.find(lang);
    if (dit == config.diacritic_rules.end()) continue;
    for (char32_t cp : cps) {
      if (dit->second.count(cp) > 0) {
        by_diacritic.push_back(lang);
        break;
      }
    }
  }
  if (by_diacritic.size() == 1) return LanguageTag::iso(by_diacritic.front());

  std::string pick = pick_by_trigram(config, pool, lowered);
  if (!pick.empty()) return LanguageTag::iso(pick);
  if (diag != nullptr) ++diag->unknown_tokens;
  return LanguageTag::unknown();
}

}  // namespace detail

// Tags every token: Common script -> language-independent; single-candidate
// scripts -> that language; otherwise wordlist vote, diacritic rules, then
// trigram likelihood. Unconfigured scripts stay Unknown and are counted in
// the diagnostics rather than failing the run.
inline TokenizedText tag_words(TokenizedText text, const LidConfig& config,
                               LidDiagnostics* diag = nullptr) {
  for (auto& token : text.tokens) {
    token.tag = detail::tag_one(token, config, diag);
  }
  return text;
}

// Extension point for external word-LID backends: given the token list, a
// backend returns one tag per token. Common-script tokens are forced to
// language-independent no matter what the backend says.
using LidBackend =
    std::function<std::vector<LanguageTag>(const std::vector<Token>&)>;

inline TokenizedText tag_words_with(TokenizedText text, const LidBackend& backend) {
  std::vector<LanguageTag> tags = backend(text.tokens);
  if (tags.size() != text.tokens.size()) {
    throw InputError("LID backend returned " + std::to_string(tags.size()) +
                     " tags for " + std::to_string(text.tokens.size()) + " tokens");
  }
  for (std::size_t i = 0; i < text.tokens.size(); ++i) {
    text.tokens[i].tag = text.tokens[i].script == Script::Common
                             ? LanguageTag::independent()
                             : tags[i];
  }
  return text;
}

// Languages contributing at least min_tokens word tokens. Never returns the
// language-independent or unknown classes.
inline std::set<std::string> detect_instance_languages(const TokenizedText& text,
                                                       std::int64_t min_tokens = 3) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& token : text.tokens) {
    if (token.tag.is_iso()) ++counts[token.tag.code()];
  }
  std::set<std::string> out;
  for (const auto& [lang, n] : counts) {
    if (n >= min_tokens) out.insert(lang);
  }
  return out;
}

inline bool is_code_switched(const TokenizedText& text, std::int64_t min_tokens = 3) {
  return detect_instance_languages(text, min_tokens).size() >= 2;
}

// --- validation harness -----------------------------------------------------

struct GoldToken {
  std::string text;
  LanguageTag lang;
};

struct GoldInstance {
  std::string text;
  std::vector<GoldToken> tokens;
};

struct LidReport {
  struct TokenOutcome {
    std::size_t instance = 0;
    std::string text;
    LanguageTag gold;
    LanguageTag predicted;
  };

  std::int64_t total_tokens = 0;
  std::int64_t scored_tokens = 0;  // gold tag not language-independent
  std::int64_t correct_tokens = 0;
  double accuracy = 0.0;
  std::vector<TokenOutcome> tokens;  // gold vs predicted, per token
  std::map<std::pair<std::string, std::string>, std::int64_t> confusion;  // (gold, predicted)
};

// Re-tokenizes each gold instance, tags it, and scores predicted against
// gold tags. Tokenization must reproduce the gold token boundaries exactly.
inline LidReport validate_lid(const std::vector<GoldInstance>& gold,
                              const LidConfig& config,
                              const SegmenterRegistry& segmenters) {
  LidReport report;
  for (std::size_t idx = 0; idx < gold.size(); ++idx) {
    const auto& instance = gold[idx];
    TokenizedText tokenized =
        tag_words(tokenize(instance.text, LanguageTag::unknown(), segmenters), config);
    if (tokenized.tokens.size() != instance.tokens.size()) {
      throw InputError("instance " + std::to_string(idx) +
                       ": token boundary mismatch (gold " +
                       std::to_string(instance.tokens.size()) + " tokens, system " +
                       std::to_string(tokenized.tokens.size()) + ")");
    }
    for (std::size_t t = 0; t < tokenized.tokens.size(); ++t) {
      if (tokenized.tokens[t].text != instance.tokens[t].text) {
        throw InputError("instance " + std::to_string(idx) + ": token " +
                         std::to_string(t) + " boundary mismatch (gold '" +
                         instance.tokens[t].text + "', system '" +
                         tokenized.tokens[t].text + "')");
      }
      const LanguageTag& gold_tag = instance.tokens[t].lang;
      const LanguageTag& predicted = tokenized.tokens[t].tag;
      ++report.total_tokens;
      report.tokens.push_back({idx, tokenized.tokens[t].text, gold_tag, predicted});
      ++report.confusion[{gold_tag.to_string(), predicted.to_string()}];
      if (gold_tag.is_independent()) continue;
      ++report.scored_tokens;
      if (predicted == gold_tag) ++report.correct_tokens;
    }
  }
  report.accuracy = report.scored_tokens == 0
                        ? 0.0
                        : static_cast<double>(report.correct_tokens) /
                              static_cast<double>(report.scored_tokens);
  return report;
}

}  // namespace corelab
