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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "corelab/corpus.hpp"
#include "corelab/errors.hpp"
#include "corelab/io.hpp"
#include "corelab/lid.hpp"
#include "corelab/tokenize.hpp"

namespace corelab {

enum class CurationTask {
  Native,
  MtEn,
  PromptMtEn,
  EnglishReasoning,
  StrategicCsw,
  SyntheticCsw,
};

inline constexpr const char* kCurationTaskNames[] = {
    "native", "mt_en", "prompt_mt_en", "english_reasoning",
    "strategic_csw", "synthetic_csw"};

inline const char* curation_task_name(CurationTask t) {
  return kCurationTaskNames[static_cast<int>(t)];
}

inline std::optional<CurationTask> curation_task_from_name(std::string_view name) {
  for (int i = 0; i < 6; ++i) {
    if (name == kCurationTaskNames[i]) return static_cast<CurationTask>(i);
  }
  return std::nullopt;
}

// One (prompt, reasoning, answer) fine-tuning record. Translation tasks have
// empty reasoning by construction.
struct CurationInstance {
  std::string prompt;
  std::string reasoning;
  std::string answer;
  CurationTask task = CurationTask::Native;
  std::string language;
  std::int64_t token_count = 0;
};

// Token counter used for budgeting. The default counts whitespace-separated
// tokens; callers can plug in a model-specific counter instead.
using TokenCounter = std::function<std::int64_t(std::string_view)>;

inline std::int64_t whitespace_token_count(std::string_view text) {
  std::int64_t count = 0;
  bool in_token = false;
  std::size_t i = 0;
  char32_t cp;
  std::size_t len;
  while (i < text.size()) {
    bool ws;
    if (utf8_next(text, i, &cp, &len)) {
      ws = is_whitespace(cp);
      i += len;
    } else {
      ws = false;  // undecodable bytes count as token content
      ++i;
    }
    if (ws) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++count;
    }
  }
  return count;
}

inline TokenCounter default_token_counter() {
  return [](std::string_view s) { return whitespace_token_count(s); };
}

inline std::int64_t instance_token_count(const CurationInstance& inst,
                                         const TokenCounter& counter) {
  return counter(inst.prompt) + counter(inst.reasoning) + counter(inst.answer);
}

// --- length percentile + filters ---------------------------------------------

// Nearest-rank percentile: sorted ascending, element at index ceil(p*n) - 1.
inline std::int64_t length_cutoff(std::vector<std::int64_t> lengths,
                                  double percentile = 0.95) {
  if (lengths.empty()) throw InputError("length_cutoff requires a non-empty list");
  if (percentile <= 0.0 || percentile > 1.0) {
    throw InputError("percentile must be in (0, 1]");
  }
  std::sort(lengths.begin(), lengths.end());
  auto n = static_cast<double>(lengths.size());
  auto rank = static_cast<std::size_t>(std::ceil(percentile * n));
  if (rank == 0) rank = 1;
  return lengths[rank - 1];
}

// Keeps traces that are correct and whose reasoning is at most cutoff tokens
// (inclusive). Traces without a correctness flag are skipped with a diagnostic.
inline std::vector<ReasoningTrace> filter_correct_and_short(
    const std::vector<ReasoningTrace>& traces, std::int64_t cutoff,
    const TokenCounter& counter = default_token_counter(),
    Diagnostics* diag = nullptr) {
  std::vector<ReasoningTrace> kept;
  for (const auto& t : traces) {
    if (!t.correct.has_value()) {
      warn(diag, "trace '" + t.id + "' skipped: no correctness flag");
      continue;
    }
    if (!*t.correct) continue;
    if (counter(t.reasoning) > cutoff) continue;
    kept.push_back(t);
  }
  return kept;
}

// --- task recipes --------------------------------------------------------------

struct TranslationPair {
  std::string source;       // sentence in language l
  std::string translation;  // its English rendering
};

inline constexpr const char* kTemplatePlaceholder = "{source}";

// (p_l, "", a_e): the prompt is the rendered template, reasoning stays empty.
inline std::vector<CurationInstance> make_translation_instances(
    const std::vector<TranslationPair>& pairs, const std::string& prompt_template,
    CurationTask task, const std::string& language,
    const TokenCounter& counter = default_token_counter()) {
  if (task != CurationTask::MtEn && task != CurationTask::PromptMtEn) {
    throw ConfigError("make_translation_instances expects a translation task");
  }
  if (prompt_template.find(kTemplatePlaceholder) == std::string::npos) {
    throw ConfigError("prompt template is missing the {source} placeholder");
  }
  std::vector<CurationInstance> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    CurationInstance inst;
    inst.prompt = prompt_template;
    auto pos = inst.prompt.find(kTemplatePlaceholder);
    inst.prompt.replace(pos, std::string(kTemplatePlaceholder).size(), pair.source);
    inst.answer = pair.translation;
    inst.task = task;
    inst.language = language;
    inst.token_count = instance_token_count(inst, counter);
    out.push_back(std::move(inst));
  }
  return out;
}

struct AlignedReasoning {
  std::string prompt;        // p_l
  std::string reasoning_en;  // r_e
  std::string answer;        // a_l
};

// (p_l, r_e, a_l) pass-through; records with an empty field are skipped.
inline std::vector<CurationInstance> make_english_reasoning_instances(
    const std::vector<AlignedReasoning>& aligned, const std::string& language,
    const TokenCounter& counter = default_token_counter(),
    Diagnostics* diag = nullptr) {
  std::vector<CurationInstance> out;
  for (std::size_t i = 0; i < aligned.size(); ++i) {
    const auto& rec = aligned[i];
    if (rec.prompt.empty() || rec.reasoning_en.empty() || rec.answer.empty()) {
      warn(diag, "aligned record " + std::to_string(i) + " skipped: empty field");
      continue;
    }
    CurationInstance inst;
    inst.prompt = rec.prompt;
    inst.reasoning = rec.reasoning_en;
    inst.answer = rec.answer;
    inst.task = CurationTask::EnglishReasoning;
    inst.language = language;
    inst.token_count = instance_token_count(inst, counter);
    out.push_back(std::move(inst));
  }
  return out;
}

// Keeps teacher traces whose reasoning mixes at least two languages.
inline std::vector<ReasoningTrace> select_strategic(
    const std::vector<ReasoningTrace>& teacher_outputs, const LidConfig& lid,
    const SegmenterRegistry& segmenters, std::int64_t min_tokens = 3) {
  std::vector<ReasoningTrace> kept;
  for (const auto& t : teacher_outputs) {
    TokenizedText tagged = tag_words(
        tokenize(t.reasoning, LanguageTag::iso(t.prompt_language), segmenters), lid);
    if (is_code_switched(tagged, min_tokens)) kept.push_back(t);
  }
  return kept;
}

// --- synthetic splicing ---------------------------------------------------------

// Identifier for the selection procedure baked into splice_synthetic; emitted
// in plan metadata so the selection can be reproduced elsewhere.
inline constexpr const char* kSpliceAlgorithmId = "mt19937_64/fisher-yates/v1";

namespace detail {

// Unbiased bounded draw via rejection sampling; stable across platforms
// because mt19937_64's output sequence is fully specified.
inline std::uint64_t bounded_uniform(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  std::uint64_t draw = gen();
  while (draw < threshold) draw = gen();
  return draw % bound;
}

inline std::set<std::size_t> sample_indices(std::size_t population,
                                            std::size_t sample, std::uint64_t seed) {
  std::vector<std::size_t> indices(population);
  for (std::size_t i = 0; i < population; ++i) indices[i] = i;
  std::mt19937_64 gen(seed);
  for (std::size_t i = 0; i < sample; ++i) {
    std::size_t j = i + static_cast<std::size_t>(
                            bounded_uniform(gen, population - i));
    std::swap(indices[i], indices[j]);
  }
  return {indices.begin(), indices.begin() + static_cast<std::ptrdiff_t>(sample)};
}

}  // namespace detail

// Splices a code-switched reasoning trace from an English and a language-l
// rendering: both are segmented into newline steps, floor(k/2) of the first
// k = min(step counts) are replaced with the English step at seeded-random
// positions, and any surplus language-l steps are kept.
inline std::string splice_synthetic(const std::string& reasoning_en,
                                    const std::string& reasoning_l,
                                    std::uint64_t seed) {
  const auto steps_en = segment_steps(reasoning_en).steps;
  const auto steps_l = segment_steps(reasoning_l).steps;
  if (steps_en.empty() || steps_l.empty()) {
    throw InputError("splice_synthetic requires non-empty reasoning on both sides");
  }
  const std::size_t k = std::min(steps_en.size(), steps_l.size());
  const std::set<std::size_t> english = detail::sample_indices(k, k / 2, seed);

  std::string out;
  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0) out += '\n';
    out += english.count(i) > 0 ? steps_en[i] : steps_l[i];
  }
  for (std::size_t i = k; i < steps_l.size(); ++i) {
    out += '\n';
    out += steps_l[i];
  }
  return out;
}

// --- token budget ----------------------------------------------------------------

inline constexpr std::int64_t kDefaultTokenBudget = 1'000'000;

struct BudgetPlan {
  std::int64_t budget = kDefaultTokenBudget;
  std::vector<std::size_t> selected;  // indices into the instance list, in order
  std::int64_t total_tokens = 0;
};

// Greedy prefix selection in list order: instances are taken while the
// running total stays within budget and selection stops at the first
// instance that would overflow.
inline BudgetPlan apply_token_budget(const std::vector<CurationInstance>& instances,
                                     std::int64_t budget = kDefaultTokenBudget,
                                     Diagnostics* diag = nullptr) {
  BudgetPlan plan;
  plan.budget = budget;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const std::int64_t tokens = instances[i].token_count;
    if (plan.total_tokens + tokens > budget) {
      if (tokens > budget) {
        warn(diag, "instance " + std::to_string(i) + " alone exceeds the budget (" +
                       std::to_string(tokens) + " > " + std::to_string(budget) + ")");
      }
      break;
    }
    plan.selected.push_back(i);
    plan.total_tokens += tokens;
  }
  return plan;
}

// --- machine-translation post-processing -------------------------------------------

struct MtOutcome {
  bool accepted = false;  // false: fell back to the original translation
  std::string text;
};

// Boilerplate prefixes stripped from refined MT output, checked in order and
// matched case-insensitively (ASCII).
inline const std::vector<std::string>& mt_boilerplate_prefixes() {
  static const std::vector<std::string> prefixes = {
      "here is a better translation:",
      "here is the better translation:",
      "here is the translation:",
      "better translation:",
      "improved translation:",
      "translation:",
      "translated text:",
  };
  return prefixes;
}

namespace detail {

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline std::string trim_whitespace(std::string_view s) {
  auto cps = decode_utf8_lossy(s);
  std::size_t b = 0, e = cps.size();
  while (b < e && is_whitespace(cps[b])) ++b;
  while (e > b && is_whitespace(cps[e - 1])) --e;
  return encode_utf8({cps.begin() + static_cast<std::ptrdiff_t>(b),
                      cps.begin() + static_cast<std::ptrdiff_t>(e)});
}

inline std::string strip_mt_boilerplate(std::string_view candidate) {
  std::string text = trim_whitespace(candidate);
  bool changed = true;
  while (changed && !text.empty()) {
    changed = false;
    const std::string lowered = ascii_lower(text);
    for (const auto& prefix : mt_boilerplate_prefixes()) {
      if (lowered.size() >= prefix.size() &&
          lowered.compare(0, prefix.size(), prefix) == 0) {
        text = trim_whitespace(std::string_view(text).substr(prefix.size()));
        changed = true;
        break;
      }
    }
    if (changed) continue;
    // Unwrap a fully quoted remainder.
    static const std::pair<std::string, std::string> quotes[] = {
        {"\"", "\""}, {"'", "'"}, {"“", "”"},
        {"‘", "’"}, {"«", "»"},
    };
    for (const auto& [open, close] : quotes) {
      if (text.size() > open.size() + close.size() &&
          text.compare(0, open.size(), open) == 0 &&
          text.compare(text.size() - close.size(), close.size(), close) == 0) {
        text = trim_whitespace(
            std::string_view(text).substr(open.size(), text.size() - open.size() -
                                                           close.size()));
        changed = true;
        break;
      }
    }
  }
  return text;
}

}  // namespace detail

// Strips boilerplate from a refined translation and accepts it only when its
// whitespace-token count is strictly less than twice the original's;
// otherwise the original translation is returned unchanged.
inline MtOutcome mt_postprocess(const std::string& candidate,
                                const std::string& original_translation) {
  const std::string cleaned = detail::strip_mt_boilerplate(candidate);
  if (cleaned.empty()) return {false, original_translation};
  if (whitespace_token_count(cleaned) <
      2 * whitespace_token_count(original_translation)) {
    return {true, cleaned};
  }
  return {false, original_translation};
}

// --- repetition filter ----------------------------------------------------------------

struct FilterVerdict {
  bool pass = true;
  std::string reason;  // empty when pass
};

namespace detail {

template <typename T>
bool has_repeated_quadrigram_block(const std::vector<T>& items, int max_repeats) {
  if (items.size() < 4) return false;
  for (std::size_t i = 0; i + 4 <= items.size(); ++i) {
    int repeats = 1;
    std::size_t j = i + 4;
    while (j + 4 <= items.size() && repeats <= max_repeats) {
      bool same = true;
      for (std::size_t t = 0; t < 4; ++t) {
        if (items[j + t] != items[i + t]) {
          same = false;
          break;
        }
      }
      if (!same) break;
      ++repeats;
      j += 4;
    }
    if (repeats > max_repeats) return true;
  }
  return false;
}

}  // namespace detail

// Rejects text containing a character quadrigram repeated more than ten times
// consecutively, a whitespace-token quadrigram repeated more than ten times
// consecutively, or a run of '#' or '*' longer than ten characters.
inline FilterVerdict repetition_filter(std::string_view text) {
  constexpr int kMaxRepeats = 10;
  const auto cps = decode_utf8_lossy(text);

  if (detail::has_repeated_quadrigram_block(cps, kMaxRepeats)) {
    return {false, "char-quadrigram repeated more than 10 times"};
  }

  std::vector<std::string> tokens;
  {
    std::string current;
    for (char32_t cp : cps) {
      if (is_whitespace(cp)) {
        if (!current.empty()) tokens.push_back(std::move(current));
        current.clear();
      } else {
        utf8_append(cp, &current);
      }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
  }
  if (detail::has_repeated_quadrigram_block(tokens, kMaxRepeats)) {
    return {false, "token-quadrigram repeated more than 10 times"};
  }

  int run = 0;
  char32_t run_cp = 0;
  for (char32_t cp : cps) {
    if ((cp == '#' || cp == '*') && cp == run_cp) {
      ++run;
    } else if (cp == '#' || cp == '*') {
      run_cp = cp;
      run = 1;
    } else {
      run_cp = 0;
      run = 0;
    }
    if (run > kMaxRepeats) return {false, "symbol-run longer than 10"};
  }
  return {};
}

}  // namespace corelab
