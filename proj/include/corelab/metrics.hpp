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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corelab/errors.hpp"
#include "corelab/lid.hpp"
#include "corelab/tokenize.hpp"

namespace corelab {

using LanguageCounts = std::map<std::string, std::int64_t>;

// Maximal run of consecutive word tokens in the same language.
// Language-independent and unknown tokens are transparent: they neither
// break nor start spans.
struct Span {
  std::string language;
  std::size_t start_index = 0;  // index into the full token list
  std::size_t length = 0;       // language-tagged tokens only
};

struct SpanSequence {
  std::vector<Span> spans;

  std::vector<double> lengths() const {
    std::vector<double> out;
    out.reserve(spans.size());
    for (const auto& s : spans) out.push_back(static_cast<double>(s.length));
    return out;
  }
};

enum class MatrixClass { SameAsPrompt, English, OtherLanguage };

inline const char* matrix_class_name(MatrixClass c) {
  switch (c) {
    case MatrixClass::SameAsPrompt:
      return "SameAsPrompt";
    case MatrixClass::English:
      return "English";
    default:
      return "OtherLanguage";
  }
}

inline std::optional<MatrixClass> matrix_class_from_name(const std::string& s) {
  if (s == "SameAsPrompt") return MatrixClass::SameAsPrompt;
  if (s == "English") return MatrixClass::English;
  if (s == "OtherLanguage") return MatrixClass::OtherLanguage;
  return std::nullopt;
}

// Per-trace metric vector. Absent optionals mean "not applicable" (degenerate
// trace), never zero.
struct SwitchMetrics {
  std::int64_t n_tokens = 0;
  std::int64_t n_independent = 0;  // language-independent plus unresolved tokens
  LanguageCounts language_counts;
  double cmi = 0.0;
  double m_index = 0.0;
  double i_index = 0.0;
  std::optional<double> burstiness;
  std::optional<double> memory;
  std::optional<std::string> matrix_language;
  std::optional<MatrixClass> matrix_class;
  std::optional<int> fluency;
  std::optional<int> accuracy;
};

namespace detail {

// Counts sorted descending gives a summation order that depends only on the
// count multiset, so metric values are bit-identical under any relabeling of
// the language codes.
inline std::vector<std::int64_t> sorted_counts(const LanguageCounts& counts) {
  std::vector<std::int64_t> values;
  values.reserve(counts.size());
  for (const auto& [lang, n] : counts) {
    if (n < 0) throw InputError("negative language count for '" + lang + "'");
    values.push_back(n);
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

inline double population_mean(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double population_stddev(const std::vector<double>& xs, double mean) {
  double s = 0;
  for (double x : xs) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(xs.size()));
}

}  // namespace detail

inline SpanSequence extract_spans(const TokenizedText& text) {
  SpanSequence out;
  for (std::size_t i = 0; i < text.tokens.size(); ++i) {
    const auto& token = text.tokens[i];
    if (!token.tag.is_iso()) continue;
    if (!out.spans.empty() && out.spans.back().language == token.tag.code()) {
      ++out.spans.back().length;
    } else {
      out.spans.push_back(Span{token.tag.code(), i, 1});
    }
  }
  return out;
}

// Share of language-tagged tokens outside the dominant language:
// (sum of counts - max count) / (n - u). Zero when nothing is tagged.
inline double cmi(const LanguageCounts& counts, std::int64_t n_tokens,
                  std::int64_t n_independent) {
  if (n_tokens < 0 || n_independent < 0 || n_independent > n_tokens) {
    throw InputError("inconsistent token counts for cmi");
  }
  auto values = detail::sorted_counts(counts);
  std::int64_t total = 0;
  for (std::int64_t v : values) total += v;
  if (total != n_tokens - n_independent) {
    throw InputError("language counts do not sum to n - u");
  }
  if (total == 0) return 0.0;
  return static_cast<double>(total - values.front()) / static_cast<double>(total);
}

// Evenness of the token mass across languages: with p_i = w_i / n_tagged,
// (1 - sum p_i^2) / ((N - 1) sum p_i^2). Zero for monolingual text, one when
// all languages contribute equally.
inline double m_index(const LanguageCounts& counts, std::int64_t n_tagged) {
  auto values = detail::sorted_counts(counts);
  std::size_t n_langs = 0;
  for (std::int64_t v : values) {
    if (v > 0) ++n_langs;
  }
  if (n_langs <= 1 || n_tagged <= 0) return 0.0;
  double sum_p2 = 0;
  for (std::int64_t v : values) {
    double p = static_cast<double>(v) / static_cast<double>(n_tagged);
    sum_p2 += p * p;
  }
  return (1.0 - sum_p2) / (static_cast<double>(n_langs - 1) * sum_p2);
}

// Probability that adjacent language-tagged tokens differ in language.
inline double i_index(const TokenizedText& text) {
  std::int64_t pairs = 0;
  std::int64_t switches = 0;
  const std::string* prev = nullptr;
  for (const auto& token : text.tokens) {
    if (!token.tag.is_iso()) continue;
    if (prev != nullptr) {
      ++pairs;
      if (*prev != token.tag.code()) ++switches;
    }
    prev = &token.tag.code();
  }
  if (pairs == 0) return 0.0;
  return static_cast<double>(switches) / static_cast<double>(pairs);
}

// (sigma - mu) / (sigma + mu) over span lengths, population statistics.
inline std::optional<double> burstiness(const SpanSequence& s) {
  if (s.spans.empty()) return std::nullopt;
  auto lengths = s.lengths();
  double mu = detail::population_mean(lengths);
  double sigma = detail::population_stddev(lengths, mu);
  return (sigma - mu) / (sigma + mu);
}

// Lag-1 correlation of consecutive span lengths. Absent for fewer than three
// spans or when either shifted series has zero variance.
inline std::optional<double> memory(const SpanSequence& s) {
  const std::size_t n_spans = s.spans.size();
  if (n_spans < 3) return std::nullopt;
  auto lengths = s.lengths();
  std::vector<double> head(lengths.begin(), lengths.end() - 1);
  std::vector<double> tail(lengths.begin() + 1, lengths.end());
  double mu1 = detail::population_mean(head);
  double mu2 = detail::population_mean(tail);
  double sigma1 = detail::population_stddev(head, mu1);
  double sigma2 = detail::population_stddev(tail, mu2);
  if (sigma1 == 0.0 || sigma2 == 0.0) return std::nullopt;
  double sum = 0;
  for (std::size_t i = 0; i + 1 < n_spans; ++i) {
    sum += (lengths[i] - mu1) * (lengths[i + 1] - mu2) / (sigma1 * sigma2);
  }
  return sum / static_cast<double>(n_spans - 1);
}

// Language contributing the most tokens. Ties break toward the prompt
// language, then English, then ascending code order.
inline std::optional<std::pair<std::string, MatrixClass>> matrix_language(
    const LanguageCounts& counts, const LanguageTag& prompt_language) {
  std::int64_t best = 0;
  for (const auto& [lang, n] : counts) {
    if (n < 0) throw InputError("negative language count for '" + lang + "'");
    best = std::max(best, n);
  }
  if (best == 0) return std::nullopt;
  std::vector<std::string> tied;
  for (const auto& [lang, n] : counts) {
    if (n == best) tied.push_back(lang);
  }
  std::string matrix = tied.front();  // counts map is code-ordered
  if (prompt_language.is_iso() &&
      std::find(tied.begin(), tied.end(), prompt_language.code()) != tied.end()) {
    matrix = prompt_language.code();
  } else if (std::find(tied.begin(), tied.end(), "en") != tied.end()) {
    matrix = "en";
  }
  MatrixClass cls;
  if (prompt_language.is_iso() && matrix == prompt_language.code()) {
    cls = MatrixClass::SameAsPrompt;
  } else if (matrix == "en") {
    cls = MatrixClass::English;
  } else {
    cls = MatrixClass::OtherLanguage;
  }
  return std::make_pair(matrix, cls);
}

// Full metric vector for an already tokenized and tagged trace.
inline SwitchMetrics compute_metrics(const TokenizedText& tagged,
                                     const LanguageTag& prompt_language) {
  SwitchMetrics m;
  m.n_tokens = static_cast<std::int64_t>(tagged.tokens.size());
  for (const auto& token : tagged.tokens) {
    if (token.tag.is_iso()) {
      ++m.language_counts[token.tag.code()];
    } else {
      ++m.n_independent;
    }
  }
  const std::int64_t n_tagged = m.n_tokens - m.n_independent;
  m.cmi = cmi(m.language_counts, m.n_tokens, m.n_independent);
  m.m_index = m_index(m.language_counts, n_tagged);
  m.i_index = i_index(tagged);
  SpanSequence spans = extract_spans(tagged);
  m.burstiness = burstiness(spans);
  m.memory = memory(spans);
  if (auto matrix = matrix_language(m.language_counts, prompt_language)) {
    m.matrix_language = matrix->first;
    m.matrix_class = matrix->second;
  }
  return m;
}

// Per-column min-max rescaling to [0, 1]; constant columns map to zero and
// absent entries stay absent.
inline void min_max_normalize(std::vector<std::optional<double>>* column) {
  double lo = 0, hi = 0;
  bool any = false;
  for (const auto& v : *column) {
    if (!v.has_value() || !std::isfinite(*v)) continue;
    if (!any) {
      lo = hi = *v;
      any = true;
    } else {
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
    }
  }
  if (!any) return;
  for (auto& v : *column) {
    if (!v.has_value() || !std::isfinite(*v)) continue;
    v = hi == lo ? 0.0 : (*v - lo) / (hi - lo);
  }
}

}  // namespace corelab
