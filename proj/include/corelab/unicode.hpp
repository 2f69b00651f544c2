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
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corelab/errors.hpp"
#include "corelab/unicode_data.hpp"

namespace corelab {

// Script classes the toolkit distinguishes. Everything outside the shipped
// ranges is Other (letters of unlisted scripts) or Common (digits,
// punctuation, symbols, marks). Values beyond Other must stay in sync with
// the SCRIPTS list in scripts/gen_unicode_data.py.
enum class Script : std::uint8_t {
  Common = 0,
  Other = 1,
  Latin,
  Greek,
  Cyrillic,
  Arabic,
  Hebrew,
  Devanagari,
  Bengali,
  Ethiopic,
  Thai,
  Myanmar,
  Han,
  Hiragana,
  Katakana,
  Hangul,
};

inline constexpr std::array<const char*, 16> kScriptNames = {
    "Common",     "Other",   "Latin",    "Greek", "Cyrillic",
    "Arabic",     "Hebrew",  "Devanagari", "Bengali", "Ethiopic",
    "Thai",       "Myanmar", "Han",      "Hiragana", "Katakana",
    "Hangul",
};

inline const char* script_name(Script s) {
  return kScriptNames[static_cast<std::size_t>(s)];
}

inline std::optional<Script> script_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kScriptNames.size(); ++i) {
    if (name == kScriptNames[i]) return static_cast<Script>(i);
  }
  return std::nullopt;
}

namespace detail {

inline int range_index(const unicode_data::Range* ranges, std::size_t n,
                       char32_t cp) {
  // Last range with lo <= cp, if it also covers cp.
  std::size_t lo = 0, hi = n;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (ranges[mid].lo <= cp) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == 0) return -1;
  const auto& r = ranges[lo - 1];
  return (cp >= r.lo && cp < r.hi) ? static_cast<int>(lo - 1) : -1;
}

}  // namespace detail

inline Script script_of(char32_t cp) {
  using namespace unicode_data;
  int idx = detail::range_index(kScriptRanges, std::size(kScriptRanges), cp);
  if (idx >= 0) return static_cast<Script>(kScriptRangeClass[idx]);
  if (detail::range_index(kLetterRanges, std::size(kLetterRanges), cp) >= 0) {
    return Script::Other;
  }
  return Script::Common;
}

inline bool is_whitespace(char32_t cp) {
  for (char32_t w : unicode_data::kWhitespace) {
    if (w == cp) return true;
    if (w > cp) break;
  }
  return false;
}

inline char32_t simple_lower(char32_t cp) {
  using namespace unicode_data;
  auto* begin = std::begin(kSimpleLower);
  auto* end = std::end(kSimpleLower);
  auto it = std::lower_bound(begin, end, cp, [](const CpPair& p, char32_t c) {
    return p.cp < c;
  });
  if (it != end && it->cp == cp) return it->value;
  return cp;
}

inline int combining_class(char32_t cp) {
  using namespace unicode_data;
  auto* begin = std::begin(kCombiningClass);
  auto* end = std::end(kCombiningClass);
  auto it = std::lower_bound(begin, end, cp, [](const CpByte& p, char32_t c) {
    return p.cp < c;
  });
  if (it != end && it->cp == cp) return it->value;
  return 0;
}

// --- UTF-8 ----------------------------------------------------------------

// Decodes the code point starting at s[i]. Returns false on malformed input
// (truncated sequence, overlong form, surrogate, out of range).
inline bool utf8_next(std::string_view s, std::size_t i, char32_t* cp,
                      std::size_t* len) {
  const auto* b = reinterpret_cast<const unsigned char*>(s.data());
  std::size_t n = s.size();
  if (i >= n) return false;
  unsigned char c0 = b[i];
  if (c0 < 0x80) {
    *cp = c0;
    *len = 1;
    return true;
  }
  int need;
  char32_t v;
  char32_t min;
  if ((c0 & 0xE0) == 0xC0) {
    need = 1;
    v = c0 & 0x1F;
    min = 0x80;
  } else if ((c0 & 0xF0) == 0xE0) {
    need = 2;
    v = c0 & 0x0F;
    min = 0x800;
  } else if ((c0 & 0xF8) == 0xF0) {
    need = 3;
    v = c0 & 0x07;
    min = 0x10000;
  } else {
    return false;
  }
  if (i + static_cast<std::size_t>(need) >= n) return false;
  for (int k = 1; k <= need; ++k) {
    unsigned char c = b[i + k];
    if ((c & 0xC0) != 0x80) return false;
    v = (v << 6) | (c & 0x3F);
  }
  if (v < min || v > 0x10FFFF || (v >= 0xD800 && v <= 0xDFFF)) return false;
  *cp = v;
  *len = static_cast<std::size_t>(need) + 1;
  return true;
}

inline void utf8_append(char32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  char32_t cp;
  std::size_t len;
  while (i < s.size()) {
    if (!utf8_next(s, i, &cp, &len)) return false;
    i += len;
  }
  return true;
}

// Throws InputError at the offending byte offset.
inline std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  char32_t cp;
  std::size_t len;
  while (i < s.size()) {
    if (!utf8_next(s, i, &cp, &len)) {
      throw InputError("invalid UTF-8 at byte " + std::to_string(i));
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

// Invalid bytes become U+FFFD instead of raising.
inline std::vector<char32_t> decode_utf8_lossy(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  char32_t cp;
  std::size_t len;
  while (i < s.size()) {
    if (utf8_next(s, i, &cp, &len)) {
      out.push_back(cp);
      i += len;
    } else {
      out.push_back(0xFFFD);
      ++i;
    }
  }
  return out;
}

inline std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) utf8_append(cp, &out);
  return out;
}

// --- NFC normalization ------------------------------------------------------

namespace detail {

constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulLCount = 19;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulNCount = kHangulVCount * kHangulTCount;  // 588
constexpr int kHangulSCount = kHangulLCount * kHangulNCount;  // 11172

inline bool hangul_syllable(char32_t cp) {
  return cp >= kHangulSBase &&
         cp < kHangulSBase + static_cast<char32_t>(kHangulSCount);
}

inline void decompose_cp(char32_t cp, std::vector<char32_t>* out) {
  using namespace unicode_data;
  if (hangul_syllable(cp)) {
    char32_t s = cp - kHangulSBase;
    out->push_back(kHangulLBase + s / kHangulNCount);
    out->push_back(kHangulVBase + (s % kHangulNCount) / kHangulTCount);
    if (s % kHangulTCount != 0) out->push_back(kHangulTBase + s % kHangulTCount);
    return;
  }
  auto* begin = std::begin(kCanonicalDecomp);
  auto* end = std::end(kCanonicalDecomp);
  auto it = std::lower_bound(begin, end, cp, [](const Decomp& d, char32_t c) {
    return d.cp < c;
  });
  if (it != end && it->cp == cp) {
    decompose_cp(it->first, out);
    if (it->second != 0) decompose_cp(it->second, out);
    return;
  }
  out->push_back(cp);
}

inline char32_t compose_pair(char32_t a, char32_t b) {
  using namespace unicode_data;
  // Hangul L+V and LV+T.
  if (a >= kHangulLBase && a < kHangulLBase + static_cast<char32_t>(kHangulLCount) &&
      b >= kHangulVBase && b < kHangulVBase + static_cast<char32_t>(kHangulVCount)) {
    char32_t li = a - kHangulLBase;
    char32_t vi = b - kHangulVBase;
    return kHangulSBase + (li * kHangulVCount + vi) * kHangulTCount;
  }
  if (hangul_syllable(a) && (a - kHangulSBase) % kHangulTCount == 0 &&
      b > kHangulTBase && b < kHangulTBase + static_cast<char32_t>(kHangulTCount)) {
    return a + (b - kHangulTBase);
  }
  auto* begin = std::begin(kComposites);
  auto* end = std::end(kComposites);
  auto it = std::lower_bound(
      begin, end, std::pair<char32_t, char32_t>(a, b),
      [](const Composite& c, const std::pair<char32_t, char32_t>& key) {
        return c.first != key.first ? c.first < key.first
                                    : c.second < key.second;
      });
  if (it != end && it->first == a && it->second == b) return it->composed;
  return 0;
}

}  // namespace detail

// Canonical decomposition + canonical ordering + canonical composition.
inline std::vector<char32_t> nfc_cps(const std::vector<char32_t>& input) {
  std::vector<char32_t> d;
  d.reserve(input.size());
  for (char32_t cp : input) detail::decompose_cp(cp, &d);

  // Canonical ordering: stable sort runs of nonzero combining class.
  for (std::size_t i = 1; i < d.size(); ++i) {
    int cc = combining_class(d[i]);
    if (cc == 0) continue;
    std::size_t j = i;
    while (j > 0 && combining_class(d[j - 1]) > cc) {
      std::swap(d[j - 1], d[j]);
      --j;
    }
  }

  std::vector<char32_t> out;
  out.reserve(d.size());
  std::ptrdiff_t last_starter = -1;
  int prev_cc = 0;
  for (char32_t cp : d) {
    int cc = combining_class(cp);
    if (last_starter >= 0 && (prev_cc < cc || prev_cc == 0)) {
      char32_t composed = detail::compose_pair(out[last_starter], cp);
      if (composed != 0) {
        out[last_starter] = composed;
        continue;
      }
    }
    if (cc == 0) last_starter = static_cast<std::ptrdiff_t>(out.size());
    prev_cc = cc;
    out.push_back(cp);
  }
  return out;
}

inline std::string nfc(std::string_view s) {
  return encode_utf8(nfc_cps(decode_utf8(s)));
}

// Code-point-wise simple lowercase (no full case folding).
inline std::string to_lower(std::string_view s) {
  auto cps = decode_utf8(s);
  for (auto& cp : cps) cp = simple_lower(cp);
  return encode_utf8(cps);
}

}  // namespace corelab
