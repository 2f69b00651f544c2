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

#include <corelab/unicode.hpp>

#include <random>

#include <catch2/catch_amalgamated.hpp>

using namespace corelab;

TEST_CASE("nfc composes combining sequences") {
  CHECK(nfc("é") == "é");             // e + acute -> é
  CHECK(nfc("é") == "é");              // already composed
  CHECK(nfc("ọ") == "ọ");             // o + dot below -> ọ
  CHECK(nfc("각") == "각");  // Hangul jamo -> syllable
  CHECK(nfc("각") == "각");        // LV + T
}

TEST_CASE("nfc applies canonical ordering before composing") {
  // dot below (ccc 220) must sort before acute (ccc 230)
  std::string composed_first = nfc("ạ́");
  std::string composed_second = nfc("ạ́");
  CHECK(composed_first == composed_second);
  CHECK(composed_first == "ạ́");  // ạ + combining acute
}

TEST_CASE("nfc leaves composition exclusions decomposed") {
  // Devanagari nukta letters are composition exclusions.
  CHECK(nfc("ढ़") == "ढ़");
  CHECK(nfc("ढ़") == "ढ़");
}

TEST_CASE("invalid utf8 raises input errors") {
  CHECK_THROWS_AS(decode_utf8("\xff"), InputError);
  CHECK_THROWS_AS(decode_utf8("\xc3"), InputError);          // truncated
  CHECK_THROWS_AS(decode_utf8("\xc0\xaf"), InputError);      // overlong
  CHECK_THROWS_AS(decode_utf8("\xed\xa0\x80"), InputError);  // surrogate
  CHECK(is_valid_utf8("plain ascii"));
  CHECK_FALSE(is_valid_utf8("bad \xf8 byte"));
}

TEST_CASE("lossy decoding replaces bad bytes") {
  auto cps = decode_utf8_lossy("a\xffz");
  REQUIRE(cps.size() == 3);
  CHECK(cps[1] == 0xFFFD);
}

TEST_CASE("script classification covers the shipped ranges") {
  CHECK(script_of(U'a') == Script::Latin);
  CHECK(script_of(U'任') == Script::Han);         // 任
  CHECK(script_of(U'ኣ') == Script::Ethiopic);    // ኣ
  CHECK(script_of(U'क') == Script::Devanagari);  // क
  CHECK(script_of(U'ก') == Script::Thai);
  CHECK(script_of(U'က') == Script::Myanmar);
  CHECK(script_of(U'あ') == Script::Hiragana);
  CHECK(script_of(U'ア') == Script::Katakana);
  CHECK(script_of(U'가') == Script::Hangul);
  CHECK(script_of(U'ا') == Script::Arabic);
  CHECK(script_of(U'б') == Script::Cyrillic);
  CHECK(script_of(U'7') == Script::Common);
  CHECK(script_of(U'!') == Script::Common);
  CHECK(script_of(U'́') == Script::Common);  // combining marks attach
  CHECK(script_of(U'அ') == Script::Other);   // Tamil letter, unlisted script
}

TEST_CASE("script lookup agrees with a linear scan") {
  using namespace corelab::unicode_data;
  std::mt19937_64 gen(11);
  for (int i = 0; i < 20000; ++i) {
    char32_t cp = static_cast<char32_t>(gen() % 0x110000);
    int expected = -1;
    for (std::size_t r = 0; r < std::size(kScriptRanges); ++r) {
      if (cp >= kScriptRanges[r].lo && cp < kScriptRanges[r].hi) {
        expected = kScriptRangeClass[r];
        break;
      }
    }
    Script got = script_of(cp);
    if (expected >= 0) {
      CHECK(static_cast<int>(got) == expected);
    } else {
      CHECK((got == Script::Common || got == Script::Other));
    }
  }
}

TEST_CASE("simple lowercase mapping") {
  CHECK(to_lower("ABC") == "abc");
  CHECK(to_lower("É") == "é");  // É -> é
  CHECK(to_lower("Ọ") == "ọ");  // Ọ -> ọ
  CHECK(to_lower("already lower 42") == "already lower 42");
}

TEST_CASE("whitespace covers unicode spaces") {
  CHECK(is_whitespace(U' '));
  CHECK(is_whitespace(U'\t'));
  CHECK(is_whitespace(U'\n'));
  CHECK(is_whitespace(U' '));
  CHECK(is_whitespace(U'　'));
  CHECK_FALSE(is_whitespace(U'x'));
}

TEST_CASE("utf8 encode/decode round trip") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<char32_t> cps;
    int n = 1 + static_cast<int>(gen() % 40);
    for (int i = 0; i < n; ++i) {
      char32_t cp;
      do {
        cp = static_cast<char32_t>(gen() % 0x110000);
      } while ((cp >= 0xD800 && cp <= 0xDFFF) || cp == 0);
      cps.push_back(cp);
    }
    CHECK(decode_utf8(encode_utf8(cps)) == cps);
  }
}

TEST_CASE("nfc is idempotent") {
  std::mt19937_64 gen(13);
  const std::vector<char32_t> pool = {U'a',   U'e',   U'o',   0x301,  0x300, 0x323,
                                      0x1100, 0x1161, 0x11A8, 0x4EFB, 0x1ECD};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<char32_t> cps;
    int n = 1 + static_cast<int>(gen() % 12);
    for (int i = 0; i < n; ++i) cps.push_back(pool[gen() % pool.size()]);
    std::string once = nfc(encode_utf8(cps));
    CHECK(nfc(once) == once);
  }
}
