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

#include <corelab/tokenize.hpp>

#include <random>

#include <catch2/catch_amalgamated.hpp>

using namespace corelab;

namespace {

std::vector<std::string> token_texts(const TokenizedText& t) {
  std::vector<std::string> out;
  for (const auto& tok : t.tokens) out.push_back(tok.text);
  return out;
}

SegmenterRegistry toy_registry() {
  SegmenterRegistry reg;
  reg.register_words(Script::Han, {"任务", "我们", "你好"});
  return reg;
}

// Every byte of the source is either inside exactly one token (in order) or
// part of a skipped separator; re-interleaving reproduces the source.
void check_round_trip(const TokenizedText& t) {
  std::string rebuilt;
  std::size_t pos = 0;
  for (const auto& tok : t.tokens) {
    REQUIRE(tok.begin >= pos);
    REQUIRE(tok.end > tok.begin);
    REQUIRE(tok.end <= t.source.size());
    REQUIRE(tok.text == t.source.substr(tok.begin, tok.end - tok.begin));
    rebuilt += t.source.substr(pos, tok.begin - pos);
    rebuilt += tok.text;
    pos = tok.end;
  }
  rebuilt += t.source.substr(pos);
  CHECK(rebuilt == t.source);
}

}  // namespace

TEST_CASE("whitespace splitting with script classes") {
  auto t = tokenize("ni 42 sawa", LanguageTag::unknown(), {});
  REQUIRE(token_texts(t) == std::vector<std::string>{"ni", "42", "sawa"});
  CHECK(t.tokens[0].script == Script::Latin);
  CHECK(t.tokens[1].script == Script::Common);
  CHECK(t.tokens[2].script == Script::Latin);
  check_round_trip(t);
}

TEST_CASE("script boundary split with dictionary segmentation") {
  auto t = tokenize("abc任务", LanguageTag::unknown(), toy_registry());
  CHECK(token_texts(t) == std::vector<std::string>{"abc", "任务"});
  CHECK(t.tokens[0].script == Script::Latin);
  CHECK(t.tokens[1].script == Script::Han);
  check_round_trip(t);
}

TEST_CASE("empty input yields no tokens") {
  auto t = tokenize("", LanguageTag::unknown(), {});
  CHECK(t.tokens.empty());
}

TEST_CASE("greedy longest match falls back to single code points") {
  auto t = tokenize("任务你任务", LanguageTag::unknown(), toy_registry());
  CHECK(token_texts(t) == std::vector<std::string>{"任务", "你", "任务"});

  // Common code points inside an unspaced run fall back one by one.
  auto u = tokenize("42任务", LanguageTag::unknown(), toy_registry());
  CHECK(token_texts(u) == std::vector<std::string>{"4", "2", "任务"});
}

TEST_CASE("unspaced script without a dictionary is a configuration error") {
  try {
    tokenize("任务", LanguageTag::unknown(), {});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("Han") != std::string::npos);
  }
}

TEST_CASE("invalid utf8 input is an input error") {
  CHECK_THROWS_AS(tokenize("ok \xff bad", LanguageTag::unknown(), {}), InputError);
}

TEST_CASE("input is nfc-normalized before tokenization") {
  auto t = tokenize("éxample", LanguageTag::unknown(), {});
  REQUIRE(t.tokens.size() == 1);
  CHECK(t.tokens[0].text == "éxample");
  CHECK(t.source == "éxample");
  check_round_trip(t);
}

TEST_CASE("hyphens and apostrophes stay inside tokens") {
  auto t = tokenize("kwa-nini it's", LanguageTag::unknown(), {});
  CHECK(token_texts(t) == std::vector<std::string>{"kwa-nini", "it's"});
}

TEST_CASE("mixed-script chunk splits once per script change") {
  SegmenterRegistry reg = toy_registry();
  auto t = tokenize("abc任务xyz", LanguageTag::unknown(), reg);
  CHECK(token_texts(t) == std::vector<std::string>{"abc", "任务", "xyz"});
  check_round_trip(t);
}

TEST_CASE("classify_script majority and tie rules") {
  CHECK(classify_script("ኣማርኛ") == Script::Ethiopic);
  CHECK(classify_script("x7") == Script::Latin);
  CHECK(classify_script("42!") == Script::Common);
  // tie between Latin and Han breaks toward the first code point's script
  CHECK(classify_script("a任") == Script::Latin);
  CHECK(classify_script("任a") == Script::Han);
}

TEST_CASE("segment_steps drops blank and whitespace-only lines") {
  CHECK(segment_steps("a\nb\n\nc").steps == std::vector<std::string>{"a", "b", "c"});
  CHECK(segment_steps("single line").steps == std::vector<std::string>{"single line"});
  CHECK(segment_steps("x\n  \ny\n").steps == std::vector<std::string>{"x", "y"});
  CHECK(segment_steps("").steps.empty());
}

TEST_CASE("segment_steps is idempotent on its own join") {
  std::mt19937_64 gen(23);
  const std::vector<std::string> pieces = {"a", "bb x", " c ", "\t", "", "dd\te"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    int n = 1 + static_cast<int>(gen() % 8);
    for (int i = 0; i < n; ++i) {
      text += pieces[gen() % pieces.size()];
      text += '\n';
    }
    auto first = segment_steps(text);
    std::string joined;
    for (std::size_t i = 0; i < first.steps.size(); ++i) {
      if (i > 0) joined += '\n';
      joined += first.steps[i];
    }
    CHECK(segment_steps(joined).steps == first.steps);
  }
}

TEST_CASE("tokenization is deterministic and round-trips on fuzzed input") {
  std::mt19937_64 gen(31);
  SegmenterRegistry reg = toy_registry();
  const std::vector<std::string> atoms = {"ab",  "c",  " ",  "  ", "42", "任务",
                                          "我们", "你", "ኣማ", "x7", "!",  "é"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    int n = static_cast<int>(gen() % 12);
    for (int i = 0; i < n; ++i) text += atoms[gen() % atoms.size()];
    auto first = tokenize(text, LanguageTag::unknown(), reg);
    auto second = tokenize(text, LanguageTag::unknown(), reg);
    REQUIRE(first.tokens.size() == second.tokens.size());
    for (std::size_t i = 0; i < first.tokens.size(); ++i) {
      CHECK(first.tokens[i].text == second.tokens[i].text);
      CHECK(first.tokens[i].begin == second.tokens[i].begin);
    }
    check_round_trip(first);
  }
}

TEST_CASE("language hint can select a segmenter override") {
  SegmenterRegistry reg;
  reg.register_words(Script::Han, {"任务"});
  reg.register_override(Script::Han, "ja", {"任", "務"});
  auto zh = tokenize("任务", LanguageTag::iso("zh"), reg);
  CHECK(token_texts(zh) == std::vector<std::string>{"任务"});
  auto ja = tokenize("任务", LanguageTag::iso("ja"), reg);
  CHECK(token_texts(ja) == std::vector<std::string>{"任", "务"});
}
