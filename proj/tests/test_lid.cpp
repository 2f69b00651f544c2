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

#include <corelab/lid.hpp>

#include <algorithm>
#include <random>

#include <catch2/catch_amalgamated.hpp>

using namespace corelab;

namespace {

LidConfig en_sw_config() {
  LidConfig config;
  config.languages = {"en", "sw"};
  config.script_map[Script::Latin] = {"en", "sw"};
  config.wordlists["en"] = {"the", "answer", "is", "correct", "number", "think"};
  config.wordlists["sw"] = {"jibu", "swali", "sahihi", "hesabu", "sana", "kwa"};
  config.build_trigrams();
  config.validate();
  return config;
}

LidConfig en_yo_config() {
  LidConfig config;
  config.languages = {"en", "yo"};
  config.script_map[Script::Latin] = {"en", "yo"};
  config.wordlists["en"] = {"the", "answer", "is"};
  config.wordlists["yo"] = {"ni", "ati", "rere"};
  config.diacritic_rules["yo"] = {U'ọ', U'ẹ', U'ṣ'};
  config.build_trigrams();
  config.validate();
  return config;
}

TokenizedText tag(const std::string& text, const LidConfig& config,
                  LidDiagnostics* diag = nullptr) {
  return tag_words(tokenize(text, LanguageTag::unknown(), {}), config, diag);
}

// Token list with preassigned tags, for the aggregation operations.
TokenizedText synthetic_tags(const std::vector<LanguageTag>& tags) {
  TokenizedText out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    Token t;
    t.text = "w" + std::to_string(i);
    t.begin = i * 4;
    t.end = i * 4 + 2;
    t.tag = tags[i];
    out.tokens.push_back(std::move(t));
  }
  return out;
}

}  // namespace

TEST_CASE("unique wordlist match decides the language") {
  auto config = en_sw_config();
  auto tagged = tag("the jibu", config);
  REQUIRE(tagged.tokens.size() == 2);
  CHECK(tagged.tokens[0].tag == LanguageTag::iso("en"));
  CHECK(tagged.tokens[1].tag == LanguageTag::iso("sw"));
}

TEST_CASE("diacritic rule resolves out-of-wordlist tokens") {
  auto config = en_yo_config();
  auto tagged = tag("ọmọ", config);  // ọmọ
  REQUIRE(tagged.tokens.size() == 1);
  CHECK(tagged.tokens[0].tag == LanguageTag::iso("yo"));
}

TEST_CASE("common-script tokens are language independent") {
  auto config = en_sw_config();
  auto tagged = tag("42 ... 3.14", config);
  for (const auto& t : tagged.tokens) {
    CHECK(t.tag == LanguageTag::independent());
  }
}

TEST_CASE("single-candidate scripts map directly") {
  LidConfig config;
  config.languages = {"am", "en"};
  config.script_map[Script::Ethiopic] = {"am"};
  config.script_map[Script::Latin] = {"en"};
  config.wordlists["en"] = {"the"};
  config.build_trigrams();
  auto tagged = tag("ኣማርኛ the", config);
  REQUIRE(tagged.tokens.size() == 2);
  CHECK(tagged.tokens[0].tag == LanguageTag::iso("am"));
  CHECK(tagged.tokens[1].tag == LanguageTag::iso("en"));
}

TEST_CASE("trigram likelihood decides unlisted latin tokens") {
  auto config = en_sw_config();
  // 'thinking' is in neither list; English trigrams dominate.
  auto tagged = tag("thinking", config);
  REQUIRE(tagged.tokens.size() == 1);
  CHECK(tagged.tokens[0].tag == LanguageTag::iso("en"));
  // 'hesabuni' leans Swahili.
  auto tagged2 = tag("hesabuni", config);
  CHECK(tagged2.tokens[0].tag == LanguageTag::iso("sw"));
}

TEST_CASE("unconfigured scripts stay unknown and are counted") {
  auto config = en_sw_config();
  LidDiagnostics diag;
  auto tagged = tag("देखिए the", config, &diag);
  REQUIRE(tagged.tokens.size() == 2);
  CHECK(tagged.tokens[0].tag == LanguageTag::unknown());
  CHECK(tagged.tokens[1].tag == LanguageTag::iso("en"));
  CHECK(diag.unconfigured_scripts.at("Devanagari") == 1);
}

TEST_CASE("tag_words never emits a language outside the config") {
  auto config = en_sw_config();
  std::mt19937_64 gen(3);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  for (int trial = 0; trial < 200; ++trial) {
    std::string word;
    int n = 1 + static_cast<int>(gen() % 9);
    for (int i = 0; i < n; ++i) word += alphabet[gen() % alphabet.size()];
    auto tagged = tag(word, config);
    for (const auto& t : tagged.tokens) {
      if (t.tag.is_iso()) {
        CHECK((t.tag.code() == "en" || t.tag.code() == "sw"));
      }
    }
  }
}

TEST_CASE("instance languages require the token threshold") {
  std::vector<LanguageTag> tags(100, LanguageTag::iso("sw"));
  tags.push_back(LanguageTag::iso("en"));
  auto text = synthetic_tags(tags);
  CHECK(detect_instance_languages(text, 3) == std::set<std::string>{"sw"});
  CHECK_FALSE(is_code_switched(text, 3));

  std::vector<LanguageTag> mixed;
  for (int i = 0; i < 60; ++i) mixed.push_back(LanguageTag::iso("en"));
  for (int i = 0; i < 40; ++i) mixed.push_back(LanguageTag::iso("sw"));
  auto text2 = synthetic_tags(mixed);
  CHECK(detect_instance_languages(text2, 3) == std::set<std::string>{"en", "sw"});
  CHECK(is_code_switched(text2, 3));

  auto text3 = synthetic_tags(std::vector<LanguageTag>(5, LanguageTag::independent()));
  CHECK(detect_instance_languages(text3, 3).empty());
}

TEST_CASE("two stray tokens below the threshold do not code-switch") {
  std::vector<LanguageTag> tags(100, LanguageTag::iso("sw"));
  tags.push_back(LanguageTag::iso("en"));
  tags.push_back(LanguageTag::iso("en"));
  CHECK_FALSE(is_code_switched(synthetic_tags(tags), 3));
}

TEST_CASE("raising the threshold never grows the language set") {
  std::mt19937_64 gen(17);
  const std::vector<std::string> langs = {"en", "sw", "yo", "ig"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LanguageTag> tags;
    int n = static_cast<int>(gen() % 30);
    for (int i = 0; i < n; ++i) {
      if (gen() % 5 == 0) {
        tags.push_back(LanguageTag::independent());
      } else {
        tags.push_back(LanguageTag::iso(langs[gen() % langs.size()]));
      }
    }
    auto text = synthetic_tags(tags);
    auto low = detect_instance_languages(text, 2);
    auto high = detect_instance_languages(text, 5);
    CHECK(std::includes(low.begin(), low.end(), high.begin(), high.end()));
  }
}

TEST_CASE("code-switch detection ignores token order") {
  std::mt19937_64 gen(19);
  std::vector<LanguageTag> tags;
  for (int i = 0; i < 8; ++i) tags.push_back(LanguageTag::iso("en"));
  for (int i = 0; i < 4; ++i) tags.push_back(LanguageTag::iso("sw"));
  bool base = is_code_switched(synthetic_tags(tags), 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::shuffle(tags.begin(), tags.end(), gen);
    CHECK(is_code_switched(synthetic_tags(tags), 3) == base);
  }
}

TEST_CASE("validate_lid scores gold instances") {
  auto config = en_sw_config();
  GoldInstance inst;
  inst.text = "the jibu 42";
  inst.tokens = {{"the", LanguageTag::iso("en")},
                 {"jibu", LanguageTag::iso("sw")},
                 {"42", LanguageTag::independent()}};
  auto report = validate_lid({inst}, config, {});
  CHECK(report.total_tokens == 3);
  CHECK(report.scored_tokens == 2);  // the language-independent token is excluded
  CHECK(report.correct_tokens == 2);
  CHECK(report.accuracy == 1.0);

  GoldInstance wrong = inst;
  wrong.tokens[1].lang = LanguageTag::iso("en");  // deliberately mislabeled
  auto report2 = validate_lid({inst, wrong}, config, {});
  CHECK(report2.scored_tokens == 4);
  CHECK(report2.correct_tokens == 3);
  CHECK(report2.accuracy == Catch::Approx(0.75));
  CHECK(report2.confusion.at({"en", "sw"}) == 1);
}

TEST_CASE("external backends plug in behind the same surface") {
  auto config = en_sw_config();
  LidBackend constant_backend = [](const std::vector<Token>& tokens) {
    return std::vector<LanguageTag>(tokens.size(), LanguageTag::iso("sw"));
  };
  auto tagged = tag_words_with(tokenize("the 42", LanguageTag::unknown(), {}),
                               constant_backend);
  REQUIRE(tagged.tokens.size() == 2);
  CHECK(tagged.tokens[0].tag == LanguageTag::iso("sw"));
  // Common-script tokens stay language-independent regardless of the backend
  CHECK(tagged.tokens[1].tag == LanguageTag::independent());

  LidBackend short_backend = [](const std::vector<Token>&) {
    return std::vector<LanguageTag>{};
  };
  CHECK_THROWS_AS(
      tag_words_with(tokenize("the 42", LanguageTag::unknown(), {}), short_backend),
      InputError);
}

TEST_CASE("lid report keeps per-token outcomes") {
  auto config = en_sw_config();
  GoldInstance inst;
  inst.text = "the jibu";
  inst.tokens = {{"the", LanguageTag::iso("en")}, {"jibu", LanguageTag::iso("sw")}};
  auto report = validate_lid({inst}, config, {});
  REQUIRE(report.tokens.size() == 2);
  CHECK(report.tokens[0].text == "the");
  CHECK(report.tokens[0].gold == LanguageTag::iso("en"));
  CHECK(report.tokens[0].predicted == LanguageTag::iso("en"));
  CHECK(report.tokens[1].instance == 0);
}

TEST_CASE("validate_lid raises on token boundary mismatch") {
  auto config = en_sw_config();
  GoldInstance inst;
  inst.text = "the jibu";
  inst.tokens = {{"the jibu", LanguageTag::iso("en")}};  // one merged gold token
  try {
    validate_lid({inst}, config, {});
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("instance 0") != std::string::npos);
  }
}
