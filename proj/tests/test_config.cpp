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

#include <corelab/config.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

using namespace corelab;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  auto dir = std::filesystem::temp_directory_path() / "corelab_config_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out << body;
  return path;
}

std::filesystem::path bundled_data_dir() {
  const char* env = std::getenv("CORELAB_DATA_DIR");
  return env != nullptr && *env != '\0' ? std::filesystem::path(env)
                                        : std::filesystem::path("data");
}

}  // namespace

TEST_CASE("registry parsing resolves paths and diacritics") {
  write_temp("words_en.txt", "the\nanswer\n");
  auto path = write_temp("registry_ok.json", R"({
    "languages": {
      "en": {"scripts": ["Latin"], "wordlist": "words_en.txt"},
      "yo": {"scripts": ["Latin"], "wordlist": "words_en.txt",
             "diacritics": "ọ́"},
      "zh": {"scripts": ["Han"]}
    },
    "segmenters": {"Han": "han_dict.txt"}
  })");
  auto registry = Registry::load(path.string());
  REQUIRE(registry.languages.size() == 3);
  CHECK(registry.languages.at("zh").scripts ==
        std::vector<Script>{Script::Han});
  CHECK(registry.languages.at("yo").diacritics.count(U'ọ') == 1);
  CHECK(registry.languages.at("yo").diacritics.count(U'́') == 1);
  CHECK(registry.segmenter_paths.at(Script::Han).find("han_dict.txt") !=
        std::string::npos);
  // wordlist path resolves against the registry directory
  CHECK(std::filesystem::exists(*registry.languages.at("en").wordlist_path));
}

TEST_CASE("registry rejects unknown scripts and reserved codes") {
  auto bad_script = write_temp("registry_bad_script.json",
                               R"({"languages": {"xx": {"scripts": ["Klingon"]}}})");
  CHECK_THROWS_AS(Registry::load(bad_script.string()), ConfigError);

  auto reserved = write_temp("registry_reserved.json",
                             R"({"languages": {"none": {"scripts": ["Latin"]}}})");
  CHECK_THROWS_AS(Registry::load(reserved.string()), ConfigError);

  auto no_scripts = write_temp("registry_no_scripts.json",
                               R"({"languages": {"en": {}}})");
  CHECK_THROWS_AS(Registry::load(no_scripts.string()), ConfigError);

  auto not_json = write_temp("registry_not_json.json", "{nope");
  CHECK_THROWS_AS(Registry::load(not_json.string()), ConfigError);
}

TEST_CASE("lid config building enforces latin wordlists") {
  auto path = write_temp("registry_missing_wordlist.json",
                         R"({"languages": {"sw": {"scripts": ["Latin"]}}})");
  auto registry = Registry::load(path.string());
  CHECK_THROWS_AS(build_lid_config(registry), ConfigError);
}

TEST_CASE("missing wordlist file is a configuration error") {
  auto path = write_temp("registry_missing_file.json",
                         R"({"languages": {"sw": {"scripts": ["Latin"],
                                                  "wordlist": "absent.txt"}}})");
  auto registry = Registry::load(path.string());
  CHECK_THROWS_AS(build_lid_config(registry), ConfigError);
}

TEST_CASE("the bundled registry loads, validates, and segments") {
  auto data = bundled_data_dir();
  if (!std::filesystem::exists(data / "registry.json")) {
    SKIP("bundled data directory not found");
  }
  auto registry = Registry::load((data / "registry.json").string());
  auto lid = build_lid_config(registry);
  auto segmenters = build_segmenters(registry);
  CHECK(lid.languages.size() >= 9);
  CHECK(segmenters.has(Script::Han));
  CHECK(segmenters.has(Script::Thai));
  CHECK(segmenters.has(Script::Myanmar));

  // candidate order is ascending code order
  CHECK(std::is_sorted(lid.languages.begin(), lid.languages.end()));

  auto tagged = tag_words(
      tokenize("jibu la产品 ni 42", LanguageTag::iso("sw"), segmenters), lid);
  REQUIRE(tagged.tokens.size() >= 4);
  CHECK(tagged.tokens[0].tag == LanguageTag::iso("sw"));
}
