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

#include <corelab/metrics.hpp>

#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

using namespace corelab;

namespace {

TokenizedText from_tags(const std::vector<LanguageTag>& tags) {
  TokenizedText out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    Token t;
    t.text = "w";
    t.begin = i * 2;
    t.end = i * 2 + 1;
    t.tag = tags[i];
    out.tokens.push_back(std::move(t));
  }
  return out;
}

SpanSequence spans_of(const std::vector<std::int64_t>& lengths) {
  SpanSequence s;
  std::size_t start = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    // alternate languages so adjacent spans differ
    s.spans.push_back(Span{i % 2 == 0 ? "en" : "sw", start,
                           static_cast<std::size_t>(lengths[i])});
    start += static_cast<std::size_t>(lengths[i]);
  }
  return s;
}

const LanguageTag EN = LanguageTag::iso("en");
const LanguageTag SW = LanguageTag::iso("sw");
const LanguageTag IND = LanguageTag::independent();

}  // namespace

TEST_CASE("extract_spans run-length encodes tagged tokens") {
  auto s = extract_spans(from_tags({EN, EN, SW, SW, SW}));
  REQUIRE(s.spans.size() == 2);
  CHECK(s.spans[0].language == "en");
  CHECK(s.spans[0].length == 2);
  CHECK(s.spans[1].language == "sw");
  CHECK(s.spans[1].length == 3);
}

TEST_CASE("independent tokens neither break nor start spans") {
  auto s = extract_spans(from_tags({EN, IND, EN, SW}));
  REQUIRE(s.spans.size() == 2);
  CHECK(s.spans[0].language == "en");
  CHECK(s.spans[0].length == 2);
  CHECK(s.spans[1].language == "sw");
  CHECK(s.spans[1].length == 1);

  CHECK(extract_spans(from_tags({IND, IND, IND})).spans.empty());
}

TEST_CASE("cmi follows the dominant-language share") {
  CHECK(cmi({{"en", 10}}, 10, 0) == 0.0);
  CHECK(cmi({{"en", 6}, {"sw", 4}}, 10, 0) == Catch::Approx(0.4).epsilon(1e-12));
  CHECK(cmi({}, 5, 5) == 0.0);  // all language-independent
  CHECK_THROWS_AS(cmi({{"en", -1}}, 10, 0), InputError);
  CHECK_THROWS_AS(cmi({{"en", 3}}, 10, 0), InputError);  // counts must sum to n-u
}

TEST_CASE("m_index measures evenness") {
  CHECK(m_index({{"en", 10}}, 10) == 0.0);
  CHECK(m_index({{"en", 5}, {"sw", 5}}, 10) == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(m_index({{"en", 75}, {"sw", 25}}, 100) == Catch::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("m_index is one exactly for equal proportions") {
  CHECK(m_index({{"a", 7}, {"b", 7}, {"c", 7}}, 21) == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(m_index({{"a", 8}, {"b", 7}, {"c", 6}}, 21) < 1.0);
}

TEST_CASE("i_index counts adjacent language changes") {
  CHECK(i_index(from_tags({EN, EN, EN})) == 0.0);
  CHECK(i_index(from_tags({EN, SW, EN, SW, EN, SW})) == Catch::Approx(1.0));
  CHECK(i_index(from_tags({EN, EN, SW, SW})) == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
  // independents are transparent
  CHECK(i_index(from_tags({EN, IND, SW})) == Catch::Approx(1.0));
  CHECK(i_index(from_tags({EN})) == 0.0);
}

TEST_CASE("i_index equals that of the reversed sequence") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LanguageTag> tags;
    int n = static_cast<int>(gen() % 12);
    for (int i = 0; i < n; ++i) {
      int r = static_cast<int>(gen() % 3);
      tags.push_back(r == 0 ? EN : r == 1 ? SW : IND);
    }
    auto forward = i_index(from_tags(tags));
    std::reverse(tags.begin(), tags.end());
    CHECK(i_index(from_tags(tags)) == forward);
  }
}

TEST_CASE("burstiness from population span statistics") {
  CHECK(*burstiness(spans_of({2, 2, 2})) == Catch::Approx(-1.0));
  CHECK(*burstiness(spans_of({1, 5})) == Catch::Approx(-0.2).epsilon(1e-12));
  CHECK(*burstiness(spans_of({7})) == Catch::Approx(-1.0));
  CHECK_FALSE(burstiness(SpanSequence{}).has_value());
}

TEST_CASE("memory is the lag-1 span-length correlation") {
  CHECK(*memory(spans_of({1, 2, 1, 2, 1, 2})) == Catch::Approx(-1.0).epsilon(1e-12));
  CHECK_FALSE(memory(spans_of({3, 4})).has_value());     // fewer than 3 spans
  CHECK_FALSE(memory(spans_of({3, 3, 3, 3})).has_value());  // zero variance
}

TEST_CASE("matrix language argmax with tie-breaks") {
  auto m1 = matrix_language({{"hi", 100}}, LanguageTag::iso("hi"));
  REQUIRE(m1.has_value());
  CHECK(m1->first == "hi");
  CHECK(m1->second == MatrixClass::SameAsPrompt);

  auto m2 = matrix_language({{"en", 60}, {"sw", 40}}, LanguageTag::iso("sw"));
  REQUIRE(m2.has_value());
  CHECK(m2->first == "en");
  CHECK(m2->second == MatrixClass::English);

  auto m3 = matrix_language({{"en", 50}, {"sw", 50}}, LanguageTag::iso("sw"));
  REQUIRE(m3.has_value());
  CHECK(m3->first == "sw");
  CHECK(m3->second == MatrixClass::SameAsPrompt);

  // prompt absent from the tie: English wins, then code order
  auto m4 = matrix_language({{"sw", 5}, {"en", 5}}, LanguageTag::iso("hi"));
  CHECK(m4->first == "en");
  CHECK(m4->second == MatrixClass::English);
  auto m5 = matrix_language({{"yo", 5}, {"sw", 5}}, LanguageTag::iso("hi"));
  CHECK(m5->first == "sw");
  CHECK(m5->second == MatrixClass::OtherLanguage);

  CHECK_FALSE(matrix_language({}, LanguageTag::iso("en")).has_value());
}

TEST_CASE("compute_metrics fills the whole vector") {
  auto mono = compute_metrics(from_tags({SW, SW, SW, IND}), LanguageTag::iso("sw"));
  CHECK(mono.n_tokens == 4);
  CHECK(mono.n_independent == 1);
  CHECK(mono.cmi == 0.0);
  CHECK(mono.m_index == 0.0);
  CHECK(mono.i_index == 0.0);
  CHECK(mono.matrix_class == MatrixClass::SameAsPrompt);
  CHECK(*mono.burstiness == Catch::Approx(-1.0));
  CHECK_FALSE(mono.memory.has_value());

  auto empty = compute_metrics(from_tags({IND, IND}), LanguageTag::iso("sw"));
  CHECK(empty.cmi == 0.0);
  CHECK_FALSE(empty.burstiness.has_value());
  CHECK_FALSE(empty.matrix_language.has_value());
  CHECK_FALSE(empty.matrix_class.has_value());
}

TEST_CASE("unknown tags count as unresolved, not language mass") {
  auto m = compute_metrics(from_tags({EN, LanguageTag::unknown(), EN}),
                           LanguageTag::iso("en"));
  CHECK(m.n_tokens == 3);
  CHECK(m.n_independent == 1);
  CHECK(m.language_counts.at("en") == 2);
}

TEST_CASE("min_max_normalize maps columns into the unit interval") {
  std::vector<std::optional<double>> col = {1.0, 3.0, 5.0};
  min_max_normalize(&col);
  CHECK(*col[0] == 0.0);
  CHECK(*col[1] == Catch::Approx(0.5));
  CHECK(*col[2] == 1.0);

  std::vector<std::optional<double>> constant = {4.0, 4.0};
  min_max_normalize(&constant);
  CHECK(*constant[0] == 0.0);
  CHECK(*constant[1] == 0.0);

  std::vector<std::optional<double>> with_gap = {-1.0, std::nullopt, 1.0, 0.0};
  min_max_normalize(&with_gap);
  CHECK(*with_gap[0] == 0.0);
  CHECK_FALSE(with_gap[1].has_value());
  CHECK(*with_gap[2] == 1.0);
  CHECK(*with_gap[3] == Catch::Approx(0.5));
}

TEST_CASE("metric ranges hold on fuzzed tag sequences") {
  std::mt19937_64 gen(41);
  const std::vector<LanguageTag> pool = {EN, SW, LanguageTag::iso("yo"), IND};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<LanguageTag> tags;
    int n = static_cast<int>(gen() % 14);
    for (int i = 0; i < n; ++i) tags.push_back(pool[gen() % pool.size()]);
    auto text = from_tags(tags);
    auto m = compute_metrics(text, SW);

    std::size_t n_langs = m.language_counts.size();
    if (n_langs >= 1) {
      CHECK(m.cmi >= 0.0);
      CHECK(m.cmi <= 1.0 - 1.0 / static_cast<double>(n_langs) + 1e-12);
    } else {
      CHECK(m.cmi == 0.0);
    }
    CHECK(m.m_index >= 0.0);
    CHECK(m.m_index <= 1.0 + 1e-12);
    CHECK(m.i_index >= 0.0);
    CHECK(m.i_index <= 1.0);
    if (m.burstiness) {
      CHECK(*m.burstiness >= -1.0);
      CHECK(*m.burstiness < 1.0);
    }
    if (m.memory) {
      CHECK(*m.memory >= -1.0 - 1e-12);
      CHECK(*m.memory <= 1.0 + 1e-12);
    }
  }
}
