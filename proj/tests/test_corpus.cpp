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

#include <corelab/corpus.hpp>
#include <corelab/rater.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <catch2/catch_amalgamated.hpp>

using namespace corelab;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out << body;
  return path;
}

ReasoningTrace make_trace(const std::string& id) {
  ReasoningTrace t;
  t.id = id;
  t.model = "demo";
  t.prompt_language = "sw";
  t.dataset = "unit";
  t.domain = "math";
  t.prompt = "p";
  t.reasoning = "r";
  t.answer = "The answer is (C)";
  t.gold = "C";
  return t;
}

}  // namespace

TEST_CASE("read_corpus parses one object per line") {
  auto path = write_temp("corpus_ok.jsonl",
      R"({"id":"a","model":"m","prompt_language":"sw","dataset":"d","domain":"x","prompt":"p","reasoning":"r","answer":"a"})" "\n"
      R"({"id":"b","model":"m","prompt_language":"sw","dataset":"d","domain":"x","prompt":"p","reasoning":"r","answer":"a","gold":"C","correct":true})" "\n"
      R"({"id":"c","model":"m","prompt_language":"sw","dataset":"d","domain":"x","prompt":"p","reasoning":"r","answer":"a","extra_field":[1,2]})" "\n");
  auto traces = read_corpus(path.string());
  REQUIRE(traces.size() == 3);
  CHECK(traces[0].id == "a");
  CHECK(traces[1].correct == true);
  CHECK(traces[2].extras.at("extra_field").size() == 2);
}

TEST_CASE("empty corpus file yields an empty list") {
  auto path = write_temp("corpus_empty.jsonl", "");
  CHECK(read_corpus(path.string()).empty());
}

TEST_CASE("missing fields are reported with line numbers") {
  auto path = write_temp("corpus_missing.jsonl",
      R"({"id":"a","model":"m","prompt_language":"sw","dataset":"d","domain":"x","prompt":"p","reasoning":"r","answer":"a"})" "\n"
      R"({"id":"b","model":"m","prompt_language":"sw","dataset":"d","domain":"x","prompt":"p","answer":"a"})" "\n");
  try {
    read_corpus(path.string());
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()) == "line 2: missing field reasoning");
  }
}

TEST_CASE("duplicate ids name both lines") {
  auto path = write_temp("corpus_dup.jsonl",
      R"({"id":"a","model":"m","prompt_language":"sw","dataset":"d","domain":"x","prompt":"p","reasoning":"r","answer":"a"})" "\n"
      R"({"id":"a","model":"m","prompt_language":"sw","dataset":"d","domain":"x","prompt":"p","reasoning":"r","answer":"a"})" "\n");
  try {
    read_corpus(path.string());
    FAIL("expected InputError");
  } catch (const InputError& e) {
    std::string what = e.what();
    CHECK(what.find("duplicate id 'a'") != std::string::npos);
    CHECK(what.find("1") != std::string::npos);
    CHECK(what.find("2") != std::string::npos);
  }
}

TEST_CASE("correct requires gold") {
  auto path = write_temp("corpus_correct.jsonl",
      R"({"id":"a","model":"m","prompt_language":"sw","dataset":"d","domain":"x","prompt":"p","reasoning":"r","answer":"a","correct":true})" "\n");
  CHECK_THROWS_AS(read_corpus(path.string()), InputError);
}

TEST_CASE("write then read round-trips byte-identically") {
  std::vector<ReasoningTrace> traces;
  auto a = make_trace("a");
  a.correct = true;
  a.extras["note"] = "kept";
  a.extras["nested"] = Json{{"k", 1}};
  traces.push_back(a);
  auto b = make_trace("b");
  b.gold.reset();
  b.reasoning = "line one\nline two";
  traces.push_back(b);

  std::ostringstream first;
  write_corpus(traces, first);
  auto path = write_temp("corpus_rt.jsonl", first.str());
  auto reread = read_corpus(path.string());
  std::ostringstream second;
  write_corpus(reread, second);
  CHECK(first.str() == second.str());
}

TEST_CASE("score_correctness extracts the last standalone choice letter") {
  Diagnostics diag;
  auto t = make_trace("a");
  CHECK(score_correctness(t, &diag));

  t.answer = "B. because of reasons";
  CHECK_FALSE(score_correctness(t, &diag));

  t.answer = "answer: c.";
  CHECK(score_correctness(t, &diag));  // case-insensitive

  t.answer = "maybe A, maybe B, final (C)";
  CHECK(score_correctness(t, &diag));

  t.answer = "是C。";  // CJK-adjacent letter still counts
  CHECK(score_correctness(t, &diag));

  CHECK(diag.empty());
  t.answer = "no letter here";
  CHECK_FALSE(score_correctness(t, &diag));
  REQUIRE(diag.messages.size() == 1);
  CHECK(diag.messages[0].find("unparseable answer") != std::string::npos);

  t.gold.reset();
  CHECK_THROWS_AS(score_correctness(t), InputError);
}

TEST_CASE("choice letters inside words do not count") {
  auto t = make_trace("a");
  t.answer = "abcd cab";
  Diagnostics diag;
  CHECK_FALSE(score_correctness(t, &diag));  // unparseable, no standalone letter
  t.answer = "grade 4a";
  CHECK_FALSE(extract_choice_letter(t.answer).has_value());
}

TEST_CASE("attach_ratings validates, overrides, and rejects") {
  std::vector<ReasoningTrace> corpus = {make_trace("a"), make_trace("b")};
  Diagnostics diag;
  std::vector<RatingRecord> ratings = {
      {"a", RatingDimension::Accuracy, 3, "r1"},
      {"b", RatingDimension::Fluency, 2, "r1"},
      {"a", RatingDimension::Accuracy, 2, "r2"},  // later record wins
      {"b", RatingDimension::Accuracy, 5, "r2"},  // out of rubric, rejected
  };
  attach_ratings(corpus, ratings, &diag);
  CHECK(corpus[0].accuracy == 2);
  CHECK(corpus[1].fluency == 2);
  CHECK_FALSE(corpus[1].accuracy.has_value());
  REQUIRE(diag.messages.size() == 1);
  CHECK(diag.messages[0].find("score 5") != std::string::npos);

  // idempotent for a fixed list
  attach_ratings(corpus, ratings, nullptr);
  CHECK(corpus[0].accuracy == 2);

  std::vector<RatingRecord> bad = {{"missing", RatingDimension::Accuracy, 1, "r"}};
  CHECK_THROWS_AS(attach_ratings(corpus, bad), InputError);
}

TEST_CASE("rubric prompts embed the reasoning") {
  std::string p = render_rubric_prompt(RatingDimension::Accuracy, "REASONING BODY");
  CHECK(p.find("REASONING BODY") != std::string::npos);
  CHECK(p.find("{reasoning}") == std::string::npos);
  CHECK(p.find("score the accuracy") != std::string::npos);
  std::string f = render_rubric_prompt(RatingDimension::Fluency, "X");
  CHECK(f.find("score the fluency") != std::string::npos);
}

TEST_CASE("request_rating against a local rater") {
  httplib::Server server;
  std::atomic<int> calls{0};
  server.Post("/rate", [&](const httplib::Request& req, httplib::Response& res) {
    auto body = Json::parse(req.body);
    REQUIRE(body.contains("prompt"));
    int call = calls.fetch_add(1);
    switch (call) {
      case 0: res.set_content("2", "text/plain"); break;
      case 1: res.set_content(" 3\n", "text/plain"); break;
      default: res.set_content("great!", "text/plain"); break;
    }
  });
  server.Post("/boom", [](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
    res.set_content("oops", "text/plain");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread server_thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  std::string endpoint = "http://127.0.0.1:" + std::to_string(port) + "/rate";

  auto trace = make_trace("a");
  auto r1 = request_rating(trace, RatingDimension::Accuracy, endpoint);
  CHECK(r1.score == 2);
  CHECK(r1.trace_id == "a");
  auto r2 = request_rating(trace, RatingDimension::Fluency, endpoint);
  CHECK(r2.score == 3);

  // three malformed responses exhaust the retries
  int before = calls.load();
  CHECK_THROWS_AS(request_rating(trace, RatingDimension::Accuracy, endpoint),
                  RatingError);
  CHECK(calls.load() - before == 3);

  std::string boom = "http://127.0.0.1:" + std::to_string(port) + "/boom";
  CHECK_THROWS_AS(request_rating(trace, RatingDimension::Accuracy, boom), RatingError);

  server.stop();
  server_thread.join();
}

TEST_CASE("request_ratings preserves trace order under concurrency") {
  httplib::Server server;
  server.Post("/rate", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content("1", "text/plain");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread server_thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  std::string endpoint = "http://127.0.0.1:" + std::to_string(port) + "/rate";

  std::vector<ReasoningTrace> traces;
  for (int i = 0; i < 9; ++i) traces.push_back(make_trace("t" + std::to_string(i)));
  auto batch = request_ratings(traces, RatingDimension::Fluency, endpoint, 4);
  REQUIRE(batch.records.size() == traces.size());
  CHECK(batch.failures.empty());
  for (std::size_t i = 0; i < traces.size(); ++i) {
    CHECK(batch.records[i].trace_id == traces[i].id);
  }

  server.stop();
  server_thread.join();
}
