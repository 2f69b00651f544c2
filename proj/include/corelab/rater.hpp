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

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

// glibc resolv.h, dragged in through httplib, leaves an _res macro behind
// that breaks Eigen 3.4 headers included later in the same unit.
#ifdef _res
#undef _res
#endif

#include "corelab/corpus.hpp"
#include "corelab/errors.hpp"

namespace corelab {

// Rubric prompts sent to the external rater; {reasoning} is replaced with the
// trace's reasoning text. The rater is expected to answer with a bare score.
inline constexpr const char* kAccuracyRubricPrompt =
    "Your task is to score the accuracy of the code-switching in the following "
    "text on a scale from 1 to 3, where 1 is the lowest and 3 is the highest. "
    "Accuracy measures whether the code-switched terms are used correctly.\n\n"
    "Text to score:\n\n{reasoning}\n\n"
    "Use the following rubric to guide your scoring. The rubric is formatted as "
    "\"<score>. <description>\":\n\n"
    "1. Low Accuracy: Code-switched terms are incorrect or inappropriate.\n\n"
    "2. Moderate Accuracy: Most code-switched terms are appropriate but with "
    "minor mistakes.\n\n"
    "3. High Accuracy: Code-switched terms are accurate and appropriately used.\n\n"
    "Respond with only your score in the following format: <score>";

inline constexpr const char* kFluencyRubricPrompt =
    "Your task is to score the fluency of the code-switching in the following "
    "text on a scale from 1 to 3, where 1 is the lowest and 3 is the highest. "
    "Fluency measures how natural and easy to understand the text is, "
    "considering grammar, syntax, and the smooth integration of code-switching.\n\n"
    "Text to score:\n\n{reasoning}\n\n"
    "Use the following rubric to guide your scoring. The rubric is formatted as "
    "\"<score>. <description>\":\n\n"
    "1. Low Fluency: The text is difficult to understand, awkward, or features "
    "poor grammar or syntax; or, the code-switching disrupts the flow of the "
    "text.\n\n"
    "2. Moderate Fluency: The text is understandable but may have awkward or "
    "unnatural phrasing, grammar and syntax is acceptable, and code-switching "
    "is somewhat smooth but not perfectly integrated.\n\n"
    "3. High Fluency: The text is natural and easy to understand; grammar and "
    "syntax are good; and code-switching is smooth and seamless, enhancing the "
    "sentence flow.\n\n"
    "Respond with only your score in the following format: <score>";

inline std::string render_rubric_prompt(RatingDimension dimension,
                                        const std::string& reasoning) {
  std::string prompt = dimension == RatingDimension::Accuracy
                           ? kAccuracyRubricPrompt
                           : kFluencyRubricPrompt;
  const std::string placeholder = "{reasoning}";
  auto pos = prompt.find(placeholder);
  prompt.replace(pos, placeholder.size(), reasoning);
  return prompt;
}

inline const char* kRaterUrlEnv = "CORELAB_RATER_URL";

inline std::optional<std::string> rater_endpoint_from_env() {
  const char* v = std::getenv(kRaterUrlEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

namespace detail {

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;
};

inline Endpoint split_endpoint(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("rater endpoint must include a scheme: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

inline std::optional<int> parse_score(const std::string& body) {
  std::size_t begin = body.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return std::nullopt;
  std::size_t end = body.find_last_not_of(" \t\r\n") + 1;
  std::string core = body.substr(begin, end - begin);
  if (core.empty() || core.size() > 2) return std::nullopt;
  for (char c : core) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  int score = std::stoi(core);
  if (score < 1 || score > 3) return std::nullopt;
  return score;
}

}  // namespace detail

// POSTs the rendered rubric prompt as {"prompt": ...} and parses the plain
// text reply as a score. Malformed replies are retried up to three attempts;
// transport failures and non-2xx responses are not.
inline RatingRecord request_rating(const ReasoningTrace& trace,
                                   RatingDimension dimension,
                                   const std::string& endpoint,
                                   int max_attempts = 3,
                                   int timeout_seconds = 30) {
  auto [base, path] = detail::split_endpoint(endpoint);
  httplib::Client client(base);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);

  Json body_json = {{"prompt", render_rubric_prompt(dimension, trace.reasoning)}};
  const std::string body = body_json.dump();

  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    auto res = client.Post(path, body, "application/json");
    if (!res) {
      throw RatingError("trace '" + trace.id + "': rater unreachable at " + endpoint);
    }
    if (res->status < 200 || res->status >= 300) {
      throw RatingError("trace '" + trace.id + "': rater returned HTTP " +
                        std::to_string(res->status));
    }
    if (auto score = detail::parse_score(res->body)) {
      return RatingRecord{trace.id, dimension, *score, endpoint};
    }
  }
  throw RatingError("trace '" + trace.id + "': rating unavailable after " +
                    std::to_string(max_attempts) + " malformed responses");
}

struct RatingBatch {
  std::vector<RatingRecord> records;          // in trace order
  std::vector<std::string> failures;          // one message per failed trace
};

// Rates a batch with bounded concurrency; output order follows input order.
inline RatingBatch request_ratings(const std::vector<ReasoningTrace>& traces,
                                   RatingDimension dimension,
                                   const std::string& endpoint,
                                   int max_in_flight = 4) {
  std::vector<std::optional<RatingRecord>> slots(traces.size());
  std::vector<std::optional<std::string>> errors(traces.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= traces.size()) return;
      try {
        slots[i] = request_rating(traces[i], dimension, endpoint);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  int n_threads = std::max(1, std::min<int>(max_in_flight,
                                            static_cast<int>(traces.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  RatingBatch out;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (slots[i]) out.records.push_back(*slots[i]);
    if (errors[i]) out.failures.push_back(*errors[i]);
  }
  return out;
}

}  // namespace corelab
