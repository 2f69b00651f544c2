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

#include <stdexcept>
#include <string>

namespace corelab {

// Malformed input data (bad UTF-8, bad JSONL, schema violations). CLI exit 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Missing or inconsistent configuration (registries, dictionaries,
// templates). CLI exit 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Remote rater failures: transport problems or responses that never parse.
class RatingError : public std::runtime_error {
 public:
  explicit RatingError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace corelab
