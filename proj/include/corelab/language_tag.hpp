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

#include <compare>
#include <string>
#include <string_view>

namespace corelab {

// Word-level language assignment: an ISO 639 code, the reserved
// language-independent class (digits, punctuation, symbols), or unknown.
class LanguageTag {
 public:
  enum class Kind : unsigned char { Unknown = 0, Independent = 1, Iso = 2 };

  LanguageTag() = default;

  static LanguageTag unknown() { return LanguageTag{}; }
  static LanguageTag independent() { return LanguageTag(Kind::Independent, ""); }
  static LanguageTag iso(std::string_view code) {
    return LanguageTag(Kind::Iso, std::string(code));
  }

  Kind kind() const { return kind_; }
  bool is_iso() const { return kind_ == Kind::Iso; }
  bool is_independent() const { return kind_ == Kind::Independent; }
  bool is_unknown() const { return kind_ == Kind::Unknown; }

  // Valid only for Iso tags.
  const std::string& code() const { return code_; }

  // Serialized form: the ISO code, or the reserved words "none"
  // (language-independent) and "unknown".
  std::string to_string() const {
    switch (kind_) {
      case Kind::Iso:
        return code_;
      case Kind::Independent:
        return "none";
      default:
        return "unknown";
    }
  }

  static LanguageTag from_string(std::string_view s) {
    if (s == "none") return independent();
    if (s == "unknown" || s.empty()) return unknown();
    return iso(s);
  }

  friend bool operator==(const LanguageTag&, const LanguageTag&) = default;
  friend auto operator<=>(const LanguageTag&, const LanguageTag&) = default;

 private:
  LanguageTag(Kind kind, std::string code) : kind_(kind), code_(std::move(code)) {}

  Kind kind_ = Kind::Unknown;
  std::string code_;
};

}  // namespace corelab
