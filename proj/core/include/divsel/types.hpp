// Copyright 2026 The divsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace divsel {

// Class index in 0..C-1.
using Label = std::uint32_t;

enum class Split : std::uint8_t { Train, Validation, Test };

std::string_view to_string(Split split) noexcept;
Split parse_split(std::string_view text);

// One pool member: the (feature extractor, learning algorithm) pair.
//
// Tokens are stored upper-case and may not contain '-', ',' or whitespace, so
// the canonical "EXTRACTOR-ALGORITHM" rendering is injective.
class ClassifierId {
 public:
  ClassifierId(std::string_view extractor, std::string_view algorithm);

  // Parses the canonical "EXTRACTOR-ALGORITHM" form (case-insensitive).
  static ClassifierId parse(std::string_view text);

  const std::string& extractor() const noexcept { return extractor_; }
  const std::string& algorithm() const noexcept { return algorithm_; }
  std::string str() const { return extractor_ + "-" + algorithm_; }

  // Ordered by canonical rendering.
  friend std::strong_ordering operator<=>(const ClassifierId& a, const ClassifierId& b) {
    return a.str() <=> b.str();
  }
  friend bool operator==(const ClassifierId&, const ClassifierId&) = default;

 private:
  std::string extractor_;
  std::string algorithm_;
};

// Normalizes a name token to upper case and validates the character set.
std::string normalize_token(std::string_view token);

// Full cross product extractors x algorithms, extractor-major.
std::vector<ClassifierId> pool_ids(std::span<const std::string> extractors,
                                   std::span<const std::string> algorithms);

std::vector<std::string> render_ids(std::span<const ClassifierId> ids);

// Returns true when no id occurs twice.
bool all_distinct(std::span<const ClassifierId> ids);

}  // namespace divsel
