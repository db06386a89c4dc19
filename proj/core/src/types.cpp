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

#include "divsel/types.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "divsel/error.hpp"

namespace divsel {

std::string_view to_string(Split split) noexcept {
  switch (split) {
    case Split::Train:
      return "TRAIN";
    case Split::Validation:
      return "VALIDATION";
    case Split::Test:
      return "TEST";
  }
  return "UNKNOWN";
}

Split parse_split(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "TRAIN") return Split::Train;
  if (upper == "VALIDATION") return Split::Validation;
  if (upper == "TEST") return Split::Test;
  throw InvalidArgument("unknown split '" + std::string(text) + "'");
}

std::string normalize_token(std::string_view token) {
  if (token.empty()) throw InvalidArgument("empty classifier name token");
  std::string out;
  out.reserve(token.size());
  for (unsigned char c : token) {
    if (c == '-' || c == ',' || c == '"' || std::isspace(c) || std::iscntrl(c)) {
      throw InvalidArgument("invalid character in classifier name token '" + std::string(token) +
                            "'");
    }
    out.push_back(static_cast<char>(std::toupper(c)));
  }
  return out;
}

ClassifierId::ClassifierId(std::string_view extractor, std::string_view algorithm)
    : extractor_(normalize_token(extractor)), algorithm_(normalize_token(algorithm)) {}

ClassifierId ClassifierId::parse(std::string_view text) {
  const auto dash = text.find('-');
  if (dash == std::string_view::npos || text.find('-', dash + 1) != std::string_view::npos) {
    throw InvalidArgument("classifier id '" + std::string(text) +
                          "' is not of the form EXTRACTOR-ALGORITHM");
  }
  return ClassifierId(text.substr(0, dash), text.substr(dash + 1));
}

std::vector<ClassifierId> pool_ids(std::span<const std::string> extractors,
                                   std::span<const std::string> algorithms) {
  if (extractors.empty()) throw InvalidArgument("extractor list is empty");
  if (algorithms.empty()) throw InvalidArgument("algorithm list is empty");
  std::vector<ClassifierId> ids;
  ids.reserve(extractors.size() * algorithms.size());
  for (const auto& e : extractors) {
    for (const auto& a : algorithms) ids.emplace_back(e, a);
  }
  if (!all_distinct(ids)) throw InvalidArgument("duplicate extractor or algorithm token");
  return ids;
}

std::vector<std::string> render_ids(std::span<const ClassifierId> ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(id.str());
  return out;
}

bool all_distinct(std::span<const ClassifierId> ids) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id.str()).second) return false;
  }
  return true;
}

}  // namespace divsel
