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

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace divsel {

struct PreprocessConfig {
  bool remove_urls = true;  // also drops bare IPv4 addresses
  bool strip_punctuation = true;
  bool lowercase = true;
  bool remove_stopwords = true;
  bool stem = true;
  std::set<std::string> stopwords = default_stopwords();

  static std::set<std::string> default_stopwords();

  friend bool operator==(const PreprocessConfig&, const PreprocessConfig&) = default;
};

// Tokenizes one document. Steps, each when enabled and in this order: URL/IP
// removal, punctuation stripping, lower-casing, stop-word removal, suffix
// stemming. Bytes >= 0x80 are kept as word characters. Corpus-wide minimum
// document frequency filtering happens when a feature space is fitted.
std::vector<std::string> preprocess(std::string_view text, const PreprocessConfig& config);

// Light suffix stripper (plural, -ing, -ed, -ly). Leaves stems of at least 3 bytes.
std::string stem(std::string_view word);

}  // namespace divsel
