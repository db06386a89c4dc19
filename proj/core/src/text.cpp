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

#include "divsel/text.hpp"

#include <cctype>

namespace divsel {

std::set<std::string> PreprocessConfig::default_stopwords() {
  return {"a",     "about", "after", "all",   "also",  "an",    "and",   "are",   "as",
          "at",    "be",    "been",  "but",   "by",    "can",   "could", "did",   "do",
          "does",  "for",   "from",  "had",   "has",   "have",  "he",    "her",   "his",
          "i",     "if",    "in",    "into",  "is",    "it",    "its",   "just",  "me",
          "more",  "my",    "no",    "not",   "of",    "on",    "or",    "our",   "out",
          "she",   "so",    "some",  "than",  "that",  "the",   "their", "them",  "then",
          "there", "these", "they",  "this",  "those", "to",    "too",   "up",    "us",
          "very",  "was",   "we",    "were",  "what",  "when",  "which", "while", "who",
          "will",  "with",  "would", "you",   "your"};
}

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

// Dotted quad, optionally followed by :port and trailing punctuation.
bool is_ipv4(std::string_view s) {
  std::size_t i = 0;
  for (int octet = 0; octet < 4; ++octet) {
    if (octet > 0) {
      if (i >= s.size() || s[i] != '.') return false;
      ++i;
    }
    std::size_t digits = 0;
    int value = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])) && digits < 4) {
      value = value * 10 + (s[i] - '0');
      ++i;
      ++digits;
    }
    if (digits == 0 || digits > 3 || value > 255) return false;
  }
  if (i < s.size() && s[i] == ':') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  }
  for (; i < s.size(); ++i) {
    if (std::isalnum(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

bool is_url(std::string_view s) {
  return starts_with_ci(s, "http://") || starts_with_ci(s, "https://") ||
         starts_with_ci(s, "ftp://") || starts_with_ci(s, "www.");
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string stem(std::string_view word) {
  std::string w(word);
  auto strip = [&](std::string_view suffix, std::string_view replacement, std::size_t min_stem) {
    if (!ends_with(w, suffix) || w.size() - suffix.size() < min_stem) return false;
    w.resize(w.size() - suffix.size());
    w += replacement;
    return true;
  };
  if (strip("sses", "ss", 2) || strip("ies", "y", 3)) return w;
  if (strip("ing", "", 3) || strip("ed", "", 3) || strip("ly", "", 3)) return w;
  if (!ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is")) strip("s", "", 3);
  return w;
}

std::vector<std::string> preprocess(std::string_view text, const PreprocessConfig& config) {
  // Whitespace-delimited chunks first, so URL/IP detection sees them intact.
  std::vector<std::string_view> chunks;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) chunks.push_back(text.substr(start, i - start));
  }

  std::vector<std::string> tokens;
  for (std::string_view chunk : chunks) {
    if (config.remove_urls && (is_url(chunk) || is_ipv4(chunk))) continue;
    if (!config.strip_punctuation) {
      tokens.emplace_back(chunk);
      continue;
    }
    // Punctuation splits a chunk ("don't" -> "don", "t").
    std::string current;
    for (unsigned char c : chunk) {
      if (std::isalnum(c) || c >= 0x80) {
        current.push_back(static_cast<char>(c));
      } else if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
  }

  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (auto& token : tokens) {
    if (config.lowercase) {
      for (auto& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (config.remove_stopwords && config.stopwords.count(token) > 0) continue;
    if (config.stem) token = stem(token);
    out.push_back(std::move(token));
  }
  return out;
}

}  // namespace divsel
