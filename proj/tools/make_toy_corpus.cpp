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

// Generates the bundled two-class toy corpus (data/toy_corpus.csv).
//
//   make_toy_corpus [--docs N] [--seed S] [--out PATH]
//
// Each document mixes neutral filler words with words drawn from a
// class-leaning vocabulary. Every leaning word also appears in the other
// class at a lower rate, so the classes overlap and no single word decides
// the label. Some documents carry URLs, IP addresses and punctuation so the
// preprocessing path is exercised.

#include <array>
#include <cstdint>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <string_view>
#include <vector>

#include "divsel/csv.hpp"
#include "divsel/random.hpp"

namespace {

constexpr std::array<std::string_view, 24> kNeutral = {
    "report", "today",   "people", "week",    "time",   "new",     "said",   "year",
    "group",  "members", "local",  "plans",   "update", "morning", "city",   "public",
    "shared", "early",   "latest", "program", "weekend", "several", "friday", "region"};

constexpr std::array<std::string_view, 16> kSport = {
    "match",   "goal",     "coach",  "league",   "striker", "season",  "stadium",  "score",
    "referee", "champion", "tackle", "playoffs", "keeper",  "transfer", "fixtures", "derby"};

constexpr std::array<std::string_view, 16> kMarket = {
    "shares",   "earnings", "investor", "dividend", "stocks",   "bond",    "inflation", "revenue",
    "merger",   "quarter",  "profit",   "trading",  "currency", "analyst", "portfolio", "rates"};

constexpr std::array<std::string_view, 4> kUrls = {
    "https://news.example.com/story", "http://example.org/a?id=7", "www.example.net/live",
    "10.0.0.12"};

constexpr std::array<std::string_view, 5> kPunct = {".", "!", ",", "?", ";"};

struct Options {
  std::size_t docs = 400;
  std::uint64_t seed = 7;
  std::string out;
};

template <std::size_t N>
std::string_view pick(const std::array<std::string_view, N>& words, divsel::Rng& rng) {
  return words[rng.uniform_index(N)];
}

std::string make_document(int label, divsel::Rng& rng) {
  const auto& own = label == 0 ? kSport : kMarket;
  const auto& other = label == 0 ? kMarket : kSport;
  const std::size_t length = 8 + rng.uniform_index(9);
  std::string text;
  for (std::size_t i = 0; i < length; ++i) {
    const double u = rng.uniform01();
    std::string_view word;
    if (u < 0.40) {
      word = pick(own, rng);
    } else if (u < 0.48) {
      word = pick(other, rng);
    } else {
      word = pick(kNeutral, rng);
    }
    if (!text.empty()) text += ' ';
    if (i == 0 || rng.uniform01() < 0.1) {
      text += static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
      text.append(word.substr(1));
    } else {
      text.append(word);
    }
    if (rng.uniform01() < 0.12) text.append(pick(kPunct, rng));
  }
  if (rng.uniform01() < 0.2) {
    text += ' ';
    text.append(pick(kUrls, rng));
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (i + 1 >= argc) {
      std::cerr << "usage: make_toy_corpus [--docs N] [--seed S] [--out PATH]\n";
      return 2;
    }
    const char* value = argv[++i];
    if (arg == "--docs") {
      opt.docs = std::strtoull(value, nullptr, 10);
    } else if (arg == "--seed") {
      opt.seed = std::strtoull(value, nullptr, 10);
    } else if (arg == "--out") {
      opt.out = value;
    } else {
      std::cerr << "unknown flag " << arg << "\n";
      return 2;
    }
  }

  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out, std::ios::binary);
    if (!file) {
      std::cerr << "cannot write " << opt.out << "\n";
      return 1;
    }
  }
  std::ostream& out = opt.out.empty() ? std::cout : file;

  divsel::Rng rng(divsel::derive_seed(opt.seed, "toy-corpus"));
  divsel::csv::write_row(out, {"text", "label"});
  for (std::size_t d = 0; d < opt.docs; ++d) {
    const int label = static_cast<int>(d % 2);
    divsel::csv::write_row(out, {make_document(label, rng), label == 0 ? "sport" : "market"});
  }
  return 0;
}
