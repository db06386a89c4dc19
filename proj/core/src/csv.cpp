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

#include "divsel/csv.hpp"

#include <istream>
#include <iterator>
#include <ostream>

#include "divsel/error.hpp"

namespace divsel::csv {

std::vector<Record> read(std::istream& in) {
  std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::size_t pos = 0;
  if (data.size() >= 3 && data.compare(0, 3, "\xEF\xBB\xBF") == 0) pos = 3;

  std::vector<Record> records;
  std::size_t line = 1;
  Record current{line, {}};
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // something (possibly an empty quoted string) was read

  auto end_record = [&] {
    if (field_started || !current.fields.empty()) {
      current.fields.push_back(std::move(field));
      records.push_back(std::move(current));
    }
    field.clear();
    field_started = false;
    current = Record{line, {}};
  };

  while (pos < data.size()) {
    const char c = data[pos];
    if (in_quotes) {
      if (c == '"') {
        if (pos + 1 < data.size() && data[pos + 1] == '"') {
          field.push_back('"');
          pos += 2;
          continue;
        }
        in_quotes = false;
        ++pos;
        continue;
      }
      if (c == '\n') ++line;
      field.push_back(c);
      ++pos;
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) throw ParseError(line, "unexpected quote inside unquoted field");
        in_quotes = true;
        field_started = true;
        ++pos;
        break;
      case ',':
        current.fields.push_back(std::move(field));
        field.clear();
        field_started = true;
        ++pos;
        break;
      case '\r':
        ++pos;
        break;
      case '\n':
        ++line;
        ++pos;
        end_record();
        break;
      default:
        field.push_back(c);
        field_started = true;
        ++pos;
    }
  }
  if (in_quotes) throw ParseError(current.line, "unterminated quoted field");
  end_record();
  return records;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace divsel::csv
