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

#include "schema_check.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace divsel::testing {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keywords() {
  static const std::set<std::string> k = {
      "$schema",  "$id",      "$defs",    "$ref",     "title",     "description",
      "type",     "enum",     "const",    "properties", "required", "additionalProperties",
      "items",    "minItems", "maxItems", "minimum",  "maximum",   "minLength",
      "anyOf"};
  return k;
}

bool has_type(const json& v, const std::string& type) {
  if (type == "null") return v.is_null();
  if (type == "boolean") return v.is_boolean();
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    if (v.is_number_integer()) return true;
    return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
  }
  return false;
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& schema, const json& v, const std::string& path) {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) fail(path, "no value allowed here");
      return;
    }
    for (const auto& [key, _] : schema.items()) {
      if (known_keywords().count(key) == 0) fail(path, "schema uses unsupported keyword " + key);
    }
    if (schema.contains("$ref")) {
      check(resolve(schema["$ref"].get<std::string>(), path), v, path);
    }
    if (schema.contains("type")) {
      const auto& t = schema["type"];
      bool ok = false;
      if (t.is_string()) {
        ok = has_type(v, t.get<std::string>());
      } else {
        for (const auto& one : t) ok = ok || has_type(v, one.get<std::string>());
      }
      if (!ok) {
        fail(path, "expected type " + t.dump() + ", got " + v.dump().substr(0, 60));
        return;
      }
    }
    if (schema.contains("enum")) {
      const auto& e = schema["enum"];
      if (std::find(e.begin(), e.end(), v) == e.end()) fail(path, "value not in enum");
    }
    if (schema.contains("const") && schema["const"] != v) {
      fail(path, "expected constant " + schema["const"].dump());
    }
    if (schema.contains("anyOf")) {
      bool matched = false;
      for (const auto& option : schema["anyOf"]) {
        Validator sub(root_);
        sub.check(option, v, path);
        if (sub.errors.empty()) {
          matched = true;
          break;
        }
      }
      if (!matched) fail(path, "matches no anyOf branch");
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (schema.contains("minimum") && x < schema["minimum"].get<double>()) {
        fail(path, "below minimum");
      }
      if (schema.contains("maximum") && x > schema["maximum"].get<double>()) {
        fail(path, "above maximum");
      }
    }
    if (v.is_string() && schema.contains("minLength") &&
        v.get<std::string>().size() < schema["minLength"].get<std::size_t>()) {
      fail(path, "string too short");
    }
    if (v.is_array()) {
      if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>()) {
        fail(path, "too few items");
      }
      if (schema.contains("maxItems") && v.size() > schema["maxItems"].get<std::size_t>()) {
        fail(path, "too many items");
      }
      if (schema.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          check(schema["items"], v[i], path + "/" + std::to_string(i));
        }
      }
    }
    if (v.is_object()) {
      if (schema.contains("required")) {
        for (const auto& name : schema["required"]) {
          if (!v.contains(name.get<std::string>())) {
            fail(path, "missing required property " + name.get<std::string>());
          }
        }
      }
      const json empty = json::object();
      const json& props = schema.contains("properties") ? schema["properties"] : empty;
      for (const auto& [key, value] : v.items()) {
        if (props.contains(key)) {
          check(props[key], value, path + "/" + key);
        } else if (schema.contains("additionalProperties")) {
          check(schema["additionalProperties"], value, path + "/" + key);
        }
      }
    }
  }

  std::vector<std::string> errors;

 private:
  const json& resolve(const std::string& ref, const std::string& path) {
    static const json nothing = true;
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0 || !root_.contains("$defs") ||
        !root_["$defs"].contains(ref.substr(prefix.size()))) {
      fail(path, "unresolvable reference " + ref);
      return nothing;
    }
    return root_["$defs"][ref.substr(prefix.size())];
  }

  void fail(const std::string& path, const std::string& what) {
    errors.push_back((path.empty() ? "/" : path) + ": " + what);
  }

  const json& root_;
};

}  // namespace

std::vector<std::string> validate_schema(const nlohmann::json& schema,
                                         const nlohmann::json& instance) {
  Validator v(schema);
  v.check(schema, instance, "");
  return v.errors;
}

std::vector<std::string> unsupported_keywords(const nlohmann::json& schema) {
  std::vector<std::string> out;
  if (!schema.is_object()) return out;
  auto recurse = [&](const json& sub) {
    for (auto& k : unsupported_keywords(sub)) out.push_back(std::move(k));
  };
  for (const auto& [key, value] : schema.items()) {
    if (known_keywords().count(key) == 0) out.push_back(key);
    if (key == "properties" || key == "$defs") {
      for (const auto& [_, sub] : value.items()) recurse(sub);
    } else if (key == "items" || key == "additionalProperties") {
      recurse(value);
    } else if (key == "anyOf") {
      for (const auto& sub : value) recurse(sub);
    }
  }
  return out;
}

}  // namespace divsel::testing
