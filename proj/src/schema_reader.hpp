// Copyright 2026 The argfore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ARGFORE_SRC_SCHEMA_READER_HPP_
#define ARGFORE_SRC_SCHEMA_READER_HPP_

#include <map>
#include <string>
#include <string_view>

#include "argfore/error.hpp"
#include "argfore/serialization.hpp"

namespace argfore {

// Typed field access that reports schema problems as
// "<source>:<line>: <pointer>: <message>".
class SchemaReader {
 public:
  SchemaReader(std::string_view source, std::string_view text)
      : source_(source) {
    if (!text.empty()) lines_ = json_value_lines(text);
  }

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    std::string where(source_);
    // A missing field has no line of its own; walk up to its parent.
    std::string p = ptr;
    while (true) {
      auto it = lines_.find(p);
      if (it != lines_.end()) {
        where += ":" + std::to_string(it->second);
        break;
      }
      if (p.empty()) break;
      p = p.substr(0, p.rfind('/'));
    }
    throw Error(ErrorCode::kSchema,
                where + ": " + (ptr.empty() ? "/" : ptr) + ": " + msg);
  }

  void require_object(const Json& v, const std::string& ptr) const {
    if (!v.is_object()) fail(ptr, "expected an object");
  }

  const Json& field(const Json& obj, const std::string& ptr,
                    const std::string& key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(ptr, "missing field \"" + key + "\"");
    return *it;
  }

  std::string string_field(const Json& obj, const std::string& ptr,
                           const std::string& key) const {
    const Json& v = field(obj, ptr, key);
    if (!v.is_string()) fail(ptr + "/" + key, "field \"" + key + "\" must be a string");
    return v.get<std::string>();
  }

  double number_field(const Json& obj, const std::string& ptr,
                      const std::string& key) const {
    const Json& v = field(obj, ptr, key);
    if (!v.is_number()) fail(ptr + "/" + key, "field \"" + key + "\" must be a number");
    return v.get<double>();
  }

  bool bool_field(const Json& obj, const std::string& ptr,
                  const std::string& key) const {
    const Json& v = field(obj, ptr, key);
    if (!v.is_boolean()) fail(ptr + "/" + key, "field \"" + key + "\" must be a boolean");
    return v.get<bool>();
  }

  const Json& array_field(const Json& obj, const std::string& ptr,
                          const std::string& key) const {
    const Json& v = field(obj, ptr, key);
    if (!v.is_array()) fail(ptr + "/" + key, "field \"" + key + "\" must be an array");
    return v;
  }

 private:
  std::string source_;
  std::map<std::string, int> lines_;
};

}  // namespace argfore

#endif  // ARGFORE_SRC_SCHEMA_READER_HPP_
