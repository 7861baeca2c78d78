// Copyright 2026 The refinealg Authors
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

// Internal helpers shared by the JSON readers.

#ifndef REFINEALG_SRC_JSON_UTIL_HPP
#define REFINEALG_SRC_JSON_UTIL_HPP

#include "refinealg/error.hpp"
#include "refinealg/signature.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

namespace refinealg::detail {

using nlohmann::json;

/// Parses JSON text, translating the library's byte offset into a line and
/// column.
inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    std::size_t line = 1, column = 1;
    std::size_t upto = std::min<std::size_t>(e.byte ? e.byte - 1 : 0,
                                             text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::string("JSON syntax error: ") + e.what(), line,
                     column);
  }
}

inline void require_object(const json &j, std::string_view what) {
  if (!j.is_object())
    throw ParseError(std::string(what) + " must be a JSON object");
}

/// Rejects any key not in `allowed`.
inline void check_keys(const json &j, std::string_view what,
                       std::initializer_list<std::string_view> allowed) {
  require_object(j, what);
  for (const auto &item : j.items()) {
    bool ok = false;
    for (auto a : allowed)
      ok = ok || item.key() == a;
    if (!ok)
      throw ParseError("unknown key \"" + item.key() + "\" in " +
                       std::string(what));
  }
}

inline const json &member(const json &j, const char *key,
                          std::string_view what) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError("missing key \"" + std::string(key) + "\" in " +
                     std::string(what));
  return *it;
}

inline std::string get_string(const json &j, std::string_view what) {
  if (!j.is_string())
    throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline std::size_t get_index(const json &j, std::string_view what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline ESchema get_schema(const json &j, std::string_view what) {
  if (!j.is_array())
    throw ParseError(std::string(what) + " must be an array of type names");
  ESchema out;
  for (const auto &e : j)
    out.push_back(get_string(e, what));
  return out;
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace refinealg::detail

#endif // REFINEALG_SRC_JSON_UTIL_HPP
