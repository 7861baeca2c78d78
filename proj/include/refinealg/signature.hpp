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

#ifndef REFINEALG_SIGNATURE_HPP
#define REFINEALG_SIGNATURE_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace refinealg {

/// A list of column datatypes. The empty list is the monoidal unit.
using ESchema = std::vector<std::string>;

struct OpDecl {
  std::string name;
  ESchema dom;
  ESchema cod;

  bool operator==(const OpDecl &) const = default;
};

struct FilterDecl {
  std::string name;
  ESchema dom;

  bool operator==(const FilterDecl &) const = default;
};

/// Result of `Signature::arity_of`. For an operation `cod_sheets` holds the
/// single codomain; for a filter it holds the filtered type twice, one entry
/// per output sheet.
struct Arity {
  ESchema dom;
  std::vector<ESchema> cod_sheets;
  bool is_filter = false;
};

/// The generating data shared by both diagram categories: datatypes,
/// operations and filters. Immutable once built; `add_*` validate eagerly.
class Signature {
public:
  Signature() = default;

  void add_datatype(std::string name);
  void add_operation(OpDecl op);
  void add_filter(FilterDecl filter);

  bool has_datatype(std::string_view name) const;
  const OpDecl *find_operation(std::string_view name) const;
  const FilterDecl *find_filter(std::string_view name) const;

  /// Throws SignatureError if no such operation/filter.
  const OpDecl &operation(std::string_view name) const;
  const FilterDecl &filter(std::string_view name) const;

  Arity arity_of(std::string_view name) const;

  const std::set<std::string, std::less<>> &datatypes() const {
    return datatypes_;
  }
  const std::map<std::string, OpDecl, std::less<>> &operations() const {
    return operations_;
  }
  const std::map<std::string, FilterDecl, std::less<>> &filters() const {
    return filters_;
  }

  bool operator==(const Signature &) const = default;

private:
  void require_type(const std::string &type) const;

  std::set<std::string, std::less<>> datatypes_;
  std::map<std::string, OpDecl, std::less<>> operations_;
  std::map<std::string, FilterDecl, std::less<>> filters_;
};

/// ASCII letters, digits and underscore; must not start with a digit.
bool is_identifier(std::string_view s);

/// Parses and validates a signature file (JSON).
Signature parse_signature(std::string_view text);

/// Canonical JSON rendering accepted by `parse_signature`.
std::string serialize_signature(const Signature &sig);

Signature load_signature_file(const std::string &path);

} // namespace refinealg

#endif // REFINEALG_SIGNATURE_HPP
