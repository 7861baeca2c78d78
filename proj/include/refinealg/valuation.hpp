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

#ifndef REFINEALG_VALUATION_HPP
#define REFINEALG_VALUATION_HPP

#include "refinealg/signature.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace refinealg {

/// A cell. Integers (including money, held in cents) or text (strings and
/// enumerated values).
using Value = std::variant<std::int64_t, std::string>;
using Row = std::vector<Value>;

struct TypeDomain {
  enum class Kind { String, Int, Enum, Money };

  Kind kind = Kind::String;
  std::vector<std::string> values; // Enum

  bool contains(const Value &v) const;
  /// Throws EvalError on text that is not a value of the domain.
  Value parse(std::string_view text) const;
  std::string render(const Value &v) const;
  bool finite() const { return kind == Kind::Enum; }
  /// All values of a finite domain.
  std::vector<Value> enumerate() const;

  bool operator==(const TypeDomain &) const = default;
};

/// Interpretation of an operation.
///
/// Builtins: `concat` (args.sep, default empty), `uppercase`, `lowercase`,
/// `constant` (args.values, one per output), `add`, `sub`, `mul`,
/// `identity`. A `table` maps each input tuple to an output tuple.
struct OpImpl {
  enum class Kind { Builtin, Table };

  Kind kind = Kind::Builtin;
  std::string fn;
  std::string sep;                   // concat
  std::vector<std::string> constants; // constant, rendered per output type
  std::map<Row, Row> table;

  bool operator==(const OpImpl &) const = default;
};

/// Interpretation of a filter.
///
/// Builtins: `eq ne lt le gt ge` compare the first filtered column with
/// args.value, or with the second column when no value is given; `regex`
/// searches args.pattern in the first column. A `set` accepts exactly the
/// listed tuples.
struct FilterImpl {
  enum class Kind { Builtin, Set };

  Kind kind = Kind::Builtin;
  std::string fn;
  std::optional<std::string> value; // comparison operand, rendered
  std::string pattern;              // regex
  std::set<Row> accepted;

  bool operator==(const FilterImpl &) const = default;
};

struct Valuation {
  std::map<std::string, TypeDomain, std::less<>> types;
  std::map<std::string, OpImpl, std::less<>> ops;
  std::map<std::string, FilterImpl, std::less<>> filters;

  const TypeDomain &domain(std::string_view type) const;

  /// Throws EvalError when some symbol lacks an interpretation, a lookup
  /// table is not total, or an accepted tuple lies outside the domain.
  void check_covers(const Signature &sig) const;

  /// Applies an operation. Outputs are checked against the codomain types.
  Row apply_op(const Signature &sig, std::string_view op,
               std::span<const Value> inputs) const;

  bool test_filter(const Signature &sig, std::string_view filter,
                   std::span<const Value> inputs) const;

  bool operator==(const Valuation &) const = default;
};

Valuation parse_valuation(const Signature &sig, std::string_view text);
Valuation load_valuation_file(const Signature &sig, const std::string &path);
std::string serialize_valuation(const Valuation &v);

std::string render_row(const Valuation &v, const ESchema &schema,
                       const Row &row);

} // namespace refinealg

#endif // REFINEALG_VALUATION_HPP
