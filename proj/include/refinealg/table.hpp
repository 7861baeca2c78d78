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

#ifndef REFINEALG_TABLE_HPP
#define REFINEALG_TABLE_HPP

#include "refinealg/valuation.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace refinealg {

struct Table {
  ESchema schema;
  std::vector<std::string> header; // one name per column
  std::vector<Row> rows;

  bool operator==(const Table &) const = default;
};

using SheetedTables = std::vector<Table>;

/// Default column names `c1..cn`.
std::vector<std::string> default_header(std::size_t n);

/// Throws EvalError naming the first row and column whose cell is outside
/// its domain.
void check_table(const Valuation &val, const Table &t);

/// Same rows with the same multiplicities, in any order.
bool multiset_equal(const Table &a, const Table &b);
bool multiset_equal(const SheetedTables &a, const SheetedTables &b);

/// RFC 4180 records. Accepts LF or CRLF line ends and quoted fields with
/// embedded separators, quotes and newlines.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text);

/// Quotes a field only when needed.
std::string csv_field(std::string_view s);

/// The first record is the header. Cells are parsed with the domain of the
/// column's type; errors carry 0-based data row and column.
Table parse_csv(std::string_view text, const ESchema &schema,
                const Valuation &val);
Table load_csv(const std::string &path, const ESchema &schema,
               const Valuation &val);

/// Header plus rows, LF line ends.
std::string format_csv(const Table &t, const Valuation &val);
void write_csv(const Table &t, const Valuation &val, const std::string &path);

} // namespace refinealg

#endif // REFINEALG_TABLE_HPP
