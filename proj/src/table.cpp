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

#include "refinealg/table.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <fstream>

namespace refinealg {

std::vector<std::string> default_header(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i)
    out.push_back("c" + std::to_string(i));
  return out;
}

void check_table(const Valuation &val, const Table &t) {
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.rows[r].size() != t.schema.size())
      throw EvalError("row has " + std::to_string(t.rows[r].size()) +
                          " cells, schema has " +
                          std::to_string(t.schema.size()),
                      r);
    for (std::size_t c = 0; c < t.schema.size(); ++c)
      if (!val.domain(t.schema[c]).contains(t.rows[r][c]))
        throw EvalError("cell outside the domain of " + t.schema[c], r, c);
  }
}

bool multiset_equal(const Table &a, const Table &b) {
  if (a.schema != b.schema || a.rows.size() != b.rows.size())
    return false;
  auto x = a.rows, y = b.rows;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

bool multiset_equal(const SheetedTables &a, const SheetedTables &b) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!multiset_equal(a[i], b[i]))
      return false;
  return true;
}

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;   // inside quotes
  bool any = false;      // current record has content
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n')
          ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
    case '"':
      if (!field.empty())
        throw ParseError("quote inside an unquoted field", line);
      quoted = true;
      any = true;
      break;
    case ',':
      record.push_back(std::move(field));
      field.clear();
      any = true;
      break;
    case '\r':
      if (i + 1 < text.size() && text[i + 1] == '\n')
        break;
      field += c;
      any = true;
      break;
    case '\n':
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      field.clear();
      record.clear();
      any = false;
      ++line;
      break;
    default:
      field += c;
      any = true;
    }
  }
  if (quoted)
    throw ParseError("unterminated quoted field", line);
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos)
    return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

Table parse_csv(std::string_view text, const ESchema &schema,
                const Valuation &val) {
  auto records = parse_csv_records(text);
  if (records.empty())
    throw ParseError("CSV has no header row");
  Table t;
  t.schema = schema;
  t.header = std::move(records.front());
  if (t.header.size() != schema.size())
    throw ParseError("CSV header has " + std::to_string(t.header.size()) +
                     " columns, schema has " + std::to_string(schema.size()));
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto &rec = records[r];
    if (rec.size() != schema.size())
      throw EvalError("ragged row with " + std::to_string(rec.size()) +
                          " fields",
                      r - 1);
    Row row;
    for (std::size_t c = 0; c < rec.size(); ++c) {
      try {
        row.push_back(val.domain(schema[c]).parse(rec[c]));
      } catch (const EvalError &e) {
        throw EvalError(e.message(), r - 1, c);
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table load_csv(const std::string &path, const ESchema &schema,
               const Valuation &val) {
  return parse_csv(detail::read_file(path), schema, val);
}

std::string format_csv(const Table &t, const Valuation &val) {
  std::string out;
  auto line = [&](const std::vector<std::string> &fields) {
    // A lone empty field would otherwise read back as a blank line.
    if (fields.size() == 1 && fields[0].empty()) {
      out += "\"\"\n";
      return;
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i)
        out += ',';
      out += csv_field(fields[i]);
    }
    out += '\n';
  };
  line(t.header.size() == t.schema.size() ? t.header
                                          : default_header(t.schema.size()));
  for (const auto &row : t.rows) {
    std::vector<std::string> fields;
    for (std::size_t c = 0; c < row.size(); ++c)
      fields.push_back(val.domain(t.schema[c]).render(row[c]));
    line(fields);
  }
  return out;
}

void write_csv(const Table &t, const Valuation &val, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write file: " + path);
  out << format_csv(t, val);
  if (!out)
    throw Error("cannot write file: " + path);
}

} // namespace refinealg
