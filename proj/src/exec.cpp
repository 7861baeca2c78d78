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

#include "refinealg/exec.hpp"

#include "refinealg/error.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace refinealg {

namespace {

// Calls fn(i) for every i in [0, n), split into contiguous chunks.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn &&fn) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t * chunk; i < std::min(n, (t + 1) * chunk); ++i)
          fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto &th : pool)
    th.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

template <typename Fn> auto at_row(std::size_t r, Fn &&fn) {
  try {
    return fn();
  } catch (const EvalError &e) {
    if (e.row() != EvalError::npos)
      throw;
    throw EvalError(e.message(), r, e.column());
  }
}

} // namespace

Row run_e_row(const Signature &sig, const Valuation &val, const EMorphism &m,
              Row row) {
  if (row.size() != m.dom.size())
    throw EvalError("row has " + std::to_string(row.size()) +
                    " cells, diagram expects " + std::to_string(m.dom.size()));
  for (const auto &s : m.slices) {
    const auto k = static_cast<std::ptrdiff_t>(s.offset);
    switch (s.gen.kind) {
    case EGenerator::Kind::Copy:
      row.insert(row.begin() + k, row[s.offset]);
      break;
    case EGenerator::Kind::Discard:
      row.erase(row.begin() + k);
      break;
    case EGenerator::Kind::Swap:
      std::swap(row[s.offset], row[s.offset + 1]);
      break;
    case EGenerator::Kind::Op: {
      const auto n = static_cast<std::ptrdiff_t>(sig.operation(s.gen.name).dom.size());
      Row out = val.apply_op(sig, s.gen.name,
                             std::span<const Value>(row).subspan(s.offset,
                                                                 static_cast<std::size_t>(n)));
      row.erase(row.begin() + k, row.begin() + k + n);
      row.insert(row.begin() + k, out.begin(), out.end());
      break;
    }
    }
  }
  return row;
}

std::vector<std::string> propagate_names(const Signature &sig,
                                         const EMorphism &m,
                                         std::vector<std::string> names) {
  for (const auto &s : m.slices) {
    const auto k = static_cast<std::ptrdiff_t>(s.offset);
    switch (s.gen.kind) {
    case EGenerator::Kind::Copy:
      names.insert(names.begin() + k, names[s.offset]);
      break;
    case EGenerator::Kind::Discard:
      names.erase(names.begin() + k);
      break;
    case EGenerator::Kind::Swap:
      std::swap(names[s.offset], names[s.offset + 1]);
      break;
    case EGenerator::Kind::Op: {
      const auto &decl = sig.operation(s.gen.name);
      const auto n = static_cast<std::ptrdiff_t>(decl.dom.size());
      names.erase(names.begin() + k, names.begin() + k + n);
      std::vector<std::string> out;
      for (std::size_t j = 0; j < decl.cod.size(); ++j)
        out.push_back(decl.cod.size() == 1
                          ? decl.name
                          : decl.name + "[" + std::to_string(j + 1) + "]");
      names.insert(names.begin() + k, out.begin(), out.end());
      break;
    }
    }
  }
  return names;
}

SheetedTables run_workflow(const Signature &sig, const Valuation &val,
                           const FMorphism &m, const SheetedTables &input,
                           std::size_t threads) {
  f_require_typed(sig, m);
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  if (input.size() != m.dom.size())
    throw EvalError("workflow expects " + std::to_string(m.dom.size()) +
                    " input tables, got " + std::to_string(input.size()));
  SheetedTables sheets = input;
  for (std::size_t i = 0; i < sheets.size(); ++i) {
    if (sheets[i].schema != m.dom[i])
      throw EvalError("input table " + std::to_string(i) + " has schema " +
                      schema_string(sheets[i].schema) + ", expected " +
                      schema_string(m.dom[i]));
    if (sheets[i].header.size() != sheets[i].schema.size())
      sheets[i].header = default_header(sheets[i].schema.size());
    check_table(val, sheets[i]);
  }

  for (const auto &slice : m.slices) {
    const auto s = slice.sheet;
    const auto &g = slice.gen;
    switch (g.kind) {
    case FGenerator::Kind::Lift: {
      Table &t = sheets[s];
      std::vector<Row> out(t.rows.size());
      parallel_for(t.rows.size(), threads, [&](std::size_t r) {
        out[r] = at_row(r, [&] { return run_e_row(sig, val, g.lift, t.rows[r]); });
      });
      t.rows = std::move(out);
      t.schema = g.lift.cod;
      t.header = propagate_names(sig, g.lift, std::move(t.header));
      break;
    }
    case FGenerator::Kind::Filter: {
      const std::size_t a = sig.filter(g.filter).dom.size();
      Table &t = sheets[s];
      std::vector<char> keep(t.rows.size());
      parallel_for(t.rows.size(), threads, [&](std::size_t r) {
        keep[r] = at_row(r, [&] {
          return val.test_filter(
              sig, g.filter, std::span<const Value>(t.rows[r]).first(a));
        });
      });
      Table yes{t.schema, t.header, {}}, no{t.schema, t.header, {}};
      for (std::size_t r = 0; r < t.rows.size(); ++r)
        (keep[r] ? yes : no).rows.push_back(std::move(t.rows[r]));
      sheets[s] = std::move(yes);
      sheets.insert(sheets.begin() + static_cast<std::ptrdiff_t>(s) + 1,
                    std::move(no));
      break;
    }
    case FGenerator::Kind::Union: {
      auto &rows = sheets[s].rows;
      auto &more = sheets[s + 1].rows;
      rows.insert(rows.end(), std::make_move_iterator(more.begin()),
                  std::make_move_iterator(more.end()));
      sheets.erase(sheets.begin() + static_cast<std::ptrdiff_t>(s) + 1);
      break;
    }
    case FGenerator::Kind::Empty:
      sheets.insert(sheets.begin() + static_cast<std::ptrdiff_t>(s),
                    Table{g.a, default_header(g.a.size()), {}});
      break;
    case FGenerator::Kind::SheetSwap:
      std::swap(sheets[s], sheets[s + 1]);
      break;
    }
  }
  return sheets;
}

} // namespace refinealg
