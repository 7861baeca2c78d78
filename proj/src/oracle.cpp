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

#include "refinealg/oracle.hpp"

#include "refinealg/error.hpp"

#include <charconv>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <string_view>

namespace refinealg {

namespace {

// Row-wise interpretation of an 𝓔 diagram in the syntactic valuation.
void run_cells(const Signature &sig, const EMorphism &m,
               std::vector<SymbolicCell> &cells) {
  for (const auto &s : m.slices) {
    const auto k = static_cast<std::ptrdiff_t>(s.offset);
    switch (s.gen.kind) {
    case EGenerator::Kind::Copy:
      cells.insert(cells.begin() + k, cells[s.offset]);
      break;
    case EGenerator::Kind::Discard:
      cells.erase(cells.begin() + k);
      break;
    case EGenerator::Kind::Swap:
      std::swap(cells[s.offset], cells[s.offset + 1]);
      break;
    case EGenerator::Kind::Op: {
      const auto &decl = sig.operation(s.gen.name);
      const auto n = static_cast<std::ptrdiff_t>(decl.dom.size());
      std::vector<Term> args;
      bool bottom = false;
      for (auto it = cells.begin() + k; it != cells.begin() + k + n; ++it) {
        if (!*it) {
          bottom = true;
          break;
        }
        args.push_back(**it);
      }
      std::vector<SymbolicCell> out;
      for (std::size_t j = 1; j <= decl.cod.size(); ++j)
        out.push_back(bottom ? SymbolicCell()
                             : SymbolicCell(Term::app(decl.name, args, j)));
      cells.erase(cells.begin() + k, cells.begin() + k + n);
      cells.insert(cells.begin() + k, out.begin(), out.end());
      break;
    }
    }
  }
}

std::set<AFF> collect(const Signature &sig, const FMorphism &m,
                      std::size_t cap) {
  std::set<AFF> found;
  // Depth-first over partial contexts; each undecided atom splits the run.
  std::vector<std::map<AFF, bool>> stack{{}};
  while (!stack.empty()) {
    auto ctx = std::move(stack.back());
    stack.pop_back();
    std::optional<AFF> pending;
    auto r = symbolic_run(
        sig, m,
        [&](const AFF &a) -> std::optional<bool> {
          auto it = ctx.find(a);
          if (it == ctx.end())
            return std::nullopt;
          return it->second;
        },
        &pending);
    if (r)
      continue;
    found.insert(*pending);
    if (found.size() > cap)
      throw CapExceeded(found.size(), cap);
    auto yes = ctx;
    yes.emplace(*pending, true);
    ctx.emplace(std::move(*pending), false);
    stack.push_back(std::move(ctx));
    stack.push_back(std::move(yes));
  }
  return found;
}

} // namespace

std::size_t default_aff_cap() {
  if (const char *env = std::getenv("REFINEALG_AFF_CAP")) {
    std::string_view s(env);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size())
      return v;
  }
  return kDefaultAffCap;
}

std::optional<SymbolicRow>
symbolic_run(const Signature &sig, const FMorphism &m,
             const std::function<std::optional<bool>(const AFF &)> &context,
             std::optional<AFF> *undecided) {
  if (!single_sheet(m.dom))
    throw AlgebraError("symbolic execution needs a single-sheet domain");
  SymbolicRow row;
  for (auto &t : identity_terms(m.dom[0].size()))
    row.cells.emplace_back(std::move(t));

  for (const auto &slice : m.slices) {
    const auto s = slice.sheet;
    const auto &g = slice.gen;
    switch (g.kind) {
    case FGenerator::Kind::Lift:
      if (row.sheet == s)
        run_cells(sig, g.lift, row.cells);
      break;
    case FGenerator::Kind::Filter: {
      if (row.sheet > s) {
        ++row.sheet;
        break;
      }
      if (row.sheet < s)
        break;
      const std::size_t a = sig.filter(g.filter).dom.size();
      std::vector<Term> args;
      for (std::size_t i = 0; i < a; ++i) {
        if (!row.cells[i])
          break;
        args.push_back(*row.cells[i]);
      }
      if (args.size() < a) {
        // ⊥ carries no facet information: the row stays put, all ⊥.
        for (auto &c : row.cells)
          c.reset();
        break;
      }
      AFF atom(g.filter, std::move(args));
      auto decided = context(atom);
      if (!decided) {
        if (undecided)
          *undecided = std::move(atom);
        return std::nullopt;
      }
      if (!*decided)
        ++row.sheet;
      break;
    }
    case FGenerator::Kind::Union:
      if (row.sheet > s)
        --row.sheet;
      break;
    case FGenerator::Kind::Empty:
      if (row.sheet >= s)
        ++row.sheet;
      break;
    case FGenerator::Kind::SheetSwap:
      if (row.sheet == s)
        row.sheet = s + 1;
      else if (row.sheet == s + 1)
        row.sheet = s;
      break;
    }
  }
  return row;
}

std::vector<AFF> reachable_affs(const Signature &sig, const FMorphism &m) {
  auto found = collect(sig, m, static_cast<std::size_t>(-1));
  return {found.begin(), found.end()};
}

bool symbolic_oracle_equal(const Signature &sig, const FMorphism &a,
                           const FMorphism &b, std::size_t cap) {
  if (a.dom != b.dom || a.cod != b.cod)
    throw TypeError("boundaries differ");
  f_require_typed(sig, a);
  f_require_typed(sig, b);
  std::set<AFF> atoms = collect(sig, a, cap);
  for (auto &x : collect(sig, b, cap))
    atoms.insert(x);
  if (atoms.size() > cap)
    throw CapExceeded(atoms.size(), cap);
  const std::vector<AFF> list(atoms.begin(), atoms.end());

  const std::uint64_t total = std::uint64_t{1} << list.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    // Context C: the atoms whose bit is set are true.
    auto context = [&](const AFF &x) -> std::optional<bool> {
      auto it = std::lower_bound(list.begin(), list.end(), x);
      if (it == list.end() || !(*it == x))
        return std::nullopt;
      return ((mask >> (it - list.begin())) & 1u) != 0;
    };
    auto ra = symbolic_run(sig, a, context);
    auto rb = symbolic_run(sig, b, context);
    if (!ra || !rb)
      throw AlgebraError("symbolic run met an atom outside the collected set");
    if (*ra != *rb)
      return false;
  }
  return true;
}

Valuation random_finite_valuation(const Signature &sig, std::uint64_t seed,
                                  std::size_t max_domain) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  Valuation val;
  for (const auto &t : sig.datatypes()) {
    TypeDomain d;
    d.kind = TypeDomain::Kind::Enum;
    const std::size_t size = 1 + pick(std::max<std::size_t>(1, max_domain));
    for (std::size_t i = 0; i < size; ++i)
      d.values.push_back(t + std::to_string(i));
    val.types.emplace(t, std::move(d));
  }
  auto tuples = [&](const ESchema &schema) {
    std::vector<Row> out{{}};
    for (const auto &t : schema) {
      std::vector<Row> next;
      for (const auto &prefix : out)
        for (const auto &v : val.domain(t).values) {
          Row r = prefix;
          r.push_back(v);
          next.push_back(std::move(r));
        }
      out = std::move(next);
    }
    return out;
  };
  for (const auto &[name, decl] : sig.operations()) {
    OpImpl impl;
    impl.kind = OpImpl::Kind::Table;
    for (auto &in : tuples(decl.dom)) {
      Row out;
      for (const auto &t : decl.cod) {
        const auto &values = val.domain(t).values;
        out.push_back(values[pick(values.size())]);
      }
      impl.table.emplace(std::move(in), std::move(out));
    }
    val.ops.emplace(name, std::move(impl));
  }
  for (const auto &[name, decl] : sig.filters()) {
    FilterImpl impl;
    impl.kind = FilterImpl::Kind::Set;
    for (auto &r : tuples(decl.dom))
      if (pick(2))
        impl.accepted.insert(std::move(r));
    val.filters.emplace(name, std::move(impl));
  }
  return val;
}

SheetedTables random_input(const Valuation &val, const FSchema &schema,
                           std::uint64_t seed, std::size_t rows) {
  std::mt19937_64 rng(seed);
  SheetedTables out;
  for (const auto &sheet : schema) {
    Table t{sheet, default_header(sheet.size()), {}};
    for (std::size_t r = 0; r < rows; ++r) {
      Row row;
      for (const auto &type : sheet) {
        auto values = val.domain(type).enumerate();
        row.push_back(values[std::uniform_int_distribution<std::size_t>(
            0, values.size() - 1)(rng)]);
      }
      t.rows.push_back(std::move(row));
    }
    out.push_back(std::move(t));
  }
  return out;
}

RandomCheckResult random_valuation_check(const Signature &sig,
                                         const FMorphism &a,
                                         const FMorphism &b,
                                         std::size_t trials,
                                         std::uint64_t seed,
                                         std::size_t rows) {
  if (a.dom != b.dom || a.cod != b.cod)
    throw TypeError("boundaries differ");
  std::mt19937_64 seeds(seed);
  RandomCheckResult result;
  for (std::size_t i = 0; i < trials; ++i) {
    Valuation val = random_finite_valuation(sig, seeds());
    SheetedTables input = random_input(val, a.dom, seeds(), rows);
    auto left = run_workflow(sig, val, a, input);
    auto right = run_workflow(sig, val, b, input);
    if (!multiset_equal(left, right)) {
      result.consistent = false;
      result.counterexample =
          Counterexample{std::move(val), std::move(input), std::move(left),
                         std::move(right)};
      return result;
    }
  }
  return result;
}

} // namespace refinealg
