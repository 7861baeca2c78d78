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

#include "refinealg/grid.hpp"

#include "refinealg/error.hpp"

namespace refinealg {

namespace {

std::vector<std::size_t> widths_of(const FSchema &s) {
  std::vector<std::size_t> out;
  out.reserve(s.size());
  for (const auto &sheet : s)
    out.push_back(sheet.size());
  return out;
}

} // namespace

TTGrid grid_empty(std::vector<std::size_t> dom_widths,
                  std::vector<std::size_t> cod_widths) {
  TTGrid g{std::move(dom_widths), std::move(cod_widths), {}};
  g.tables.resize(g.dom_widths.size());
  for (std::size_t i = 0; i < g.dom_widths.size(); ++i)
    for (std::size_t j = 0; j < g.cod_widths.size(); ++j)
      g.tables[i].emplace_back(g.dom_widths[i], g.cod_widths[j]);
  return g;
}

TTGrid grid_identity(const std::vector<std::size_t> &widths) {
  TTGrid g = grid_empty(widths, widths);
  for (std::size_t i = 0; i < widths.size(); ++i)
    g.tables[i][i] = TruthTable::identity(widths[i]);
  return g;
}

TTGrid grid_compose(const TTGrid &t, const TTGrid &u) {
  if (t.cod_widths != u.dom_widths)
    throw AlgebraError("cannot compose grids with mismatched sheets");
  TTGrid out = grid_empty(t.dom_widths, u.cod_widths);
  for (std::size_t i = 0; i < t.dom_widths.size(); ++i)
    for (std::size_t k = 0; k < u.cod_widths.size(); ++k)
      for (std::size_t j = 0; j < t.cod_widths.size(); ++j) {
        if (t.tables[i][j].empty() || u.tables[j][k].empty())
          continue;
        out.tables[i][k] =
            tt_union(out.tables[i][k], tt_compose(t.tables[i][j], u.tables[j][k]));
      }
  return out;
}

TTGrid grid_tensor(const TTGrid &t, const TTGrid &u) {
  auto dom = t.dom_widths;
  dom.insert(dom.end(), u.dom_widths.begin(), u.dom_widths.end());
  auto cod = t.cod_widths;
  cod.insert(cod.end(), u.cod_widths.begin(), u.cod_widths.end());
  TTGrid out = grid_empty(dom, cod);
  for (std::size_t i = 0; i < t.dom_widths.size(); ++i)
    for (std::size_t j = 0; j < t.cod_widths.size(); ++j)
      out.tables[i][j] = t.tables[i][j];
  const std::size_t di = t.dom_widths.size();
  const std::size_t dj = t.cod_widths.size();
  for (std::size_t i = 0; i < u.dom_widths.size(); ++i)
    for (std::size_t j = 0; j < u.cod_widths.size(); ++j)
      out.tables[di + i][dj + j] = u.tables[i][j];
  return out;
}

TTGrid generator_grid(const Signature &sig, const FGenerator &g) {
  auto [in, out] = generator_sheets(sig, g);
  TTGrid grid = grid_empty(widths_of(in), widths_of(out));
  switch (g.kind) {
  case FGenerator::Kind::Lift:
    grid.tables[0][0] = TruthTable::constant(g.lift.dom.size(),
                                             e_to_terms(sig, g.lift).outputs);
    break;
  case FGenerator::Kind::Filter: {
    const std::size_t a = sig.filter(g.filter).dom.size();
    const std::size_t n = in[0].size();
    auto vars = identity_terms(n);
    AFF atom(g.filter, std::vector<Term>(vars.begin(),
                                         vars.begin() +
                                             static_cast<std::ptrdiff_t>(a)));
    grid.tables[0][0].add_case({CFF::atom(atom, true), vars});
    grid.tables[0][1].add_case({CFF::atom(atom, false), vars});
    break;
  }
  case FGenerator::Kind::Union:
    grid.tables[0][0] = TruthTable::identity(g.a.size());
    grid.tables[1][0] = TruthTable::identity(g.a.size());
    break;
  case FGenerator::Kind::Empty:
    break;
  case FGenerator::Kind::SheetSwap:
    grid.tables[0][1] = TruthTable::identity(g.a.size());
    grid.tables[1][0] = TruthTable::identity(g.b.size());
    break;
  }
  return grid;
}

TTGrid functor_P(const Signature &sig, const FMorphism &m) {
  TTGrid acc = grid_identity(widths_of(m.dom));
  for (const auto &slice : m.slices) {
    TTGrid gen = generator_grid(sig, slice.gen);
    const std::size_t s = slice.sheet;
    const std::size_t n_in = gen.dom_widths.size();
    const std::size_t n_out = gen.cod_widths.size();
    if (s + n_in > acc.cod_widths.size())
      throw TypeError("generator does not fit the current sheets");

    // Only the columns s..s+n_in of the accumulated grid are affected.
    TTGrid next;
    next.dom_widths = acc.dom_widths;
    next.cod_widths.assign(acc.cod_widths.begin(),
                           acc.cod_widths.begin() +
                               static_cast<std::ptrdiff_t>(s));
    next.cod_widths.insert(next.cod_widths.end(), gen.cod_widths.begin(),
                           gen.cod_widths.end());
    next.cod_widths.insert(next.cod_widths.end(),
                           acc.cod_widths.begin() +
                               static_cast<std::ptrdiff_t>(s + n_in),
                           acc.cod_widths.end());
    next.tables.resize(acc.dom_widths.size());
    for (std::size_t i = 0; i < acc.dom_widths.size(); ++i) {
      auto &row = next.tables[i];
      const auto &old = acc.tables[i];
      row.insert(row.end(), old.begin(),
                 old.begin() + static_cast<std::ptrdiff_t>(s));
      for (std::size_t k = 0; k < n_out; ++k) {
        TruthTable cell(acc.dom_widths[i], gen.cod_widths[k]);
        for (std::size_t j = 0; j < n_in; ++j) {
          if (old[s + j].empty() || gen.tables[j][k].empty())
            continue;
          cell = tt_union(cell, tt_compose(old[s + j], gen.tables[j][k]));
        }
        row.push_back(std::move(cell));
      }
      row.insert(row.end(), old.begin() + static_cast<std::ptrdiff_t>(s + n_in),
                 old.end());
    }
    acc = std::move(next);
  }
  return acc;
}

bool grid_valid(const TTGrid &g, std::size_t cap) {
  if (g.cod_widths.empty() && !g.dom_widths.empty())
    return false;
  for (const auto &row : g.tables)
    if (!partition_check(row, cap))
      return false;
  return true;
}

bool grid_equiv(const TTGrid &t, const TTGrid &u) {
  if (t.dom_widths != u.dom_widths || t.cod_widths != u.cod_widths)
    return false;
  for (std::size_t i = 0; i < t.dom_widths.size(); ++i)
    for (std::size_t j = 0; j < t.cod_widths.size(); ++j)
      for (const auto &a : t.tables[i][j].cases())
        for (std::size_t k = 0; k < u.cod_widths.size(); ++k)
          for (const auto &b : u.tables[i][k].cases()) {
            if (cff_disjoint(a.cond, b.cond))
              continue;
            if (j != k || a.values != b.values)
              return false;
          }
  return true;
}

TTGrid canonicalize_grid(const TTGrid &g) {
  TTGrid out = g;
  for (auto &row : out.tables)
    for (auto &t : row)
      t = canonicalize_tt(t);
  return out;
}

std::string grid_string(const TTGrid &g) {
  std::string out;
  for (std::size_t i = 0; i < g.dom_widths.size(); ++i)
    for (std::size_t j = 0; j < g.cod_widths.size(); ++j) {
      if (g.tables[i][j].empty())
        continue;
      out += "[" + std::to_string(i) + " -> " + std::to_string(j) + "]\n";
      out += g.tables[i][j].str();
    }
  return out;
}

FVerdict f_equal(const Signature &sig, const FMorphism &a,
                 const FMorphism &b) {
  if (a.dom != b.dom || a.cod != b.cod)
    throw TypeError("boundaries differ: " + schema_string(a.dom) + " -> " +
                    schema_string(a.cod) + " vs " + schema_string(b.dom) +
                    " -> " + schema_string(b.cod));
  f_require_typed(sig, a);
  f_require_typed(sig, b);
  FVerdict v;
  v.equal = grid_equiv(functor_P(sig, a), functor_P(sig, b));
  v.conjectural = !(single_sheet(a.dom) && single_sheet(a.cod));
  return v;
}

} // namespace refinealg
