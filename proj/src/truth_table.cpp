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

#include "refinealg/truth_table.hpp"

#include "refinealg/error.hpp"
#include "text_parser.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace refinealg {

namespace {

std::string values_str(std::span<const Term> values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i)
      out += ',';
    out += values[i].str();
  }
  return out + ")";
}

} // namespace

TruthTable::TruthTable(std::size_t n_vars, std::size_t n_outs,
                       std::vector<TruthTableCase> cases)
    : n_vars_(n_vars), n_outs_(n_outs) {
  cases_.reserve(cases.size());
  for (auto &c : cases)
    add_case(std::move(c));
}

TruthTable TruthTable::identity(std::size_t n) {
  return constant(n, identity_terms(n));
}

TruthTable TruthTable::constant(std::size_t n_vars, std::vector<Term> values) {
  std::size_t p = values.size();
  TruthTable t(n_vars, p);
  t.add_case({CFF(), std::move(values)});
  return t;
}

void TruthTable::add_case(TruthTableCase c) {
  if (c.values.size() != n_outs_)
    throw AlgebraError("case has " + std::to_string(c.values.size()) +
                       " values, table expects " + std::to_string(n_outs_));
  for (const auto &v : c.values)
    if (v.max_var() > n_vars_)
      throw AlgebraError("value " + v.str() + " exceeds " +
                         std::to_string(n_vars_) + " variables");
  for (const auto &[a, pol] : c.cond.clauses())
    for (const auto &t : a.args())
      if (t.max_var() > n_vars_)
        throw AlgebraError("condition " + a.str() + " exceeds " +
                           std::to_string(n_vars_) + " variables");
  for (const auto &other : cases_)
    if (!cff_disjoint(other.cond, c.cond))
      throw AlgebraError("overlapping cases " + other.cond.str() + " and " +
                         c.cond.str());
  cases_.push_back(std::move(c));
}

std::string TruthTable::str() const {
  std::string out;
  for (const auto &c : cases_)
    out += c.cond.str() + " -> " + values_str(c.values) + "\n";
  return out;
}

TruthTable tt_compose(const TruthTable &t, const TruthTable &u) {
  if (t.n_outs() != u.n_vars())
    throw AlgebraError("cannot compose " + std::to_string(t.n_vars()) +
                       "->" + std::to_string(t.n_outs()) + " with " +
                       std::to_string(u.n_vars()) + "->" +
                       std::to_string(u.n_outs()));
  TruthTable out(t.n_vars(), u.n_outs());
  for (const auto &ci : t.cases()) {
    for (const auto &cj : u.cases()) {
      auto pulled = substitute(cj.cond, ci.values);
      if (!pulled)
        continue;
      auto cond = try_conjoin(ci.cond, *pulled);
      if (!cond)
        continue;
      out.add_case({std::move(*cond), substitute_all(cj.values, ci.values)});
    }
  }
  return out;
}

bool tt_disjoint(const TruthTable &t, const TruthTable &u) {
  for (const auto &a : t.cases())
    for (const auto &b : u.cases())
      if (!cff_disjoint(a.cond, b.cond))
        return false;
  return true;
}

TruthTable tt_union(const TruthTable &t, const TruthTable &u) {
  if (t.n_vars() != u.n_vars() || t.n_outs() != u.n_outs())
    throw AlgebraError("union of tables with different shapes");
  if (!tt_disjoint(t, u))
    throw AlgebraError("union of non-disjoint tables");
  TruthTable out = t;
  for (const auto &c : u.cases())
    out.add_case(c);
  return out;
}

TruthTable tt_product(const TruthTable &t, const TruthTable &u) {
  if (t.n_vars() != u.n_vars())
    throw AlgebraError("product of tables over different variable counts");
  TruthTable out(t.n_vars(), t.n_outs() + u.n_outs());
  for (const auto &ci : t.cases()) {
    for (const auto &cj : u.cases()) {
      auto cond = try_conjoin(ci.cond, cj.cond);
      if (!cond)
        continue;
      std::vector<Term> values = ci.values;
      values.insert(values.end(), cj.values.begin(), cj.values.end());
      out.add_case({std::move(*cond), std::move(values)});
    }
  }
  return out;
}

TruthTable tt_project(const TruthTable &t, std::size_t k) {
  if (k < 1 || k > t.n_outs())
    throw AlgebraError("projection index " + std::to_string(k) +
                       " outside 1.." + std::to_string(t.n_outs()));
  TruthTable out(t.n_vars(), 1);
  for (const auto &c : t.cases())
    out.add_case({c.cond, {c.values[k - 1]}});
  return out;
}

bool tt_equiv(const TruthTable &t, const TruthTable &u) {
  if (t.n_vars() != u.n_vars() || t.n_outs() != u.n_outs())
    return false;
  // Same as inspecting t ⊗ u, without materialising it.
  for (const auto &a : t.cases())
    for (const auto &b : u.cases())
      if (!cff_disjoint(a.cond, b.cond) && a.values != b.values)
        return false;
  return true;
}

bool partition_check(std::span<const TruthTable> tables, std::size_t cap) {
  std::vector<const CFF *> conds;
  for (const auto &t : tables)
    for (const auto &c : t.cases())
      conds.push_back(&c.cond);
  for (std::size_t i = 0; i < conds.size(); ++i)
    for (std::size_t j = i + 1; j < conds.size(); ++j)
      if (!cff_disjoint(*conds[i], *conds[j]))
        return false;

  std::vector<AFF> atoms;
  {
    std::set<AFF> seen;
    for (const auto *c : conds)
      for (const auto &[a, pol] : c->clauses())
        if (seen.insert(a).second)
          atoms.push_back(a);
  }
  if (atoms.size() > cap)
    throw CapExceeded(atoms.size(), cap);

  // Clauses as (atom index, polarity) for fast evaluation.
  std::vector<std::vector<std::pair<std::size_t, bool>>> compiled;
  for (const auto *c : conds) {
    auto &row = compiled.emplace_back();
    for (const auto &[a, pol] : c->clauses()) {
      auto idx = static_cast<std::size_t>(
          std::find(atoms.begin(), atoms.end(), a) - atoms.begin());
      row.emplace_back(idx, pol);
    }
  }
  const std::uint64_t total = std::uint64_t{1} << atoms.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    bool covered = false;
    for (const auto &row : compiled) {
      bool holds = true;
      for (auto [idx, pol] : row)
        if (((mask >> idx) & 1u) != static_cast<std::uint64_t>(pol)) {
          holds = false;
          break;
        }
      if (holds) {
        covered = true;
        break;
      }
    }
    if (!covered)
      return false;
  }
  return true;
}

TruthTable canonicalize_tt(const TruthTable &t) {
  std::vector<TruthTableCase> cases = t.cases();
  std::sort(cases.begin(), cases.end(),
            [](const TruthTableCase &a, const TruthTableCase &b) {
              return std::lexicographical_compare(
                  a.cond.clauses().begin(), a.cond.clauses().end(),
                  b.cond.clauses().begin(), b.cond.clauses().end());
            });
  TruthTable out(t.n_vars(), t.n_outs());
  for (auto &c : cases)
    out.add_case(std::move(c));
  return out;
}

TruthTable parse_truth_table(std::string_view text, std::size_t n_vars,
                             std::size_t n_outs) {
  TruthTable out(n_vars, n_outs);
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view()
                                        : text.substr(nl + 1);
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos)
      continue;
    if (line.back() == '\r')
      line.remove_suffix(1);
    try {
      detail::TextCursor cur(line);
      CFF cond = cur.cff();
      if (!cur.accept("->"))
        cur.fail("expected '->'");
      auto values = cur.term_list('(', ')');
      cur.finish();
      out.add_case({std::move(cond), std::move(values)});
    } catch (const ParseError &e) {
      throw ParseError(e.message(), line_no, e.column());
    }
  }
  return out;
}

} // namespace refinealg
