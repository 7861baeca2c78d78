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

#ifndef REFINEALG_TRUTH_TABLE_HPP
#define REFINEALG_TRUTH_TABLE_HPP

#include "refinealg/term.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace refinealg {

/// Default bound on the number of distinct atoms `partition_check` will
/// enumerate assignments for.
inline constexpr std::size_t kDefaultTautologyCap = 20;

struct TruthTableCase {
  CFF cond;
  std::vector<Term> values;

  friend bool operator==(const TruthTableCase &,
                         const TruthTableCase &) = default;
};

/// A finite set of cases on n variables with p outputs whose conditions are
/// pairwise disjoint. Case order carries no meaning.
class TruthTable {
public:
  TruthTable(std::size_t n_vars, std::size_t n_outs)
      : n_vars_(n_vars), n_outs_(n_outs) {}

  /// Validates value counts, variable bounds and pairwise disjointness.
  TruthTable(std::size_t n_vars, std::size_t n_outs,
             std::vector<TruthTableCase> cases);

  /// `⊤ ↦ (x1,...,xn)`.
  static TruthTable identity(std::size_t n);

  /// `⊤ ↦ values`.
  static TruthTable constant(std::size_t n_vars, std::vector<Term> values);

  std::size_t n_vars() const { return n_vars_; }
  std::size_t n_outs() const { return n_outs_; }
  const std::vector<TruthTableCase> &cases() const { return cases_; }
  bool empty() const { return cases_.empty(); }

  /// Adds a case; throws AlgebraError if it overlaps an existing one.
  void add_case(TruthTableCase c);

  /// One `cond -> (t1,...,tp)` line per case, in stored order.
  std::string str() const;

  friend bool operator==(const TruthTable &, const TruthTable &) = default;

private:
  std::size_t n_vars_;
  std::size_t n_outs_;
  std::vector<TruthTableCase> cases_;
};

/// Sequential composition t;u. Downstream conditions are substituted with
/// the upstream values before conjoining; unsatisfiable pairs are dropped.
TruthTable tt_compose(const TruthTable &t, const TruthTable &u);

/// Union of two disjoint tables. Throws AlgebraError otherwise.
TruthTable tt_union(const TruthTable &t, const TruthTable &u);

bool tt_disjoint(const TruthTable &t, const TruthTable &u);

/// t ⊗ u : n → p+q.
TruthTable tt_product(const TruthTable &t, const TruthTable &u);

/// k-th component, 1 ≤ k ≤ p.
TruthTable tt_project(const TruthTable &t, std::size_t k);

/// Every case of t ⊗ u carries equal halves.
bool tt_equiv(const TruthTable &t, const TruthTable &u);

/// All conditions across all tables pairwise disjoint and jointly
/// exhaustive. Exhaustiveness enumerates every assignment of the occurring
/// atoms; throws CapExceeded above `cap` atoms.
bool partition_check(std::span<const TruthTable> tables,
                     std::size_t cap = kDefaultTautologyCap);

/// Sorted cases, clauses already in AFF order.
TruthTable canonicalize_tt(const TruthTable &t);

/// Reads the `str()` form back. Blank lines are ignored; an empty text is
/// the empty table.
TruthTable parse_truth_table(std::string_view text, std::size_t n_vars,
                             std::size_t n_outs);

} // namespace refinealg

#endif // REFINEALG_TRUTH_TABLE_HPP
