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

#ifndef REFINEALG_ORACLE_HPP
#define REFINEALG_ORACLE_HPP

#include "refinealg/exec.hpp"
#include "refinealg/fmorphism.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace refinealg {

inline constexpr std::size_t kDefaultAffCap = 16;

/// kDefaultAffCap, or the value of REFINEALG_AFF_CAP when set.
std::size_t default_aff_cap();

/// A cell of the syntactic valuation: a term, or ⊥ (nullopt). The context
/// is shared by the whole row and kept outside the cells.
using SymbolicCell = std::optional<Term>;

/// Where the single input row ends up, and with which cells.
struct SymbolicRow {
  std::size_t sheet = 0;
  std::vector<SymbolicCell> cells;

  bool operator==(const SymbolicRow &) const = default;
};

/// Interprets a diagram with a single-sheet domain on the row (x1,...,xn).
/// `context` decides each facet met. When it returns nullopt the run stops,
/// returns nullopt and stores the atom in `undecided` if given.
std::optional<SymbolicRow>
symbolic_run(const Signature &sig, const FMorphism &m,
             const std::function<std::optional<bool>(const AFF &)> &context,
             std::optional<AFF> *undecided = nullptr);

/// Every atomic filter formula some run of `m` can meet, in AFF order.
std::vector<AFF> reachable_affs(const Signature &sig, const FMorphism &m);

/// Compares the two diagrams under every context over the atoms either of
/// them can meet. Requires single-sheet domains; throws CapExceeded when
/// there are more than `cap` atoms.
bool symbolic_oracle_equal(const Signature &sig, const FMorphism &a,
                           const FMorphism &b,
                           std::size_t cap = default_aff_cap());

struct Counterexample {
  Valuation valuation;
  SheetedTables input;
  SheetedTables left;
  SheetedTables right;
};

struct RandomCheckResult {
  bool consistent = true;
  std::optional<Counterexample> counterexample;
};

/// A random valuation with enumerated domains of 1 to `max_domain` values,
/// random lookup tables and random accepted sets.
Valuation random_finite_valuation(const Signature &sig, std::uint64_t seed,
                                  std::size_t max_domain = 3);

/// Random input tables with `rows` rows per sheet.
SheetedTables random_input(const Valuation &val, const FSchema &schema,
                           std::uint64_t seed, std::size_t rows);

/// Runs both diagrams on `trials` random valuations and inputs and compares
/// the outputs sheet by sheet as multisets.
RandomCheckResult random_valuation_check(const Signature &sig,
                                         const FMorphism &a,
                                         const FMorphism &b,
                                         std::size_t trials,
                                         std::uint64_t seed,
                                         std::size_t rows = 20);

} // namespace refinealg

#endif // REFINEALG_ORACLE_HPP
