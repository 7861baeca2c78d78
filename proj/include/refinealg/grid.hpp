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

#ifndef REFINEALG_GRID_HPP
#define REFINEALG_GRID_HPP

#include "refinealg/fmorphism.hpp"
#include "refinealg/truth_table.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace refinealg {

/// A morphism of 𝒯: entry (i, j) is a truth table from input sheet i
/// (width dom_widths[i]) to output sheet j (width cod_widths[j]).
struct TTGrid {
  std::vector<std::size_t> dom_widths;
  std::vector<std::size_t> cod_widths;
  std::vector<std::vector<TruthTable>> tables; // [i][j]

  const TruthTable &at(std::size_t i, std::size_t j) const {
    return tables[i][j];
  }

  bool operator==(const TTGrid &) const = default;
};

/// Grid with empty tables everywhere.
TTGrid grid_empty(std::vector<std::size_t> dom_widths,
                  std::vector<std::size_t> cod_widths);

TTGrid grid_identity(const std::vector<std::size_t> &widths);

/// (t ; u)_{ik} = ⋃_j t_{ij} ; u_{jk}. Throws AlgebraError on mismatch.
TTGrid grid_compose(const TTGrid &t, const TTGrid &u);

/// Block-diagonal sum.
TTGrid grid_tensor(const TTGrid &t, const TTGrid &u);

/// Image of a single generator.
TTGrid generator_grid(const Signature &sig, const FGenerator &g);

/// The functor P. Requires a well-typed morphism.
TTGrid functor_P(const Signature &sig, const FMorphism &m);

/// Every row is a partition, and cod is non-empty unless dom is.
bool grid_valid(const TTGrid &g, std::size_t cap = kDefaultTautologyCap);

/// Equality of the represented functions: for each input sheet, any two
/// compatible cases from the two grids route to the same output sheet with
/// the same values.
bool grid_equiv(const TTGrid &t, const TTGrid &u);

/// Grid with every table canonicalized.
TTGrid canonicalize_grid(const TTGrid &g);

/// One block per non-empty entry, `[i -> j]` followed by its table lines.
std::string grid_string(const TTGrid &g);

struct FVerdict {
  bool equal = false;
  /// Set when either boundary is not a single sheet. A negative verdict is
  /// then not backed by the completeness result.
  bool conjectural = false;
};

/// Decides equality in 𝓕. Throws TypeError when the boundaries differ or a
/// side does not typecheck.
FVerdict f_equal(const Signature &sig, const FMorphism &a,
                 const FMorphism &b);

} // namespace refinealg

#endif // REFINEALG_GRID_HPP
