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

#ifndef REFINEALG_NORMAL_FORM_HPP
#define REFINEALG_NORMAL_FORM_HPP

#include "refinealg/fmorphism.hpp"

#include <cstddef>
#include <vector>

namespace refinealg {

/// One filter of the x layer. All sheets in the x layer carry the full
/// schema w.cod; the filter reads `columns` of the sheet at `sheet`, which
/// are first brought to the front by swaps and put back afterwards on both
/// output sheets.
struct FilterApplication {
  std::size_t sheet = 0;
  AFF aff;
  std::vector<std::size_t> columns;

  bool operator==(const FilterApplication &) const = default;
};

/// m = z ∘ y ∘ x ∘ [w].
///
/// After x there is one sheet per leaf. `y[l]` lists the columns of w.cod
/// discarded on leaf sheet l, and `z[l]` is the output sheet the leaf is
/// merged into. Leaves with the same target are merged left to right.
struct FNormalForm {
  EMorphism w;
  std::vector<FilterApplication> x;
  std::vector<std::vector<std::size_t>> y;
  std::vector<std::size_t> z;
  FSchema cod;

  bool operator==(const FNormalForm &) const = default;
};

/// The four layers as 𝓕 morphisms.
struct NormalFormLayers {
  FMorphism w;
  FMorphism x;
  FMorphism y;
  FMorphism z;
};

/// Requires a single-sheet domain. Filters appear in the order they are met
/// in m; a filter whose outcome is already fixed on a branch is dropped.
FNormalForm f_decompose(const Signature &sig, const FMorphism &m);

/// Rebuilds the decomposition with filters tested in ascending AFF order on
/// every branch, filters that do not influence the result removed, and the
/// x layer listed in ascending AFF order.
FNormalForm f_sort_filters(const Signature &sig, const FNormalForm &nf);

NormalFormLayers split_layers(const Signature &sig, const FNormalForm &nf);

/// Composite of the layers.
FMorphism recompose(const Signature &sig, const FNormalForm &nf);

/// Canonical representative: two morphisms with the same P-image yield
/// identical slice sequences.
FMorphism f_normalize(const Signature &sig, const FMorphism &m);

/// Single Lift slice (or nothing).
bool is_lift_layer(const FMorphism &m);
/// Filters, plus Lifts made only of swaps.
bool is_filter_layer(const FMorphism &m);
/// Lifts made only of discards.
bool is_discard_layer(const FMorphism &m);
/// Unions; SheetSwap and Empty are accepted when `multi_sheet_cod` is set.
bool is_union_layer(const FMorphism &m, bool multi_sheet_cod);

} // namespace refinealg

#endif // REFINEALG_NORMAL_FORM_HPP
