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

#ifndef REFINEALG_FMORPHISM_HPP
#define REFINEALG_FMORPHISM_HPP

#include "refinealg/emorphism.hpp"

#include <optional>
#include <string>
#include <vector>

namespace refinealg {

/// A list of sheets (table schemas). `{}` has no sheets at all; `{{}}` is a
/// single sheet with zero columns.
using FSchema = std::vector<ESchema>;

/// Generators of 𝓕.
///
///  - Lift: an 𝓔 morphism applied row-wise to one sheet.
///  - Filter: reads the leading T_f columns of a sheet `T_f ++ rest` and
///    routes each row to the first (accepted) or second (rejected) output
///    sheet.
///  - Union: merges two adjacent sheets of equal schema.
///  - Empty: introduces an empty sheet.
///  - SheetSwap: exchanges two adjacent sheets.
struct FGenerator {
  enum class Kind { Lift, Filter, Union, Empty, SheetSwap };

  Kind kind = Kind::Lift;
  EMorphism lift;     // Lift
  std::string filter; // Filter
  ESchema rest;       // Filter: columns after T_f
  ESchema a;          // Union, Empty: the sheet schema; SheetSwap: left
  ESchema b;          // SheetSwap: right

  static FGenerator make_lift(EMorphism m) {
    FGenerator g;
    g.kind = Kind::Lift;
    g.lift = std::move(m);
    return g;
  }
  static FGenerator make_filter(std::string f, ESchema rest) {
    FGenerator g;
    g.kind = Kind::Filter;
    g.filter = std::move(f);
    g.rest = std::move(rest);
    return g;
  }
  static FGenerator make_union(ESchema t) {
    FGenerator g;
    g.kind = Kind::Union;
    g.a = std::move(t);
    return g;
  }
  static FGenerator make_empty(ESchema t) {
    FGenerator g;
    g.kind = Kind::Empty;
    g.a = std::move(t);
    return g;
  }
  static FGenerator make_sheet_swap(ESchema left, ESchema right) {
    FGenerator g;
    g.kind = Kind::SheetSwap;
    g.a = std::move(left);
    g.b = std::move(right);
    return g;
  }

  bool operator==(const FGenerator &) const = default;
};

struct FSlice {
  std::size_t sheet = 0;
  FGenerator gen;

  bool operator==(const FSlice &) const = default;
};

struct FMorphism {
  FSchema dom;
  FSchema cod;
  std::vector<FSlice> slices;

  bool operator==(const FMorphism &) const = default;
};

/// Input and output sheets of a generator.
std::pair<FSchema, FSchema> generator_sheets(const Signature &sig,
                                             const FGenerator &g);

FSchema apply_fslice(const Signature &sig, const FSchema &sheets,
                     const FSlice &slice, std::size_t index = TypeError::npos);

std::optional<TypeIssue> f_typecheck(const Signature &sig,
                                     const FMorphism &m);
void f_require_typed(const Signature &sig, const FMorphism &m);

FMorphism f_identity(FSchema schema);
FMorphism f_compose(const FMorphism &f, const FMorphism &g);
FMorphism f_tensor(const FMorphism &f, const FMorphism &g);

/// [m] on a single sheet.
FMorphism f_lift(EMorphism m);

bool single_sheet(const FSchema &s);

std::string schema_string(const ESchema &s);
std::string schema_string(const FSchema &s);

} // namespace refinealg

#endif // REFINEALG_FMORPHISM_HPP
