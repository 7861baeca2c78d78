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

#ifndef REFINEALG_TESTS_GENERATORS_HPP
#define REFINEALG_TESTS_GENERATORS_HPP

#include "refinealg/fmorphism.hpp"
#include "refinealg/grid.hpp"
#include "refinealg/valuation.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace refinealg::testing {

using Rng = std::mt19937_64;

std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi);
bool coin(Rng &rng, double p = 0.5);

/// 1..3 datatypes, 1..3 operations with up to 2 inputs and 1..2 outputs,
/// 0..2 filters over 1..2 columns (at least one when `need_filter`).
Signature random_signature(Rng &rng, bool need_filter = true);

ESchema random_schema(const Signature &sig, Rng &rng, std::size_t lo,
                      std::size_t hi);

/// A domain for diagram generation: 1..3 columns, usually containing the
/// input types of some filter so that filters can fire.
ESchema random_domain(const Signature &sig, Rng &rng);

/// A random term of type `type` over `dom`, nesting operations up to
/// `depth`. Nullopt when none is found.
std::optional<Term> random_term(const Signature &sig, const ESchema &dom,
                                const std::string &type, std::size_t depth,
                                Rng &rng);

/// A diagram dom -> cod built from random terms, or nullopt.
std::optional<EMorphism> random_emorphism_to(const Signature &sig,
                                             const ESchema &dom,
                                             const ESchema &cod, Rng &rng);

/// Random walk over generators: up to `max_slices` slices, at most
/// `max_wires` wires at any time.
EMorphism random_emorphism(const Signature &sig, const ESchema &dom,
                           Rng &rng, std::size_t max_slices = 8,
                           std::size_t max_wires = 5);

/// Nested filter blocks merged back together: single-sheet domain and
/// codomain, at most `max_slices` slices. With `cod` set the codomain is
/// forced (may fail and return nullopt).
std::optional<FMorphism>
random_structured_fmorphism(const Signature &sig, const ESchema &dom,
                            Rng &rng, std::size_t max_slices = 8,
                            std::optional<ESchema> cod = std::nullopt);

/// Like random_structured_fmorphism, retried until it succeeds.
FMorphism structured_fmorphism(const Signature &sig, const ESchema &dom,
                               Rng &rng, std::size_t max_slices = 8);

/// Random walk over 𝓕 generators from a single sheet. The codomain may
/// have any number of sheets.
FMorphism random_walk_fmorphism(const Signature &sig, const ESchema &dom,
                                Rng &rng, std::size_t max_slices = 8);

/// A second diagram with the same boundary, built by rewriting, mutating
/// or regenerating `a`. Both have at most `max_slices` slices.
FMorphism random_partner(const Signature &sig, const FMorphism &a, Rng &rng,
                         std::size_t max_slices = 8);

/// Evaluates a term under a valuation, independently of the diagram
/// interpreter.
Value eval_term(const Signature &sig, const Valuation &val, const Term &t,
                const Row &inputs);

/// Truth of an atom under a valuation.
bool eval_aff(const Signature &sig, const Valuation &val, const AFF &a,
              const Row &inputs);

/// The case of `t` whose condition holds on `inputs`, evaluated; nullopt
/// when no case holds.
std::optional<Row> eval_tt(const Signature &sig, const Valuation &val,
                           const TruthTable &t, const Row &inputs);

/// Where grid row `sheet` sends `inputs`: the output sheet and the values.
/// Nullopt when no case holds; throws when several do.
std::optional<std::pair<std::size_t, Row>>
eval_grid(const Signature &sig, const Valuation &val, const TTGrid &g,
          std::size_t sheet, const Row &inputs);

} // namespace refinealg::testing

#endif // REFINEALG_TESTS_GENERATORS_HPP
