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

#ifndef REFINEALG_EMORPHISM_HPP
#define REFINEALG_EMORPHISM_HPP

#include "refinealg/error.hpp"
#include "refinealg/signature.hpp"
#include "refinealg/term.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace refinealg {

/// One generator of the free cartesian category: an operation, copy (δ),
/// discard (⊥) or symmetry of two single wires.
struct EGenerator {
  enum class Kind { Op, Copy, Discard, Swap };

  Kind kind = Kind::Op;
  std::string name;  // Op
  std::string type;  // Copy, Discard, Swap (left wire)
  std::string type2; // Swap (right wire)

  static EGenerator op(std::string name) {
    return {Kind::Op, std::move(name), {}, {}};
  }
  static EGenerator copy(std::string type) {
    return {Kind::Copy, {}, std::move(type), {}};
  }
  static EGenerator discard(std::string type) {
    return {Kind::Discard, {}, std::move(type), {}};
  }
  static EGenerator swap(std::string left, std::string right) {
    return {Kind::Swap, {}, std::move(left), std::move(right)};
  }

  bool operator==(const EGenerator &) const = default;
};

/// A generator placed at a 0-based wire offset; all other wires pass
/// through unchanged.
struct ESlice {
  std::size_t offset = 0;
  EGenerator gen;

  bool operator==(const ESlice &) const = default;
};

/// A string diagram in 𝓔, stored as a flat top-to-bottom sequence of
/// single-generator slices.
struct EMorphism {
  ESchema dom;
  ESchema cod;
  std::vector<ESlice> slices;

  bool operator==(const EMorphism &) const = default;
};

/// First problem found while type-checking.
struct TypeIssue {
  std::size_t slice; // TypeError::npos for boundary problems
  std::string message;
};

/// Input and output wire types of a generator.
std::pair<ESchema, ESchema> generator_ports(const Signature &sig,
                                            const EGenerator &g);

/// Schema after applying `slice` to `wires`. Throws TypeError.
ESchema apply_slice(const Signature &sig, const ESchema &wires,
                    const ESlice &slice, std::size_t index = TypeError::npos);

std::optional<TypeIssue> e_typecheck(const Signature &sig,
                                     const EMorphism &m);

/// Throws TypeError on the first issue.
void e_require_typed(const Signature &sig, const EMorphism &m);

EMorphism e_identity(ESchema schema);

/// f then g. Throws TypeError when f.cod differs from g.dom.
EMorphism e_compose(const EMorphism &f, const EMorphism &g);

/// f ⊗ g: f acts on the leading wires, g on the trailing ones.
EMorphism e_tensor(const EMorphism &f, const EMorphism &g);

/// Output terms over the dom wires x1..xn, one per cod wire.
struct ETermTuple {
  std::vector<Term> outputs;

  bool operator==(const ETermTuple &) const = default;
};

/// Forward symbolic evaluation. Requires a well-typed morphism.
ETermTuple e_to_terms(const Signature &sig, const EMorphism &m);

/// Same forward evaluation starting from arbitrary input terms.
std::vector<Term> e_apply_terms(const Signature &sig, const EMorphism &m,
                                std::vector<Term> inputs);

/// Equality in the free cartesian category. Throws TypeError if the
/// boundaries differ.
bool e_equal(const Signature &sig, const EMorphism &a, const EMorphism &b);

/// Type of a term whose variables range over `dom`.
std::string term_type(const Signature &sig, const ESchema &dom,
                      const Term &t);

/// Builds the layered normal form realising `terms` over `dom`: copies and
/// discards, then adjacent swaps, then operations (each followed by discards
/// of its unused projections).
EMorphism e_from_terms(const Signature &sig, const ESchema &dom,
                       std::span<const Term> terms);

/// e_from_terms of e_to_terms. Idempotent.
EMorphism e_normalize(const Signature &sig, const EMorphism &m);

/// Half-open slice index range.
struct SliceRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool empty() const { return begin == end; }
  bool operator==(const SliceRange &) const = default;
};

struct LayerProfile {
  SliceRange copy_discard;
  SliceRange swaps;
  SliceRange ops;

  bool operator==(const LayerProfile &) const = default;
};

/// Classifies a slice sequence into the three layers. In the operation
/// layer a discard is accepted only on an output wire of the operation
/// immediately above it. nullopt when the sequence is not layered.
std::optional<LayerProfile> layer_profile(const Signature &sig,
                                          const EMorphism &m);

} // namespace refinealg

#endif // REFINEALG_EMORPHISM_HPP
