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

#ifndef REFINEALG_AXIOMS_HPP
#define REFINEALG_AXIOMS_HPP

#include "refinealg/fmorphism.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace refinealg {

// ---- composite structure maps of 𝓔 ----

/// Adjacent swaps taking wire i of `types` to position perm[i].
EMorphism e_permutation(const ESchema &types,
                        const std::vector<std::size_t> &perm);
/// δ_A : A -> A ⊗ A for a composite A.
EMorphism e_copy(const ESchema &a);
/// ⊥_A : A -> I.
EMorphism e_discard(const ESchema &a);
/// σ_{A,B} : A ⊗ B -> B ⊗ A.
EMorphism e_swap_blocks(const ESchema &a, const ESchema &b);
/// A single operation on its declared domain.
EMorphism e_op(const Signature &sig, const std::string &name);

// ---- axiom instances ----

struct EAxiom {
  std::string id;
  std::string title;
  EMorphism lhs;
  EMorphism rhs;
};

struct FAxiom {
  std::string id;
  std::string title;
  FMorphism lhs;
  FMorphism rhs;
};

/// The six cartesian laws at object `a`, using operation `op` for the
/// laws that involve one.
std::vector<EAxiom> cartesian_axioms(const Signature &sig, const ESchema &a,
                                     const std::string &op);

/// Parameters for the five laws of 𝓕. `g` must read a prefix of
/// T_f ++ u (or T_f a prefix of T_g), and `op` acts on trailing columns.
struct FAxiomParams {
  std::string f;
  std::string g;
  ESchema u;
  std::string op;
};

std::vector<FAxiom> facet_axioms(const Signature &sig, const FAxiomParams &p);

/// Adds datatype `Tag` and nullary operations `tag0..tag{n-1}` : I -> Tag
/// unless present.
Signature with_tag_ops(Signature sig, std::size_t n);

/// m followed by appending tag k to every row of output sheet k and merging
/// all sheets. Requires all output sheets to share one schema and
/// `with_tag_ops` for enough tags. The result has a single output sheet.
FMorphism tag_closure(const Signature &sig, const FMorphism &m);

// ---- sound local rewrites ----

enum class RewriteRule {
  FilterMergeIntro,   // insert a filter immediately merged back
  FilterMergeElim,    // remove a filter immediately merged back
  FilterRefine,       // split both branches of a filter by another, merged
  FilterCommute,      // reorder two filters on the same sheet
  FilterLiftCommute,  // filter then the same lift on both branches
  LiftFilterCommute,  // the converse
  LiftFuse,           // [e1] ; [e2] -> [e1 ; e2]
  LiftSplit,          // the converse
  Interchange,        // slices on disjoint sheets change order
  UnionNatural,       // union then lift -> lift on both then union
  UnionNaturalInv,    // the converse
  UnionCommute,       // a union absorbs a preceding sheet swap
  EmptyUnitIntro,     // insert an empty sheet merged in
  EmptyUnitElim,      // the converse
  LiftRewrite,        // replace a lifted diagram by an 𝓔-equal one
};

std::string rule_name(RewriteRule r);

struct RewriteSite {
  RewriteRule rule;
  std::size_t pos = 0;   // slice index
  std::size_t sheet = 0; // sheet for insertions
  std::string filter;    // FilterMergeIntro
  std::size_t param = 0; // rule-specific choice
};

/// All places where a rule applies.
std::vector<RewriteSite> rewrite_sites(const Signature &sig,
                                       const FMorphism &m);

FMorphism apply_rewrite(const Signature &sig, const FMorphism &m,
                        const RewriteSite &site);

/// One uniformly chosen rewrite, or nullopt when none applies.
std::optional<FMorphism> random_rewrite(const Signature &sig,
                                        const FMorphism &m,
                                        std::mt19937_64 &rng,
                                        RewriteSite *chosen = nullptr);

} // namespace refinealg

#endif // REFINEALG_AXIOMS_HPP
