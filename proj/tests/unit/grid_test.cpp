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

#include "generators.hpp"

#include "refinealg/error.hpp"
#include "refinealg/exec.hpp"
#include "refinealg/grid.hpp"
#include "refinealg/oracle.hpp"

#include <gtest/gtest.h>

namespace refinealg {
namespace {

using testing::Rng;

Signature one_filter_sig() {
  Signature sig;
  sig.add_datatype("A");
  sig.add_operation({"g", {"A"}, {"A"}});
  sig.add_filter({"f", {"A"}});
  return sig;
}

FMorphism filter_only(const Signature &sig) {
  FMorphism m{{{"A"}}, {}, {{0, FGenerator::make_filter("f", {})}}};
  m.cod = apply_fslice(sig, m.dom, m.slices[0]);
  return m;
}

TEST(Grid, FilterImage) {
  const Signature sig = one_filter_sig();
  const TTGrid g = functor_P(sig, filter_only(sig));
  EXPECT_EQ(grid_string(canonicalize_grid(g)),
            "[0 -> 0]\nf(x1) -> (x1)\n[0 -> 1]\n!f(x1) -> (x1)\n");
  EXPECT_TRUE(grid_valid(g));
}

TEST(Grid, RoutingMatters) {
  const Signature sig = one_filter_sig();
  const FMorphism a = filter_only(sig);
  FMorphism b = a;
  b.slices.push_back({0, FGenerator::make_sheet_swap({"A"}, {"A"})});
  const FVerdict v = f_equal(sig, a, b);
  EXPECT_FALSE(v.equal);
  EXPECT_TRUE(v.conjectural);
  FMorphism c = b;
  c.slices.push_back({0, FGenerator::make_sheet_swap({"A"}, {"A"})});
  EXPECT_TRUE(f_equal(sig, a, c).equal);
}

TEST(Grid, EqualityRejectsBoundaryMismatch) {
  const Signature sig = one_filter_sig();
  EXPECT_THROW(f_equal(sig, filter_only(sig), f_identity({{"A"}})), TypeError);
}

TEST(Grid, EmptyAndUnionImages) {
  const Signature sig = one_filter_sig();
  // Empty then union is the identity.
  FMorphism m{{{"A"}},
              {{"A"}},
              {{0, FGenerator::make_empty({"A"})},
               {0, FGenerator::make_union({"A"})}}};
  EXPECT_TRUE(f_equal(sig, m, f_identity({{"A"}})).equal);
  // A sheet from nowhere has no rows.
  FMorphism e{{}, {{"A"}}, {{0, FGenerator::make_empty({"A"})}}};
  const TTGrid g = functor_P(sig, e);
  EXPECT_TRUE(g.dom_widths.empty());
  EXPECT_EQ(g.cod_widths, std::vector<std::size_t>{1});
}

// P(m) agrees with P of its two halves composed, for every cut point.
TEST(GridProperty, Functoriality) {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const Signature sig = testing::random_signature(rng);
    const FMorphism m =
        testing::random_walk_fmorphism(sig, testing::random_domain(sig, rng),
                                       rng, 8);
    const std::size_t cut = testing::uniform(rng, 0, m.slices.size());
    FMorphism head{m.dom, {}, {m.slices.begin(), m.slices.begin() + cut}};
    head.cod = m.dom;
    for (std::size_t k = 0; k < cut; ++k)
      head.cod = apply_fslice(sig, head.cod, head.slices[k], k);
    FMorphism tail{head.cod, m.cod, {m.slices.begin() + cut, m.slices.end()}};
    const TTGrid whole = functor_P(sig, m);
    const TTGrid parts =
        grid_compose(functor_P(sig, head), functor_P(sig, tail));
    EXPECT_TRUE(grid_equiv(whole, parts)) << i;
    EXPECT_TRUE(grid_valid(whole)) << i;
  }
}

TEST(GridProperty, TensorIsBlockDiagonal) {
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    const Signature sig = testing::random_signature(rng);
    const FMorphism a = testing::random_walk_fmorphism(
        sig, testing::random_domain(sig, rng), rng, 5);
    const FMorphism b = testing::random_walk_fmorphism(
        sig, testing::random_domain(sig, rng), rng, 5);
    EXPECT_TRUE(grid_equiv(functor_P(sig, f_tensor(a, b)),
                           grid_tensor(functor_P(sig, a), functor_P(sig, b))));
  }
}

// Every row of the input lands where the image says, with the values the
// image says, under random finite valuations.
TEST(GridProperty, ImageMatchesExecution) {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const Signature sig = testing::random_signature(rng);
    const FMorphism m = testing::random_walk_fmorphism(
        sig, testing::random_domain(sig, rng), rng, 8);
    const TTGrid g = functor_P(sig, m);
    const Valuation val = random_finite_valuation(sig, rng());
    const SheetedTables input = random_input(val, m.dom, rng(), 6);
    for (const Row &row : input[0].rows) {
      SheetedTables one{{m.dom[0], {}, {row}}};
      const SheetedTables out = run_workflow(sig, val, m, one);
      std::optional<std::pair<std::size_t, Row>> ran;
      for (std::size_t j = 0; j < out.size(); ++j)
        if (!out[j].rows.empty()) {
          ASSERT_FALSE(ran) << "row duplicated";
          ASSERT_EQ(out[j].rows.size(), 1u);
          ran.emplace(j, out[j].rows[0]);
        }
      EXPECT_EQ(testing::eval_grid(sig, val, g, 0, row), ran) << i;
    }
  }
}

TEST(GridProperty, EqualityIsReflexiveAndSymmetric) {
  Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    const Signature sig = testing::random_signature(rng);
    const FMorphism a = testing::structured_fmorphism(
        sig, testing::random_domain(sig, rng), rng, 8);
    const FMorphism b = testing::random_partner(sig, a, rng, 8);
    EXPECT_TRUE(f_equal(sig, a, a).equal);
    EXPECT_EQ(f_equal(sig, a, b).equal, f_equal(sig, b, a).equal);
    EXPECT_FALSE(f_equal(sig, a, b).conjectural);
  }
}

TEST(GridProperty, AgreesWithOracleOnMultiSheetCodomains) {
  Rng rng(25);
  for (int i = 0; i < 300; ++i) {
    const Signature sig = testing::random_signature(rng);
    const FMorphism a = testing::random_walk_fmorphism(
        sig, testing::random_domain(sig, rng), rng, 8);
    const FMorphism b = testing::random_partner(sig, a, rng, 10);
    EXPECT_EQ(f_equal(sig, a, b).equal, symbolic_oracle_equal(sig, a, b))
        << i;
  }
}

} // namespace
} // namespace refinealg
