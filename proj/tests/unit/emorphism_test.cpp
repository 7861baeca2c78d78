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

#include "refinealg/emorphism.hpp"
#include "refinealg/error.hpp"
#include "refinealg/exec.hpp"
#include "refinealg/oracle.hpp"

#include <gtest/gtest.h>

namespace refinealg {
namespace {

using testing::Rng;

Signature demo_sig() {
  Signature sig;
  sig.add_datatype("S");
  sig.add_operation({"concat", {"S", "S"}, {"S"}});
  sig.add_operation({"upper", {"S"}, {"S"}});
  return sig;
}

TEST(EMorphism, TypecheckReportsSlice) {
  const Signature sig = demo_sig();
  EMorphism m{{"S"}, {"S"}, {{0, EGenerator::op("concat")}}};
  auto issue = e_typecheck(sig, m);
  ASSERT_TRUE(issue);
  EXPECT_EQ(issue->slice, 0u);
  EXPECT_THROW(e_require_typed(sig, m), TypeError);
  EMorphism bad_cod{{"S"}, {"S", "S"}, {}};
  ASSERT_TRUE(e_typecheck(sig, bad_cod));
  EXPECT_EQ(e_typecheck(sig, bad_cod)->slice, TypeError::npos);
}

TEST(EMorphism, TermsOfFullName) {
  const Signature sig = demo_sig();
  EMorphism m{{"S", "S"},
              {"S"},
              {{0, EGenerator::op("concat")}, {0, EGenerator::op("upper")}}};
  EXPECT_EQ(e_to_terms(sig, m).outputs.at(0).str(),
            "upper(concat(x1,x2)[1])[1]");
}

TEST(EMorphism, EqualityIsSyntacticOnTerms) {
  const Signature sig = demo_sig();
  const EMorphism upper_then_copy{
      {"S"},
      {"S", "S"},
      {{0, EGenerator::op("upper")}, {0, EGenerator::copy("S")}}};
  const EMorphism copy_then_upper{{"S"},
                                  {"S", "S"},
                                  {{0, EGenerator::copy("S")},
                                   {0, EGenerator::op("upper")},
                                   {1, EGenerator::op("upper")}}};
  EXPECT_TRUE(e_equal(sig, upper_then_copy, copy_then_upper));
  const EMorphism partial{
      {"S"}, {"S", "S"}, {{0, EGenerator::copy("S")}, {0, EGenerator::op("upper")}}};
  EXPECT_FALSE(e_equal(sig, upper_then_copy, partial));
  EXPECT_THROW(e_equal(sig, partial, e_identity({"S"})), TypeError);
}

TEST(EMorphism, ComposeRejectsMismatch) {
  EXPECT_THROW(e_compose(e_identity({"S"}), e_identity({"S", "S"})),
               TypeError);
}

// The symbolic terms and a direct row interpreter agree under random
// finite valuations.
TEST(EMorphismProperty, TermsMatchExecution) {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const Signature sig = testing::random_signature(rng, false);
    const ESchema dom = testing::random_schema(sig, rng, 0, 3);
    const EMorphism m = testing::random_emorphism(sig, dom, rng);
    const Valuation val = random_finite_valuation(sig, rng());
    const auto terms = e_to_terms(sig, m).outputs;
    const SheetedTables in = random_input(val, {dom}, rng(), 4);
    for (const Row &row : in[0].rows) {
      Row expect;
      for (const Term &t : terms)
        expect.push_back(testing::eval_term(sig, val, t, row));
      EXPECT_EQ(run_e_row(sig, val, m, row), expect) << i;
    }
  }
}

TEST(EMorphismProperty, NormalFormIsLayeredAndIdempotent) {
  Rng rng(32);
  for (int i = 0; i < 400; ++i) {
    const Signature sig = testing::random_signature(rng, false);
    const EMorphism m = testing::random_emorphism(
        sig, testing::random_schema(sig, rng, 0, 3), rng, 10);
    const EMorphism n = e_normalize(sig, m);
    EXPECT_FALSE(e_typecheck(sig, n)) << i;
    EXPECT_TRUE(e_equal(sig, m, n)) << i;
    EXPECT_TRUE(layer_profile(sig, n)) << i;
    EXPECT_EQ(e_normalize(sig, n), n) << i;
  }
}

TEST(EMorphismProperty, EqualMorphismsShareNormalForm) {
  Rng rng(33);
  for (int i = 0; i < 300; ++i) {
    const Signature sig = testing::random_signature(rng, false);
    const ESchema dom = testing::random_schema(sig, rng, 1, 3);
    const EMorphism a = testing::random_emorphism(sig, dom, rng, 8);
    // Padding with a copy and a discard of the copy changes the slices but
    // not the morphism.
    EMorphism b = a;
    if (!a.cod.empty()) {
      b.slices.push_back({0, EGenerator::copy(a.cod[0])});
      b.slices.push_back({0, EGenerator::discard(a.cod[0])});
    }
    EXPECT_TRUE(e_equal(sig, a, b));
    EXPECT_EQ(e_normalize(sig, a), e_normalize(sig, b)) << i;
  }
}

TEST(EMorphismProperty, ComposeAndTensorMatchTerms) {
  Rng rng(34);
  for (int i = 0; i < 200; ++i) {
    const Signature sig = testing::random_signature(rng, false);
    const ESchema dom = testing::random_schema(sig, rng, 1, 3);
    const EMorphism f = testing::random_emorphism(sig, dom, rng, 5);
    const EMorphism g = testing::random_emorphism(sig, f.cod, rng, 5);
    const auto fg = e_to_terms(sig, e_compose(f, g)).outputs;
    EXPECT_EQ(fg, e_apply_terms(sig, g, e_to_terms(sig, f).outputs));
    const EMorphism t = e_tensor(f, g);
    EXPECT_FALSE(e_typecheck(sig, t));
    EXPECT_EQ(t.dom.size(), f.dom.size() + g.dom.size());
  }
}

} // namespace
} // namespace refinealg
