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
#include "refinealg/term.hpp"

#include <gtest/gtest.h>

namespace refinealg {
namespace {

using testing::Rng;

Term x(std::size_t i) { return Term::var(i); }

TEST(Term, CanonicalText) {
  const Term t = Term::app(
      "alpha", {Term::app("beta", {x(1), x(3)}, 2), x(1)}, 1);
  EXPECT_EQ(t.str(), "alpha(beta(x1,x3)[2],x1)[1]");
  EXPECT_EQ(t.max_var(), 3u);
  EXPECT_EQ(Term::app("c", {}, 1).str(), "c()[1]");
}

TEST(Term, SubstituteWorkedExample) {
  const Term t = parse_term("alpha(beta(x1,x3)[2],x1)[1]");
  const std::vector<Term> subs{x(3), x(4), parse_term("gamma(x1)[3]")};
  EXPECT_EQ(substitute(t, subs).str(),
            "alpha(beta(x3,gamma(x1)[3])[2],x3)[1]");
}

TEST(Term, SubstituteRejectsMissingVariables) {
  const Term t = parse_term("f(x1,x2)[1]");
  const std::vector<Term> subs{x(1)};
  EXPECT_THROW(substitute(t, subs), AlgebraError);
}

TEST(Term, ParseAcceptsWhitespaceAndRejectsGarbage) {
  EXPECT_EQ(parse_term(" f( x1 , g()[1] )[2] ").str(), "f(x1,g()[1])[2]");
  EXPECT_THROW(parse_term("f(x1"), ParseError);
  EXPECT_THROW(parse_term("x0"), ParseError);
  EXPECT_THROW(parse_term("f(x1)[0]"), ParseError);
  EXPECT_THROW(parse_term("f(x1)"), ParseError);
  EXPECT_THROW(parse_term("x1 x2"), ParseError);
}

TEST(Term, CheckTermAgainstSignature) {
  Signature sig;
  sig.add_datatype("A");
  sig.add_operation({"op", {"A", "A"}, {"A", "A"}});
  EXPECT_NO_THROW(check_term(sig, parse_term("op(x1,x2)[2]"), 2));
  EXPECT_THROW(check_term(sig, parse_term("op(x1,x2)[3]"), 2), Error);
  EXPECT_THROW(check_term(sig, parse_term("op(x1)[1]"), 2), Error);
  EXPECT_THROW(check_term(sig, parse_term("op(x1,x3)[1]"), 2), Error);
  EXPECT_THROW(check_term(sig, parse_term("nope(x1)[1]"), 2), Error);
}

TEST(Aff, OrderAndText) {
  const AFF a("f", {x(1)});
  const AFF b("f", {x(2)});
  const AFF c("g", {x(1)});
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_EQ(a.str(), "f(x1)");
  EXPECT_EQ(parse_aff("f(x1, h(x2)[1])").str(), "f(x1,h(x2)[1])");
}

TEST(Cff, TextAndConjunction) {
  const AFF a("f", {x(1)});
  const AFF b("g", {x(2)});
  const CFF c = CFF::of({{b, true}, {a, false}});
  EXPECT_EQ(c.str(), "!f(x1)&g(x2)");
  EXPECT_EQ(CFF().str(), "T");
  EXPECT_EQ(parse_cff("!f(x1) & g(x2)"), c);
  EXPECT_EQ(parse_cff("T"), CFF());
  EXPECT_TRUE(cff_disjoint(c, CFF::atom(a, true)));
  EXPECT_FALSE(cff_disjoint(c, CFF::atom(b, true)));
  EXPECT_THROW(cff_conjoin(c, CFF::atom(a, true)), AlgebraError);
  EXPECT_EQ(cff_conjoin(CFF::atom(a, false), CFF::atom(b, true)), c);
  EXPECT_THROW(CFF::of({{a, true}, {a, false}}), AlgebraError);
}

TEST(Cff, SubstitutionCanCollapseAtoms) {
  const CFF c = CFF::of({{AFF("f", {x(1)}), true}, {AFF("f", {x(2)}), false}});
  const std::vector<Term> same{x(1), x(1)};
  EXPECT_FALSE(substitute(c, same).has_value());
  const std::vector<Term> swap{x(2), x(1)};
  auto s = substitute(c, swap);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->str(), "!f(x1)&f(x2)");
}

// Random closed-under-signature terms for the algebraic laws below.
Term random_untyped_term(Rng &rng, std::size_t vars, std::size_t depth) {
  if (depth == 0 || testing::coin(rng, 0.4))
    return x(testing::uniform(rng, 1, vars));
  std::vector<Term> args;
  const std::size_t n = testing::uniform(rng, 0, 2);
  for (std::size_t i = 0; i < n; ++i)
    args.push_back(random_untyped_term(rng, vars, depth - 1));
  return Term::app(testing::coin(rng) ? "a" : "b", std::move(args),
                   testing::uniform(rng, 1, 2));
}

TEST(TermProperty, PrintParseRoundTrip) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const Term t = random_untyped_term(rng, 3, 4);
    EXPECT_EQ(parse_term(t.str()), t);
  }
}

TEST(TermProperty, SubstitutionIsAssociative) {
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    const Term t = random_untyped_term(rng, 3, 3);
    std::vector<Term> u, v;
    for (int k = 0; k < 3; ++k)
      u.push_back(random_untyped_term(rng, 2, 2));
    for (int k = 0; k < 2; ++k)
      v.push_back(random_untyped_term(rng, 4, 2));
    EXPECT_EQ(substitute(substitute(t, u), v),
              substitute(t, substitute_all(u, v)));
  }
}

TEST(TermProperty, IdentitySubstitutionIsNeutral) {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const Term t = random_untyped_term(rng, 4, 4);
    const auto ids = identity_terms(4);
    EXPECT_EQ(substitute(t, ids), t);
    const std::vector<Term> single{t};
    EXPECT_EQ(substitute(x(1), single), t);
  }
}

} // namespace
} // namespace refinealg
