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
#include "refinealg/oracle.hpp"
#include "refinealg/signature.hpp"
#include "refinealg/table.hpp"
#include "refinealg/workflow_io.hpp"

#include <gtest/gtest.h>

#include <string>

namespace refinealg {
namespace {

using testing::Rng;

const std::string kData = REFINEALG_TEST_DATA_DIR;

TEST(SignatureIo, LoadsDemo) {
  const Signature sig = load_signature_file(kData + "/demo.sig.json");
  EXPECT_TRUE(sig.has_datatype("M"));
  EXPECT_EQ(sig.operation("concat").dom, (ESchema{"S", "S"}));
  EXPECT_EQ(sig.filter("big").dom, ESchema{"M"});
  EXPECT_EQ(parse_signature(serialize_signature(sig)), sig);
}

TEST(SignatureIo, RejectsBadInput) {
  EXPECT_THROW(parse_signature("{"), ParseError);
  EXPECT_THROW(parse_signature(R"({"datatypes": ["A"], "operations": [
      {"name": "f", "dom": ["B"], "cod": ["A"]}], "filters": []})"),
               SignatureError);
  EXPECT_THROW(parse_signature(R"({"datatypes": ["A"], "operations": [
      {"name": "f", "dom": ["A"], "cod": []}], "filters": []})"),
               SignatureError);
  EXPECT_THROW(parse_signature(R"({"datatypes": ["A"], "operations": [],
      "filters": [{"name": "p", "dom": []}]})"),
               SignatureError);
  EXPECT_THROW(parse_signature(R"({"datatypes": ["A", "A"],
      "operations": [], "filters": []})"),
               SignatureError);
  EXPECT_THROW(parse_signature(R"({"datatypes": ["A"], "operations": [
      {"name": "x", "dom": ["A"], "cod": ["A"]}],
      "filters": [{"name": "x", "dom": ["A"]}]})"),
               SignatureError);
}

TEST(SignatureIoProperty, RoundTrip) {
  Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    const Signature sig = testing::random_signature(rng);
    EXPECT_EQ(parse_signature(serialize_signature(sig)), sig);
  }
}

TEST(WorkflowIo, LoadsExamples) {
  const Workflow e = load_workflow_file(kData + "/full_name.json");
  EXPECT_TRUE(e.pure_e);
  EXPECT_EQ(e.emorphism().dom, (ESchema{"S", "S", "M"}));
  EXPECT_FALSE(e.cod_names.empty());
  const Workflow f = load_workflow_file(kData + "/merge_lhs.json");
  EXPECT_FALSE(f.pure_e);
  EXPECT_EQ(f.morphism.slices.size(), 2u);
  EXPECT_EQ(parse_workflow(serialize_workflow(e)).morphism, e.morphism);
  EXPECT_EQ(parse_workflow(serialize_workflow(f)).morphism, f.morphism);
}

TEST(WorkflowIo, RejectsUnknownKeysAndBadNames) {
  EXPECT_THROW(parse_workflow(R"({"dom": [["A"]], "cod": [["A"]],
      "slices": [], "extra": 1})"),
               Error);
  EXPECT_THROW(parse_workflow(R"({"dom": [["A"]], "cod": [["A"]],
      "slices": [], "cod_names": [["a", "b"]]})"),
               Error);
  EXPECT_THROW(parse_workflow("[]"), Error);
}

TEST(WorkflowIoProperty, RoundTrip) {
  Rng rng(62);
  for (int i = 0; i < 200; ++i) {
    const Signature sig = testing::random_signature(rng);
    const FMorphism m = testing::random_walk_fmorphism(
        sig, testing::random_domain(sig, rng), rng, 8);
    EXPECT_EQ(parse_fmorphism(serialize_fmorphism(m)), m);
    const EMorphism e = testing::random_emorphism(
        sig, testing::random_schema(sig, rng, 0, 3), rng);
    EXPECT_EQ(parse_emorphism(serialize_emorphism(e)), e);
  }
}

TEST(ValuationIo, MoneyAndDomains) {
  const Signature sig = load_signature_file(kData + "/demo.sig.json");
  const Valuation val = load_valuation_file(sig, kData + "/demo.valuation.json");
  const TypeDomain &m = val.domain("M");
  const Value v = m.parse("25€");
  EXPECT_EQ(m.render(v), "25€");
  EXPECT_LT(m.parse("3€"), m.parse("20€"));
  EXPECT_THROW(m.parse("abc"), EvalError);
  EXPECT_EQ(parse_valuation(sig, serialize_valuation(val)), val);
  const Row args{m.parse("20€")};
  EXPECT_TRUE(val.test_filter(sig, "big", args));
  const Row names{Value{std::string("de Boer")}};
  EXPECT_FALSE(val.test_filter(sig, "capital", names));
}

TEST(ValuationIo, CoverageIsChecked) {
  const Signature sig = load_signature_file(kData + "/demo.sig.json");
  Valuation val = load_valuation_file(sig, kData + "/demo.valuation.json");
  val.ops.erase("upper");
  EXPECT_THROW(val.check_covers(sig), EvalError);
}

TEST(ValuationIoProperty, RandomFiniteValuationsCover) {
  Rng rng(63);
  for (int i = 0; i < 100; ++i) {
    const Signature sig = testing::random_signature(rng);
    const Valuation val = random_finite_valuation(sig, rng());
    EXPECT_NO_THROW(val.check_covers(sig));
    EXPECT_EQ(parse_valuation(sig, serialize_valuation(val)), val);
  }
}

TEST(Csv, QuotingRoundTrip) {
  Signature sig;
  sig.add_datatype("S");
  Valuation val;
  val.types["S"] = TypeDomain{};
  Table t{{"S", "S"}, {"a,b", "plain"}, {}};
  for (const char *s : {"x", "with \"quotes\"", "line\nbreak", "", " pad "})
    t.rows.push_back({Value{std::string(s)}, Value{std::string("y")}});
  const std::string text = format_csv(t, val);
  EXPECT_EQ(parse_csv(text, t.schema, val), t);
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("ab"), "ab");
}

TEST(Csv, ErrorsCarryPosition) {
  const Signature sig = load_signature_file(kData + "/demo.sig.json");
  const Valuation val = load_valuation_file(sig, kData + "/demo.valuation.json");
  try {
    parse_csv("a,b\nx,1€\ny,oops\n", {"S", "M"}, val);
    FAIL() << "expected EvalError";
  } catch (const EvalError &e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_EQ(e.column(), 1u);
  }
  EXPECT_THROW(parse_csv("a,b\nx\n", {"S", "M"}, val), Error);
}

TEST(Csv, MultisetEquality) {
  Table a{{"S"}, {"c"}, {{Value{std::string("x")}}, {Value{std::string("y")}}}};
  Table b = a;
  std::swap(b.rows[0], b.rows[1]);
  EXPECT_TRUE(multiset_equal(a, b));
  b.rows.push_back(b.rows[0]);
  EXPECT_FALSE(multiset_equal(a, b));
}

} // namespace
} // namespace refinealg
