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
#include "refinealg/export.hpp"
#include "refinealg/signature.hpp"
#include "refinealg/workflow_io.hpp"

#include <gtest/gtest.h>

#include <map>
#include <regex>

namespace refinealg {
namespace {

using testing::Rng;
using Kind = DiagramGraph::Node::Kind;

const std::string kData = REFINEALG_TEST_DATA_DIR;

std::size_t count(const std::string &s, const std::string &needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos;
       p = s.find(needle, p + 1))
    ++n;
  return n;
}

std::map<Kind, int> kinds(const DiagramGraph &g) {
  std::map<Kind, int> k;
  for (const auto &n : g.nodes)
    ++k[n.kind];
  return k;
}

TEST(Export, FullNameGraph) {
  const Signature sig = load_signature_file(kData + "/demo.sig.json");
  const Workflow w = load_workflow_file(kData + "/full_name.json");
  const DiagramGraph g = diagram_graph(sig, w.morphism);
  auto k = kinds(g);
  EXPECT_EQ(k[Kind::Input], 3);
  EXPECT_EQ(k[Kind::Copy], 2);
  EXPECT_EQ(k[Kind::Op], 2);
  EXPECT_EQ(k[Kind::Output], 4);
  const std::string dot = export_dot(sig, w.morphism);
  EXPECT_EQ(dot.rfind("digraph refinealg {", 0), 0u);
  EXPECT_EQ(count(dot, "label=\"concat\""), 1u);
  EXPECT_EQ(count(dot, "label=\"upper\""), 1u);
  EXPECT_EQ(count(dot, " -> "), g.edges.size());
}

TEST(Export, FilterUnionGraph) {
  const Signature sig = load_signature_file(kData + "/demo.sig.json");
  const Workflow w = load_workflow_file(kData + "/merge_lhs.json");
  auto k = kinds(diagram_graph(sig, w.morphism));
  EXPECT_EQ(k[Kind::Filter], 1);
  EXPECT_EQ(k[Kind::Union], 1);
  EXPECT_EQ(export_text(sig, w.morphism),
            "dom [[S,M]]\n"
            "1. sheet 0: filter capital rest [M]\n"
            "   -> [[S,M],[S,M]]\n"
            "2. sheet 0: union\n"
            "   -> [[S,M]]\n"
            "cod [[S,M]]\n");
}

TEST(Export, LayeredSvgPanels) {
  const Signature sig = load_signature_file(kData + "/demo.sig.json");
  const FMorphism id = f_identity({{"S"}});
  EXPECT_EQ(count(export_layered_svg(sig, id), "class=\"panel\""), 1u);
  const Workflow w = load_workflow_file(kData + "/split_big.json");
  const std::string svg = export_layered_svg(sig, w.morphism);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  // One panel before the filter, then two per column afterwards.
  const std::size_t cols = w.morphism.slices.size() + 1;
  EXPECT_EQ(count(svg, "class=\"column\""), cols);
  EXPECT_EQ(count(svg, "class=\"panel\""), 2 + 2 * (cols - 2));
}

TEST(Export, FormatNames) {
  EXPECT_EQ(parse_export_format("dot"), ExportFormat::Dot);
  EXPECT_EQ(parse_export_format("layered-svg"), ExportFormat::LayeredSvg);
  EXPECT_EQ(parse_export_format("text"), ExportFormat::Text);
  EXPECT_THROW(parse_export_format("png"), Error);
}

// Every edge joins existing nodes, inputs have no incoming edges and
// outputs no outgoing ones.
TEST(ExportProperty, GraphsAreWellFormed) {
  Rng rng(91);
  for (int i = 0; i < 200; ++i) {
    const Signature sig = testing::random_signature(rng);
    const FMorphism m = testing::random_walk_fmorphism(
        sig, testing::random_domain(sig, rng), rng, 8);
    const DiagramGraph g = diagram_graph(sig, m);
    std::size_t inputs = 0, outputs = 0;
    for (const auto &n : g.nodes) {
      inputs += n.kind == Kind::Input;
      outputs += n.kind == Kind::Output;
    }
    EXPECT_EQ(inputs, m.dom[0].size());
    std::size_t cod_wires = 0;
    for (const auto &s : m.cod)
      cod_wires += s.size();
    EXPECT_EQ(outputs, cod_wires);
    for (const auto &e : g.edges) {
      ASSERT_LT(e.from, g.nodes.size());
      ASSERT_LT(e.to, g.nodes.size());
      EXPECT_NE(g.nodes[e.to].kind, Kind::Input);
      EXPECT_NE(g.nodes[e.from].kind, Kind::Output);
    }
    EXPECT_NO_THROW(export_diagram(sig, m, ExportFormat::LayeredSvg));
    EXPECT_NO_THROW(export_diagram(sig, m, ExportFormat::Text));
  }
}

} // namespace
} // namespace refinealg
