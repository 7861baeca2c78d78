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

#ifndef REFINEALG_EXPORT_HPP
#define REFINEALG_EXPORT_HPP

#include "refinealg/fmorphism.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace refinealg {

enum class ExportFormat { Dot, LayeredSvg, Text };

/// Parses "dot", "layered-svg" or "text"; throws Error otherwise.
ExportFormat parse_export_format(std::string_view s);

/// Wiring graph of a diagram. Swaps and sheet swaps only reroute edges and
/// get no node.
struct DiagramGraph {
  struct Node {
    enum class Kind { Input, Output, Op, Copy, Discard, Filter, Union, Empty };
    Kind kind;
    std::string label;
    std::size_t sheet = 0; // sheet index at the time the node acts
  };
  struct Edge {
    std::size_t from;
    std::size_t to;
    std::string type;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

DiagramGraph diagram_graph(const Signature &sig, const FMorphism &m);

std::string export_dot(const Signature &sig, const FMorphism &m);
/// One column per step, one stacked panel per sheet alive at that step.
std::string export_layered_svg(const Signature &sig, const FMorphism &m);
std::string export_text(const Signature &sig, const FMorphism &m);

std::string export_diagram(const Signature &sig, const FMorphism &m,
                           ExportFormat format);

} // namespace refinealg

#endif // REFINEALG_EXPORT_HPP
