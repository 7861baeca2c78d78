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

#include "refinealg/export.hpp"

#include "refinealg/error.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace refinealg {

ExportFormat parse_export_format(std::string_view s) {
  if (s == "dot")
    return ExportFormat::Dot;
  if (s == "layered-svg")
    return ExportFormat::LayeredSvg;
  if (s == "text")
    return ExportFormat::Text;
  throw Error("unknown export format '" + std::string(s) +
              "' (expected dot, layered-svg or text)");
}

namespace {

using NodeKind = DiagramGraph::Node::Kind;

struct Wire {
  std::size_t node;
  std::string type;
};

class GraphBuilder {
public:
  explicit GraphBuilder(const Signature &sig) : sig_(sig) {}

  DiagramGraph build(const FMorphism &m) {
    f_require_typed(sig_, m);
    for (std::size_t s = 0; s < m.dom.size(); ++s) {
      std::vector<Wire> wires;
      for (std::size_t i = 0; i < m.dom[s].size(); ++i) {
        auto n = node(NodeKind::Input,
                      std::to_string(s) + "." + std::to_string(i) + ":" +
                          m.dom[s][i],
                      s);
        wires.push_back({n, m.dom[s][i]});
      }
      sheets_.push_back(std::move(wires));
    }
    for (const auto &slice : m.slices)
      step(slice);
    for (std::size_t s = 0; s < sheets_.size(); ++s)
      for (std::size_t i = 0; i < sheets_[s].size(); ++i) {
        const auto &w = sheets_[s][i];
        auto n = node(NodeKind::Output,
                      std::to_string(s) + "." + std::to_string(i) + ":" +
                          w.type,
                      s);
        edge(w, n);
      }
    return std::move(g_);
  }

private:
  std::size_t node(NodeKind kind, std::string label, std::size_t sheet) {
    g_.nodes.push_back({kind, std::move(label), sheet});
    return g_.nodes.size() - 1;
  }
  void edge(const Wire &w, std::size_t to) {
    g_.edges.push_back({w.node, to, w.type});
  }
  std::vector<Wire> consume(const std::vector<Wire> &wires, std::size_t n) {
    for (const auto &w : wires)
      edge(w, n);
    std::vector<Wire> out;
    for (const auto &w : wires)
      out.push_back({n, w.type});
    return out;
  }

  void lift(std::size_t s, const EMorphism &e) {
    auto &wires = sheets_[s];
    for (const auto &es : e.slices) {
      const auto k = static_cast<std::ptrdiff_t>(es.offset);
      switch (es.gen.kind) {
      case EGenerator::Kind::Copy: {
        auto n = node(NodeKind::Copy, "copy " + es.gen.type, s);
        edge(wires[es.offset], n);
        wires[es.offset] = {n, es.gen.type};
        wires.insert(wires.begin() + k, Wire{n, es.gen.type});
        break;
      }
      case EGenerator::Kind::Discard: {
        auto n = node(NodeKind::Discard, "discard " + es.gen.type, s);
        edge(wires[es.offset], n);
        wires.erase(wires.begin() + k);
        break;
      }
      case EGenerator::Kind::Swap:
        std::swap(wires[es.offset], wires[es.offset + 1]);
        break;
      case EGenerator::Kind::Op: {
        const auto &decl = sig_.operation(es.gen.name);
        const auto len = static_cast<std::ptrdiff_t>(decl.dom.size());
        auto n = node(NodeKind::Op, decl.name, s);
        for (auto it = wires.begin() + k; it != wires.begin() + k + len; ++it)
          edge(*it, n);
        wires.erase(wires.begin() + k, wires.begin() + k + len);
        std::vector<Wire> out;
        for (const auto &t : decl.cod)
          out.push_back({n, t});
        wires.insert(wires.begin() + k, out.begin(), out.end());
        break;
      }
      }
    }
  }

  void step(const FSlice &slice) {
    const auto s = slice.sheet;
    const auto at = sheets_.begin() + static_cast<std::ptrdiff_t>(s);
    const auto &g = slice.gen;
    switch (g.kind) {
    case FGenerator::Kind::Lift:
      lift(s, g.lift);
      break;
    case FGenerator::Kind::Filter: {
      auto n = node(NodeKind::Filter, g.filter, s);
      auto out = consume(sheets_[s], n);
      sheets_[s] = out;
      sheets_.insert(at + 1, std::move(out));
      break;
    }
    case FGenerator::Kind::Union: {
      auto n = node(NodeKind::Union, "union", s);
      consume(sheets_[s + 1], n);
      sheets_[s] = consume(sheets_[s], n);
      sheets_.erase(at + 1);
      break;
    }
    case FGenerator::Kind::Empty: {
      auto n = node(NodeKind::Empty, "empty", s);
      std::vector<Wire> out;
      for (const auto &t : g.a)
        out.push_back({n, t});
      sheets_.insert(at, std::move(out));
      break;
    }
    case FGenerator::Kind::SheetSwap:
      std::swap(sheets_[s], sheets_[s + 1]);
      break;
    }
  }

  const Signature &sig_;
  DiagramGraph g_;
  std::vector<std::vector<Wire>> sheets_;
};

std::string dot_escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

std::string xml_escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '&':
      out += "&amp;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

const char *dot_shape(NodeKind k) {
  switch (k) {
  case NodeKind::Input:
  case NodeKind::Output:
    return "plaintext";
  case NodeKind::Op:
    return "box";
  case NodeKind::Copy:
  case NodeKind::Discard:
    return "point";
  case NodeKind::Filter:
    return "diamond";
  case NodeKind::Union:
    return "invtriangle";
  case NodeKind::Empty:
    return "circle";
  }
  return "box";
}

std::string e_slice_text(const EGenerator &g, std::size_t offset) {
  switch (g.kind) {
  case EGenerator::Kind::Op:
    return "op " + g.name + " @" + std::to_string(offset);
  case EGenerator::Kind::Copy:
    return "copy " + g.type + " @" + std::to_string(offset);
  case EGenerator::Kind::Discard:
    return "discard " + g.type + " @" + std::to_string(offset);
  case EGenerator::Kind::Swap:
    return "swap " + g.type + "," + g.type2 + " @" + std::to_string(offset);
  }
  return "?";
}

std::string slice_label(const FGenerator &g) {
  switch (g.kind) {
  case FGenerator::Kind::Lift:
    return "lift";
  case FGenerator::Kind::Filter:
    return "filter " + g.filter;
  case FGenerator::Kind::Union:
    return "union";
  case FGenerator::Kind::Empty:
    return "empty";
  case FGenerator::Kind::SheetSwap:
    return "sheet swap";
  }
  return "?";
}

std::vector<FSchema> states_of(const Signature &sig, const FMorphism &m) {
  f_require_typed(sig, m);
  std::vector<FSchema> states{m.dom};
  for (std::size_t i = 0; i < m.slices.size(); ++i)
    states.push_back(apply_fslice(sig, states.back(), m.slices[i], i));
  return states;
}

} // namespace

DiagramGraph diagram_graph(const Signature &sig, const FMorphism &m) {
  return GraphBuilder(sig).build(m);
}

std::string export_dot(const Signature &sig, const FMorphism &m) {
  const auto g = diagram_graph(sig, m);
  std::ostringstream out;
  out << "digraph refinealg {\n  rankdir=LR;\n  node [fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto &n = g.nodes[i];
    out << "  n" << i << " [label=\"" << dot_escape(n.label) << "\", shape="
        << dot_shape(n.kind) << "];\n";
  }
  for (const auto &e : g.edges)
    out << "  n" << e.from << " -> n" << e.to << " [label=\""
        << dot_escape(e.type) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string export_text(const Signature &sig, const FMorphism &m) {
  const auto states = states_of(sig, m);
  std::ostringstream out;
  out << "dom " << schema_string(m.dom) << "\n";
  for (std::size_t i = 0; i < m.slices.size(); ++i) {
    const auto &sl = m.slices[i];
    out << i + 1 << ". sheet " << sl.sheet << ": " << slice_label(sl.gen);
    if (sl.gen.kind == FGenerator::Kind::Filter)
      out << " rest " << schema_string(sl.gen.rest);
    out << "\n";
    if (sl.gen.kind == FGenerator::Kind::Lift)
      for (const auto &es : sl.gen.lift.slices)
        out << "     " << e_slice_text(es.gen, es.offset) << "\n";
    out << "   -> " << schema_string(states[i + 1]) << "\n";
  }
  out << "cod " << schema_string(m.cod) << "\n";
  return out.str();
}

std::string export_layered_svg(const Signature &sig, const FMorphism &m) {
  const auto states = states_of(sig, m);
  constexpr int kPanelW = 110, kColW = 190, kMargin = 20, kGap = 12,
                kWireH = 16, kPad = 10;
  auto panel_h = [&](const ESchema &s) {
    return 2 * kPad + kWireH * std::max<int>(1, static_cast<int>(s.size()));
  };
  // Top y of every panel per column.
  std::vector<std::vector<int>> tops;
  int height = 0;
  for (const auto &st : states) {
    std::vector<int> ys;
    int y = kMargin;
    for (const auto &sheet : st) {
      ys.push_back(y);
      y += panel_h(sheet) + kGap;
    }
    height = std::max(height, y);
    tops.push_back(std::move(ys));
  }
  height = std::max(height, 2 * kMargin) + kMargin;
  const int width = 2 * kMargin + static_cast<int>(states.size() - 1) * kColW +
                    kPanelW;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"Helvetica\" "
      << "font-size=\"11\">\n";
  auto col_x = [&](std::size_t t) {
    return kMargin + static_cast<int>(t) * kColW;
  };
  auto mid = [&](std::size_t t, std::size_t s) {
    return tops[t][s] + panel_h(states[t][s]) / 2;
  };
  auto connect = [&](std::size_t t, std::size_t from, std::size_t to,
                     bool dashed = false) {
    out << "  <line x1=\"" << col_x(t) + kPanelW << "\" y1=\"" << mid(t, from)
        << "\" x2=\"" << col_x(t + 1) << "\" y2=\"" << mid(t + 1, to)
        << "\" stroke=\"#555\"" << (dashed ? " stroke-dasharray=\"4 3\"" : "")
        << "/>\n";
  };

  for (std::size_t t = 0; t < states.size(); ++t) {
    out << "  <g class=\"column\" data-step=\"" << t << "\">\n";
    for (std::size_t s = 0; s < states[t].size(); ++s) {
      const auto &sheet = states[t][s];
      const int x = col_x(t), y = tops[t][s];
      out << "    <rect class=\"panel\" x=\"" << x << "\" y=\"" << y
          << "\" width=\"" << kPanelW << "\" height=\"" << panel_h(sheet)
          << "\" fill=\"#f4f4f8\" stroke=\"#333\"/>\n";
      for (std::size_t i = 0; i < sheet.size(); ++i) {
        const int wy = y + kPad + kWireH * static_cast<int>(i) + kWireH / 2;
        out << "    <line x1=\"" << x << "\" y1=\"" << wy << "\" x2=\""
            << x + kPanelW << "\" y2=\"" << wy << "\" stroke=\"#888\"/>\n";
        out << "    <text x=\"" << x + 4 << "\" y=\"" << wy - 2 << "\">"
            << xml_escape(sheet[i]) << "</text>\n";
      }
    }
    out << "  </g>\n";
  }

  for (std::size_t t = 0; t + 1 < states.size(); ++t) {
    const auto &sl = m.slices[t];
    const auto [in, outs] = generator_sheets(sig, sl.gen);
    const std::size_t s = sl.sheet;
    for (std::size_t i = 0; i < states[t].size(); ++i) {
      if (i < s)
        connect(t, i, i);
      else if (i >= s + in.size())
        connect(t, i, i - in.size() + outs.size());
    }
    switch (sl.gen.kind) {
    case FGenerator::Kind::Lift:
      connect(t, s, s);
      break;
    case FGenerator::Kind::Filter:
      connect(t, s, s);
      connect(t, s, s + 1, true);
      break;
    case FGenerator::Kind::Union:
      connect(t, s, s);
      connect(t, s + 1, s);
      break;
    case FGenerator::Kind::Empty:
      break;
    case FGenerator::Kind::SheetSwap:
      connect(t, s, s + 1);
      connect(t, s + 1, s);
      break;
    }
    const int lx = col_x(t) + kPanelW + 8;
    const int ly = sl.gen.kind == FGenerator::Kind::Empty
                       ? tops[t + 1][s] + 12
                       : (s < tops[t].size() ? tops[t][s] : kMargin) - 2;
    std::string label = slice_label(sl.gen);
    if (sl.gen.kind == FGenerator::Kind::Lift) {
      std::string body;
      for (const auto &es : sl.gen.lift.slices)
        if (es.gen.kind == EGenerator::Kind::Op)
          body += (body.empty() ? "" : ", ") + es.gen.name;
      if (!body.empty())
        label += " " + body;
    }
    out << "  <text class=\"step\" x=\"" << lx << "\" y=\"" << std::max(ly, 10)
        << "\" fill=\"#a03\">" << xml_escape(label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string export_diagram(const Signature &sig, const FMorphism &m,
                           ExportFormat format) {
  switch (format) {
  case ExportFormat::Dot:
    return export_dot(sig, m);
  case ExportFormat::LayeredSvg:
    return export_layered_svg(sig, m);
  case ExportFormat::Text:
    return export_text(sig, m);
  }
  return {};
}

} // namespace refinealg
