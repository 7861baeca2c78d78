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

#include "refinealg/emorphism.hpp"

#include "refinealg/error.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace refinealg {

namespace {

std::string schema_str(const ESchema &s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i)
      out += ",";
    out += s[i];
  }
  return out + "]";
}

void require_declared(const Signature &sig, const std::string &type,
                      std::size_t index) {
  if (!sig.has_datatype(type))
    throw TypeError("undeclared datatype \"" + type + "\"", index);
}

} // namespace

std::pair<ESchema, ESchema> generator_ports(const Signature &sig,
                                            const EGenerator &g) {
  switch (g.kind) {
  case EGenerator::Kind::Op: {
    const OpDecl *op = sig.find_operation(g.name);
    if (!op)
      throw TypeError("undeclared operation \"" + g.name + "\"");
    return {op->dom, op->cod};
  }
  case EGenerator::Kind::Copy:
    return {{g.type}, {g.type, g.type}};
  case EGenerator::Kind::Discard:
    return {{g.type}, {}};
  case EGenerator::Kind::Swap:
    return {{g.type, g.type2}, {g.type2, g.type}};
  }
  return {};
}

ESchema apply_slice(const Signature &sig, const ESchema &wires,
                    const ESlice &slice, std::size_t index) {
  const auto &g = slice.gen;
  if (g.kind != EGenerator::Kind::Op) {
    require_declared(sig, g.type, index);
    if (g.kind == EGenerator::Kind::Swap)
      require_declared(sig, g.type2, index);
  }
  std::pair<ESchema, ESchema> ports;
  try {
    ports = generator_ports(sig, g);
  } catch (const TypeError &e) {
    throw TypeError(e.message(), index);
  }
  const auto &[in, out] = ports;
  if (slice.offset + in.size() > wires.size())
    throw TypeError("generator at offset " + std::to_string(slice.offset) +
                        " needs " + std::to_string(in.size()) +
                        " wires but only " + std::to_string(wires.size()) +
                        " exist",
                    index);
  for (std::size_t i = 0; i < in.size(); ++i)
    if (wires[slice.offset + i] != in[i])
      throw TypeError("wire " + std::to_string(slice.offset + i) +
                          " has type " + wires[slice.offset + i] +
                          ", generator expects " + in[i],
                      index);
  ESchema next;
  next.reserve(wires.size() - in.size() + out.size());
  next.insert(next.end(), wires.begin(), wires.begin() + slice.offset);
  next.insert(next.end(), out.begin(), out.end());
  next.insert(next.end(), wires.begin() + slice.offset + in.size(),
              wires.end());
  return next;
}

std::optional<TypeIssue> e_typecheck(const Signature &sig,
                                     const EMorphism &m) {
  for (const auto &t : m.dom)
    if (!sig.has_datatype(t))
      return TypeIssue{TypeError::npos, "undeclared datatype \"" + t + "\""};
  ESchema wires = m.dom;
  for (std::size_t i = 0; i < m.slices.size(); ++i) {
    try {
      wires = apply_slice(sig, wires, m.slices[i], i);
    } catch (const TypeError &e) {
      return TypeIssue{i, e.message()};
    }
  }
  if (wires != m.cod)
    return TypeIssue{TypeError::npos, "diagram ends at " + schema_str(wires) +
                                          " but codomain is " +
                                          schema_str(m.cod)};
  return std::nullopt;
}

void e_require_typed(const Signature &sig, const EMorphism &m) {
  if (auto issue = e_typecheck(sig, m))
    throw TypeError(issue->message, issue->slice);
}

EMorphism e_identity(ESchema schema) { return {schema, schema, {}}; }

EMorphism e_compose(const EMorphism &f, const EMorphism &g) {
  if (f.cod != g.dom)
    throw TypeError("cannot compose: " + schema_str(f.cod) + " vs " +
                    schema_str(g.dom));
  EMorphism out{f.dom, g.cod, f.slices};
  out.slices.insert(out.slices.end(), g.slices.begin(), g.slices.end());
  return out;
}

EMorphism e_tensor(const EMorphism &f, const EMorphism &g) {
  EMorphism out;
  out.dom = f.dom;
  out.dom.insert(out.dom.end(), g.dom.begin(), g.dom.end());
  out.cod = f.cod;
  out.cod.insert(out.cod.end(), g.cod.begin(), g.cod.end());
  out.slices = f.slices;
  for (auto s : g.slices) {
    s.offset += f.cod.size();
    out.slices.push_back(std::move(s));
  }
  return out;
}

std::vector<Term> e_apply_terms(const Signature &sig, const EMorphism &m,
                                std::vector<Term> wires) {
  for (const auto &slice : m.slices) {
    const auto off = static_cast<std::ptrdiff_t>(slice.offset);
    switch (slice.gen.kind) {
    case EGenerator::Kind::Copy:
      wires.insert(wires.begin() + off, wires[slice.offset]);
      break;
    case EGenerator::Kind::Discard:
      wires.erase(wires.begin() + off);
      break;
    case EGenerator::Kind::Swap:
      std::swap(wires[slice.offset], wires[slice.offset + 1]);
      break;
    case EGenerator::Kind::Op: {
      const OpDecl &op = sig.operation(slice.gen.name);
      std::vector<Term> args(wires.begin() + off,
                             wires.begin() + off +
                                 static_cast<std::ptrdiff_t>(op.dom.size()));
      std::vector<Term> outs;
      outs.reserve(op.cod.size());
      for (std::size_t k = 1; k <= op.cod.size(); ++k)
        outs.push_back(Term::app(op.name, args, k));
      wires.erase(wires.begin() + off,
                  wires.begin() + off +
                      static_cast<std::ptrdiff_t>(op.dom.size()));
      wires.insert(wires.begin() + off, outs.begin(), outs.end());
      break;
    }
    }
  }
  return wires;
}

ETermTuple e_to_terms(const Signature &sig, const EMorphism &m) {
  return {e_apply_terms(sig, m, identity_terms(m.dom.size()))};
}

bool e_equal(const Signature &sig, const EMorphism &a, const EMorphism &b) {
  if (a.dom != b.dom || a.cod != b.cod)
    throw TypeError("e_equal on different boundaries: " + schema_str(a.dom) +
                    "->" + schema_str(a.cod) + " vs " + schema_str(b.dom) +
                    "->" + schema_str(b.cod));
  return e_to_terms(sig, a) == e_to_terms(sig, b);
}

std::string term_type(const Signature &sig, const ESchema &dom,
                      const Term &t) {
  if (t.is_var()) {
    if (t.var_index() > dom.size())
      throw AlgebraError("variable " + t.str() + " outside the domain");
    return dom[t.var_index() - 1];
  }
  const OpDecl &op = sig.operation(t.op());
  if (t.proj() > op.cod.size())
    throw AlgebraError("projection out of range in " + t.str());
  return op.cod[t.proj() - 1];
}

namespace {

/// Type of `t` over `dom`, checking arities and argument types throughout.
std::string checked_type(const Signature &sig, const ESchema &dom,
                         const Term &t) {
  if (t.is_var())
    return term_type(sig, dom, t);
  const OpDecl &op = sig.operation(t.op());
  if (op.dom.size() != t.args().size())
    throw AlgebraError("operation " + op.name + " expects " +
                       std::to_string(op.dom.size()) + " arguments in " +
                       t.str());
  for (std::size_t i = 0; i < op.dom.size(); ++i)
    if (checked_type(sig, dom, t.args()[i]) != op.dom[i])
      throw AlgebraError("argument " + std::to_string(i + 1) + " of " +
                         t.str() + " has the wrong type");
  return term_type(sig, dom, t);
}

/// Flattened term forest used to schedule the operation layer.
struct ForestNode {
  Term term;
  std::vector<std::size_t> children;
  bool computed = false;
};

std::size_t add_tree(std::vector<ForestNode> &nodes, const Term &t,
                     std::vector<std::size_t> &leaves) {
  std::size_t id = nodes.size();
  nodes.push_back({t, {}, t.is_var()});
  if (t.is_var()) {
    leaves.push_back(t.var_index());
    return id;
  }
  std::vector<std::size_t> kids;
  for (const auto &a : t.args())
    kids.push_back(add_tree(nodes, a, leaves));
  nodes[id].children = std::move(kids);
  return id;
}

/// Depth-first search for the leftmost node whose inputs are all computed.
/// `wire` tracks the wire index of the current position.
std::optional<std::pair<std::size_t, std::size_t>>
find_ready(const std::vector<ForestNode> &nodes, std::size_t id,
           std::size_t &wire) {
  const auto &n = nodes[id];
  if (n.computed) {
    ++wire;
    return std::nullopt;
  }
  bool ready = std::all_of(n.children.begin(), n.children.end(),
                           [&](std::size_t c) { return nodes[c].computed; });
  if (ready)
    return std::make_pair(id, wire);
  for (auto c : n.children)
    if (auto r = find_ready(nodes, c, wire))
      return r;
  return std::nullopt;
}

} // namespace

EMorphism e_from_terms(const Signature &sig, const ESchema &dom,
                       std::span<const Term> terms) {
  EMorphism out;
  out.dom = dom;
  for (const auto &t : terms)
    out.cod.push_back(checked_type(sig, dom, t));

  std::vector<ForestNode> nodes;
  std::vector<std::size_t> roots;
  std::vector<std::size_t> leaves; // variable index per leaf, in wire order
  for (const auto &t : terms)
    roots.push_back(add_tree(nodes, t, leaves));

  // Copy/discard layer: input wire i becomes count[i] adjacent copies.
  std::vector<std::size_t> count(dom.size() + 1, 0);
  for (auto v : leaves)
    ++count[v];
  std::size_t pos = 0;
  for (std::size_t i = 1; i <= dom.size(); ++i) {
    if (count[i] == 0) {
      out.slices.push_back({pos, EGenerator::discard(dom[i - 1])});
      continue;
    }
    for (std::size_t k = 1; k < count[i]; ++k)
      out.slices.push_back({pos, EGenerator::copy(dom[i - 1])});
    pos += count[i];
  }

  // Swap layer: the k-th copy of x_v goes to the k-th occurrence of x_v.
  std::vector<std::pair<std::size_t, std::size_t>> current, target;
  for (std::size_t i = 1; i <= dom.size(); ++i)
    for (std::size_t k = 0; k < count[i]; ++k)
      current.emplace_back(i, k);
  {
    std::vector<std::size_t> seen(dom.size() + 1, 0);
    for (auto v : leaves)
      target.emplace_back(v, seen[v]++);
  }
  for (std::size_t j = 0; j < target.size(); ++j) {
    auto p = static_cast<std::size_t>(
        std::find(current.begin() + static_cast<std::ptrdiff_t>(j),
                  current.end(), target[j]) -
        current.begin());
    for (std::size_t q = p; q > j; --q) {
      out.slices.push_back(
          {q - 1, EGenerator::swap(dom[current[q - 1].first - 1],
                                   dom[current[q].first - 1])});
      std::swap(current[q - 1], current[q]);
    }
  }

  // Operation layer: repeatedly evaluate the leftmost ready application.
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> ready;
    std::size_t wire = 0;
    for (auto r : roots)
      if ((ready = find_ready(nodes, r, wire)))
        break;
    if (!ready)
      break;
    auto [id, offset] = *ready;
    const Term &t = nodes[id].term;
    const OpDecl &op = sig.operation(t.op());
    out.slices.push_back({offset, EGenerator::op(op.name)});
    for (std::size_t k = 1; k < t.proj(); ++k)
      out.slices.push_back({offset, EGenerator::discard(op.cod[k - 1])});
    for (std::size_t k = t.proj() + 1; k <= op.cod.size(); ++k)
      out.slices.push_back({offset + 1, EGenerator::discard(op.cod[k - 1])});
    nodes[id].computed = true;
  }
  return out;
}

EMorphism e_normalize(const Signature &sig, const EMorphism &m) {
  e_require_typed(sig, m);
  auto terms = e_to_terms(sig, m);
  return e_from_terms(sig, m.dom, terms.outputs);
}

std::optional<LayerProfile> layer_profile(const Signature &sig,
                                          const EMorphism &m) {
  LayerProfile p;
  int phase = 0;
  // Output wires of the last operation not yet accounted for.
  std::size_t out_lo = 0, out_hi = 0;
  bool after_op = false;
  std::size_t i = 0;
  for (; i < m.slices.size(); ++i) {
    const auto &s = m.slices[i];
    switch (s.gen.kind) {
    case EGenerator::Kind::Copy:
      if (phase != 0)
        return std::nullopt;
      break;
    case EGenerator::Kind::Discard:
      if (phase == 0)
        break;
      if (phase == 1 || !after_op || s.offset < out_lo || s.offset >= out_hi ||
          out_hi - out_lo < 2)
        return std::nullopt;
      --out_hi;
      break;
    case EGenerator::Kind::Swap:
      if (phase == 2)
        return std::nullopt;
      if (phase == 0) {
        p.copy_discard = {0, i};
        phase = 1;
      }
      break;
    case EGenerator::Kind::Op: {
      const OpDecl *op = sig.find_operation(s.gen.name);
      if (!op)
        return std::nullopt;
      if (phase == 0)
        p.copy_discard = {0, i};
      if (phase <= 1)
        p.swaps = {p.copy_discard.end, i};
      phase = 2;
      after_op = true;
      out_lo = s.offset;
      out_hi = s.offset + op->cod.size();
      break;
    }
    }
  }
  if (phase == 0) {
    p.copy_discard = {0, i};
    p.swaps = {i, i};
    p.ops = {i, i};
  } else if (phase == 1) {
    p.swaps = {p.copy_discard.end, i};
    p.ops = {i, i};
  } else {
    p.ops = {p.swaps.end, i};
  }
  return p;
}

} // namespace refinealg
