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

#include "refinealg/normal_form.hpp"

#include "refinealg/error.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace refinealg {

namespace {

// Binary decision tree over AFFs. Leaves carry the output sheet and the
// column terms (over the domain variables) that reach it.
struct Node {
  std::optional<AFF> atom;
  std::size_t on_true = 0;
  std::size_t on_false = 0;
  std::size_t target = 0;
  std::vector<Term> terms;

  bool leaf() const { return !atom.has_value(); }
};

struct Tree {
  std::vector<Node> nodes;
  std::size_t root = 0;

  std::size_t add_leaf(std::size_t target, std::vector<Term> terms) {
    nodes.push_back({std::nullopt, 0, 0, target, std::move(terms)});
    return nodes.size() - 1;
  }
  std::size_t add_split(AFF atom, std::size_t t, std::size_t f) {
    nodes.push_back({std::move(atom), t, f, 0, {}});
    return nodes.size() - 1;
  }
};

// ---- symbolic compilation of a diagram into a decision tree ----

struct Branch {
  std::map<AFF, bool> path;
  std::vector<Term> terms;
  std::size_t node = 0; // placeholder node in the tree being built
};

Tree compile(const Signature &sig, const FMorphism &m) {
  // Tree nodes are created as placeholders and filled in as branches split
  // or reach the codomain.
  Tree tree;
  tree.nodes.push_back({});
  std::vector<std::vector<Branch>> sheets(1);
  sheets[0].push_back({{}, identity_terms(m.dom[0].size()), 0});

  for (const auto &slice : m.slices) {
    const auto s = slice.sheet;
    const auto &g = slice.gen;
    switch (g.kind) {
    case FGenerator::Kind::Lift:
      for (auto &b : sheets[s])
        b.terms = e_apply_terms(sig, g.lift, std::move(b.terms));
      break;
    case FGenerator::Kind::Filter: {
      const std::size_t a = sig.filter(g.filter).dom.size();
      std::vector<Branch> accepted, rejected;
      for (auto &b : sheets[s]) {
        AFF atom(g.filter, std::vector<Term>(
                               b.terms.begin(),
                               b.terms.begin() + static_cast<std::ptrdiff_t>(a)));
        if (auto it = b.path.find(atom); it != b.path.end()) {
          (it->second ? accepted : rejected).push_back(std::move(b));
          continue;
        }
        const std::size_t t = tree.nodes.size();
        tree.nodes.push_back({});
        tree.nodes.push_back({});
        tree.nodes[b.node].atom = atom;
        tree.nodes[b.node].on_true = t;
        tree.nodes[b.node].on_false = t + 1;
        Branch yes{b.path, b.terms, t};
        yes.path.emplace(atom, true);
        Branch no{std::move(b.path), std::move(b.terms), t + 1};
        no.path.emplace(std::move(atom), false);
        accepted.push_back(std::move(yes));
        rejected.push_back(std::move(no));
      }
      sheets[s] = std::move(accepted);
      sheets.insert(sheets.begin() + static_cast<std::ptrdiff_t>(s) + 1,
                    std::move(rejected));
      break;
    }
    case FGenerator::Kind::Union: {
      auto &dst = sheets[s];
      for (auto &b : sheets[s + 1])
        dst.push_back(std::move(b));
      sheets.erase(sheets.begin() + static_cast<std::ptrdiff_t>(s) + 1);
      break;
    }
    case FGenerator::Kind::Empty:
      sheets.insert(sheets.begin() + static_cast<std::ptrdiff_t>(s),
                    std::vector<Branch>{});
      break;
    case FGenerator::Kind::SheetSwap:
      std::swap(sheets[s], sheets[s + 1]);
      break;
    }
  }
  for (std::size_t j = 0; j < sheets.size(); ++j)
    for (auto &b : sheets[j]) {
      tree.nodes[b.node].target = j;
      tree.nodes[b.node].terms = std::move(b.terms);
    }
  return tree;
}

// ---- layout of a tree as a normal form ----

void preorder(const Tree &t, std::size_t n, std::vector<std::size_t> &out) {
  out.push_back(n);
  if (!t.nodes[n].leaf()) {
    preorder(t, t.nodes[n].on_true, out);
    preorder(t, t.nodes[n].on_false, out);
  }
}

// Filter application order. In tree order each split follows its parent in
// preorder; in sorted order splits are listed by atom, ties in preorder.
// Either way a parent precedes its children.
std::vector<std::size_t> split_schedule(const Tree &t, bool sorted) {
  std::vector<std::size_t> order;
  preorder(t, t.root, order);
  std::vector<std::size_t> splits;
  for (auto n : order)
    if (!t.nodes[n].leaf())
      splits.push_back(n);
  if (sorted)
    std::stable_sort(splits.begin(), splits.end(),
                     [&](std::size_t a, std::size_t b) {
                       return *t.nodes[a].atom < *t.nodes[b].atom;
                     });
  return splits;
}

FNormalForm layout(const Signature &sig, const ESchema &dom,
                   const FSchema &cod, const Tree &tree, bool sorted) {
  std::vector<std::size_t> order;
  preorder(tree, tree.root, order);

  // Columns of W: one block per distinct leaf tuple, then any extra copies
  // of terms the filters read.
  std::vector<Term> W;
  std::map<std::vector<Term>, std::size_t> block_start;
  for (auto n : order) {
    const Node &node = tree.nodes[n];
    if (!node.leaf())
      continue;
    if (block_start.emplace(node.terms, W.size()).second)
      W.insert(W.end(), node.terms.begin(), node.terms.end());
  }
  {
    std::map<Term, std::size_t> have;
    for (const auto &t : W)
      ++have[t];
    for (auto n : order) {
      const Node &node = tree.nodes[n];
      if (node.leaf())
        continue;
      std::map<Term, std::size_t> need;
      for (const auto &t : node.atom->args())
        ++need[t];
      for (const auto &t : node.atom->args()) {
        auto &h = have[t];
        if (h < need[t]) {
          W.push_back(t);
          ++h;
        }
      }
    }
  }

  FNormalForm nf;
  nf.w = e_from_terms(sig, dom, W);
  nf.cod = cod;

  // x: apply the splits, tracking which tree node sits on which sheet.
  std::vector<std::size_t> on_sheet{tree.root};
  for (auto n : split_schedule(tree, sorted)) {
    const Node &node = tree.nodes[n];
    auto pos = static_cast<std::size_t>(
        std::find(on_sheet.begin(), on_sheet.end(), n) - on_sheet.begin());
    std::vector<std::size_t> cols;
    for (const auto &arg : node.atom->args()) {
      for (std::size_t c = 0; c < W.size(); ++c)
        if (W[c] == arg && std::find(cols.begin(), cols.end(), c) == cols.end()) {
          cols.push_back(c);
          break;
        }
    }
    nf.x.push_back({pos, *node.atom, std::move(cols)});
    on_sheet[pos] = node.on_false;
    on_sheet.insert(on_sheet.begin() + static_cast<std::ptrdiff_t>(pos),
                    node.on_true);
  }

  // y and z, one entry per leaf sheet.
  for (auto n : on_sheet) {
    const Node &leaf = tree.nodes[n];
    const std::size_t b = block_start.at(leaf.terms);
    std::vector<std::size_t> dropped;
    for (std::size_t c = 0; c < W.size(); ++c)
      if (c < b || c >= b + leaf.terms.size())
        dropped.push_back(c);
    nf.y.push_back(std::move(dropped));
    nf.z.push_back(leaf.target);
  }
  return nf;
}

// ---- reading a tree back from a normal form ----

Tree tree_of(const Signature &sig, const FNormalForm &nf) {
  Tree tree;
  tree.nodes.push_back({});
  std::vector<std::size_t> on_sheet{0};
  const auto W = e_to_terms(sig, nf.w).outputs;
  for (const auto &fa : nf.x) {
    if (fa.sheet >= on_sheet.size())
      throw AlgebraError("filter application outside the current sheets");
    const std::size_t n = on_sheet[fa.sheet];
    const std::size_t t = tree.nodes.size();
    tree.nodes.push_back({});
    tree.nodes.push_back({});
    tree.nodes[n].atom = fa.aff;
    tree.nodes[n].on_true = t;
    tree.nodes[n].on_false = t + 1;
    on_sheet[fa.sheet] = t + 1;
    on_sheet.insert(on_sheet.begin() + static_cast<std::ptrdiff_t>(fa.sheet),
                    t);
  }
  if (on_sheet.size() != nf.y.size() || on_sheet.size() != nf.z.size())
    throw AlgebraError("normal form has inconsistent leaf counts");
  for (std::size_t l = 0; l < on_sheet.size(); ++l) {
    Node &leaf = tree.nodes[on_sheet[l]];
    leaf.target = nf.z[l];
    for (std::size_t c = 0; c < W.size(); ++c)
      if (!std::binary_search(nf.y[l].begin(), nf.y[l].end(), c))
        leaf.terms.push_back(W[c]);
  }
  return tree;
}

struct LeafInfo {
  std::map<AFF, bool> path;
  std::size_t target;
  std::vector<Term> terms;
};

void collect_leaves(const Tree &t, std::size_t n, std::map<AFF, bool> &path,
                    std::vector<LeafInfo> &out) {
  const Node &node = t.nodes[n];
  if (node.leaf()) {
    out.push_back({path, node.target, node.terms});
    return;
  }
  // A repeated atom on a path only has one live child.
  if (auto it = path.find(*node.atom); it != path.end()) {
    collect_leaves(t, it->second ? node.on_true : node.on_false, path, out);
    return;
  }
  path.emplace(*node.atom, true);
  collect_leaves(t, node.on_true, path, out);
  path[*node.atom] = false;
  collect_leaves(t, node.on_false, path, out);
  path.erase(*node.atom);
}

bool same_subtree(const Tree &t, std::size_t a, std::size_t b) {
  const Node &x = t.nodes[a];
  const Node &y = t.nodes[b];
  if (x.leaf() != y.leaf())
    return false;
  if (x.leaf())
    return x.target == y.target && x.terms == y.terms;
  return *x.atom == *y.atom && same_subtree(t, x.on_true, y.on_true) &&
         same_subtree(t, x.on_false, y.on_false);
}

// Reduced ordered decision tree of the function computed by `leaves`.
std::size_t build_reduced(Tree &out, const std::vector<AFF> &atoms,
                          std::size_t i, const std::vector<const LeafInfo *> &live) {
  bool uniform = true;
  for (const auto *l : live)
    if (l->target != live.front()->target || l->terms != live.front()->terms) {
      uniform = false;
      break;
    }
  if (uniform)
    return out.add_leaf(live.front()->target, live.front()->terms);
  if (i == atoms.size())
    throw AlgebraError("decision tree branches are not disjoint");

  std::vector<const LeafInfo *> yes, no;
  for (const auto *l : live) {
    auto it = l->path.find(atoms[i]);
    if (it == l->path.end() || it->second)
      yes.push_back(l);
    if (it == l->path.end() || !it->second)
      no.push_back(l);
  }
  const std::size_t t = build_reduced(out, atoms, i + 1, yes);
  const std::size_t f = build_reduced(out, atoms, i + 1, no);
  if (same_subtree(out, t, f))
    return t;
  return out.add_split(atoms[i], t, f);
}

bool is_swap_only(const EMorphism &m) {
  return std::all_of(m.slices.begin(), m.slices.end(), [](const ESlice &s) {
    return s.gen.kind == EGenerator::Kind::Swap;
  });
}

bool is_discard_only(const EMorphism &m) {
  return std::all_of(m.slices.begin(), m.slices.end(), [](const ESlice &s) {
    return s.gen.kind == EGenerator::Kind::Discard;
  });
}

FMorphism lift_at(FMorphism acc, std::size_t sheet, EMorphism e) {
  acc.slices.push_back({sheet, FGenerator::make_lift(std::move(e))});
  return acc;
}

} // namespace

FNormalForm f_decompose(const Signature &sig, const FMorphism &m) {
  if (!single_sheet(m.dom))
    throw AlgebraError("decomposition needs a single-sheet domain, got " +
                       schema_string(m.dom));
  f_require_typed(sig, m);
  return layout(sig, m.dom[0], m.cod, compile(sig, m), false);
}

FNormalForm f_sort_filters(const Signature &sig, const FNormalForm &nf) {
  Tree tree = tree_of(sig, nf);
  std::vector<LeafInfo> leaves;
  std::map<AFF, bool> path;
  collect_leaves(tree, tree.root, path, leaves);

  std::set<AFF> atom_set;
  for (const auto &l : leaves)
    for (const auto &[a, pol] : l.path)
      atom_set.insert(a);
  std::vector<AFF> atoms(atom_set.begin(), atom_set.end());

  std::vector<const LeafInfo *> live;
  for (const auto &l : leaves)
    live.push_back(&l);
  Tree reduced;
  reduced.root = build_reduced(reduced, atoms, 0, live);
  return layout(sig, nf.w.dom, nf.cod, reduced, true);
}

NormalFormLayers split_layers(const Signature &sig, const FNormalForm &nf) {
  const ESchema &wide = nf.w.cod;
  NormalFormLayers out;
  out.w = f_lift(nf.w);

  // x
  out.x = f_identity({wide});
  FSchema sheets{wide};
  for (const auto &fa : nf.x) {
    std::vector<std::size_t> perm = fa.columns;
    for (std::size_t c = 0; c < wide.size(); ++c)
      if (std::find(fa.columns.begin(), fa.columns.end(), c) ==
          fa.columns.end())
        perm.push_back(c);
    std::vector<Term> forward, back(wide.size(), Term::var(1));
    ESchema front;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      forward.push_back(Term::var(perm[i] + 1));
      back[perm[i]] = Term::var(i + 1);
      front.push_back(wide[perm[i]]);
    }
    const bool moved = !std::is_sorted(perm.begin(), perm.end());
    if (moved)
      out.x = lift_at(std::move(out.x), fa.sheet,
                      e_from_terms(sig, wide, forward));
    ESchema rest(front.begin() + static_cast<std::ptrdiff_t>(fa.columns.size()),
                 front.end());
    out.x.slices.push_back(
        {fa.sheet, FGenerator::make_filter(fa.aff.filter(), rest)});
    if (moved) {
      EMorphism undo = e_from_terms(sig, front, back);
      out.x = lift_at(std::move(out.x), fa.sheet, undo);
      out.x = lift_at(std::move(out.x), fa.sheet + 1, undo);
    }
    sheets.push_back(wide);
  }
  out.x.cod = sheets;

  // y
  out.y = f_identity(sheets);
  FSchema after_y;
  for (std::size_t l = 0; l < nf.y.size(); ++l) {
    std::vector<Term> kept;
    for (std::size_t c = 0; c < wide.size(); ++c)
      if (!std::binary_search(nf.y[l].begin(), nf.y[l].end(), c))
        kept.push_back(Term::var(c + 1));
    EMorphism e = e_from_terms(sig, wide, kept);
    after_y.push_back(e.cod);
    if (!e.slices.empty())
      out.y = lift_at(std::move(out.y), l, std::move(e));
  }
  out.y.cod = after_y;

  // z: stable sort of the leaves by target, then left-associated unions.
  out.z = f_identity(after_y);
  std::vector<std::size_t> targets = nf.z;
  FSchema current = after_y;
  for (std::size_t i = 1; i < targets.size(); ++i)
    for (std::size_t j = i; j > 0 && targets[j - 1] > targets[j]; --j) {
      out.z.slices.push_back(
          {j - 1, FGenerator::make_sheet_swap(current[j - 1], current[j])});
      std::swap(targets[j - 1], targets[j]);
      std::swap(current[j - 1], current[j]);
    }
  std::size_t next = 0;
  for (std::size_t t = 0; t < nf.cod.size(); ++t) {
    std::size_t count = 0;
    while (next < targets.size() && targets[next] == t) {
      ++count;
      ++next;
    }
    if (count == 0)
      out.z.slices.push_back({t, FGenerator::make_empty(nf.cod[t])});
    for (std::size_t k = 1; k < count; ++k)
      out.z.slices.push_back({t, FGenerator::make_union(nf.cod[t])});
  }
  out.z.cod = nf.cod;
  return out;
}

FMorphism recompose(const Signature &sig, const FNormalForm &nf) {
  auto layers = split_layers(sig, nf);
  return f_compose(f_compose(f_compose(layers.w, layers.x), layers.y),
                   layers.z);
}

FMorphism f_normalize(const Signature &sig, const FMorphism &m) {
  return recompose(sig, f_sort_filters(sig, f_decompose(sig, m)));
}

bool is_lift_layer(const FMorphism &m) {
  return m.slices.size() <= 1 &&
         std::all_of(m.slices.begin(), m.slices.end(), [](const FSlice &s) {
           return s.gen.kind == FGenerator::Kind::Lift;
         });
}

bool is_filter_layer(const FMorphism &m) {
  return std::all_of(m.slices.begin(), m.slices.end(), [](const FSlice &s) {
    return s.gen.kind == FGenerator::Kind::Filter ||
           (s.gen.kind == FGenerator::Kind::Lift && is_swap_only(s.gen.lift));
  });
}

bool is_discard_layer(const FMorphism &m) {
  return std::all_of(m.slices.begin(), m.slices.end(), [](const FSlice &s) {
    return s.gen.kind == FGenerator::Kind::Lift && is_discard_only(s.gen.lift);
  });
}

bool is_union_layer(const FMorphism &m, bool multi_sheet_cod) {
  return std::all_of(m.slices.begin(), m.slices.end(), [&](const FSlice &s) {
    return s.gen.kind == FGenerator::Kind::Union ||
           (multi_sheet_cod && (s.gen.kind == FGenerator::Kind::SheetSwap ||
                                s.gen.kind == FGenerator::Kind::Empty));
  });
}

} // namespace refinealg
