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

#include "refinealg/axioms.hpp"

#include "refinealg/error.hpp"

#include <algorithm>
#include <map>

namespace refinealg {

namespace {

ESchema concat(ESchema a, const ESchema &b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

EMorphism seq(std::initializer_list<EMorphism> parts) {
  auto it = parts.begin();
  EMorphism out = *it;
  for (++it; it != parts.end(); ++it)
    out = e_compose(out, *it);
  return out;
}

FMorphism fseq(const Signature &sig, FSchema dom,
               std::vector<FSlice> slices) {
  FMorphism m{std::move(dom), {}, std::move(slices)};
  FSchema cur = m.dom;
  for (std::size_t i = 0; i < m.slices.size(); ++i)
    cur = apply_fslice(sig, cur, m.slices[i], i);
  m.cod = std::move(cur);
  return m;
}

FSlice lift_at(std::size_t sheet, EMorphism e) {
  return {sheet, FGenerator::make_lift(std::move(e))};
}

const ESchema &filter_dom(const Signature &sig, const std::string &f) {
  return sig.filter(f).dom;
}

bool has_prefix(const ESchema &s, const ESchema &prefix) {
  return prefix.size() <= s.size() &&
         std::equal(prefix.begin(), prefix.end(), s.begin());
}

} // namespace

EMorphism e_permutation(const ESchema &types,
                        const std::vector<std::size_t> &perm) {
  if (perm.size() != types.size())
    throw AlgebraError("permutation size does not match the wires");
  std::vector<std::size_t> cur(types.size());
  for (std::size_t i = 0; i < cur.size(); ++i)
    cur[i] = i;
  EMorphism m{types, {}, {}};
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      if (perm[cur[j]] > perm[cur[j + 1]]) {
        m.slices.push_back(
            {j, EGenerator::swap(types[cur[j]], types[cur[j + 1]])});
        std::swap(cur[j], cur[j + 1]);
        moved = true;
      }
    }
  }
  for (std::size_t w : cur)
    m.cod.push_back(types[w]);
  return m;
}

EMorphism e_copy(const ESchema &a) {
  EMorphism m{a, {}, {}};
  ESchema doubled;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m.slices.push_back({2 * i, EGenerator::copy(a[i])});
    doubled.push_back(a[i]);
    doubled.push_back(a[i]);
  }
  m.cod = doubled;
  std::vector<std::size_t> perm(doubled.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    perm[2 * i] = i;
    perm[2 * i + 1] = a.size() + i;
  }
  return e_compose(m, e_permutation(doubled, perm));
}

EMorphism e_discard(const ESchema &a) {
  EMorphism m{a, {}, {}};
  for (const auto &t : a)
    m.slices.push_back({0, EGenerator::discard(t)});
  return m;
}

EMorphism e_swap_blocks(const ESchema &a, const ESchema &b) {
  std::vector<std::size_t> perm(a.size() + b.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    perm[i] = i < a.size() ? b.size() + i : i - a.size();
  return e_permutation(concat(a, b), perm);
}

EMorphism e_op(const Signature &sig, const std::string &name) {
  const auto &decl = sig.operation(name);
  return {decl.dom, decl.cod, {{0, EGenerator::op(name)}}};
}

std::vector<EAxiom> cartesian_axioms(const Signature &sig, const ESchema &a,
                                     const std::string &op) {
  const auto id = e_identity(a);
  const auto alpha = e_op(sig, op);
  const auto &d = alpha.dom;
  const auto &c = alpha.cod;
  std::vector<EAxiom> out;
  out.push_back({"counit", "Copying is unital for discarding",
                 seq({e_copy(a), e_tensor(e_discard(a), id)}), id});
  out.push_back({"assoc", "Copying is associative",
                 seq({e_copy(a), e_tensor(e_copy(a), id)}),
                 seq({e_copy(a), e_tensor(id, e_copy(a))})});
  out.push_back({"no-outputs", "Operations without outputs discard inputs",
                 seq({e_copy(d), e_tensor(alpha, e_identity(d)),
                      e_discard(concat(c, d))}),
                 e_discard(d)});
  out.push_back({"symmetric", "Copying is symmetric",
                 seq({e_copy(a), e_swap_blocks(a, a)}), e_copy(a)});
  out.push_back({"copy-outputs", "Copying the outputs of an operation",
                 seq({alpha, e_copy(c)}),
                 seq({e_copy(d), e_tensor(alpha, alpha)})});
  out.push_back({"discard-outputs", "Discarding the outputs of an operation",
                 seq({alpha, e_discard(c)}), e_discard(d)});
  return out;
}

std::vector<FAxiom> facet_axioms(const Signature &sig, const FAxiomParams &p) {
  const ESchema &tf = filter_dom(sig, p.f);
  const ESchema &tg = filter_dom(sig, p.g);
  const ESchema x = concat(tf, p.u);
  std::vector<FAxiom> out;

  out.push_back({"merge", "Merging a filter immediately does nothing",
                 fseq(sig, {x},
                      {{0, FGenerator::make_filter(p.f, p.u)},
                       {0, FGenerator::make_union(x)}}),
                 f_identity({x})});

  {
    const ESchema &longer = tf.size() >= tg.size() ? tf : tg;
    const ESchema &shorter = tf.size() >= tg.size() ? tg : tf;
    if (!has_prefix(longer, shorter))
      throw AlgebraError("filters " + p.f + " and " + p.g +
                         " do not read a common prefix");
    const ESchema y = concat(longer, p.u);
    const ESchema rf(y.begin() + static_cast<std::ptrdiff_t>(tf.size()),
                     y.end());
    const ESchema rg(y.begin() + static_cast<std::ptrdiff_t>(tg.size()),
                     y.end());
    out.push_back({"commute", "Filters commute even with a common column",
                   fseq(sig, {y},
                        {{0, FGenerator::make_filter(p.f, rf)},
                         {0, FGenerator::make_filter(p.g, rg)},
                         {2, FGenerator::make_filter(p.g, rg)}}),
                   fseq(sig, {y},
                        {{0, FGenerator::make_filter(p.g, rg)},
                         {0, FGenerator::make_filter(p.f, rf)},
                         {2, FGenerator::make_filter(p.f, rf)},
                         {1, FGenerator::make_sheet_swap(y, y)}})});
  }

  {
    const auto alpha = e_op(sig, p.op);
    const auto e = e_tensor(e_identity(x), alpha);
    out.push_back({"disjoint", "Disjoint filters and operations commute",
                   fseq(sig, {e.dom},
                        {{0, FGenerator::make_filter(p.f,
                                                     concat(p.u, alpha.dom))},
                         lift_at(0, e), lift_at(1, e)}),
                   fseq(sig, {e.dom},
                        {lift_at(0, e),
                         {0, FGenerator::make_filter(
                                 p.f, concat(p.u, alpha.cod))}})});
  }

  {
    const auto copy = e_copy(x);
    out.push_back({"copy", "Copying and filtering commute",
                   fseq(sig, {x},
                        {lift_at(0, copy),
                         {0, FGenerator::make_filter(p.f, concat(p.u, x))}}),
                   fseq(sig, {x},
                        {{0, FGenerator::make_filter(p.f, p.u)},
                         lift_at(0, copy), lift_at(1, copy)})});
  }

  {
    const auto drop = e_tensor(e_identity(tf), e_discard(p.u));
    out.push_back({"no-modify", "Filters do not modify data",
                   fseq(sig, {x},
                        {{0, FGenerator::make_filter(p.f, p.u)},
                         lift_at(0, drop), lift_at(1, drop)}),
                   fseq(sig, {x},
                        {lift_at(0, drop),
                         {0, FGenerator::make_filter(p.f, {})}})});
  }
  return out;
}

Signature with_tag_ops(Signature sig, std::size_t n) {
  if (!sig.has_datatype("Tag"))
    sig.add_datatype("Tag");
  for (std::size_t k = 0; k < n; ++k) {
    const std::string name = "tag" + std::to_string(k);
    if (!sig.find_operation(name))
      sig.add_operation({name, {}, {"Tag"}});
  }
  return sig;
}

FMorphism tag_closure(const Signature &sig, const FMorphism &m) {
  if (m.cod.empty())
    throw AlgebraError("tag closure needs at least one output sheet");
  const ESchema &x = m.cod[0];
  for (const auto &s : m.cod)
    if (s != x)
      throw AlgebraError("tag closure needs equal output sheets");
  FMorphism out = m;
  ESchema tagged = concat(x, {"Tag"});
  for (std::size_t k = 0; k < m.cod.size(); ++k)
    out.slices.push_back(lift_at(
        k, e_tensor(e_identity(x), e_op(sig, "tag" + std::to_string(k)))));
  for (std::size_t k = 1; k < m.cod.size(); ++k)
    out.slices.push_back({0, FGenerator::make_union(tagged)});
  out.cod = {tagged};
  return out;
}

// ---------------------------------------------------------------------------
// Rewrites

std::string rule_name(RewriteRule r) {
  switch (r) {
  case RewriteRule::FilterMergeIntro:
    return "filter-merge-intro";
  case RewriteRule::FilterMergeElim:
    return "filter-merge-elim";
  case RewriteRule::FilterRefine:
    return "filter-refine";
  case RewriteRule::FilterCommute:
    return "filter-commute";
  case RewriteRule::FilterLiftCommute:
    return "filter-lift-commute";
  case RewriteRule::LiftFilterCommute:
    return "lift-filter-commute";
  case RewriteRule::LiftFuse:
    return "lift-fuse";
  case RewriteRule::LiftSplit:
    return "lift-split";
  case RewriteRule::Interchange:
    return "interchange";
  case RewriteRule::UnionNatural:
    return "union-natural";
  case RewriteRule::UnionNaturalInv:
    return "union-natural-inv";
  case RewriteRule::UnionCommute:
    return "union-commute";
  case RewriteRule::EmptyUnitIntro:
    return "empty-unit-intro";
  case RewriteRule::EmptyUnitElim:
    return "empty-unit-elim";
  case RewriteRule::LiftRewrite:
    return "lift-rewrite";
  }
  return "?";
}

namespace {

using Kind = FGenerator::Kind;

std::vector<FSchema> states_of(const Signature &sig, const FMorphism &m) {
  std::vector<FSchema> states{m.dom};
  for (std::size_t i = 0; i < m.slices.size(); ++i)
    states.push_back(apply_fslice(sig, states.back(), m.slices[i], i));
  return states;
}

bool is(const FSlice &s, Kind k) { return s.gen.kind == k; }

// Whether the lift keeps the first `a` columns untouched as its first
// outputs.
bool keeps_prefix(const Signature &sig, const EMorphism &e, std::size_t a) {
  if (e.dom.size() < a || e.cod.size() < a)
    return false;
  const auto terms = e_to_terms(sig, e).outputs;
  const auto ids = identity_terms(a);
  return std::equal(ids.begin(), ids.end(), terms.begin());
}

// The lift pair following a filter at `s`: both branches, either order.
bool lift_pair(const std::vector<FSlice> &sl, std::size_t p, std::size_t s) {
  if (p + 2 >= sl.size())
    return false;
  const auto &u = sl[p + 1], &v = sl[p + 2];
  if (!is(u, Kind::Lift) || !is(v, Kind::Lift) || u.gen.lift != v.gen.lift)
    return false;
  return (u.sheet == s && v.sheet == s + 1) ||
         (u.sheet == s + 1 && v.sheet == s);
}

EMorphism split_prefix(const Signature &sig, const EMorphism &e,
                       std::size_t k) {
  EMorphism out{e.dom, {}, {}};
  ESchema cur = e.dom;
  for (std::size_t i = 0; i < k; ++i) {
    cur = apply_slice(sig, cur, e.slices[i], i);
    out.slices.push_back(e.slices[i]);
  }
  out.cod = cur;
  return out;
}

} // namespace

std::vector<RewriteSite> rewrite_sites(const Signature &sig,
                                       const FMorphism &m) {
  const auto states = states_of(sig, m);
  const auto &sl = m.slices;
  std::vector<RewriteSite> out;
  auto add = [&](RewriteRule r, std::size_t pos, std::size_t sheet = 0,
                 std::string f = {}, std::size_t param = 0) {
    out.push_back({r, pos, sheet, std::move(f), param});
  };

  for (std::size_t p = 0; p <= sl.size(); ++p) {
    const FSchema &st = states[p];
    for (std::size_t s = 0; s < st.size(); ++s) {
      for (const auto &[name, decl] : sig.filters())
        if (has_prefix(st[s], decl.dom))
          add(RewriteRule::FilterMergeIntro, p, s, name);
      add(RewriteRule::EmptyUnitIntro, p, s, {}, 0);
      add(RewriteRule::EmptyUnitIntro, p, s, {}, 1);
    }
  }

  for (std::size_t p = 0; p < sl.size(); ++p) {
    const auto &a = sl[p];
    const FSchema &before = states[p];
    const bool has_next = p + 1 < sl.size();
    const FSlice *b = has_next ? &sl[p + 1] : nullptr;

    if (is(a, Kind::Filter)) {
      const ESchema &x = before[a.sheet];
      if (b && is(*b, Kind::Union) && b->sheet == a.sheet)
        add(RewriteRule::FilterMergeElim, p);
      for (const auto &[name, decl] : sig.filters())
        if (has_prefix(x, decl.dom))
          add(RewriteRule::FilterRefine, p, a.sheet, name);
      if (p + 2 < sl.size() && is(*b, Kind::Filter) && b->sheet == a.sheet &&
          is(sl[p + 2], Kind::Filter) && sl[p + 2].sheet == a.sheet + 2 &&
          sl[p + 2].gen == b->gen)
        add(RewriteRule::FilterCommute, p);
      if (lift_pair(sl, p, a.sheet) &&
          keeps_prefix(sig, sl[p + 1].gen.lift,
                       filter_dom(sig, a.gen.filter).size()))
        add(RewriteRule::FilterLiftCommute, p);
    }

    if (is(a, Kind::Lift)) {
      if (b && is(*b, Kind::Filter) && b->sheet == a.sheet &&
          keeps_prefix(sig, a.gen.lift, filter_dom(sig, b->gen.filter).size()))
        add(RewriteRule::LiftFilterCommute, p);
      if (b && is(*b, Kind::Lift) && b->sheet == a.sheet)
        add(RewriteRule::LiftFuse, p);
      for (std::size_t k = 0; k <= a.gen.lift.slices.size(); ++k)
        add(RewriteRule::LiftSplit, p, 0, {}, k);
      add(RewriteRule::LiftRewrite, p, 0, {}, 0);
      if (!a.gen.lift.dom.empty())
        add(RewriteRule::LiftRewrite, p, 0, {}, 1);
      if (p + 2 < sl.size() && is(*b, Kind::Lift) &&
          b->gen.lift == a.gen.lift && is(sl[p + 2], Kind::Union)) {
        const std::size_t lo = std::min(a.sheet, b->sheet);
        if (std::max(a.sheet, b->sheet) == lo + 1 && sl[p + 2].sheet == lo)
          add(RewriteRule::UnionNaturalInv, p);
      }
    }

    if (is(a, Kind::Union)) {
      if (b && is(*b, Kind::Lift) && b->sheet == a.sheet)
        add(RewriteRule::UnionNatural, p);
      add(RewriteRule::UnionCommute, p, 0, {}, 0);
    }
    if (is(a, Kind::SheetSwap) && b && is(*b, Kind::Union) &&
        b->sheet == a.sheet)
      add(RewriteRule::UnionCommute, p, 0, {}, 1);

    if (is(a, Kind::Empty) && b && is(*b, Kind::Union) &&
        (b->sheet == a.sheet || b->sheet + 1 == a.sheet))
      add(RewriteRule::EmptyUnitElim, p);

    if (b) {
      const auto [ain, aout] = generator_sheets(sig, a.gen);
      const auto [bin, bout] = generator_sheets(sig, b->gen);
      (void)bout;
      if (b->sheet >= a.sheet + aout.size() ||
          b->sheet + bin.size() <= a.sheet)
        add(RewriteRule::Interchange, p);
    }
  }
  return out;
}

FMorphism apply_rewrite(const Signature &sig, const FMorphism &m,
                        const RewriteSite &site) {
  const auto states = states_of(sig, m);
  auto sl = m.slices;
  const std::size_t p = site.pos;
  auto at = [&](std::size_t i) {
    return sl.begin() + static_cast<std::ptrdiff_t>(i);
  };
  auto bad = [&] {
    return AlgebraError("rewrite " + rule_name(site.rule) +
                        " does not apply at slice " + std::to_string(p));
  };
  auto ensure = [&](bool ok) {
    if (!ok)
      throw bad();
  };

  switch (site.rule) {
  case RewriteRule::FilterMergeIntro: {
    ensure(p < states.size() && site.sheet < states[p].size());
    const ESchema &x = states[p][site.sheet];
    const ESchema &tf = filter_dom(sig, site.filter);
    ensure(has_prefix(x, tf));
    const ESchema rest(x.begin() + static_cast<std::ptrdiff_t>(tf.size()),
                       x.end());
    sl.insert(at(p), {{site.sheet, FGenerator::make_filter(site.filter, rest)},
                      {site.sheet, FGenerator::make_union(x)}});
    break;
  }
  case RewriteRule::FilterMergeElim:
    ensure(p + 1 < sl.size() && is(sl[p], Kind::Filter) &&
           is(sl[p + 1], Kind::Union) && sl[p].sheet == sl[p + 1].sheet);
    sl.erase(at(p), at(p + 2));
    break;
  case RewriteRule::FilterRefine: {
    ensure(p < sl.size() && is(sl[p], Kind::Filter));
    const std::size_t s = sl[p].sheet;
    const ESchema &x = states[p][s];
    const ESchema &tg = filter_dom(sig, site.filter);
    ensure(has_prefix(x, tg));
    const ESchema rest(x.begin() + static_cast<std::ptrdiff_t>(tg.size()),
                       x.end());
    const auto g = FGenerator::make_filter(site.filter, rest);
    sl.insert(at(p + 1), {{s, g},
                          {s + 2, g},
                          {s + 2, FGenerator::make_union(x)},
                          {s, FGenerator::make_union(x)}});
    break;
  }
  case RewriteRule::FilterCommute: {
    ensure(p + 2 < sl.size() && is(sl[p], Kind::Filter) &&
           is(sl[p + 1], Kind::Filter) && is(sl[p + 2], Kind::Filter) &&
           sl[p + 1].sheet == sl[p].sheet &&
           sl[p + 2].sheet == sl[p].sheet + 2 && sl[p + 1].gen == sl[p + 2].gen);
    const std::size_t s = sl[p].sheet;
    const ESchema &x = states[p][s];
    const auto f = sl[p].gen, g = sl[p + 1].gen;
    sl[p] = {s, g};
    sl[p + 1] = {s, f};
    sl[p + 2] = {s + 2, f};
    sl.insert(at(p + 3), {s + 1, FGenerator::make_sheet_swap(x, x)});
    break;
  }
  case RewriteRule::FilterLiftCommute: {
    ensure(p < sl.size() && is(sl[p], Kind::Filter) &&
           lift_pair(sl, p, sl[p].sheet));
    const std::size_t s = sl[p].sheet;
    const EMorphism e = sl[p + 1].gen.lift;
    const std::size_t a = filter_dom(sig, sl[p].gen.filter).size();
    ensure(keeps_prefix(sig, e, a));
    const ESchema rest(e.cod.begin() + static_cast<std::ptrdiff_t>(a),
                       e.cod.end());
    const auto f = FGenerator::make_filter(sl[p].gen.filter, rest);
    sl.erase(at(p), at(p + 3));
    sl.insert(at(p), {lift_at(s, e), {s, f}});
    break;
  }
  case RewriteRule::LiftFilterCommute: {
    ensure(p + 1 < sl.size() && is(sl[p], Kind::Lift) &&
           is(sl[p + 1], Kind::Filter) && sl[p].sheet == sl[p + 1].sheet);
    const std::size_t s = sl[p].sheet;
    const EMorphism e = sl[p].gen.lift;
    const std::size_t a = filter_dom(sig, sl[p + 1].gen.filter).size();
    ensure(keeps_prefix(sig, e, a));
    const ESchema rest(e.dom.begin() + static_cast<std::ptrdiff_t>(a),
                       e.dom.end());
    const auto f = FGenerator::make_filter(sl[p + 1].gen.filter, rest);
    sl.erase(at(p), at(p + 2));
    sl.insert(at(p), {{s, f}, lift_at(s, e), lift_at(s + 1, e)});
    break;
  }
  case RewriteRule::LiftFuse:
    ensure(p + 1 < sl.size() && is(sl[p], Kind::Lift) &&
           is(sl[p + 1], Kind::Lift) && sl[p].sheet == sl[p + 1].sheet);
    sl[p].gen.lift = e_compose(sl[p].gen.lift, sl[p + 1].gen.lift);
    sl.erase(at(p + 1));
    break;
  case RewriteRule::LiftSplit: {
    ensure(p < sl.size() && is(sl[p], Kind::Lift) &&
           site.param <= sl[p].gen.lift.slices.size());
    const EMorphism e = sl[p].gen.lift;
    EMorphism head = split_prefix(sig, e, site.param);
    EMorphism tail{head.cod, e.cod,
                   {e.slices.begin() + static_cast<std::ptrdiff_t>(site.param),
                    e.slices.end()}};
    const std::size_t s = sl[p].sheet;
    sl[p] = lift_at(s, std::move(tail));
    sl.insert(at(p), lift_at(s, std::move(head)));
    break;
  }
  case RewriteRule::Interchange: {
    ensure(p + 1 < sl.size());
    FSlice a = sl[p], b = sl[p + 1];
    const auto ain = generator_sheets(sig, a.gen).first.size();
    const auto aout = generator_sheets(sig, a.gen).second.size();
    const auto bin = generator_sheets(sig, b.gen).first.size();
    const auto bout = generator_sheets(sig, b.gen).second.size();
    if (b.sheet >= a.sheet + aout) {
      b.sheet = b.sheet - aout + ain;
    } else if (b.sheet + bin <= a.sheet) {
      a.sheet = a.sheet - bin + bout;
    } else {
      throw bad();
    }
    sl[p] = b;
    sl[p + 1] = a;
    break;
  }
  case RewriteRule::UnionNatural: {
    ensure(p + 1 < sl.size() && is(sl[p], Kind::Union) &&
           is(sl[p + 1], Kind::Lift) && sl[p].sheet == sl[p + 1].sheet);
    const std::size_t s = sl[p].sheet;
    const EMorphism e = sl[p + 1].gen.lift;
    sl.erase(at(p), at(p + 2));
    sl.insert(at(p), {lift_at(s, e), lift_at(s + 1, e),
                      {s, FGenerator::make_union(e.cod)}});
    break;
  }
  case RewriteRule::UnionNaturalInv: {
    ensure(p + 2 < sl.size() && is(sl[p], Kind::Lift) &&
           is(sl[p + 1], Kind::Lift) && is(sl[p + 2], Kind::Union) &&
           sl[p].gen == sl[p + 1].gen);
    const std::size_t s = std::min(sl[p].sheet, sl[p + 1].sheet);
    ensure(std::max(sl[p].sheet, sl[p + 1].sheet) == s + 1 &&
           sl[p + 2].sheet == s);
    const EMorphism e = sl[p].gen.lift;
    sl.erase(at(p), at(p + 3));
    sl.insert(at(p), {{s, FGenerator::make_union(e.dom)}, lift_at(s, e)});
    break;
  }
  case RewriteRule::UnionCommute: {
    if (site.param == 0) {
      ensure(p < sl.size() && is(sl[p], Kind::Union));
      const ESchema x = sl[p].gen.a;
      sl.insert(at(p), {sl[p].sheet, FGenerator::make_sheet_swap(x, x)});
    } else {
      ensure(p + 1 < sl.size() && is(sl[p], Kind::SheetSwap) &&
             is(sl[p + 1], Kind::Union) && sl[p].sheet == sl[p + 1].sheet);
      sl.erase(at(p));
    }
    break;
  }
  case RewriteRule::EmptyUnitIntro: {
    ensure(p < states.size() && site.sheet < states[p].size());
    const ESchema &x = states[p][site.sheet];
    const std::size_t s = site.sheet;
    if (site.param == 0)
      sl.insert(at(p), {{s, FGenerator::make_empty(x)},
                        {s, FGenerator::make_union(x)}});
    else
      sl.insert(at(p), {{s + 1, FGenerator::make_empty(x)},
                        {s, FGenerator::make_union(x)}});
    break;
  }
  case RewriteRule::EmptyUnitElim:
    ensure(p + 1 < sl.size() && is(sl[p], Kind::Empty) &&
           is(sl[p + 1], Kind::Union) &&
           (sl[p + 1].sheet == sl[p].sheet ||
            sl[p + 1].sheet + 1 == sl[p].sheet));
    sl.erase(at(p), at(p + 2));
    break;
  case RewriteRule::LiftRewrite: {
    ensure(p < sl.size() && is(sl[p], Kind::Lift));
    EMorphism &e = sl[p].gen.lift;
    if (site.param == 0) {
      e = e_normalize(sig, e);
    } else {
      ensure(!e.dom.empty());
      const std::string t = e.dom[0];
      e.slices.insert(e.slices.begin(), {{0, EGenerator::copy(t)},
                                         {0, EGenerator::discard(t)}});
    }
    break;
  }
  }

  FMorphism out{m.dom, m.cod, std::move(sl)};
  f_require_typed(sig, out);
  return out;
}

std::optional<FMorphism> random_rewrite(const Signature &sig,
                                        const FMorphism &m,
                                        std::mt19937_64 &rng,
                                        RewriteSite *chosen) {
  std::map<RewriteRule, std::vector<RewriteSite>> by_rule;
  for (auto &s : rewrite_sites(sig, m))
    by_rule[s.rule].push_back(std::move(s));
  if (by_rule.empty())
    return std::nullopt;
  auto it = by_rule.begin();
  std::advance(it, std::uniform_int_distribution<std::size_t>(
                       0, by_rule.size() - 1)(rng));
  const auto &sites = it->second;
  const auto &site = sites[std::uniform_int_distribution<std::size_t>(
      0, sites.size() - 1)(rng)];
  if (chosen)
    *chosen = site;
  return apply_rewrite(sig, m, site);
}

} // namespace refinealg
