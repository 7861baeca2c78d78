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

#include "refinealg/axioms.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace refinealg::testing {

std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng &rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

namespace {

template <typename T> const T &pick(Rng &rng, const std::vector<T> &v) {
  return v[uniform(rng, 0, v.size() - 1)];
}

bool has_prefix(const ESchema &s, const ESchema &prefix) {
  return prefix.size() <= s.size() &&
         std::equal(prefix.begin(), prefix.end(), s.begin());
}

std::vector<std::string> type_list(const Signature &sig) {
  return {sig.datatypes().begin(), sig.datatypes().end()};
}

} // namespace

Signature random_signature(Rng &rng, bool need_filter) {
  static const char *names[] = {"A", "B", "C"};
  Signature sig;
  const std::size_t nt = uniform(rng, 1, 3);
  std::vector<std::string> types(names, names + nt);
  for (const auto &t : types)
    sig.add_datatype(t);
  const std::size_t nops = uniform(rng, 1, 3);
  for (std::size_t i = 0; i < nops; ++i) {
    OpDecl op{"op" + std::to_string(i), {}, {}};
    const std::size_t arity = uniform(rng, 0, 9) == 0 ? 0 : uniform(rng, 1, 2);
    for (std::size_t k = 0; k < arity; ++k)
      op.dom.push_back(pick(rng, types));
    const std::size_t outs = coin(rng, 0.75) ? 1 : 2;
    for (std::size_t k = 0; k < outs; ++k)
      op.cod.push_back(pick(rng, types));
    sig.add_operation(std::move(op));
  }
  const std::size_t nf = need_filter ? uniform(rng, 1, 2) : uniform(rng, 0, 2);
  for (std::size_t i = 0; i < nf; ++i) {
    FilterDecl f{"f" + std::to_string(i), {}};
    const std::size_t arity = coin(rng, 0.8) ? 1 : 2;
    for (std::size_t k = 0; k < arity; ++k)
      f.dom.push_back(pick(rng, types));
    sig.add_filter(std::move(f));
  }
  return sig;
}

ESchema random_schema(const Signature &sig, Rng &rng, std::size_t lo,
                      std::size_t hi) {
  const auto types = type_list(sig);
  ESchema s;
  for (std::size_t i = 0, n = uniform(rng, lo, hi); i < n; ++i)
    s.push_back(pick(rng, types));
  return s;
}

ESchema random_domain(const Signature &sig, Rng &rng) {
  std::vector<const FilterDecl *> filters;
  for (const auto &[name, f] : sig.filters())
    filters.push_back(&f);
  if (filters.empty() || coin(rng, 0.2))
    return random_schema(sig, rng, 1, 3);
  ESchema dom = pick(rng, filters)->dom;
  while (dom.size() < 3 && coin(rng, 0.6))
    dom.insert(dom.begin() + static_cast<std::ptrdiff_t>(
                                 uniform(rng, 0, dom.size())),
               random_schema(sig, rng, 1, 1)[0]);
  return dom;
}

std::optional<Term> random_term(const Signature &sig, const ESchema &dom,
                                const std::string &type, std::size_t depth,
                                Rng &rng) {
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < dom.size(); ++i)
    if (dom[i] == type)
      vars.push_back(i + 1);
  std::vector<std::pair<const OpDecl *, std::size_t>> apps;
  if (depth > 0)
    for (const auto &[name, op] : sig.operations())
      for (std::size_t j = 0; j < op.cod.size(); ++j)
        if (op.cod[j] == type)
          apps.emplace_back(&op, j + 1);

  const bool try_app_first = !apps.empty() && (vars.empty() || coin(rng, 0.4));
  if (try_app_first) {
    for (int attempt = 0; attempt < 3; ++attempt) {
      const auto &[op, proj] = pick(rng, apps);
      std::vector<Term> args;
      for (const auto &t : op->dom) {
        auto a = random_term(sig, dom, t, depth - 1, rng);
        if (!a)
          break;
        args.push_back(std::move(*a));
      }
      if (args.size() == op->dom.size())
        return Term::app(op->name, std::move(args), proj);
    }
  }
  if (!vars.empty())
    return Term::var(pick(rng, vars));
  return std::nullopt;
}

std::optional<EMorphism> random_emorphism_to(const Signature &sig,
                                             const ESchema &dom,
                                             const ESchema &cod, Rng &rng) {
  std::vector<Term> terms;
  for (const auto &t : cod) {
    auto term = random_term(sig, dom, t, 2, rng);
    if (!term)
      return std::nullopt;
    terms.push_back(std::move(*term));
  }
  return e_from_terms(sig, dom, terms);
}

EMorphism random_emorphism(const Signature &sig, const ESchema &dom, Rng &rng,
                           std::size_t max_slices, std::size_t max_wires) {
  EMorphism m{dom, dom, {}};
  ESchema &w = m.cod;
  const std::size_t steps = uniform(rng, 0, max_slices);
  for (std::size_t step = 0; step < steps; ++step) {
    std::vector<ESlice> options;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w.size() < max_wires)
        options.push_back({i, EGenerator::copy(w[i])});
      options.push_back({i, EGenerator::discard(w[i])});
      if (i + 1 < w.size())
        options.push_back({i, EGenerator::swap(w[i], w[i + 1])});
    }
    for (const auto &[name, op] : sig.operations()) {
      if (w.size() - std::min(w.size(), op.dom.size()) + op.cod.size() >
          max_wires)
        continue;
      for (std::size_t k = 0; k + op.dom.size() <= w.size(); ++k)
        if (std::equal(op.dom.begin(), op.dom.end(),
                       w.begin() + static_cast<std::ptrdiff_t>(k)))
          options.push_back({k, EGenerator::op(name)});
    }
    if (options.empty())
      break;
    // Ops are rarer than structure; favour them a little.
    std::vector<ESlice> ops;
    for (const auto &o : options)
      if (o.gen.kind == EGenerator::Kind::Op)
        ops.push_back(o);
    const ESlice s =
        !ops.empty() && coin(rng, 0.35) ? pick(rng, ops) : pick(rng, options);
    w = apply_slice(sig, w, s, m.slices.size());
    m.slices.push_back(s);
  }
  return m;
}

namespace {

std::optional<FMorphism> block(const Signature &sig, const ESchema &x,
                               const std::optional<ESchema> &target,
                               std::size_t budget, Rng &rng) {
  const std::vector<std::string> filters = [&] {
    std::vector<std::string> out;
    for (const auto &[name, f] : sig.filters())
      out.push_back(name);
    return out;
  }();

  if (budget >= 3 && !filters.empty() && coin(rng, 0.75)) {
    const std::string f = pick(rng, filters);
    const ESchema &tf = sig.filter(f).dom;
    std::vector<FSlice> slices;
    ESchema xs = x;
    std::size_t used = 2;
    if (!has_prefix(x, tf) || coin(rng, 0.5)) {
      std::vector<Term> terms;
      const bool computed = coin(rng, 0.6);
      for (const auto &t : tf) {
        auto term = random_term(sig, x, t, 2, rng);
        for (int attempt = 0; computed && term && term->is_var() && attempt < 4;
             ++attempt)
          term = random_term(sig, x, t, 2, rng);
        if (!term)
          break;
        terms.push_back(std::move(*term));
      }
      if (terms.size() == tf.size() && budget >= 4) {
        for (auto &v : identity_terms(x.size()))
          if (coin(rng, 0.85))
            terms.push_back(std::move(v));
        EMorphism pre = e_from_terms(sig, x, terms);
        xs = pre.cod;
        slices.push_back({0, FGenerator::make_lift(std::move(pre))});
        ++used;
      } else {
        xs.clear();
      }
    }
    if (!xs.empty() || has_prefix(x, tf)) {
      if (xs.empty())
        xs = x;
      const std::size_t left = budget - used;
      const std::size_t b1 = uniform(rng, left / 3, left);
      auto first = block(sig, xs, target, b1, rng);
      if (first) {
        const ESchema y = first->cod[0];
        auto second = block(sig, xs, y, left - first->slices.size(), rng);
        if (!second)
          second = first;
        const ESchema rest(xs.begin() + static_cast<std::ptrdiff_t>(tf.size()),
                           xs.end());
        slices.push_back({0, FGenerator::make_filter(f, rest)});
        for (const auto &s : first->slices)
          slices.push_back(s);
        for (auto s : second->slices) {
          s.sheet += 1;
          slices.push_back(std::move(s));
        }
        if (slices.size() + 2 <= budget && coin(rng, 0.2))
          slices.push_back({0, FGenerator::make_sheet_swap(y, y)});
        slices.push_back({0, FGenerator::make_union(y)});
        if (slices.size() <= budget)
          return FMorphism{{x}, {y}, std::move(slices)};
      }
    }
  }

  if (target) {
    if (*target == x && coin(rng, 0.3))
      return f_identity({x});
    if (budget == 0)
      return std::nullopt;
    auto e = random_emorphism_to(sig, x, *target, rng);
    if (!e)
      return std::nullopt;
    return f_lift(std::move(*e));
  }
  if (budget == 0 || coin(rng, 0.15))
    return f_identity({x});
  EMorphism e;
  if (coin(rng, 0.5)) {
    e = random_emorphism(sig, x, rng, 4, 4);
  } else {
    auto cod = random_schema(sig, rng, 1, 3);
    auto made = random_emorphism_to(sig, x, cod, rng);
    e = made ? *made : random_emorphism(sig, x, rng, 4, 4);
  }
  return f_lift(std::move(e));
}

} // namespace

std::optional<FMorphism>
random_structured_fmorphism(const Signature &sig, const ESchema &dom, Rng &rng,
                            std::size_t max_slices,
                            std::optional<ESchema> cod) {
  auto m = block(sig, dom, cod, max_slices, rng);
  if (!m || m->slices.size() > max_slices)
    return std::nullopt;
  f_require_typed(sig, *m);
  return m;
}

FMorphism structured_fmorphism(const Signature &sig, const ESchema &dom,
                               Rng &rng, std::size_t max_slices) {
  for (;;)
    if (auto m = random_structured_fmorphism(sig, dom, rng, max_slices))
      return *m;
}

FMorphism random_walk_fmorphism(const Signature &sig, const ESchema &dom,
                                Rng &rng, std::size_t max_slices) {
  FMorphism m{{dom}, {dom}, {}};
  FSchema &sheets = m.cod;
  const std::size_t steps = uniform(rng, 1, max_slices);
  for (std::size_t step = 0; step < steps; ++step) {
    std::vector<std::vector<FSlice>> kinds(5);
    for (std::size_t s = 0; s < sheets.size(); ++s) {
      kinds[0].push_back(
          {s, FGenerator::make_lift(random_emorphism(sig, sheets[s], rng, 3))});
      if (sheets.size() < 4)
        for (const auto &[name, f] : sig.filters())
          if (has_prefix(sheets[s], f.dom))
            kinds[1].push_back(
                {s, FGenerator::make_filter(
                        name, ESchema(sheets[s].begin() +
                                          static_cast<std::ptrdiff_t>(
                                              f.dom.size()),
                                      sheets[s].end()))});
      if (s + 1 < sheets.size()) {
        if (sheets[s] == sheets[s + 1])
          kinds[2].push_back({s, FGenerator::make_union(sheets[s])});
        kinds[3].push_back(
            {s, FGenerator::make_sheet_swap(sheets[s], sheets[s + 1])});
      }
    }
    if (coin(rng, 0.1) && sheets.size() < 4) {
      const std::size_t s = uniform(rng, 0, sheets.size());
      kinds[4].push_back(
          {s, FGenerator::make_empty(
                  sheets.empty() ? dom : sheets[std::min(s, sheets.size() - 1)])});
    }
    std::vector<const std::vector<FSlice> *> live;
    for (const auto &k : kinds)
      if (!k.empty())
        live.push_back(&k);
    if (live.empty())
      break;
    const FSlice s = pick(rng, *pick(rng, live));
    sheets = apply_fslice(sig, sheets, s, m.slices.size());
    m.slices.push_back(s);
  }
  return m;
}

FMorphism random_partner(const Signature &sig, const FMorphism &a, Rng &rng,
                         std::size_t max_slices) {
  const std::size_t mode = uniform(rng, 0, 3);
  if (mode == 3 && a.slices.size() < max_slices) {
    // Exchange the branches right after a filter.
    std::vector<std::size_t> filters;
    for (std::size_t i = 0; i < a.slices.size(); ++i)
      if (a.slices[i].gen.kind == FGenerator::Kind::Filter)
        filters.push_back(i);
    if (!filters.empty()) {
      FMorphism b = a;
      const std::size_t at = pick(rng, filters);
      const FSlice &f = a.slices[at];
      ESchema x = sig.filter(f.gen.filter).dom;
      x.insert(x.end(), f.gen.rest.begin(), f.gen.rest.end());
      b.slices.insert(b.slices.begin() + static_cast<std::ptrdiff_t>(at) + 1,
                      {f.sheet, FGenerator::make_sheet_swap(x, x)});
      return b;
    }
  }
  if (mode == 0) {
    FMorphism b = a;
    for (std::size_t i = 0, n = uniform(rng, 1, 3); i < n; ++i) {
      auto next = random_rewrite(sig, b, rng);
      if (!next || next->slices.size() > max_slices)
        break;
      b = std::move(*next);
    }
    return b;
  }
  if (mode == 1) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < a.slices.size(); ++i)
      if (a.slices[i].gen.kind != FGenerator::Kind::Union &&
          a.slices[i].gen.kind != FGenerator::Kind::Empty)
        candidates.push_back(i);
    if (!candidates.empty()) {
      FMorphism b = a;
      const std::size_t at = pick(rng, candidates);
      FSlice &s = b.slices[at];
      switch (s.gen.kind) {
      case FGenerator::Kind::Lift:
        for (int attempt = 0; attempt < 5; ++attempt) {
          auto e = random_emorphism_to(sig, s.gen.lift.dom, s.gen.lift.cod,
                                       rng);
          if (e && e_to_terms(sig, *e) != e_to_terms(sig, s.gen.lift)) {
            s.gen.lift = std::move(*e);
            break;
          }
        }
        break;
      case FGenerator::Kind::Filter: {
        const ESchema &dom = sig.filter(s.gen.filter).dom;
        std::vector<std::string> same;
        for (const auto &[name, f] : sig.filters())
          if (f.dom == dom && name != s.gen.filter)
            same.push_back(name);
        if (!same.empty())
          s.gen.filter = pick(rng, same);
        break;
      }
      case FGenerator::Kind::SheetSwap:
        b.slices.erase(b.slices.begin() + static_cast<std::ptrdiff_t>(at));
        break;
      default:
        break;
      }
      if (!(b == a) && !f_typecheck(sig, b))
        return b;
    }
  }
  if (single_sheet(a.dom) && single_sheet(a.cod))
    for (int attempt = 0; attempt < 30; ++attempt)
      if (auto b = random_structured_fmorphism(sig, a.dom[0], rng, max_slices,
                                               a.cod[0]))
        return *b;
  return a;
}

Value eval_term(const Signature &sig, const Valuation &val, const Term &t,
                const Row &inputs) {
  if (t.is_var())
    return inputs.at(t.var_index() - 1);
  Row args;
  for (const auto &a : t.args())
    args.push_back(eval_term(sig, val, a, inputs));
  return val.apply_op(sig, t.op(), args).at(t.proj() - 1);
}

bool eval_aff(const Signature &sig, const Valuation &val, const AFF &a,
              const Row &inputs) {
  Row args;
  for (const auto &t : a.args())
    args.push_back(eval_term(sig, val, t, inputs));
  return val.test_filter(sig, a.filter(), args);
}

std::optional<Row> eval_tt(const Signature &sig, const Valuation &val,
                           const TruthTable &t, const Row &inputs) {
  for (const auto &c : t.cases()) {
    const bool holds = cff_holds(
        c.cond, [&](const AFF &a) { return eval_aff(sig, val, a, inputs); });
    if (!holds)
      continue;
    Row out;
    for (const auto &v : c.values)
      out.push_back(eval_term(sig, val, v, inputs));
    return out;
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, Row>>
eval_grid(const Signature &sig, const Valuation &val, const TTGrid &g,
          std::size_t sheet, const Row &inputs) {
  std::optional<std::pair<std::size_t, Row>> hit;
  for (std::size_t j = 0; j < g.cod_widths.size(); ++j) {
    if (auto r = eval_tt(sig, val, g.at(sheet, j), inputs)) {
      if (hit)
        throw std::logic_error("two grid cases hold for one row");
      hit.emplace(j, std::move(*r));
    }
  }
  return hit;
}

} // namespace refinealg::testing
