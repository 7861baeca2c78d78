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

#include "refinealg/term.hpp"

#include "refinealg/error.hpp"
#include "refinealg/signature.hpp"
#include "text_parser.hpp"

#include <algorithm>
#include <cassert>

namespace refinealg {

struct Term::Node {
  std::size_t index = 0; // 0 for applications
  std::string op;
  std::vector<Term> args;
  std::size_t proj = 0;
  std::size_t max_var = 0;
  std::string text;
};

Term Term::var(std::size_t index) {
  if (index == 0)
    throw AlgebraError("variable indices start at 1");
  auto n = std::make_shared<Node>();
  n->index = index;
  n->max_var = index;
  n->text = "x" + std::to_string(index);
  return Term(std::move(n));
}

Term Term::app(std::string op, std::vector<Term> args, std::size_t proj) {
  if (proj == 0)
    throw AlgebraError("projection indices start at 1");
  auto n = std::make_shared<Node>();
  n->op = std::move(op);
  n->proj = proj;
  std::string text = n->op;
  text += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i)
      text += ',';
    text += args[i].str();
    n->max_var = std::max(n->max_var, args[i].max_var());
  }
  text += ")[";
  text += std::to_string(proj);
  text += ']';
  n->text = std::move(text);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_var() const { return node_->index != 0; }
std::size_t Term::var_index() const { return node_->index; }
const std::string &Term::op() const { return node_->op; }
std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::proj() const { return node_->proj; }
const std::string &Term::str() const { return node_->text; }
std::size_t Term::max_var() const { return node_->max_var; }

Term substitute(const Term &t, std::span<const Term> subs) {
  if (t.max_var() > subs.size())
    throw AlgebraError("substitution does not cover x" +
                       std::to_string(t.max_var()) + " in " + t.str());
  if (t.is_var())
    return subs[t.var_index() - 1];
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto &a : t.args())
    args.push_back(substitute(a, subs));
  return Term::app(t.op(), std::move(args), t.proj());
}

std::vector<Term> substitute_all(std::span<const Term> ts,
                                 std::span<const Term> subs) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const auto &t : ts)
    out.push_back(substitute(t, subs));
  return out;
}

std::vector<Term> identity_terms(std::size_t n) {
  std::vector<Term> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i)
    out.push_back(Term::var(i));
  return out;
}

void check_term(const Signature &sig, const Term &t, std::size_t n_vars) {
  if (t.is_var()) {
    if (t.var_index() > n_vars)
      throw AlgebraError("variable " + t.str() + " out of range (" +
                         std::to_string(n_vars) + " variables)");
    return;
  }
  const OpDecl &op = sig.operation(t.op());
  if (op.dom.size() != t.args().size())
    throw AlgebraError("operation " + op.name + " expects " +
                       std::to_string(op.dom.size()) + " arguments in " +
                       t.str());
  if (t.proj() > op.cod.size())
    throw AlgebraError("projection out of range in " + t.str());
  for (const auto &a : t.args())
    check_term(sig, a, n_vars);
}

AFF::AFF(std::string filter, std::vector<Term> args)
    : filter_(std::move(filter)), args_(std::move(args)) {
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i)
      key_ += ',';
    key_ += args_[i].str();
  }
}

std::string AFF::str() const { return filter_ + "(" + key_ + ")"; }

AFF substitute(const AFF &a, std::span<const Term> subs) {
  return AFF(a.filter(), substitute_all(a.args(), subs));
}

CFF CFF::atom(AFF a, bool polarity) {
  CFF c;
  c.clauses_.emplace(std::move(a), polarity);
  return c;
}

CFF CFF::of(std::initializer_list<std::pair<AFF, bool>> clauses) {
  CFF c;
  for (const auto &[a, pol] : clauses) {
    auto [it, fresh] = c.clauses_.emplace(a, pol);
    if (!fresh && it->second != pol)
      throw AlgebraError("atom " + a.str() + " given with both polarities");
  }
  return c;
}

std::optional<bool> CFF::polarity(const AFF &a) const {
  auto it = clauses_.find(a);
  if (it == clauses_.end())
    return std::nullopt;
  return it->second;
}

std::string CFF::str() const {
  if (clauses_.empty())
    return "T";
  std::string out;
  for (const auto &[a, pol] : clauses_) {
    if (!out.empty())
      out += '&';
    if (!pol)
      out += '!';
    out += a.str();
  }
  return out;
}

bool cff_disjoint(const CFF &a, const CFF &b) {
  const CFF &small = a.size() <= b.size() ? a : b;
  const CFF &large = a.size() <= b.size() ? b : a;
  for (const auto &[aff, pol] : small.clauses()) {
    auto other = large.polarity(aff);
    if (other && *other != pol)
      return true;
  }
  return false;
}

std::optional<CFF> try_conjoin(const CFF &a, const CFF &b) {
  if (cff_disjoint(a, b))
    return std::nullopt;
  CFF out = a;
  for (const auto &[aff, pol] : b.clauses())
    out.clauses_.emplace(aff, pol);
  return out;
}

CFF cff_conjoin(const CFF &a, const CFF &b) {
  auto out = try_conjoin(a, b);
  if (!out)
    throw AlgebraError("cannot conjoin disjoint formulae " + a.str() +
                       " and " + b.str());
  return std::move(*out);
}

std::optional<CFF> substitute(const CFF &c, std::span<const Term> subs) {
  CFF out;
  for (const auto &[aff, pol] : c.clauses()) {
    auto [it, fresh] = out.clauses_.emplace(substitute(aff, subs), pol);
    if (!fresh && it->second != pol)
      return std::nullopt;
  }
  return out;
}

Term parse_term(std::string_view text) {
  detail::TextCursor cur(text);
  Term t = cur.term();
  cur.finish();
  return t;
}

AFF parse_aff(std::string_view text) {
  detail::TextCursor cur(text);
  AFF a = cur.aff();
  cur.finish();
  return a;
}

CFF parse_cff(std::string_view text) {
  detail::TextCursor cur(text);
  CFF c = cur.cff();
  cur.finish();
  return c;
}

} // namespace refinealg
