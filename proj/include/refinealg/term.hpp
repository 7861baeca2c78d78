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

#ifndef REFINEALG_TERM_HPP
#define REFINEALG_TERM_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace refinealg {

class Signature;

/// An immutable term: either a variable x_i (1-based) or a projection
/// `op(t1,...,tn)[k]` of an operation application.
///
/// Nodes are shared; equality and ordering are structural and are decided
/// on the cached canonical text, so comparing two terms is a string compare.
class Term {
public:
  static Term var(std::size_t index);
  static Term app(std::string op, std::vector<Term> args, std::size_t proj);

  bool is_var() const;
  std::size_t var_index() const;
  const std::string &op() const;
  std::span<const Term> args() const;
  std::size_t proj() const;

  /// Canonical serialization, e.g. `alpha(beta(x1,x3)[2],x1)[1]`.
  const std::string &str() const;

  /// Largest variable index occurring in the term (0 for closed terms).
  std::size_t max_var() const;

  friend bool operator==(const Term &a, const Term &b) {
    return a.node_ == b.node_ || a.str() == b.str();
  }
  friend std::strong_ordering operator<=>(const Term &a, const Term &b) {
    return a.str() <=> b.str();
  }

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// `t[u1,...,un]`: replaces every x_i by subs[i-1] simultaneously.
/// Throws AlgebraError if t mentions a variable beyond subs.size().
Term substitute(const Term &t, std::span<const Term> subs);

std::vector<Term> substitute_all(std::span<const Term> ts,
                                 std::span<const Term> subs);

/// x1..xn.
std::vector<Term> identity_terms(std::size_t n);

/// Checks argument counts and projection bounds against the signature.
void check_term(const Signature &sig, const Term &t, std::size_t n_vars);

/// An atomic filter formula f(t1,...,ta). Ordered by filter name, then by
/// the canonical text of the argument list.
class AFF {
public:
  AFF(std::string filter, std::vector<Term> args);

  const std::string &filter() const { return filter_; }
  const std::vector<Term> &args() const { return args_; }
  const std::string &args_key() const { return key_; }

  /// `f(t1,...,ta)`.
  std::string str() const;

  friend bool operator==(const AFF &a, const AFF &b) {
    return a.filter_ == b.filter_ && a.key_ == b.key_;
  }
  friend std::strong_ordering operator<=>(const AFF &a, const AFF &b) {
    if (auto c = a.filter_ <=> b.filter_; c != 0)
      return c;
    return a.key_ <=> b.key_;
  }

private:
  std::string filter_;
  std::vector<Term> args_;
  std::string key_;
};

AFF substitute(const AFF &a, std::span<const Term> subs);

/// A consistent conjunction of signed atoms. The empty conjunction is ⊤.
class CFF {
public:
  CFF() = default;

  /// Throws AlgebraError if the same atom is given with both polarities.
  static CFF of(std::initializer_list<std::pair<AFF, bool>> clauses);

  static CFF atom(AFF a, bool polarity);

  bool is_top() const { return clauses_.empty(); }
  std::size_t size() const { return clauses_.size(); }
  const std::map<AFF, bool> &clauses() const { return clauses_; }

  /// nullopt if `a` is absent.
  std::optional<bool> polarity(const AFF &a) const;

  /// `T`, or `&`-joined clauses in AFF order with `!` for negative ones.
  std::string str() const;

  friend bool operator==(const CFF &, const CFF &) = default;

private:
  friend std::optional<CFF> try_conjoin(const CFF &, const CFF &);
  friend std::optional<CFF> substitute(const CFF &, std::span<const Term>);
  std::map<AFF, bool> clauses_;
};

/// True iff some atom occurs in both with opposite polarity.
bool cff_disjoint(const CFF &a, const CFF &b);

/// Clause-set union. Throws AlgebraError on disjoint inputs.
CFF cff_conjoin(const CFF &a, const CFF &b);

/// nullopt when the inputs are disjoint.
std::optional<CFF> try_conjoin(const CFF &a, const CFF &b);

/// Substitutes into every clause. Distinct atoms may become identical; if
/// two of them then carry opposite polarities the result is unsatisfiable
/// and nullopt is returned.
std::optional<CFF> substitute(const CFF &c, std::span<const Term> subs);

/// Truth of the conjunction under a total assignment of its atoms.
/// `truth(a)` must return the value of atom a.
template <typename F> bool cff_holds(const CFF &c, F &&truth) {
  for (const auto &[aff, pol] : c.clauses())
    if (truth(aff) != pol)
      return false;
  return true;
}

// Text parsers for the canonical forms above. They accept exactly what the
// serializers produce, plus optional whitespace between tokens.
Term parse_term(std::string_view text);
AFF parse_aff(std::string_view text);
CFF parse_cff(std::string_view text);

} // namespace refinealg

#endif // REFINEALG_TERM_HPP
