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

#include "refinealg/valuation.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <regex>

namespace refinealg {

using detail::json;

namespace {

constexpr std::string_view kEuro = "\xE2\x82\xAC"; // U+20AC

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  if (s.empty())
    return std::nullopt;
  const char *first = s.data();
  if (*first == '+')
    ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    return std::nullopt;
  return v;
}

// "25€" -> 2500, "12.5€" -> 1250, "-3.07€" -> -307.
std::optional<std::int64_t> parse_money(std::string_view s) {
  if (s.size() <= kEuro.size() || s.substr(s.size() - kEuro.size()) != kEuro)
    return std::nullopt;
  s.remove_suffix(kEuro.size());
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view() : s.substr(dot + 1);
  if (whole.empty() || (dot != std::string_view::npos && frac.empty()) ||
      frac.size() > 2)
    return std::nullopt;
  auto digits = [](std::string_view d) {
    return std::all_of(d.begin(), d.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  if (!digits(whole) || !digits(frac))
    return std::nullopt;
  auto w = parse_int(whole);
  if (!w)
    return std::nullopt;
  std::int64_t cents = *w * 100;
  if (frac.size() == 1)
    cents += (frac[0] - '0') * 10;
  else if (frac.size() == 2)
    cents += (frac[0] - '0') * 10 + (frac[1] - '0');
  return negative ? -cents : cents;
}

std::string render_money(std::int64_t cents) {
  std::string out;
  if (cents < 0) {
    out = "-";
    cents = -cents;
  }
  out += std::to_string(cents / 100);
  if (cents % 100) {
    auto frac = std::to_string(cents % 100);
    out += "." + std::string(2 - frac.size(), '0') + frac;
  }
  return out + std::string(kEuro);
}

const std::string &as_text(const Value &v, std::string_view what) {
  if (const auto *s = std::get_if<std::string>(&v))
    return *s;
  throw EvalError(std::string(what) + " expects text input");
}

std::int64_t as_int(const Value &v, std::string_view what) {
  if (const auto *i = std::get_if<std::int64_t>(&v))
    return *i;
  throw EvalError(std::string(what) + " expects numeric input");
}

const std::regex &cached_regex(const std::string &pattern) {
  thread_local std::map<std::string, std::regex> cache;
  auto it = cache.find(pattern);
  if (it == cache.end())
    it = cache.emplace(pattern, std::regex(pattern)).first;
  return it->second;
}

TypeDomain::Kind domain_kind(const std::string &k) {
  if (k == "string")
    return TypeDomain::Kind::String;
  if (k == "int")
    return TypeDomain::Kind::Int;
  if (k == "enum")
    return TypeDomain::Kind::Enum;
  if (k == "money")
    return TypeDomain::Kind::Money;
  throw ParseError("unknown type kind \"" + k + "\"");
}

std::string kind_name(TypeDomain::Kind k) {
  switch (k) {
  case TypeDomain::Kind::String:
    return "string";
  case TypeDomain::Kind::Int:
    return "int";
  case TypeDomain::Kind::Enum:
    return "enum";
  case TypeDomain::Kind::Money:
    return "money";
  }
  return {};
}

// JSON cell: a string in the domain's text syntax, or an integer payload.
Value cell_from_json(const TypeDomain &d, const json &j) {
  Value v;
  if (j.is_string())
    v = d.parse(j.get<std::string>());
  else if (j.is_number_integer())
    v = j.get<std::int64_t>();
  else
    throw ParseError("table cells must be strings or integers");
  if (!d.contains(v))
    throw ParseError("cell " + j.dump() + " is outside its domain");
  return v;
}

json cell_to_json(const Value &v) {
  if (const auto *i = std::get_if<std::int64_t>(&v))
    return *i;
  return std::get<std::string>(v);
}

Row row_from_json(const Valuation &val, const ESchema &schema, const json &j,
                  std::string_view what) {
  if (!j.is_array() || j.size() != schema.size())
    throw ParseError(std::string(what) + " rows must have " +
                     std::to_string(schema.size()) + " cells");
  Row r;
  for (std::size_t i = 0; i < schema.size(); ++i)
    r.push_back(cell_from_json(val.domain(schema[i]), j[i]));
  return r;
}

// Every tuple over the finite domains of `schema`, in lexicographic order.
std::vector<Row> all_rows(const Valuation &val, const ESchema &schema) {
  std::vector<Row> out{{}};
  for (const auto &t : schema) {
    std::vector<Row> next;
    for (const auto &prefix : out)
      for (const auto &v : val.domain(t).enumerate()) {
        Row r = prefix;
        r.push_back(v);
        next.push_back(std::move(r));
      }
    out = std::move(next);
  }
  return out;
}

} // namespace

bool TypeDomain::contains(const Value &v) const {
  switch (kind) {
  case Kind::String:
    return std::holds_alternative<std::string>(v);
  case Kind::Int:
  case Kind::Money:
    return std::holds_alternative<std::int64_t>(v);
  case Kind::Enum:
    return std::holds_alternative<std::string>(v) &&
           std::find(values.begin(), values.end(), std::get<std::string>(v)) !=
               values.end();
  }
  return false;
}

Value TypeDomain::parse(std::string_view text) const {
  switch (kind) {
  case Kind::String:
    return std::string(text);
  case Kind::Int:
    if (auto v = parse_int(text))
      return *v;
    throw EvalError("not an integer: \"" + std::string(text) + "\"");
  case Kind::Money:
    if (auto v = parse_money(text))
      return *v;
    throw EvalError("not an amount: \"" + std::string(text) + "\"");
  case Kind::Enum:
    if (std::find(values.begin(), values.end(), text) == values.end())
      throw EvalError("not an enumerated value: \"" + std::string(text) +
                      "\"");
    return std::string(text);
  }
  return {};
}

std::string TypeDomain::render(const Value &v) const {
  if (const auto *i = std::get_if<std::int64_t>(&v))
    return kind == Kind::Money ? render_money(*i) : std::to_string(*i);
  return std::get<std::string>(v);
}

std::vector<Value> TypeDomain::enumerate() const {
  if (!finite())
    throw EvalError("domain is not finite");
  return {values.begin(), values.end()};
}

const TypeDomain &Valuation::domain(std::string_view type) const {
  auto it = types.find(type);
  if (it == types.end())
    throw EvalError("no domain for datatype \"" + std::string(type) + "\"");
  return it->second;
}

void Valuation::check_covers(const Signature &sig) const {
  for (const auto &t : sig.datatypes())
    domain(t);
  for (const auto &[name, decl] : sig.operations()) {
    auto it = ops.find(name);
    if (it == ops.end())
      throw EvalError("no interpretation for operation \"" + name + "\"");
    const OpImpl &impl = it->second;
    if (impl.kind == OpImpl::Kind::Table) {
      for (const auto &[in, out] : impl.table) {
        if (in.size() != decl.dom.size() || out.size() != decl.cod.size())
          throw EvalError("table for \"" + name + "\" has rows of the wrong "
                          "shape");
        for (std::size_t i = 0; i < in.size(); ++i)
          if (!domain(decl.dom[i]).contains(in[i]))
            throw EvalError("table for \"" + name +
                            "\" has an input outside the domain");
        for (std::size_t i = 0; i < out.size(); ++i)
          if (!domain(decl.cod[i]).contains(out[i]))
            throw EvalError("table for \"" + name +
                            "\" has an output outside the domain");
      }
      bool finite = std::all_of(decl.dom.begin(), decl.dom.end(),
                                [&](const std::string &t) {
                                  return domain(t).finite();
                                });
      if (!finite)
        throw EvalError("table for \"" + name +
                        "\" needs finite input domains");
      for (const auto &r : all_rows(*this, decl.dom))
        if (!impl.table.contains(r))
          throw EvalError("table for \"" + name + "\" is not total");
      continue;
    }
    const auto &fn = impl.fn;
    const std::size_t n = decl.dom.size(), p = decl.cod.size();
    bool ok = false;
    if (fn == "concat")
      ok = p == 1;
    else if (fn == "uppercase" || fn == "lowercase")
      ok = n == 1 && p == 1;
    else if (fn == "constant")
      ok = impl.constants.size() == p;
    else if (fn == "add" || fn == "sub" || fn == "mul")
      ok = n == 2 && p == 1;
    else if (fn == "identity")
      ok = n == p;
    else
      throw EvalError("unknown builtin \"" + fn + "\" for \"" + name + "\"");
    if (!ok)
      throw EvalError("builtin \"" + fn + "\" does not fit the arity of \"" +
                      name + "\"");
    if (fn == "constant")
      for (std::size_t k = 0; k < p; ++k)
        domain(decl.cod[k]).parse(impl.constants[k]);
  }
  for (const auto &[name, decl] : sig.filters()) {
    auto it = filters.find(name);
    if (it == filters.end())
      throw EvalError("no interpretation for filter \"" + name + "\"");
    const FilterImpl &impl = it->second;
    if (impl.kind == FilterImpl::Kind::Set) {
      for (const auto &r : impl.accepted) {
        if (r.size() != decl.dom.size())
          throw EvalError("accepted set of \"" + name +
                          "\" has tuples of the wrong width");
        for (std::size_t i = 0; i < r.size(); ++i)
          if (!domain(decl.dom[i]).contains(r[i]))
            throw EvalError("accepted set of \"" + name +
                            "\" leaves the filtered domain");
      }
      continue;
    }
    static const std::set<std::string> comparisons = {"eq", "ne", "lt",
                                                      "le", "gt", "ge"};
    if (comparisons.contains(impl.fn)) {
      if (!impl.value && decl.dom.size() < 2)
        throw EvalError("comparison \"" + name +
                        "\" needs a value or two columns");
      if (impl.value)
        domain(decl.dom[0]).parse(*impl.value);
    } else if (impl.fn == "regex") {
      try {
        cached_regex(impl.pattern);
      } catch (const std::regex_error &e) {
        throw EvalError("bad pattern for \"" + name + "\": " + e.what());
      }
    } else {
      throw EvalError("unknown builtin \"" + impl.fn + "\" for \"" + name +
                      "\"");
    }
  }
}

Row Valuation::apply_op(const Signature &sig, std::string_view op,
                        std::span<const Value> in) const {
  const OpDecl &decl = sig.operation(op);
  auto it = ops.find(op);
  if (it == ops.end())
    throw EvalError("no interpretation for operation \"" + std::string(op) +
                    "\"");
  const OpImpl &impl = it->second;
  Row out;
  if (impl.kind == OpImpl::Kind::Table) {
    auto row = impl.table.find(Row(in.begin(), in.end()));
    if (row == impl.table.end())
      throw EvalError("table for \"" + std::string(op) +
                      "\" has no entry for the input");
    out = row->second;
  } else if (impl.fn == "concat") {
    std::string s;
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (i)
        s += impl.sep;
      s += domain(decl.dom[i]).render(in[i]);
    }
    out.push_back(std::move(s));
  } else if (impl.fn == "uppercase" || impl.fn == "lowercase") {
    std::string s = as_text(in[0], impl.fn);
    const bool up = impl.fn == "uppercase";
    for (auto &c : s)
      c = static_cast<char>(up ? std::toupper(static_cast<unsigned char>(c))
                               : std::tolower(static_cast<unsigned char>(c)));
    out.push_back(std::move(s));
  } else if (impl.fn == "constant") {
    for (std::size_t k = 0; k < decl.cod.size(); ++k)
      out.push_back(domain(decl.cod[k]).parse(impl.constants[k]));
  } else if (impl.fn == "add" || impl.fn == "sub" || impl.fn == "mul") {
    const auto a = as_int(in[0], impl.fn), b = as_int(in[1], impl.fn);
    out.push_back(impl.fn == "add"   ? a + b
                  : impl.fn == "sub" ? a - b
                                     : a * b);
  } else if (impl.fn == "identity") {
    out.assign(in.begin(), in.end());
  } else {
    throw EvalError("unknown builtin \"" + impl.fn + "\"");
  }
  if (out.size() != decl.cod.size())
    throw EvalError("\"" + std::string(op) + "\" produced " +
                    std::to_string(out.size()) + " values");
  for (std::size_t k = 0; k < out.size(); ++k)
    if (!domain(decl.cod[k]).contains(out[k]))
      throw EvalError("\"" + std::string(op) +
                      "\" produced a value outside its codomain");
  return out;
}

bool Valuation::test_filter(const Signature &sig, std::string_view filter,
                            std::span<const Value> in) const {
  const FilterDecl &decl = sig.filter(filter);
  auto it = filters.find(filter);
  if (it == filters.end())
    throw EvalError("no interpretation for filter \"" + std::string(filter) +
                    "\"");
  const FilterImpl &impl = it->second;
  if (impl.kind == FilterImpl::Kind::Set)
    return impl.accepted.contains(Row(in.begin(), in.end()));
  if (impl.fn == "regex") {
    const auto &d = domain(decl.dom[0]);
    return std::regex_search(d.render(in[0]), cached_regex(impl.pattern));
  }
  const Value rhs = impl.value ? domain(decl.dom[0]).parse(*impl.value) : in[1];
  const Value &lhs = in[0];
  if (impl.fn == "eq")
    return lhs == rhs;
  if (impl.fn == "ne")
    return lhs != rhs;
  if (impl.fn == "lt")
    return lhs < rhs;
  if (impl.fn == "le")
    return lhs <= rhs;
  if (impl.fn == "gt")
    return lhs > rhs;
  if (impl.fn == "ge")
    return lhs >= rhs;
  throw EvalError("unknown builtin \"" + impl.fn + "\"");
}

Valuation parse_valuation(const Signature &sig, std::string_view text) {
  json j = detail::parse_json(text);
  detail::check_keys(j, "valuation", {"types", "ops", "filters"});
  Valuation val;
  for (const auto &[name, spec] :
       detail::member(j, "types", "valuation").items()) {
    detail::check_keys(spec, "type domain", {"kind", "values"});
    TypeDomain d;
    d.kind = domain_kind(
        detail::get_string(detail::member(spec, "kind", "type domain"), "kind"));
    if (d.kind == TypeDomain::Kind::Enum) {
      d.values = detail::get_schema(detail::member(spec, "values", "enum"),
                                    "enum values");
      if (d.values.empty())
        throw ParseError("enum domain of \"" + name + "\" is empty");
    } else if (spec.contains("values")) {
      throw ParseError("only enum domains take \"values\"");
    }
    val.types.emplace(name, std::move(d));
  }

  if (auto ops = j.find("ops"); ops != j.end()) {
    detail::require_object(*ops, "\"ops\"");
    for (const auto &[name, spec] : ops->items()) {
      const OpDecl &decl = sig.operation(name);
      OpImpl impl;
      auto kind = detail::get_string(detail::member(spec, "kind", "op"), "kind");
      if (kind == "builtin") {
        detail::check_keys(spec, "builtin op", {"kind", "fn", "args"});
        impl.fn = detail::get_string(detail::member(spec, "fn", "builtin op"),
                                     "fn");
        if (auto args = spec.find("args"); args != spec.end()) {
          detail::check_keys(*args, "op args", {"sep", "values"});
          if (args->contains("sep"))
            impl.sep = detail::get_string(args->at("sep"), "sep");
          if (args->contains("values"))
            impl.constants = detail::get_schema(args->at("values"), "values");
        }
      } else if (kind == "table") {
        detail::check_keys(spec, "table op", {"kind", "rows"});
        impl.kind = OpImpl::Kind::Table;
        ESchema both = decl.dom;
        both.insert(both.end(), decl.cod.begin(), decl.cod.end());
        for (const auto &r : detail::member(spec, "rows", "table op")) {
          Row full = row_from_json(val, both, r, "op table");
          Row in(full.begin(),
                 full.begin() + static_cast<std::ptrdiff_t>(decl.dom.size()));
          Row out(full.begin() + static_cast<std::ptrdiff_t>(decl.dom.size()),
                  full.end());
          if (!impl.table.emplace(std::move(in), std::move(out)).second)
            throw ParseError("table for \"" + name + "\" repeats an input");
        }
      } else {
        throw ParseError("unknown op kind \"" + kind + "\"");
      }
      val.ops.emplace(name, std::move(impl));
    }
  }

  if (auto filters = j.find("filters"); filters != j.end()) {
    detail::require_object(*filters, "\"filters\"");
    for (const auto &[name, spec] : filters->items()) {
      const FilterDecl &decl = sig.filter(name);
      FilterImpl impl;
      auto kind =
          detail::get_string(detail::member(spec, "kind", "filter"), "kind");
      if (kind == "builtin") {
        detail::check_keys(spec, "builtin filter", {"kind", "fn", "args"});
        impl.fn = detail::get_string(
            detail::member(spec, "fn", "builtin filter"), "fn");
        if (auto args = spec.find("args"); args != spec.end()) {
          detail::check_keys(*args, "filter args", {"value", "pattern"});
          if (args->contains("value")) {
            const auto &v = args->at("value");
            impl.value = v.is_string() ? v.get<std::string>() : v.dump();
          }
          if (args->contains("pattern"))
            impl.pattern = detail::get_string(args->at("pattern"), "pattern");
        }
      } else if (kind == "set") {
        detail::check_keys(spec, "set filter", {"kind", "accepted"});
        impl.kind = FilterImpl::Kind::Set;
        for (const auto &r : detail::member(spec, "accepted", "set filter"))
          impl.accepted.insert(row_from_json(val, decl.dom, r, "accepted"));
      } else {
        throw ParseError("unknown filter kind \"" + kind + "\"");
      }
      val.filters.emplace(name, std::move(impl));
    }
  }
  val.check_covers(sig);
  return val;
}

Valuation load_valuation_file(const Signature &sig, const std::string &path) {
  return parse_valuation(sig, detail::read_file(path));
}

std::string serialize_valuation(const Valuation &v) {
  json j;
  j["types"] = json::object();
  for (const auto &[name, d] : v.types) {
    json spec{{"kind", kind_name(d.kind)}};
    if (d.kind == TypeDomain::Kind::Enum)
      spec["values"] = d.values;
    j["types"][name] = spec;
  }
  j["ops"] = json::object();
  for (const auto &[name, impl] : v.ops) {
    json spec;
    if (impl.kind == OpImpl::Kind::Table) {
      spec["kind"] = "table";
      spec["rows"] = json::array();
      for (const auto &[in, out] : impl.table) {
        json r = json::array();
        for (const auto &c : in)
          r.push_back(cell_to_json(c));
        for (const auto &c : out)
          r.push_back(cell_to_json(c));
        spec["rows"].push_back(r);
      }
    } else {
      spec = {{"kind", "builtin"}, {"fn", impl.fn}};
      json args = json::object();
      if (!impl.sep.empty())
        args["sep"] = impl.sep;
      if (!impl.constants.empty())
        args["values"] = impl.constants;
      if (!args.empty())
        spec["args"] = args;
    }
    j["ops"][name] = spec;
  }
  j["filters"] = json::object();
  for (const auto &[name, impl] : v.filters) {
    json spec;
    if (impl.kind == FilterImpl::Kind::Set) {
      spec["kind"] = "set";
      spec["accepted"] = json::array();
      for (const auto &r : impl.accepted) {
        json row = json::array();
        for (const auto &c : r)
          row.push_back(cell_to_json(c));
        spec["accepted"].push_back(row);
      }
    } else {
      spec = {{"kind", "builtin"}, {"fn", impl.fn}};
      json args = json::object();
      if (impl.value)
        args["value"] = *impl.value;
      if (!impl.pattern.empty())
        args["pattern"] = impl.pattern;
      if (!args.empty())
        spec["args"] = args;
    }
    j["filters"][name] = spec;
  }
  return j.dump(2) + "\n";
}

std::string render_row(const Valuation &v, const ESchema &schema,
                       const Row &row) {
  std::string out = "(";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i)
      out += ", ";
    out += i < schema.size() ? v.domain(schema[i]).render(row[i])
                             : std::string("?");
  }
  return out + ")";
}

} // namespace refinealg
