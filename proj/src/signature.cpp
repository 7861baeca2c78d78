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

#include "refinealg/signature.hpp"

#include "json_util.hpp"
#include "refinealg/error.hpp"

namespace refinealg {

using detail::json;

bool is_identifier(std::string_view s) {
  if (s.empty())
    return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!alpha(s.front()))
    return false;
  for (char c : s)
    if (!alpha(c) && !(c >= '0' && c <= '9'))
      return false;
  return true;
}

void Signature::require_type(const std::string &type) const {
  if (!datatypes_.count(type))
    throw SignatureError("undeclared datatype", type);
}

void Signature::add_datatype(std::string name) {
  if (!is_identifier(name))
    throw SignatureError("invalid datatype name", name);
  if (!datatypes_.insert(name).second)
    throw SignatureError("duplicate datatype", name);
}

void Signature::add_operation(OpDecl op) {
  if (!is_identifier(op.name))
    throw SignatureError("invalid operation name", op.name);
  if (operations_.count(op.name))
    throw SignatureError("duplicate operation", op.name);
  if (filters_.count(op.name))
    throw SignatureError("operation name clashes with a filter", op.name);
  if (op.cod.empty())
    throw SignatureError("operation must have a non-empty codomain", op.name);
  for (const auto &t : op.dom)
    require_type(t);
  for (const auto &t : op.cod)
    require_type(t);
  std::string key = op.name;
  operations_.emplace(std::move(key), std::move(op));
}

void Signature::add_filter(FilterDecl filter) {
  if (!is_identifier(filter.name))
    throw SignatureError("invalid filter name", filter.name);
  if (filters_.count(filter.name))
    throw SignatureError("duplicate filter", filter.name);
  if (operations_.count(filter.name))
    throw SignatureError("filter name clashes with an operation",
                         filter.name);
  if (filter.dom.empty())
    throw SignatureError("filter must read at least one column", filter.name);
  for (const auto &t : filter.dom)
    require_type(t);
  std::string key = filter.name;
  filters_.emplace(std::move(key), std::move(filter));
}

bool Signature::has_datatype(std::string_view name) const {
  return datatypes_.find(name) != datatypes_.end();
}

const OpDecl *Signature::find_operation(std::string_view name) const {
  auto it = operations_.find(name);
  return it == operations_.end() ? nullptr : &it->second;
}

const FilterDecl *Signature::find_filter(std::string_view name) const {
  auto it = filters_.find(name);
  return it == filters_.end() ? nullptr : &it->second;
}

const OpDecl &Signature::operation(std::string_view name) const {
  if (auto *op = find_operation(name))
    return *op;
  throw SignatureError("unknown operation", std::string(name));
}

const FilterDecl &Signature::filter(std::string_view name) const {
  if (auto *f = find_filter(name))
    return *f;
  throw SignatureError("unknown filter", std::string(name));
}

Arity Signature::arity_of(std::string_view name) const {
  if (auto *op = find_operation(name))
    return {op->dom, {op->cod}, false};
  if (auto *f = find_filter(name))
    return {f->dom, {f->dom, f->dom}, true};
  throw SignatureError("unknown name", std::string(name));
}

Signature parse_signature(std::string_view text) {
  json j = detail::parse_json(text);
  detail::check_keys(j, "signature", {"datatypes", "operations", "filters"});
  Signature sig;
  const json &types = detail::member(j, "datatypes", "signature");
  if (!types.is_array())
    throw ParseError("\"datatypes\" must be an array");
  for (const auto &t : types)
    sig.add_datatype(detail::get_string(t, "datatype name"));

  const json &ops = detail::member(j, "operations", "signature");
  if (!ops.is_array())
    throw ParseError("\"operations\" must be an array");
  for (const auto &o : ops) {
    detail::check_keys(o, "operation", {"name", "dom", "cod"});
    OpDecl decl;
    decl.name = detail::get_string(detail::member(o, "name", "operation"),
                                   "operation name");
    decl.dom = detail::get_schema(detail::member(o, "dom", "operation"),
                                  "operation dom");
    decl.cod = detail::get_schema(detail::member(o, "cod", "operation"),
                                  "operation cod");
    sig.add_operation(std::move(decl));
  }

  const json &filters = detail::member(j, "filters", "signature");
  if (!filters.is_array())
    throw ParseError("\"filters\" must be an array");
  for (const auto &f : filters) {
    detail::check_keys(f, "filter", {"name", "dom"});
    FilterDecl decl;
    decl.name =
        detail::get_string(detail::member(f, "name", "filter"), "filter name");
    decl.dom =
        detail::get_schema(detail::member(f, "dom", "filter"), "filter dom");
    sig.add_filter(std::move(decl));
  }
  return sig;
}

std::string serialize_signature(const Signature &sig) {
  json j;
  j["datatypes"] = json::array();
  for (const auto &t : sig.datatypes())
    j["datatypes"].push_back(t);
  j["operations"] = json::array();
  for (const auto &[name, op] : sig.operations())
    j["operations"].push_back(
        json{{"name", op.name}, {"dom", op.dom}, {"cod", op.cod}});
  j["filters"] = json::array();
  for (const auto &[name, f] : sig.filters())
    j["filters"].push_back(json{{"name", f.name}, {"dom", f.dom}});
  return j.dump(2) + "\n";
}

Signature load_signature_file(const std::string &path) {
  return parse_signature(detail::read_file(path));
}

} // namespace refinealg
