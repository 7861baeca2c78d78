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

#include "refinealg/workflow_io.hpp"

#include "json_util.hpp"

namespace refinealg {

using detail::json;

namespace {

EMorphism emorphism_from_json(const json &j) {
  detail::check_keys(j, "E diagram", {"dom", "cod", "slices", "cod_names"});
  EMorphism m;
  m.dom = detail::get_schema(detail::member(j, "dom", "E diagram"), "dom");
  m.cod = detail::get_schema(detail::member(j, "cod", "E diagram"), "cod");
  const json &slices = detail::member(j, "slices", "E diagram");
  if (!slices.is_array())
    throw ParseError("\"slices\" must be an array");
  for (const auto &s : slices) {
    detail::check_keys(s, "E slice", {"offset", "gen"});
    ESlice slice;
    slice.offset = detail::get_index(detail::member(s, "offset", "E slice"),
                                     "offset");
    const json &g = detail::member(s, "gen", "E slice");
    detail::check_keys(g, "E generator", {"kind", "name", "type", "type2"});
    auto kind = detail::get_string(detail::member(g, "kind", "E generator"),
                                   "kind");
    auto str = [&](const char *key) {
      return detail::get_string(detail::member(g, key, "E generator"), key);
    };
    if (kind == "op") {
      detail::check_keys(g, "op generator", {"kind", "name"});
      slice.gen = EGenerator::op(str("name"));
    } else if (kind == "copy") {
      detail::check_keys(g, "copy generator", {"kind", "type"});
      slice.gen = EGenerator::copy(str("type"));
    } else if (kind == "discard") {
      detail::check_keys(g, "discard generator", {"kind", "type"});
      slice.gen = EGenerator::discard(str("type"));
    } else if (kind == "swap") {
      detail::check_keys(g, "swap generator", {"kind", "type", "type2"});
      slice.gen = EGenerator::swap(str("type"), str("type2"));
    } else {
      throw ParseError("unknown E generator kind \"" + kind + "\"");
    }
    m.slices.push_back(std::move(slice));
  }
  return m;
}

json emorphism_to_json(const EMorphism &m) {
  json slices = json::array();
  for (const auto &s : m.slices) {
    json g;
    switch (s.gen.kind) {
    case EGenerator::Kind::Op:
      g = {{"kind", "op"}, {"name", s.gen.name}};
      break;
    case EGenerator::Kind::Copy:
      g = {{"kind", "copy"}, {"type", s.gen.type}};
      break;
    case EGenerator::Kind::Discard:
      g = {{"kind", "discard"}, {"type", s.gen.type}};
      break;
    case EGenerator::Kind::Swap:
      g = {{"kind", "swap"}, {"type", s.gen.type}, {"type2", s.gen.type2}};
      break;
    }
    slices.push_back(json{{"offset", s.offset}, {"gen", std::move(g)}});
  }
  return json{{"dom", m.dom}, {"cod", m.cod}, {"slices", std::move(slices)}};
}

FSchema get_fschema(const json &j, std::string_view what) {
  if (!j.is_array())
    throw ParseError(std::string(what) + " must be an array of sheets");
  FSchema out;
  for (const auto &sheet : j)
    out.push_back(detail::get_schema(sheet, what));
  return out;
}

FMorphism fmorphism_from_json(const json &j) {
  detail::check_keys(j, "F diagram", {"dom", "cod", "slices", "cod_names"});
  FMorphism m;
  m.dom = get_fschema(detail::member(j, "dom", "F diagram"), "dom");
  m.cod = get_fschema(detail::member(j, "cod", "F diagram"), "cod");
  const json &slices = detail::member(j, "slices", "F diagram");
  if (!slices.is_array())
    throw ParseError("\"slices\" must be an array");
  for (const auto &s : slices) {
    detail::check_keys(s, "F slice", {"sheet", "gen"});
    FSlice slice;
    slice.sheet =
        detail::get_index(detail::member(s, "sheet", "F slice"), "sheet");
    const json &g = detail::member(s, "gen", "F slice");
    detail::require_object(g, "F generator");
    auto kind = detail::get_string(detail::member(g, "kind", "F generator"),
                                   "kind");
    auto schema = [&](const char *key) {
      return detail::get_schema(detail::member(g, key, "F generator"), key);
    };
    if (kind == "lift") {
      detail::check_keys(g, "lift generator", {"kind", "morphism"});
      slice.gen = FGenerator::make_lift(
          emorphism_from_json(detail::member(g, "morphism", "lift generator")));
    } else if (kind == "filter") {
      detail::check_keys(g, "filter generator", {"kind", "name", "rest"});
      slice.gen = FGenerator::make_filter(
          detail::get_string(detail::member(g, "name", "filter generator"),
                             "name"),
          schema("rest"));
    } else if (kind == "union") {
      detail::check_keys(g, "union generator", {"kind", "type"});
      slice.gen = FGenerator::make_union(schema("type"));
    } else if (kind == "empty") {
      detail::check_keys(g, "empty generator", {"kind", "type"});
      slice.gen = FGenerator::make_empty(schema("type"));
    } else if (kind == "sheet_swap") {
      detail::check_keys(g, "sheet_swap generator", {"kind", "a", "b"});
      slice.gen = FGenerator::make_sheet_swap(schema("a"), schema("b"));
    } else {
      throw ParseError("unknown F generator kind \"" + kind + "\"");
    }
    m.slices.push_back(std::move(slice));
  }
  return m;
}

json fmorphism_to_json(const FMorphism &m) {
  json slices = json::array();
  for (const auto &s : m.slices) {
    json g;
    switch (s.gen.kind) {
    case FGenerator::Kind::Lift:
      g = {{"kind", "lift"}, {"morphism", emorphism_to_json(s.gen.lift)}};
      break;
    case FGenerator::Kind::Filter:
      g = {{"kind", "filter"}, {"name", s.gen.filter}, {"rest", s.gen.rest}};
      break;
    case FGenerator::Kind::Union:
      g = {{"kind", "union"}, {"type", s.gen.a}};
      break;
    case FGenerator::Kind::Empty:
      g = {{"kind", "empty"}, {"type", s.gen.a}};
      break;
    case FGenerator::Kind::SheetSwap:
      g = {{"kind", "sheet_swap"}, {"a", s.gen.a}, {"b", s.gen.b}};
      break;
    }
    slices.push_back(json{{"sheet", s.sheet}, {"gen", std::move(g)}});
  }
  return json{{"dom", m.dom}, {"cod", m.cod}, {"slices", std::move(slices)}};
}

// An 𝓔 file has string entries in dom/cod or `offset` slices.
bool looks_like_e(const json &j) {
  if (!j.is_object())
    return false;
  if (auto it = j.find("slices"); it != j.end() && it->is_array())
    for (const auto &s : *it)
      if (s.is_object()) {
        if (s.contains("offset"))
          return true;
        if (s.contains("sheet"))
          return false;
      }
  for (const char *key : {"dom", "cod"})
    if (auto it = j.find(key); it != j.end() && it->is_array())
      for (const auto &e : *it)
        return e.is_string();
  return false;
}

} // namespace

const EMorphism &Workflow::emorphism() const {
  if (!pure_e)
    throw Error("workflow is not a pure E diagram");
  return morphism.slices.front().gen.lift;
}

EMorphism parse_emorphism(std::string_view text) {
  return emorphism_from_json(detail::parse_json(text));
}

FMorphism parse_fmorphism(std::string_view text) {
  return fmorphism_from_json(detail::parse_json(text));
}

Workflow parse_workflow(std::string_view text) {
  json j = detail::parse_json(text);
  Workflow w;
  if (looks_like_e(j)) {
    w.pure_e = true;
    w.morphism = f_lift(emorphism_from_json(j));
  } else {
    w.morphism = fmorphism_from_json(j);
  }
  if (auto it = j.find("cod_names"); it != j.end()) {
    if (!it->is_array())
      throw ParseError("\"cod_names\" must be an array");
    if (w.pure_e) {
      w.cod_names.push_back(detail::get_schema(*it, "cod_names"));
    } else {
      for (const auto &sheet : *it)
        w.cod_names.push_back(detail::get_schema(sheet, "cod_names"));
    }
    if (w.cod_names.size() != w.morphism.cod.size())
      throw ParseError("\"cod_names\" must name every output sheet");
    for (std::size_t k = 0; k < w.cod_names.size(); ++k)
      if (w.cod_names[k].size() != w.morphism.cod[k].size())
        throw ParseError("\"cod_names\" sheet " + std::to_string(k) +
                         " has the wrong number of columns");
  }
  return w;
}

Workflow load_workflow_file(const std::string &path) {
  return parse_workflow(detail::read_file(path));
}

std::string serialize_emorphism(const EMorphism &m) {
  return emorphism_to_json(m).dump(2) + "\n";
}

std::string serialize_fmorphism(const FMorphism &m) {
  return fmorphism_to_json(m).dump(2) + "\n";
}

std::string serialize_workflow(const Workflow &w) {
  json j = w.pure_e ? emorphism_to_json(w.emorphism())
                    : fmorphism_to_json(w.morphism);
  if (!w.cod_names.empty()) {
    if (w.pure_e)
      j["cod_names"] = w.cod_names.front();
    else
      j["cod_names"] = w.cod_names;
  }
  return j.dump(2) + "\n";
}

} // namespace refinealg
