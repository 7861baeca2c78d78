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

#include "refinealg/fmorphism.hpp"

#include "refinealg/error.hpp"

namespace refinealg {

std::string schema_string(const ESchema &s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i)
      out += ",";
    out += s[i];
  }
  return out + "]";
}

std::string schema_string(const FSchema &s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i)
      out += ",";
    out += schema_string(s[i]);
  }
  return out + "]";
}

bool single_sheet(const FSchema &s) { return s.size() == 1; }

std::pair<FSchema, FSchema> generator_sheets(const Signature &sig,
                                             const FGenerator &g) {
  auto check_types = [&](const ESchema &s) {
    for (const auto &t : s)
      if (!sig.has_datatype(t))
        throw TypeError("undeclared datatype \"" + t + "\"");
  };
  switch (g.kind) {
  case FGenerator::Kind::Lift: {
    if (auto issue = e_typecheck(sig, g.lift))
      throw TypeError("lifted diagram: " +
                      (issue->slice == TypeError::npos
                           ? issue->message
                           : "slice " + std::to_string(issue->slice) + ": " +
                                 issue->message));
    return {{g.lift.dom}, {g.lift.cod}};
  }
  case FGenerator::Kind::Filter: {
    const FilterDecl *f = sig.find_filter(g.filter);
    if (!f)
      throw TypeError("undeclared filter \"" + g.filter + "\"");
    check_types(g.rest);
    ESchema sheet = f->dom;
    sheet.insert(sheet.end(), g.rest.begin(), g.rest.end());
    return {{sheet}, {sheet, sheet}};
  }
  case FGenerator::Kind::Union:
    check_types(g.a);
    return {{g.a, g.a}, {g.a}};
  case FGenerator::Kind::Empty:
    check_types(g.a);
    return {{}, {g.a}};
  case FGenerator::Kind::SheetSwap:
    check_types(g.a);
    check_types(g.b);
    return {{g.a, g.b}, {g.b, g.a}};
  }
  return {};
}

FSchema apply_fslice(const Signature &sig, const FSchema &sheets,
                     const FSlice &slice, std::size_t index) {
  std::pair<FSchema, FSchema> ports;
  try {
    ports = generator_sheets(sig, slice.gen);
  } catch (const TypeError &e) {
    throw TypeError(e.message(), index);
  }
  const auto &[in, out] = ports;
  if (slice.sheet + in.size() > sheets.size() || slice.sheet > sheets.size())
    throw TypeError("generator at sheet " + std::to_string(slice.sheet) +
                        " needs " + std::to_string(in.size()) +
                        " sheets but only " + std::to_string(sheets.size()) +
                        " exist",
                    index);
  for (std::size_t i = 0; i < in.size(); ++i)
    if (sheets[slice.sheet + i] != in[i])
      throw TypeError("sheet " + std::to_string(slice.sheet + i) + " is " +
                          schema_string(sheets[slice.sheet + i]) +
                          ", generator expects " + schema_string(in[i]),
                      index);
  FSchema next(sheets.begin(),
               sheets.begin() + static_cast<std::ptrdiff_t>(slice.sheet));
  next.insert(next.end(), out.begin(), out.end());
  next.insert(next.end(),
              sheets.begin() +
                  static_cast<std::ptrdiff_t>(slice.sheet + in.size()),
              sheets.end());
  return next;
}

std::optional<TypeIssue> f_typecheck(const Signature &sig,
                                     const FMorphism &m) {
  for (const auto &sheet : m.dom)
    for (const auto &t : sheet)
      if (!sig.has_datatype(t))
        return TypeIssue{TypeError::npos,
                         "undeclared datatype \"" + t + "\""};
  FSchema sheets = m.dom;
  for (std::size_t i = 0; i < m.slices.size(); ++i) {
    try {
      sheets = apply_fslice(sig, sheets, m.slices[i], i);
    } catch (const TypeError &e) {
      return TypeIssue{i, e.message()};
    }
  }
  if (sheets != m.cod)
    return TypeIssue{TypeError::npos, "diagram ends at " +
                                          schema_string(sheets) +
                                          " but codomain is " +
                                          schema_string(m.cod)};
  return std::nullopt;
}

void f_require_typed(const Signature &sig, const FMorphism &m) {
  if (auto issue = f_typecheck(sig, m))
    throw TypeError(issue->message, issue->slice);
}

FMorphism f_identity(FSchema schema) { return {schema, schema, {}}; }

FMorphism f_lift(EMorphism m) {
  FMorphism out{{m.dom}, {m.cod}, {}};
  out.slices.push_back({0, FGenerator::make_lift(std::move(m))});
  return out;
}

FMorphism f_compose(const FMorphism &f, const FMorphism &g) {
  if (f.cod != g.dom)
    throw TypeError("cannot compose: " + schema_string(f.cod) + " vs " +
                    schema_string(g.dom));
  FMorphism out{f.dom, g.cod, f.slices};
  out.slices.insert(out.slices.end(), g.slices.begin(), g.slices.end());
  return out;
}

FMorphism f_tensor(const FMorphism &f, const FMorphism &g) {
  FMorphism out;
  out.dom = f.dom;
  out.dom.insert(out.dom.end(), g.dom.begin(), g.dom.end());
  out.cod = f.cod;
  out.cod.insert(out.cod.end(), g.cod.begin(), g.cod.end());
  out.slices = f.slices;
  for (auto s : g.slices) {
    s.sheet += f.cod.size();
    out.slices.push_back(std::move(s));
  }
  return out;
}

} // namespace refinealg
