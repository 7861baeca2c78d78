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

#ifndef REFINEALG_WORKFLOW_IO_HPP
#define REFINEALG_WORKFLOW_IO_HPP

#include "refinealg/fmorphism.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace refinealg {

/// A workflow file: an 𝓕 diagram, or an 𝓔 diagram (held as a single Lift),
/// with optional column names for the output sheets.
struct Workflow {
  FMorphism morphism;
  bool pure_e = false;
  std::vector<std::vector<std::string>> cod_names; // empty when absent

  /// The 𝓔 diagram of a pure file.
  const EMorphism &emorphism() const;
};

EMorphism parse_emorphism(std::string_view text);
FMorphism parse_fmorphism(std::string_view text);

/// Accepts both file kinds. An 𝓔 file has a flat `dom` list of type names
/// and `offset` slices; an 𝓕 file has a list of sheets and `sheet` slices.
Workflow parse_workflow(std::string_view text);
Workflow load_workflow_file(const std::string &path);

/// Pretty-printed JSON with a trailing newline. Key order is fixed, so equal
/// diagrams serialize to identical bytes.
std::string serialize_emorphism(const EMorphism &m);
std::string serialize_fmorphism(const FMorphism &m);
std::string serialize_workflow(const Workflow &w);

} // namespace refinealg

#endif // REFINEALG_WORKFLOW_IO_HPP
