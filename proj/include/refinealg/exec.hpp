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

#ifndef REFINEALG_EXEC_HPP
#define REFINEALG_EXEC_HPP

#include "refinealg/fmorphism.hpp"
#include "refinealg/table.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace refinealg {

/// Evaluates an 𝓔 diagram on one row.
Row run_e_row(const Signature &sig, const Valuation &val, const EMorphism &m,
              Row row);

/// Column names after `m`: copies keep the name, operations name their
/// outputs after themselves (`op`, or `op[k]` for several outputs).
std::vector<std::string> propagate_names(const Signature &sig,
                                         const EMorphism &m,
                                         std::vector<std::string> names);

/// Executes a workflow. Filters keep the row order within each output
/// sheet; unions put the first sheet's rows first; no rows are ever merged.
/// `threads` == 0 uses the hardware concurrency.
SheetedTables run_workflow(const Signature &sig, const Valuation &val,
                           const FMorphism &m, const SheetedTables &input,
                           std::size_t threads = 1);

} // namespace refinealg

#endif // REFINEALG_EXEC_HPP
