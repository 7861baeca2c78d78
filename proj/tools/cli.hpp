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

#ifndef REFINEALG_TOOLS_CLI_HPP
#define REFINEALG_TOOLS_CLI_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace refinealg::cli {

enum ExitCode : int {
  kEqual = 0,
  kNotEqual = 1,
  kUsage = 2,
  kConjectural = 3,
  kInconsistent = 4,
};

struct CheckOptions {
  std::string sig;
  std::string wf1;
  std::string wf2;
  bool oracle = false;
};

struct NormalizeOptions {
  std::string sig;
  std::string wf;
  std::string out;
};

struct RunOptions {
  std::string sig;
  std::string valuation;
  std::string wf;
  std::vector<std::string> inputs;
  std::string output;
  std::size_t threads = 0;
};

struct ExportOptions {
  std::string sig;
  std::string wf;
  std::string format = "dot";
};

/// Whether check runs the symbolic oracle when neither --oracle nor
/// --no-oracle is given.
bool oracle_by_default();

int cmd_check(const CheckOptions &o, std::ostream &out, std::ostream &err);
int cmd_normalize(const NormalizeOptions &o, std::ostream &out,
                  std::ostream &err);
int cmd_run(const RunOptions &o, std::ostream &out, std::ostream &err);
int cmd_export(const ExportOptions &o, std::ostream &out, std::ostream &err);

/// Full command line without the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

} // namespace refinealg::cli

#endif // REFINEALG_TOOLS_CLI_HPP
