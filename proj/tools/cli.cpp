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

#include "cli.hpp"

#include "refinealg/error.hpp"
#include "refinealg/exec.hpp"
#include "refinealg/export.hpp"
#include "refinealg/grid.hpp"
#include "refinealg/normal_form.hpp"
#include "refinealg/oracle.hpp"
#include "refinealg/workflow_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

namespace refinealg::cli {

namespace {

void write_file(const std::string &path, const std::string &content) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error("cannot write file: " + path);
  f << content;
  if (!f)
    throw Error("failed writing file: " + path);
}

std::string terms_string(const std::vector<Term> &ts) {
  std::string s = "(";
  for (std::size_t i = 0; i < ts.size(); ++i)
    s += (i ? "," : "") + ts[i].str();
  return s + ")";
}

template <typename Fn> int guarded(std::ostream &err, Fn &&fn) {
  try {
    return fn();
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

// Counts the slices of an 𝓔 diagram by generator kind.
std::string e_summary(const EMorphism &e) {
  std::size_t cd = 0, sw = 0, op = 0;
  for (const auto &s : e.slices) {
    switch (s.gen.kind) {
    case EGenerator::Kind::Copy:
    case EGenerator::Kind::Discard:
      ++cd;
      break;
    case EGenerator::Kind::Swap:
      ++sw;
      break;
    case EGenerator::Kind::Op:
      ++op;
      break;
    }
  }
  return std::to_string(e.slices.size()) + " slices (" + std::to_string(cd) +
         " copy/discard, " + std::to_string(sw) + " swap, " +
         std::to_string(op) + " op)";
}

} // namespace

bool oracle_by_default() {
#ifdef NDEBUG
  return false;
#else
  return true;
#endif
}

int cmd_check(const CheckOptions &o, std::ostream &out, std::ostream &err) {
  return guarded(err, [&]() -> int {
    const Signature sig = load_signature_file(o.sig);
    const Workflow w1 = load_workflow_file(o.wf1);
    const Workflow w2 = load_workflow_file(o.wf2);
    const FMorphism &a = w1.morphism;
    const FMorphism &b = w2.morphism;
    if (a.dom != b.dom || a.cod != b.cod) {
      err << "error: boundaries differ: " << schema_string(a.dom) << " -> "
          << schema_string(a.cod) << " vs " << schema_string(b.dom) << " -> "
          << schema_string(b.cod) << "\n";
      return kUsage;
    }

    bool equal = false;
    bool conjectural = false;
    if (w1.pure_e && w2.pure_e) {
      const auto &ea = w1.emorphism();
      const auto &eb = w2.emorphism();
      e_require_typed(sig, ea);
      e_require_typed(sig, eb);
      equal = e_equal(sig, ea, eb);
      out << (equal ? "equal" : "not equal") << "\n";
      out << "left terms:  " << terms_string(e_to_terms(sig, ea).outputs)
          << "\n";
      out << "right terms: " << terms_string(e_to_terms(sig, eb).outputs)
          << "\n";
    } else {
      const FVerdict v = f_equal(sig, a, b);
      equal = v.equal;
      conjectural = v.conjectural;
      out << (equal ? "equal" : "not equal");
      if (conjectural)
        out << " (conjectural: multi-sheet boundary)";
      out << "\n";
      out << "left P-image:\n"
          << grid_string(canonicalize_grid(functor_P(sig, a)));
      out << "right P-image:\n"
          << grid_string(canonicalize_grid(functor_P(sig, b)));
    }

    if (o.oracle) {
      if (!single_sheet(a.dom)) {
        out << "oracle: not applicable (multi-sheet domain)\n";
      } else {
        try {
          const bool oracle = symbolic_oracle_equal(sig, a, b);
          out << "oracle: " << (oracle ? "equal" : "not equal") << "\n";
          if (oracle != equal) {
            err << "error: internal inconsistency: decider says "
                << (equal ? "equal" : "not equal") << ", oracle says "
                << (oracle ? "equal" : "not equal") << "\n";
            return kInconsistent;
          }
        } catch (const CapExceeded &e) {
          out << "oracle: skipped (" << e.what() << ")\n";
        }
      }
    }
    if (conjectural)
      return kConjectural;
    return equal ? kEqual : kNotEqual;
  });
}

int cmd_normalize(const NormalizeOptions &o, std::ostream &out,
                  std::ostream &err) {
  return guarded(err, [&]() -> int {
    const Signature sig = load_signature_file(o.sig);
    Workflow w = load_workflow_file(o.wf);
    if (w.pure_e) {
      e_require_typed(sig, w.emorphism());
      EMorphism n = e_normalize(sig, w.emorphism());
      const auto profile = layer_profile(sig, n);
      w.morphism = f_lift(n);
      write_file(o.out, serialize_workflow(w));
      out << "E normal form: " << e_summary(n) << "\n";
      if (profile) {
        out << "  copy/discard layer: "
            << profile->copy_discard.end - profile->copy_discard.begin
            << "\n  swap layer: " << profile->swaps.end - profile->swaps.begin
            << "\n  op layer: " << profile->ops.end - profile->ops.begin
            << "\n";
      }
      return kEqual;
    }

    const FNormalForm nf = f_sort_filters(sig, f_decompose(sig, w.morphism));
    w.morphism = recompose(sig, nf);
    write_file(o.out, serialize_workflow(w));

    out << "w: " << e_summary(nf.w) << "\n";
    out << "x: " << nf.x.size() << " filter" << (nf.x.size() == 1 ? "" : "s");
    for (std::size_t i = 0; i < nf.x.size(); ++i)
      out << (i ? ", " : ": ") << nf.x[i].aff.str();
    out << "\n";
    std::size_t discards = 0;
    for (const auto &d : nf.y)
      discards += d.size();
    out << "y: " << discards << " discard" << (discards == 1 ? "" : "s")
        << " over " << nf.y.size() << " leaves\n";
    std::vector<std::size_t> per(nf.cod.size(), 0);
    for (auto t : nf.z)
      ++per[t];
    out << "z: " << nf.z.size() << " leaves into " << nf.cod.size()
        << " sheet" << (nf.cod.size() == 1 ? "" : "s") << " [";
    for (std::size_t i = 0; i < per.size(); ++i)
      out << (i ? "," : "") << per[i];
    out << "]\n";
    return kEqual;
  });
}

int cmd_run(const RunOptions &o, std::ostream &out, std::ostream &err) {
  return guarded(err, [&]() -> int {
    const Signature sig = load_signature_file(o.sig);
    const Valuation val = load_valuation_file(sig, o.valuation);
    val.check_covers(sig);
    const Workflow w = load_workflow_file(o.wf);
    const FMorphism &m = w.morphism;
    if (o.inputs.size() != m.dom.size()) {
      err << "error: workflow has " << m.dom.size() << " input sheet"
          << (m.dom.size() == 1 ? "" : "s") << ", got " << o.inputs.size()
          << " --input file" << (o.inputs.size() == 1 ? "" : "s") << "\n";
      return kUsage;
    }
    SheetedTables input;
    for (std::size_t i = 0; i < o.inputs.size(); ++i) {
      try {
        input.push_back(load_csv(o.inputs[i], m.dom[i], val));
      } catch (const Error &e) {
        throw Error(o.inputs[i] + ": " + e.what());
      }
    }
    SheetedTables result = run_workflow(sig, val, m, input, o.threads);
    std::filesystem::create_directories(o.output);
    for (std::size_t k = 0; k < result.size(); ++k) {
      if (!w.cod_names.empty())
        result[k].header = w.cod_names[k];
      const auto path =
          (std::filesystem::path(o.output) / ("sheet_" + std::to_string(k) +
                                              ".csv"))
              .string();
      write_csv(result[k], val, path);
      out << path << ": " << result[k].rows.size() << " row"
          << (result[k].rows.size() == 1 ? "" : "s") << "\n";
    }
    return kEqual;
  });
}

int cmd_export(const ExportOptions &o, std::ostream &out, std::ostream &err) {
  return guarded(err, [&]() -> int {
    const ExportFormat format = parse_export_format(o.format);
    const Signature sig = load_signature_file(o.sig);
    const Workflow w = load_workflow_file(o.wf);
    out << export_diagram(sig, w.morphism, format);
    return kEqual;
  });
}

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"refinealg: equivalence checking, normalization and execution "
               "of data-cleaning workflows"};
  app.name("refinealg");
  app.require_subcommand(1);

  CheckOptions check;
  bool no_oracle = false;
  auto *c = app.add_subcommand("check", "Decide whether two workflows are equal");
  c->add_option("--sig", check.sig, "Signature file")->required();
  c->add_option("wf1", check.wf1, "First workflow")->required();
  c->add_option("wf2", check.wf2, "Second workflow")->required();
  auto *oracle_flag =
      c->add_flag("--oracle", check.oracle, "Cross-check with the symbolic oracle");
  c->add_flag("--no-oracle", no_oracle, "Skip the symbolic oracle")
      ->excludes(oracle_flag);

  NormalizeOptions norm;
  auto *n = app.add_subcommand("normalize", "Write the canonical form of a workflow");
  n->add_option("--sig", norm.sig, "Signature file")->required();
  n->add_option("wf", norm.wf, "Workflow")->required();
  n->add_option("--out", norm.out, "Output workflow file")->required();

  RunOptions run;
  auto *r = app.add_subcommand("run", "Execute a workflow on CSV tables");
  r->add_option("--sig", run.sig, "Signature file")->required();
  r->add_option("--valuation", run.valuation, "Valuation file")->required();
  r->add_option("wf", run.wf, "Workflow")->required();
  r->add_option("--input", run.inputs, "Input CSV, one per input sheet")
      ->required()
      ->expected(1, -1);
  r->add_option("--output", run.output, "Output directory")->required();
  r->add_option("--threads", run.threads,
                "Worker threads (0: available parallelism)")
      ->capture_default_str();

  ExportOptions exp;
  auto *x = app.add_subcommand("export", "Render a workflow diagram");
  x->add_option("--sig", exp.sig, "Signature file")->required();
  x->add_option("wf", exp.wf, "Workflow")->required();
  x->add_option("--format", exp.format, "dot, layered-svg or text")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  if (c->parsed()) {
    if (!check.oracle && !no_oracle)
      check.oracle = oracle_by_default();
    return cmd_check(check, out, err);
  }
  if (n->parsed())
    return cmd_normalize(norm, out, err);
  if (r->parsed())
    return cmd_run(run, out, err);
  return cmd_export(exp, out, err);
}

} // namespace refinealg::cli
