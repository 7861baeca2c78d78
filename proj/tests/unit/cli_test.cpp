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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace refinealg::cli {
namespace {

namespace fs = std::filesystem;

const std::string kData = REFINEALG_TEST_DATA_DIR;
const std::string kSig = kData + "/demo.sig.json";

std::string slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("refinealg_cli_" +
            std::string(
                ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string &name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string wf(const std::string &name) { return kData + "/" + name; }

TEST_F(Cli, CheckExitCodes) {
  EXPECT_EQ(cli({"check", "--sig", kSig, wf("merge_lhs.json"),
                 wf("merge_rhs.json"), "--oracle"})
                .code,
            kEqual);
  EXPECT_EQ(cli({"check", "--sig", kSig, wf("merge_rhs.json"),
                 wf("merge_lhs.json")})
                .code,
            kEqual);
  const Result ne = cli({"check", "--sig", kSig, wf("upper_first.json"),
                         wf("upper_second.json")});
  EXPECT_EQ(ne.code, kNotEqual);
  EXPECT_NE(ne.out.find("not equal"), std::string::npos);
  EXPECT_EQ(cli({"check", "--sig", kSig, wf("upper_second.json"),
                 wf("upper_first.json")})
                .code,
            kNotEqual);
  const Result multi = cli({"check", "--sig", kSig, wf("split_big.json"),
                            wf("split_big.json")});
  EXPECT_EQ(multi.code, kConjectural);
  EXPECT_NE(multi.out.find("conjectural"), std::string::npos);
  EXPECT_EQ(cli({"check", "--sig", kSig, wf("merge_lhs.json"),
                 wf("full_name.json")})
                .code,
            kUsage);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, kUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kUsage);
  EXPECT_EQ(cli({"check", "--sig", kSig, wf("merge_lhs.json")}).code, kUsage);
  EXPECT_EQ(cli({"check", "--sig", kSig, wf("merge_lhs.json"),
                 wf("missing.json")})
                .code,
            kUsage);
  EXPECT_EQ(cli({"check", "--sig", kSig, "--oracle", "--no-oracle",
                 wf("merge_lhs.json"), wf("merge_rhs.json")})
                .code,
            kUsage);
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"run", "--help"}).code, 0);
}

TEST_F(Cli, RunReproducesExpectedTable) {
  const Result r = cli({"run", "--sig", kSig, "--valuation",
                        wf("demo.valuation.json"), wf("full_name.json"),
                        "--input", wf("donors.csv"), "--output", path("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(path("out/sheet_0.csv")), slurp(wf("donors_expected.csv")));
}

TEST_F(Cli, RunWritesOneFilePerSheet) {
  const Result r = cli({"run", "--sig", kSig, "--valuation",
                        wf("demo.valuation.json"), wf("split_big.json"),
                        "--input", wf("donors.csv"), "--output", path("out"),
                        "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(path("out/sheet_0.csv")));
  EXPECT_TRUE(fs::exists(path("out/sheet_1.csv")));
  EXPECT_EQ(slurp(path("out/sheet_0.csv")),
            "Family name,Given name,Donation\nGreen,Amanda,25€\n"
            "de Boer,John,40€\n");
}

TEST_F(Cli, RunRejectsWrongInputCount) {
  EXPECT_EQ(cli({"run", "--sig", kSig, "--valuation",
                 wf("demo.valuation.json"), wf("full_name.json"), "--input",
                 wf("donors.csv"), wf("donors.csv"), "--output", path("out")})
                .code,
            kUsage);
}

TEST_F(Cli, NormalizeIsIdempotentAndPreservesBehaviour) {
  const Result a = cli({"normalize", "--sig", kSig, wf("merge_lhs.json"),
                        "--out", path("n1.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  const Result b = cli({"normalize", "--sig", kSig, path("n1.json"), "--out",
                        path("n2.json")});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(slurp(path("n1.json")), slurp(path("n2.json")));
  EXPECT_EQ(cli({"check", "--sig", kSig, wf("merge_lhs.json"),
                 path("n1.json"), "--oracle"})
                .code,
            kEqual);

  ASSERT_EQ(cli({"normalize", "--sig", kSig, wf("full_name.json"), "--out",
                 path("e.json")})
                .code,
            0);
  ASSERT_EQ(cli({"run", "--sig", kSig, "--valuation",
                 wf("demo.valuation.json"), path("e.json"), "--input",
                 wf("donors.csv"), "--output", path("out")})
                .code,
            0);
  EXPECT_EQ(slurp(path("out/sheet_0.csv")), slurp(wf("donors_expected.csv")));
}

TEST_F(Cli, ExportFormats) {
  const Result dot = cli({"export", "--sig", kSig, wf("full_name.json")});
  ASSERT_EQ(dot.code, 0);
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);
  const Result svg = cli({"export", "--sig", kSig, wf("split_big.json"),
                          "--format", "layered-svg"});
  ASSERT_EQ(svg.code, 0);
  EXPECT_EQ(svg.out.rfind("<svg", 0), 0u);
  const Result text = cli({"export", "--sig", kSig, wf("merge_lhs.json"),
                           "--format", "text"});
  ASSERT_EQ(text.code, 0);
  EXPECT_EQ(text.out.rfind("dom [[S,M]]", 0), 0u);
  EXPECT_EQ(cli({"export", "--sig", kSig, wf("merge_lhs.json"), "--format",
                 "png"})
                .code,
            kUsage);
}

} // namespace
} // namespace refinealg::cli
