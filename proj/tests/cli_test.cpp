// Copyright 2026 The procmat Authors
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


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "procmat_io/document.hpp"
#include "procmat/process.hpp"

namespace procmat {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int exit_code = -1;
  std::string out;
};

// Runs a bash pipeline; "$P" expands to the CLI binary. stderr is discarded.
Outcome run(const std::string& script) {
  const std::string cmd =
      "P='" + std::string(PROCMAT_CLI) + "'; set -o pipefail; { " + script + "; } 2>/dev/null";
  const std::string wrapped = "bash -c \"" + [&] {
    std::string s;
    for (char c : cmd) {
      if (c == '"' || c == '\\' || c == '$' || c == '`') s += '\\';
      s += c;
    }
    return s;
  }() + "\"";
  Outcome r;
  FILE* pipe = popen(wrapped.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json report(const Outcome& r) { return nlohmann::json::parse(r.out); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("procmat_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, DephasedOcbIsOrderedAtoB) {
  const Outcome r = run("\"$P\" fixture ocb | \"$P\" dephase --basis z | \"$P\" --json separate");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const auto j = report(r);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_DOUBLE_EQ(j["results"]["decomposition"]["p"].get<double>(), 1.0);
  EXPECT_FALSE(j["results"]["decomposition"]["has_b_before_a"].get<bool>());
  EXPECT_TRUE(j["results"]["decomposition"]["verified"].get<bool>());
}

TEST_F(Cli, FixtureValidates) {
  EXPECT_EQ(run("\"$P\" fixture w0 --p 0.5 | \"$P\" validate").exit_code, 0);
  EXPECT_EQ(run("\"$P\" fixture identity --dims 3,2,3,2 | \"$P\" validate").exit_code, 0);
  EXPECT_EQ(run("\"$P\" fixture channel | \"$P\" validate --variant a-before-b").exit_code, 0);
  EXPECT_EQ(run("\"$P\" fixture channel | \"$P\" validate --variant b-before-a").exit_code, 2);
}

TEST_F(Cli, InvalidDocumentFailsValidation) {
  {
    std::ofstream(path("bad.json")) << R"({"layout":[1,2,1,1],"matrix":[[[2,0],[0,0]],[[0,0],[0,0]]]})";
  }
  const Outcome r = run("\"$P\" --json validate --input '" + path("bad.json") + "'");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_FALSE(report(r)["results"]["validity"]["valid"].get<bool>());
  // consumers refuse it outright
  EXPECT_EQ(run("\"$P\" separate --input '" + path("bad.json") + "'").exit_code, 1);
}

TEST_F(Cli, OcbIsNotSeparable) {
  const Outcome r = run("\"$P\" fixture ocb | \"$P\" --json check-sep");
  ASSERT_EQ(r.exit_code, 2) << r.out;
  const auto j = report(r);
  EXPECT_EQ(j["results"]["status"], "not-separable-up-to-tolerance");
  EXPECT_GT(j["results"]["plateau_residual"].get<double>(), 1e-3);
}

TEST_F(Cli, SeparableRandomPasses) {
  const Outcome r = run("\"$P\" gen-random --seed 9 | \"$P\" dephase --basis z | \"$P\" --json check-sep");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(report(r)["results"]["status"], "separable");
}

TEST_F(Cli, GenRandomIsReproducible) {
  const Outcome a = run("\"$P\" gen-random --seed 42 --dims 3,2,3,2");
  const Outcome b = run("\"$P\" gen-random --seed 42 --dims 3,2,3,2");
  const Outcome c = run("\"$P\" gen-random --seed 43 --dims 3,2,3,2");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  const auto doc = io::decode(a.out);
  EXPECT_EQ(doc.metadata.seed, 42u);
  EXPECT_TRUE(validate_process(doc.process).overall);

  const Outcome ra = run("\"$P\" gen-random --seed 42 | \"$P\" --json game");
  const Outcome rb = run("\"$P\" gen-random --seed 42 | \"$P\" --json game");
  EXPECT_EQ(ra.out, rb.out);
}

TEST_F(Cli, OutputFileMatchesStdout) {
  ASSERT_EQ(run("\"$P\" fixture ocb --output '" + path("ocb.json") + "'").exit_code, 0);
  EXPECT_EQ(io::read_input(path("ocb.json")), run("\"$P\" fixture ocb").out);
  EXPECT_FALSE(fs::exists(path("ocb.json.tmp")));
}

TEST_F(Cli, BadInputExitsOneWithoutPartialFile) {
  EXPECT_EQ(run("\"$P\" fixture w0 --p 1.5 --output '" + path("w.json") + "'").exit_code, 1);
  EXPECT_FALSE(fs::exists(path("w.json")));
  EXPECT_FALSE(fs::exists(path("w.json.tmp")));

  EXPECT_EQ(run("\"$P\" fixture ocb | head -c 200 | \"$P\" validate").exit_code, 1);
  EXPECT_EQ(run("echo '{}' | \"$P\" dephase --output '" + path("d.json") + "'").exit_code, 1);
  EXPECT_FALSE(fs::exists(path("d.json")));
  EXPECT_EQ(run("\"$P\" validate --input '" + path("missing.json") + "'").exit_code, 1);
  EXPECT_EQ(run("\"$P\" gen-random").exit_code, 1);
  EXPECT_EQ(run("\"$P\" gen-random --seed 1 --strength 1").exit_code, 1);
  EXPECT_EQ(run("\"$P\" --tol -1 fixture ocb").exit_code, 1);
  EXPECT_EQ(run("\"$P\" --help").exit_code, 0);
}

TEST_F(Cli, HsTableListsW0Terms) {
  const Outcome r = run("\"$P\" fixture w0 --p 0.5 | \"$P\" --json validate --hs");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = report(r);
  const auto& terms = j["results"]["hs_terms"];
  ASSERT_EQ(terms.size(), 4u);
  bool found = false;
  for (const auto& t : terms)
    if (t["term"] == "Z.Z.X.I") {
      found = true;
      EXPECT_NEAR(t["coefficient"].get<double>(), -0.125, 1e-15);
    }
  EXPECT_TRUE(found);
}

TEST_F(Cli, BasisFileSetsMeasurement) {
  const double h = 1.0 / std::sqrt(2.0);
  nlohmann::json bases;
  nlohmann::json x = nlohmann::json::array();
  x.push_back({{h, 0.0}, {h, 0.0}});
  x.push_back({{h, 0.0}, {-h, 0.0}});
  bases["A1"] = x;
  bases["B1"] = x;
  {
    std::ofstream(path("x.json")) << bases.dump();
  }
  const Outcome r = run("\"$P\" fixture ocb | \"$P\" dephase --basis '" + path("x.json") +
                    "' | \"$P\" --json effective-classical --basis '" + path("x.json") + "'");
  ASSERT_EQ(r.exit_code, 0) << r.out;

  bases["B1"] = nlohmann::json::array({x[0]});
  {
    std::ofstream(path("bad.json")) << bases.dump();
  }
  EXPECT_EQ(run("\"$P\" fixture ocb | \"$P\" dephase --basis '" + path("bad.json") + "'").exit_code,
            1);
}

TEST_F(Cli, BornMatchesProductState) {
  const Outcome r = run(
      "\"$P\" fixture identity | \"$P\" --json born --alice-in z0 --alice-out x0 --bob-in y1 "
      "--bob-out e1");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NEAR(report(r)["results"]["probability"].get<double>(), 0.25, 1e-15);
}

}  // namespace
}  // namespace procmat
