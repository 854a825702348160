// Copyright 2026 The rdl Authors
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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "rdl/cli.hpp"
#include "rdl/errors.hpp"
#include "rdl/io.hpp"

using namespace rdl;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

const std::string kFixtures = RDL_FIXTURE_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("rdl_test_" + name)).string();
}

}  // namespace

TEST_CASE("operator JSON round trip") {
  oracle::Rng g(71);
  for (int trial = 0; trial < 10; ++trial) {
    Op op(SystemSpec({"A", "B"}, {2, 3}), oracle::ginibre(6, 6, g));
    Json j = op_to_json(op);
    Op back = op_from_json(parse_json_text(j.dump(), "mem"), "mem");
    CHECK(back.spec == op.spec);
    CHECK((back.matrix - op.matrix).cwiseAbs().maxCoeff() <= 1e-15);
  }
  Channel ch = oracle::random_channel(2, 3, 2, g);
  Channel back = channel_from_json(parse_json_text(channel_to_json(ch).dump(), "mem"), "mem");
  REQUIRE(back.kraus().size() == 2);
  CHECK((back.kraus()[1] - ch.kraus()[1]).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("parse errors carry location and field") {
  CHECK_THROWS_WITH(parse_json_text("{\"a\": [1,\n 2", "src"), ContainsSubstring("line 2"));
  CHECK_THROWS_WITH(op_from_json(Json::parse(R"({"labels": ["A"], "dims": [2]})"), "x"),
                    ContainsSubstring("missing field 're'"));
  CHECK_THROWS_WITH(
      op_from_json(Json::parse(R"({"labels": ["A"], "dims": [2], "re": [[1, 0], [0]]})"), "x"),
      ContainsSubstring("x.re[1]"));
}

TEST_CASE("malformed inputs exit with the validation code") {
  for (const auto& entry : std::filesystem::directory_iterator(fixture("malformed"))) {
    const std::string path = entry.path().string();
    const bool instance = path.find("not_tp") != std::string::npos ||
                          path.find("label_collision") != std::string::npos;
    Outcome o = cli({instance ? "decouple-mc" : "entropy", "--input", path, "--alpha", "1.5"});
    INFO(path << ": " << o.err);
    CHECK(o.code == kExitValidation);
    CHECK_THAT(o.err, ContainsSubstring("validation error"));
    CHECK(o.out.empty());
  }
}

TEST_CASE("diagnostics name the violated invariant") {
  CHECK_THAT(cli({"entropy", "--input", fixture("malformed/bad_trace.json"), "--alpha", "2"}).err,
             ContainsSubstring("trace"));
  CHECK_THAT(cli({"entropy", "--input", fixture("malformed/not_hermitian.json"), "--alpha", "2"}).err,
             ContainsSubstring("Hermitian"));
  CHECK_THAT(cli({"decouple-mc", "--input", fixture("malformed/not_tp.json")}).err,
             ContainsSubstring("Kraus completeness"));
  CHECK_THAT(cli({"entropy", "--input", fixture("malformed/truncated.json")}).err,
             ContainsSubstring("column"));
}

TEST_CASE("argument errors") {
  CHECK(cli({}).code == kExitValidation);
  CHECK(cli({"no-such-command"}).code == kExitValidation);
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({"decouple-mc", "--input", fixture("identity_phi.json"), "--samples", "1"}).code ==
        kExitValidation);
  CHECK(cli({"decouple-bound", "--input", fixture("identity_phi.json"), "--alpha", "2.5"}).code ==
        kExitValidation);
  CHECK(cli({"entropy", "--input", fixture("product_state.json"), "--units", "hartley"}).code ==
        kExitValidation);
  CHECK(cli({"entropy", "--input", fixture("missing.json")}).code == kExitValidation);
}

TEST_CASE("decouple-mc on the identity fixture") {
  Outcome o = cli({"decouple-mc", "--input", fixture("identity_phi.json"), "--samples", "100"});
  REQUIRE(o.code == kExitOk);
  Json r = Json::parse(o.out);
  CHECK_THAT(r["result"]["mc"]["mean"].get<double>(), WithinAbs(0.75, 1e-10));
  CHECK(r["result"]["mc"]["stderr"].get<double>() < 1e-12);
  CHECK(r["result"]["mc"]["n_samples"] == 100);
  CHECK(r["config"]["seed_source"] == "default");
}

TEST_CASE("entropy of the product fixture in nats and bits") {
  Outcome n = cli({"entropy", "--input", fixture("product_state.json"), "--alpha", "1"});
  REQUIRE(n.code == kExitOk);
  CHECK_THAT(Json::parse(n.out)["result"]["at_alpha"]["sandwiched"].get<double>(),
             WithinAbs(std::log(2.0), 1e-12));
  Outcome b = cli({"entropy", "--input", fixture("product_state.json"), "--alpha", "1",
                   "--units", "bits"});
  REQUIRE(b.code == kExitOk);
  CHECK_THAT(Json::parse(b.out)["result"]["at_alpha"]["sandwiched"].get<double>(),
             WithinAbs(1.0, 1e-12));
}

TEST_CASE("twirl-check reports agreement") {
  Outcome o = cli({"twirl-check", "--dim", "2", "--samples", "10000"});
  REQUIRE(o.code == kExitOk);
  Json r = Json::parse(o.out)["result"];
  CHECK(r["within_3_stderr"].get<bool>());
  CHECK(r["max_abs_diff"].get<double>() < 3.0 * r["max_stderr"].get<double>());
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  std::vector<std::string> args{"decouple-mc", "--input", fixture("depolarizing_phi.json"),
                                "--samples", "500", "--seed", "17", "--streams", "4"};
  Outcome a = cli(args);
  Outcome b = cli(args);
  args.insert(args.end(), {"--threads", "3"});
  Outcome c = cli(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("RDL_SEED overrides the seed flag") {
  ::setenv("RDL_SEED", "4242", 1);
  Outcome o = cli({"decouple-mc", "--input", fixture("identity_phi.json"), "--samples", "10",
                   "--seed", "3"});
  ::unsetenv("RDL_SEED");
  REQUIRE(o.code == kExitOk);
  Json r = Json::parse(o.out);
  CHECK(r["config"]["seed"] == 4242);
  CHECK(r["config"]["seed_source"] == "RDL_SEED");
  CHECK(r["result"]["mc"]["seed"] == 4242);
  ::setenv("RDL_SEED", "abc", 1);
  CHECK(cli({"twirl-check", "--samples", "10"}).code == kExitValidation);
  ::unsetenv("RDL_SEED");
}

TEST_CASE("CSV sweep and report files") {
  const std::string csv = temp_path("sweep.csv");
  const std::string report = temp_path("report.json");
  Outcome o = cli({"decouple-bound", "--input", fixture("identity_phi.json"), "--csv", csv,
                   "--output", report});
  REQUIRE(o.code == kExitOk);
  CHECK(o.out.empty());
  std::ifstream f(csv);
  std::string line;
  std::getline(f, line);
  CHECK(line == "alpha,exponent,bound");
  int rows = 0;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 33);
  Json r = load_json_file(report);
  CHECK(r["command"] == "decouple-bound");
  CHECK(r["result"]["best"]["positive"] == false);
  std::filesystem::remove(csv);
  std::filesystem::remove(report);
  CHECK(cli({"decouple-mc", "--input", fixture("identity_phi.json"), "--samples", "10", "--csv",
             csv})
            .code == kExitValidation);
}

TEST_CASE("alpha grid parsing") {
  CHECK(parse_alpha_grid("1:2:5") == std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0});
  CHECK(parse_alpha_grid("0.3,0.5") == std::vector<double>{0.3, 0.5});
  CHECK_THROWS_AS(parse_alpha_grid("1:2"), ValidationError);
  CHECK_THROWS_AS(parse_alpha_grid("2:1:4"), ValidationError);
  CHECK_THROWS_AS(parse_alpha_grid("a,b"), ValidationError);
}

TEST_CASE("every command runs on its fixture") {
  CHECK(cli({"decouple-converse", "--input", fixture("identity_phi.json")}).code == kExitOk);
  CHECK(cli({"exponents", "--input", fixture("identity_phi.json")}).code == kExitOk);
  CHECK(cli({"fenchel", "--input", fixture("identity_phi.json"), "--r-points", "20"}).code == kExitOk);
  Outcome c = cli({"coding", "--input", fixture("coding_identity_phi.json")});
  REQUIRE(c.code == kExitOk);
  Json r = Json::parse(c.out)["result"];
  CHECK(r["in_region"] == true);
  CHECK_THAT(r["q_max_at_e0_bits"].get<double>(), WithinAbs(1.0, 1e-12));
}
