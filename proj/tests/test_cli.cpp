// Copyright 2026 The tinopt Authors
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


#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "io.hpp"
#include "support.hpp"
#include "tinopt/errors.hpp"
#include "tinopt/region.hpp"

using namespace tinopt;
namespace tt = tinopt::testing;

namespace {

const std::string kMixedPath = std::string(TINOPT_TEST_DATA_DIR) + "/mixed3.json";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("tinopt_cli_test_" + name);
  std::ofstream(path, std::ios::binary) << content;
  return path.string();
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.0) == "0");
  CHECK(io::format_number(-0.0) == "0");
  CHECK(io::format_number(1.9) == "1.9");
  CHECK(io::format_number(2.0) == "2");
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_number(-2.0 / 3.0) == "-0.666666666667");
  CHECK(io::format_number(1e-5) == "0.00001");
  CHECK(io::format_number(123456789012345.0) == "123456789012000");
  CHECK(io::format_number(0.1 + 0.2) == "0.3");
  CHECK(io::format_number(1e8) == "100000000");
}

TEST_CASE("membership on mixed channel") {
  const Run r = run({"membership", kMixedPath, "--gdof", "1,0.9,0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"summary\": \"IN via silent set {3}\"") != std::string::npos);
  const Run p = run({"membership", kMixedPath, "--gdof", "1,0.9,0", "--polyhedral"});
  CHECK(p.code == 1);
  CHECK(p.out.find("\"violated_cycle\": [1, 2, 3]") != std::string::npos);
  CHECK(p.out.find("\"rhs\": 1.4") != std::string::npos);
  const Run out = run({"membership", kMixedPath, "--gdof", "1,0.9,0.1"});
  CHECK(out.code == 1);
  CHECK(out.out.find("\"summary\": \"OUT\"") != std::string::npos);
}

TEST_CASE("condition check exit codes") {
  const std::string free = temp_file("free.json", R"({"K": 3, "alpha": [[1,0,0],[0,1,0],[0,0,1]]})");
  const Run ok = run({"check-condition", free});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("false") == std::string::npos);
  const Run bad = run({"check-condition", kMixedPath, "--format", "csv"});
  CHECK(bad.code == 1);
  CHECK(bad.out == "user,passes,slack\n1,true,0\n2,true,0.3\n3,false,-0.5\n");
}

TEST_CASE("minimized mixed-channel region") {
  const Run r = run({"region", kMixedPath, "--minimize"});
  REQUIRE(r.code == 0);
  const Polyhedron p = io::parse_region(r.out);
  CHECK(p.cycles().size() == 4);
  CHECK(p.boxes().size() == 3);
}

TEST_CASE("region output round-trips byte for byte") {
  tt::Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + trial % 5;
    const ChannelMatrix a = tt::to_channel(tt::random_matrix(k, rng));
    std::vector<std::size_t> silent;
    for (std::size_t i = 0; i < k; ++i) {
      if (tt::uniform(rng, 0, 1) < 0.25) silent.push_back(i);
    }
    const std::string first = io::region_json(polyhedral_region(a, silent));
    const std::string second = io::region_json(io::parse_region(first));
    CHECK(first == second);
    CHECK(io::region_json(io::parse_region(second)) == second);
  }
  const Run r = run({"region", kMixedPath, "--silent-set", "3"});
  REQUIRE(r.code == 0);
  CHECK(io::region_json(io::parse_region(r.out)) == r.out);
}

TEST_CASE("commands are thin adapters") {
  const ChannelMatrix a = io::parse_channel(R"({"K": 3, "alpha": [[1,0.1,0],[0,1,0.6],[0.9,0,1]]})").alpha;
  CHECK(run({"region", kMixedPath}).out == io::region_json(polyhedral_region(a)));
  CHECK(run({"region", kMixedPath, "--union"}).out == io::union_json(general_tin_region(a)));
  CHECK(run({"check-condition", kMixedPath}).out == io::condition_json(check_tin_condition(a)));
  CHECK(run({"region", kMixedPath, "--format", "csv"}).out ==
        io::vertices_csv(enumerate_vertices(polyhedral_region(a)), 3));
}

TEST_CASE("union output marks maximal members") {
  const Run r = run({"region", kMixedPath, "--union"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"nonconvex\": true") != std::string::npos);
}

TEST_CASE("power allocation is verified") {
  const Run r = run({"power-alloc", kMixedPath, "--gdof", "0.5,0.4,0.3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"verified\": true") != std::string::npos);
  const Run bad = run({"power-alloc", kMixedPath, "--gdof", "1,1,1"});
  CHECK(bad.code == 1);
}

TEST_CASE("malformed input exits with 2 and a position") {
  const std::string broken = temp_file("broken.json", "{\n  \"K\": 2,\n  \"alpha\": [[1, 0], [0 1]]\n}\n");
  const Run r = run({"check-condition", broken});
  CHECK(r.code == 2);
  CHECK(r.err.find(broken + ":3:") != std::string::npos);

  const std::string mismatch = temp_file("mismatch.json", "{\n  \"K\": 3,\n  \"alpha\": [[1, 0], [0, 1]]\n}\n");
  const Run m = run({"check-condition", mismatch});
  CHECK(m.code == 2);
  CHECK(m.err.find(mismatch + ":3:") != std::string::npos);

  const std::string nan = temp_file("nan.json", R"({"K": 1, "alpha": [[NaN]]})");
  CHECK(run({"check-condition", nan}).code == 2);
  CHECK(run({"check-condition", "/nonexistent/channel.json"}).code == 2);
  CHECK(run({"membership", kMixedPath, "--gdof", "1,2"}).code == 2);
  CHECK(run({"membership", kMixedPath, "--gdof", "1,x,2"}).code == 2);
  CHECK(run({"region", kMixedPath, "--silent-set", "4"}).code == 2);
}

TEST_CASE("command line errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"check-condition"}).code == 2);
  CHECK(run({"check-condition", kMixedPath, "--format", "xml"}).code == 2);
  CHECK(run({"membership", kMixedPath, "--format", "csv", "--gdof", "0,0,0"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("gap check") {
  const Run fails = run({"gap-check", kMixedPath});
  CHECK(fails.code == 1);
  CHECK(fails.err.find("precondition") != std::string::npos);
  const std::string good =
      temp_file("good.json", R"({"K": 3, "alpha": [[1,0.2,0.1],[0.3,1.2,0.2],[0.1,0.3,0.9]]})");
  const Run r = run({"gap-check", good, "--points", "3", "--power", "100,10000"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind(
            "instance_id,constraint_type,users,P,analytic_sigma,empirical_sigma,bound_bits,"
            "achieved_bits\n",
            0) == 0);
  // 3 points x 2 powers x (3 users + 5 cycles)
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 3 * 2 * 8);
  CHECK(run({"gap-check", good, "--points", "3", "--power", "100,10000", "--seed", "5"}).out !=
        r.out);
  CHECK(run({"gap-check", good, "--points", "3", "--power", "100,10000"}).out == r.out);
}

TEST_CASE("gdof limits") {
  const Run r = run({"gdof-limits", kMixedPath, "--cycle", "1,2"});
  CHECK((r.code == 0 || r.code == 1));
  CHECK(r.out.find("\"sum_kappa_limit\": 1.9") != std::string::npos);
  const bool converged = r.out.find("\"converged\": true") != std::string::npos;
  CHECK(converged == (r.code == 0));
  CHECK(run({"gdof-limits", kMixedPath, "--cycle", "1,2,3"}).code == 1);
  CHECK(run({"gdof-limits", kMixedPath, "--cycle", "1"}).code == 2);
}

TEST_CASE("simulation commands") {
  const Run single = run({"simulate", "--users", "1", "--trials", "100"});
  CHECK(single.code == 0);
  CHECK(single.out.find("\"prob\": 1") != std::string::npos);
  const Run csv = run({"--format", "csv", "simulate", "--users", "3", "--trials", "100"});
  CHECK(csv.out.rfind("K,coverage_radius_m,trials,prob,ci_low,ci_high\n3,100,100,", 0) == 0);
  const Run dump = run({"simulate", "--users", "4", "--dump-instance", "3"});
  CHECK(dump.code == 0);
  CHECK(dump.out.find("\"tx_positions\"") != std::string::npos);
  CHECK(dump.out.find("\"alpha\"") != std::string::npos);

  const std::vector<std::string> sweep{"sweep", "--users", "2,3", "--radii", "50,100", "--trials", "200"};
  const Run a = run(sweep);
  CHECK(a.code == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 5);
  std::vector<std::string> threaded = sweep;
  threaded.insert(threaded.end(), {"--threads", "4"});
  CHECK(run(threaded).out == a.out);
  CHECK(run({"simulate", "--coverage-radius", "5000"}).code == 2);
  CHECK(run({"simulate", "--terrain", "Z"}).code == 2);
}

TEST_CASE("output file") {
  const auto path = (std::filesystem::temp_directory_path() / "tinopt_cli_test_out.json").string();
  const Run r = run({"region", kMixedPath, "-o", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == run({"region", kMixedPath}).out);
}
