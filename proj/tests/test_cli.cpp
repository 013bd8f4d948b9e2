#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bdspectra/cli.hpp"

using namespace bdspectra;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "bd-spectra");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string problem(const std::string& name) { return std::string(BDSPECTRA_PROBLEM_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t columns(const std::string& line) { return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1; }

}  // namespace

TEST_CASE("analyze prints one row per grid point") {
  const auto r = invoke({"analyze", "--problem", problem("a1.toml"), "--grid", "5"});
  REQUIRE(r.code == cli::kExitOk);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "t,lambda_0,lambda_1,lambda_2,dlambda_0,dlambda_1,dlambda_2,m1,m2,mu");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(columns(rows[i]) == 10);
  CHECK(rows[3].rfind("0.5,", 0) == 0);
}

TEST_CASE("analyze report format") {
  const auto r = invoke({"analyze", "--problem", problem("b1.toml"), "--grid", "3", "--format", "report"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.find("B1 (random walk, n = 1, 3 points)") != std::string::npos);
}

TEST_CASE("scan of the first example") {
  const auto r = invoke({"scan", "--problem", problem("a1.toml"), "--grid", "200", "--criteria", "B_MAX_UP,B_MIN_DOWN"});
  REQUIRE(r.code == cli::kExitOk);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "criterion,direction,lo,hi");
  CHECK(rows[1].rfind("B_MAX↑,increasing,", 0) == 0);
  CHECK(rows[1].substr(rows[1].size() - 2) == ",1");
  CHECK(rows[2].rfind("B_MIN↓,decreasing,0,", 0) == 0);
  CHECK(std::abs(std::stod(rows[2].substr(rows[2].rfind(',') + 1)) - 0.5) <= 1e-5);
}

TEST_CASE("scan of the constant spec finds nothing") {
  const auto r = invoke({"scan", "--problem", problem("constant.toml"), "--grid", "50"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(lines(r.out).size() == 1);
}

TEST_CASE("verify the worked examples") {
  for (const char* name : {"a1.toml", "a2.toml", "b1.toml", "proportional.toml"}) {
    CAPTURE(name);
    const auto r = invoke({"verify", "--problem", problem(name), "--grid", "100"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS soundness") != std::string::npos);
  }
}

TEST_CASE("trace at a single point") {
  const auto r = invoke({"trace", "--problem", problem("a1.toml"), "--at", "0.75", "--criteria", "B_MAX_UP"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.find("B_MAX↑") != std::string::npos);
  const auto csv = invoke({"trace", "--problem", problem("a1.toml"), "--at", "0.75", "--criteria", "B_MAX_UP",
                           "--format", "csv"});
  REQUIRE(csv.code == cli::kExitOk);
  const auto rows = lines(csv.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "t,criterion,member,j,case");
  CHECK(rows[1].rfind("0.75,B_MAX↑,1,0,", 0) == 0);
}

TEST_CASE("exit codes") {
  const auto malformed = invoke({"analyze", "--problem", problem("malformed.toml")});
  CHECK(malformed.code == cli::kExitInputError);
  CHECK(malformed.err.find("offset 2") != std::string::npos);

  const auto range = invoke({"analyze", "--problem", problem("bad_range.toml"), "--grid", "10"});
  CHECK(range.code == cli::kExitValidityError);
  CHECK(range.err.find("c_1") != std::string::npos);

  CHECK(invoke({"analyze", "--problem", problem("missing.toml")}).code == cli::kExitInputError);
  CHECK(invoke({"analyze"}).code == cli::kExitInputError);
  CHECK(invoke({"frobnicate"}).code == cli::kExitInputError);
  CHECK(invoke({"scan", "--problem", problem("a1.toml"), "--criteria", "NOPE"}).code == cli::kExitInputError);
  CHECK(invoke({"scan", "--problem", problem("a1.toml"), "--criteria", "D_MAX_UP"}).code == cli::kExitInputError);
  CHECK(invoke({"analyze", "--problem", problem("a1.toml"), "--grid", "1"}).code == cli::kExitInputError);
  CHECK(invoke({"trace", "--problem", problem("a1.toml"), "--at", "1.5"}).code == cli::kExitInputError);
  CHECK(invoke({"--help"}).code == cli::kExitOk);
}

TEST_CASE("output is deterministic and --out writes the same bytes") {
  const std::vector<std::string> args{"analyze", "--problem", problem("a2.toml"), "--grid", "64"};
  const auto first = invoke(args);
  const auto second = invoke(args);
  REQUIRE(first.code == cli::kExitOk);
  CHECK(first.out == second.out);

  const auto single = invoke({"analyze", "--problem", problem("a2.toml"), "--grid", "64", "--threads", "1"});
  CHECK(single.out == first.out);

  const auto path = std::filesystem::temp_directory_path() / "bdspectra_cli_out.csv";
  auto with_file = args;
  with_file.insert(with_file.end(), {"--out", path.string()});
  REQUIRE(invoke(with_file).code == cli::kExitOk);
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == first.out);
  std::filesystem::remove(path);
}
