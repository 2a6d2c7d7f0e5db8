// End-to-end tests of the command-line tool. Each case launches the real
// binary (path injected by the build) in a scratch directory.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "apsp/matrix.hpp"
#include "apsp/matrix_io.hpp"
#include "test_support.hpp"

using apsp_test::TempDir;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(APSP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult result;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) {
    result.output.append(buf, got);
  }
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (const char c : text) lines += c == '\n';
  return lines;
}

}  // namespace

TEST_CASE("cli: generate writes a loadable file, deterministically") {
  TempDir dir("cli_gen");
  const std::string a = (dir.path / "a.apsp").string();
  const std::string b = (dir.path / "b.apsp").string();

  CHECK(run_cli("generate --n 64 --density 0.5 --seed 42 --dtype f32 --out " + a)
            .exit_code == 0);
  const apsp::DistanceMatrix m = apsp::load(a);
  CHECK(m.size() == 64);
  CHECK(m.elem_type() == apsp::ElemType::F32);

  CHECK(run_cli("generate --n 64 --density 0.5 --seed 42 --dtype f32 --out " + b)
            .exit_code == 0);
  CHECK(read_file(a) == read_file(b));
}

TEST_CASE("cli: usage errors exit with the usage code") {
  TempDir dir("cli_usage");
  const std::string out = (dir.path / "g.apsp").string();
  CHECK(run_cli("generate --n 8 --density 1.5 --out " + out).exit_code == 2);
  CHECK(run_cli("generate --n 8").exit_code == 2);    // missing --out
  CHECK(run_cli("generate --n 0 --out " + out).exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli: solve -> verify pipeline") {
  TempDir dir("cli_solve");
  const std::string g = (dir.path / "g.apsp").string();
  const std::string d = (dir.path / "d.apsp").string();
  const std::string p = (dir.path / "p.apsp").string();
  REQUIRE(run_cli("generate --n 64 --density 0.5 --seed 7 --out " + g).exit_code == 0);

  const CmdResult solve = run_cli("solve --in " + g + " --solver blocked --tb 16 " +
                                  "--threads 2 --out-dist " + d + " --out-pred " + p);
  CHECK(solve.exit_code == 0);
  const std::regex line_re(
      R"(solve n=64 solver=blocked tb=16 threads=2 time_s=\d+\.\d{6} gflops=\d+\.\d{6})");
  CHECK(std::regex_search(solve.output, line_re));

  const CmdResult verify =
      run_cli("verify --in " + g + " --dist " + d + " --pred " + p);
  CHECK(verify.exit_code == 0);
  CHECK(verify.output.find("verification PASSED") != std::string::npos);
}

TEST_CASE("cli: naive and blocked solvers write identical distance files") {
  TempDir dir("cli_equiv");
  const std::string g = (dir.path / "g.apsp").string();
  const std::string d1 = (dir.path / "naive.apsp").string();
  const std::string d2 = (dir.path / "blocked.apsp").string();
  REQUIRE(run_cli("generate --n 64 --density 0.4 --seed 3 --out " + g).exit_code == 0);
  REQUIRE(run_cli("solve --in " + g + " --solver naive --out-dist " + d1).exit_code ==
          0);
  REQUIRE(
      run_cli("solve --in " + g + " --solver blocked --tb 16 --out-dist " + d2)
          .exit_code == 0);
  CHECK(read_file(d1) == read_file(d2));
}

TEST_CASE("cli: non-dividing tile size needs --pad") {
  TempDir dir("cli_pad");
  const std::string g = (dir.path / "g.apsp").string();
  const std::string d = (dir.path / "d.apsp").string();
  REQUIRE(run_cli("generate --n 64 --density 0.5 --seed 4 --out " + g).exit_code == 0);

  const CmdResult bare = run_cli("solve --in " + g + " --tb 48 --out-dist " + d);
  CHECK(bare.exit_code == 2);
  CHECK(bare.output.find("--pad") != std::string::npos);

  const CmdResult padded =
      run_cli("solve --in " + g + " --tb 48 --pad --out-dist " + d);
  CHECK(padded.exit_code == 0);
  CHECK(apsp::load(d).size() == 64);  // padding stripped from outputs
}

TEST_CASE("cli: I/O and format error classes") {
  TempDir dir("cli_err");
  const std::string missing = (dir.path / "missing.apsp").string();
  CHECK(run_cli("solve --in " + missing).exit_code == 3);

  const std::string junk = (dir.path / "junk.apsp").string();
  std::ofstream(junk, std::ios::binary) << "this is not a matrix file at all";
  CHECK(run_cli("solve --in " + junk).exit_code == 4);
}

TEST_CASE("cli: verify flags a corrupted distance file and names the entry") {
  TempDir dir("cli_corrupt");
  const std::string g = (dir.path / "g.apsp").string();
  const std::string d = (dir.path / "d.apsp").string();
  const std::string p = (dir.path / "p.apsp").string();
  REQUIRE(run_cli("generate --n 32 --density 0.6 --seed 5 --out " + g).exit_code == 0);
  REQUIRE(run_cli("solve --in " + g + " --tb 16 --out-dist " + d + " --out-pred " + p)
              .exit_code == 0);

  // subtract 1 from the first finite off-diagonal solved entry
  apsp::DistanceMatrix solved = apsp::load(d);
  auto& m = solved.as<float>();
  std::size_t ci = 0, cj = 0;
  for (std::size_t i = 0; i < m.size() && ci == cj; ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j && m(i, j) < std::numeric_limits<float>::infinity()) {
        ci = i;
        cj = j;
        m(i, j) -= 1.0f;
        break;
      }
    }
  }
  REQUIRE(ci != cj);
  apsp::save(solved, d);

  const CmdResult verify =
      run_cli("verify --in " + g + " --dist " + d + " --pred " + p + " --format json");
  CHECK(verify.exit_code == 5);
  const auto doc = nlohmann::json::parse(verify.output);
  CHECK(doc.at("all_passed") == false);
  bool named = false;
  for (const auto& check : doc.at("checks")) {
    if (check.at("name") != "distance_equality") continue;
    CHECK(check.at("passed") == false);
    for (const auto& site : check.at("sites")) {
      named |= site.at("i") == ci && site.at("j") == cj;
    }
  }
  CHECK(named);
}

TEST_CASE("cli: bench emits one CSV row per cartesian point") {
  const CmdResult r = run_cli(
      "bench --sizes 64 128 --tbs 16 --threads 1 --reps 2 --seed 11 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(count_lines(r.output) == 3);  // header + 2 points
  CHECK(r.output.rfind("n,tb,threads,dtype,reps,", 0) == 0);
}

TEST_CASE("cli: bench json feeds the report subcommand") {
  TempDir dir("cli_report");
  const std::string records = (dir.path / "records.json").string();
  REQUIRE(run_cli("bench --sizes 64 --tbs 8 16 --threads 1 --reps 1 --format json "
                  "--out " +
                  records)
              .exit_code == 0);

  const CmdResult csv = run_cli("report --in " + records + " --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(count_lines(csv.output) == 3);  // header + 2 points

  const CmdResult md = run_cli("report --in " + records + " --format markdown");
  CHECK(md.exit_code == 0);
  CHECK(md.output.find("## f32") != std::string::npos);

  CHECK(run_cli("report --in " + records + " --format yaml").exit_code == 2);
  CHECK(run_cli("report --in " + (dir.path / "none.json").string() + " --format csv")
            .exit_code == 3);
}

TEST_CASE("cli: tune prints every candidate and the winner") {
  const CmdResult r = run_cli("tune --n 64 --tbs 16 32 --threads 1 --seed 13");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("tune n=64 tb=16 threads=1 time_s=") != std::string::npos);
  CHECK(r.output.find("tune n=64 tb=32 threads=1 time_s=") != std::string::npos);
  const std::regex best_re(R"(tune best_tb=(16|32))");
  CHECK(std::regex_search(r.output, best_re));
}

TEST_CASE("cli: csv export of a solved matrix stays consistent") {
  // generate in f64, solve, and round-trip the solved matrix through binary I/O
  TempDir dir("cli_f64");
  const std::string g = (dir.path / "g.apsp").string();
  const std::string d = (dir.path / "d.apsp").string();
  REQUIRE(run_cli("generate --n 48 --density 0.3 --seed 21 --dtype f64 --out " + g)
              .exit_code == 0);
  REQUIRE(run_cli("solve --in " + g + " --tb 16 --threads 2 --out-dist " + d)
              .exit_code == 0);
  const apsp::DistanceMatrix solved = apsp::load(d);
  CHECK(solved.elem_type() == apsp::ElemType::F64);
  CHECK(solved.size() == 48);
}
