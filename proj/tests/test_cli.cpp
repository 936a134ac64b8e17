#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "schema_check.hpp"

#ifndef WIGNERLAB_CLI
#error "WIGNERLAB_CLI must point at the built binary"
#endif
#ifndef WIGNERLAB_SOURCE_DIR
#error "WIGNERLAB_SOURCE_DIR must point at the repository root"
#endif

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  const std::string err_path = "/tmp/wignerlab_cli_stderr.txt";
  const std::string command =
      std::string(WIGNERLAB_CLI) + " " + args + " 2>" + err_path;
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer;
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.out.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_path);
  result.err.assign(std::istreambuf_iterator<char>(err), std::istreambuf_iterator<char>());
  return result;
}

nlohmann::json load_schema() {
  std::ifstream in(std::string(WIGNERLAB_SOURCE_DIR) + "/schema/report.schema.json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("check: contradiction exit code and report content") {
  CliResult result =
      run_cli("check molecule_toy --policies unitary_only,collapse_at:F --format json");
  CHECK(result.exit_code == 2);

  auto report = nlohmann::json::parse(result.out);
  CHECK(report["scenario"] == "molecule_toy");
  CHECK(report["verdict"] == "CONTRADICTION");
  CHECK(report["checks"][0]["pairs"][0]["gap"].get<double>() == doctest::Approx(0.5));

  std::string error;
  CHECK_MESSAGE(testsupport::schema_validate(report, load_schema(), error), error);
}

TEST_CASE("check: consistent single policy exits zero") {
  CliResult result = run_cli("check epr_bell --theta 0 --policies collapse_at:Alice,Bob");
  CHECK(result.exit_code == 0);
}

TEST_CASE("check: missing file exits one with a diagnostic on stderr") {
  CliResult result = run_cli("check nosuch.scn");
  CHECK(result.exit_code == 1);
  CHECK(result.out.empty());
  CHECK(result.err.find("nosuch.scn") != std::string::npos);
}

TEST_CASE("run: json report includes monte carlo section and validates") {
  CliResult result =
      run_cli("run molecule_toy --policy collapse_at:F --runs 64 --seed 9 --format json");
  CHECK(result.exit_code == 0);
  auto report = nlohmann::json::parse(result.out);
  CHECK(report["monte_carlo"]["runs"] == 64);
  CHECK(report["monte_carlo"]["seed"] == 9);
  CHECK(!report["monte_carlo"].contains("trajectories"));  // above the embed limit

  std::string error;
  CHECK_MESSAGE(testsupport::schema_validate(report, load_schema(), error), error);
}

TEST_CASE("run: single run embeds its trajectory") {
  CliResult result =
      run_cli("run molecule_toy --policy collapse_at:F --runs 1 --seed 9 --format json");
  auto report = nlohmann::json::parse(result.out);
  REQUIRE(report["monte_carlo"]["trajectories"].size() == 1);
  CHECK(report["monte_carlo"]["trajectories"][0]["records"].contains("mF"));
  // No sigma band for a single run.
  for (const auto& check : report["monte_carlo"]["checks"]) {
    for (const auto& outcome : check["outcomes"]) {
      CHECK(!outcome.contains("sigma"));
    }
  }
}

TEST_CASE("run: byte-identical output for identical invocations") {
  const std::string args = "run molecule_toy --policy collapse_at:F --runs 200 --seed 31 --format json";
  CliResult first = run_cli(args);
  CliResult second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("WIGNERLAB_SEED provides the seed when no flag is given") {
  CliResult no_seed = run_cli("check molecule_toy -p unitary_only --format json");
  CHECK(nlohmann::json::parse(no_seed.out)["seed"] == 0);

  const std::string env_command = std::string("WIGNERLAB_SEED=77 ") + WIGNERLAB_CLI +
                                  " check molecule_toy -p unitary_only --format json 2>/dev/null";
  FILE* pipe = popen(env_command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buffer;
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), n);
  pclose(pipe);
  CHECK(nlohmann::json::parse(out)["seed"] == 77);
}

TEST_CASE("parse: canonical form to stdout, diagnostics to stderr") {
  const std::string dir = "/tmp";
  const std::string good_path = dir + "/cli_parse_good.scn";
  {
    std::ofstream out(good_path);
    out << "SCENARIO ok\nSYSTEM A dim=2\nSTATE A |0>\n";
  }
  CliResult good = run_cli("parse " + good_path);
  CHECK(good.exit_code == 0);
  CHECK(good.out == "SCENARIO ok\nSYSTEM A dim=2\nSTATE A |0>\n");
  CHECK(good.err.empty());

  const std::string bad_path = dir + "/cli_parse_bad.scn";
  {
    std::ofstream out(bad_path);
    out << "SCENARIO broken\nSYSTEM A dim=2\nSTATE A |0>\n"
        << "EVENT mesure x\nEVENT wat\nCHECK outcome\n";
  }
  CliResult bad = run_cli("parse " + bad_path);
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.empty());
  int diagnostics = 0;
  std::size_t pos = 0;
  while ((pos = bad.err.find(bad_path + ":", pos)) != std::string::npos) {
    ++diagnostics;
    pos += 1;
  }
  CHECK(diagnostics >= 3);

  const std::string empty_path = dir + "/cli_parse_empty.scn";
  { std::ofstream out(empty_path); }
  CliResult empty = run_cli("parse " + empty_path);
  CHECK(empty.exit_code == 1);
  CHECK(empty.err.find("missing SCENARIO header") != std::string::npos);
}

TEST_CASE("parse: shipped sample round-trips through the canonical form") {
  const std::string sample = std::string(WIGNERLAB_SOURCE_DIR) + "/examples/molecule_toy.scn";
  CliResult first = run_cli("parse " + sample);
  CHECK(first.exit_code == 0);

  const std::string canonical_path = "/tmp/cli_sample_canonical.scn";
  {
    std::ofstream out(canonical_path, std::ios::binary);
    out << first.out;
  }
  CliResult second = run_cli("parse " + canonical_path);
  CHECK(second.exit_code == 0);
  CHECK(second.out == first.out);  // canonical form is a fixed point
}

TEST_CASE("list names every built-in") {
  CliResult result = run_cli("list");
  CHECK(result.exit_code == 0);
  for (const char* name : {"epr_bell", "wigners_friend", "molecule_toy", "decoherence_demo"}) {
    CHECK(result.out.find(name) != std::string::npos);
  }
}

TEST_CASE("usage errors exit one") {
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("run molecule_toy --policy collapse_at:F --runs 0").exit_code == 1);
  CHECK(run_cli("check molecule_toy --policies collapse_now").exit_code == 1);
}
