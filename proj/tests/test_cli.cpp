// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "meanking/cli.hpp"
#include "meanking/serialize.hpp"

using namespace meanking;

namespace {

/// Writes text to a unique temp file and removes it on destruction.
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& text) {
    static int counter = 0;
    path = "cli_test_input_" + std::to_string(counter++) + ".json";
    std::ofstream(path) << text;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("verify subcommand") {
  SUBCASE("positive verdicts for every fixture") {
    for (const char* name : {"vaa87", "comp3", "code3d", "qubit2"}) {
      CliResult r = run_cli({"verify", "--example", name});
      CHECK(r.exit_code == 0);
      CHECK(r.output.find("certificate: PASSED") != std::string::npos);
    }
  }

  SUBCASE("table shows lambda and the index sets") {
    CliResult r = run_cli({"verify", "--example", "vaa87"});
    CHECK(r.output.find("lambda: 0.25 0.25 0.25 0.25") != std::string::npos);
    CHECK(r.output.find("alpha: 0.5") != std::string::npos);
    CHECK(r.output.find("  1  1  {1, 3}") != std::string::npos);
    CHECK(r.output.find("  3  2  {3, 4}") != std::string::npos);
  }

  SUBCASE("json format is canonical and machine-readable") {
    CliResult r = run_cli({"verify", "--example", "comp3", "--format", "json"});
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["passed"] == true);
    CHECK(j["alpha"].get<double>() == doctest::Approx(1.0 / 3.0));
    CHECK(canonical_dump(j) + "\n" == r.output);
  }

  SUBCASE("negative verdict exits 1") {
    Setup s = builtin_example("vaa87");
    s.family.sets[{1, 1}] = {1};  // breaks c1, keeps c2
    TempFile file(canonical_dump(to_json(s)));
    CliResult r = run_cli({"verify", "--input", file.path});
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("certificate: FAILED") != std::string::npos);
  }

  SUBCASE("a loosened tolerance turns the verdict around") {
    Setup s = builtin_example("vaa87");
    s.ls[0](0, 0) += 1e-7;  // perturb one error operator
    TempFile file(canonical_dump(to_json(s)));
    CHECK(run_cli({"verify", "--input", file.path}).exit_code == 1);
    CHECK(run_cli({"verify", "--input", file.path, "--tol", "1e-4"}).exit_code == 0);
  }
}

TEST_CASE("derive subcommand") {
  CliResult r = run_cli({"derive", "--example", "vaa87", "--format", "json"});
  CHECK(r.exit_code == 0);
  json j = json::parse(r.output);
  CHECK(j["alpha"].get<double>() == doctest::Approx(0.5));
  CHECK(j["index_family"]["2,1"] == json::array({1, 4}));
  // First derived operator reproduces the stored L_1 entry-for-entry.
  CHECK(j["error_ops"][0][0][0][0].get<double>() == doctest::Approx(0.5));
  CHECK(j["error_ops"][0][0][1][1].get<double>() == doctest::Approx(-0.25));
}

TEST_CASE("build subcommand") {
  SUBCASE("emits the dimension-3 construction") {
    CliResult r = run_cli({"build", "--basis", "computational", "--d", "3",
                           "--squares", "cyclic,anticyclic", "--with-j0",
                           "--format", "json"});
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["measurements"].size() == 3);
    CHECK(j["error_ops"].size() == 9);
    // M_2^(1) maps |1> -> |2> -> |3> -> |1|: a permutation over 1/sqrt(3).
    const double r3 = 1.0 / std::sqrt(3.0);
    CHECK(j["measurements"]["1"][1][0][2][0].get<double>() == doctest::Approx(r3));
    CHECK(j["measurements"]["1"][1][1][0][0].get<double>() == doctest::Approx(r3));
    CHECK(j["measurements"]["1"][1][2][1][0].get<double>() == doctest::Approx(r3));
    CHECK(j["index_family"]["1,1"] == json::array({1, 5, 9}));
    CHECK(j["index_family"]["2,3"] == json::array({3, 5, 7}));

    // The emitted setup feeds straight back into verify.
    TempFile file(r.output);
    CHECK(run_cli({"verify", "--input", file.path}).exit_code == 0);
  }

  SUBCASE("fourier and random bases also certify") {
    for (const char* basis : {"fourier", "random"}) {
      CliResult r = run_cli({"build", "--basis", basis, "--d", "4", "--squares",
                             "cyclic:1,cyclic:2", "--seed", "9", "--format", "json"});
      REQUIRE(r.exit_code == 0);
      TempFile file(r.output);
      CHECK(run_cli({"verify", "--input", file.path}).exit_code == 0);
    }
  }

  SUBCASE("input validation") {
    CHECK(run_cli({"build", "--d", "3"}).exit_code == 2);  // no measurements
    CHECK(run_cli({"build", "--d", "3", "--squares", "diagonal"}).exit_code == 2);
    CHECK(run_cli({"build", "--d", "0", "--with-j0"}).exit_code == 2);
    CHECK(run_cli({"build", "--d", "3", "--basis", "exotic", "--with-j0"}).exit_code == 2);
  }
}

TEST_CASE("simulate subcommand") {
  SUBCASE("perfect retrodiction on a fixture") {
    CliResult r = run_cli({"simulate", "--example", "comp3", "--rounds", "2000",
                           "--seed", "7", "--format", "json"});
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["success_rate"].get<double>() == 1.0);
    CHECK(j["entropy_bits"].get<double>() == 0.0);
    CHECK(j["rounds"].get<long long>() == 2000);
  }

  SUBCASE("byte-identical across reruns and thread counts") {
    const std::vector<std::string> serial = {"simulate", "--example", "code3d",
                                             "--rounds", "500", "--seed", "21",
                                             "--format", "json"};
    std::vector<std::string> threaded = serial;
    threaded.push_back("--threads");
    threaded.push_back("4");
    const std::string first = run_cli(serial).output;
    CHECK(first == run_cli(serial).output);
    CHECK(first == run_cli(threaded).output);
  }

  SUBCASE("a custom prior shifts the joint counts") {
    CliResult r = run_cli({"simulate", "--example", "vaa87", "--rounds", "400",
                           "--seed", "3", "--prior", "1,0,0", "--format", "json"});
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    for (const auto& [key, n] : j["joint"].items()) {
      (void)n;
      CHECK(key[0] == '1');  // only J=1 is ever drawn
    }
  }

  SUBCASE("input validation") {
    CHECK(run_cli({"simulate", "--example", "vaa87", "--rounds", "0"}).exit_code == 2);
    CHECK(run_cli({"simulate", "--example", "vaa87", "--prior", "0.5,x"}).exit_code == 2);
    CHECK(run_cli({"simulate", "--example", "vaa87", "--prior", "0.9,0.9,0.9"}).exit_code == 2);
  }
}

TEST_CASE("example subcommand and shared error handling") {
  SUBCASE("fixture dump round-trips through verify") {
    CliResult r = run_cli({"example", "code3d", "--format", "json"});
    CHECK(r.exit_code == 0);
    TempFile file(r.output);
    CHECK(run_cli({"verify", "--input", file.path}).exit_code == 0);
  }

  SUBCASE("json dumps are byte-stable") {
    CliResult a = run_cli({"example", "vaa87", "--format", "json"});
    CliResult b = run_cli({"example", "vaa87", "--format", "json"});
    CHECK(a.output == b.output);
    CHECK(canonical_dump(json::parse(a.output)) + "\n" == a.output);
  }

  SUBCASE("errors carry diagnostics and exit 2") {
    CliResult unknown = run_cli({"example", "heisenberg"});
    CHECK(unknown.exit_code == 2);
    CHECK(unknown.output.find("heisenberg") != std::string::npos);

    CliResult both = run_cli({"verify", "--example", "vaa87", "--input", "x.json"});
    CHECK(both.exit_code == 2);
    CHECK(both.output.find("exactly one") != std::string::npos);

    CliResult neither = run_cli({"verify"});
    CHECK(neither.exit_code == 2);

    TempFile bad("{\"schmidt\": {\"eta\": [1]}, \"measurements\": {}}");
    CliResult missing = run_cli({"verify", "--input", bad.path});
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("error_ops") != std::string::npos);

    TempFile garbled("{not json");
    CliResult parse = run_cli({"verify", "--input", garbled.path});
    CHECK(parse.exit_code == 2);
    CHECK(parse.output.find("not valid JSON") != std::string::npos);

    CHECK(run_cli({"retrodict"}).exit_code == 2);
    CHECK(run_cli({}).exit_code == 2);
    CHECK(run_cli({"verify", "--example", "vaa87", "--format", "yaml"}).exit_code == 2);
  }

  SUBCASE("help exits 0") {
    CliResult help = run_cli({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("verify") != std::string::npos);
    CHECK(help.output.find("simulate") != std::string::npos);
  }
}
