#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

#include "bds/io.hpp"
#include "cli.hpp"
#include "oracles.hpp"

using namespace bds;
using io::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::ofstream(name) << text;
  return name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("prepare") {
  auto r = run({"prepare", "--werner", "1.0"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["theta"].get<double>() == doctest::Approx(kPi));
  CHECK(j["alpha"].get<double>() == doctest::Approx(kPi));
  CHECK(max_abs_diff(io::state_from_json(j["state"]).matrix(), bell_state(1, 1).matrix()) <
        1e-12);

  r = run({"prepare", "--p", "0.25,0.25,0.25,0.25"});
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["theta"].get<double>() == doctest::Approx(kPi / 2));
  CHECK(j["alpha"].get<double>() == doctest::Approx(kPi / 2));
  CHECK(j["circuit"]["gates"].size() == 6);
  CHECK(max_abs_diff(io::state_from_json(j["state"]).matrix(),
                     ComplexMatrix::identity(4) * Complex(0.25)) < 1e-12);

  r = run({"prepare", "--werner", "0.5", "--qasm"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("OPENQASM 2.0;", 0) == 0);
  const std::string theta = format_angle(2 * std::acos(std::sqrt(0.25)));
  CHECK(r.out.find("u3(" + theta + ",0,0) q[1];") != std::string::npos);

  r = run({"prepare", "--werner", "0.5", "--qasm", "--layout", "a:0,b:1,c:2,d:3", "--basis",
           "XZ"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("qreg q[4];") != std::string::npos);
  CHECK(r.out.find("measure q[3] -> c[3];") != std::string::npos);
}

TEST_CASE("prepare errors") {
  CHECK(run({"prepare", "--p", "0.5,0.5,0.5,-0.5"}).code == cli::kExitValidation);
  CHECK(run({"prepare", "--p", "0.5,0.5"}).code == cli::kExitValidation);
  CHECK(run({"prepare", "--werner", "1.5"}).code == cli::kExitValidation);
  CHECK(run({"prepare"}).code == cli::kExitValidation);
  CHECK(run({"prepare", "--werner", "0.5", "--qasm", "--layout", "a:1,b:1,c:2,d:3"}).code ==
        cli::kExitValidation);
  CHECK(run({"prepare", "--werner", "0.5", "--out", "/nonexistent/dir/x.json"}).code ==
        cli::kExitIo);
  CHECK(run({"bogus"}).code == cli::kExitValidation);
  CHECK(run({}).code == cli::kExitValidation);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("sweep") {
  auto r = run({"sweep", "--shots", "0", "--points", "3"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "w,F,C,D,E,S,N,C_th,D_th,E_th,S_th,N_th");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.substr(line.find(',') + 1, 8) == "1.000000");
  }
  CHECK(rows == 3);

  r = run({"sweep", "--shots", "0", "--points", "11", "--noise", "0.3,0.3"});
  REQUIRE(r.code == 0);
  std::istringstream noisy(r.out);
  std::getline(noisy, line);
  while (std::getline(noisy, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() == 12);
    CHECK(cells[6] == "0.000000");
  }

  const std::string path = "bds_test_cli_sweep.csv";
  r = run({"sweep", "--points", "3", "--seed", "4", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const std::string first = slurp(path);
  REQUIRE(run({"sweep", "--points", "3", "--seed", "4", "--out", path}).code == 0);
  CHECK(slurp(path) == first);
  std::remove(path.c_str());

  CHECK(run({"sweep", "--out", "/nonexistent/dir/x.csv", "--points", "1", "--shots", "0"}).code ==
        cli::kExitIo);
  CHECK(run({"sweep", "--noise", "0.3"}).code == cli::kExitValidation);
  CHECK(run({"sweep", "--points", "0"}).code == cli::kExitValidation);
  CHECK(run({"sweep", "--werner", "0.5"}).code == cli::kExitValidation);
  CHECK(run({"sweep", "--p", "0.7,0.1,0.1,0.1", "--points", "2", "--shots", "0"}).code == 0);
}

TEST_CASE("measure") {
  const std::string one = write_temp("bds_test_cli_w1.json", io::state_to_json(werner(1)).dump());
  auto r = run({"measure", one});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["diagnostics"]["valid"] == true);
  for (const char* key : {"nonlocal_coherence", "discord", "negativity", "steering", "nonlocality"}) {
    CHECK(j["report"][key].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  }

  const std::string flat = write_temp("bds_test_cli_w0.json", io::state_to_json(werner(0)).dump());
  r = run({"measure", flat});
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  for (const char* key : {"nonlocal_coherence", "discord", "negativity", "steering", "nonlocality"}) {
    CHECK(std::abs(j["report"][key].get<double>()) < 1e-9);
  }

  Json bad = io::state_to_json(werner(0.5));
  bad["re"][0][0] = -0.1;
  bad["re"][3][3] = 0.35;
  const std::string neg = write_temp("bds_test_cli_neg.json", bad.dump());
  r = run({"measure", neg});
  CHECK(r.code == cli::kExitValidation);
  CHECK(r.err.find("min eigenvalue") != std::string::npos);
  j = Json::parse(r.out);
  CHECK(j["valid"] == false);
  CHECK(j["min_eigenvalue"].get<double>() < 0.0);

  const std::string garbage = write_temp("bds_test_cli_bad.json", "[1,2");
  CHECK(run({"measure", garbage}).code == cli::kExitValidation);
  CHECK(run({"measure", "/nonexistent/state.json"}).code == cli::kExitIo);

  for (const auto& p : {one, flat, neg, garbage}) std::remove(p.c_str());
}

TEST_CASE("sample and tomograph round trip") {
  const std::string counts = "bds_test_cli_counts.json";
  auto r = run({"sample", "--werner", "0.5", "--shots", "8192", "--seed", "3", "--out", counts});
  REQUIRE(r.code == 0);
  const std::string first = slurp(counts);
  REQUIRE(run({"sample", "--werner", "0.5", "--shots", "8192", "--seed", "3", "--out", counts})
              .code == 0);
  CHECK(slurp(counts) == first);

  r = run({"tomograph", counts, "--werner", "0.5"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["fidelity"].get<double>() >= 0.98);
  CHECK(j.contains("raw"));
  CHECK(j.contains("projected"));
  CHECK(j["correlations"][0][0].get<double>() == 1.0);

  Json parsed = Json::parse(first);
  parsed["settings"].erase("ZZ");
  write_temp(counts, parsed.dump());
  CHECK(run({"tomograph", counts}).code == cli::kExitValidation);

  parsed = Json::parse(first);
  parsed["settings"]["XY"]["pp"] = parsed["settings"]["XY"]["pp"].get<int>() + 5;
  write_temp(counts, parsed.dump());
  CHECK(run({"tomograph", counts}).code == cli::kExitValidation);

  std::remove(counts.c_str());
  CHECK(run({"tomograph", counts}).code == cli::kExitIo);
  CHECK(run({"sample", "--werner", "0.5", "--shots", "0"}).code == cli::kExitValidation);
}

TEST_CASE("installed binary exit codes") {
  const std::string bin = BDS_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("prepare --werner 0.5") == 0);
  CHECK(status("prepare --p 0.5,0.5,0.5,-0.5") == 2);
  CHECK(status("measure /nonexistent/state.json") == 3);
}
