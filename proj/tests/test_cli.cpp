#include "doctest.h"
#include "hmf/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string binary() {
  const char* b = std::getenv("HMFCONG_BIN");
  return b ? b : "./hmfcong";
}

fs::path scratch() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("hmfcong-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "'" + binary() + "' " + args + " > '" +
                    (scratch() / "stdout.txt").string() + "' 2> '" + (scratch() / "stderr.txt").string() + "'";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json report(const std::string& name) { return hmf::parse_report(slurp(scratch() / name)); }

}  // namespace

TEST_CASE("gauss sum of the quadratic character mod 5") {
  REQUIRE(run("epsilon gauss --modulus 5 --char quadratic --json " + (scratch() / "g.json").string()) == 0);
  auto j = report("g.json");
  CHECK(j["schema"] == hmf::kReportSchema);
  CHECK(j["status"] == "ok");
  CHECK(j["result"][0]["G_squared"] == "5");
  CHECK(j["result"][0]["abs2"] == "5");
}

TEST_CASE("configuration errors exit with code 2") {
  std::ofstream(scratch() / "empty.json") << R"({"schema": 1, "fields": {}, "presets": {}})";
  CHECK(run("--config " + (scratch() / "empty.json").string() + " selftest all") == 2);
  CHECK(slurp(scratch() / "stderr.txt").find("no presets") != std::string::npos);
  std::ofstream(scratch() / "broken.json") << "{ not json";
  CHECK(run("--config " + (scratch() / "broken.json").string() + " selftest all") == 2);
  std::ofstream(scratch() / "extra.json") << R"({"schema": 1, "fields": {}, "presets": {}, "surprise": 1})";
  CHECK(run("--config " + (scratch() / "extra.json").string() + " selftest all") == 2);
  CHECK(run("congruence check --preset nowhere") == 2);
  CHECK(run("congruence check --preset zeta9 --p 5") == 2);
  CHECK(run("epsilon gauss --modulus 9 --char quadratic") == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("classgrp compute --base z9 --d0 -3") == 2);
}

TEST_CASE("the shipped congruence check passes") {
  REQUIRE(run("congruence check --preset zeta9 --phi battery --bound 30 --p 3 --json " +
              (scratch() / "c.json").string()) == 0);
  auto j = report("c.json");
  CHECK(j["status"] == "ok");
  CHECK(j["result"].size() >= 10);
  for (const auto& r : j["result"]) CHECK(r["mismatches"].empty());
}

TEST_CASE("mismatches and inconclusive runs have their own exit codes") {
  CHECK(run("congruence check --preset zeta9 --phi negative --k 1 --forced") == 3);
  CHECK(run("congruence check --preset zeta9 --phi negative --k 1") == 4);
  CHECK(run("euler identity --form direct-t") == 3);
  CHECK(run("euler identity") == 0);
}

TEST_CASE("reports are deterministic and land in HMF_REPORT_DIR") {
  auto d1 = scratch() / "r1", d2 = scratch() / "r2";
  fs::create_directories(d1);
  fs::create_directories(d2);
  const std::string args = "congruence check --preset zeta9 --phi gsym-a --k 2 --bound 12 --orbits";
  REQUIRE(run(args, "HMF_REPORT_DIR='" + d1.string() + "'") == 0);
  REQUIRE(run(args, "HMF_REPORT_DIR='" + d2.string() + "'") == 0);
  auto a = slurp(d1 / "congruence_check.json"), b = slurp(d2 / "congruence_check.json");
  CHECK(!a.empty());
  CHECK(a == b);
  auto j = hmf::parse_report(a);
  CHECK(hmf::dump_report(j) == a);
}

TEST_CASE("expansion files round trip through expand, frobenius and restrict") {
  auto e = scratch() / "e.txt", f = scratch() / "f.txt", top = scratch() / "top.txt", res = scratch() / "res.txt";
  REQUIRE(run("eis expand --field Q --k 2 --bound 20 --out " + e.string()) == 0);
  REQUIRE(run("eis frobenius --p 3 --in " + e.string() + " --out " + f.string()) == 0);
  std::ifstream fin(f);
  auto twisted = hmf::read_qexpansion(fin);
  CHECK(twisted.trace_bound == 60);
  REQUIRE(run("eis expand --preset zeta9 --phi norm-char-3 --k 2 --bound 9 --out " + top.string()) == 0);
  REQUIRE(run("eis restrict --preset zeta9 --bound 9 --in " + top.string() + " --out " + res.string()) == 0);
  std::ifstream rin(res);
  auto r = hmf::read_qexpansion(rin);
  CHECK(r.degree == 1);
  CHECK(!r.coeffs.empty());
}

TEST_CASE("class group command") {
  REQUIRE(run("classgrp compute --d0 -23 --json " + (scratch() / "cl.json").string()) == 0);
  CHECK(report("cl.json")["result"]["result"]["divisors"] == json::array({"3"}));
  REQUIRE(run("classgrp compute --d0 -11 --ray-j 11 --json " + (scratch() / "ray.json").string()) == 0);
  auto j = report("ray.json");
  CHECK(j["result"]["order_formula"] == "11");
}
