#include "cli_app.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ngas");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = ngas::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

// Value of a named column in the first data row of a CSV block.
std::string cell(const std::string& csv, const std::string& column, int row = 1) {
  auto ls = lines(csv);
  auto split = [](const std::string& l) {
    std::vector<std::string> c;
    std::stringstream ss(l);
    for (std::string t; std::getline(ss, t, ',');) c.push_back(t);
    return c;
  };
  auto head = split(ls.at(0));
  auto vals = split(ls.at(row));
  for (std::size_t i = 0; i < head.size(); ++i)
    if (head[i] == column) return vals.at(i);
  return "";
}

double num_cell(const std::string& csv, const std::string& column, int row = 1) { return std::stod(cell(csv, column, row)); }

}  // namespace

TEST_CASE("spectrum command") {
  auto sw = run({"spectrum", "AHO", "1.0", "0", "--method", "squarewell"});
  REQUIRE(sw.code == 0);
  CHECK(std::fabs(num_cell(sw.out, "E_LO") - 0.9033) < 1e-4);
  CHECK(std::fabs(num_cell(sw.out, "oracle") - 0.8038) < 1e-4);
  auto h = run({"spectrum", "QAHO", "1.0", "0", "--method", "harmonic"});
  REQUIRE(h.code == 0);
  CHECK(has(h.out, "0.812500"));
  auto sho = run({"spectrum", "SHO", "0", "5", "--method", "squarewell"});
  REQUIRE(sho.code == 0);
  CHECK(std::fabs(num_cell(sho.out, "E_LO") - 5.3952) < 1e-4);
  auto multi = run({"spectrum", "QAHO", "1", "0,1", "2", "--no-oracle"});
  REQUIRE(multi.code == 0);
  CHECK(lines(multi.out).size() == 4);
}

TEST_CASE("coeffs command prints exact fractions") {
  auto a = run({"coeffs", "QAHO", "1", "0", "--order", "5", "--scheme", "mfpt"});
  REQUIRE(a.code == 0);
  CHECK(a.out == "-3/256, 27/4096, -2373/262144, 65457/4194304\n");
  auto b = run({"coeffs", "QAHO", "1", "0", "--order", "2", "--scheme", "sfpt"});
  REQUIRE(b.code == 0);
  CHECK(b.out == "3/4, -21/8\n");
  auto c = run({"coeffs", "QDWO", "1/12", "0", "--scheme", "mfpt"});
  REQUIRE(c.code == 0);
  CHECK(c.out.rfind("-17/384, ", 0) == 0);
  auto j = run({"coeffs", "QAHO", "1", "0", "--order", "2", "--format", "json"});
  REQUIRE(j.code == 0);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["exact"] == true);
  CHECK(doc["coefficients"][2]["numerator"] == "-3");
  CHECK(doc["coefficients"][2]["denominator"] == "256");
}

TEST_CASE("resum command") {
  auto mot = run({"resum", "QAHO", "1.0", "0", "--method", "mot"});
  REQUIRE(mot.code == 0);
  CHECK(cell(mot.out, "N0") == "3");
  CHECK(std::fabs(num_cell(mot.out, "E_MOT") - 0.8074) < 1e-4);
  auto bor = run({"resum", "QAHO", "1.0", "0", "--method", "borel", "--alpha", "1"});
  REQUIRE(bor.code == 0);
  CHECK(std::fabs(num_cell(bor.out, "E_tot") - 0.80381) < 1e-5);
  // The sextic row printed under the label 100 carries the g = 200 energies.
  auto sa = run({"resum", "SAHO", "200", "0", "--method", "borel", "--alpha", "2"});
  REQUIRE(sa.code == 0);
  CHECK(std::fabs(num_cell(sa.out, "E_tot") - 2.5944) < 1e-4);
  auto over = run({"resum", "QAHO", "1", "0", "--method", "borel", "--rc", "2.667", "--nc", "7", "--eps", "0.001"});
  REQUIRE(over.code == 0);
  CHECK(cell(over.out, "E_tot") == cell(bor.out, "E_tot"));
}

TEST_CASE("tables command") {
  auto t = run({"tables", "--chapter", "5", "--table", "2"});
  REQUIRE(t.code == 0);
  int data = 0;
  for (auto& l : lines(t.out))
    if (!l.empty() && l[0] != '#') ++data;
  CHECK(data == 13);
  CHECK(std::fabs(num_cell(t.out, "E_tot", 2) - 0.80381) < 1e-4);
  auto sho = run({"tables", "--chapter", "3", "--table", "2", "--no-oracle"});
  REQUIRE(sho.code == 0);
  CHECK(lines(sho.out).size() == 7);
  CHECK(std::fabs(num_cell(sho.out, "E_LO", 4) - 5.3952) < 1e-4);
  auto bad = run({"tables", "--chapter", "5", "--table", "3"});
  CHECK(bad.code == 2);
}

TEST_CASE("phi4 command") {
  auto p = run({"phi4", "--mr", "1", "--eta", "10", "--sigma-grid", "100", "--k-grid", "4", "--k-max", "1"});
  REQUIRE(p.code == 0);
  auto blocks = p.out.substr(0, p.out.find("\n\n"));
  auto rows = lines(blocks);
  CHECK(rows.size() == 102);
  CHECK(std::stod(cell(blocks, "U0_rel")) == 0);
  double prev = 2;
  for (int r = 1; r <= 101; ++r) {
    double t = num_cell(blocks, "t", r);
    CHECK(t <= prev);
    prev = t;
  }
  CHECK(has(p.out, "1.000000,0.707107"));
  auto tr = run({"phi4", "--mr", "1", "--eta", "10", "--sigma-grid", "10", "--sigma-max", "1"});
  REQUIRE(tr.code == 0);
  CHECK(has(tr.out, "# rows truncated at sigma^2_min"));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"coeffs", "QAHO", "1", "0", "--scheme", "xyz"}).code == 2);
  CHECK(run({"coeffs", "QAHO", "abc", "0"}).code == 2);
  CHECK(run({"spectrum", "QAHO", "-1", "0"}).code == 3);
  CHECK(run({"spectrum", "FOO", "1", "0"}).code == 3);
  CHECK(run({"phi4", "--mr", "1", "--eta", "1", "--gr", "1"}).code == 2);
  CHECK(run({"phi4", "--mr", "1"}).code == 2);
  CHECK(run({"resum", "QAHO", "1", "0", "--method", "borel", "--nc", "60"}).code == 3);
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("output is deterministic and the manifest checksums it") {
  const std::string path = "ngas_test_manifest.json";
  auto a = run({"coeffs", "SAHO", "8/15", "0", "--order", "6", "--manifest", path});
  auto b = run({"coeffs", "SAHO", "8/15", "0", "--order", "6"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::ifstream f(path);
  auto m = nlohmann::json::parse(f);
  CHECK(m["command"] == "coeffs");
  CHECK(m["tool_version"] == ngas::cli::kToolVersion);
  CHECK(m["output_checksum"] == "fnv1a64:" + ngas::cli::hex64(ngas::cli::fnv1a64(a.out)));
  CHECK(m["parameters"]["order"] == 6);
  std::remove(path.c_str());
}
