#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rxtx/commands.hpp"
#include "rxtx/scheme.hpp"

using namespace rxtx;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = rxtx::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "rxtx_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("verify") {
  const auto r = invoke({"verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("10/10 output identities verified") != std::string::npos);
  CHECK(r.out.find("3/3 output identities verified") != std::string::npos);
}

TEST_CASE("verify a file: exported table passes, mutated table fails naming the entry") {
  const auto path = scratch("rxtx.txt");
  REQUIRE(invoke({"export-scheme", "--scheme", "rxtx", "--out", path.string()}).code == 0);
  CHECK(invoke({"verify", "--scheme", path.string()}).code == 0);

  auto s = load_scheme(path.string());
  auto& c22 = s.outputs[4].products;  // upper row-major: C11 C12 C13 C14 C22
  auto hit = std::find_if(c22.begin(), c22.end(), [](int v) { return v != 0; });
  REQUIRE(hit != c22.end());
  *hit = -*hit;
  const auto bad = scratch("mutated.txt");
  save_scheme(bad.string(), s);
  const auto r = invoke({"verify", "--scheme", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("C22") != std::string::npos);
}

TEST_CASE("count") {
  CHECK(invoke({"count", "--algo", "rxtx", "--metric", "mults", "--n", "4"}).out == "34\n");
  CHECK(invoke({"count", "--algo", "strassen-xxt", "--metric", "mults", "--n", "4"}).out == "38\n");
  CHECK(invoke({"count", "--algo", "rxtx", "--metric", "ops", "--n", "4"}).out == "134\n");
  CHECK(invoke({"count", "--algo", "rxtx", "--metric", "ops", "--n", "256", "--opt"}).out == "13364224\n");
  CHECK(invoke({"count", "--algo", "rxtx", "--n", "8"}).code == 2);
  CHECK(invoke({"count", "--algo", "nope"}).code == 2);
  CHECK(invoke({"count", "--n", "0"}).code == 2);
}

TEST_CASE("table is deterministic and shows the crossovers") {
  const auto a = scratch("t1.csv"), b = scratch("t2.csv");
  REQUIRE(invoke({"table", "--max-exp", "5", "--out", a.string()}).code == 0);
  REQUIRE(invoke({"table", "--max-exp", "5", "--out", b.string()}).code == 0);
  const std::string csv = slurp(a);
  CHECK(csv == slurp(b));

  std::istringstream in(csv);
  std::string header, line;
  std::getline(in, header);
  auto column = [&](const std::string& name) {
    std::istringstream h(header);
    std::string cell;
    for (std::size_t i = 0; std::getline(h, cell, ','); ++i)
      if (cell == name) return i;
    FAIL("missing column " << name);
    return std::size_t{0};
  };
  const auto c_over_naive = column("Rplus_over_naiveops"), c_over_s = column("Rplus_over_Splus");
  std::map<std::string, std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream l(line);
    std::string cell;
    while (std::getline(l, cell, ',')) cells.push_back(cell);
    rows[cells[0]] = cells;
  }
  CHECK(std::stod(rows.at("1024")[c_over_naive]) < 1.0);
  CHECK(std::stod(rows.at("256")[c_over_s]) < 1.0);

  CHECK(invoke({"table", "--max-exp", "3", "--out", "/nonexistent-dir/x.csv"}).code == 1);
  CHECK(invoke({"table", "--max-exp", "30"}).code == 2);
}

TEST_CASE("bench writes a JSON report") {
  const auto path = scratch("bench.json");
  const auto r = invoke({"bench", "--n", "32", "--reps", "2", "--seed", "3", "--out", path.string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["reps"].size() == 2);
  CHECK(j["config"]["depth"] == 1);
  CHECK(j["summary"]["worst_rel_frobenius"].get<double>() <= 1e-10);
  CHECK(invoke({"bench", "--n", "2"}).code == 2);
  CHECK(invoke({"bench", "--backend", "gpu"}).code == 2);
}

TEST_CASE("discover emits a verifiable scheme") {
  const auto path = scratch("found.txt");
  const auto r = invoke({"discover", "--dim", "2", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("k* = 6") != std::string::npos);
  CHECK(invoke({"verify", "--scheme", path.string()}).code == 0);
  CHECK(invoke({"discover", "--space", "symmetric"}).out.find("k* = 5") != std::string::npos);
  CHECK(invoke({"discover", "--max-products", "5"}).code == 1);
  CHECK(invoke({"discover", "--mode", "clever"}).code == 2);
}

TEST_CASE("usage") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}
