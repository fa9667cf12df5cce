#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "maclaurin_cli/commands.hpp"

using namespace maclaurin;
using namespace maclaurin::cli;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("git blob hashes") {
  // Values printed by `git hash-object` for the same content.
  CHECK(git_blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("constants command prints both evaluations") {
  GlobalOptions g;
  std::ostringstream os;
  CHECK(run_constants(2.0, g, os) == 0);
  CHECK(os.str().find("rho_p2,6,") != std::string::npos);
  g.format = "json";
  std::ostringstream js;
  CHECK(run_constants(2.0, g, js) == 0);
  CHECK_NOTHROW((void)nlohmann::json::parse(js.str()));
}

TEST_CASE("means command on explicit values") {
  GlobalOptions g;
  std::ostringstream os;
  CHECK(run_means({1.0, 2.0, 3.0}, Measure::cone, 3, 1.0, g, os) == 0);
  CHECK(os.str().find("3,1,2,0.6496414920651") != std::string::npos);
}

TEST_CASE("ustat-check passes on random inputs") {
  GlobalOptions g;
  g.seed = 1;
  std::ostringstream os;
  CHECK(run_ustat_check(10, 3, g, os) == 0);
  CHECK(os.str().find("false") == std::string::npos);
  CHECK_THROWS(run_ustat_check(3, 4, g, os));
}

TEST_CASE("sample command is seeded") {
  GlobalOptions g;
  g.seed = 3;
  std::ostringstream a, b;
  run_sample(Measure::cone, 4, 2.0, 3, "", g, a);
  run_sample(Measure::cone, 4, 2.0, 3, "", g, b);
  CHECK(a.str() == b.str());
  g.seed = 4;
  std::ostringstream c;
  run_sample(Measure::cone, 4, 2.0, 3, "", g, c);
  CHECK(a.str() != c.str());
}

TEST_CASE("experiment command writes outputs and a manifest") {
  const auto dir = fresh_dir("maclaurin_cli_experiment");
  const auto cfg = dir / "cfg.yaml";
  std::ofstream(cfg) << "experiment: polar\np: 2\nn_grid: [8]\nN: 3000\noutput: polar\n";
  GlobalOptions g;
  g.out = dir / "out";
  std::ostringstream os;
  CHECK(run_experiment_file(cfg, g, os) == 0);
  CHECK(std::filesystem::exists(g.out / "polar.csv"));
  CHECK_FALSE(std::filesystem::exists(g.out / "polar.csv.partial"));
  const auto m = nlohmann::json::parse(slurp(g.out / "manifest.json"));
  CHECK(m["passed"] == true);
  CHECK(m["input_hash"].get<std::string>().size() == 40);
  std::filesystem::remove_all(dir);
}

TEST_CASE("a bad config still leaves a manifest") {
  const auto dir = fresh_dir("maclaurin_cli_bad");
  const auto cfg = dir / "cfg.yaml";
  std::ofstream(cfg) << "p: 0.5\n";
  GlobalOptions g;
  g.out = dir / "out";
  std::ostringstream os;
  CHECK(run_experiment_file(cfg, g, os) == 2);
  const auto m = nlohmann::json::parse(slurp(g.out / "manifest.json"));
  CHECK(m["passed"] == false);
  CHECK(m["error"].get<std::string>().find("p must be") != std::string::npos);
  std::filesystem::remove_all(dir);
}
