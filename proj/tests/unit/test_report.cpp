#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "maclaurin/report.hpp"

using namespace maclaurin;

TEST_SUITE("report") {
  TEST_CASE("double formatting round trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_short(0.029999999999999999) == "0.03");
  }

  TEST_CASE("csv layout") {
    Report r;
    r.add({"clt-a", "cone", 2.0, "1", 1024, 100, 7, "ks", 0.25, 0.0});
    r.add({"mdp", "cone", 2.0, "1", 256, 100, 7, "note, with comma", 1.0, 0.5});
    const std::string csv = r.to_csv();
    std::istringstream is(csv);
    std::string header, l1, l2;
    std::getline(is, header);
    std::getline(is, l1);
    std::getline(is, l2);
    CHECK(header + "\n" == Report::csv_header());
    CHECK(header.rfind("experiment,measure,p,k,n,N,seed,statistic,value,", 0) == 0);
    CHECK(l1 == "clt-a,cone,2,1,1024,100,7,ks,0.25,0");
    CHECK(l2.find("\"note, with comma\"") != std::string::npos);
  }

  TEST_CASE("json summary parses and carries checks") {
    Report r;
    r.echo("p", "2");
    r.add({"tv", "cone", 4.0, "1", 16, 10, 1, "tv", 0.1, 0.01});
    r.add_check({"slope", false, "slope=0"});
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j.contains("checks"));
    CHECK(j.contains("rows"));
    CHECK_FALSE(r.all_passed());
  }

  TEST_CASE("file writes") {
    const auto dir = std::filesystem::temp_directory_path() / "maclaurin_unit_report";
    std::filesystem::create_directories(dir);
    Report r;
    r.add({"tv", "cone", 4.0, "1", 16, 10, 1, "tv", 0.1, 0.01});
    r.write_csv(dir / "r.csv");
    std::ifstream is(dir / "r.csv");
    std::stringstream ss;
    ss << is.rdbuf();
    CHECK(ss.str() == r.to_csv());
    CHECK_THROWS(write_text_file(dir / "missing" / "x.csv", "x"));
    std::filesystem::remove_all(dir);
  }
}
