#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cqes/cli.hpp"
#include "cqes/io.hpp"

using cqes::Complex;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cqes");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = cqes::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cqes_test_" + name);
}

}  // namespace

TEST_CASE("shortest round-trip numbers") {
  CHECK(cqes::format_number(0.1) == "0.1");
  CHECK(cqes::format_number(2.0) == "2");
  CHECK(cqes::format_number(-1.5e-300) == "-1.5e-300");
  CHECK(cqes::format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(std::stod(cqes::format_number(x)) == x);
  }
}

TEST_CASE("complex literals") {
  CHECK(cqes::parse_complex("1+1i") == Complex(1.0, 1.0));
  CHECK(cqes::parse_complex("1+i") == Complex(1.0, 1.0));
  CHECK(cqes::parse_complex("1-i") == Complex(1.0, -1.0));
  CHECK(cqes::parse_complex("0.8") == Complex(0.8, 0.0));
  CHECK(cqes::parse_complex("-2.5e-3-4i") == Complex(-2.5e-3, -4.0));
  CHECK(cqes::parse_complex("2i") == Complex(0.0, 2.0));
  CHECK(cqes::parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(cqes::parse_complex("1e2+3e-1i") == Complex(100.0, 0.3));
  for (const char* bad : {"", "x", "1+", "1+x", "1+2", "1+2j", "1 + 2i", "i1", "--1"}) {
    CHECK_THROWS_AS(cqes::parse_complex(bad), std::invalid_argument);
  }
  for (Complex z : {Complex(1.0, 1.0), Complex(0.1, -0.3), Complex(-7e-20, 3e10)}) {
    CHECK(cqes::parse_complex(cqes::format_complex(z)) == z);
  }
  CHECK(cqes::format_complex({1.0, -0.5}) == "1-0.5i");
}

TEST_CASE("well and start labels") {
  CHECK(cqes::parse_well("left:-3") == cqes::WellIndex{cqes::Side::Left, -3});
  CHECK(cqes::parse_well("right:+10") == cqes::WellIndex{cqes::Side::Right, 10});
  CHECK_THROWS(cqes::parse_well("up:3"));
  CHECK_THROWS(cqes::parse_well("left:"));
  CHECK_THROWS(cqes::parse_well("left:1.5"));
  CHECK(cqes::parse_start("origin").kind == cqes::StartSpec::Kind::Origin);
  const auto pt = cqes::parse_start("point:-2.04731,-0.3114");
  CHECK(pt.kind == cqes::StartSpec::Kind::Point);
  CHECK(pt.point == Complex(-2.04731, -0.3114));
  const auto w = cqes::parse_start("well:left:-2");
  CHECK(w.kind == cqes::StartSpec::Kind::Well);
  CHECK(w.well == cqes::WellIndex{cqes::Side::Left, -2});
  CHECK_THROWS_AS(cqes::parse_start("point:1"), cqes::ConfigError);
  CHECK_THROWS_AS(cqes::parse_start("well:mid:1"), cqes::ConfigError);
  CHECK_THROWS_AS(cqes::parse_start("center"), cqes::ConfigError);
}

TEST_CASE("default run length") {
  CHECK(cqes::default_t_max({1.0, 1.0}) == 640.0);
  CHECK(cqes::default_t_max({1.0, -0.5}) == 1280.0);
  CHECK(cqes::default_t_max({1.0, 6.7}) == 200.0);
  CHECK(cqes::default_t_max(0.8) == 200.0);
}

TEST_CASE("spectrum subcommand") {
  const auto r = cli({"spectrum", "--M", "3", "--zeta", "0.1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("label,re_E,im_E,is_real\nE+,7.969795897113271,0,true\n", 0) == 0);
  CHECK(r.out.find("# phase=unbroken zeta_critical=0.5") != std::string::npos);
  CHECK(cli({"spectrum", "--M", "2", "--zeta", "1"}).out.find("phase=broken") !=
        std::string::npos);
  CHECK(cli({"spectrum", "--M", "5"}).code == 1);
}

TEST_CASE("wells subcommand") {
  const auto r = cli({"wells", "--zeta", "1", "--M", "3", "--n-max", "1"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "side,n,x,y");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
  }
  CHECK(rows == 6);
  CHECK(r.out.find("right,0,0.9092232296160334,0.7853981633974483\n") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"simulate", "--e", "1+x"}).code == 1);
  CHECK(cli({"simulate", "--zeta", "-1"}).code == 1);
  CHECK(cli({"simulate", "--start", "nowhere"}).code == 1);
  CHECK(cli({"simulate", "--no-such-flag", "1"}).code == 1);
  CHECK(cli({"simulate", "--config", "/nonexistent/run.json"}).code == 1);
  CHECK(cli({"sweep-e2", "--e2-list", "1,-1"}).code == 1);
  CHECK(cli({"threshold", "--e", "0.8+1i"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("simulate: summary, files and determinism") {
  const auto traj = temp_path("traj.csv");
  const auto events = temp_path("events.jsonl");
  const std::vector<std::string> args = {
      "simulate",     "--zeta",   "0.1",          "--M",      "3",
      "--e",          "1+1i",     "--t-max",      "100",      "--trajectory",
      traj.string(), "--events", events.string()};
  const auto r1 = cli(args);
  REQUIRE(r1.code == 0);
  const auto summary = nlohmann::json::parse(r1.out);
  CHECK(summary["classification"]["kind"] == "tunneling");
  CHECK(summary["classification"]["left"] == "left:-10");
  CHECK(summary["classification"]["right"] == "right:10");
  CHECK(summary["max_energy_drift"].get<double>() <= 1e-8);
  CHECK(summary["termination"] == "time_limit");
  CHECK(summary["branch"] == "principal");
  const std::string csv1 = read_file(traj);
  const std::string ev1 = read_file(events);
  CHECK(csv1.rfind("t,re_z,im_z,re_p,im_p,e1_err,e2_err\n0,0,0,", 0) == 0);
  CHECK(ev1.rfind("{\"type\":\"crossing\",\"t\":", 0) == 0);
  CHECK(ev1.find("{\"type\":\"classification\",\"kind\":\"tunneling\"") != std::string::npos);

  const auto r2 = cli(args);
  CHECK(r2.out == r1.out);
  CHECK(read_file(traj) == csv1);
  CHECK(read_file(events) == ev1);
  std::filesystem::remove(traj);
  std::filesystem::remove(events);
}

TEST_CASE("config file with flag override") {
  const auto cfg = temp_path("run.json");
  {
    std::ofstream f(cfg);
    f << R"({"zeta": 0.1, "M": 3, "e": "0.8", "start": "point:-2.04731,-0.3114", "t_max": 20})";
  }
  const auto from_file = cli({"simulate", "--config", cfg.string()});
  CHECK(from_file.code == 0);
  CHECK(nlohmann::json::parse(from_file.out)["classification"]["kind"] == "closed");
  const auto overridden =
      cli({"simulate", "--config", cfg.string(), "--start", "point:-2.04731,0.0886",
           "--t-max", "200"});
  CHECK(overridden.code == 0);
  CHECK(nlohmann::json::parse(overridden.out)["classification"]["kind"] == "open_escape");
  {
    std::ofstream f(cfg);
    f << R"({"zeta": 0.1, "colour": "blue"})";
  }
  CHECK(cli({"simulate", "--config", cfg.string()}).code == 1);
  std::filesystem::remove(cfg);
}

TEST_CASE("simulate exit codes for failures") {
  const auto ambiguous = cli({"simulate", "--e", "1+1i", "--t-max", "5"});
  CHECK(ambiguous.code == 3);
  CHECK(nlohmann::json::parse(ambiguous.out)["classification"]["kind"] == "ambiguous");
  const auto drift = cli({"simulate", "--e", "1+1i", "--t-max", "50", "--rel-tol", "1e-5",
                          "--drift-limit", "1e-12"});
  CHECK(drift.code == 2);
  CHECK(drift.err.find("drift") != std::string::npos);
}

TEST_CASE("sweep rows equal standalone runs, in input order") {
  const auto sweep = cli({"sweep-e2", "--zeta", "0.1", "--M", "3", "--e2-list", "6.7,4,5",
                          "--threads", "3"});
  REQUIRE(sweep.code == 0);
  std::istringstream in(sweep.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "e2,tau,dwell_left,dwell_right,n_left,n_right,error");
  for (const char* e2 : {"6.7", "4", "5"}) {
    REQUIRE(std::getline(in, line));
    CHECK(line.rfind(std::string(e2) + ",", 0) == 0);
    const auto single = nlohmann::json::parse(
        cli({"simulate", "--zeta", "0.1", "--M", "3", "--e", std::string("1+") + e2 + "i"}).out);
    const std::string expected =
        std::string(e2) + "," + cqes::format_number(single["tau"].get<double>()) + "," +
        cqes::format_number(single["dwell_left"].get<double>()) + "," +
        cqes::format_number(single["dwell_right"].get<double>()) + ",";
    CHECK(line.rfind(expected, 0) == 0);
    CHECK(line.back() == ',');
  }
  const auto single_thread =
      cli({"sweep-e2", "--zeta", "0.1", "--M", "3", "--e2-list", "6.7,4,5", "--threads", "1"});
  CHECK(single_thread.out == sweep.out);
}

TEST_CASE("sweep records per-row failures") {
  const auto r = cli({"sweep-e2", "--e2-list", "6.7,4", "--t-max", "5"});
  CHECK(r.code == 2);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  for (const char* e2 : {"6.7", "4"}) {
    REQUIRE(std::getline(in, line));
    CHECK(line.rfind(std::string(e2) + ",,,,,,", 0) == 0);
    CHECK(line.size() > std::string(e2).size() + 6);
  }
}

TEST_CASE("threshold bracket failure") {
  const auto r = cli({"threshold", "--zeta", "0.1", "--M", "3", "--e", "0.8", "--well",
                      "left:0", "--closed-offset", "0.6", "--open-offset", "0.7"});
  CHECK(r.code == 2);
  CHECK(r.err.find("closed end classified as open_escape") != std::string::npos);
}
