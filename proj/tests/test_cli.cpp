#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kerrdirac/cli.hpp"
#include "kerrdirac/errors.hpp"

using namespace kerrdirac;
using namespace kerrdirac::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "kerrdirac");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("kerrdirac_test_" + name);
}

}  // namespace

TEST_CASE("ranges") {
  CHECK(parse_range("0..10") == std::pair{0, 10});
  CHECK(parse_range("-6..6") == std::pair{-6, 6});
  CHECK(parse_range("3") == std::pair{3, 3});
  CHECK_THROWS_AS(parse_range("5..2"), InvalidParameter);
  CHECK_THROWS_AS(parse_range("a..2"), InvalidParameter);
  CHECK_THROWS_AS(parse_range("1..2x"), InvalidParameter);
}

TEST_CASE("omega subcommand") {
  const auto r = run({"omega", "--k", "2.5", "--a", "-1.266630", "--m", "1"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("omega_over_m = 0.986871") != std::string::npos);
  CHECK(r.out.find("inside") != std::string::npos);
  const auto rn = run({"omega", "--k", "0.5", "--Q", "1", "--e", "0.2"});
  CHECK(rn.out.find("no bound state (RN)") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"omega", "--k", "2"}).code == kInvalidParams);
  CHECK(run({"omega", "--k", "0.5", "--a", "0.5", "--M", "2"}).code == kInvalidParams);
  CHECK(run({"nonsense"}).code == kInvalidParams);
  CHECK(run({}).code == kInvalidParams);
  CHECK(run({"--help"}).code == kOk);
  CHECK(run({"solve-kerr", "--k", "0.5", "--scan", "2"}).code == kInvalidParams);
  CHECK(run({"eigenfunction", "--k", "2.5", "--am", "-1.3", "--n", "2", "--j", "-4", "--no-refine"}).code ==
        kNotBoundState);
  CHECK(run({"solve-kerr", "--k", "2.5", "--n", "0", "--j", "-1", "--side", "-", "--scan", "200", "--expect-roots"})
            .code == kNoRoots);
  CHECK(run({"verify", "--case", "regular"}).code == kOk);
  CHECK(run({"verify", "--case", "bogus"}).code == kInvalidParams);
}

TEST_CASE("window-only") {
  const auto r = run({"solve-kerr", "--k", "0.5", "--window-only"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("0.25") != std::string::npos);
  CHECK(r.out.find("0.35355339") != std::string::npos);
  CHECK(r.out.find("Mm > 1/4") != std::string::npos);
}

TEST_CASE("records round-trip through reclassification") {
  const auto r = run({"solve-kerr", "--k", "2.5", "--n", "2", "--j=-4", "--side", "-"});
  REQUIRE(r.code == kOk);
  std::istringstream lines(r.out);
  std::string line;
  REQUIRE(std::getline(lines, line));
  const auto record = nlohmann::json::parse(line);
  CHECK(record.at("am").get<double>() == doctest::Approx(-1.264065).epsilon(1e-6));
  CHECK(record.at("residual").get<double>() < 1e-8);
  const auto again = reclassify(record);
  REQUIRE(std::holds_alternative<radial::BoundStateSolution>(again));
  const auto& bs = std::get<radial::BoundStateSolution>(again);
  CHECK(bs.n() == 2);
  CHECK(bs.coeffs.kappa == doctest::Approx(record.at("kappa").get<double>()).epsilon(1e-12));
  CHECK(solution_record(bs).at("norm").get<double>() ==
        doctest::Approx(record.at("norm").get<double>()).epsilon(1e-8));
}

TEST_CASE("config file values yield to the command line") {
  const auto cfg = temp_file("solve.cfg");
  {
    std::ofstream f(cfg);
    f << "# second k = 5/2 root\nk = 2.5\nside = -\nn = 4\nj = -2\nexpect-roots = true\nscan = 400\n";
  }
  const auto a = run({"solve-kerr", "--config", cfg.string()});
  const auto b = run({"solve-kerr", "--k", "2.5", "--side", "-", "--n", "4", "--j=-2", "--scan", "400"});
  CHECK(a.code == kOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"n\":4") != std::string::npos);
  const auto c = run({"solve-kerr", "--config", cfg.string(), "--n", "0", "--j=-1"});
  CHECK(c.code == kNoRoots);
  {
    std::ofstream f(cfg);
    f << "k = 2.5\nunknown-key = 1\n";
  }
  CHECK(run({"solve-kerr", "--config", cfg.string()}).code == kInvalidParams);
  std::filesystem::remove(cfg);
  CHECK(run({"solve-kerr", "--config", cfg.string()}).code == kInvalidParams);
}

TEST_CASE("eigenfunction files") {
  const auto radial_csv = temp_file("radial.csv");
  const auto angular_csv = temp_file("angular.csv");
  const auto r = run({"eigenfunction", "--k", "2.5", "--am", "-1.2641", "--n", "2", "--j", "-4", "--radial-out",
                      radial_csv.string(), "--angular-out", angular_csv.string(), "--samples", "50",
                      "--theta-samples", "30"});
  REQUIRE(r.code == kOk);
  const auto record = nlohmann::json::parse(r.out);
  CHECK(record.at("am").get<double>() == doctest::Approx(-1.264065).epsilon(1e-6));
  auto count_lines = [](const std::filesystem::path& p) {
    std::ifstream f(p);
    std::string header, line;
    std::getline(f, header);
    int n = 0;
    while (std::getline(f, line)) ++n;
    return std::pair{header, n};
  };
  CHECK(count_lines(radial_csv) == std::pair<std::string, int>{"x,density", 50});
  CHECK(count_lines(angular_csv) == std::pair<std::string, int>{"theta,density", 30});
  std::filesystem::remove(radial_csv);
  std::filesystem::remove(angular_csv);
}

TEST_CASE("angular subcommand prints one record per label") {
  const auto r = run({"angular", "--k", "0.5", "--jmax", "2", "--grid", "400"});
  REQUIRE(r.code == kOk);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<int> labels;
  while (std::getline(lines, line)) labels.push_back(nlohmann::json::parse(line).at("j").get<int>());
  CHECK(labels == std::vector<int>{-2, -1, 1, 2});
}
