#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "polyflow/cli.hpp"
#include "polyflow/trajectory_io.hpp"

using namespace polyflow;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "polyflow");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("polyflow_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const std::string kScenarios = POLYFLOW_SOURCE_DIR "/scenarios/";

}  // namespace

TEST_CASE("spectrum table", "[cli]") {
  const auto r = cli({"spectrum", "--n", "4"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[1] == "1      0");
  CHECK(rows[3] == "3      -2");

  const auto modes = cli({"spectrum", "--n", "10", "--scenario", kScenarios + "fig7.json"});
  CHECK(modes.code == 0);
  CHECK(lines(modes.out).size() == 11);

  CHECK(cli({"spectrum", "--n", "2"}).code == 2);
  CHECK(cli({"spectrum", "--n", "5", "--scenario", kScenarios + "fig7.json"}).code == 2);
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"simulate"}).code == 2);
  const auto missing = cli({"simulate", "--scenario", "/nonexistent.json"});
  CHECK(missing.code == 2);
  CHECK_FALSE(missing.err.empty());
  CHECK(cli({"reproduce", "fig99"}).code == 2);
  CHECK(cli({"validate", "--ensemble-size", "0"}).code == 2);
}

TEST_CASE("simulate matches reproduce", "[cli]") {
  const fs::path a = scratch_dir("sim"), b = scratch_dir("rep");
  const auto sim = cli({"simulate", "--scenario", kScenarios + "fig7.json", "--out-dir", a.string()});
  REQUIRE(sim.code == 0);
  REQUIRE(cli({"reproduce", "fig7", "--out-dir", b.string()}).code == 0);
  CHECK(read_text_file(a / "fig7.svg") == read_text_file(b / "fig7.svg"));
  CHECK(read_text_file(a / "fig7.csv") == read_text_file(b / "fig7.csv"));

  // Outputs named on the command line, plus checks on the linear run.
  const fs::path c = scratch_dir("explicit");
  const auto r = cli({"simulate", "--scenario", kScenarios + "fig7.json", "--out-csv", (c / "t.csv").string(),
                      "--out-report", (c / "r.json").string(), "--t-end", "2"});
  REQUIRE(r.code == 0);
  const Trajectory t = read_trajectory_csv(c / "t.csv");
  CHECK(t.times.back() == Catch::Approx(2.0));
  const auto doc = nlohmann::json::parse(read_text_file(c / "r.json"));
  REQUIRE(doc.is_array());
  for (const auto& entry : doc) CHECK(entry["passed"] == true);
}

TEST_CASE("analyze a saved trajectory", "[cli]") {
  const fs::path dir = scratch_dir("analyze");
  REQUIRE(cli({"reproduce", "fig8", "--out-dir", dir.string()}).code == 0);
  const auto area = cli({"analyze", "--csv", (dir / "fig8.csv").string(), "--checks", "area"});
  CHECK(area.code == 1);
  CHECK_THAT(area.out, ContainsSubstring("FAIL"));

  REQUIRE(cli({"reproduce", "fig7", "--out-dir", dir.string()}).code == 0);
  const fs::path report = dir / "checks.json";
  const auto ok = cli({"analyze", "--csv", (dir / "fig7.csv").string(), "--checks", "star,perimeter,ellipse",
                       "--report-json", report.string()});
  CHECK(ok.code == 0);
  const auto doc = nlohmann::json::parse(read_text_file(report));
  REQUIRE(doc.size() == 3);
  CHECK(doc[0]["check_name"] == "star_preservation");

  // A check whose precondition fails is reported, not thrown.
  REQUIRE(cli({"reproduce", "fig10", "--out-dir", dir.string()}).code == 0);
  const auto star = cli({"analyze", "--csv", (dir / "fig10.csv").string(), "--checks", "star"});
  CHECK(star.code == 1);

  CHECK(cli({"analyze", "--csv", (dir / "fig7.csv").string(), "--checks", "wobble"}).code == 2);
  write_text_file(dir / "junk.csv", "t,x1\nnope\n");
  CHECK(cli({"analyze", "--csv", (dir / "junk.csv").string()}).code == 2);
}

TEST_CASE("validate is reproducible", "[cli]") {
  const fs::path dir = scratch_dir("validate");
  const auto one = cli({"validate", "--ensemble-size", "2", "--threads", "1", "--report-json",
                        (dir / "a.json").string()});
  const auto two = cli({"validate", "--ensemble-size", "2", "--threads", "3", "--report-json",
                        (dir / "b.json").string()});
  CHECK((one.code == 0 || one.code == 1));
  CHECK(one.code == two.code);
  CHECK(read_text_file(dir / "a.json") == read_text_file(dir / "b.json"));
  CHECK(lines(one.out).size() == 12);
  CHECK_THAT(one.out, ContainsSubstring("oracle_equivalence"));
}
