#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vessel1d/commands.hpp"

using namespace vessel1d;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "vessel1d-tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

constexpr const char* kInlineConfig = R"(
# decreasing-density example at unit-test scale
[scenario]
name = desk-a1
f = "-10*x^2+10+1e-6"
g = "0"
beta = "1"
mu = 0
t_end = 1

[numerics]
n = 50
dt = 1e-2

[output]
times = 0.5, 1
)";

}  // namespace

TEST_CASE("config text parses into a validated RunConfig") {
  const ConfigData data = ConfigData::parse_text(kInlineConfig);
  const RunConfig config = resolve_config(data);
  CHECK(config.scenario.name == "desk-a1");
  CHECK(config.scenario.f.source() == "-10*x^2+10+1e-6");
  CHECK(config.scenario.t_end == 1.0);
  CHECK(config.n == 50);
  CHECK(config.dt == 1e-2);
  REQUIRE(config.output_times.size() == 2);
  CHECK(config.output_times[0] == 0.5);
  CHECK(config.output_times[1] == 1.0);
  CHECK(config.controls.steady_tolerance == 1e-6);  // defaults kept
}

TEST_CASE("config defaults and catalog references") {
  ConfigData data;
  data.scenario["catalog"] = "A1";
  const RunConfig config = resolve_config(data);
  CHECK(config.scenario.name == "A1");
  CHECK(config.n == 1000);
  CHECK(config.dt == 1e-5);
  REQUIRE(config.output_times.size() == 10);
  CHECK(config.output_times.back() == doctest::Approx(10.0));

  // Field overrides on top of a catalog entry.
  data.scenario["t_end"] = "2";
  data.numerics["n"] = "100";
  data.numerics["dt"] = "1e-3";
  const RunConfig coarse = resolve_config(data);
  CHECK(coarse.scenario.t_end == 2.0);
  CHECK(coarse.n == 100);
}

TEST_CASE("config errors name the offending key") {
  auto fails_with = [](ConfigData data, const std::string& needle) {
    try {
      resolve_config(data);
      FAIL(("expected ConfigError mentioning '" + needle + "'"));
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  ConfigData bad_expr;
  bad_expr.scenario["f"] = "2**t";
  bad_expr.scenario["t_end"] = "1";
  fails_with(bad_expr, "scenario.f");

  ConfigData bad_number;
  bad_number.scenario["f"] = "1";
  bad_number.scenario["t_end"] = "soon";
  fails_with(bad_number, "scenario.t_end");

  ConfigData no_scenario;
  fails_with(no_scenario, "scenario");

  ConfigData bad_catalog;
  bad_catalog.scenario["catalog"] = "nope";
  fails_with(bad_catalog, "scenario.catalog");

  ConfigData bad_times;
  bad_times.scenario["f"] = "1";
  bad_times.scenario["t_end"] = "1";
  bad_times.numerics["dt"] = "1e-2";
  bad_times.output["times"] = "0.005";
  fails_with(bad_times, "output.times");

  ConfigData unknown;
  unknown.scenario["f"] = "1";
  unknown.scenario["t_end"] = "1";
  unknown.scenario["frobnicate"] = "1";
  fails_with(unknown, "frobnicate");

  ConfigData x_in_g;
  x_in_g.scenario["f"] = "1";
  x_in_g.scenario["g"] = "x";
  x_in_g.scenario["t_end"] = "1";
  fails_with(x_in_g, "g must not reference x");
}

TEST_CASE("config file structure errors") {
  CHECK_THROWS_AS(ConfigData::parse_text("f = 1\n"), ConfigError);        // key outside section
  CHECK_THROWS_AS(ConfigData::parse_text("[weird]\nf = 1\n"), ConfigError);
  CHECK_THROWS_AS(ConfigData::parse_text("[scenario\nf = 1\n"), ConfigError);
  CHECK_THROWS_AS(ConfigData::parse_text("[scenario]\njust words\n"), ConfigError);
  CHECK_THROWS_AS(ConfigData::parse_file("/nonexistent/config.ini"), ConfigError);

  // Comments and blank lines are fine; quoted values keep their '#'.
  const ConfigData data = ConfigData::parse_text(
      "# header comment\n[scenario]\nf = \"1\" # trailing comment\n\nt_end = 1\n");
  CHECK(data.scenario.at("f") == "1");
  CHECK(data.scenario.at("t_end") == "1");
}

TEST_CASE("default output times snap to the dt grid") {
  const auto times = default_output_times(1.0, 3e-3);
  REQUIRE(!times.empty());
  for (double t : times) {
    const double ratio = t / 3e-3;
    CHECK(std::fabs(ratio - std::llround(ratio)) <= 1e-9 * std::max(1.0, ratio));
  }
}

TEST_CASE("cmd_run writes byte-stable, well-formed artifacts") {
  const fs::path dir = fresh_dir("run-a");
  ConfigData data = ConfigData::parse_text(kInlineConfig);
  data.output["dir"] = dir.string();
  RunConfig config = resolve_config(data);
  config.controls.steady_tolerance = 0.0;  // run to the horizon

  std::ostringstream out, err;
  const int code = cmd_run(config, out, err);
  CHECK(code == 0);
  CHECK(err.str().empty());

  const std::string csv = read_file(dir / "snapshots.csv");
  CHECK(csv.rfind("t,x,u,grad\n", 0) == 0);

  // Row count: |output_times| x (n+1) data rows plus the header.
  const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  CHECK(rows == 1 + config.output_times.size() * static_cast<std::size_t>(config.n + 1));

  // t column is non-decreasing.
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  double last_t = -1.0;
  while (std::getline(lines, line)) {
    const double t = std::stod(line.substr(0, line.find(',')));
    CHECK(t >= last_t);
    last_t = t;
  }

  const std::string report = read_file(dir / "report.txt");
  CHECK(report.find("status: HorizonReached") != std::string::npos);
  CHECK(report.find("existence conditions") != std::string::npos);

  // Re-running the identical config reproduces identical bytes.
  const fs::path dir2 = fresh_dir("run-b");
  RunConfig config2 = config;
  config2.out_dir = dir2;
  std::ostringstream out2, err2;
  CHECK(cmd_run(config2, out2, err2) == 0);
  CHECK(read_file(dir2 / "snapshots.csv") == csv);
}

TEST_CASE("cmd_run exit codes follow the status contract") {
  std::ostringstream out, err;

  ConfigData blowup;
  blowup.scenario["f"] = "1";
  blowup.scenario["g"] = "1e9";
  blowup.scenario["t_end"] = "1";
  blowup.numerics["n"] = "10";
  blowup.numerics["dt"] = "0.1";
  blowup.output["dir"] = fresh_dir("run-blowup").string();
  CHECK(cmd_run(resolve_config(blowup), out, err) == 3);

  ConfigData nonbio;
  nonbio.scenario["catalog"] = "B2";
  nonbio.numerics["n"] = "200";
  nonbio.numerics["dt"] = "1e-3";
  nonbio.output["dir"] = fresh_dir("run-nonbio").string();
  CHECK(cmd_run(resolve_config(nonbio), out, err) == 2);

  ConfigData steady;
  steady.scenario["f"] = "1";
  steady.scenario["t_end"] = "1";
  steady.numerics["n"] = "10";
  steady.numerics["dt"] = "1e-2";
  steady.output["dir"] = fresh_dir("run-steady").string();
  CHECK(cmd_run(resolve_config(steady), out, err) == 0);
}

TEST_CASE("exit-code contract holds across the catalog") {
  for (const ScenarioSpec& spec : catalog()) {
    CAPTURE(spec.name);
    ConfigData data;
    data.scenario["catalog"] = spec.name;
    data.numerics["n"] = "100";
    data.numerics["dt"] = "1e-3";
    data.numerics["grad_tolerance"] = "1e-6";
    data.output["dir"] = fresh_dir("codes-" + spec.name).string();
    std::ostringstream out, err;
    const int code = cmd_run(resolve_config(data), out, err);
    CHECK(code == (spec.expects_biological() ? 0 : exit_code(*spec.expected_status)));
  }
}

TEST_CASE("sweep: placeholder substitution, ordering, and determinism") {
  ConfigData base;
  base.scenario["f"] = "{a}*x^2+{a}";
  base.scenario["g"] = "0";
  base.scenario["t_end"] = "0.5";
  base.numerics["n"] = "100";
  base.numerics["dt"] = "1e-3";

  std::vector<double> values;
  for (int a = 1; a <= 10; ++a) values.push_back(static_cast<double>(a));

  const auto rows = sweep_runs(base, "a", values, 4);
  REQUIRE(rows.size() == 10);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].value == values[i]);

  // Low amplitude stays biological, the strongest pressure drop does not.
  CHECK((rows.front().status == Status::Steady || rows.front().status == Status::HorizonReached));
  CHECK(rows.back().status == Status::NonBiological);
  CHECK(rows.back().status_time <= 0.1);

  const auto rows_serial = sweep_runs(base, "a", values, 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].status == rows_serial[i].status);
    CHECK(rows[i].status_time == rows_serial[i].status_time);
    CHECK(rows[i].tip_u_final == rows_serial[i].tip_u_final);
  }
}

TEST_CASE("sweep: scalar paths and error cases") {
  ConfigData base;
  base.scenario["catalog"] = "C1";
  base.numerics["n"] = "50";
  base.numerics["dt"] = "1e-3";

  const auto rows = sweep_runs(base, "mu", std::vector<double>{0.0, 1e-4}, 2);
  REQUIRE(rows.size() == 2);

  CHECK_THROWS_AS(sweep_runs(base, "a", std::vector<double>{1.0}, 1), ConfigError);
  CHECK_THROWS_AS(sweep_runs(base, "mu", std::vector<double>{}, 1), ConfigError);
}

TEST_CASE("cmd_sweep writes sweep.csv") {
  const fs::path dir = fresh_dir("sweep");
  ConfigData base;
  base.scenario["f"] = "{A}*cos(24*x)+{A}+0.1";
  base.scenario["t_end"] = "0.2";
  base.numerics["n"] = "100";
  base.numerics["dt"] = "1e-3";
  base.output["dir"] = dir.string();

  std::ostringstream out, err;
  const int code = cmd_sweep(base, "A", {0.1, 2.0}, 2, out, err);
  CHECK(code == 0);
  const std::string csv = read_file(dir / "sweep.csv");
  CHECK(csv.rfind("value,status,status_time,min_gradient,tip_u_final\n", 0) == 0);
  CHECK(csv.find("\n0.1,") != std::string::npos);
  CHECK(csv.find("\n2,NonBiological") != std::string::npos);

  std::ostringstream out2, err2;
  CHECK(cmd_sweep(base, "A", {}, 1, out2, err2) == 1);
  CHECK(err2.str().find("empty value list") != std::string::npos);
}

TEST_CASE("compare: identical configs differ by zero") {
  ConfigData data;
  data.scenario["catalog"] = "C1";
  data.numerics["n"] = "50";
  data.numerics["dt"] = "1e-3";
  const RunConfig config = resolve_config(data);

  const CompareReport report = compare_runs(config, config);
  CHECK(report.max_diff == 0.0);
  REQUIRE(!report.times.empty());
  for (double d : report.sup_diff) CHECK(d == 0.0);
  CHECK(report.steady_time_a == report.steady_time_b);
}

TEST_CASE("compare: rejects mismatched discretizations") {
  ConfigData data;
  data.scenario["catalog"] = "C1";
  data.numerics["n"] = "50";
  data.numerics["dt"] = "1e-3";
  const RunConfig a = resolve_config(data);
  data.numerics["n"] = "100";
  const RunConfig b = resolve_config(data);
  CHECK_THROWS_AS(compare_runs(a, b), ConfigError);

  std::ostringstream out, err;
  CHECK(cmd_compare(a, b, out, err) == 1);
  CHECK(err.str().find("share") != std::string::npos);
}

#ifdef VESSELSIM_BINARY
namespace {

int run_binary(const std::string& args) {
  const std::string cmd = std::string(VESSELSIM_BINARY) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("vesselsim binary end to end") {
  const fs::path dir = fresh_dir("binary");
  CHECK(run_binary("list") == 0);
  CHECK(run_binary("run --scenario nope --out " + (dir / "x").string()) == 1);
  CHECK(run_binary("run --scenario B2 --n 200 --dt 1e-3 --out " + (dir / "b2").string()) == 2);
  CHECK(run_binary("run --scenario C1 --n 50 --dt 1e-3 --out " + (dir / "c1").string()) == 0);
  CHECK(run_binary("check --scenario A2") == 0);
  CHECK(run_binary("compare C3 C1 --n 50 --dt 1e-3 --t-end 0.1 --times 0.05,0.1") == 0);
  CHECK(run_binary("sweep --scenario C1 --param mu --values 0,1e-4 --workers 2 --n 50 --dt "
                   "1e-3 --out " +
                   (dir / "sw").string()) == 0);
  CHECK(fs::exists(dir / "c1" / "snapshots.csv"));
  CHECK(fs::exists(dir / "sw" / "sweep.csv"));
}
#endif
