#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "thirring/cli.hpp"
#include "thirring/io.hpp"
#include "thirring/solutions.hpp"

using namespace thirring;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("thirring_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 2 * pi, -1e-17, 123456789.123456789}) {
    const std::string s = format_double(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("csv writer enforces the header width") {
  const fs::path dir = temp_dir("csv");
  CsvWriter csv(dir / "t.csv", {"a", "b"});
  csv.row({1.0, 2.0});
  CHECK_THROWS_AS(csv.row({1.0}), std::runtime_error);
}

TEST_CASE("bands command writes the requested sweep") {
  const fs::path dir = temp_dir("bands");
  cli::BandsOptions opt;
  opt.mass = 0.7;
  opt.couplings = {2 * pi / 3, 3 * pi / 7, -3 * pi / 7, -2 * pi / 3};
  opt.p_steps = 24;
  opt.out = dir;
  REQUIRE(cli::cmd_bands(opt) == cli::kOk);

  const std::string csv = slurp(dir / "bands.csv");
  CHECK(line_count(csv) == 25);  // header + 24 rows
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "p,band_edge_1,band_edge_2,band_edge_3,band_edge_4,discrete_omega_1,"
        "discrete_omega_2,discrete_omega_3,discrete_omega_4");

  // the four discrete curves appear ordered top to bottom at every p
  std::string line;
  const WalkParams<double> w(0.7);
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    REQUIRE(row.size() == 9);
    CHECK(row[5] > row[6]);
    CHECK(row[6] > row[7]);
    CHECK(row[7] > row[8]);
    // band edges match the dispersion formulas
    CHECK(row[1] == doctest::Approx(2 * dispersion(row[0], w)));
    CHECK(row[3] ==
          doctest::Approx(pi - 2 * std::acos(w.nu * std::sin(row[0]))));
  }

  CHECK(fs::exists(dir / "manifest.json"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["command"] == "bands");
  CHECK(manifest["outputs"].size() == 1);
  CHECK(manifest["parameters"]["mass"] == 0.7);
}

TEST_CASE("bands without couplings emits no discrete columns") {
  const fs::path dir = temp_dir("bands_free");
  cli::BandsOptions opt;
  opt.mass = 0.7;
  opt.p_steps = 5;
  opt.out = dir;
  REQUIRE(cli::cmd_bands(opt) == cli::kOk);
  std::istringstream in(slurp(dir / "bands.csv"));
  std::string header;
  std::getline(in, header);
  CHECK(header == "p,band_edge_1,band_edge_2,band_edge_3,band_edge_4");
}

TEST_CASE("identical commands produce byte-identical CSV output") {
  const fs::path a = temp_dir("det_a"), b = temp_dir("det_b");
  cli::BandsOptions opt;
  opt.mass = 0.6;
  opt.couplings = {1.1};
  opt.p_steps = 12;
  opt.out = a;
  REQUIRE(cli::cmd_bands(opt) == cli::kOk);
  opt.out = b;
  REQUIRE(cli::cmd_bands(opt) == cli::kOk);
  CHECK(slurp(a / "bands.csv") == slurp(b / "bands.csv"));
}

TEST_CASE("boundstate command emits a verified solution record") {
  const fs::path dir = temp_dir("bound");
  cli::BoundStateOptions opt;
  opt.mass = 0.6;
  opt.coupling = 0.6283;
  opt.total_momentum = 0.1100;
  opt.window = 64;
  opt.out = dir;
  REQUIRE(cli::cmd_boundstate(opt) == cli::kOk);

  const auto record = nlohmann::json::parse(slurp(dir / "solution.json"));
  CHECK(record["kind"] == "bound");
  CHECK(record["residual"].get<double>() <= 1e-10);
  CHECK(record["k_im"].get<double>() < 0);
  CHECK(record["decay_rate"].get<double>() > 0);
  CHECK(fs::exists(dir / "profile.csv"));
  const std::string csv = slurp(dir / "profile.csv");
  CHECK(line_count(csv) == std::size_t(2 * 64 + 2));
}

TEST_CASE("boundstate command: trivial coupling is a usage error") {
  const fs::path dir = temp_dir("bound_trivial");
  cli::BoundStateOptions opt;
  opt.mass = 0.6;
  opt.coupling = 0.0;
  opt.total_momentum = 0.3;
  opt.out = dir;
  CHECK(cli::cmd_boundstate(opt) == cli::kUsage);
}

TEST_CASE("boundstate command: chi = 2p emits the localized state") {
  const fs::path dir = temp_dir("bound_loc");
  cli::BoundStateOptions opt;
  opt.mass = 0.6;
  opt.coupling = 0.6;
  opt.total_momentum = 0.3;
  opt.window = 16;
  opt.out = dir;
  REQUIRE(cli::cmd_boundstate(opt) == cli::kOk);
  const auto record = nlohmann::json::parse(slurp(dir / "solution.json"));
  CHECK(record["kind"] == "localized");
  CHECK(record.contains("notice"));
  // three-site support in the profile
  std::istringstream in(slurp(dir / "profile.csv"));
  std::string line;
  std::getline(in, line);
  int populated = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const double prob = std::stod(line.substr(comma + 1));
    if (prob > 1e-20) ++populated;
  }
  CHECK(populated == 2);  // z in {-1, 0} carries the three relative sites
}

TEST_CASE("scatter command reports a unit-modulus transmission") {
  const fs::path dir = temp_dir("scatter");
  cli::ScatterOptions opt;
  opt.mass = 0.6;
  opt.coupling = 1.3;
  opt.total_momentum = 0.5236;
  opt.relative_momentum = 0.9;
  opt.branch = +1;
  opt.window = 32;
  opt.out = dir;
  REQUIRE(cli::cmd_scatter(opt) == cli::kOk);
  const auto record = nlohmann::json::parse(slurp(dir / "scatter.json"));
  CHECK(std::abs(record["T_abs"].get<double>() - 1.0) < 1e-13);
  CHECK(record["residual"].get<double>() <= 1e-10);

  // chi = 0 gives T = 1
  cli::ScatterOptions free = opt;
  free.coupling = 0.0;
  free.out = temp_dir("scatter_free");
  REQUIRE(cli::cmd_scatter(free) == cli::kOk);
  const auto rec0 = nlohmann::json::parse(slurp(free.out / "scatter.json"));
  CHECK(rec0["T_re"].get<double>() == doctest::Approx(1.0));
  CHECK(rec0["T_im"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("degeneracy command finds the quadruple") {
  const fs::path dir = temp_dir("degeneracy");
  cli::DegeneracyOptions opt;
  opt.mass = 0.6;
  opt.total_momentum = 0.5236;
  opt.phase = 2.0;
  opt.out = dir;
  REQUIRE(cli::cmd_degeneracy(opt) == cli::kOk);
  const std::string csv = slurp(dir / "degeneracy.csv");
  CHECK(line_count(csv) == 5);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["count"] == 4);
  CHECK(!manifest.contains("warning"));
}

TEST_CASE("degeneracy command warns when off the bands") {
  const fs::path dir = temp_dir("degeneracy_warn");
  cli::DegeneracyOptions opt;
  opt.mass = 0.6;
  opt.total_momentum = 0.5236;
  opt.phase = 1.0;  // inside the gap: no even-sector solutions
  opt.out = dir;
  REQUIRE(cli::cmd_degeneracy(opt) == cli::kOk);  // warning, not an error
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.contains("warning"));
}

TEST_CASE("evolve command writes snapshots and a summary") {
  const fs::path dir = temp_dir("evolve");
  cli::EvolveOptions opt;
  opt.mass = 0.6;
  opt.coupling = pi / 2;
  opt.initial = "singlet";
  opt.steps = 6;
  opt.size = 32;
  opt.snapshot_every = 3;
  opt.out = dir;
  REQUIRE(cli::cmd_evolve(opt) == cli::kOk);
  CHECK(fs::exists(dir / "prob_t0.csv"));
  CHECK(fs::exists(dir / "prob_t3.csv"));
  CHECK(fs::exists(dir / "prob_t6.csv"));
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["series"].size() == 7);
  for (const auto& row : summary["series"])
    CHECK(std::abs(row["norm"].get<double>() - 1.0) < 1e-12);

  // an open-boundary run that would hit the edge is refused up front
  cli::EvolveOptions bad = opt;
  bad.boundary = "open";
  bad.steps = 40;
  bad.out = temp_dir("evolve_bad");
  CHECK(cli::cmd_evolve(bad) == cli::kUsage);

  // steps = 0 emits the initial distribution only
  cli::EvolveOptions still = opt;
  still.steps = 0;
  still.snapshot_every = 0;
  still.out = temp_dir("evolve_still");
  REQUIRE(cli::cmd_evolve(still) == cli::kOk);
  const auto s2 = nlohmann::json::parse(slurp(still.out / "summary.json"));
  CHECK(s2["series"].size() == 1);
  CHECK(s2["series"][0]["diagonal_mass"].get<double>() ==
        doctest::Approx(1.0));
}

TEST_CASE("argument parsing: usage errors and pi units") {
  const char* bad[] = {"thirring-walk", "bands", "--mass", "1.5", "--out",
                       "/tmp/thirring_badmass"};
  CHECK(cli::run(6, bad) == cli::kUsage);

  const char* unknown[] = {"thirring-walk", "frobnicate"};
  CHECK(cli::run(2, unknown) == cli::kUsage);

  const fs::path dir = temp_dir("pi_units");
  const std::string out = dir.string();
  const char* scatter[] = {"thirring-walk", "--pi-units", "scatter",
                           "--mass", "0.6", "--chi", "0.5", "--p", "0.25",
                           "--k", "0.3", "--out", out.c_str()};
  REQUIRE(cli::run(13, scatter) == cli::kOk);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["parameters"]["chi"].get<double>() ==
        doctest::Approx(pi / 2));
}

TEST_CASE("verify command runs the quick suite") {
  const fs::path dir = temp_dir("verify");
  cli::VerifyOptions opt;
  opt.level = "quick";
  opt.seed = 99;
  opt.out = dir;
  CHECK(cli::cmd_verify(opt) == cli::kOk);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["failures"] == 0);
  CHECK(manifest["checks"].size() > 10);

  cli::VerifyOptions bad = opt;
  bad.level = "nonsense";
  CHECK(cli::cmd_verify(bad) == cli::kUsage);
}
