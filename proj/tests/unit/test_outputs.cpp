#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "entspec/errors.hpp"
#include "entspec/outputs.hpp"
#include "json.hpp"

using namespace entspec;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

SimConfig config() {
  SimConfig cfg;
  cfg.n_max = 30;
  const double sigma = 5.0 / pi;
  cfg.packet1 = {{-sigma / 0.15, 0.0}, {0.25, 0.0}, sigma};
  cfg.packet2 = {{sigma / 0.15, 0.0}, {-0.25, 0.0}, sigma};
  cfg.potential = {PotentialKind::delta, 100.0, 0.0};
  cfg.n_samples = 6;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("entspec_out_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(field);
  return out;
}

}  // namespace

TEST_CASE("spectrum.csv layout") {
  const auto run = run_simulation(config());
  const auto text = spectrum_csv(run);
  std::stringstream ss(text);
  std::string header;
  std::getline(ss, header);
  const auto cols = split(header, ',');
  REQUIRE(cols.size() == 25);
  CHECK(cols[0] == "t");
  CHECK(cols[1] == "t/t0");
  CHECK(cols[2] == "p1");
  CHECK(cols[21] == "p20");
  CHECK(cols[22] == "purity");
  CHECK(cols[23] == "entropy");
  CHECK(cols[24] == "residual");
  int rows = 0;
  for (std::string line; std::getline(ss, line); ++rows) {
    const auto f = split(line, ',');
    CHECK(f.size() == 25);
    for (const auto& v : f) CHECK_NOTHROW(std::stod(v));
  }
  CHECK(rows == 6);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');
  const auto first = split(text.substr(text.find('\n') + 1, text.find('\n', text.find('\n') + 1)), ',');
  CHECK(first[0] == "0");
  CHECK(first[1] == "0");
  CHECK(std::stod(first[2]) == doctest::Approx(1.0).epsilon(1e-14));  // t = 0 row: pure state
}

TEST_CASE("write_outputs: files, determinism, manifest") {
  auto cfg = config();
  cfg.modes = {{0, 5}, {1, 2}, 0};
  const auto run = run_simulation(cfg);
  const auto a = scratch("a");
  const auto files = write_outputs(run, a, 1);
  CHECK(files == std::vector<std::string>{"spectrum.csv", "modes/t0_r1.csv", "modes/t0_r2.csv",
                                          "modes/t5_r1.csv", "modes/t5_r2.csv", "manifest.json"});
  const auto mode_text = slurp(a / "modes/t5_r2.csv");
  CHECK(mode_text.rfind("x,density\n-0.5,", 0) == 0);
  CHECK(std::count(mode_text.begin(), mode_text.end(), '\n') == 1 + 4 * 61);

  const auto again = run_simulation(cfg, {2});
  const auto b = scratch("b");
  write_outputs(again, b, 2);
  for (const auto& f : files) {
    if (f == "manifest.json") continue;
    CHECK(slurp(a / f) == slurp(b / f));
  }

  const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
  CHECK(manifest["blocks"]["total_dimension"] == 61 * 61);
  CHECK(manifest["blocks"]["count"] == 121);
  CHECK(manifest["hashes"].size() == 5);
  CHECK(manifest["tolerances"]["peak_threshold"] == 0.1);
  CHECK(manifest["config"]["n_max"] == 30);
  CHECK(manifest["config_text"].get<std::string>().find("[physics]") == 0);
  CHECK(manifest.contains("timings_s"));
  // Keys are emitted in sorted order.
  const auto text = slurp(a / "manifest.json");
  CHECK(text.find("\"blocks\"") < text.find("\"config\""));
  CHECK(text.find("\"config\"") < text.find("\"derived\""));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("no modes: spectrum and manifest only") {
  const auto run = run_simulation(config());
  const auto dir = scratch("nomodes");
  CHECK(write_outputs(run, dir, 1) == std::vector<std::string>{"spectrum.csv", "manifest.json"});
  CHECK_FALSE(fs::exists(dir / "modes"));
  fs::remove_all(dir);
}

TEST_CASE("failed write cleans up") {
  auto cfg = config();
  cfg.modes = {{1}, {1}, 0};
  const auto run = run_simulation(cfg);
  const auto dir = scratch("fail");
  fs::create_directories(dir);
  std::ofstream(dir / "modes") << "a file where the directory should go";
  CHECK_THROWS_AS(write_outputs(run, dir, 1), IoError);
  CHECK_FALSE(fs::exists(dir / "spectrum.csv"));
  CHECK_FALSE(fs::exists(dir / "manifest.json"));
  fs::remove_all(dir);

  const auto blocker = scratch("blocker");
  std::ofstream(blocker) << "x";
  CHECK_THROWS_AS(write_outputs(run, blocker / "sub", 1), IoError);
  fs::remove(blocker);
}

TEST_CASE("2D density csv") {
  ModeDensity d;
  d.dim = 2;
  d.resolution = 2;
  d.values = {1, 2, 3, 4};
  CHECK(density_csv(d) == "x,y,density\n-0.5,-0.5,1\n-0.5,0,2\n0,-0.5,3\n0,0,4\n");
  CHECK(density_filename(12, 3) == "modes/t12_r3.csv");
}
