#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(ENTSPEC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const auto p = fs::temp_directory_path() / ("entspec_cli_" + name + ".cfg");
  std::ofstream(p) << text;
  return p;
}

const std::string kSmall = R"([physics]
n_max = 30
[packet1]
N_c = -10.610329539459691
X_c = 0.25
sigma = 1.5915494309189535
[potential]
T = 0.45
[run]
n_samples = 5
K = 4
)";

}  // namespace

TEST_CASE("exit codes") {
  const auto good = write_config("good", kSmall);
  const auto out = fs::temp_directory_path() / "entspec_cli_out";
  fs::remove_all(out);

  CHECK(run("oracle " + good.string()) == 0);
  CHECK(run("simulate " + good.string() + " --out " + out.string() + " --threads 2 --k 3") == 0);
  CHECK(fs::exists(out / "spectrum.csv"));
  CHECK(fs::exists(out / "manifest.json"));
  CHECK(run("modes " + good.string() + " --out " + out.string() + " --times 0,4 --ranks 1,2") == 0);
  CHECK(fs::exists(out / "modes" / "t4_r2.csv"));

  // 1: validation and usage
  CHECK(run("simulate " + write_config("bad", "[physics]\nn_max = 0\n").string() + " --out " +
            out.string()) == 1);
  CHECK(run("simulate " + write_config("parse", "[physics]\nbogus = 1\n").string() + " --out " +
            out.string()) == 1);
  CHECK(run("simulate") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("modes " + good.string() + " --out " + out.string() + " --times 9 --ranks 1") == 1);

  // 2: numeric failure (no relative motion, so no strength solves for T)
  const auto still = write_config("still",
                                  "[physics]\nn_max = 30\n[packet1]\nN_c = 0\nX_c = 0.25\n"
                                  "sigma = 1.5\n[potential]\nT = 0.5\n[run]\nt_end = 0.001\n"
                                  "n_samples = 3\n");
  CHECK(run("simulate " + still.string() + " --out " + out.string()) == 2);

  // 3: I/O
  CHECK(run("simulate /nonexistent/x.cfg --out " + out.string()) == 3);
  const auto blocker = fs::temp_directory_path() / "entspec_cli_blocker";
  std::ofstream(blocker) << "x";
  CHECK(run("simulate " + good.string() + " --out " + (blocker / "sub").string()) == 3);

  CHECK(run("--help") == 0);
  fs::remove(blocker);
  fs::remove_all(out);
}

TEST_CASE("same config, different thread counts, identical spectrum") {
  const auto good = write_config("det", kSmall);
  const auto a = fs::temp_directory_path() / "entspec_cli_det_a";
  const auto b = fs::temp_directory_path() / "entspec_cli_det_b";
  REQUIRE(run("simulate " + good.string() + " --out " + a.string() + " --threads 1") == 0);
  REQUIRE(run("simulate " + good.string() + " --out " + b.string() + " --threads 3") == 0);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(a / "spectrum.csv") == slurp(b / "spectrum.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}
