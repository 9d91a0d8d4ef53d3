#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

using namespace std::string_literals;
namespace fs = std::filesystem;

namespace {

const std::string kCli = REBAL_CLI_PATH;
const fs::path kData = REBAL_DATA_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("rebal_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
  const int rc = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(run("") == 1);
  CHECK(run("solve --strategy warp --stations " + (kData / "stations.csv").string() +
            " --matrix " + (kData / "matrix.txt").string()) == 1);
}

TEST_CASE("missing data files exit 2") {
  TempDir tmp;
  CHECK(run("--stations " + (kData / "stations.csv").string() +
            " --matrix /nonexistent/matrix.txt --out-dir " + tmp.path.string() +
            " solve --strategy nearest") == 2);
}

TEST_CASE("simulate is byte-identical across runs") {
  TempDir tmp;
  const auto a = tmp.path / "a.csv";
  const auto b = tmp.path / "b.csv";
  const std::string common =
      "--stations " + (kData / "stations.csv").string() + " --seed 7 --slot day simulate --out ";
  REQUIRE(run(common + a.string()) == 0);
  REQUIRE(run(common + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("solve twice from the same seed is identical") {
  TempDir tmp;
  const std::string base = "--stations " + (kData / "stations.csv").string() + " --matrix " +
                           (kData / "matrix.txt").string() + " --seed 7 ";
  REQUIRE(run(base + "--out-dir " + (tmp.path / "r1").string() +
              " solve --strategy energy") == 0);
  REQUIRE(run(base + "--out-dir " + (tmp.path / "r2").string() +
              " solve --strategy energy") == 0);
  CHECK(slurp(tmp.path / "r1" / "plan_energy.txt") == slurp(tmp.path / "r2" / "plan_energy.txt"));
  CHECK(slurp(tmp.path / "r1" / "plan_energy.json") ==
        slurp(tmp.path / "r2" / "plan_energy.json"));
}

TEST_CASE("compare writes the table, plans and comparison file") {
  TempDir tmp;
  const std::string cmd = "--stations " + (kData / "stations.csv").string() + " --matrix " +
                          (kData / "matrix.txt").string() + " --seed 42 --slot day --out-dir " +
                          tmp.path.string() + " compare";
  REQUIRE(run(cmd) == 0);
  CHECK(fs::exists(tmp.path / "comparison.json"));
  CHECK(fs::exists(tmp.path / "state.csv"));
  for (const char* s : {"nearest", "demand", "energy"}) {
    CHECK(fs::exists(tmp.path / ("plan_"s + s + ".txt")));
    CHECK(fs::exists(tmp.path / ("plan_"s + s + ".json")));
  }
}

TEST_CASE("validate re-checks a stored plan") {
  TempDir tmp;
  const std::string base = "--stations " + (kData / "stations.csv").string() + " --matrix " +
                           (kData / "matrix.txt").string();
  REQUIRE(run(base + " --seed 3 --out-dir " + tmp.path.string() +
              " solve --strategy nearest") == 0);
  // The solve above wrote no state file; recreate it from the same seed.
  REQUIRE(run("--stations " + (kData / "stations.csv").string() + " --seed 3 simulate --out " +
              (tmp.path / "state.csv").string()) == 0);
  CHECK(run(base + " validate --plan " + (tmp.path / "plan_nearest.json").string() +
            " --state " + (tmp.path / "state.csv").string()) == 0);

  // Tamper with the stored metrics: validation must fail with exit 3.
  auto text = slurp(tmp.path / "plan_nearest.json");
  const auto pos = text.find("\"total_energy_wh\"");
  REQUIRE(pos != std::string::npos);
  text.insert(text.find(':', pos) + 2, "9");
  std::ofstream(tmp.path / "plan_nearest.json") << text;
  CHECK(run(base + " validate --plan " + (tmp.path / "plan_nearest.json").string() +
            " --state " + (tmp.path / "state.csv").string()) == 3);
}

TEST_CASE("matrix subcommand stitches the bundled blocks bit-exactly") {
  TempDir tmp;
  const auto out = tmp.path / "matrix.txt";
  REQUIRE(run("--stations " + (kData / "stations.csv").string() + " matrix --blocks-dir " +
              (kData / "blocks").string() + " --out " + out.string()) == 0);
  CHECK(slurp(out) == slurp(kData / "matrix.txt"));
}
