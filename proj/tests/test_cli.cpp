// Drives the installed command-line tool as a subprocess.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "obsidx_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int cli(const std::string& args) {
  const std::string cmd =
      "cd '" + workdir().string() + "' && '" OBSIDX_CLI_PATH "' " + args + " > out.txt 2> err.txt";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& name) {
  std::ifstream in(workdir() / name, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("heat-gramian --n-max 8 writes 8 rows") {
  CHECK(cli("heat-gramian --n-max 8") == 0);
  const std::string csv = slurp("heat-gramian.csv");
  CHECK(lines(csv) == 9);
  CHECK(csv.find("\n1,0.1215925") != std::string::npos);
  CHECK(slurp("out.txt").find("status: ok") != std::string::npos);
  CHECK(slurp("heat-gramian.manifest.json").find("\"status\": \"ok\"") != std::string::npos);
}

TEST_CASE("wave-ratio --n accepts a list") {
  CHECK(cli("wave-ratio --n 10,20,40,80 --out-csv w.csv --out-manifest w.json") == 0);
  CHECK(lines(slurp("w.csv")) == 5);
  CHECK(slurp("w.json").find("\"ratio_strictly_increasing\": true") != std::string::npos);
}

TEST_CASE("flags override the config file") {
  std::ofstream(workdir() / "run.conf") << "n_max = 5\nout_csv = from_file.csv\n";
  CHECK(cli("heat-gramian --config run.conf --n-max 3 --set sensor_x=1.0") == 0);
  const std::string csv = slurp("from_file.csv");
  CHECK(lines(csv) == 4);
}

TEST_CASE("invalid configuration exits 1") {
  CHECK(cli("heat-gramian --set bogus=1") == 1);
  CHECK(cli("burgers-index --n-list 21") == 1);
  CHECK(cli("burgers-index --kf x") == 1);
  CHECK(cli("no-such-experiment") == 1);
  CHECK(cli("heat-gramian --config missing.conf") == 1);
  CHECK(cli("") == 1);
}

TEST_CASE("numerical failure exits 2") {
  CHECK(cli("burgers-index --n-list 20,24 --set dt=1 --set horizon=50 --set sensor_steps=50 "
            "--out-csv bad.csv --out-manifest bad.json") == 2);
  CHECK(slurp("bad.json").find("\"status\": \"numerical-failure\"") != std::string::npos);
}

TEST_CASE("rerunning from a manifest reproduces the csv bytes") {
  CHECK(cli("burgers-index --n-list 20,24,28 --rho 0.08 --seed 7 --out-csv a.csv --out-manifest a.json") == 0);
  CHECK(cli("--from-manifest a.json --out-csv b.csv --out-manifest b.json") == 0);
  CHECK(slurp("a.csv") == slurp("b.csv"));
  CHECK(!slurp("a.csv").empty());
}
