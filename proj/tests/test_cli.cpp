#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = BREATHERLAB_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const fs::path log = fs::temp_directory_path() / "breatherlab_cli_test.log";
  const std::string cmd = kCli + " " + args + " > " + log.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  res.output = ss.str();
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("blab_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

/// Parse the data rows of a CSV (skipping '#' metadata and the header).
std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(std::move(row));
  }
  return rows;
}

double json_number(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  REQUIRE(pos != std::string::npos);
  const auto colon = text.find(':', pos);
  return std::strtod(text.c_str() + colon + 1, nullptr);
}

}  // namespace

TEST_CASE("eval writes a field CSV with the expected modulus peak") {
  TempDir tmp;
  const auto res = run_cli("eval --kind peregrine --t 0 --L 50 --N 1024 --out " +
                           tmp.file("p.csv"));
  CHECK(res.exit_code == 0);
  const auto rows = csv_rows(slurp(tmp.file("p.csv")));
  REQUIRE(rows.size() == 1024);
  double peak = 0.0, peak_x = 1e9;
  for (const auto& r : rows)
    if (r[3] > peak) {
      peak = r[3];
      peak_x = r[0];
    }
  CHECK(peak == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(std::abs(peak_x) < 1e-9);
}

TEST_CASE("eval: km modulus peaks at the origin") {
  TempDir tmp;
  const auto res =
      run_cli("eval --kind km --a 0.75 --t 0 --L 80 --N 2048 --out " + tmp.file("km.csv"));
  CHECK(res.exit_code == 0);
  const auto rows = csv_rows(slurp(tmp.file("km.csv")));
  double peak = 0.0, peak_x = 1e9;
  for (const auto& r : rows)
    if (r[3] > peak) {
      peak = r[3];
      peak_x = r[0];
    }
  CHECK(std::abs(peak_x) < 1e-9);
}

TEST_CASE("parameter-domain and usage errors exit with code 2") {
  CHECK(run_cli("eval --kind akhmediev --a 0.6").exit_code == 2);
  CHECK(run_cli("eval --kind nosuch").exit_code == 2);
  CHECK(run_cli("conserved").exit_code == 2);            // missing required --kind
  CHECK(run_cli("nosuchcommand").exit_code == 2);
  CHECK(run_cli("conserved --kind akhmediev --a 0.25 --check").exit_code == 2);
  CHECK(run_cli("instability nosuch").exit_code == 2);
}

TEST_CASE("io failures exit with code 3") {
  CHECK(run_cli("eval --kind stokes --out /nonexistent-dir/x.csv").exit_code == 3);
}

TEST_CASE("conserved --check passes for km and peregrine, values serialized") {
  TempDir tmp;
  const auto km = run_cli("conserved --kind km --a 1 --check --out " + tmp.file("km.json"));
  CHECK(km.exit_code == 0);
  const std::string j = slurp(tmp.file("km.json"));
  CHECK(json_number(j, "M") == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-4));
  CHECK(json_number(j, "t") == 0.0);

  CHECK(run_cli("conserved --kind peregrine --check --out " + tmp.file("p.json")).exit_code ==
        0);
  CHECK(run_cli("conserved --kind stokes --check --out " + tmp.file("s.json")).exit_code == 0);
}

TEST_CASE("residual subcommand: pass, negative control fails with exit 1") {
  TempDir tmp;
  CHECK(run_cli("residual --equation ec-p --kind peregrine --t 0 --out " +
                tmp.file("r1.json"))
            .exit_code == 0);
  CHECK(run_cli("residual --equation ec-km --kind km --a 0.8 --t 1.2 --out " +
                tmp.file("r2.json"))
            .exit_code == 0);
  const auto neg =
      run_cli("residual --equation ec-p --kind km --a 0.8 --out " + tmp.file("r3.json"));
  CHECK(neg.exit_code == 1);
  CHECK(json_number(slurp(tmp.file("r3.json")), "sup_residual") > 1e-1);
}

TEST_CASE("identical config and seed give byte-identical artifacts") {
  TempDir tmp;
  const std::string args = " --kind peregrine --eps 1e-4 --seed 7 --t0 -0.5 --t-end 0.5 "
                           "--dt 1e-3 --L 100 --N 512 --record-every 100 --track-modes 1 "
                           "--track-modes 3 --reference same";
  CHECK(run_cli("evolve" + args + " --out " + tmp.file("a.csv") + " --json " +
                tmp.file("a.json"))
            .exit_code == 0);
  CHECK(run_cli("evolve" + args + " --out " + tmp.file("b.csv") + " --json " +
                tmp.file("b.json"))
            .exit_code == 0);
  CHECK(slurp(tmp.file("a.csv")) == slurp(tmp.file("b.csv")));
  CHECK(slurp(tmp.file("a.json")) == slurp(tmp.file("b.json")));

  const auto rows = csv_rows(slurp(tmp.file("a.csv")));
  REQUIRE(!rows.empty());
  // columns: t, M, E, hs_norm, orbital_distance, mode_k1, mode_k3
  CHECK(rows.front().size() == 7);
}

TEST_CASE("json config supplies defaults, flags override") {
  TempDir tmp;
  {
    std::ofstream cfg(tmp.file("cfg.json"));
    cfg << R"({"t": 1.0, "L": 64.0, "N": 256})";
  }
  const auto from_cfg = run_cli("eval --kind peregrine --config " + tmp.file("cfg.json") +
                                " --out " + tmp.file("c1.csv"));
  CHECK(from_cfg.exit_code == 0);
  const std::string c1 = slurp(tmp.file("c1.csv"));
  CHECK(c1.find("# t = 1\n") != std::string::npos);
  CHECK(c1.find("# N = 256") != std::string::npos);

  const auto overridden = run_cli("eval --kind peregrine --t 0 --config " +
                                  tmp.file("cfg.json") + " --out " + tmp.file("c2.csv"));
  CHECK(overridden.exit_code == 0);
  const std::string c2 = slurp(tmp.file("c2.csv"));
  CHECK(c2.find("# t = 0\n") != std::string::npos);
  CHECK(c2.find("# N = 256") != std::string::npos);
}

TEST_CASE("hessian subcommand emits restriction JSON and matrix CSV") {
  TempDir tmp;
  const auto res = run_cli("hessian --kind stokes --K 4 --L 32 --N 128 --out " +
                           tmp.file("h.json") + " --matrix-out " + tmp.file("h.csv"));
  CHECK(res.exit_code == 0);
  CHECK(json_number(slurp(tmp.file("h.json")), "min_eigenvalue") < 0.0);
  const auto rows = csv_rows("x\n" + slurp(tmp.file("h.csv")));  // matrix csv has no header
  CHECK(rows.size() == 18);
  CHECK(rows.front().size() == 18);
}

TEST_CASE("instability scenarios: akhmediev limits and decay") {
  TempDir tmp;
  const auto ak = run_cli("instability akhmediev-limits --a 0.25 --T 15 --out " +
                          tmp.file("ak.csv"));
  CHECK(ak.exit_code == 0);
  for (const auto& row : csv_rows(slurp(tmp.file("ak.csv")))) CHECK(row[1] < 1e-3);

  const auto decay =
      run_cli("instability decay --points 7 --t-min 100 --t-max 10000 --out " +
              tmp.file("d.csv"));
  CHECK(decay.exit_code == 0);
  CHECK(decay.output.find("[PASS]") != std::string::npos);
}

TEST_CASE("perturbed-run control: the unperturbed breather stays on its orbit") {
  TempDir tmp;
  const auto res = run_cli("instability perturbed-run --kind peregrine --eps 0 --out " +
                           tmp.file("ctrl.csv") + " --json " + tmp.file("ctrl.json"));
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("[PASS]") != std::string::npos);
  const auto rows = csv_rows(slurp(tmp.file("ctrl.csv")));
  REQUIRE(!rows.empty());
  for (const auto& row : rows) CHECK(row[4] < 1e-6);  // orbital_distance column
}

TEST_CASE("mi single-k run against linear theory") {
  TempDir tmp;
  const auto res = run_cli("mi --k 1.0 --out " + tmp.file("mi.csv"));
  CHECK(res.exit_code == 0);
  const auto rows = csv_rows(slurp(tmp.file("mi.csv")));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][1] == doctest::Approx(1.0).epsilon(0.05));   // measured
  CHECK(rows[0][2] == doctest::Approx(1.0).epsilon(1e-12));  // theory
}
