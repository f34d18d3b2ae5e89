#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "rodlif/dielectric.hpp"
#include "rodlif/material_card.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

std::string binary_path() {
  const char* env = std::getenv("RODLIF_BIN");
  REQUIRE_MESSAGE(env != nullptr, "RODLIF_BIN must point at the rodlif binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = binary_path() + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "rodlif_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream f(p);
  f << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

const std::string kMats = " --mat1 " + testsup::card("silica.card") + " --mat2 " +
                          testsup::card("zinc_oxide.card") + " --mat3 " +
                          testsup::card("bromobenzene.card");

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("sweep with the medium card on rod 1 writes all-zero columns, exit 0") {
  const fs::path out = scratch_dir() / "null_sweep.csv";
  const RunResult r = run_cli("sweep --mat1 " + testsup::card("bromobenzene.card") + " --mat2 " +
                              testsup::card("zinc_oxide.card") + " --mat3 " +
                              testsup::card("bromobenzene.card") +
                              " --rmin 1e-8 --rmax 1e-7 --points-per-decade 4 --out " +
                              out.string());
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "R_m,F_ret_J_per_m,F_nonret_J_per_m,F_n0_J_per_m,ratio_abs,converged");
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty() || lines[i][0] == '#') continue;
    std::stringstream ss(lines[i]);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 6);
    CHECK(cells[1] == "0");
    CHECK(cells[2] == "0");
    CHECK(cells[3] == "0");
    CHECK(cells[5] == "1");
  }
}

TEST_CASE("malformed card: negative strength -> exit 1 naming path and field") {
  const fs::path bad = write_file("bad.card",
                                  "name = broken\nsource_type = oscillators\n"
                                  "oscillator = -0.5 1e15 0\n");
  const RunResult r = run_cli("crossings --mat1 " + bad.string() + " --mat2 " +
                              testsup::card("silica.card"));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("bad.card") != std::string::npos);
  CHECK(r.output.find("oscillator") != std::string::npos);
}

TEST_CASE("crossings: identical cards print no crossings") {
  const RunResult r = run_cli("crossings --mat1 " + testsup::card("silica.card") + " --mat2 " +
                              testsup::card("silica.card"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("no crossings") != std::string::npos);
}

TEST_CASE("crossings: analytic pair matches the closed form to 6 digits") {
  const fs::path a = write_file("osc_a.card",
                                "name = osc-a\nsource_type = oscillators\n"
                                "oscillator = 2.0 1e15 0\n");
  const fs::path b = write_file("osc_b.card",
                                "name = osc-b\nsource_type = oscillators\n"
                                "oscillator = 1.0 1e16 0\n");
  const RunResult r =
      run_cli("crossings --mat1 " + a.string() + " --mat2 " + b.string() + " --xi-min 1e12");
  CHECK(r.exit_code == 0);
  const size_t pos = r.output.find("xi_rad_s = ");
  REQUIRE(pos != std::string::npos);
  const double xi = std::strtod(r.output.c_str() + pos + 11, nullptr);
  const double expect = 1e16 / std::sqrt(98.0);  // root of the quadratic in xi^2
  CHECK(xi == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("crossings: shipped cards are ordered low (ZnO/Bb) then high (SiO2/Bb)") {
  const RunResult r = run_cli("crossings" + kMats);
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  double zn_bb = 0.0, si_bb = 0.0;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find("pair silica/bromobenzene") != std::string::npos) {
      si_bb = std::strtod(lines[i + 1].c_str() + lines[i + 1].find("= ") + 2, nullptr);
    }
    if (lines[i].find("pair zinc_oxide/bromobenzene") != std::string::npos) {
      zn_bb = std::strtod(lines[i + 1].c_str() + lines[i + 1].find("= ") + 2, nullptr);
    }
  }
  REQUIRE(zn_bb > 0.0);
  REQUIRE(si_bb > 0.0);
  CHECK(zn_bb < si_bb);
}

TEST_CASE("epsilon: vacuum card gives a column of exactly 1") {
  const fs::path vac = write_file("vacuum.card", "name = vacuum\nsource_type = oscillators\n");
  const fs::path out = scratch_dir() / "vac.csv";
  const RunResult r = run_cli("epsilon --mat1 " + vac.string() +
                              " --xi-min 1e12 --xi-max 1e16 --xi-points-per-decade 4 --out " +
                              out.string());
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() > 4);
  CHECK(lines[0] == "xi_rad_s,vacuum");
  for (size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].substr(lines[i].find(',') + 1) == "1");
  }
}

TEST_CASE("epsilon: oscillator card evaluates to 1 + C/2 at xi = w0") {
  const fs::path osc = write_file("osc_c.card",
                                  "name = osc-c\nsource_type = oscillators\n"
                                  "oscillator = 0.8 1e15 0\n");
  const fs::path out = scratch_dir() / "osc.csv";
  const RunResult r = run_cli("epsilon --mat1 " + osc.string() +
                              " --xi-min 1e13 --xi-max 1e15 --xi-points-per-decade 8 --out " +
                              out.string());
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(slurp(out));
  const std::string& last = lines.back();
  const double eps = std::strtod(last.c_str() + last.find(',') + 1, nullptr);
  CHECK(eps == doctest::Approx(1.4).epsilon(1e-12));
}

TEST_CASE("epsilon: tabulated column equals the cache and tracks direct quadrature") {
  const fs::path out = scratch_dir() / "zno.csv";
  const RunResult r = run_cli("epsilon --mat1 " + testsup::card("zinc_oxide.card") +
                              " --xi-min 1e13 --xi-max 1e18 --xi-points-per-decade 4 --out " +
                              out.string());
  CHECK(r.exit_code == 0);
  const auto model = rodlif::load_material_card(testsup::card("zinc_oxide.card"));
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() >= 21);
  int checked = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    const double xi = std::strtod(lines[i].c_str(), nullptr);
    const double eps = std::strtod(lines[i].c_str() + lines[i].find(',') + 1, nullptr);
    CHECK(eps == doctest::Approx(model.eval(xi)).epsilon(1e-9));
    CHECK(eps == doctest::Approx(model.eval_direct(xi)).epsilon(1e-6));
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("epsilon output cannot be re-ingested as a loss table") {
  const fs::path out = scratch_dir() / "reingest.csv";
  run_cli("epsilon --mat1 " + testsup::card("silica.card") +
          " --xi-min 1e13 --xi-max 1e16 --xi-points-per-decade 4 --out " + out.string());
  const fs::path card = write_file("reingest.card",
                                   "name = reingest\nsource_type = tabulated\nloss_table = " +
                                       out.string() + "\n");
  const RunResult r = run_cli("epsilon --mat1 " + card.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("not a loss table") != std::string::npos);
}

TEST_CASE("sweep output is byte-identical across worker counts") {
  const fs::path out1 = scratch_dir() / "det1.csv";
  const fs::path out4 = scratch_dir() / "det4.csv";
  const std::string common = "sweep" + kMats +
                             " --rmin 2e-8 --rmax 2e-7 --points-per-decade 5 --rel-tol 1e-6";
  const RunResult r1 = run_cli(common + " --threads 1 --out " + out1.string());
  const RunResult r4 = run_cli(common + " --threads 4 --out " + out4.string());
  CHECK(r1.exit_code == r4.exit_code);
  const std::string s1 = slurp(out1);
  CHECK(!s1.empty());
  CHECK(s1 == slurp(out4));
}

TEST_CASE("config file values are overridden by flags") {
  const fs::path conf = write_file(
      "test.conf",
      "[rod1]\nmaterial = " + testsup::card("bromobenzene.card") + "\nradius = 1e-9\n" +
          "[rod2]\nmaterial = " + testsup::card("zinc_oxide.card") + "\nradius = 1e-9\n" +
          "[medium]\nmaterial = " + testsup::card("bromobenzene.card") + "\n" +
          "[sweep]\nrmin = 1e-8\nrmax = 1e-7\npoints_per_decade = 4\n" +
          "[run]\ntemperature = 300\n");
  const fs::path out = scratch_dir() / "conf_sweep.csv";
  const RunResult r =
      run_cli("sweep --config " + conf.string() + " --rmax 3e-8 --out " + out.string());
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(slurp(out));
  double last_R = 0.0;
  for (const std::string& l : lines) {
    if (l.empty() || l[0] == '#' || l[0] == 'R') continue;
    last_R = std::strtod(l.c_str(), nullptr);
  }
  CHECK(last_R == doctest::Approx(3e-8).epsilon(1e-9));  // flag wins over config rmax
}

TEST_CASE("validation failure names the offending field") {
  const RunResult r = run_cli("sweep" + kMats + " --radius1 -1");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("radius1") != std::string::npos);
}

TEST_CASE("energy: single-point evaluation, n0 mode") {
  const RunResult r = run_cli("energy" + kMats + " --separation 1e-7 --mode n0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("n0,1e-07,") != std::string::npos);
}

}  // TEST_SUITE
