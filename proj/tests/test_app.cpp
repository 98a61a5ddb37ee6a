#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qlinear/app/commands.hpp"
#include "qlinear/app/config.hpp"
#include "qlinear/app/verify.hpp"
#include "qlinear/core/errors.hpp"

using namespace qlinear;
using namespace qlinear::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("qlinear_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_code(const std::string& args) {
  const std::string cmd = std::string(QLINEAR_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

double column_max(const std::string& csv, std::size_t col) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  double best = 0.0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    for (std::size_t i = 0; i <= col; ++i) std::getline(row, cell, ',');
    best = std::max(best, std::stod(cell));
  }
  return best;
}

}  // namespace

TEST_CASE("format_double round trips") {
  for (double v : {0.1, -60.0, 1e-300, 3.45189655512115566e-29, 2.0 / 3.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(-60.0) == "-60");
}

TEST_CASE("config serialization round trips for every command") {
  for (const char* cmd : {"evolve", "tunnel", "psg", "spin"}) {
    const auto c = default_config(cmd);
    const auto text = serialize_config(c);
    CHECK(parse_config(text) == c);
    CHECK(serialize_config(parse_config(text)) == text);
  }
  CHECK_THROWS_AS(default_config("bogus"), ValidationError);
}

TEST_CASE("config parsing") {
  const auto c = parse_config("[grid]\nn = 4096\n[state]\nsigma_m = 2.5\n[tunnel]\nvalues = 1, 2, 3\n");
  CHECK(c.n == 4096);
  CHECK(c.packet.sigma == 2.5);
  CHECK(c.scan_values == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(c.x_min == ExperimentConfig{}.x_min);
  CHECK(parse_config("; comment\n[grid]\n# another\nn = 64\n").n == 64);
  const auto check_rejects = [](const std::string& text, const std::string& field) {
    try {
      parse_config(text);
      FAIL("accepted " << text);
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  };
  check_rejects("[grid]\nbogus = 1\n", "bogus");
  check_rejects("[nosuch]\nx = 1\n", "nosuch");
  check_rejects("[grid]\nn = many\n", "n");
  check_rejects("[state]\nsigma_m = 1x\n", "sigma_m");
  check_rejects("[psg]\npacket = maybe\n", "packet");
  check_rejects("[grid]\nn = 1000\n", "n");
  check_rejects("[units]\nsystem = imperial\n", "system");
}

TEST_CASE("config files") {
  const auto dir = scratch("config");
  const auto c = default_config("tunnel");
  save_config(c, (dir / "c.ini").string());
  CHECK(load_config((dir / "c.ini").string()) == c);
  CHECK_THROWS_AS(load_config((dir / "missing.ini").string()), ValidationError);
}

TEST_CASE("options override the configuration") {
  RunOptions o;
  o.out_dir = "elsewhere";
  o.dt = 0.5;
  o.seed = 9;
  const auto c = apply_options(default_config("evolve"), o);
  CHECK(c.out_dir == "elsewhere");
  CHECK(c.dt == 0.5);
  CHECK(c.seed == 9);
}

TEST_CASE("evolve writes its files and matches the closed form") {
  const auto dir = scratch("evolve");
  auto c = default_config("evolve");
  c.out_dir = dir.string();
  const auto s = cmd_evolve(c);
  CHECK(fs::exists(dir / "evolve_trajectory.csv"));
  CHECK(fs::exists(dir / "evolve_final_state.csv"));
  CHECK(fs::exists(dir / "config.ini"));
  CHECK(load_config((dir / "config.ini").string()) == c);
  const auto traj = slurp(dir / "evolve_trajectory.csv");
  CHECK(traj.rfind("# qlinear evolve_trajectory v1\n", 0) == 0);
  CHECK(column_max(traj, 6) < 1e-6);
  bool found = false;
  for (const auto& [k, v] : s.values) {
    if (k == "max_l2_analytic_oracle") {
      found = true;
      CHECK(v < 1e-6);
    }
  }
  CHECK(found);
}

TEST_CASE("zero slope behaves like the free potential") {
  auto lin = default_config("evolve");
  lin.slope = 0.0;
  auto free = lin;
  free.potential_kind = "free";
  lin.out_dir = scratch("lin0").string();
  free.out_dir = scratch("free").string();
  cmd_evolve(lin);
  cmd_evolve(free);
  CHECK(slurp(fs::path(lin.out_dir) / "evolve_final_state.csv") ==
        slurp(fs::path(free.out_dir) / "evolve_final_state.csv"));
}

TEST_CASE("tunnel output is reproducible byte for byte") {
  auto c = default_config("tunnel");
  const auto first = scratch("tunnel_a");
  c.out_dir = first.string();
  cmd_tunnel(c);
  c.out_dir = scratch("tunnel_b").string();
  cmd_tunnel(c);
  const auto sa = slurp(first / "width_scan.csv");
  const auto sb = slurp(fs::path(c.out_dir) / "width_scan.csv");
  CHECK_FALSE(sa.empty());
  CHECK(sa == sb);
  CHECK(fs::exists(fs::path(c.out_dir) / "barrier_profile.csv"));
  auto no_absorber = default_config("tunnel");
  no_absorber.absorber_p_max = 0.0;
  CHECK_THROWS_AS(cmd_tunnel(no_absorber), ValidationError);
}

TEST_CASE("psg and spin commands") {
  auto c = default_config("psg");
  c.out_dir = scratch("psg").string();
  const auto p = cmd_psg(c);
  CHECK(std::abs(p.values.at(0).second + std::numbers::pi) < 1e-12);
  CHECK(fs::exists(fs::path(c.out_dir) / "psg_sweep.csv"));
  auto s = default_config("spin");
  s.out_dir = scratch("spin").string();
  const auto r = cmd_spin(s);
  for (const auto& [k, v] : r.values) {
    if (k == "flip_fidelity_at_pi") CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    if (k == "flip_fidelity_without_psg") CHECK(v < 1e-12);
  }
  CHECK(fs::exists(fs::path(s.out_dir) / "sg_branches.csv"));
}

TEST_CASE("verify check list") {
  const auto names = verify_check_names();
  CHECK(names.size() == 18);
  CHECK(names.front() == "analytic_vs_oracle");
}

TEST_CASE("command-line exit codes") {
  const auto dir = scratch("cli");
  const std::string out = " --out " + dir.string();
  CHECK(exit_code("psg" + out) == 0);
  CHECK(exit_code("nosuch") == 1);
  CHECK(exit_code("psg --dt notanumber") == 1);

  std::ofstream(dir / "bad.ini") << "[grid]\nn = 100\n";
  CHECK(exit_code("evolve --config " + (dir / "bad.ini").string() + out) == 1);

  // Packet mode with a capacitor shorter than 20 packet widths.
  std::ofstream(dir / "short.ini") << "[psg]\nL_m = 1\nV0_Jpm = 1\npacket = true\n";
  CHECK(exit_code("psg --config " + (dir / "short.ini").string() + out) == 3);
  CHECK(exit_code("psg --override-preconditions --config " + (dir / "short.ini").string() + out) ==
        0);

  std::ofstream(dir / "budget.ini") << "[potential]\nkind = barrier\n[solver]\nabsorber_p_max_kgmps = 1\n"
                                        "[tunnel]\nstep_budget = 10\nvalues = 0\n";
  CHECK(exit_code("tunnel --config " + (dir / "budget.ini").string() + out) == 2);

  CHECK(exit_code("evolve --write-config " + (dir / "w.ini").string()) == 0);
  CHECK(load_config((dir / "w.ini").string()) == default_config("evolve"));
}
