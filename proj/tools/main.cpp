// qlinear command-line runner.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qlinear/app/commands.hpp"
#include "qlinear/app/config.hpp"
#include "qlinear/app/verify.hpp"
#include "qlinear/core/csv.hpp"
#include "qlinear/core/errors.hpp"

namespace {

using namespace qlinear;

struct Flags {
  std::string config;
  app::RunOptions opts;
  std::string write_config;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Experiment configuration file");
  cmd->add_option("--out", f.opts.out_dir, "Output directory");
  cmd->add_option("--seed", f.opts.seed, "Random seed");
  cmd->add_option("--dt", f.opts.dt, "Override the solver time step");
  cmd->add_flag("--override-preconditions", f.opts.override_preconditions,
                "Run even when a documented precondition (e.g. PSG length vs packet width) "
                "is violated");
  cmd->add_option("--write-config", f.write_config,
                  "Write the effective configuration to this path and exit");
}

app::ExperimentConfig resolve(const std::string& command, const Flags& f) {
  auto cfg = f.config.empty() ? app::default_config(command) : app::load_config(f.config);
  return app::apply_options(cfg, f.opts);
}

void print(const app::CommandSummary& s) {
  for (const auto& [name, value] : s.values) {
    std::printf("%-28s %s\n", name.c_str(), format_number(value).c_str());
  }
  for (const auto& file : s.files) std::printf("wrote %s\n", file.c_str());
}

int run_command(const std::string& command, const Flags& f,
                app::CommandSummary (*fn)(const app::ExperimentConfig&, const app::RunOptions&)) {
  const auto cfg = resolve(command, f);
  if (!f.write_config.empty()) {
    app::save_config(cfg, f.write_config);
    std::printf("wrote %s\n", f.write_config.c_str());
    return 0;
  }
  print(fn(cfg, f.opts));
  return 0;
}

int run_verify(const Flags& f) {
  const std::uint64_t seed = f.opts.seed.value_or(1);
  const std::string dir = f.opts.out_dir.value_or("out");
  const auto report = app::run_verify(seed, [](const app::CheckResult& r) {
    std::printf("%s %-30s %.3e (tol %.1e) %6.2fs  %s\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.measured, r.tolerance, r.seconds, r.detail.c_str());
    std::fflush(stdout);
  });
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / "verify_summary.json";
  std::ofstream(path) << report.to_json() << "\n";
  std::printf("%s: %zu checks in %.1fs, summary in %s\n", report.passed() ? "all passed" : "FAILED",
              report.checks.size(), report.seconds, path.string().c_str());
  return report.passed() ? 0 : static_cast<int>(ErrorClass::numerical);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Linear-potential quantum evolution: closed-form propagator, split-step "
               "oracle, tunneling and spin devices"};
  cli.require_subcommand(1);

  Flags flags;
  auto* evolve = cli.add_subcommand("evolve", "Wave-packet trajectory, closed form vs oracle");
  auto* tunnel = cli.add_subcommand("tunnel", "Barrier scattering width scan");
  auto* psg = cli.add_subcommand("psg", "Phase shift generator report");
  auto* spin = cli.add_subcommand("spin", "Stern-Gerlach spin-flip gate report");
  auto* verify = cli.add_subcommand("verify", "Run the invariant suite");
  for (auto* cmd : {evolve, tunnel, psg, spin, verify}) add_common(cmd, flags);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorClass::validation);
  }

  try {
    if (evolve->parsed()) return run_command("evolve", flags, app::cmd_evolve);
    if (tunnel->parsed()) return run_command("tunnel", flags, app::cmd_tunnel);
    if (psg->parsed()) return run_command("psg", flags, app::cmd_psg);
    if (spin->parsed()) return run_command("spin", flags, app::cmd_spin);
    return run_verify(flags);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(e.error_class());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(ErrorClass::numerical);
  }
}
