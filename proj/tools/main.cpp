// kleinfdtd: run, validate and inspect Dirac wave-packet scenarios.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "kleinfdtd/config.hpp"
#include "kleinfdtd/errors.hpp"
#include "kleinfdtd/oracle.hpp"
#include "kleinfdtd/potentials.hpp"
#include "kleinfdtd/scenario.hpp"

namespace {

enum ExitCode : int { kOk = 0, kConfig = 1, kDivergence = 2, kIo = 3 };

int report(const std::exception& e, int code) {
  std::cerr << "error: " << e.what() << '\n';
  return code;
}

int cmd_validate(const std::string& path) {
  try {
    const auto cfg = kleinfdtd::load_config(path);
    const auto grid = cfg.make_grid();
    const auto profile = cfg.potential_profile(grid);
    const auto packet = cfg.packet_spec();
    const double E = kleinfdtd::energy_of(packet.p, packet.mass);
    const double magnitude = std::max(std::abs(profile.peak()), std::abs(profile.min()));
    const auto crit = kleinfdtd::classify(magnitude, E, packet.mass);
    std::cout << path << ": ok (" << grid.cell_count() << " cells, dims=" << grid.dims()
              << ", E=" << E << ", |eV|=" << magnitude << ", " << kleinfdtd::to_string(crit.regime)
              << ")\n";
    for (const auto& w : kleinfdtd::packet_warnings(grid, packet)) std::cout << "warning: " << w << '\n';
    return kOk;
  } catch (const kleinfdtd::IoError& e) {
    return report(e, kIo);
  } catch (const kleinfdtd::Error& e) {
    return report(e, kConfig);
  }
}

int cmd_run(const std::string& path, const std::string& out) {
  kleinfdtd::ScenarioConfig cfg;
  try {
    cfg = kleinfdtd::load_config(path);
  } catch (const kleinfdtd::IoError& e) {
    return report(e, kIo);
  } catch (const kleinfdtd::Error& e) {
    return report(e, kConfig);
  }
  std::filesystem::path out_dir = out;
  if (out_dir.empty()) out_dir = std::filesystem::path("out") / std::filesystem::path(path).stem();
  try {
    kleinfdtd::run_scenario(cfg, out_dir, {}, &std::cout);
    std::cout << "wrote " << out_dir.string() << '\n';
    return kOk;
  } catch (const kleinfdtd::DivergenceError& e) {
    return report(e, kDivergence);
  } catch (const kleinfdtd::IoError& e) {
    return report(e, kIo);
  } catch (const std::filesystem::filesystem_error& e) {
    return report(e, kIo);
  } catch (const kleinfdtd::Error& e) {
    return report(e, kConfig);
  }
}

int cmd_oracle_rt(double E, double eV, double mass, const std::string& branch) {
  try {
    auto b = kleinfdtd::oracle::KleinBranch::group_velocity;
    if (branch == "momentum") b = kleinfdtd::oracle::KleinBranch::momentum_sign;
    const auto rt = kleinfdtd::oracle::planewave_step_rt(E, eV, mass, b);
    std::printf("R=%.12g\nT=%.12g\nevanescent=%s\n", rt.R, rt.T, rt.evanescent ? "true" : "false");
    return kOk;
  } catch (const kleinfdtd::Error& e) {
    return report(e, kConfig);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leapfrog FDTD solver for the Dirac equation with scalar potentials"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* run = app.add_subcommand("run", "Run a scenario and write its artifacts");
  run->add_option("config", config_path, "Scenario config file")->required();
  run->add_option("-o,--out", out_dir, "Output directory (default out/<config stem>)");

  auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
  validate->add_option("config", config_path, "Scenario config file")->required();

  double E = 0.0, eV = 0.0, mass = 1.0;
  std::string branch = "group";
  auto* oracle = app.add_subcommand("oracle", "Analytic reference values");
  oracle->require_subcommand(1);
  auto* rt = oracle->add_subcommand("rt", "Plane-wave step R/T, energies in units of m c^2");
  rt->add_option("--E", E, "Total energy")->required();
  rt->add_option("--eV", eV, "Step height")->required();
  rt->add_option("--mass", mass, "Rest mass")->check(CLI::PositiveNumber);
  rt->add_option("--branch", branch, "Klein-zone root: group|momentum")
      ->check(CLI::IsMember({"group", "momentum"}));

  app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  if (run->parsed()) return cmd_run(config_path, out_dir);
  if (validate->parsed()) return cmd_validate(config_path);
  if (rt->parsed()) return cmd_oracle_rt(E, eV, mass, branch);
  std::cout << "kleinfdtd " << KLEINFDTD_VERSION << '\n';
  return kOk;
}
