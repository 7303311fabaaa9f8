#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kleinfdtd/config.hpp"
#include "kleinfdtd/observables.hpp"
#include "kleinfdtd/potentials.hpp"
#include "kleinfdtd/stepper.hpp"
#include "kleinfdtd/wavepacket.hpp"

namespace kleinfdtd {

struct ScenarioResult {
  PacketSpec packet;
  double energy = 0.0;
  double dt = 0.0;
  CriticalityReport criticality;
  std::string polarity;  // repulsive | attractive | none

  RTReport rt;
  double R_unfiltered = 0.0;
  double T_unfiltered = 0.0;
  bool filtered = false;
  double forward_norm = 1.0;
  double cut_x = 0.0;
  std::int64_t filter_step = -1;

  ObservationLog log;
  double max_norm_deviation = 0.0;
  std::vector<std::string> warnings;

  /// key=value pairs written to report.txt.
  std::vector<std::pair<std::string, std::string>> report_entries() const;
};

/// Step at which the forward filter fires: enough free flight for the lobes
/// to separate by 12 x0, but no later than the forward lobe's 5 x0 front
/// reaching the measurement plane.
std::int64_t auto_filter_step(const PacketSpec& packet, double plane_x, double dt);

/// Runs one scenario end to end: initialise, free flight, forward filter,
/// barrier interaction, R/T. When `out_dir` is set, writes observables.csv,
/// report.txt and the configured snapshots/frames there. `extra_hooks` fire
/// after the built-in ones (filter, snapshots) at each step they match.
/// Diagnostics go to `log` when non-null.
ScenarioResult run_scenario(const ScenarioConfig& config,
                            const std::optional<std::filesystem::path>& out_dir = std::nullopt,
                            std::span<const ObserverHook> extra_hooks = {},
                            std::ostream* log = nullptr);

}  // namespace kleinfdtd
