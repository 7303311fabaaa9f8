#pragma once

#include <string>
#include <vector>

#include "kleinfdtd/grid.hpp"

namespace kleinfdtd {

/// Sharp step: eA0 = height for x >= edge_x, else 0.
///
/// Heights are interaction energies e*A0 in internal units; positive values
/// raise the electron's potential energy (repulsive).
struct StepPotentialSpec {
  double height = 0.0;
  double edge_x = 0.0;
};

/// Constant-field ramp: 0 below ramp_start_x, linear across ramp_width,
/// plateau `height` beyond. `field_strength` is the slope expressed as the
/// field parameter epsilon with eA0 = -field_strength * (x - ramp_start_x), so a
/// consistent ramp has -field_strength * ramp_width == height.
struct RampPotentialSpec {
  double height = 0.0;
  double ramp_start_x = 0.0;
  double ramp_width = 1.0;
  double field_strength = 0.0;
};

/// Sampled interaction energy eA0 per cell. The vector potential is
/// identically zero and has no representation.
struct PotentialProfile {
  Grid grid;
  std::vector<double> eA0;

  double peak() const noexcept;
  double min() const noexcept;
};

PotentialProfile zero_potential(const Grid& grid);
PotentialProfile sample_step(const Grid& grid, const StepPotentialSpec& spec);
PotentialProfile sample_ramp(const Grid& grid, const RampPotentialSpec& spec);

enum class Regime { subcritical, supercritical, critical_margin };

std::string to_string(Regime r);

struct CriticalityReport {
  Regime regime = Regime::subcritical;
  double eV = 0.0;
  double threshold = 0.0;  // E + m c^2
};

inline constexpr double kCriticalMargin = 1e-9;

/// Compares the barrier height against E + m c^2.
CriticalityReport classify(double peak_eV, double packet_energy, double mass);

}  // namespace kleinfdtd
