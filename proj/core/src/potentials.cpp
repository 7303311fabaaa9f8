#include "kleinfdtd/potentials.hpp"

#include <algorithm>
#include <cmath>

#include "kleinfdtd/errors.hpp"

namespace kleinfdtd {

namespace {

void require_inside_x(const Grid& grid, double x, const char* what) {
  if (!std::isfinite(x) || x < grid.lower(0) || x > grid.upper(0)) {
    throw InvalidArgument(std::string(what) + " x=" + std::to_string(x) +
                          " lies outside the grid x-extent [" + std::to_string(grid.lower(0)) +
                          ", " + std::to_string(grid.upper(0)) + "]");
  }
}

template <class F>
PotentialProfile sample_along_x(const Grid& grid, F&& value_at) {
  PotentialProfile p{grid, std::vector<double>(grid.cell_count(), 0.0)};
  const auto& n = grid.n();
  std::vector<double> row(static_cast<std::size_t>(n[0]));
  for (std::int64_t i = 0; i < n[0]; ++i) row[static_cast<std::size_t>(i)] = value_at(grid.coord(0, i));
  for (std::int64_t k = 0; k < n[2]; ++k) {
    for (std::int64_t j = 0; j < n[1]; ++j) {
      std::copy(row.begin(), row.end(), p.eA0.begin() + static_cast<std::ptrdiff_t>(grid.linear_index(0, j, k)));
    }
  }
  return p;
}

}  // namespace

double PotentialProfile::peak() const noexcept {
  return eA0.empty() ? 0.0 : *std::max_element(eA0.begin(), eA0.end());
}

double PotentialProfile::min() const noexcept {
  return eA0.empty() ? 0.0 : *std::min_element(eA0.begin(), eA0.end());
}

PotentialProfile zero_potential(const Grid& grid) {
  return PotentialProfile{grid, std::vector<double>(grid.cell_count(), 0.0)};
}

PotentialProfile sample_step(const Grid& grid, const StepPotentialSpec& spec) {
  if (!std::isfinite(spec.height)) throw InvalidArgument("step height must be finite");
  require_inside_x(grid, spec.edge_x, "step edge");
  return sample_along_x(grid, [&](double x) { return x >= spec.edge_x ? spec.height : 0.0; });
}

PotentialProfile sample_ramp(const Grid& grid, const RampPotentialSpec& spec) {
  if (!(spec.ramp_width > 0.0)) throw InvalidArgument("ramp width must be positive");
  if (!std::isfinite(spec.height) || !std::isfinite(spec.field_strength)) {
    throw InvalidArgument("ramp parameters must be finite");
  }
  const double end_value = -spec.field_strength * spec.ramp_width;
  const double scale = std::max({std::abs(spec.height), std::abs(end_value), 1e-300});
  if (std::abs(end_value - spec.height) > 1e-9 * scale) {
    throw InvalidArgument("discontinuous ramp: -field_strength * width = " +
                          std::to_string(end_value) + " but plateau height = " +
                          std::to_string(spec.height));
  }
  require_inside_x(grid, spec.ramp_start_x, "ramp start");
  require_inside_x(grid, spec.ramp_start_x + spec.ramp_width, "ramp end");

  const double a = spec.ramp_width;
  return sample_along_x(grid, [&](double x) {
    const double s = x - spec.ramp_start_x;
    if (s < 0.0) return 0.0;
    if (s > a) return spec.height;
    // Written as a fraction of the plateau so the profile is exactly 0 and
    // exactly `height` at the two ends and monotone in between.
    return spec.height * (s / a);
  });
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::subcritical:
      return "subcritical";
    case Regime::supercritical:
      return "supercritical";
    case Regime::critical_margin:
      return "critical-margin";
  }
  return "unknown";
}

CriticalityReport classify(double peak_eV, double packet_energy, double mass) {
  CriticalityReport r;
  r.eV = peak_eV;
  r.threshold = packet_energy + mass;  // c = 1
  if (peak_eV > r.threshold + kCriticalMargin) {
    r.regime = Regime::supercritical;
  } else if (peak_eV < r.threshold - kCriticalMargin) {
    r.regime = Regime::subcritical;
  } else {
    r.regime = Regime::critical_margin;
  }
  return r;
}

}  // namespace kleinfdtd
