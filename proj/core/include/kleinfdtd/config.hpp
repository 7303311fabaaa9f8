#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kleinfdtd/grid.hpp"
#include "kleinfdtd/observables.hpp"
#include "kleinfdtd/stepper.hpp"
#include "kleinfdtd/units.hpp"
#include "kleinfdtd/wavepacket.hpp"

namespace kleinfdtd {

enum class PotentialKind { none, step, ramp };

std::string to_string(PotentialKind k);

/// One scenario, as written in a config file. Physical quantities keep the
/// units named by their keys; grid geometry and positions are internal units.
struct ScenarioConfig {
  struct GridBlock {
    int dims = 1;
    std::vector<std::int64_t> n;
    double dx = 0.0;
    std::vector<double> origin;
    bool operator==(const GridBlock&) const = default;
  } grid;

  struct UnitsBlock {
    double electron_mass_mev = UnitsSystem{}.mev_per_energy_unit;
    double reduced_compton_m = UnitsSystem{}.meters_per_length_unit;
    bool operator==(const UnitsBlock&) const = default;
  } units;

  struct PacketBlock {
    Vec3 momentum_mev_per_c{0.0, 0.0, 0.0};
    double x0_m = 0.0;
    Vec3 center{0.0, 0.0, 0.0};
    Spin spin = Spin::up;
    bool operator==(const PacketBlock&) const = default;
  } packet;

  struct PotentialBlock {
    PotentialKind kind = PotentialKind::none;
    double height_volts = 0.0;
    double edge = 0.0;  // step edge or ramp base, internal length
    double ramp_width_m = 0.0;
    double field_volts_per_m = 0.0;
    bool operator==(const PotentialBlock&) const = default;
  } potential;

  struct StepperBlock {
    double courant_factor = 0.4;
    BoundaryKind boundary = BoundaryKind::reflecting;
    int damping_width = 16;
    double damping_strength = 0.05;
    std::int64_t n_steps = 2000;
    DiagonalScheme diagonal = DiagonalScheme::time_centered;
    bool operator==(const StepperBlock&) const = default;
  } stepper;

  struct ObserveBlock {
    std::int64_t sample_every = 10;
    std::optional<double> plane_x;
    bool forward_filter = true;
    std::optional<std::int64_t> filter_step;
    std::optional<double> cut_x;
    std::int64_t snapshot_every = 0;
    SlicePlane slice_plane = SlicePlane::xz;
    std::optional<std::int64_t> slice_index;
    bool operator==(const ObserveBlock&) const = default;
  } observe;

  bool operator==(const ScenarioConfig&) const = default;

  // Derived, internal-unit views. Valid after parse_config's validation.
  UnitsSystem units_system() const;
  Grid make_grid() const;
  PacketSpec packet_spec() const;
  PotentialProfile potential_profile(const Grid& grid) const;
  double plane_x() const;
};

/// Parses the line-oriented `section.key = value` format. Blank lines and
/// `#` comments are ignored; list values are whitespace separated. Throws
/// ConfigError carrying the 1-based line of the first problem.
ScenarioConfig parse_config(std::string_view text);

/// Reads and parses a file; I/O failures raise IoError.
ScenarioConfig load_config(const std::string& path);

/// Writes every key explicitly; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

}  // namespace kleinfdtd
