#pragma once

#include <string_view>

namespace kleinfdtd {

enum class QuantityKind {
  energy_MeV,
  momentum_MeV_per_c,
  potential_volts,
  length_m,
  time_s,
};

/// Parses the lowercase/identifier spelling used in configs and on the CLI
/// ("energy_MeV", "length_m", ...). Throws InvalidArgument for unknown names.
QuantityKind parse_quantity_kind(std::string_view name);

/// Natural units with hbar = c = m_e = 1.
///
/// The internal energy unit is the electron rest energy and the internal
/// length unit is the reduced Compton wavelength hbar / (m_e c). A potential
/// in volts is converted to the interaction energy of one elementary charge,
/// so 0.511 MV maps to 1.
struct UnitsSystem {
  static constexpr double hbar = 1.0;
  static constexpr double c = 1.0;
  static constexpr double m_e = 1.0;

  double mev_per_energy_unit = 0.51099895;
  double meters_per_length_unit = 3.8615926796e-13;

  double seconds_per_time_unit() const noexcept;

  double to_internal(double value, QuantityKind kind) const;
  double from_internal(double value, QuantityKind kind) const;
};

}  // namespace kleinfdtd
