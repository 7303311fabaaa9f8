#include "kleinfdtd/units.hpp"

#include <string>

#include "kleinfdtd/errors.hpp"

namespace kleinfdtd {

namespace {

constexpr double kSpeedOfLight = 299792458.0;  // m/s

}  // namespace

QuantityKind parse_quantity_kind(std::string_view name) {
  if (name == "energy_MeV") return QuantityKind::energy_MeV;
  if (name == "momentum_MeV_per_c") return QuantityKind::momentum_MeV_per_c;
  if (name == "potential_volts") return QuantityKind::potential_volts;
  if (name == "length_m") return QuantityKind::length_m;
  if (name == "time_s") return QuantityKind::time_s;
  throw InvalidArgument("unknown quantity kind '" + std::string(name) + "'");
}

double UnitsSystem::seconds_per_time_unit() const noexcept {
  return meters_per_length_unit / kSpeedOfLight;
}

double UnitsSystem::to_internal(double value, QuantityKind kind) const {
  switch (kind) {
    case QuantityKind::energy_MeV:
    case QuantityKind::momentum_MeV_per_c:
      return value / mev_per_energy_unit;
    case QuantityKind::potential_volts:
      // e * V in MeV is V * 1e-6.
      return value * 1e-6 / mev_per_energy_unit;
    case QuantityKind::length_m:
      return value / meters_per_length_unit;
    case QuantityKind::time_s:
      return value / seconds_per_time_unit();
  }
  throw InvalidArgument("unknown quantity kind");
}

double UnitsSystem::from_internal(double value, QuantityKind kind) const {
  switch (kind) {
    case QuantityKind::energy_MeV:
    case QuantityKind::momentum_MeV_per_c:
      return value * mev_per_energy_unit;
    case QuantityKind::potential_volts:
      return value * mev_per_energy_unit * 1e6;
    case QuantityKind::length_m:
      return value * meters_per_length_unit;
    case QuantityKind::time_s:
      return value * seconds_per_time_unit();
  }
  throw InvalidArgument("unknown quantity kind");
}

}  // namespace kleinfdtd
