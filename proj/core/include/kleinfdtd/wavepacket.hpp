#pragma once

#include <string>
#include <vector>

#include "kleinfdtd/grid.hpp"
#include "kleinfdtd/potentials.hpp"
#include "kleinfdtd/spinor_field.hpp"

namespace kleinfdtd {

enum class Spin { up, down };

Spin parse_spin(const std::string& s);
std::string to_string(Spin s);

/// Gaussian Dirac wave packet with spin along z (up) or flipped (down).
struct PacketSpec {
  Vec3 p{0.0, 0.0, 0.0};  // internal momentum units
  double x0 = 1.0;        // Gaussian width parameter; |Psi|^2 has std dev x0
  Vec3 center{0.0, 0.0, 0.0};
  Spin spin = Spin::up;
  double mass = 1.0;
};

/// On-shell energy sqrt(|p|^2 + m^2) with c = 1.
double energy_of(const Vec3& p, double mass);

/// Non-fatal placement problems (packet closer than 4 x0 to a face).
std::vector<std::string> packet_warnings(const Grid& grid, const PacketSpec& spec);

/// Samples the packet at t = 0 with every component co-timed and the
/// discrete sum |Psi|^2 dV normalised to 1. The field's dt is recorded but the
/// upper pair is not yet staggered.
SpinorField sample_packet(const Grid& grid, const PacketSpec& spec, double dt);

/// Moves the upper pair of a co-timed field back by dt/2: the mass and
/// potential phase is applied exactly and the spatial coupling by one
/// explicit half step. Pass nullptr for a zero potential.
void stagger_upper(SpinorField& field, const PotentialProfile* profile, double mass);

/// Full initial condition ready for the leapfrog: sample, stagger, then
/// rescale so the staggered norm (see density()) is exactly 1.
/// Throws InvalidArgument if x0 < 2 dx.
SpinorField init_packet(const Grid& grid, const PacketSpec& spec, double dt,
                        const PotentialProfile* profile = nullptr);

/// Probability at x >= plane_x.
double forward_fraction(const SpinorField& field, double plane_x);

}  // namespace kleinfdtd
