#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "kleinfdtd/grid.hpp"
#include "kleinfdtd/potentials.hpp"
#include "kleinfdtd/spinor_field.hpp"

namespace kleinfdtd::oracle {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

inline constexpr std::int64_t kMaxExactCells = 64;

/// Dense matrix exponential by scaling and squaring around a Taylor core.
MatrixXc expm(const MatrixXc& a);

/// Flattens the four components of a field: entry c * cells + idx.
VectorXc to_vector(const SpinorField& field);
void from_vector(const VectorXc& v, SpinorField& field);

/// Exact (in time) evolution of the semi-discrete Dirac Hamiltonian on a
/// small periodic 1D lattice. The Hamiltonian is assembled column by column
/// from the same coupling stencil the stepper uses, so the only difference
/// against the leapfrog is the time discretisation.
class ExactEvolver1D {
 public:
  /// Throws InvalidArgument unless the grid is 1D, periodic and has at most
  /// 64 cells.
  ExactEvolver1D(const PotentialProfile& profile, double mass = 1.0);

  const MatrixXc& hamiltonian() const noexcept { return h_; }
  MatrixXc propagator(double t) const;

  double hermiticity_residual() const;
  static double unitarity_residual(const MatrixXc& u);

  /// Applies exp(-i H t) treating all four components as co-timed.
  SpinorField evolve(const SpinorField& initial, double t) const;

 private:
  Grid grid_;
  MatrixXc h_;
};

SpinorField exact_evolve_1d(const SpinorField& initial, const PotentialProfile& profile, double t,
                            double mass = 1.0);

/// Which transmitted root to take where E - eV < -m (the Klein zone).
enum class KleinBranch {
  group_velocity,  // transmitted wave carries current away from the step
  momentum_sign,   // transmitted momentum has the incident sign (R > 1)
};

struct PlaneWaveRT {
  double R = 0.0;
  double T = 0.0;
  bool evanescent = false;
};

/// Stationary single-mode coefficients for a plane wave of energy E > m
/// incident on a sharp step of height eV, from continuity of the spinor and
/// current conservation at the interface.
PlaneWaveRT planewave_step_rt(double E, double eV, double mass = 1.0,
                              KleinBranch branch = KleinBranch::group_velocity);

/// p c^2 / E with E on shell.
Vec3 group_velocity(const Vec3& p, double mass = 1.0);

}  // namespace kleinfdtd::oracle
