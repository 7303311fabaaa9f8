#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kleinfdtd/grid.hpp"
#include "kleinfdtd/potentials.hpp"
#include "kleinfdtd/spinor_field.hpp"

namespace kleinfdtd {

enum class BoundaryKind { reflecting, damping_layer };

struct BoundaryConfig {
  BoundaryKind kind = BoundaryKind::reflecting;
  int width_cells = 0;    // damping layer only
  double strength = 0.0;  // mask value at the face is 1 - strength
};

/// How the diagonal (mass + potential) term enters each half update.
enum class DiagonalScheme {
  time_centered,  // (1 - i a dt/2) / (1 + i a dt/2); keeps the staggered norm exact
  exact_phase,    // exp(-i a dt)
};

struct StepperConfig {
  double dt = 0.0;
  double courant_factor = 0.4;
  double mass = 1.0;
  BoundaryConfig boundary{};
  DiagonalScheme diagonal = DiagonalScheme::time_centered;

  /// dt = courant_factor * stability_limit(grid). Throws if the factor is
  /// outside (0, 1).
  static StepperConfig for_grid(const Grid& grid, double courant_factor = 0.4,
                                BoundaryConfig boundary = {});
};

/// Courant-type bound dx / (c sqrt(dims)).
double stability_limit(const Grid& grid) noexcept;

/// Leapfrog FDTD integrator for i dPsi/dt = (-i alpha.grad + beta m + eA0) Psi.
///
/// One step advances the upper pair from n-1/2 to n+1/2 using the lower pair
/// at n, then the lower pair from n to n+1 using the fresh upper pair. The
/// diagonal term is applied per cell in closed form, so coefficients are
/// precomputed once for the profile and dt.
class Stepper {
 public:
  Stepper(const PotentialProfile& profile, StepperConfig config);

  const StepperConfig& config() const noexcept { return config_; }
  const Grid& grid() const noexcept { return grid_; }

  /// One full leapfrog cycle. Throws DivergenceError on NaN/Inf.
  void step(SpinorField& field) const;

  void apply_boundary(SpinorField& field) const;

  /// Damping mask per cell (empty for reflecting boundaries).
  std::span<const double> damping_mask() const noexcept { return mask_; }

 private:
  void check_finite(const SpinorField& field) const;

  Grid grid_;
  StepperConfig config_;
  // new = keep * old + drive * K(other family)
  std::vector<cplx> keep_upper_, drive_upper_, keep_lower_, drive_lower_;
  std::vector<double> mask_;
  std::vector<std::size_t> shell_;
};

/// Single-step convenience wrapper building a Stepper on the fly.
void step(SpinorField& field, const PotentialProfile& profile, const StepperConfig& config);

/// Applies the configured boundary treatment once.
void apply_boundary(SpinorField& field, const StepperConfig& config);

struct ObserverHook {
  std::int64_t every = 1;
  std::function<void(SpinorField&)> fn;
};

/// Steps `n_steps` times. Hooks fire in registration order at step 0 and
/// after every step whose index is a multiple of `every`.
void run(SpinorField& field, const Stepper& stepper, std::int64_t n_steps,
         std::span<const ObserverHook> hooks = {});

}  // namespace kleinfdtd
