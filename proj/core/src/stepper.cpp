#include "kleinfdtd/stepper.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kleinfdtd/errors.hpp"
#include "kleinfdtd/stencil.hpp"

namespace kleinfdtd {

namespace {

constexpr std::size_t kSubsampleStride = 64;
constexpr std::int64_t kFullScanEvery = 100;

bool finite(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

std::vector<std::size_t> boundary_shell(const Grid& g) {
  std::vector<std::size_t> shell;
  if (g.periodic()) return shell;
  const auto& n = g.n();
  for (std::int64_t k = 0; k < n[2]; ++k) {
    for (std::int64_t j = 0; j < n[1]; ++j) {
      for (std::int64_t i = 0; i < n[0]; ++i) {
        const bool on_face = i == 0 || i == n[0] - 1 ||
                             (g.active(1) && (j == 0 || j == n[1] - 1)) ||
                             (g.active(2) && (k == 0 || k == n[2] - 1));
        if (on_face) shell.push_back(g.linear_index(i, j, k));
      }
    }
  }
  return shell;
}

std::vector<double> damping_mask_for(const Grid& g, const BoundaryConfig& b) {
  if (b.kind != BoundaryKind::damping_layer || b.width_cells <= 0) return {};
  const auto& n = g.n();
  std::array<std::vector<double>, 3> per_axis;
  for (int axis = 0; axis < 3; ++axis) {
    per_axis[axis].assign(static_cast<std::size_t>(n[axis]), 1.0);
    if (!g.active(axis)) continue;
    for (std::int64_t i = 0; i < n[axis]; ++i) {
      const std::int64_t d = std::min(i, n[axis] - 1 - i);
      if (d >= b.width_cells) continue;
      const double s = static_cast<double>(b.width_cells - d) / b.width_cells;
      const double ramp = std::sin(0.5 * std::numbers::pi * s);
      per_axis[axis][static_cast<std::size_t>(i)] = 1.0 - b.strength * ramp * ramp;
    }
  }
  std::vector<double> mask(g.cell_count());
  for (std::int64_t k = 0; k < n[2]; ++k) {
    for (std::int64_t j = 0; j < n[1]; ++j) {
      for (std::int64_t i = 0; i < n[0]; ++i) {
        mask[g.linear_index(i, j, k)] = per_axis[0][static_cast<std::size_t>(i)] *
                                        per_axis[1][static_cast<std::size_t>(j)] *
                                        per_axis[2][static_cast<std::size_t>(k)];
      }
    }
  }
  return mask;
}

}  // namespace

double stability_limit(const Grid& grid) noexcept {
  return grid.dx() / std::sqrt(static_cast<double>(grid.dims()));
}

StepperConfig StepperConfig::for_grid(const Grid& grid, double courant_factor,
                                      BoundaryConfig boundary) {
  if (!(courant_factor > 0.0 && courant_factor < 1.0)) {
    throw InvalidArgument("courant_factor must lie in (0, 1), got " +
                          std::to_string(courant_factor));
  }
  StepperConfig c;
  c.courant_factor = courant_factor;
  c.dt = courant_factor * stability_limit(grid);
  c.boundary = boundary;
  return c;
}

Stepper::Stepper(const PotentialProfile& profile, StepperConfig config)
    : grid_(profile.grid), config_(config) {
  if (!(config_.dt > 0.0) || config_.dt > stability_limit(grid_) * (1.0 + 1e-12)) {
    throw InvalidArgument("dt=" + std::to_string(config_.dt) + " outside (0, stability limit " +
                          std::to_string(stability_limit(grid_)) + "]");
  }
  if (!(config_.mass > 0.0)) throw InvalidArgument("mass must be positive");
  if (config_.boundary.kind == BoundaryKind::damping_layer &&
      (config_.boundary.width_cells < 0 || config_.boundary.strength < 0.0 ||
       config_.boundary.strength > 1.0)) {
    throw InvalidArgument("damping layer needs width >= 0 and strength in [0, 1]");
  }

  const std::size_t cells = grid_.cell_count();
  keep_upper_.resize(cells);
  drive_upper_.resize(cells);
  keep_lower_.resize(cells);
  drive_lower_.resize(cells);
  const double dt = config_.dt;
  const double m = config_.mass;
  constexpr cplx I{0.0, 1.0};
  auto coefficients = [&](double a, cplx& keep, cplx& drive) {
    if (config_.diagonal == DiagonalScheme::time_centered) {
      const cplx denom = 1.0 + I * (0.5 * a * dt);
      keep = (1.0 - I * (0.5 * a * dt)) / denom;
      drive = dt / denom;
    } else {
      keep = std::exp(-I * (a * dt));
      drive = dt * std::exp(-I * (0.5 * a * dt));
    }
  };
  for (std::size_t c = 0; c < cells; ++c) {
    const double v = profile.eA0[c];
    coefficients(v + m, keep_upper_[c], drive_upper_[c]);
    coefficients(v - m, keep_lower_[c], drive_lower_[c]);
  }
  mask_ = damping_mask_for(grid_, config_.boundary);
  shell_ = boundary_shell(grid_);
}

void Stepper::apply_boundary(SpinorField& field) const {
  for (int c = 0; c < 4; ++c) {
    auto comp = field.component(c);
    for (std::size_t idx : shell_) comp[idx] = 0.0;
    if (!mask_.empty()) {
      for (std::size_t idx = 0; idx < comp.size(); ++idx) comp[idx] *= mask_[idx];
    }
  }
}

void Stepper::check_finite(const SpinorField& field) const {
  const bool full = (field.step_index() % kFullScanEvery) == 0;
  const std::size_t stride = full ? 1 : kSubsampleStride;
  for (int c = 0; c < 4; ++c) {
    auto comp = field.component(c);
    for (std::size_t idx = 0; idx < comp.size(); idx += stride) {
      if (!finite(comp[idx])) {
        throw DivergenceError(field.step_index(),
                              "non-finite spinor value at step " +
                                  std::to_string(field.step_index()) + ", cell " +
                                  std::to_string(idx) + ", component " + std::to_string(c + 1));
      }
    }
  }
}

void Stepper::step(SpinorField& field) const {
  if (!(field.grid() == grid_)) throw InvalidArgument("field and potential live on different grids");
  if (std::abs(field.dt() - config_.dt) > 1e-15 * config_.dt) {
    throw InvalidArgument("field dt does not match stepper dt");
  }

  auto u0 = field.upper(0), u1 = field.upper(1);
  auto l0 = field.lower(0), l1 = field.lower(1);

  // Upper pair n-1/2 -> n+1/2 from lower at n.
  stencil::for_each_coupling(grid_, std::span<const cplx>(l0), std::span<const cplx>(l1),
                             [&](std::size_t idx, cplx k1, cplx k2) {
                               u0[idx] = keep_upper_[idx] * u0[idx] + drive_upper_[idx] * k1;
                               u1[idx] = keep_upper_[idx] * u1[idx] + drive_upper_[idx] * k2;
                             });
  for (std::size_t idx : shell_) u0[idx] = u1[idx] = 0.0;

  // Lower pair n -> n+1 from upper at n+1/2.
  stencil::for_each_coupling(grid_, std::span<const cplx>(u0), std::span<const cplx>(u1),
                             [&](std::size_t idx, cplx k1, cplx k2) {
                               l0[idx] = keep_lower_[idx] * l0[idx] + drive_lower_[idx] * k1;
                               l1[idx] = keep_lower_[idx] * l1[idx] + drive_lower_[idx] * k2;
                             });
  for (std::size_t idx : shell_) l0[idx] = l1[idx] = 0.0;

  if (!mask_.empty()) {
    for (int c = 0; c < 4; ++c) {
      auto comp = field.component(c);
      for (std::size_t idx = 0; idx < comp.size(); ++idx) comp[idx] *= mask_[idx];
    }
  }

  field.advance_step_index();
  check_finite(field);
}

void step(SpinorField& field, const PotentialProfile& profile, const StepperConfig& config) {
  Stepper(profile, config).step(field);
}

void apply_boundary(SpinorField& field, const StepperConfig& config) {
  Stepper(zero_potential(field.grid()), config).apply_boundary(field);
}

void run(SpinorField& field, const Stepper& stepper, std::int64_t n_steps,
         std::span<const ObserverHook> hooks) {
  if (n_steps < 0) throw InvalidArgument("n_steps must be non-negative");
  auto fire = [&](std::int64_t done) {
    for (const auto& h : hooks) {
      if (h.every > 0 && done % h.every == 0 && h.fn) h.fn(field);
    }
  };
  fire(0);
  for (std::int64_t s = 1; s <= n_steps; ++s) {
    stepper.step(field);
    fire(s);
  }
}

}  // namespace kleinfdtd
