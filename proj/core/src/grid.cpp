#include "kleinfdtd/grid.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "kleinfdtd/errors.hpp"

namespace kleinfdtd {

std::array<int, 3> active_axes(int dims) noexcept {
  switch (dims) {
    case 1:
      return {0, -1, -1};
    case 2:
      return {0, 2, -1};
    default:
      return {0, 1, 2};
  }
}

double Grid::cell_volume() const noexcept { return std::pow(dx_, dims_); }

Index3 Grid::unravel(std::size_t idx) const noexcept {
  const auto s = static_cast<std::int64_t>(idx);
  return {s % n_[0], (s / n_[0]) % n_[1], s / (n_[0] * n_[1])};
}

Grid make_grid(int dims, std::span<const std::int64_t> n_per_axis, double dx,
               std::span<const double> origin, bool periodic, std::size_t memory_budget_bytes) {
  if (dims < 1 || dims > 3) {
    throw GridError(GridErrorKind::bad_dims, "dims must be 1, 2 or 3, got " + std::to_string(dims));
  }
  if (n_per_axis.size() != static_cast<std::size_t>(dims)) {
    throw GridError(GridErrorKind::bad_dims, "expected " + std::to_string(dims) +
                                                 " cell counts, got " +
                                                 std::to_string(n_per_axis.size()));
  }
  if (!(dx > 0.0) || !std::isfinite(dx)) {
    throw GridError(GridErrorKind::nonpositive_spacing, "dx must be positive and finite");
  }
  if (!origin.empty() && origin.size() != 1 && origin.size() != static_cast<std::size_t>(dims)) {
    throw GridError(GridErrorKind::bad_dims, "origin must have 0, 1 or dims entries");
  }

  Grid g;
  g.dims_ = dims;
  g.dx_ = dx;
  g.periodic_ = periodic;
  g.n_ = {1, 1, 1};
  g.active_ = {false, false, false};
  g.origin_ = {0.0, 0.0, 0.0};

  const auto axes = active_axes(dims);
  for (int a = 0; a < dims; ++a) {
    const int axis = axes[a];
    const std::int64_t n = n_per_axis[a];
    if (n < 4) {
      throw GridError(GridErrorKind::too_few_cells,
                      "need at least 4 cells per active axis, got " + std::to_string(n));
    }
    g.n_[axis] = n;
    g.active_[axis] = true;
    if (origin.size() == 1) {
      g.origin_[axis] = origin[0];
    } else if (!origin.empty()) {
      g.origin_[axis] = origin[a];
    }
  }

  // 8 complex doubles per cell; guard the multiplication itself against overflow.
  constexpr std::size_t kBytesPerCell = 8 * sizeof(std::complex<double>);
  const double cells = static_cast<double>(g.n_[0]) * static_cast<double>(g.n_[1]) *
                       static_cast<double>(g.n_[2]);
  if (cells * kBytesPerCell > static_cast<double>(memory_budget_bytes)) {
    throw GridError(GridErrorKind::memory_budget_exceeded,
                    "grid of " + std::to_string(static_cast<long double>(cells)) +
                        " cells exceeds memory budget of " +
                        std::to_string(memory_budget_bytes) + " bytes");
  }
  return g;
}

Vec3 cell_coordinate(const Grid& grid, const Index3& index) {
  Vec3 out{};
  for (int axis = 0; axis < 3; ++axis) {
    if (index[axis] < 0 || index[axis] >= grid.n()[axis]) {
      throw GridError(GridErrorKind::index_out_of_bounds,
                      "cell index " + std::to_string(index[axis]) + " out of bounds on axis " +
                          std::to_string(axis));
    }
    out[axis] = grid.coord(axis, index[axis]);
  }
  return out;
}

}  // namespace kleinfdtd
