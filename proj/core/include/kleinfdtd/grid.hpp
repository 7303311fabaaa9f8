#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace kleinfdtd {

using Vec3 = std::array<double, 3>;
using Index3 = std::array<std::int64_t, 3>;

/// Default cap on spinor storage: cells * 8 complex doubles.
inline constexpr std::size_t kDefaultMemoryBudgetBytes = std::size_t{8} << 30;

/// Uniform Cartesian cell-centred lattice.
///
/// Storage is always three-axis (x, y, z) with x fastest. A 1D grid is active
/// along x only; a 2D grid spans the x-z plane (y inactive, n[1] == 1); a 3D
/// grid uses all three axes. Inactive axes have one cell at coordinate 0.
class Grid {
 public:
  int dims() const noexcept { return dims_; }
  const std::array<std::int64_t, 3>& n() const noexcept { return n_; }
  double dx() const noexcept { return dx_; }
  const Vec3& origin() const noexcept { return origin_; }
  bool periodic() const noexcept { return periodic_; }
  bool active(int axis) const noexcept { return active_[axis]; }

  std::size_t cell_count() const noexcept {
    return static_cast<std::size_t>(n_[0] * n_[1] * n_[2]);
  }
  double cell_volume() const noexcept;

  std::size_t linear_index(std::int64_t i, std::int64_t j, std::int64_t k) const noexcept {
    return static_cast<std::size_t>(i + n_[0] * (j + n_[1] * k));
  }
  Index3 unravel(std::size_t idx) const noexcept;

  /// Centre coordinate along one axis, no bounds check.
  double coord(int axis, std::int64_t i) const noexcept {
    return origin_[axis] + static_cast<double>(i) * dx_;
  }
  /// Extent of cell centres along an axis: [coord(0), coord(n-1)].
  double lower(int axis) const noexcept { return origin_[axis]; }
  double upper(int axis) const noexcept { return coord(axis, n_[axis] - 1); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  friend Grid make_grid(int, std::span<const std::int64_t>, double, std::span<const double>, bool,
                        std::size_t);

  int dims_ = 1;
  std::array<std::int64_t, 3> n_{1, 1, 1};
  std::array<bool, 3> active_{true, false, false};
  double dx_ = 1.0;
  Vec3 origin_{0.0, 0.0, 0.0};
  bool periodic_ = false;
};

/// Builds a validated grid. `n_per_axis` and `origin` carry one entry per
/// active axis (x; x z; x y z). `origin` may be empty (all zeros) or a single
/// value broadcast to every active axis.
Grid make_grid(int dims, std::span<const std::int64_t> n_per_axis, double dx,
               std::span<const double> origin, bool periodic = false,
               std::size_t memory_budget_bytes = kDefaultMemoryBudgetBytes);

/// Which storage axes are active for a given dimensionality.
std::array<int, 3> active_axes(int dims) noexcept;

/// Centre of cell `index` (storage indices, inactive axes must be 0).
Vec3 cell_coordinate(const Grid& grid, const Index3& index);

}  // namespace kleinfdtd
