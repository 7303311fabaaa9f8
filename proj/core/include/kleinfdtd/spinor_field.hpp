#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "kleinfdtd/grid.hpp"

namespace kleinfdtd {

using cplx = std::complex<double>;

/// Four-component Dirac spinor on a grid, stored structure-of-arrays.
///
/// Components 0,1 (upper, Psi1/Psi2) live at time (step_index - 1/2) * dt;
/// components 2,3 (lower, Psi3/Psi4) live at step_index * dt.
class SpinorField {
 public:
  SpinorField(Grid grid, double dt);

  const Grid& grid() const noexcept { return grid_; }
  double dt() const noexcept { return dt_; }
  std::int64_t step_index() const noexcept { return step_index_; }
  void set_step_index(std::int64_t n) noexcept { step_index_ = n; }
  void advance_step_index() noexcept { ++step_index_; }

  double time_lower() const noexcept { return static_cast<double>(step_index_) * dt_; }
  double time_upper() const noexcept { return (static_cast<double>(step_index_) - 0.5) * dt_; }

  std::span<cplx> component(int c) noexcept { return comp_[c]; }
  std::span<const cplx> component(int c) const noexcept { return comp_[c]; }

  std::span<cplx> upper(int c) noexcept { return comp_[c]; }
  std::span<const cplx> upper(int c) const noexcept { return comp_[c]; }
  std::span<cplx> lower(int c) noexcept { return comp_[2 + c]; }
  std::span<const cplx> lower(int c) const noexcept { return comp_[2 + c]; }

  std::size_t cell_count() const noexcept { return comp_[0].size(); }

  void scale(double factor) noexcept;
  void set_zero() noexcept;
  bool all_finite() const noexcept;

  friend bool operator==(const SpinorField&, const SpinorField&) = default;

 private:
  Grid grid_;
  double dt_;
  std::int64_t step_index_ = 0;
  std::array<std::vector<cplx>, 4> comp_;
};

}  // namespace kleinfdtd
