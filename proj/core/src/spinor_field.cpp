#include "kleinfdtd/spinor_field.hpp"

#include <algorithm>
#include <cmath>

#include "kleinfdtd/errors.hpp"

namespace kleinfdtd {

SpinorField::SpinorField(Grid grid, double dt) : grid_(std::move(grid)), dt_(dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive and finite");
  for (auto& c : comp_) c.assign(grid_.cell_count(), cplx{0.0, 0.0});
}

void SpinorField::scale(double factor) noexcept {
  for (auto& c : comp_) {
    for (auto& v : c) v *= factor;
  }
}

void SpinorField::set_zero() noexcept {
  for (auto& c : comp_) std::fill(c.begin(), c.end(), cplx{0.0, 0.0});
}

bool SpinorField::all_finite() const noexcept {
  for (const auto& c : comp_) {
    for (const auto& v : c) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
  }
  return true;
}

}  // namespace kleinfdtd
