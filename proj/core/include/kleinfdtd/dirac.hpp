#pragma once

#include <array>
#include <complex>

namespace kleinfdtd {

using Matrix4c = std::array<std::array<std::complex<double>, 4>, 4>;

/// Dirac-representation matrices: alpha_i = [[0, sigma_i], [sigma_i, 0]],
/// beta = diag(1, 1, -1, -1).
struct DiracConstants {
  std::array<Matrix4c, 3> alpha;
  Matrix4c beta;

  static const DiracConstants& standard();

  /// Largest deviation from {alpha_i, alpha_j} = 2 delta_ij, {alpha_i, beta} = 0,
  /// beta^2 = 1 over all entries.
  double anticommutator_residual() const;
};

Matrix4c matmul(const Matrix4c& a, const Matrix4c& b);

}  // namespace kleinfdtd
