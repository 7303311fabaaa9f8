#include "kleinfdtd/dirac.hpp"

#include <algorithm>
#include <cmath>

namespace kleinfdtd {

namespace {

using Pauli = std::array<std::array<std::complex<double>, 2>, 2>;

DiracConstants build() {
  constexpr std::complex<double> I{0.0, 1.0};
  const std::array<Pauli, 3> sigma{{
      {{{0.0, 1.0}, {1.0, 0.0}}},
      {{{0.0, -I}, {I, 0.0}}},
      {{{1.0, 0.0}, {0.0, -1.0}}},
  }};
  DiracConstants d{};
  for (int a = 0; a < 3; ++a) {
    for (auto& row : d.alpha[a]) row.fill(0.0);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        d.alpha[a][r][c + 2] = sigma[a][r][c];
        d.alpha[a][r + 2][c] = sigma[a][r][c];
      }
    }
  }
  for (auto& row : d.beta) row.fill(0.0);
  d.beta[0][0] = d.beta[1][1] = 1.0;
  d.beta[2][2] = d.beta[3][3] = -1.0;
  return d;
}

double residual(const Matrix4c& a, const Matrix4c& b, double expected_diag) {
  const Matrix4c ab = matmul(a, b);
  const Matrix4c ba = matmul(b, a);
  double worst = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const std::complex<double> want = (r == c) ? expected_diag : 0.0;
      worst = std::max(worst, std::abs(ab[r][c] + ba[r][c] - want));
    }
  }
  return worst;
}

}  // namespace

const DiracConstants& DiracConstants::standard() {
  static const DiracConstants constants = build();
  return constants;
}

Matrix4c matmul(const Matrix4c& a, const Matrix4c& b) {
  Matrix4c out{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      std::complex<double> s = 0.0;
      for (int k = 0; k < 4; ++k) s += a[r][k] * b[k][c];
      out[r][c] = s;
    }
  }
  return out;
}

double DiracConstants::anticommutator_residual() const {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) worst = std::max(worst, residual(alpha[i], alpha[j], i == j ? 2.0 : 0.0));
    worst = std::max(worst, residual(alpha[i], beta, 0.0));
  }
  // beta^2 = 1  <=>  {beta, beta} = 2.
  worst = std::max(worst, residual(beta, beta, 2.0));
  return worst;
}

}  // namespace kleinfdtd
