#include "kleinfdtd/oracle.hpp"

#include <cmath>

#include "kleinfdtd/errors.hpp"
#include "kleinfdtd/stencil.hpp"
#include "kleinfdtd/wavepacket.hpp"

namespace kleinfdtd::oracle {

MatrixXc expm(const MatrixXc& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw InvalidArgument("expm needs a square matrix");
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const MatrixXc scaled = a / std::ldexp(1.0, squarings);

  // ||scaled||_1 <= 0.5, so 30 terms put the truncation far below 1e-16.
  MatrixXc result = MatrixXc::Identity(n, n);
  MatrixXc term = MatrixXc::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

VectorXc to_vector(const SpinorField& field) {
  const auto cells = static_cast<Eigen::Index>(field.cell_count());
  VectorXc v(4 * cells);
  for (int c = 0; c < 4; ++c) {
    auto comp = field.component(c);
    for (Eigen::Index i = 0; i < cells; ++i) v(c * cells + i) = comp[static_cast<std::size_t>(i)];
  }
  return v;
}

void from_vector(const VectorXc& v, SpinorField& field) {
  const auto cells = static_cast<Eigen::Index>(field.cell_count());
  if (v.size() != 4 * cells) throw InvalidArgument("state vector size mismatch");
  for (int c = 0; c < 4; ++c) {
    auto comp = field.component(c);
    for (Eigen::Index i = 0; i < cells; ++i) comp[static_cast<std::size_t>(i)] = v(c * cells + i);
  }
}

ExactEvolver1D::ExactEvolver1D(const PotentialProfile& profile, double mass) : grid_(profile.grid) {
  if (grid_.dims() != 1 || !grid_.periodic()) {
    throw InvalidArgument("exact evolution needs a periodic 1D lattice");
  }
  const auto cells = static_cast<Eigen::Index>(grid_.cell_count());
  if (cells > kMaxExactCells) {
    throw InvalidArgument("lattice too large for dense exponentiation: " + std::to_string(cells) +
                          " cells (max " + std::to_string(kMaxExactCells) + ")");
  }
  const Eigen::Index dim = 4 * cells;
  h_ = MatrixXc::Zero(dim, dim);
  constexpr cplx I{0.0, 1.0};

  std::vector<cplx> e1(static_cast<std::size_t>(cells)), e2(e1.size()), k1(e1.size()), k2(e1.size());
  // Column for a unit vector in family `src` (0 = upper, 1 = lower), component c, cell j.
  for (int src = 0; src < 2; ++src) {
    for (int c = 0; c < 2; ++c) {
      for (Eigen::Index j = 0; j < cells; ++j) {
        std::fill(e1.begin(), e1.end(), cplx{});
        std::fill(e2.begin(), e2.end(), cplx{});
        (c == 0 ? e1 : e2)[static_cast<std::size_t>(j)] = 1.0;
        stencil::apply_coupling(grid_, e1, e2, k1, k2);
        const Eigen::Index col = (2 * src + c) * cells + j;
        const int dst = 1 - src;
        for (Eigen::Index i = 0; i < cells; ++i) {
          h_(2 * dst * cells + i, col) = I * k1[static_cast<std::size_t>(i)];
          h_((2 * dst + 1) * cells + i, col) = I * k2[static_cast<std::size_t>(i)];
        }
        const double v = profile.eA0[static_cast<std::size_t>(j)];
        h_(col, col) += v + (src == 0 ? mass : -mass);
      }
    }
  }
}

MatrixXc ExactEvolver1D::propagator(double t) const {
  return expm(MatrixXc(cplx{0.0, -t} * h_));
}

double ExactEvolver1D::hermiticity_residual() const {
  return (h_ - h_.adjoint()).cwiseAbs().maxCoeff();
}

double ExactEvolver1D::unitarity_residual(const MatrixXc& u) {
  return (u.adjoint() * u - MatrixXc::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

SpinorField ExactEvolver1D::evolve(const SpinorField& initial, double t) const {
  if (!(initial.grid() == grid_)) throw InvalidArgument("field grid differs from oracle grid");
  SpinorField out = initial;
  from_vector(propagator(t) * to_vector(initial), out);
  return out;
}

SpinorField exact_evolve_1d(const SpinorField& initial, const PotentialProfile& profile, double t,
                            double mass) {
  return ExactEvolver1D(profile, mass).evolve(initial, t);
}

PlaneWaveRT planewave_step_rt(double E, double eV, double mass, KleinBranch branch) {
  if (!(E > mass)) throw InvalidArgument("plane-wave energy must exceed the rest energy");
  const double k = std::sqrt(E * E - mass * mass);
  const double inside = E - eV;
  const double q2 = inside * inside - mass * mass;
  PlaneWaveRT out;
  if (q2 <= 0.0) {
    out.R = 1.0;
    out.T = 0.0;
    out.evanescent = true;
    return out;
  }
  double q = std::sqrt(q2);
  // Group velocity inside is q / (E - eV); in the Klein zone it points
  // against q unless the negative root is taken.
  if (branch == KleinBranch::group_velocity && inside < 0.0) q = -q;
  const double kappa = (q / (inside + mass)) * ((E + mass) / k);
  const double r = (1.0 - kappa) / (1.0 + kappa);
  out.R = r * r;
  out.T = 4.0 * kappa / ((1.0 + kappa) * (1.0 + kappa));
  return out;
}

Vec3 group_velocity(const Vec3& p, double mass) {
  const double e = energy_of(p, mass);
  return {p[0] / e, p[1] / e, p[2] / e};
}

}  // namespace kleinfdtd::oracle
