// Shared fixtures for the unit and acceptance suites.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "kleinfdtd/grid.hpp"
#include "kleinfdtd/oracle.hpp"
#include "kleinfdtd/potentials.hpp"
#include "kleinfdtd/spinor_field.hpp"
#include "kleinfdtd/stepper.hpp"
#include "kleinfdtd/wavepacket.hpp"

namespace kleinfdtd::testing {

inline Grid grid_1d(std::int64_t n, double dx, double origin, bool periodic = false) {
  const std::array<std::int64_t, 1> nn{n};
  const std::array<double, 1> o{origin};
  return make_grid(1, nn, dx, o, periodic);
}

inline Grid grid_2d(std::int64_t nx, std::int64_t nz, double dx, double ox, double oz) {
  const std::array<std::int64_t, 2> nn{nx, nz};
  const std::array<double, 2> o{ox, oz};
  return make_grid(2, nn, dx, o);
}

inline Grid grid_3d(std::int64_t nx, std::int64_t ny, std::int64_t nz, double dx, const Vec3& o) {
  const std::array<std::int64_t, 3> nn{nx, ny, nz};
  return make_grid(3, nn, dx, o);
}

inline StepperConfig config_with_dt(double dt) {
  StepperConfig c;
  c.dt = dt;
  return c;
}

inline SpinorField random_field(const Grid& g, double dt, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  SpinorField f(g, dt);
  for (int c = 0; c < 4; ++c) {
    for (auto& v : f.component(c)) v = {nd(rng), nd(rng)};
  }
  return f;
}

inline PotentialProfile random_profile(const Grid& g, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(-amplitude, amplitude);
  PotentialProfile p{g, std::vector<double>(g.cell_count())};
  for (auto& v : p.eA0) v = ud(rng);
  return p;
}

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Least-squares slope of log(err) against log(h).
inline double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct OrderStudy {
  std::vector<double> h;
  std::vector<double> err;
  double order = 0.0;
};

/// Leapfrog against the dense propagator on a 32-cell periodic lattice with a
/// random state and potential, for a sequence of halved time steps. Lower
/// components are compared at T, upper components at T - dt/2.
inline OrderStudy dt_order_study(std::uint64_t seed, double t_final = 1.0,
                                 std::vector<int> steps = {25, 50, 100, 200}) {
  const Grid g = grid_1d(32, 0.25, 0.0, true);
  const auto profile = random_profile(g, 2.0, seed ^ 0x9e3779b97f4a7c15ULL);
  const SpinorField psi0 = random_field(g, 1.0, seed);
  const oracle::ExactEvolver1D exact(profile);

  OrderStudy s;
  for (int n : steps) {
    const double dt = t_final / n;
    SpinorField f(g, dt);
    for (int c = 0; c < 4; ++c) {
      std::copy(psi0.component(c).begin(), psi0.component(c).end(), f.component(c).begin());
    }
    stagger_upper(f, &profile, 1.0);
    run(f, Stepper(profile, config_with_dt(dt)), n);

    const SpinorField at_t = exact.evolve(psi0, t_final);
    const SpinorField at_half = exact.evolve(psi0, t_final - 0.5 * dt);
    double e = 0.0;
    for (int c = 0; c < 2; ++c) {
      e = std::max(e, max_abs_diff(f.upper(c), at_half.upper(c)));
      e = std::max(e, max_abs_diff(f.lower(c), at_t.lower(c)));
    }
    s.h.push_back(dt);
    s.err.push_back(e);
  }
  s.order = loglog_slope(s.h, s.err);
  return s;
}

/// Smooth periodic state (modes 0 and 1) and potential (modes 1 and 2) on a
/// box of length 8 starting at x = 0, sampled on n cells.
struct SmoothProblem {
  std::array<std::array<std::complex<double>, 2>, 4> amp{};
  std::array<double, 2> v_amp{}, v_phase{};
  static constexpr double kLength = 8.0;

  explicit SmoothProblem(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    for (auto& comp : amp) {
      for (int m = 0; m < 2; ++m) comp[m] = std::complex<double>(nd(rng), nd(rng)) / double(1 + m);
    }
    for (int m = 0; m < 2; ++m) {
      v_amp[m] = nd(rng) * (m == 0 ? 0.5 : 0.15);
      v_phase[m] = 2.0 * std::numbers::pi * std::uniform_real_distribution<double>()(rng);
    }
  }

  Grid grid(std::int64_t n) const { return grid_1d(n, kLength / double(n), 0.0, true); }

  PotentialProfile profile(const Grid& g) const {
    PotentialProfile p{g, std::vector<double>(g.cell_count())};
    const double k = 2.0 * std::numbers::pi / kLength;
    for (std::int64_t i = 0; i < g.n()[0]; ++i) {
      const double x = g.coord(0, i);
      p.eA0[static_cast<std::size_t>(i)] =
          v_amp[0] * std::cos(k * x + v_phase[0]) + v_amp[1] * std::cos(2.0 * k * x + v_phase[1]);
    }
    return p;
  }

  SpinorField state(const Grid& g, double dt) const {
    SpinorField f(g, dt);
    const double k = 2.0 * std::numbers::pi / kLength;
    const std::complex<double> I{0.0, 1.0};
    for (int c = 0; c < 4; ++c) {
      for (std::int64_t i = 0; i < g.n()[0]; ++i) {
        const double x = g.coord(0, i);
        std::complex<double> v = amp[c][0];
        v += amp[c][1] * std::exp(I * (k * x));
        f.component(c)[static_cast<std::size_t>(i)] = v;
      }
    }
    return f;
  }
};

/// Spatial order by Richardson comparison (L2 over the nodes shared by 16, 32
/// and 64 cell lattices). `leapfrog` selects the stepper (dt = 0.2 dx) instead of
/// the dense propagator; either way lower components are compared at T.
inline double dx_order(const SmoothProblem& prob, bool leapfrog, double t_final = 1.0) {
  std::array<std::vector<std::array<cplx, 2>>, 3> nodes;
  const std::array<std::int64_t, 3> ns{16, 32, 64};
  for (int r = 0; r < 3; ++r) {
    const Grid g = prob.grid(ns[r]);
    const auto profile = prob.profile(g);
    SpinorField out(g, 1.0);
    if (leapfrog) {
      const double dt = 0.2 * g.dx();
      const int n_steps = static_cast<int>(std::lround(t_final / dt));
      out = prob.state(g, dt);
      stagger_upper(out, &profile, 1.0);
      run(out, Stepper(profile, config_with_dt(dt)), n_steps);
    } else {
      out = oracle::ExactEvolver1D(profile).evolve(prob.state(g, 1.0), t_final);
    }
    const std::int64_t stride = ns[r] / 16;
    for (std::int64_t i = 0; i < 16; ++i) {
      const auto idx = static_cast<std::size_t>(i * stride);
      nodes[r].push_back({out.lower(0)[idx], out.lower(1)[idx]});
    }
  }
  auto diff = [&](int a, int b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
      for (int c = 0; c < 2; ++c) m += std::norm(nodes[a][i][c] - nodes[b][i][c]);
    }
    return std::sqrt(m);
  };
  return std::log2(diff(0, 1) / diff(1, 2));
}

}  // namespace kleinfdtd::testing
