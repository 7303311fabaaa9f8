#include "kleinfdtd/wavepacket.hpp"

#include <cmath>

#include "kleinfdtd/errors.hpp"
#include "kleinfdtd/observables.hpp"
#include "kleinfdtd/stencil.hpp"

namespace kleinfdtd {

Spin parse_spin(const std::string& s) {
  if (s == "up") return Spin::up;
  if (s == "down") return Spin::down;
  throw InvalidArgument("spin must be 'up' or 'down', got '" + s + "'");
}

std::string to_string(Spin s) { return s == Spin::up ? "up" : "down"; }

double energy_of(const Vec3& p, double mass) {
  return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + mass * mass);
}

std::vector<std::string> packet_warnings(const Grid& grid, const PacketSpec& spec) {
  std::vector<std::string> out;
  static constexpr const char* kAxis = "xyz";
  for (int axis = 0; axis < 3; ++axis) {
    if (!grid.active(axis)) continue;
    const double lo = spec.center[axis] - grid.lower(axis);
    const double hi = grid.upper(axis) - spec.center[axis];
    if (std::min(lo, hi) < 4.0 * spec.x0) {
      out.push_back(std::string("packet centre is within 4*x0 of the ") + kAxis[axis] +
                    " faces of the domain");
    }
  }
  return out;
}

SpinorField sample_packet(const Grid& grid, const PacketSpec& spec, double dt) {
  if (!(spec.x0 > 0.0)) throw InvalidArgument("packet width x0 must be positive");
  if (spec.x0 < 2.0 * grid.dx()) {
    throw InvalidArgument("x0 unresolvable: x0=" + std::to_string(spec.x0) + " < 2*dx=" +
                          std::to_string(2.0 * grid.dx()));
  }
  if (!(spec.mass > 0.0)) throw InvalidArgument("mass must be positive");

  SpinorField field(grid, dt);
  const double m = spec.mass;
  const double e = energy_of(spec.p, m);
  const double pref = std::sqrt((e + m) / (2.0 * e));
  const double inv = 1.0 / (e + m);
  const cplx p_plus{spec.p[0], spec.p[1]};
  const cplx p_minus{spec.p[0], -spec.p[1]};
  std::array<cplx, 4> spinor;
  if (spec.spin == Spin::up) {
    spinor = {1.0, 0.0, spec.p[2] * inv, p_plus * inv};
  } else {
    spinor = {0.0, 1.0, p_minus * inv, -spec.p[2] * inv};
  }
  for (auto& s : spinor) s *= pref;

  const double w = 1.0 / (4.0 * spec.x0 * spec.x0);
  const auto& n = grid.n();
  for (std::int64_t k = 0; k < n[2]; ++k) {
    for (std::int64_t j = 0; j < n[1]; ++j) {
      for (std::int64_t i = 0; i < n[0]; ++i) {
        const Index3 ix{i, j, k};
        double r2 = 0.0, phase = 0.0;
        for (int axis = 0; axis < 3; ++axis) {
          if (!grid.active(axis)) continue;
          const double r = grid.coord(axis, ix[axis]) - spec.center[axis];
          r2 += r * r;
          phase += spec.p[axis] * r;
        }
        const cplx g = std::exp(cplx{-w * r2, phase});
        const std::size_t idx = grid.linear_index(i, j, k);
        for (int c = 0; c < 4; ++c) field.component(c)[idx] = spinor[c] * g;
      }
    }
  }
  const auto rho = synchronous_density(field);
  const double norm = fixed_order_sum(rho) * grid.cell_volume();
  field.scale(1.0 / std::sqrt(norm));
  return field;
}

namespace {

// The stepper pins the outermost cells to zero; start from the same state.
void zero_outer_cells(SpinorField& field) {
  const Grid& g = field.grid();
  const auto& n = g.n();
  for (std::int64_t k = 0; k < n[2]; ++k) {
    for (std::int64_t j = 0; j < n[1]; ++j) {
      for (std::int64_t i = 0; i < n[0]; ++i) {
        const std::int64_t idx3[3] = {i, j, k};
        bool edge = false;
        for (int a = 0; a < 3; ++a) {
          if (g.active(a) && (idx3[a] == 0 || idx3[a] == n[a] - 1)) edge = true;
        }
        if (!edge) continue;
        const std::size_t idx = g.linear_index(i, j, k);
        for (int c = 0; c < 4; ++c) field.component(c)[idx] = 0.0;
      }
    }
  }
}

}  // namespace

void stagger_upper(SpinorField& field, const PotentialProfile* profile, double mass) {
  const Grid& g = field.grid();
  if (profile && !(profile->grid == g)) throw InvalidArgument("potential grid mismatch");
  const double half = 0.5 * field.dt();
  auto u0 = field.upper(0), u1 = field.upper(1);
  std::span<const cplx> l0 = field.lower(0), l1 = field.lower(1);
  stencil::for_each_coupling(g, l0, l1, [&](std::size_t idx, cplx k1, cplx k2) {
    const double a = (profile ? profile->eA0[idx] : 0.0) + mass;
    const cplx back = std::exp(cplx{0.0, a * half});
    u0[idx] = back * u0[idx] - half * k1;
    u1[idx] = back * u1[idx] - half * k2;
  });
}

SpinorField init_packet(const Grid& grid, const PacketSpec& spec, double dt,
                        const PotentialProfile* profile) {
  SpinorField field = sample_packet(grid, spec, dt);
  stagger_upper(field, profile, spec.mass);
  if (!grid.periodic()) zero_outer_cells(field);
  const double norm = total_norm(field);
  field.scale(1.0 / std::sqrt(norm));
  return field;
}

double forward_fraction(const SpinorField& field, double plane_x) {
  return total_norm(field, Region::half_at_or_above(plane_x));
}

}  // namespace kleinfdtd
