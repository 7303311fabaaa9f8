#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kleinfdtd/grid.hpp"
#include "kleinfdtd/spinor_field.hpp"

namespace kleinfdtd::stencil {

/// Visits every cell and hands the sink the value of the spatial coupling
/// operator K = -(sigma . grad) applied to the two-component field (in1, in2),
/// discretised with second-order centred differences on co-located cells.
///
/// Outside the domain the field is periodic-wrapped when the grid is periodic
/// and zero otherwise. Rows are independent; the sink is invoked once per cell
/// as sink(linear_index, K1, K2).
template <class Sink>
void for_each_coupling(const Grid& g, std::span<const cplx> in1, std::span<const cplx> in2,
                       Sink&& sink);

/// out = K(in); out must not alias in.
void apply_coupling(const Grid& g, std::span<const cplx> in1, std::span<const cplx> in2,
                    std::span<cplx> out1, std::span<cplx> out2);

// ---------------------------------------------------------------------------

namespace detail {

struct RowNeighbours {
  const cplx* ym1;
  const cplx* yp1;
  const cplx* zm1;
  const cplx* zp1;
};

template <bool HasY, bool HasZ, class Sink>
inline void coupling_cell(std::int64_t i, double h, std::size_t base, cplx a_m, cplx a_p, cplx b_m,
                          cplx b_p, const RowNeighbours& na, const RowNeighbours& nb, Sink& sink) {
  cplx k1 = -(b_p - b_m) * h;
  cplx k2 = -(a_p - a_m) * h;
  if constexpr (HasY) {
    const cplx dya = (na.yp1[i] - na.ym1[i]) * h;
    const cplx dyb = (nb.yp1[i] - nb.ym1[i]) * h;
    k1 += cplx{-dyb.imag(), dyb.real()};
    k2 -= cplx{-dya.imag(), dya.real()};
  }
  if constexpr (HasZ) {
    k1 -= (na.zp1[i] - na.zm1[i]) * h;
    k2 += (nb.zp1[i] - nb.zm1[i]) * h;
  }
  sink(base + static_cast<std::size_t>(i), k1, k2);
}

template <bool HasY, bool HasZ, class Sink>
inline void coupling_row(std::int64_t nx, bool periodic, double h, std::size_t base,
                         const cplx* a, const cplx* b, const RowNeighbours& na,
                         const RowNeighbours& nb, Sink& sink) {
  const cplx zero{0.0, 0.0};
  if (nx == 1) {
    const cplx am = periodic ? a[0] : zero, bm = periodic ? b[0] : zero;
    coupling_cell<HasY, HasZ>(0, h, base, am, am, bm, bm, na, nb, sink);
    return;
  }
  coupling_cell<HasY, HasZ>(0, h, base, periodic ? a[nx - 1] : zero, a[1],
                            periodic ? b[nx - 1] : zero, b[1], na, nb, sink);
  for (std::int64_t i = 1; i < nx - 1; ++i) {
    coupling_cell<HasY, HasZ>(i, h, base, a[i - 1], a[i + 1], b[i - 1], b[i + 1], na, nb, sink);
  }
  coupling_cell<HasY, HasZ>(nx - 1, h, base, a[nx - 2], periodic ? a[0] : zero, b[nx - 2],
                            periodic ? b[0] : zero, na, nb, sink);
}

}  // namespace detail

template <class Sink>
void for_each_coupling(const Grid& g, std::span<const cplx> in1, std::span<const cplx> in2,
                       Sink&& sink) {
  const auto& n = g.n();
  const std::int64_t nx = n[0], ny = n[1], nz = n[2];
  const bool periodic = g.periodic();
  const double h = 0.5 / g.dx();
  const bool has_y = g.active(1);
  const bool has_z = g.active(2);
  const std::vector<cplx> zero_row(static_cast<std::size_t>(nx), cplx{0.0, 0.0});
  const cplx* zr = zero_row.data();

  auto row_ptr = [&](std::span<const cplx> f, std::int64_t j, std::int64_t k) -> const cplx* {
    if (periodic) {
      j = (j + ny) % ny;
      k = (k + nz) % nz;
    } else if (j < 0 || j >= ny || k < 0 || k >= nz) {
      return zr;
    }
    return f.data() + g.linear_index(0, j, k);
  };

  const std::int64_t rows = ny * nz;
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < rows; ++r) {
    const std::int64_t j = r % ny;
    const std::int64_t k = r / ny;
    const std::size_t base = g.linear_index(0, j, k);
    detail::RowNeighbours na{row_ptr(in1, j - 1, k), row_ptr(in1, j + 1, k),
                             row_ptr(in1, j, k - 1), row_ptr(in1, j, k + 1)};
    detail::RowNeighbours nb{row_ptr(in2, j - 1, k), row_ptr(in2, j + 1, k),
                             row_ptr(in2, j, k - 1), row_ptr(in2, j, k + 1)};
    const cplx* a = in1.data() + base;
    const cplx* b = in2.data() + base;
    if (has_y && has_z) {
      detail::coupling_row<true, true>(nx, periodic, h, base, a, b, na, nb, sink);
    } else if (has_z) {
      detail::coupling_row<false, true>(nx, periodic, h, base, a, b, na, nb, sink);
    } else if (has_y) {
      detail::coupling_row<true, false>(nx, periodic, h, base, a, b, na, nb, sink);
    } else {
      detail::coupling_row<false, false>(nx, periodic, h, base, a, b, na, nb, sink);
    }
  }
}

}  // namespace kleinfdtd::stencil
