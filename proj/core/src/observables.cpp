#include "kleinfdtd/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kleinfdtd/errors.hpp"
#include "kleinfdtd/stencil.hpp"

namespace kleinfdtd {

namespace {

constexpr std::size_t kBlock = 4096;

double pairwise(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise(v, half) + pairwise(v + half, n - half);
}

}  // namespace

double fixed_order_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= kBlock) return pairwise(values.data(), n);
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::size_t start = static_cast<std::size_t>(b) * kBlock;
    partial[static_cast<std::size_t>(b)] = pairwise(values.data() + start, std::min(kBlock, n - start));
  }
  return pairwise(partial.data(), blocks);
}

std::vector<double> density(const SpinorField& field) {
  std::vector<double> rho(field.cell_count());
  const double dt = field.dt();
  auto u0 = field.upper(0), u1 = field.upper(1);
  auto l0 = field.lower(0), l1 = field.lower(1);
  stencil::for_each_coupling(field.grid(), l0, l1, [&](std::size_t i, cplx k1, cplx k2) {
    const double lower = std::norm(l0[i]) + std::norm(l1[i]);
    const double upper = (std::conj(u0[i]) * (u0[i] + dt * k1)).real() +
                         (std::conj(u1[i]) * (u1[i] + dt * k2)).real();
    rho[i] = lower + upper;
  });
  return rho;
}

std::vector<double> synchronous_density(const SpinorField& field) {
  std::vector<double> rho(field.cell_count(), 0.0);
  for (int c = 0; c < 4; ++c) {
    auto comp = field.component(c);
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] += std::norm(comp[i]);
  }
  return rho;
}

bool Region::contains(const Vec3& p) const noexcept {
  switch (kind) {
    case Kind::whole:
      return true;
    case Kind::below:
      return p[axis] < bound;
    case Kind::at_or_above:
      return p[axis] >= bound;
    case Kind::box:
      for (int a = 0; a < 3; ++a) {
        if (p[a] < lo[a] || p[a] > hi[a]) return false;
      }
      return true;
  }
  return false;
}

double region_norm(const Grid& grid, std::span<const double> rho, const Region& region) {
  const double dv = grid.cell_volume();
  if (region.kind == Region::Kind::whole) return fixed_order_sum(rho) * dv;
  std::vector<double> masked(rho.size(), 0.0);
  const auto& n = grid.n();
  for (std::int64_t k = 0; k < n[2]; ++k) {
    for (std::int64_t j = 0; j < n[1]; ++j) {
      for (std::int64_t i = 0; i < n[0]; ++i) {
        const Vec3 p{grid.coord(0, i), grid.coord(1, j), grid.coord(2, k)};
        const std::size_t idx = grid.linear_index(i, j, k);
        if (region.contains(p)) masked[idx] = rho[idx];
      }
    }
  }
  return fixed_order_sum(masked) * dv;
}

double total_norm(const SpinorField& field, const Region& region) {
  const auto rho = density(field);
  return region_norm(field.grid(), rho, region);
}

std::vector<double> marginal_x(const Grid& grid, std::span<const double> rho) {
  const auto& n = grid.n();
  const double dv = grid.cell_volume();
  std::vector<double> out(static_cast<std::size_t>(n[0]), 0.0);
  std::vector<double> column(static_cast<std::size_t>(n[1] * n[2]));
  for (std::int64_t i = 0; i < n[0]; ++i) {
    for (std::int64_t k = 0; k < n[2]; ++k) {
      for (std::int64_t j = 0; j < n[1]; ++j) {
        column[static_cast<std::size_t>(j + n[1] * k)] = rho[grid.linear_index(i, j, k)];
      }
    }
    out[static_cast<std::size_t>(i)] = fixed_order_sum(column) * dv;
  }
  return out;
}

Vec3 centroid_of(const Grid& grid, std::span<const double> rho) {
  const double total = fixed_order_sum(rho);
  if (!(std::abs(total) > 0.0)) throw InvalidArgument("centroid of a zero-norm field");
  Vec3 c{};
  std::vector<double> weighted(rho.size());
  for (int axis = 0; axis < 3; ++axis) {
    if (!grid.active(axis)) {
      c[axis] = grid.origin()[axis];
      continue;
    }
    const auto& n = grid.n();
    std::size_t idx = 0;
    for (std::int64_t k = 0; k < n[2]; ++k) {
      for (std::int64_t j = 0; j < n[1]; ++j) {
        for (std::int64_t i = 0; i < n[0]; ++i, ++idx) {
          const std::int64_t along = axis == 0 ? i : (axis == 1 ? j : k);
          weighted[idx] = rho[idx] * grid.coord(axis, along);
        }
      }
    }
    c[axis] = fixed_order_sum(weighted) / total;
  }
  return c;
}

Vec3 centroid(const SpinorField& field) {
  const auto rho = density(field);
  return centroid_of(field.grid(), rho);
}

double x_width(const Grid& grid, std::span<const double> rho, double x_min) {
  const auto m = marginal_x(grid, rho);
  double w = 0.0, wx = 0.0, wxx = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double x = grid.coord(0, static_cast<std::int64_t>(i));
    if (x < x_min) continue;
    const double v = std::max(m[i], 0.0);
    w += v;
    wx += v * x;
    wxx += v * x * x;
  }
  if (!(w > 0.0)) return 0.0;
  const double mean = wx / w;
  return std::sqrt(std::max(wxx / w - mean * mean, 0.0));
}

SlicePlane parse_slice_plane(const std::string& s) {
  if (s == "xy") return SlicePlane::xy;
  if (s == "xz") return SlicePlane::xz;
  if (s == "yz") return SlicePlane::yz;
  throw InvalidArgument("unknown slice plane '" + s + "'");
}

std::string to_string(SlicePlane p) {
  switch (p) {
    case SlicePlane::xy:
      return "xy";
    case SlicePlane::xz:
      return "xz";
    case SlicePlane::yz:
      return "yz";
  }
  return "?";
}

Slice2D slice2d(const Grid& grid, std::span<const double> values, SlicePlane plane,
                std::int64_t index) {
  int ha = 0, va = 2, na = 1;
  switch (plane) {
    case SlicePlane::xy:
      ha = 0, va = 1, na = 2;
      break;
    case SlicePlane::xz:
      ha = 0, va = 2, na = 1;
      break;
    case SlicePlane::yz:
      ha = 1, va = 2, na = 0;
      break;
  }
  const auto& n = grid.n();
  if (index < 0 || index >= n[na]) {
    throw GridError(GridErrorKind::index_out_of_bounds,
                    "slice index " + std::to_string(index) + " out of bounds (" +
                        std::to_string(n[na]) + " cells along the normal)");
  }
  if (values.size() != grid.cell_count()) throw InvalidArgument("slice source size mismatch");
  Slice2D s;
  s.plane = plane;
  s.width = n[ha];
  s.height = n[va];
  s.origin_h = grid.origin()[ha];
  s.origin_v = grid.origin()[va];
  s.dx = grid.dx();
  s.values.resize(static_cast<std::size_t>(s.width * s.height));
  for (std::int64_t r = 0; r < s.height; ++r) {
    for (std::int64_t c = 0; c < s.width; ++c) {
      Index3 idx{};
      idx[ha] = c;
      idx[va] = r;
      idx[na] = index;
      s.values[static_cast<std::size_t>(r * s.width + c)] =
          values[grid.linear_index(idx[0], idx[1], idx[2])];
    }
  }
  return s;
}

ObservationSample observe(const SpinorField& field, const ObserveOptions& opts) {
  const Grid& g = field.grid();
  const auto rho = density(field);
  const auto marginal = marginal_x(g, rho);
  ObservationSample s;
  s.step = field.step_index();
  s.time = field.time_lower();
  s.norm = region_norm(g, rho, Region::whole_domain());
  const std::size_t nx = marginal.size();
  std::vector<double> left(nx, 0.0), right(nx, 0.0), band(nx, 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = g.coord(0, static_cast<std::int64_t>(i));
    (x < opts.plane_x ? left : right)[i] = marginal[i];
    if (opts.band_halfwidth > 0.0 && x >= opts.plane_x - opts.band_halfwidth &&
        x <= opts.plane_x + opts.band_extent + opts.band_halfwidth) {
      band[i] = marginal[i];
    }
  }
  s.norm_left = fixed_order_sum(left);
  s.norm_right = fixed_order_sum(right);
  s.norm_band = fixed_order_sum(band);
  s.centroid = std::abs(s.norm) > 0.0 ? centroid_of(g, rho) : g.origin();
  return s;
}

ObservationLog observe_run(SpinorField& field, const Stepper& stepper, std::int64_t n_steps,
                           const ObserveOptions& opts, std::span<const ObserverHook> hooks) {
  ObservationLog log;
  log.plane_x = opts.plane_x;
  if (n_steps == 0) return log;
  if (opts.sample_every <= 0) throw InvalidArgument("sample_every must be positive");
  std::vector<ObserverHook> all(hooks.begin(), hooks.end());
  all.push_back({opts.sample_every, [&](SpinorField& f) { log.samples.push_back(observe(f, opts)); }});
  run(field, stepper, n_steps, all);
  return log;
}

RTReport rt_coefficients(const ObservationLog& log, double plane_x, double forward_norm,
                         std::int64_t search_from_step) {
  if (!(forward_norm > 0.0)) throw InvalidArgument("forward_norm must be positive");
  if (log.samples.empty()) throw InvalidArgument("empty observation log");
  const auto& s = log.samples;

  if (search_from_step < 0) {
    std::size_t peak = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i].norm_band > s[peak].norm_band) peak = i;
    }
    search_from_step = s.back().step + 1;
    for (std::size_t i = peak; i < s.size(); ++i) {
      if (s[i].norm_band <= kBandDrainedFraction * s[peak].norm_band) {
        search_from_step = s[i].step;
        break;
      }
    }
  }

  RTReport r;
  r.plane_x = plane_x;
  r.forward_norm = forward_norm;
  std::size_t chosen = s.size() - 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].step < search_from_step) continue;
    bool window_complete = false;
    bool stable = true;
    for (std::size_t j = i + 1; j < s.size() && s[j].step <= s[i].step + kStationaryWindowSteps; ++j) {
      if (std::abs(s[j].norm_left - s[i].norm_left) >= kStationaryTolerance ||
          std::abs(s[j].norm_right - s[i].norm_right) >= kStationaryTolerance) {
        stable = false;
        break;
      }
      if (s[j].step == s[i].step + kStationaryWindowSteps) window_complete = true;
    }
    if (stable && window_complete) {
      chosen = i;
      r.converged = true;
      break;
    }
  }
  r.t_measure = s[chosen].step;
  r.R = s[chosen].norm_left / forward_norm;
  r.T = s[chosen].norm_right / forward_norm;
  return r;
}

bool lobes_separated(const Grid& grid, std::span<const double> marginal, double cut_x) {
  const auto nx = static_cast<std::int64_t>(marginal.size());
  auto cut_index = static_cast<std::int64_t>(std::ceil((cut_x - grid.lower(0)) / grid.dx() - 1e-9));
  cut_index = std::clamp<std::int64_t>(cut_index, 0, nx);
  double max_left = 0.0, max_right = 0.0;
  for (std::int64_t i = 0; i < cut_index; ++i) max_left = std::max(max_left, marginal[static_cast<std::size_t>(i)]);
  for (std::int64_t i = cut_index; i < nx; ++i) max_right = std::max(max_right, marginal[static_cast<std::size_t>(i)]);
  // Density at the cut: the two cells straddling it.
  double at_cut = 0.0;
  if (cut_index > 0) at_cut = std::max(at_cut, marginal[static_cast<std::size_t>(cut_index - 1)]);
  if (cut_index < nx) at_cut = std::max(at_cut, marginal[static_cast<std::size_t>(cut_index)]);
  if (at_cut <= 1e-4 * max_right) return true;
  return at_cut <= 0.1 * std::min(max_left, max_right);
}

ForwardFilterResult forward_filter(SpinorField& field, double cut_x) {
  const Grid& g = field.grid();
  const auto rho = density(field);
  const auto m = marginal_x(g, rho);
  if (!lobes_separated(g, m, cut_x)) {
    throw InvalidArgument("forward filter: density lobes are not separated at x=" +
                          std::to_string(cut_x));
  }
  ForwardFilterResult res;
  res.cut_x = cut_x;
  res.forward_norm = region_norm(g, rho, Region::half_at_or_above(cut_x));
  if (!(res.forward_norm > 0.0)) throw InvalidArgument("forward filter: nothing beyond the cut");

  const auto& n = g.n();
  for (std::int64_t i = 0; i < n[0]; ++i) {
    if (g.coord(0, i) >= cut_x) continue;
    for (std::int64_t k = 0; k < n[2]; ++k) {
      for (std::int64_t j = 0; j < n[1]; ++j) {
        const std::size_t idx = g.linear_index(i, j, k);
        for (int c = 0; c < 4; ++c) field.component(c)[idx] = 0.0;
      }
    }
  }
  const double kept = total_norm(field);
  field.scale(1.0 / std::sqrt(kept));
  return res;
}

double find_lobe_cut(const Grid& grid, std::span<const double> marginal, double min_separation) {
  const auto nx = static_cast<std::int64_t>(marginal.size());
  std::int64_t forward = 0;
  for (std::int64_t i = 1; i < nx; ++i) {
    if (marginal[static_cast<std::size_t>(i)] > marginal[static_cast<std::size_t>(forward)]) forward = i;
  }
  const auto sep_cells = static_cast<std::int64_t>(std::ceil(min_separation / grid.dx()));
  const std::int64_t left_end = forward - sep_cells;
  if (left_end <= 0) return grid.lower(0);
  std::int64_t backward = 0;
  for (std::int64_t i = 1; i <= left_end; ++i) {
    if (marginal[static_cast<std::size_t>(i)] > marginal[static_cast<std::size_t>(backward)]) backward = i;
  }
  std::int64_t best = backward;
  for (std::int64_t i = backward; i <= forward; ++i) {
    if (marginal[static_cast<std::size_t>(i)] < marginal[static_cast<std::size_t>(best)]) best = i;
  }
  return grid.coord(0, best);
}

}  // namespace kleinfdtd
