#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kleinfdtd/grid.hpp"
#include "kleinfdtd/spinor_field.hpp"
#include "kleinfdtd/stepper.hpp"

namespace kleinfdtd {

/// Deterministic sum: pairwise within fixed 4096-element blocks, then
/// pairwise over the block partials. Independent of thread count.
double fixed_order_sum(std::span<const double> values);

/// Probability density per cell at the lower-component time level.
///
/// The upper pair is stored half a step behind the lower pair, so the density
/// pairs it with its own half-step advance:
///   rho = |Psi3|^2 + |Psi4|^2 + Re(conj(phi) . (phi + dt K(chi)))
/// where phi = (Psi1, Psi2) at n-1/2, chi = (Psi3, Psi4) at n and K is the
/// stepper's coupling stencil. Summed over the grid this is exactly the
/// quadratic form the leapfrog update conserves. Cell values can dip
/// marginally below zero where phi is nearly zero.
std::vector<double> density(const SpinorField& field);

/// |Psi|^2 with all four components taken as co-timed (no staggering
/// correction). Used on freshly sampled, synchronous spinors.
std::vector<double> synchronous_density(const SpinorField& field);

struct Region {
  enum class Kind { whole, box, below, at_or_above };
  Kind kind = Kind::whole;
  int axis = 0;          // half-spaces
  double bound = 0.0;    // half-spaces: x < bound  /  x >= bound
  Vec3 lo{}, hi{};       // box, inclusive on cell centres

  static Region whole_domain() { return {}; }
  static Region half_below(double x, int axis = 0) { return {Kind::below, axis, x, {}, {}}; }
  static Region half_at_or_above(double x, int axis = 0) {
    return {Kind::at_or_above, axis, x, {}, {}};
  }
  static Region box(Vec3 lo, Vec3 hi) { return {Kind::box, 0, 0.0, lo, hi}; }

  bool contains(const Vec3& p) const noexcept;
};

/// Sum of density * dV over the cells whose centres fall inside `region`.
double total_norm(const SpinorField& field, const Region& region = Region::whole_domain());
double region_norm(const Grid& grid, std::span<const double> rho, const Region& region);

/// Density integrated over y and z, one entry per x cell (times dV).
std::vector<double> marginal_x(const Grid& grid, std::span<const double> rho);

/// Density-weighted mean position. Throws InvalidArgument on a zero-norm field.
Vec3 centroid(const SpinorField& field);
Vec3 centroid_of(const Grid& grid, std::span<const double> rho);

/// Standard deviation of the x-marginal restricted to x >= x_min.
double x_width(const Grid& grid, std::span<const double> rho, double x_min);

enum class SlicePlane { xy, xz, yz };

SlicePlane parse_slice_plane(const std::string& s);
std::string to_string(SlicePlane p);

/// 2D cut through a per-cell scalar field. Columns run along the first plane
/// axis, rows along the second (row 0 = lowest coordinate).
struct Slice2D {
  SlicePlane plane = SlicePlane::xz;
  std::int64_t width = 0;
  std::int64_t height = 0;
  double origin_h = 0.0, origin_v = 0.0, dx = 1.0;
  std::vector<double> values;  // row-major, values[row * width + col]

  double at(std::int64_t row, std::int64_t col) const {
    return values[static_cast<std::size_t>(row * width + col)];
  }
};

/// `index` selects the cell along the plane normal (y for xz). A 2D grid
/// already lies in the x-z plane, so its xz slice is the whole grid at index 0.
Slice2D slice2d(const Grid& grid, std::span<const double> values, SlicePlane plane,
                std::int64_t index);

// ---------------------------------------------------------------------------
// Time series and reflection/transmission.

struct ObservationSample {
  std::int64_t step = 0;
  double time = 0.0;
  double norm = 0.0;
  double norm_left = 0.0;   // x <  plane_x
  double norm_right = 0.0;  // x >= plane_x
  double norm_band = 0.0;   // plane_x - hw <= x <= plane_x + extent + hw
  Vec3 centroid{};
};

struct ObservationLog {
  double plane_x = 0.0;
  std::vector<ObservationSample> samples;
};

struct ObserveOptions {
  std::int64_t sample_every = 10;
  double plane_x = 0.0;
  double band_halfwidth = 0.0;
  double band_extent = 0.0;  // width of the potential's transition region
};

ObservationSample observe(const SpinorField& field, const ObserveOptions& opts);

/// Runs the stepper and records one sample at step 0 and every
/// `sample_every` steps. Extra hooks fire before sampling at the same step.
/// n_steps == 0 leaves the field untouched and yields an empty log.
ObservationLog observe_run(SpinorField& field, const Stepper& stepper, std::int64_t n_steps,
                           const ObserveOptions& opts, std::span<const ObserverHook> hooks = {});

inline constexpr double kStationaryTolerance = 1e-4;
inline constexpr std::int64_t kStationaryWindowSteps = 100;
inline constexpr double kBandDrainedFraction = 0.01;

struct RTReport {
  double R = 0.0;
  double T = 0.0;
  double plane_x = 0.0;
  std::int64_t t_measure = 0;  // step index of the measurement sample
  double forward_norm = 1.0;
  bool converged = false;
};

/// R and T from half-space norms after the barrier interaction.
///
/// The search for the measurement sample starts at `search_from_step`, or when
/// negative at the first sample after the band-norm peak whose band norm has
/// dropped to 1% of that peak. The first sample from which both half-space
/// norms stay within 1e-4 for 100 steps is used; otherwise the last sample,
/// flagged unconverged.
RTReport rt_coefficients(const ObservationLog& log, double plane_x, double forward_norm,
                         std::int64_t search_from_step = -1);

struct ForwardFilterResult {
  double forward_norm = 1.0;
  double cut_x = 0.0;
};

/// True when the x-marginal at cut_x sits below 10% of the smaller lobe
/// maximum on either side (or is negligible relative to the forward lobe).
bool lobes_separated(const Grid& grid, std::span<const double> marginal, double cut_x);

/// Zeroes every cell with x < cut_x and renormalises to 1. Returns the
/// pre-filter norm of the kept half-space. Throws InvalidArgument if the
/// lobes are not separated at cut_x.
ForwardFilterResult forward_filter(SpinorField& field, double cut_x);

/// Locates the density minimum between the forward (dominant) lobe and the
/// largest lobe at least `min_separation` to its left.
double find_lobe_cut(const Grid& grid, std::span<const double> marginal, double min_separation);

}  // namespace kleinfdtd
