#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kleinfdtd/grid.hpp"
#include "kleinfdtd/observables.hpp"

namespace kleinfdtd {

/// Header of observables.csv, in column order.
inline constexpr const char* kObservablesHeader =
    "step,time,norm,norm_left,norm_right,centroid_x,centroid_y,centroid_z,R_running,T_running";

/// Scientific notation with 17 significant digits (lossless for doubles).
std::string format_sci(double v);

void write_observables_csv(const ObservationLog& log, const std::filesystem::path& path);

/// Raw little-endian float64 values plus a JSON sidecar next to it
/// (same stem, .json) with dims, n, dx, origin, step and time.
void write_snapshot(const Grid& grid, std::span<const double> values, std::int64_t step,
                    double time, const std::filesystem::path& path);

/// 8-bit binary graymap (P5). The top image row is the highest slice row,
/// pixel = round(255 * v / max) with negatives clamped to 0. A sidecar
/// `<path>.txt` records the normalisation constant (max=0 for an all-zero
/// slice). Returns the constant.
double write_frame(const Slice2D& slice, const std::filesystem::path& path);

/// Ordered key=value pairs, one per line.
void write_key_values(const std::vector<std::pair<std::string, std::string>>& kv,
                      const std::filesystem::path& path);

}  // namespace kleinfdtd
