#include "kleinfdtd/output.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <json.hpp>

#include "kleinfdtd/errors.hpp"

namespace kleinfdtd {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_observables_csv(const ObservationLog& log, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << kObservablesHeader << '\n';
  for (const auto& s : log.samples) {
    const double denom = s.norm != 0.0 ? s.norm : 1.0;
    out << s.step << ',' << format_sci(s.time) << ',' << format_sci(s.norm) << ','
        << format_sci(s.norm_left) << ',' << format_sci(s.norm_right) << ','
        << format_sci(s.centroid[0]) << ',' << format_sci(s.centroid[1]) << ','
        << format_sci(s.centroid[2]) << ',' << format_sci(s.norm_left / denom) << ','
        << format_sci(s.norm_right / denom) << '\n';
  }
  finish(out, path);
}

void write_snapshot(const Grid& grid, std::span<const double> values, std::int64_t step,
                    double time, const std::filesystem::path& path) {
  {
    auto out = open_out(path);
    for (double v : values) {
      auto bits = std::bit_cast<std::uint64_t>(v);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
      char bytes[8];
      std::memcpy(bytes, &bits, 8);
      out.write(bytes, 8);
    }
    finish(out, path);
  }
  nlohmann::ordered_json meta;
  meta["dims"] = grid.dims();
  meta["n"] = {grid.n()[0], grid.n()[1], grid.n()[2]};
  meta["dx"] = grid.dx();
  meta["origin"] = {grid.origin()[0], grid.origin()[1], grid.origin()[2]};
  meta["step"] = step;
  meta["time"] = time;
  meta["dtype"] = "float64-le";
  meta["layout"] = "x fastest, then y, then z";
  auto sidecar = path;
  sidecar.replace_extension(".json");
  auto out = open_out(sidecar);
  out << meta.dump(2) << '\n';
  finish(out, sidecar);
}

double write_frame(const Slice2D& slice, const std::filesystem::path& path) {
  double max_v = 0.0;
  for (double v : slice.values) {
    if (!std::isfinite(v)) throw InvalidArgument("frame slice contains non-finite values");
    max_v = std::max(max_v, v);
  }
  std::vector<unsigned char> pixels(slice.values.size(), 0);
  if (max_v > 0.0) {
    for (std::int64_t r = 0; r < slice.height; ++r) {
      const std::int64_t src_row = slice.height - 1 - r;
      for (std::int64_t c = 0; c < slice.width; ++c) {
        const double v = std::max(slice.at(src_row, c), 0.0);
        pixels[static_cast<std::size_t>(r * slice.width + c)] =
            static_cast<unsigned char>(std::lround(255.0 * v / max_v));
      }
    }
  }
  {
    auto out = open_out(path);
    out << "P5\n" << slice.width << ' ' << slice.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    finish(out, path);
  }
  auto sidecar = path;
  sidecar += ".txt";
  auto out = open_out(sidecar);
  out << "max=" << format_sci(max_v) << '\n';
  finish(out, sidecar);
  return max_v;
}

void write_key_values(const std::vector<std::pair<std::string, std::string>>& kv,
                      const std::filesystem::path& path) {
  auto out = open_out(path);
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
  finish(out, path);
}

}  // namespace kleinfdtd
