#include "kleinfdtd/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "kleinfdtd/errors.hpp"

namespace kleinfdtd {

std::string to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::none:
      return "none";
    case PotentialKind::step:
      return "step";
    case PotentialKind::ramp:
      return "ramp";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double to_double(std::string_view s, int line) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ConfigError(line, "expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t to_int(std::string_view s, int line) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(line, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::string_view single(std::string_view value, int line) {
  const auto parts = split_ws(value);
  if (parts.size() != 1) throw ConfigError(line, "expected a single value, got '" + std::string(value) + "'");
  return parts[0];
}

Vec3 to_vec3(std::string_view value, int line) {
  const auto parts = split_ws(value);
  if (parts.size() != 3) throw ConfigError(line, "expected three numbers");
  return {to_double(parts[0], line), to_double(parts[1], line), to_double(parts[2], line)};
}

bool to_on_off(std::string_view v, int line) {
  if (v == "on" || v == "true") return true;
  if (v == "off" || v == "false") return false;
  throw ConfigError(line, "expected on|off, got '" + std::string(v) + "'");
}

std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

using Setter = std::function<void(ScenarioConfig&, std::string_view, int)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"grid.dims", [](auto& c, auto v, int l) { c.grid.dims = static_cast<int>(to_int(single(v, l), l)); }},
      {"grid.n",
       [](auto& c, auto v, int l) {
         c.grid.n.clear();
         for (auto p : split_ws(v)) c.grid.n.push_back(to_int(p, l));
       }},
      {"grid.dx", [](auto& c, auto v, int l) { c.grid.dx = to_double(single(v, l), l); }},
      {"grid.origin",
       [](auto& c, auto v, int l) {
         c.grid.origin.clear();
         for (auto p : split_ws(v)) c.grid.origin.push_back(to_double(p, l));
       }},
      {"units.electron_mass_mev", [](auto& c, auto v, int l) { c.units.electron_mass_mev = to_double(single(v, l), l); }},
      {"units.reduced_compton_m", [](auto& c, auto v, int l) { c.units.reduced_compton_m = to_double(single(v, l), l); }},
      {"packet.momentum_mev_per_c", [](auto& c, auto v, int l) { c.packet.momentum_mev_per_c = to_vec3(v, l); }},
      {"packet.x0_m", [](auto& c, auto v, int l) { c.packet.x0_m = to_double(single(v, l), l); }},
      {"packet.center", [](auto& c, auto v, int l) { c.packet.center = to_vec3(v, l); }},
      {"packet.spin",
       [](auto& c, auto v, int l) {
         const auto s = single(v, l);
         if (s == "up") {
           c.packet.spin = Spin::up;
         } else if (s == "down") {
           c.packet.spin = Spin::down;
         } else {
           throw ConfigError(l, "packet.spin must be up|down");
         }
       }},
      {"potential.kind",
       [](auto& c, auto v, int l) {
         const auto s = single(v, l);
         if (s == "none") {
           c.potential.kind = PotentialKind::none;
         } else if (s == "step") {
           c.potential.kind = PotentialKind::step;
         } else if (s == "ramp") {
           c.potential.kind = PotentialKind::ramp;
         } else {
           throw ConfigError(l, "potential.kind must be none|step|ramp");
         }
       }},
      {"potential.height_volts", [](auto& c, auto v, int l) { c.potential.height_volts = to_double(single(v, l), l); }},
      {"potential.edge", [](auto& c, auto v, int l) { c.potential.edge = to_double(single(v, l), l); }},
      {"potential.ramp_width_m", [](auto& c, auto v, int l) { c.potential.ramp_width_m = to_double(single(v, l), l); }},
      {"potential.field_volts_per_m", [](auto& c, auto v, int l) { c.potential.field_volts_per_m = to_double(single(v, l), l); }},
      {"stepper.courant_factor", [](auto& c, auto v, int l) { c.stepper.courant_factor = to_double(single(v, l), l); }},
      {"stepper.boundary",
       [](auto& c, auto v, int l) {
         const auto s = single(v, l);
         if (s == "reflecting") {
           c.stepper.boundary = BoundaryKind::reflecting;
         } else if (s == "damping_layer") {
           c.stepper.boundary = BoundaryKind::damping_layer;
         } else {
           throw ConfigError(l, "stepper.boundary must be reflecting|damping_layer");
         }
       }},
      {"stepper.damping_width", [](auto& c, auto v, int l) { c.stepper.damping_width = static_cast<int>(to_int(single(v, l), l)); }},
      {"stepper.damping_strength", [](auto& c, auto v, int l) { c.stepper.damping_strength = to_double(single(v, l), l); }},
      {"stepper.n_steps", [](auto& c, auto v, int l) { c.stepper.n_steps = to_int(single(v, l), l); }},
      {"stepper.diagonal",
       [](auto& c, auto v, int l) {
         const auto s = single(v, l);
         if (s == "time_centered") {
           c.stepper.diagonal = DiagonalScheme::time_centered;
         } else if (s == "exact_phase") {
           c.stepper.diagonal = DiagonalScheme::exact_phase;
         } else {
           throw ConfigError(l, "stepper.diagonal must be time_centered|exact_phase");
         }
       }},
      {"observe.sample_every", [](auto& c, auto v, int l) { c.observe.sample_every = to_int(single(v, l), l); }},
      {"observe.plane_x", [](auto& c, auto v, int l) { c.observe.plane_x = to_double(single(v, l), l); }},
      {"observe.forward_filter", [](auto& c, auto v, int l) { c.observe.forward_filter = to_on_off(single(v, l), l); }},
      {"observe.filter_step", [](auto& c, auto v, int l) { c.observe.filter_step = to_int(single(v, l), l); }},
      {"observe.cut_x", [](auto& c, auto v, int l) { c.observe.cut_x = to_double(single(v, l), l); }},
      {"observe.snapshot_every", [](auto& c, auto v, int l) { c.observe.snapshot_every = to_int(single(v, l), l); }},
      {"observe.slice_plane",
       [](auto& c, auto v, int l) {
         try {
           c.observe.slice_plane = parse_slice_plane(std::string(single(v, l)));
         } catch (const InvalidArgument& e) {
           throw ConfigError(l, e.what());
         }
       }},
      {"observe.slice_index", [](auto& c, auto v, int l) { c.observe.slice_index = to_int(single(v, l), l); }},
  };
  return table;
}

void validate(const ScenarioConfig& c, const std::map<std::string, int, std::less<>>& lines) {
  auto line_of = [&](std::string_view key) {
    auto it = lines.find(key);
    return it == lines.end() ? 0 : it->second;
  };

  for (const char* required : {"grid.n", "grid.dx", "packet.x0_m"}) {
    if (!lines.contains(required)) throw ConfigError(0, std::string("missing required key ") + required);
  }
  if (c.units.electron_mass_mev <= 0.0) throw ConfigError(line_of("units.electron_mass_mev"), "electron mass must be positive");
  if (c.units.reduced_compton_m <= 0.0) throw ConfigError(line_of("units.reduced_compton_m"), "length unit must be positive");

  Grid grid;
  try {
    grid = c.make_grid();
  } catch (const GridError& e) {
    throw ConfigError(line_of("grid.n") ? line_of("grid.n") : line_of("grid.dims"), e.what());
  }

  const auto units = c.units_system();
  const double x0 = units.to_internal(c.packet.x0_m, QuantityKind::length_m);
  if (!(x0 > 0.0)) throw ConfigError(line_of("packet.x0_m"), "packet.x0_m must be positive");
  if (x0 < 2.0 * grid.dx()) {
    throw ConfigError(line_of("packet.x0_m"), "x0 unresolvable: x0 = " + fmt_double(x0) +
                                                  " internal < 2*dx = " + fmt_double(2.0 * grid.dx()));
  }
  for (int axis = 0; axis < 3; ++axis) {
    if (!grid.active(axis)) continue;
    if (c.packet.center[axis] < grid.lower(axis) || c.packet.center[axis] > grid.upper(axis)) {
      throw ConfigError(line_of("packet.center"), "packet centre lies outside the grid");
    }
  }

  try {
    (void)c.potential_profile(grid);
  } catch (const InvalidArgument& e) {
    const int l = line_of("potential.edge") ? line_of("potential.edge") : line_of("potential.kind");
    throw ConfigError(l, e.what());
  }

  if (!(c.stepper.courant_factor > 0.0 && c.stepper.courant_factor < 1.0)) {
    throw ConfigError(line_of("stepper.courant_factor"), "courant_factor must lie in (0, 1)");
  }
  if (c.stepper.n_steps < 0) throw ConfigError(line_of("stepper.n_steps"), "n_steps must be >= 0");
  if (c.stepper.boundary == BoundaryKind::damping_layer &&
      (c.stepper.damping_width < 0 || c.stepper.damping_strength < 0.0 || c.stepper.damping_strength > 1.0)) {
    throw ConfigError(line_of("stepper.damping_width"), "damping layer needs width >= 0 and strength in [0, 1]");
  }

  if (c.observe.sample_every <= 0) throw ConfigError(line_of("observe.sample_every"), "sample_every must be positive");
  if (c.observe.snapshot_every < 0) throw ConfigError(line_of("observe.snapshot_every"), "snapshot_every must be >= 0");
  const double plane = c.plane_x();
  if (plane < grid.lower(0) || plane > grid.upper(0)) {
    throw ConfigError(line_of("observe.plane_x"), "measurement plane lies outside the grid");
  }
  if (c.observe.forward_filter && !c.observe.filter_step && c.potential.kind != PotentialKind::none &&
      !(units.to_internal(c.packet.momentum_mev_per_c[0], QuantityKind::momentum_MeV_per_c) > 0.0)) {
    throw ConfigError(line_of("observe.forward_filter"),
                      "automatic forward filter needs +x momentum; set observe.filter_step");
  }
  if (c.observe.filter_step && *c.observe.filter_step < 0) {
    throw ConfigError(line_of("observe.filter_step"), "filter_step must be >= 0");
  }
  if (c.observe.slice_index) {
    const int normal = c.observe.slice_plane == SlicePlane::xy ? 2 : c.observe.slice_plane == SlicePlane::xz ? 1 : 0;
    if (*c.observe.slice_index < 0 || *c.observe.slice_index >= grid.n()[normal]) {
      throw ConfigError(line_of("observe.slice_index"), "slice_index out of bounds");
    }
  }
}

}  // namespace

UnitsSystem ScenarioConfig::units_system() const {
  UnitsSystem u;
  u.mev_per_energy_unit = units.electron_mass_mev;
  u.meters_per_length_unit = units.reduced_compton_m;
  return u;
}

Grid ScenarioConfig::make_grid() const {
  return kleinfdtd::make_grid(grid.dims, grid.n, grid.dx, grid.origin);
}

PacketSpec ScenarioConfig::packet_spec() const {
  const auto u = units_system();
  PacketSpec s;
  for (int a = 0; a < 3; ++a) {
    s.p[a] = u.to_internal(packet.momentum_mev_per_c[a], QuantityKind::momentum_MeV_per_c);
  }
  s.x0 = u.to_internal(packet.x0_m, QuantityKind::length_m);
  s.center = packet.center;
  s.spin = packet.spin;
  s.mass = UnitsSystem::m_e;
  return s;
}

PotentialProfile ScenarioConfig::potential_profile(const Grid& g) const {
  const auto u = units_system();
  switch (potential.kind) {
    case PotentialKind::none:
      return zero_potential(g);
    case PotentialKind::step:
      return sample_step(g, {u.to_internal(potential.height_volts, QuantityKind::potential_volts), potential.edge});
    case PotentialKind::ramp: {
      RampPotentialSpec r;
      r.height = u.to_internal(potential.height_volts, QuantityKind::potential_volts);
      r.ramp_start_x = potential.edge;
      r.ramp_width = u.to_internal(potential.ramp_width_m, QuantityKind::length_m);
      // V/m times metres per internal length, then volts to internal energy.
      r.field_strength = u.to_internal(potential.field_volts_per_m * u.meters_per_length_unit,
                                       QuantityKind::potential_volts);
      return sample_ramp(g, r);
    }
  }
  return zero_potential(g);
}

double ScenarioConfig::plane_x() const { return observe.plane_x.value_or(potential.edge); }

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::map<std::string, int, std::less<>> lines;
  const auto& table = setters();

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'section.key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.find('.') == std::string_view::npos) throw ConfigError(line_no, "key '" + std::string(key) + "' lacks a section prefix");
    if (value.empty()) throw ConfigError(line_no, "missing value for '" + std::string(key) + "'");

    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
    if (lines.contains(key)) throw ConfigError(line_no, "duplicate key '" + std::string(key) + "'");
    it->second(cfg, value, line_no);
    lines.emplace(std::string(key), line_no);
  }

  validate(cfg, lines);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream o;
  auto join = [](const auto& values) {
    std::string s;
    for (const auto& v : values) {
      if (!s.empty()) s += ' ';
      if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) {
        s += fmt_double(v);
      } else {
        s += std::to_string(v);
      }
    }
    return s;
  };
  o << "grid.dims = " << c.grid.dims << '\n';
  o << "grid.n = " << join(c.grid.n) << '\n';
  o << "grid.dx = " << fmt_double(c.grid.dx) << '\n';
  if (!c.grid.origin.empty()) o << "grid.origin = " << join(c.grid.origin) << '\n';
  o << "units.electron_mass_mev = " << fmt_double(c.units.electron_mass_mev) << '\n';
  o << "units.reduced_compton_m = " << fmt_double(c.units.reduced_compton_m) << '\n';
  o << "packet.momentum_mev_per_c = " << join(c.packet.momentum_mev_per_c) << '\n';
  o << "packet.x0_m = " << fmt_double(c.packet.x0_m) << '\n';
  o << "packet.center = " << join(c.packet.center) << '\n';
  o << "packet.spin = " << to_string(c.packet.spin) << '\n';
  o << "potential.kind = " << to_string(c.potential.kind) << '\n';
  o << "potential.height_volts = " << fmt_double(c.potential.height_volts) << '\n';
  o << "potential.edge = " << fmt_double(c.potential.edge) << '\n';
  o << "potential.ramp_width_m = " << fmt_double(c.potential.ramp_width_m) << '\n';
  o << "potential.field_volts_per_m = " << fmt_double(c.potential.field_volts_per_m) << '\n';
  o << "stepper.courant_factor = " << fmt_double(c.stepper.courant_factor) << '\n';
  o << "stepper.boundary = "
    << (c.stepper.boundary == BoundaryKind::reflecting ? "reflecting" : "damping_layer") << '\n';
  o << "stepper.damping_width = " << c.stepper.damping_width << '\n';
  o << "stepper.damping_strength = " << fmt_double(c.stepper.damping_strength) << '\n';
  o << "stepper.n_steps = " << c.stepper.n_steps << '\n';
  o << "stepper.diagonal = "
    << (c.stepper.diagonal == DiagonalScheme::time_centered ? "time_centered" : "exact_phase") << '\n';
  o << "observe.sample_every = " << c.observe.sample_every << '\n';
  if (c.observe.plane_x) o << "observe.plane_x = " << fmt_double(*c.observe.plane_x) << '\n';
  o << "observe.forward_filter = " << (c.observe.forward_filter ? "on" : "off") << '\n';
  if (c.observe.filter_step) o << "observe.filter_step = " << *c.observe.filter_step << '\n';
  if (c.observe.cut_x) o << "observe.cut_x = " << fmt_double(*c.observe.cut_x) << '\n';
  o << "observe.snapshot_every = " << c.observe.snapshot_every << '\n';
  o << "observe.slice_plane = " << to_string(c.observe.slice_plane) << '\n';
  if (c.observe.slice_index) o << "observe.slice_index = " << *c.observe.slice_index << '\n';
  return o.str();
}

}  // namespace kleinfdtd
