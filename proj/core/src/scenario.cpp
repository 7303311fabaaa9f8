#include "kleinfdtd/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "kleinfdtd/errors.hpp"
#include "kleinfdtd/oracle.hpp"
#include "kleinfdtd/output.hpp"

namespace kleinfdtd {

namespace {

std::string step_tag(std::int64_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08lld", static_cast<long long>(step));
  return buf;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> ScenarioResult::report_entries() const {
  std::vector<std::pair<std::string, std::string>> kv;
  auto num = [](double v) { return format_sci(v); };
  kv.emplace_back("R", num(rt.R));
  kv.emplace_back("T", num(rt.T));
  kv.emplace_back("converged", rt.converged ? "true" : "false");
  kv.emplace_back("t_measure_step", std::to_string(rt.t_measure));
  kv.emplace_back("t_measure_time", num(static_cast<double>(rt.t_measure) * dt));
  kv.emplace_back("plane_x", num(rt.plane_x));
  kv.emplace_back("forward_filter", filtered ? "on" : "off");
  kv.emplace_back("forward_norm", num(forward_norm));
  kv.emplace_back("filter_step", std::to_string(filter_step));
  kv.emplace_back("cut_x", num(cut_x));
  kv.emplace_back("R_unfiltered", num(R_unfiltered));
  kv.emplace_back("T_unfiltered", num(T_unfiltered));
  kv.emplace_back("regime", to_string(criticality.regime));
  kv.emplace_back("polarity", polarity);
  kv.emplace_back("eV", num(criticality.eV));
  kv.emplace_back("threshold_E_plus_m", num(criticality.threshold));
  kv.emplace_back("energy", num(energy));
  kv.emplace_back("p_x", num(packet.p[0]));
  kv.emplace_back("p_y", num(packet.p[1]));
  kv.emplace_back("p_z", num(packet.p[2]));
  kv.emplace_back("x0", num(packet.x0));
  kv.emplace_back("spin", to_string(packet.spin));
  kv.emplace_back("dt", num(dt));
  kv.emplace_back("max_norm_deviation", num(max_norm_deviation));
  kv.emplace_back("warnings", std::to_string(warnings.size()));
  return kv;
}

std::int64_t auto_filter_step(const PacketSpec& packet, double plane_x, double dt) {
  const double v = oracle::group_velocity(packet.p, packet.mass)[0];
  if (!(v > 0.0)) throw InvalidArgument("automatic forward filter needs +x momentum");
  const double t_separate = 6.0 * packet.x0 / v;
  const double t_contact = (plane_x - packet.center[0] - 5.0 * packet.x0) / v;
  const double t = std::max(0.0, std::min(t_separate, t_contact));
  return static_cast<std::int64_t>(std::llround(t / dt));
}

ScenarioResult run_scenario(const ScenarioConfig& config,
                            const std::optional<std::filesystem::path>& out_dir,
                            std::span<const ObserverHook> extra_hooks, std::ostream* log) {
  const Grid grid = config.make_grid();
  const PotentialProfile profile = config.potential_profile(grid);
  BoundaryConfig boundary{config.stepper.boundary, config.stepper.damping_width,
                          config.stepper.damping_strength};
  StepperConfig sc = StepperConfig::for_grid(grid, config.stepper.courant_factor, boundary);
  sc.diagonal = config.stepper.diagonal;
  const Stepper stepper(profile, sc);

  ScenarioResult res;
  res.packet = config.packet_spec();
  res.dt = sc.dt;
  res.energy = energy_of(res.packet.p, res.packet.mass);
  const double peak = profile.peak();
  const double trough = profile.min();
  const double magnitude = std::max(std::abs(peak), std::abs(trough));
  res.criticality = classify(magnitude, res.energy, res.packet.mass);
  res.polarity = magnitude == 0.0 ? "none" : (std::abs(peak) >= std::abs(trough) ? "repulsive" : "attractive");
  res.warnings = packet_warnings(grid, res.packet);
  if (log) {
    for (const auto& w : res.warnings) *log << "warning: " << w << '\n';
    *log << "packet E=" << res.energy << " barrier |eV|=" << magnitude << " (" << res.polarity
         << ") threshold E+mc^2=" << res.criticality.threshold << " -> "
         << to_string(res.criticality.regime) << '\n';
  }

  if (out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir->string() + "': " + ec.message());
  }

  SpinorField field = init_packet(grid, res.packet, sc.dt, &profile);

  const double plane = config.plane_x();
  ObserveOptions opts;
  opts.sample_every = config.observe.sample_every;
  opts.plane_x = plane;
  opts.band_halfwidth = 2.0 * res.packet.x0;
  if (config.potential.kind == PotentialKind::ramp) {
    opts.band_extent = config.units_system().to_internal(config.potential.ramp_width_m, QuantityKind::length_m);
  }

  std::vector<ObserverHook> hooks;
  const bool auto_possible = config.observe.filter_step.has_value() || res.packet.p[0] > 0.0;
  if (config.observe.forward_filter && !auto_possible && log) {
    *log << "forward filter skipped: no +x momentum to time it by\n";
  }
  if (config.observe.forward_filter && auto_possible) {
    res.filter_step = config.observe.filter_step.value_or(auto_filter_step(res.packet, plane, sc.dt));
    hooks.push_back({1, [&](SpinorField& f) {
                       if (f.step_index() != res.filter_step) return;
                       double cut = 0.0;
                       if (config.observe.cut_x) {
                         cut = *config.observe.cut_x;
                       } else {
                         const auto rho = density(f);
                         cut = find_lobe_cut(grid, marginal_x(grid, rho), 6.0 * res.packet.x0);
                       }
                       const auto filt = forward_filter(f, cut);
                       res.filtered = true;
                       res.forward_norm = filt.forward_norm;
                       res.cut_x = filt.cut_x;
                       if (log) {
                         *log << "forward filter at step " << res.filter_step << ": cut_x=" << cut
                              << " forward_norm=" << filt.forward_norm << '\n';
                       }
                     }});
  }
  if (out_dir && config.observe.snapshot_every > 0) {
    const int normal = config.observe.slice_plane == SlicePlane::xy   ? 2
                       : config.observe.slice_plane == SlicePlane::xz ? 1
                                                                      : 0;
    const std::int64_t slice_index = config.observe.slice_index.value_or(grid.n()[normal] / 2);
    hooks.push_back({config.observe.snapshot_every, [&, slice_index](SpinorField& f) {
                       const auto rho = density(f);
                       const std::string tag = step_tag(f.step_index());
                       write_snapshot(grid, rho, f.step_index(), f.time_lower(),
                                      *out_dir / ("density_" + tag + ".f64"));
                       write_frame(slice2d(grid, rho, config.observe.slice_plane, slice_index),
                                   *out_dir / ("frame_" + tag + ".pgm"));
                     }});
  }
  hooks.insert(hooks.end(), extra_hooks.begin(), extra_hooks.end());
  res.log.plane_x = plane;
  if (config.stepper.n_steps > 0) {
    hooks.push_back({opts.sample_every, [&](SpinorField& f) { res.log.samples.push_back(observe(f, opts)); }});
  }

  try {
    run(field, stepper, config.stepper.n_steps, hooks);
  } catch (const DivergenceError&) {
    if (out_dir) write_observables_csv(res.log, *out_dir / "observables.csv");
    throw;
  }

  for (const auto& s : res.log.samples) {
    res.max_norm_deviation = std::max(res.max_norm_deviation, std::abs(s.norm - 1.0));
  }
  if (!res.log.samples.empty()) {
    res.rt = rt_coefficients(res.log, plane, 1.0);
    res.rt.forward_norm = res.forward_norm;
    if (res.filtered) {
      res.R_unfiltered = (1.0 - res.forward_norm) + res.forward_norm * res.rt.R;
      res.T_unfiltered = res.forward_norm * res.rt.T;
    } else {
      res.R_unfiltered = res.rt.R;
      res.T_unfiltered = res.rt.T;
    }
  }
  if (log) {
    *log << "R=" << res.rt.R << " T=" << res.rt.T << (res.rt.converged ? " (converged)" : " (not converged)")
         << " max|norm-1|=" << res.max_norm_deviation << '\n';
  }

  if (out_dir) {
    write_observables_csv(res.log, *out_dir / "observables.csv");
    write_key_values(res.report_entries(), *out_dir / "report.txt");
  }
  return res;
}

}  // namespace kleinfdtd
