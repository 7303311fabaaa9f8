// Acceptance suite: runs every shipped scenario once and checks criteria 1-11,
// printing one PASS/FAIL line per criterion.
#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kleinfdtd/config.hpp"
#include "kleinfdtd/errors.hpp"
#include "kleinfdtd/observables.hpp"
#include "kleinfdtd/oracle.hpp"
#include "kleinfdtd/scenario.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace kleinfdtd;

namespace {

struct Track {
  double time = 0.0;
  std::int64_t step = 0;
  double norm_left = 0.0, norm_right = 0.0;
  Vec3 left{}, right{};  // half-space centroids
  double width_right = 0.0;
  double width_all = 0.0;
};

struct Run {
  ScenarioConfig config;
  ScenarioResult result;
  std::vector<Track> track;
  double seconds = 0.0;
};

Vec3 half_centroid(const Grid& g, std::span<const double> rho, double plane, bool right, double& mass) {
  Vec3 acc{};
  mass = 0.0;
  const auto& n = g.n();
  for (std::int64_t k = 0; k < n[2]; ++k) {
    for (std::int64_t j = 0; j < n[1]; ++j) {
      for (std::int64_t i = 0; i < n[0]; ++i) {
        const double x = g.coord(0, i);
        if ((x >= plane) != right) continue;
        const double w = rho[g.linear_index(i, j, k)];
        mass += w;
        acc[0] += w * x;
        acc[1] += w * g.coord(1, j);
        acc[2] += w * g.coord(2, k);
      }
    }
  }
  if (mass != 0.0)
    for (auto& a : acc) a /= mass;
  mass *= g.cell_volume();
  return acc;
}

Run run_one(const fs::path& cfg_path, const fs::path& out_root) {
  Run run;
  run.config = load_config(cfg_path.string());
  run.config.observe.snapshot_every = 0;
  const Grid grid = run.config.make_grid();
  const double plane = run.config.plane_x();
  const std::vector<ObserverHook> hooks{
      {run.config.observe.sample_every, [&](SpinorField& f) {
         const auto rho = density(f);
         Track t;
         t.time = f.time_lower();
         t.step = f.step_index();
         t.left = half_centroid(grid, rho, plane, false, t.norm_left);
         t.right = half_centroid(grid, rho, plane, true, t.norm_right);
         t.width_right = x_width(grid, rho, plane);
         t.width_all = x_width(grid, rho, grid.lower(0));
         run.track.push_back(t);
       }}};
  const auto start = std::chrono::steady_clock::now();
  run.result = run_scenario(run.config, out_root / cfg_path.stem(), hooks);
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

struct Fit {
  double slope = 0.0;
  std::size_t points = 0;
};

Fit linear_fit(const std::vector<double>& t, const std::vector<double>& y) {
  Fit f;
  f.points = t.size();
  if (t.size() < 2) return f;
  const double n = static_cast<double>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  f.slope = (n * sty - st * sy) / (n * stt - st * st);
  return f;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

class Report {
 public:
  void line(int id, const std::string& title, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  " << detail
              << std::endl;
    failures_ += pass ? 0 : 1;
  }
  void note(const std::string& s) { std::cout << "      " << s << std::endl; }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

double energy(const Run& r) { return r.result.energy; }

double signed_ev(const Run& r) {
  return r.result.polarity == "attractive" ? -r.result.criticality.eV : r.result.criticality.eV;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks over the shipped scenarios"};
  fs::path out = "acceptance_out";
  fs::path scenario_dir = KLEINFDTD_SCENARIO_DIR;
  app.add_option("--out", out, "Directory for per-scenario outputs");
  app.add_option("--scenarios", scenario_dir, "Directory holding the scenario configs");
  std::vector<std::string> only;
  app.add_option("--only", only, "Run just these scenarios (by stem); other criteria report missing runs");
  CLI11_PARSE(app, argc, argv);

  std::vector<fs::path> configs;
  for (const auto& e : fs::directory_iterator(scenario_dir)) {
    if (e.path().extension() != ".cfg") continue;
    if (!only.empty() && std::find(only.begin(), only.end(), e.path().stem().string()) == only.end()) continue;
    configs.push_back(e.path());
  }
  std::sort(configs.begin(), configs.end());

  std::map<std::string, Run> runs;
  for (const auto& c : configs) {
    const std::string name = c.stem().string();
    try {
      runs.emplace(name, run_one(c, out));
      const auto& r = runs.at(name).result;
      std::cout << "ran " << name << ": R=" << fmt("%.4f", r.rt.R) << " T=" << fmt("%.4f", r.rt.T)
                << " R_unfiltered=" << fmt("%.4f", r.R_unfiltered) << " (" << fmt("%.0f", runs.at(name).seconds)
                << " s)" << std::endl;
    } catch (const Error& e) {
      std::cout << "ran " << name << ": ERROR " << e.what() << std::endl;
    }
  }
  auto get = [&](const std::string& n) -> const Run* {
    auto it = runs.find(n);
    return it == runs.end() ? nullptr : &it->second;
  };

  Report rep;

  // 1. Norm conservation.
  {
    bool ok = runs.size() == configs.size();
    double worst = 0.0;
    std::string worst_name;
    std::int64_t min_steps = std::numeric_limits<std::int64_t>::max();
    for (const auto& [name, r] : runs) {
      min_steps = std::min(min_steps, r.config.stepper.n_steps);
      if (r.result.max_norm_deviation > worst) {
        worst = r.result.max_norm_deviation;
        worst_name = name;
      }
    }
    ok = ok && worst <= 1e-6 && min_steps >= 2000;
    rep.line(1, "norm conservation", ok,
             std::to_string(runs.size()) + "/" + std::to_string(configs.size()) + " scenarios, min steps " +
                 std::to_string(min_steps) + ", max |norm-1| = " + fmt("%.2e", worst) + " (" + worst_name + ")");
  }

  // 2. Oracle equivalence.
  {
    bool ok = true;
    std::ostringstream d;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const double o = testing::dt_order_study(seed).order;
      ok = ok && std::abs(o - 2.0) <= 0.4;
      d << "dt order " << fmt("%.3f", o) << "; ";
    }
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      const testing::SmoothProblem p(seed);
      const double dense = testing::dx_order(p, false);
      const double leap = testing::dx_order(p, true);
      ok = ok && std::abs(dense - 2.0) <= 0.4 && std::abs(leap - 2.0) <= 0.4;
      d << "dx order " << fmt("%.3f", dense) << "/" << fmt("%.3f", leap) << "; ";
    }
    rep.line(2, "oracle equivalence", ok, d.str());
  }

  // 3. Free-packet kinematics.
  {
    bool ok = true;
    std::ostringstream d;
    for (const char* name : {"free_packet_2d", "free_packet_low_1d"}) {
      const Run* r = get(name);
      if (!r) {
        ok = false;
        d << name << " missing; ";
        continue;
      }
      std::vector<double> t, x;
      for (const auto& s : r->result.log.samples) {
        if (s.step < std::max<std::int64_t>(r->result.filter_step, 0)) continue;
        t.push_back(s.time);
        x.push_back(s.centroid[0]);
      }
      const double v = linear_fit(t, x).slope;
      const double expect = oracle::group_velocity(r->result.packet.p, r->result.packet.mass)[0];
      const double rel = v / expect - 1.0;
      ok = ok && std::abs(rel) <= 0.05;
      d << name << " p=" << fmt("%.3f", r->result.packet.p[0]) << " v=" << fmt("%.5f", v) << " vs "
        << fmt("%.5f", expect) << " (" << fmt("%+.2f", 100 * rel) << "%); ";
    }
    rep.line(3, "free-packet centroid velocity", ok, d.str());
  }

  // 4. Supercritical repulsive step.
  {
    const Run* a = get("klein_step_repulsive");
    const Run* b = get("klein_step_repulsive_50mv");
    bool ok = a && b;
    std::ostringstream d;
    if (a && b) {
      const auto& ra = a->result;
      const auto& rb = b->result;
      ok = std::abs(ra.rt.R - 1.0) <= 0.02 && std::abs(ra.rt.T) <= 0.02 && std::abs(rb.rt.R - ra.rt.R) <= 0.02;
      d << "25 MV R=" << fmt("%.4f", ra.rt.R) << " T=" << fmt("%.4f", ra.rt.T) << "; 50 MV R="
        << fmt("%.4f", rb.rt.R) << " |dR|=" << fmt("%.4f", std::abs(rb.rt.R - ra.rt.R));
      rep.line(4, "supercritical repulsive step", ok, d.str());
      for (const Run* r : {a, b}) {
        const auto& res = r->result;
        const double ev = res.criticality.eV;
        rep.note("eV=" + fmt("%.2f", ev) + ": unfiltered R=" + fmt("%.4f", res.R_unfiltered) + " T=" +
                 fmt("%.4f", res.T_unfiltered) + "; plane wave R=" +
                 fmt("%.5f", oracle::planewave_step_rt(energy(*r), ev).R) + " (group branch), " +
                 fmt("%.1f", oracle::planewave_step_rt(energy(*r), ev, 1.0, oracle::KleinBranch::momentum_sign).R) +
                 " (momentum branch)");
      }
    } else {
      rep.line(4, "supercritical repulsive step", false, "scenario missing");
    }
  }

  // 5. Attractive supercritical step.
  {
    const Run* a = get("klein_step_attractive");
    if (a) {
      const auto& r = a->result;
      const bool ok = std::abs(r.rt.R - 0.46) <= 0.05 && std::abs(r.rt.T - 0.54) <= 0.05;
      rep.line(5, "attractive supercritical step", ok,
               "R=" + fmt("%.4f", r.rt.R) + " T=" + fmt("%.4f", r.rt.T) + " (target 0.46/0.54)");
      rep.note("unfiltered R=" + fmt("%.4f", r.R_unfiltered) + "; plane wave R=" +
               fmt("%.2e", oracle::planewave_step_rt(energy(*a), signed_ev(*a)).R));
    } else {
      rep.line(5, "attractive supercritical step", false, "scenario missing");
    }
  }

  // 6. Low-momentum pair.
  {
    const Run* sub = get("low_momentum_subcritical");
    const Run* sup = get("low_momentum_supercritical");
    if (sub && sup) {
      const double rs = sub->result.rt.R, rp = sup->result.rt.R;
      const bool ok = std::abs(rs - 0.6) <= 0.05 && std::abs(rp - 1.0) <= 0.02;
      rep.line(6, "low-momentum step", ok,
               "1.0 MV R=" + fmt("%.4f", rs) + " (target 0.6); 1.5 MV R=" + fmt("%.4f", rp) + " (target 1)");
      for (const Run* r : {sub, sup}) {
        const auto pw = oracle::planewave_step_rt(energy(*r), r->result.criticality.eV);
        rep.note("eV=" + fmt("%.3f", r->result.criticality.eV) + " E=" + fmt("%.4f", energy(*r)) +
                 ": plane wave R=" + fmt("%.4f", pw.R) + (pw.evanescent ? " (evanescent)" : ""));
      }
    } else {
      rep.line(6, "low-momentum step", false, "scenario missing");
    }
  }

  // 7. Subcritical qualitative pair: transmitted-lobe spreading vs free packet.
  {
    const Run* rep5 = get("subcritical_repulsive_5mv");
    const Run* att5 = get("subcritical_attractive_5mv");
    const Run* free = get("free_packet_2d");
    if (rep5 && att5 && free) {
      auto width_at = [](const Run& r, std::int64_t step, bool transmitted) {
        for (const auto& t : r.track)
          if (t.step >= step) return transmitted ? t.width_right : t.width_all;
        return transmitted ? r.track.back().width_right : r.track.back().width_all;
      };
      auto growth = [&](const Run& r) {
        const std::int64_t from = r.result.rt.t_measure;
        const std::int64_t to = r.track.back().step;
        const double dt = (to - from) * r.result.dt;
        const double lobe = (width_at(r, to, true) - width_at(r, from, true)) / dt;
        const double ref = (width_at(*free, to, false) - width_at(*free, from, false)) / dt;
        return std::pair{lobe, ref};
      };
      const auto [gr, fr] = growth(*rep5);
      const auto [ga, fa] = growth(*att5);
      const double ratio_r = gr / fr, ratio_a = ga / fa;
      const bool ok = ratio_r >= 1.5 && std::abs(ratio_a - 1.0) <= 0.2;
      rep.line(7, "subcritical spreading pair", ok,
               "repulsive/free width growth " + fmt("%.3f", ratio_r) + " (need >= 1.5); attractive/free " +
                   fmt("%.3f", ratio_a) + " (need within 0.2 of 1)");
      rep.note("width growth rates: repulsive " + fmt("%.3e", gr) + ", attractive " + fmt("%.3e", ga) +
               ", free " + fmt("%.3e", fr));
    } else {
      rep.line(7, "subcritical spreading pair", false, "scenario missing");
    }
  }

  // 8. Ramp.
  {
    const Run* ramp = get("ramp_repulsive");
    if (ramp) {
      const auto& r = ramp->result;
      const UnitsSystem u = ramp->config.units_system();
      const double a = u.to_internal(ramp->config.potential.ramp_width_m, QuantityKind::length_m);
      const double limit = ramp->config.potential.edge + a + 2.0 * r.packet.x0;
      double max_x = -1e300;
      for (const auto& s : r.log.samples)
        if (s.step >= r.filter_step) max_x = std::max(max_x, s.centroid[0]);
      const bool ok = std::abs(r.rt.R - 1.0) <= 0.02 && max_x <= limit;
      rep.line(8, "linear ramp", ok,
               "R=" + fmt("%.4f", r.rt.R) + " T=" + fmt("%.4f", r.rt.T) + "; max centroid x=" + fmt("%.3f", max_x) +
                   " (limit " + fmt("%.3f", limit) + ")");
    } else {
      rep.line(8, "linear ramp", false, "scenario missing");
    }
  }

  // 9. 45 degree incidence.
  {
    const Run* rr = get("oblique_45_repulsive");
    const Run* ra = get("oblique_45_attractive");
    if (rr && ra) {
      const auto& res = rr->result;
      std::vector<double> t_in, x_in, z_in, t_out, x_out, z_out;
      double band_peak = 0.0;
      std::int64_t peak_step = 0;
      for (const auto& s : res.log.samples) {
        if (s.norm_band > band_peak) {
          band_peak = s.norm_band;
          peak_step = s.step;
        }
      }
      // Incidence: after the filter, before the packet reaches the band.
      for (const auto& s : res.log.samples) {
        if (s.step >= res.filter_step && s.step < peak_step && s.norm_band < 0.01 * band_peak) {
          t_in.push_back(s.time);
          x_in.push_back(s.centroid[0]);
          z_in.push_back(s.centroid[2]);
        }
      }
      for (const auto& t : rr->track) {
        if (t.step < res.rt.t_measure || t.norm_left <= 0.0) continue;
        t_out.push_back(t.time);
        x_out.push_back(t.left[0]);
        z_out.push_back(t.left[2]);
      }
      const double vx_in = linear_fit(t_in, x_in).slope, vz_in = linear_fit(t_in, z_in).slope;
      const double vx_out = linear_fit(t_out, x_out).slope, vz_out = linear_fit(t_out, z_out).slope;
      const double deg = 180.0 / std::numbers::pi;
      const double th_in = std::atan2(std::abs(vz_in), std::abs(vx_in)) * deg;
      const double th_out = std::atan2(std::abs(vz_out), std::abs(vx_out)) * deg;
      const bool angle_ok = t_in.size() >= 3 && t_out.size() >= 3 && vx_out < 0.0 && std::abs(th_in - th_out) <= 2.0;
      const bool refr_ok = ra->result.rt.T > 0.1;
      rep.line(9, "45 degree incidence", angle_ok && refr_ok,
               "theta_in=" + fmt("%.2f", th_in) + " theta_out=" + fmt("%.2f", th_out) + " deg (R=" +
                   fmt("%.4f", res.rt.R) + "); attractive T=" + fmt("%.4f", ra->result.rt.T));
      rep.note("fit points: incidence " + std::to_string(t_in.size()) + ", reflection " +
               std::to_string(t_out.size()) + "; reflected velocity (" + fmt("%.4f", vx_out) + ", " +
               fmt("%.4f", vz_out) + ")");
    } else {
      rep.line(9, "45 degree incidence", false, "scenario missing");
    }
  }

  // 10. Spin-flip invariance.
  {
    bool ok = true;
    std::ostringstream d;
    for (const char* base : {"klein_step_repulsive", "klein_step_repulsive_50mv", "klein_step_attractive",
                             "low_momentum_subcritical", "low_momentum_supercritical"}) {
      const Run* up = get(base);
      const Run* down = get(std::string(base) + "_spin_down");
      if (!up || !down) {
        ok = false;
        d << base << " missing; ";
        continue;
      }
      const double dr = std::abs(up->result.rt.R - down->result.rt.R);
      ok = ok && dr <= 1e-3;
      d << base << " |dR|=" << fmt("%.1e", dr) << "; ";
    }
    rep.line(10, "spin-flip invariance", ok, d.str());
  }

  // 11. Wide packet vs plane wave.
  {
    const Run* w = get("wide_packet_planewave");
    if (w) {
      const auto pw = oracle::planewave_step_rt(energy(*w), w->result.criticality.eV);
      const double dr = std::abs(w->result.rt.R - pw.R);
      rep.line(11, "wide packet vs plane wave", dr <= 0.05,
               "packet R=" + fmt("%.4f", w->result.rt.R) + " plane wave R=" + fmt("%.4f", pw.R) + " |dR|=" +
                   fmt("%.4f", dr));
    } else {
      rep.line(11, "wide packet vs plane wave", false, "scenario missing");
    }
  }

  std::cout << (rep.failures() == 0 ? "all criteria passed" : std::to_string(rep.failures()) + " criteria failed")
            << std::endl;
  return rep.failures() == 0 ? 0 : 1;
}
