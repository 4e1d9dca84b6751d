#include "meshtd/scenario.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "meshtd/constants.hpp"

namespace meshtd {

namespace fs = std::filesystem;

ScenarioBuild build_scenario(const ScenarioConfig &config) {
  config.validate_or_throw();
  ScenarioBuild b;
  b.config = config;
  b.lattice = build_staggered_lattice({config.extent_x_m, config.extent_y_m, 0},
                                      {config.nodes_x, config.nodes_y, 1},
                                      config.pml_layers, 2);
  const NodeLattice &e = b.lattice.e;
  const NodeLattice &h = b.lattice.h;
  b.dt = step_size(e.spacing, config.dt_divisor);

  StencilOptions opts;
  opts.size = config.stencil_size;
  opts.normalization = config.alpha_normalization();
  opts.global = config.global_stencil;
  StencilTable h_over_e =
      build_stencil_table(e, h.positions, config.alpha_c, opts);
  StencilTable e_over_h =
      build_stencil_table(h, e.positions, config.alpha_c, opts);

  PmlSpec pml;
  pml.grading_order = config.grading_order;
  pml.reflection_coeff = config.reflection_coeff;
  pml.thickness = config.pml_layers > 0 ? config.pml_layers * e.spacing : 1.0;
  ConductivityField sig_e = assign_conductivities(b.lattice.e_tags, pml, 2);
  ConductivityField sig_h = assign_conductivities(b.lattice.h_tags, pml, 2);

  MaterialMap e_media = MaterialMap::vacuum(e);
  MaterialMap h_media = MaterialMap::vacuum(h);
  if (config.slab_enabled) {
    SlabGeometry slab{1, config.slab_back_m(), config.slab_front_m};
    DrudeMedium medium{config.plasma_freq_rad_s, config.collision_freq_hz};
    e_media = MaterialMap::with_slab(e, slab, medium);
    h_media = MaterialMap::with_slab(h, slab, medium);
  }

  std::vector<int> pinned = boundary_nodes(e, {0, 1});
  b.coeffs = precompute_tm(e, h, h_over_e, e_over_h, sig_e, sig_h, e_media,
                           h_media, b.dt, std::move(pinned));

  b.source.cluster = make_source_cluster(
      e, {config.source_x_m, config.source_y_m, 0},
      config.source_radius_nodes * e.spacing);
  b.source.signal = WindowedSine{config.frequency_hz, config.turn_on_cycles,
                                 config.hold_cycles, config.amplitude_v_m};
  b.source.rate = config.injection_rate_hz;

  NeighborSearch search(e);
  for (const auto &p : config.probe_points_m)
    b.probe_nodes.push_back(search.nearest({p[0], p[1], 0}, 1)[0]);

  if (config.slab_enabled) {
    b.image_plane_y = config.slab_back_m() - config.slab_thickness_m / 2;
    const int iy = static_cast<int>(std::lround(b.image_plane_y / e.spacing));
    if (iy >= 0 && iy < config.nodes_y) {
      for (int ix = 0; ix < config.nodes_x; ++ix)
        b.image_plane_nodes.push_back(ix + config.nodes_x * iy);
      b.image_plane_y = iy * e.spacing;
    }
  }
  return b;
}

int ReferenceSeries::nearest_step(double t) const {
  if (times.empty()) return -1;
  long k = std::lround(t / dt) - 1;
  k = std::clamp(k, 0L, static_cast<long>(times.size()) - 1);
  return static_cast<int>(k);
}

ReferenceSeries run_reference(const ScenarioConfig &config,
                              const std::vector<Point> &sample_points,
                              double t_end) {
  const double lambda0 = c0 / config.frequency_hz;
  const double cell = lambda0 / config.cells_per_wavelength;
  const int cx = std::max(2, static_cast<int>(std::lround(config.extent_x_m / cell)));
  const int cyn = std::max(2, static_cast<int>(std::lround(config.extent_y_m / cell)));

  PmlSpec pml;
  pml.grading_order = config.grading_order;
  pml.reflection_coeff = config.reflection_coeff;
  const double pml_thickness =
      std::max(config.pml_layers, 1) * config.spacing();

  SlabGeometry slab{1, config.slab_back_m(), config.slab_front_m};
  DrudeMedium medium{config.plasma_freq_rad_s, config.collision_freq_hz};
  YeeGridTM grid(config.extent_x_m, config.extent_y_m, cx, cyn, pml_thickness,
                 pml, config.slab_enabled ? &slab : nullptr, medium,
                 config.courant_factor);

  WindowedSine signal{config.frequency_hz, config.turn_on_cycles,
                      config.hold_cycles, config.amplitude_v_m};
  const int si = grid.nearest_i(config.source_x_m);
  const int sj = grid.nearest_j(config.source_y_m);

  ReferenceSeries out;
  out.dt = grid.dt();
  const long steps = static_cast<long>(std::ceil(t_end / grid.dt())) + 1;
  for (long q = 0; q < steps; ++q) {
    grid.step(&signal, config.injection_rate_hz, si, sj);
    out.times.push_back(grid.step_count() * grid.dt());
    out.profiles.push_back(grid.sample_at(sample_points));
    for (double v : out.profiles.back())
      out.global_max = std::max(out.global_max, std::abs(v));
  }
  return out;
}

ErrorSeries build_error_series(const std::vector<double> &times,
                               const std::vector<std::vector<double>> &profiles,
                               const ReferenceSeries &ref, double gate_fraction) {
  ErrorSeries es;
  es.gate_fraction = gate_fraction;
  es.n_points = profiles.empty() ? 0 : static_cast<int>(profiles.front().size());
  const double gate = gate_fraction * ref.global_max;
  for (size_t q = 0; q < times.size(); ++q) {
    const int k = ref.nearest_step(times[q]);
    if (k < 0) continue;
    const auto &r = ref.profiles[k];
    double rmax = 0.0, mmax = 0.0;
    for (double v : r) rmax = std::max(rmax, std::abs(v));
    for (double v : profiles[q]) mmax = std::max(mmax, std::abs(v));
    if (rmax <= gate || rmax == 0.0 || mmax == 0.0) continue;
    es.times.push_back(times[q]);
    es.values.push_back(l2_error(normalize(profiles[q]), normalize(r)));
  }
  return es;
}

std::uint64_t fnv1a64_file(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::uint64_t h = 1469598103934665603ull;
  char buf[1 << 15];
  while (f) {
    f.read(buf, sizeof buf);
    for (std::streamsize i = 0; i < f.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  return h;
}

namespace {

FieldSnapshot take_snapshot(const TmState &state, const ScenarioConfig &cfg,
                            double t) {
  FieldSnapshot snap;
  snap.nx = cfg.nodes_x;
  snap.ny = cfg.nodes_y;
  snap.spacing = cfg.spacing();
  snap.time = t;
  snap.values.resize(static_cast<size_t>(cfg.nodes_x) * cfg.nodes_y);
  for (size_t i = 0; i < snap.values.size(); ++i)
    snap.values[i] = state.ez(static_cast<int>(i));
  return snap;
}

std::string time_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

long peak_rss_kb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss;
}

}  // namespace

RunOutput run_scenario(const ScenarioConfig &config) {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioBuild b = build_scenario(config);
  const ScenarioConfig &cfg = b.config;

  fs::create_directories(cfg.output_dir);
  RunOutput out;
  out.directory = cfg.output_dir;
  out.dt = b.dt;
  out.steps = cfg.steps;

  // Snapshot requests snap to the nearest step.
  std::vector<long> snap_steps;
  for (double t : cfg.snapshot_times_s)
    snap_steps.push_back(std::clamp<long>(std::lround(t / b.dt), 0, cfg.steps));

  // Focal scan window: +- half a source period around the first snapshot.
  const long half_period =
      static_cast<long>(std::ceil(1.0 / cfg.frequency_hz / 2.0 / b.dt));
  long focal_center = snap_steps.empty() ? -1 : snap_steps.front();
  SlabGeometry slab{1, cfg.slab_back_m(), cfg.slab_front_m};
  const Point source_pos{cfg.source_x_m, cfg.source_y_m, 0};

  TmState state = TmState::zeros(b.coeffs.n_e, b.coeffs.n_h);
  std::vector<FieldSnapshot> snapshots;
  std::vector<std::vector<double>> image_profiles;
  std::vector<double> image_times;
  double best_focal_err = 0.0;

  auto on_step = [&](const TmState &st) {
    const long q = st.step;
    const double t = q * b.dt;
    for (size_t k = 0; k < snap_steps.size(); ++k)
      if (q == snap_steps[k] ) snapshots.push_back(take_snapshot(st, cfg, t));
    if (!b.image_plane_nodes.empty()) {
      std::vector<double> row(b.image_plane_nodes.size());
      for (size_t i = 0; i < row.size(); ++i)
        row[i] = st.ez(b.image_plane_nodes[i]);
      image_profiles.push_back(std::move(row));
      image_times.push_back(t);
    }
    if (cfg.slab_enabled && focal_center >= 0 &&
        std::labs(q - focal_center) <= half_period) {
      FieldSnapshot snap = take_snapshot(st, cfg, t);
      FocalReport rep = locate_foci(snap, slab, source_pos);
      if (q == focal_center) out.focal = rep;
      if (rep.formed) {
        const double err = std::max(std::abs(rep.inside_error_dmin()),
                                    std::abs(rep.beyond_error_dmin()));
        if (!out.focal_best || err < best_focal_err) {
          out.focal_best = rep;
          best_focal_err = err;
          out.focal_best_time = t;
        }
      }
    }
  };

  RunRecord rec = run(state, b.coeffs, &b.source, cfg.steps, b.probe_nodes,
                      cfg.workers, on_step);

  // Outputs.
  cfg.save(fs::path(cfg.output_dir) / "config.ini");
  out.files.push_back("config.ini");

  {
    std::FILE *f =
        std::fopen((fs::path(cfg.output_dir) / "probes.csv").string().c_str(), "wb");
    std::fputs("step,t_s", f);
    for (size_t p = 0; p < cfg.probe_points_m.size(); ++p)
      std::fprintf(f, ",probe%zu_ez", p);
    std::fputs("\n", f);
    for (size_t q = 0; q < rec.times.size(); ++q) {
      std::fprintf(f, "%zu,%.17g", q + 1, rec.times[q]);
      for (const auto &pv : rec.probe_values)
        std::fprintf(f, ",%.17g", pv[q]);
      std::fputs("\n", f);
    }
    std::fclose(f);
    out.files.push_back("probes.csv");
  }

  for (const auto &snap : snapshots) {
    const std::string base = "snapshot_" + time_label(snap.time);
    export_snapshot_csv(snap, (fs::path(cfg.output_dir) / (base + ".csv")).string());
    export_snapshot_pgm(snap, (fs::path(cfg.output_dir) / (base + ".pgm")).string());
    out.files.push_back(base + ".csv");
    out.files.push_back(base + ".pgm");
  }

  if (cfg.slab_enabled && (out.focal || out.focal_best)) {
    std::ofstream f(fs::path(cfg.output_dir) / "focal_report.txt");
    auto put = [&](const char *label, const FocalReport &r, double t) {
      f << label << " (t = " << t << " s)\n";
      if (!r.formed) {
        f << "  foci not formed\n";
        return;
      }
      f << "  inside slab:  y = " << r.inside_position << " m (expected "
        << r.expected_inside << " m, error " << r.inside_error_dmin()
        << " d_min)\n";
      f << "  beyond slab:  y = " << r.beyond_position << " m (expected "
        << r.expected_beyond << " m, error " << r.beyond_error_dmin()
        << " d_min)\n";
    };
    if (out.focal)
      put("focal detection at snapshot step", *out.focal,
          focal_center * b.dt);
    if (out.focal_best)
      put("best focal detection within half a period", *out.focal_best,
          out.focal_best_time);
    out.files.push_back("focal_report.txt");
  }

  if (cfg.reference_enabled && !b.image_plane_nodes.empty()) {
    std::vector<Point> pts;
    for (int n : b.image_plane_nodes) pts.push_back(b.lattice.e.positions[n]);
    ReferenceSeries ref =
        run_reference(cfg, pts, cfg.steps > 0 ? cfg.steps * b.dt : 0.0);
    ErrorSeries es =
        build_error_series(image_times, image_profiles, ref, cfg.gate_fraction);
    out.l2_time_average = es.time_average();
    std::FILE *f = std::fopen(
        (fs::path(cfg.output_dir) / "l2_error.csv").string().c_str(), "wb");
    std::fputs("t_s,l2\n", f);
    for (size_t i = 0; i < es.times.size(); ++i)
      std::fprintf(f, "%.17g,%.17g\n", es.times[i], es.values[i]);
    std::fclose(f);
    out.files.push_back("l2_error.csv");
  }

  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.peak_rss_kb = peak_rss_kb();

  {
    std::ofstream f(fs::path(cfg.output_dir) / "manifest.txt");
    f << "meshtd run manifest\n";
    f << "version: 0.1.0\n";
    f << "dt_s: " << b.dt << "\n";
    f << "steps: " << cfg.steps << "\n";
    f << "nodes: " << cfg.nodes_x << "x" << cfg.nodes_y << "\n";
    f << "stencil_size: " << cfg.stencil_size << "\n";
    f << "alpha_c: " << cfg.alpha_c << "\n";
    for (size_t k = 0; k < snap_steps.size(); ++k)
      f << "snapshot_" << k << "_realized_t_s: " << snap_steps[k] * b.dt << "\n";
    if (out.l2_time_average) {
      f << "l2_time_average: " << *out.l2_time_average << "\n";
      f << "l2_points: " << b.image_plane_nodes.size() << "\n";
      f << "l2_gate_fraction: " << cfg.gate_fraction << "\n";
    }
    f << "wall_time_s: " << out.wall_seconds << "\n";
    f << "peak_rss_kb: " << out.peak_rss_kb << "\n";
    f << "files:\n";
    for (const auto &name : out.files) {
      const auto p = fs::path(cfg.output_dir) / name;
      f << "  " << name << " " << fs::file_size(p) << " " << std::hex
        << fnv1a64_file(p.string()) << std::dec << "\n";
    }
  }
  out.files.push_back("manifest.txt");
  return out;
}

std::vector<RunOutput> sweep(const ScenarioConfig &base,
                             const std::string &parameter,
                             const std::vector<double> &values,
                             std::string out_root) {
  if (values.empty()) throw ConfigError({"sweep needs at least one value"});
  if (out_root.empty()) out_root = base.output_dir;
  fs::create_directories(out_root);

  std::vector<RunOutput> outs;
  std::vector<double> averages;
  for (double v : values) {
    ScenarioConfig cfg = base;
    cfg.reference_enabled = true;
    char label[64];
    std::snprintf(label, sizeof label, "%s_%g", parameter.c_str(), v);
    cfg.output_dir = (fs::path(out_root) / label).string();
    if (parameter == "nodes_per_axis") {
      cfg.nodes_x = cfg.nodes_y = static_cast<int>(std::lround(v));
    } else if (parameter == "alpha_c") {
      cfg.alpha_c = v;
    } else if (parameter == "dt_divisor") {
      cfg.dt_divisor = v;
      // keep the same physical duration
      const double t_end = base.steps * step_size(base.spacing(), base.dt_divisor);
      cfg.steps = static_cast<long>(std::lround(t_end / step_size(cfg.spacing(), v)));
    } else if (parameter == "stencil_size") {
      cfg.stencil_size = static_cast<int>(std::lround(v));
    } else {
      throw ConfigError({"unknown sweep parameter: " + parameter});
    }
    if (parameter == "nodes_per_axis") {
      const double t_end = base.steps * step_size(base.spacing(), base.dt_divisor);
      cfg.steps = static_cast<long>(
          std::lround(t_end / step_size(cfg.spacing(), cfg.dt_divisor)));
    }
    outs.push_back(run_scenario(cfg));
    averages.push_back(outs.back().l2_time_average.value_or(0.0));
  }

  std::FILE *f = std::fopen(
      (fs::path(out_root) / ("sweep_" + parameter + ".csv")).string().c_str(),
      "wb");
  std::fprintf(f, "%s,l2_time_average\n", parameter.c_str());
  for (size_t i = 0; i < values.size(); ++i)
    std::fprintf(f, "%.17g,%.17g\n", values[i], averages[i]);
  std::fclose(f);
  return outs;
}

}  // namespace meshtd
