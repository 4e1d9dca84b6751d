// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs everything from a fresh build of the default scenario.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "meshtd/constants.hpp"
#include "meshtd/scenario.hpp"
#include "meshtd/validate.hpp"

using namespace meshtd;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const char *what, bool pass, const std::string &detail) {
  std::printf("%-4s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string slurp(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// 1) Perfect-lens reproduction at the reference snapshot epoch.
void criterion_1() {
  ScenarioConfig cfg;
  cfg.output_dir = "/tmp/meshtd_acc_lens";
  fs::remove_all(cfg.output_dir);
  RunOutput out = run_scenario(cfg);
  bool pass = false;
  double ein = 0, ebey = 0;
  if (out.focal_best && out.focal_best->formed) {
    ein = out.focal_best->inside_error_dmin();
    ebey = out.focal_best->beyond_error_dmin();
    pass = std::abs(ein) <= 1.0 && std::abs(ebey) <= 1.0;
  }
  report(1, "perfect-lens foci at d/2 inside and d/2 beyond", pass,
         fmt("errors %+.2f / %+.2f d_min at t within half a period of the "
             "snapshot; wall %.2f s",
             ein, ebey, out.wall_seconds));
}

// 2) Drude configuration at 30 GHz.
void criterion_2() {
  DrudeMedium m{2.666e11, 0.0};
  const double w0 = 2 * pi * 30e9;
  const auto er = relative_permittivity(m, w0);
  const auto mr = permeability(m, w0) / mu0;
  const bool pass = std::abs(er + 1.0) < 0.01 && std::abs(mr + 1.0) < 0.01;
  report(2, "relative permittivity and permeability are -1 within 1%", pass,
         fmt("eps_r = %.6f, mu_r = %.6f", er.real(), mr.real()));
}

void from_suite(int id, const char *what, const char *suite) {
  auto results = run_validation(suite);
  bool pass = true;
  double measured = 0, threshold = 0;
  for (const auto &r : results) {
    pass = pass && r.passed;
    measured = r.measured;
    threshold = r.threshold;
  }
  report(id, what, pass, fmt("measured %.3g vs threshold %.3g", measured, threshold));
}

// 6 & 7) Ordering studies against the lambda0/100 FDTD reference.
void criteria_6_7() {
  ScenarioConfig base;
  base.output_dir = "/tmp/meshtd_acc_sweeps";
  fs::remove_all(base.output_dir);

  auto nodes = sweep(base, "nodes_per_axis", {31, 61},
                     "/tmp/meshtd_acc_sweeps/nodes");
  const double l2_31 = nodes[0].l2_time_average.value_or(-1);
  const double l2_61 = nodes[1].l2_time_average.value_or(-1);
  report(6, "time-averaged L2: 61x61 strictly below 31x31",
         l2_61 > 0 && l2_61 < l2_31, fmt("L2(61) = %.4g, L2(31) = %.4g", l2_61, l2_31));

  auto alphas = sweep(base, "alpha_c", {0.5, 1.0, 2.0, 4.0},
                      "/tmp/meshtd_acc_sweeps/alpha");
  bool pass = true;
  for (size_t i = 1; i < alphas.size(); ++i)
    if (alphas[0].l2_time_average.value_or(1e300) >=
        alphas[i].l2_time_average.value_or(-1))
      pass = false;
  report(7, "alpha_c = 0.5 gives the smallest time-averaged L2", pass,
         fmt("L2 = %.4g (0.5), %.4g (1.0), %.4g (2.0)",
             alphas[0].l2_time_average.value_or(-1),
             alphas[1].l2_time_average.value_or(-1),
             alphas[2].l2_time_average.value_or(-1)) +
             fmt(", %.4g (4.0)", alphas[3].l2_time_average.value_or(-1)));
}

// 8) Second-order convergence of the ADE current update.
void criterion_8() {
  const double wp = 2.666e11, w = 2 * pi * 30e9;
  auto err = [&](double gamma, double dt) {
    const double T = 4e-11;
    const long n = std::lround(T / dt);
    const double c1 = (1 - gamma * dt / 2) / (1 + gamma * dt / 2);
    const double c2 = mu0 * dt * wp * wp / (1 + gamma * dt / 2);
    double m = 0.0, e = 0.0;
    for (long q = 0; q < n; ++q) {
      m = c1 * m + c2 * std::sin(w * (q + 0.5) * dt);
      const double t = (q + 1) * dt;
      const double exact = mu0 * wp * wp *
                           (gamma * std::sin(w * t) - w * std::cos(w * t) +
                            w * std::exp(-gamma * t)) /
                           (gamma * gamma + w * w);
      e = std::max(e, std::abs(m - exact));
    }
    return e;
  };
  const double dt = 8.339102379953802e-13;
  const double r0 = err(0.0, dt) / err(0.0, dt / 2);
  const double r1 = err(2e9, dt) / err(2e9, dt / 2);
  report(8, "ADE current update halving ratio at least 3.5",
         r0 >= 3.5 && r1 >= 3.5,
         fmt("ratio %.2f (lossless), %.2f (gamma = 2e9)", r0, r1));
}

// 10) Long-run stability of the default scenario.
void criterion_10() {
  ScenarioConfig cfg;
  cfg.steps = 3000;
  ScenarioBuild b = build_scenario(cfg);
  TmState st = TmState::zeros(b.coeffs.n_e, b.coeffs.n_h);
  RunRecord rec = run(st, b.coeffs, &b.source, cfg.steps, {});
  const long src_era =
      std::lround(std::ceil(b.source.signal.active_duration() / b.dt));
  double era_max = 0.0, overall = 0.0;
  for (long q = 0; q < cfg.steps; ++q) {
    overall = std::max(overall, rec.max_abs_ez[q]);
    if (q < src_era) era_max = std::max(era_max, rec.max_abs_ez[q]);
  }
  report(10, "3000-step run bounded by 10x the source-era maximum",
         overall <= 10.0 * era_max,
         fmt("ratio %.3f, final max |E_z| %.3g", overall / era_max,
             rec.max_abs_ez.back()));
}

// 11) Determinism across worker counts.
void criterion_11() {
  auto run_with = [&](int workers, const std::string &dir) {
    ScenarioConfig cfg;
    cfg.steps = 200;
    cfg.workers = workers;
    cfg.reference_enabled = true;
    cfg.output_dir = dir;
    fs::remove_all(dir);
    run_scenario(cfg);
  };
  run_with(1, "/tmp/meshtd_acc_det1");
  run_with(4, "/tmp/meshtd_acc_det4");
  bool pass = true;
  int compared = 0;
  for (const auto &e : fs::directory_iterator("/tmp/meshtd_acc_det1")) {
    if (e.path().extension() != ".csv") continue;
    ++compared;
    if (slurp(e.path()) !=
        slurp(fs::path("/tmp/meshtd_acc_det4") / e.path().filename()))
      pass = false;
  }
  report(11, "byte-identical CSV outputs across worker counts",
         pass && compared >= 2, fmt("%g files compared", compared));
}

}  // namespace

int main() {
  std::printf("acceptance suite (default scenario: 0.03 m x 0.03 m, 61x61 "
              "nodes, 3-layer PML, 30 GHz source)\n");
  criterion_1();
  criterion_2();
  from_suite(3, "shape-function delta property within 1e-8", "delta");
  from_suite(4, "derivative rows match finite differences to 1e-5", "derivative");
  from_suite(5, "PML efficacy within 1e-2 of the enlarged domain", "pml");
  criteria_6_7();
  criterion_8();
  from_suite(9, "z-invariant 3D run matches 2D TM to 1e-10", "3d-2d");
  criterion_10();
  criterion_11();
  std::printf(failures == 0 ? "all criteria passed\n"
                            : "%d criterion(s) failed\n",
              failures);
  return failures == 0 ? 0 : 1;
}
