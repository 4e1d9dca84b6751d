// Scenario runner for the dispersive meshless time-domain solver.
//
// Subcommands: run, sweep, validate, compare-fdtd.
// Exit codes: 0 success, 1 validation failure, 2 config error,
//             3 numerical abort.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "meshtd/scenario.hpp"
#include "meshtd/validate.hpp"

using namespace meshtd;

namespace {

ScenarioConfig load_config(const std::string &path) {
  if (path.empty()) return ScenarioConfig{};
  return ScenarioConfig::from_file(path);
}

std::vector<double> parse_values(const std::string &csv) {
  std::vector<double> out;
  std::istringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

void apply_overrides(ScenarioConfig &cfg, const std::string &out_dir,
                     long steps, const std::string &snapshot_times) {
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (steps >= 0) cfg.steps = steps;
  if (!snapshot_times.empty()) cfg.snapshot_times_s = parse_values(snapshot_times);
}

int report_config_error(const ConfigError &e) {
  std::fprintf(stderr, "config error:\n");
  for (const auto &v : e.violations)
    std::fprintf(stderr, "  - %s\n", v.c_str());
  return 2;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"dispersive RBF meshless time-domain solver"};
  app.require_subcommand(1);

  std::string config_path, out_dir, snapshot_times;
  long steps = -1;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--config", config_path, "scenario config file (INI)");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--steps", steps, "override run.steps");
    cmd->add_option("--snapshot-times", snapshot_times,
                    "comma-separated snapshot times in seconds");
  };

  auto *cmd_run = app.add_subcommand("run", "run one scenario");
  add_common(cmd_run);

  auto *cmd_sweep = app.add_subcommand("sweep", "run a parameter sweep");
  add_common(cmd_sweep);
  std::string param, values_csv;
  cmd_sweep->add_option("--param", param,
                        "nodes_per_axis | alpha_c | dt_divisor | stencil_size")
      ->required();
  cmd_sweep->add_option("--values", values_csv, "comma-separated values")
      ->required();

  auto *cmd_validate = app.add_subcommand("validate", "run invariant suites");
  std::string suite = "all";
  std::string report_path;
  cmd_validate->add_option("--suite", suite,
                           "delta | derivative | pml | free-space | 3d-2d | "
                           "oracle | all");
  cmd_validate->add_option("--report", report_path, "write a JSON report here");

  auto *cmd_cmp = app.add_subcommand(
      "compare-fdtd", "run the scenario against the FDTD reference");
  add_common(cmd_cmp);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed() || cmd_cmp->parsed()) {
      ScenarioConfig cfg;
      try {
        cfg = load_config(config_path);
        apply_overrides(cfg, out_dir, steps, snapshot_times);
        if (cmd_cmp->parsed()) cfg.reference_enabled = true;
        cfg.validate_or_throw();
      } catch (const ConfigError &e) {
        return report_config_error(e);
      }
      RunOutput out = run_scenario(cfg);
      std::printf("wrote %s (%ld steps, dt = %.6g s, wall %.2f s, rss %ld kB)\n",
                  out.directory.c_str(), out.steps, out.dt, out.wall_seconds,
                  out.peak_rss_kb);
      if (out.l2_time_average)
        std::printf("time-averaged image-plane L2: %.6g\n", *out.l2_time_average);
      if (out.focal_best && out.focal_best->formed) {
        std::printf("foci: inside y = %.6g m, beyond y = %.6g m (best instant t = %.6g s)\n",
                    out.focal_best->inside_position,
                    out.focal_best->beyond_position, out.focal_best_time);
      }
      return 0;
    }

    if (cmd_sweep->parsed()) {
      ScenarioConfig cfg;
      std::vector<double> values;
      try {
        cfg = load_config(config_path);
        apply_overrides(cfg, out_dir, steps, snapshot_times);
        values = parse_values(values_csv);
        cfg.validate_or_throw();
      } catch (const ConfigError &e) {
        return report_config_error(e);
      } catch (const std::exception &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
      }
      auto outs = sweep(cfg, param, values);
      for (size_t i = 0; i < outs.size(); ++i)
        std::printf("%s = %.6g -> L2 = %.6g (%s)\n", param.c_str(), values[i],
                    outs[i].l2_time_average.value_or(0.0),
                    outs[i].directory.c_str());
      return 0;
    }

    if (cmd_validate->parsed()) {
      auto results = run_validation(suite);
      bool ok = true;
      nlohmann::json doc = nlohmann::json::array();
      for (const auto &r : results) {
        ok = ok && r.passed;
        std::printf("[%s] %-45s %s (measured %.3g, threshold %.3g)\n",
                    r.suite.c_str(), r.name.c_str(),
                    r.passed ? "PASS" : "FAIL", r.measured, r.threshold);
        doc.push_back({{"suite", r.suite},
                       {"name", r.name},
                       {"passed", r.passed},
                       {"measured", r.measured},
                       {"threshold", r.threshold},
                       {"detail", r.detail}});
      }
      if (!report_path.empty()) {
        std::ofstream f(report_path);
        f << doc.dump(2) << "\n";
      }
      return ok ? 0 : 1;
    }
  } catch (const NumericalAbort &e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return 3;
  } catch (const ConfigError &e) {
    return report_config_error(e);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
