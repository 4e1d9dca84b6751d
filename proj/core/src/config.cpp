#include "meshtd/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace meshtd {

ConfigError::ConfigError(std::vector<std::string> v)
    : std::runtime_error(v.empty() ? "invalid config" : v.front() +
                         (v.size() > 1 ? " (+" + std::to_string(v.size() - 1) +
                                             " more)"
                                       : "")),
      violations(std::move(v)) {}

AlphaNormalization ScenarioConfig::alpha_normalization() const {
  return normalization == "support" ? AlphaNormalization::Support
                                    : AlphaNormalization::Spacing;
}

std::vector<std::string> ScenarioConfig::validate() const {
  std::vector<std::string> v;
  auto bad = [&](const std::string &m) { v.push_back(m); };
  if (extent_x_m <= 0) bad("domain.extent_x_m must be positive");
  if (extent_y_m <= 0) bad("domain.extent_y_m must be positive");
  if (nodes_x < 2) bad("domain.nodes_x must be at least 2");
  if (nodes_y < 2) bad("domain.nodes_y must be at least 2");
  if (pml_layers < 0) bad("pml.layers must be non-negative");
  if (nodes_x >= 2 && nodes_y >= 2 &&
      2 * pml_layers >= std::min(nodes_x, nodes_y))
    bad("pml.layers would consume the whole domain");
  if (grading_order < 0) bad("pml.grading_order must be non-negative");
  if (!(reflection_coeff > 0 && reflection_coeff < 1))
    bad("pml.reflection_coeff must be in (0,1)");
  if (slab_enabled) {
    if (slab_thickness_m <= 0) bad("slab.thickness_m must be positive");
    if (slab_front_m - slab_thickness_m < 0 || slab_front_m > extent_y_m)
      bad("slab must lie inside the domain");
    if (plasma_freq_rad_s < 0) bad("slab.plasma_freq_rad_s must be >= 0");
    if (collision_freq_hz < 0) bad("slab.collision_freq_hz must be >= 0");
  }
  if (frequency_hz <= 0) bad("source.frequency_hz must be positive");
  if (turn_on_cycles < 0) bad("source.turn_on_cycles must be >= 0");
  if (hold_cycles < 0) bad("source.hold_cycles must be >= 0");
  if (source_x_m < 0 || source_x_m > extent_x_m || source_y_m < 0 ||
      source_y_m > extent_y_m)
    bad("source position must lie inside the domain");
  if (injection_rate_hz <= 0) bad("source.injection_rate_hz must be positive");
  if (source_radius_nodes < 0) bad("source.radius_nodes must be >= 0");
  if (alpha_c <= 0) bad("rbf.alpha_c must be positive");
  if (!global_stencil && (stencil_size < 4 || stencil_size > 64))
    bad("rbf.stencil_size must be in [4, 64]");
  if (normalization != "spacing" && normalization != "support")
    bad("rbf.normalization must be 'spacing' or 'support'");
  if (dt_divisor < 1) bad("run.dt_divisor below 1 violates the stability bound");
  if (steps < 0) bad("run.steps must be >= 0");
  if (workers < 1) bad("run.workers must be >= 1");
  for (double t : snapshot_times_s)
    if (t < 0) bad("run.snapshot_times_s must be non-negative");
  if (cells_per_wavelength < 4)
    bad("reference.cells_per_wavelength must be at least 4");
  if (!(courant_factor > 0 && courant_factor <= 1))
    bad("reference.courant_factor must be in (0,1]");
  if (!(gate_fraction >= 0 && gate_fraction < 1))
    bad("reference.gate_fraction must be in [0,1)");
  if (output_dir.empty()) bad("output.directory must not be empty");
  return v;
}

void ScenarioConfig::validate_or_throw() const {
  auto v = validate();
  if (!v.empty()) throw ConfigError(std::move(v));
}

static std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string ScenarioConfig::to_ini() const {
  std::ostringstream o;
  o << "[domain]\n";
  o << "extent_x_m = " << fmt(extent_x_m) << "\n";
  o << "extent_y_m = " << fmt(extent_y_m) << "\n";
  o << "nodes_x = " << nodes_x << "\n";
  o << "nodes_y = " << nodes_y << "\n";
  o << "\n[pml]\n";
  o << "layers = " << pml_layers << "\n";
  o << "grading_order = " << grading_order << "\n";
  o << "reflection_coeff = " << fmt(reflection_coeff) << "\n";
  o << "\n[slab]\n";
  o << "enabled = " << (slab_enabled ? "true" : "false") << "\n";
  o << "front_m = " << fmt(slab_front_m) << "\n";
  o << "thickness_m = " << fmt(slab_thickness_m) << "\n";
  o << "plasma_freq_rad_s = " << fmt(plasma_freq_rad_s) << "\n";
  o << "collision_freq_hz = " << fmt(collision_freq_hz) << "\n";
  o << "\n[source]\n";
  o << "frequency_hz = " << fmt(frequency_hz) << "\n";
  o << "turn_on_cycles = " << turn_on_cycles << "\n";
  o << "hold_cycles = " << hold_cycles << "\n";
  o << "amplitude_v_m = " << fmt(amplitude_v_m) << "\n";
  o << "x_m = " << fmt(source_x_m) << "\n";
  o << "y_m = " << fmt(source_y_m) << "\n";
  o << "injection_rate_hz = " << fmt(injection_rate_hz) << "\n";
  o << "radius_nodes = " << fmt(source_radius_nodes) << "\n";
  o << "\n[rbf]\n";
  o << "alpha_c = " << fmt(alpha_c) << "\n";
  o << "stencil_size = " << stencil_size << "\n";
  o << "normalization = " << normalization << "\n";
  o << "global_stencil = " << (global_stencil ? "true" : "false") << "\n";
  o << "\n[run]\n";
  o << "dt_divisor = " << fmt(dt_divisor) << "\n";
  o << "steps = " << steps << "\n";
  o << "snapshot_times_s = ";
  for (size_t i = 0; i < snapshot_times_s.size(); ++i)
    o << (i ? "," : "") << fmt(snapshot_times_s[i]);
  o << "\n";
  o << "workers = " << workers << "\n";
  o << "seed = " << seed << "\n";
  o << "\n[probes]\n";
  o << "points = ";
  for (size_t i = 0; i < probe_points_m.size(); ++i)
    o << (i ? ";" : "") << fmt(probe_points_m[i][0]) << ":"
      << fmt(probe_points_m[i][1]);
  o << "\n";
  o << "\n[reference]\n";
  o << "enabled = " << (reference_enabled ? "true" : "false") << "\n";
  o << "cells_per_wavelength = " << cells_per_wavelength << "\n";
  o << "courant_factor = " << fmt(courant_factor) << "\n";
  o << "gate_fraction = " << fmt(gate_fraction) << "\n";
  o << "\n[output]\n";
  o << "directory = " << output_dir << "\n";
  return o.str();
}

namespace {

struct IniMap {
  std::map<std::string, std::string> kv;  // "section.key" -> value
  bool has(const std::string &k) const { return kv.count(k) > 0; }
  std::string get(const std::string &k) const { return kv.at(k); }
};

IniMap parse_ini(const std::string &text, std::vector<std::string> &errors) {
  IniMap m;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto l = line.find_first_not_of(" \t\r");
    if (l == std::string::npos) continue;
    auto r = line.find_last_not_of(" \t\r");
    line = line.substr(l, r - l + 1);
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back("line " + std::to_string(lineno) + ": bad section");
        continue;
      }
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    auto trim = [](std::string &s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
    };
    trim(key);
    trim(val);
    m.kv[section + "." + key] = val;
  }
  return m;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_ini(const std::string &text) {
  std::vector<std::string> errors;
  IniMap m = parse_ini(text, errors);
  ScenarioConfig c;

  auto getd = [&](const char *k, double &out) {
    if (!m.has(k)) return;
    try {
      out = std::stod(m.get(k));
    } catch (...) {
      errors.push_back(std::string(k) + ": not a number");
    }
  };
  auto geti = [&](const char *k, int &out) {
    if (!m.has(k)) return;
    try {
      out = std::stoi(m.get(k));
    } catch (...) {
      errors.push_back(std::string(k) + ": not an integer");
    }
  };
  auto getl = [&](const char *k, long &out) {
    if (!m.has(k)) return;
    try {
      out = std::stol(m.get(k));
    } catch (...) {
      errors.push_back(std::string(k) + ": not an integer");
    }
  };
  auto getb = [&](const char *k, bool &out) {
    if (!m.has(k)) return;
    const std::string v = m.get(k);
    if (v == "true" || v == "1")
      out = true;
    else if (v == "false" || v == "0")
      out = false;
    else
      errors.push_back(std::string(k) + ": not a boolean");
  };
  auto gets = [&](const char *k, std::string &out) {
    if (m.has(k)) out = m.get(k);
  };

  getd("domain.extent_x_m", c.extent_x_m);
  getd("domain.extent_y_m", c.extent_y_m);
  geti("domain.nodes_x", c.nodes_x);
  geti("domain.nodes_y", c.nodes_y);
  geti("pml.layers", c.pml_layers);
  geti("pml.grading_order", c.grading_order);
  getd("pml.reflection_coeff", c.reflection_coeff);
  getb("slab.enabled", c.slab_enabled);
  getd("slab.front_m", c.slab_front_m);
  getd("slab.thickness_m", c.slab_thickness_m);
  getd("slab.plasma_freq_rad_s", c.plasma_freq_rad_s);
  getd("slab.collision_freq_hz", c.collision_freq_hz);
  getd("source.frequency_hz", c.frequency_hz);
  geti("source.turn_on_cycles", c.turn_on_cycles);
  geti("source.hold_cycles", c.hold_cycles);
  getd("source.amplitude_v_m", c.amplitude_v_m);
  getd("source.x_m", c.source_x_m);
  getd("source.y_m", c.source_y_m);
  getd("source.injection_rate_hz", c.injection_rate_hz);
  getd("source.radius_nodes", c.source_radius_nodes);
  getd("rbf.alpha_c", c.alpha_c);
  geti("rbf.stencil_size", c.stencil_size);
  gets("rbf.normalization", c.normalization);
  getb("rbf.global_stencil", c.global_stencil);
  getd("run.dt_divisor", c.dt_divisor);
  getl("run.steps", c.steps);
  geti("run.workers", c.workers);
  if (m.has("run.seed")) c.seed = static_cast<unsigned>(std::stoul(m.get("run.seed")));
  if (m.has("run.snapshot_times_s")) {
    c.snapshot_times_s.clear();
    std::istringstream ss(m.get("run.snapshot_times_s"));
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) {
        try {
          c.snapshot_times_s.push_back(std::stod(tok));
        } catch (...) {
          errors.push_back("run.snapshot_times_s: not a number: " + tok);
        }
      }
  }
  if (m.has("probes.points")) {
    c.probe_points_m.clear();
    std::istringstream ss(m.get("probes.points"));
    std::string tok;
    while (std::getline(ss, tok, ';')) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) {
        errors.push_back("probes.points: expected x:y pair: " + tok);
        continue;
      }
      try {
        c.probe_points_m.push_back(
            {std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1))});
      } catch (...) {
        errors.push_back("probes.points: not numbers: " + tok);
      }
    }
  }
  getb("reference.enabled", c.reference_enabled);
  geti("reference.cells_per_wavelength", c.cells_per_wavelength);
  getd("reference.courant_factor", c.courant_factor);
  getd("reference.gate_fraction", c.gate_fraction);
  gets("output.directory", c.output_dir);

  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

ScenarioConfig ScenarioConfig::from_file(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw ConfigError({"cannot open config file: " + path});
  std::ostringstream ss;
  ss << f.rdbuf();
  return from_ini(ss.str());
}

void ScenarioConfig::save(const std::string &path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << to_ini();
}

}  // namespace meshtd
