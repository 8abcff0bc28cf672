/* Copyright 2026 The LICS Pulse Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "lics/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lics/io.hpp"
#include "lics/parallel.hpp"
#include "lics/propagator.hpp"

namespace lics::cli {

using nlohmann::json;

namespace {

// Rejects any key of `doc` outside `allowed`.
void check_keys(const json& doc, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!doc.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in '" + where + "'");
  }
}

template <class T>
void read_if(const json& doc, const char* key, T& target) {
  if (doc.contains(key)) target = doc.at(key).get<T>();
}

GridSpec parse_grid(const json& doc, const std::string& where) {
  check_keys(doc, where, {"first", "last", "step", "values"});
  GridSpec g;
  read_if(doc, "values", g.values);
  if (g.values.empty()) {
    if (!doc.contains("first") || !doc.contains("last") || !doc.contains("step")) {
      throw ConfigError("'" + where + "' needs 'values' or all of 'first', 'last', 'step'");
    }
    g.first = doc.at("first").get<double>();
    g.last = doc.at("last").get<double>();
    g.step = doc.at("step").get<double>();
  }
  g.resolve();
  return g;
}

json grid_spec_json(const GridSpec& g) {
  if (!g.values.empty()) return json{{"values", g.values}};
  return json{{"first", g.first}, {"last", g.last}, {"step", g.step}};
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string render(const std::function<void(std::ostream&)>& writer) {
  std::ostringstream ss;
  writer(ss);
  return ss.str();
}

struct Context {
  RunConfig config;
  std::filesystem::path out_dir;
  int jobs = 1;
  std::string command;
  std::vector<std::string> files;

  void write(const std::string& name, const std::string& text) {
    save_text((out_dir / name).string(), text);
    files.push_back(name);
  }

  void write_manifest() {
    json manifest{{"tool", "lics"},
                  {"version", kToolVersion},
                  {"command", command},
                  {"seed", config.seed},
                  {"config", config.to_json()},
                  {"files", files}};
    save_text((out_dir / "manifest.json").string(), manifest.dump(2) + "\n");
  }
};

OptimalSweepOptions sweep_options(const Context& ctx) {
  OptimalSweepOptions o;
  o.n_intervals = ctx.config.n_intervals;
  o.optimizer = ctx.config.optimizer;
  o.optimizer.substeps = ctx.config.substeps;
  o.optimizer.record_history = false;
  o.jobs = 1;
  return o;
}

ControlGrid protocol_grid(Context& ctx, std::ostream& out) {
  const auto& cfg = ctx.config;
  const auto& p = cfg.protocol;
  const double A = cfg.system.A;
  if (p.kind == "sincos") {
    return sample_onto_grid(sincos_envelope(A, p.duration), cfg.n_intervals, A);
  }
  if (p.kind == "gaussian") {
    const Envelope env = gaussian_envelope(A, p.width, p.half_delay);
    return sample_onto_grid(env, gaussian_intervals(env.duration, cfg.baseline), A);
  }
  if (p.kind == "file") {
    if (p.file.empty()) throw ConfigError("protocol 'file' needs a pulse file");
    return load_grid_file(p.file);
  }
  if (p.kind == "optimal") {
    auto opts = sweep_options(ctx);
    const auto report = optimize(cfg.system, p.duration, cfg.n_intervals,
                                 default_starts(A, p.duration, cfg.n_intervals), opts.optimizer,
                                 ctx.jobs);
    ctx.write("report.json", report_to_json(report).dump(2) + "\n");
    (void)out;
    return report.grid;
  }
  throw ConfigError("unknown protocol '" + p.kind + "'");
}

int cmd_simulate(Context& ctx, std::ostream& out) {
  const ControlGrid grid = protocol_grid(ctx, out);
  PropagateOptions opts;
  opts.substeps = ctx.config.substeps;
  opts.record = true;
  const auto result = propagate(ctx.config.system, grid, opts);
  ctx.write("trajectory.csv", render([&](std::ostream& s) { write_trajectory_csv(s, result); }));
  ctx.write("controls.csv", render([&](std::ostream& s) { write_grid_csv(s, grid); }));
  ctx.write_manifest();
  out << fixed6(result.efficiency) << '\n';
  return kSuccess;
}

int cmd_optimize(Context& ctx, std::ostream& out) {
  const auto& cfg = ctx.config;
  const double T = cfg.protocol.duration;
  auto opts = sweep_options(ctx);
  opts.optimizer.record_history = true;
  const auto report = optimize(cfg.system, T, cfg.n_intervals,
                               default_starts(cfg.system.A, T, cfg.n_intervals), opts.optimizer,
                               ctx.jobs);
  ctx.write("report.json", report_to_json(report).dump(2) + "\n");
  ctx.write("controls.csv", render([&](std::ostream& s) { write_grid_csv(s, report.grid); }));
  PropagateOptions popts;
  popts.substeps = cfg.substeps;
  popts.record = true;
  const auto traj = propagate(cfg.system, report.grid, popts);
  ctx.write("trajectory.csv", render([&](std::ostream& s) { write_trajectory_csv(s, traj); }));
  const auto structure = detect_structure(report.grid, 1e-3, cfg.system.A);
  json segments;
  for (const auto& [name, segs] : {std::pair{"u1", &structure.u1}, std::pair{"u2", &structure.u2}}) {
    json list = json::array();
    for (const auto& s : *segs) {
      list.push_back({{"kind", std::string(to_string(s.kind))},
                      {"t_start", s.t_start},
                      {"t_end", s.t_end}});
    }
    segments[name] = list;
  }
  ctx.write("structure.json", segments.dump(2) + "\n");
  ctx.write_manifest();
  out << fixed6(report.efficiency) << '\n';
  return kSuccess;
}

int cmd_sweep(Context& ctx, const std::string& kind, std::ostream& out) {
  const auto& cfg = ctx.config;
  SweepResult sweep;
  if (kind == "duration") {
    const auto durations =
        cfg.sweep ? cfg.sweep->resolve() : linear_grid(0.1, 10.0, 0.1);
    auto opts = sweep_options(ctx);
    opts.jobs = ctx.jobs;  // a ladder is sequential; parallelize across its starts
    sweep = optimal_duration_sweep(cfg.system, durations, opts).sweep;
  } else if (kind == "r") {
    const auto values = cfg.sweep ? cfg.sweep->resolve() : linear_grid(0.0, 1.0, 0.05);
    sweep = r_sweep(cfg.system, values, cfg.saturation, sweep_options(ctx), ctx.jobs);
  } else if (kind == "q") {
    const auto values = cfg.sweep ? cfg.sweep->resolve() : linear_grid(-10.0, -1.0, 0.5);
    sweep = fano_sweep(cfg.system, values, cfg.saturation, sweep_options(ctx), ctx.jobs);
  } else if (kind == "sincos") {
    const auto durations = cfg.sweep ? cfg.sweep->resolve() : linear_grid(0.05, 20.0, 0.01);
    sweep = sincos_sweep(cfg.system, durations, cfg.n_intervals, ctx.jobs);
  } else {
    throw ConfigError("unknown sweep kind '" + kind + "' (duration, r, q, sincos)");
  }
  sweep.validate();
  ctx.write("sweep_" + kind + ".csv", render([&](std::ostream& s) { write_sweep_csv(s, sweep); }));
  ctx.write_manifest();
  const std::size_t best = sweep.argmax();
  out << sweep.size() << " points; max " << fixed6(sweep.efficiencies[best]) << " at "
      << sweep.axis_name << " = " << format_number(sweep.axis_values[best]) << '\n';
  return kSuccess;
}

int cmd_robustness(Context& ctx, const std::string& pulse, std::ostream& out) {
  const auto& cfg = ctx.config;
  const std::string file = pulse.empty() ? cfg.protocol.file : pulse;
  if (file.empty()) throw ConfigError("robustness needs --pulse FILE");
  const ControlGrid grid = load_grid_file(file);
  const auto alphas = cfg.alpha ? cfg.alpha->resolve() : linear_grid(0.0, 2.0, 0.05);
  const auto baseline = gaussian_baseline_search(cfg.system, cfg.baseline, ctx.jobs);
  const auto sweep =
      robustness_scan(cfg.system, grid, alphas, baseline.efficiency, cfg.substeps, ctx.jobs);
  ctx.write("robustness.csv", render([&](std::ostream& s) { write_sweep_csv(s, sweep); }));
  ctx.write_manifest();
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    out << format_number(sweep.axis_values[i]) << ' ' << fixed6(sweep.efficiencies[i]) << '\n';
  }
  return kSuccess;
}

int cmd_smooth(Context& ctx, const std::string& pulse, std::size_t factor, std::ostream& out) {
  const auto& cfg = ctx.config;
  const std::string file = pulse.empty() ? cfg.protocol.file : pulse;
  if (file.empty()) throw ConfigError("smooth needs --pulse FILE");
  const ControlGrid grid = load_grid_file(file);
  const ControlGrid smoothed = smooth_controls(grid, factor, cfg.system.A);
  ctx.write("smoothed.csv", render([&](std::ostream& s) { write_grid_csv(s, smoothed); }));
  ctx.write_manifest();
  out << fixed6(efficiency(cfg.system, grid, cfg.substeps)) << ' '
      << fixed6(efficiency(cfg.system, smoothed, cfg.substeps)) << '\n';
  return kSuccess;
}

struct TableCell {
  DetuningMode mode;
  double R;
  std::string R_label;
  std::optional<BaselineResult> gaussian;
  std::optional<std::pair<double, double>> sincos;  // efficiency, AT
  std::optional<SaturationResult> optimal;
  std::vector<std::string> errors;
};

int cmd_table1(Context& ctx, std::ostream& out, std::ostream& err) {
  const auto& cfg = ctx.config;
  std::vector<TableCell> cells;
  for (auto mode : {DetuningMode::Resonant, DetuningMode::DynamicStark}) {
    for (auto [R, label] : {std::pair{0.0, "0"}, std::pair{1.0 / 16, "1/16"},
                            std::pair{0.25, "1/4"}, std::pair{1.0, "1"}}) {
      cells.push_back({mode, R, label, {}, {}, {}, {}});
    }
  }
  const auto durations = cfg.sweep ? cfg.sweep->resolve() : linear_grid(0.05, 20.0, 0.01);
  const auto opts = sweep_options(ctx);
  parallel_for(cells.size(), ctx.jobs, [&](std::size_t i) {
    auto& cell = cells[i];
    SystemConfig system = cfg.system;
    system.detuning_mode = cell.mode;
    system.R = cell.R;
    try {
      cell.gaussian = gaussian_baseline_search(system, cfg.baseline, 1);
    } catch (const std::exception& e) {
      cell.errors.push_back(std::string("gaussian: ") + e.what());
    }
    try {
      const auto sweep = sincos_sweep(system, durations, cfg.n_intervals, 1);
      const std::size_t k = sweep.argmax();
      cell.sincos = std::pair{sweep.efficiencies[k], sweep.axis_values[k]};
    } catch (const std::exception& e) {
      cell.errors.push_back(std::string("sincos: ") + e.what());
    }
    try {
      cell.optimal = saturation_limit(system, cfg.saturation, opts);
    } catch (const std::exception& e) {
      cell.errors.push_back(std::string("optimal: ") + e.what());
    }
  });

  std::ostringstream csv;
  csv << "mode,R,gaussian,gaussian_width,gaussian_half_delay,sincos,sincos_AT,optimal,"
         "optimal_AT,optimal_saturated\n";
  std::ostringstream text;
  char line[256];
  bool any_error = false;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    if (i % 4 == 0) {
      text << (c.mode == DetuningMode::Resonant ? "Resonant (delta = 0)\n"
                                                : "Dynamic Stark (delta from Stark shifts)\n");
      std::snprintf(line, sizeof(line), "%-6s %-28s %-20s %-20s\n", "R", "Gaussian", "Sin-Cos",
                    "Optimal");
      text << line;
    }
    const auto na = std::string("");
    csv << to_string(c.mode) << ',' << c.R_label << ','
        << (c.gaussian ? format_number(c.gaussian->efficiency) : na) << ','
        << (c.gaussian ? format_number(c.gaussian->width) : na) << ','
        << (c.gaussian ? format_number(c.gaussian->half_delay) : na) << ','
        << (c.sincos ? format_number(c.sincos->first) : na) << ','
        << (c.sincos ? format_number(c.sincos->second) : na) << ','
        << (c.optimal ? format_number(c.optimal->efficiency) : na) << ','
        << (c.optimal ? format_number(c.optimal->duration) : na) << ','
        << (c.optimal ? (c.optimal->saturated ? "1" : "0") : na) << '\n';

    const std::string g = c.gaussian ? fixed4(c.gaussian->efficiency) + " (ATg=" +
                                           format_number(c.gaussian->width) + ", Atau=" +
                                           format_number(c.gaussian->half_delay) + ")"
                                     : "error";
    const std::string s = c.sincos ? fixed4(c.sincos->first) + " (AT=" +
                                         format_number(c.sincos->second) + ")"
                                   : "error";
    const std::string o = c.optimal ? fixed4(c.optimal->efficiency) + " (AT=" +
                                          format_number(c.optimal->duration) +
                                          (c.optimal->saturated ? ")" : ", cap)")
                                    : "error";
    std::snprintf(line, sizeof(line), "%-6s %-28s %-20s %-20s\n", c.R_label.c_str(), g.c_str(),
                  s.c_str(), o.c_str());
    text << line;
    if (i % 4 == 3) text << '\n';
    for (const auto& e : c.errors) {
      any_error = true;
      err << "table1 cell (" << to_string(c.mode) << ", R=" << c.R_label << ") " << e << '\n';
    }
  }
  ctx.write("table1.csv", csv.str());
  ctx.write("table1.txt", text.str());
  ctx.write_manifest();
  out << text.str();
  return any_error ? kNumericalError : kSuccess;
}

}  // namespace

std::vector<double> GridSpec::resolve() const {
  if (!values.empty()) return values;
  return linear_grid(first, last, step);
}

json RunConfig::to_json() const {
  json doc;
  doc["system"] = system_to_json(system);
  doc["protocol"] = {{"kind", protocol.kind},
                     {"duration", protocol.duration},
                     {"width", protocol.width},
                     {"half_delay", protocol.half_delay},
                     {"file", protocol.file}};
  doc["numerics"] = {{"n_intervals", n_intervals},
                     {"substeps", substeps},
                     {"max_iterations", optimizer.max_iterations},
                     {"tolerance", optimizer.tolerance},
                     {"method", std::string(lics::to_string(optimizer.method))}};
  doc["baseline"] = {{"width_first", baseline.width_first}, {"width_last", baseline.width_last},
                     {"width_step", baseline.width_step},   {"ratio_first", baseline.ratio_first},
                     {"ratio_last", baseline.ratio_last},   {"ratio_step", baseline.ratio_step},
                     {"max_interval", baseline.max_interval}};
  doc["saturation"] = {{"first", saturation.first},
                       {"step", saturation.step},
                       {"cap", saturation.cap},
                       {"gain_threshold", saturation.gain_threshold},
                       {"window", saturation.window}};
  if (sweep) doc["sweep"] = grid_spec_json(*sweep);
  if (alpha) doc["robustness"] = {{"alpha", grid_spec_json(*alpha)}};
  doc["smoothing"] = {{"factor", smoothing_factor}};
  doc["output"] = output;
  doc["seed"] = seed;
  return doc;
}

RunConfig parse_run_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  check_keys(doc, "config", {"system", "protocol", "numerics", "baseline", "saturation", "sweep",
                             "robustness", "smoothing", "output", "seed"});
  RunConfig cfg;
  try {
    if (doc.contains("system")) cfg.system = system_from_json(doc["system"]);
    if (doc.contains("protocol")) {
      const auto& p = doc["protocol"];
      check_keys(p, "protocol", {"kind", "duration", "width", "half_delay", "file"});
      read_if(p, "kind", cfg.protocol.kind);
      read_if(p, "duration", cfg.protocol.duration);
      read_if(p, "width", cfg.protocol.width);
      read_if(p, "half_delay", cfg.protocol.half_delay);
      read_if(p, "file", cfg.protocol.file);
      const auto& k = cfg.protocol.kind;
      if (k != "sincos" && k != "gaussian" && k != "optimal" && k != "file") {
        throw ConfigError("unknown protocol '" + k + "'");
      }
      if (!(cfg.protocol.duration > 0.0)) throw ConfigError("protocol duration must be > 0");
    }
    if (doc.contains("numerics")) {
      const auto& n = doc["numerics"];
      check_keys(n, "numerics",
                 {"n_intervals", "substeps", "max_iterations", "tolerance", "method"});
      read_if(n, "n_intervals", cfg.n_intervals);
      read_if(n, "substeps", cfg.substeps);
      read_if(n, "max_iterations", cfg.optimizer.max_iterations);
      read_if(n, "tolerance", cfg.optimizer.tolerance);
      if (n.contains("method")) {
        const auto m = n["method"].get<std::string>();
        if (m == "projected_lbfgs") {
          cfg.optimizer.method = AscentMethod::ProjectedLbfgs;
        } else if (m == "projected_gradient") {
          cfg.optimizer.method = AscentMethod::ProjectedGradient;
        } else {
          throw ConfigError("unknown optimizer method '" + m + "'");
        }
      }
      if (cfg.n_intervals < 1) throw ConfigError("n_intervals must be >= 1");
      if (cfg.substeps < 1) throw ConfigError("substeps must be >= 1");
      if (cfg.optimizer.max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
    }
    if (doc.contains("baseline")) {
      const auto& b = doc["baseline"];
      check_keys(b, "baseline", {"width_first", "width_last", "width_step", "ratio_first",
                                 "ratio_last", "ratio_step", "max_interval"});
      read_if(b, "width_first", cfg.baseline.width_first);
      read_if(b, "width_last", cfg.baseline.width_last);
      read_if(b, "width_step", cfg.baseline.width_step);
      read_if(b, "ratio_first", cfg.baseline.ratio_first);
      read_if(b, "ratio_last", cfg.baseline.ratio_last);
      read_if(b, "ratio_step", cfg.baseline.ratio_step);
      read_if(b, "max_interval", cfg.baseline.max_interval);
    }
    if (doc.contains("saturation")) {
      const auto& s = doc["saturation"];
      check_keys(s, "saturation", {"first", "step", "cap", "gain_threshold", "window"});
      read_if(s, "first", cfg.saturation.first);
      read_if(s, "step", cfg.saturation.step);
      read_if(s, "cap", cfg.saturation.cap);
      read_if(s, "gain_threshold", cfg.saturation.gain_threshold);
      read_if(s, "window", cfg.saturation.window);
    }
    if (doc.contains("sweep")) cfg.sweep = parse_grid(doc["sweep"], "sweep");
    if (doc.contains("robustness")) {
      check_keys(doc["robustness"], "robustness", {"alpha"});
      if (doc["robustness"].contains("alpha")) {
        cfg.alpha = parse_grid(doc["robustness"]["alpha"], "robustness.alpha");
      }
    }
    if (doc.contains("smoothing")) {
      check_keys(doc["smoothing"], "smoothing", {"factor"});
      read_if(doc["smoothing"], "factor", cfg.smoothing_factor);
    }
    read_if(doc, "output", cfg.output);
    read_if(doc, "seed", cfg.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_run_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pulse design for population transfer through a laser-induced continuum"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::string out_dir;
  int jobs = 0;
  std::optional<unsigned> seed;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--jobs", jobs, "worker threads (0 = all cores)");
  app.add_option("--seed", seed, "seed recorded in the manifest");

  auto* simulate = app.add_subcommand("simulate", "propagate one protocol and print the efficiency");
  std::string protocol;
  std::optional<double> duration;
  std::string pulse;
  simulate->add_option("--protocol", protocol, "gaussian | sincos | optimal | file");
  simulate->add_option("--duration", duration, "normalized duration AT");
  simulate->add_option("--pulse", pulse, "control file for protocol 'file'");

  auto* optimize_cmd = app.add_subcommand("optimize", "optimize controls for a fixed duration");
  optimize_cmd->add_option("--duration", duration, "normalized duration AT");

  auto* sweep = app.add_subcommand("sweep", "duration, R, q or sin-cos sweep");
  std::string kind;
  sweep->add_option("kind", kind, "duration | r | q | sincos")->required();

  auto* robustness = app.add_subcommand("robustness", "efficiency of distorted pulses");
  std::string alpha_list;
  robustness->add_option("--pulse", pulse, "control file (CSV or JSON)");
  robustness->add_option("--alpha", alpha_list, "comma-separated distortion values");

  auto* table1 = app.add_subcommand("table1", "Gaussian, sin-cos and optimal maxima for 8 cells");
  (void)table1;

  auto* smooth = app.add_subcommand("smooth", "undersample and spline-interpolate a pulse");
  std::size_t factor = 0;
  smooth->add_option("--pulse", pulse, "control file (CSV or JSON)");
  smooth->add_option("--factor", factor, "undersampling factor");

  std::vector<const char*> argv{"lics"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  Context ctx;
  try {
    if (!config_path.empty()) ctx.config = load_run_config(config_path);
    auto& cfg = ctx.config;
    if (!protocol.empty()) cfg.protocol.kind = protocol;
    if (duration) {
      if (!(*duration > 0.0)) throw ConfigError("--duration must be > 0");
      cfg.protocol.duration = *duration;
    }
    if (!pulse.empty() && *simulate) {
      cfg.protocol.file = pulse;
      if (protocol.empty()) cfg.protocol.kind = "file";
    }
    if (seed) cfg.seed = *seed;
    if (!out_dir.empty()) cfg.output = out_dir;
    if (!alpha_list.empty()) {
      GridSpec g;
      std::stringstream ss(alpha_list);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          g.values.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw ConfigError("--alpha: not a number: '" + item + "'");
        }
      }
      std::sort(g.values.begin(), g.values.end());
      g.values.erase(std::unique(g.values.begin(), g.values.end()), g.values.end());
      cfg.alpha = g;
    }
    if (factor != 0) cfg.smoothing_factor = factor;
    cfg.system.validate();
    ctx.jobs = jobs <= 0 ? available_jobs() : jobs;
    ctx.out_dir = cfg.output;
    std::error_code ec;
    std::filesystem::create_directories(ctx.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + cfg.output + "'");

    if (*simulate) {
      ctx.command = "simulate";
      return cmd_simulate(ctx, out);
    }
    if (*optimize_cmd) {
      ctx.command = "optimize";
      return cmd_optimize(ctx, out);
    }
    if (*sweep) {
      ctx.command = "sweep " + kind;
      return cmd_sweep(ctx, kind, out);
    }
    if (*robustness) {
      ctx.command = "robustness";
      return cmd_robustness(ctx, pulse, out);
    }
    if (*smooth) {
      ctx.command = "smooth";
      return cmd_smooth(ctx, pulse, cfg.smoothing_factor, out);
    }
    ctx.command = "table1";
    return cmd_table1(ctx, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace lics::cli
