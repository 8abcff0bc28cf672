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

#include "lics/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <gsl/gsl_spline.h>

#include "lics/io.hpp"
#include "lics/parallel.hpp"

namespace lics {

std::size_t SweepResult::argmax() const {
  if (efficiencies.empty()) throw ConfigError("empty sweep");
  return static_cast<std::size_t>(std::max_element(efficiencies.begin(), efficiencies.end()) -
                                  efficiencies.begin());
}

double SweepResult::max() const { return efficiencies[argmax()]; }

void SweepResult::validate() const {
  if (axis_values.size() != efficiencies.size()) throw ConfigError("sweep columns differ in length");
  if (!metadata.empty() && metadata.size() != axis_values.size()) {
    throw ConfigError("sweep metadata rows differ from axis length");
  }
  for (std::size_t i = 1; i < axis_values.size(); ++i) {
    if (!(axis_values[i] > axis_values[i - 1])) throw ConfigError("sweep axis not increasing");
  }
  for (double e : efficiencies) {
    if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("sweep efficiency outside [0, 1]");
  }
}

std::vector<double> linear_grid(double first, double last, double step) {
  if (!(step > 0.0)) throw ConfigError("grid step must be > 0");
  if (last < first) throw ConfigError("grid end before start");
  const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 0.01)) + 1;
  std::vector<double> out(count);
  // Multiplying avoids the drift of repeated addition; snapping to 12
  // significant digits turns 1.1800000000000002 back into 1.18.
  char buf[32];
  for (std::size_t i = 0; i < count; ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g", first + static_cast<double>(i) * step);
    out[i] = std::strtod(buf, nullptr);
  }
  return out;
}

namespace {

void require_increasing(const std::vector<double>& values, const char* what) {
  if (values.empty()) throw ConfigError(std::string(what) + " grid is empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw ConfigError(std::string(what) + " grid must be strictly increasing");
    }
  }
}

}  // namespace

std::size_t gaussian_intervals(double window, const BaselineOptions& options) {
  const auto n = static_cast<std::size_t>(std::ceil(window / options.max_interval));
  return std::max(options.min_intervals, n);
}

double gaussian_efficiency(const SystemConfig& config, double width, double half_delay,
                           const BaselineOptions& options) {
  const Envelope env = gaussian_envelope(config.A, width, half_delay);
  const ControlGrid grid =
      sample_onto_grid(env, gaussian_intervals(env.duration, options), config.A);
  return efficiency(config, grid, options.substeps);
}

BaselineResult gaussian_baseline_search(const SystemConfig& config,
                                        const BaselineOptions& options, int jobs) {
  config.validate();
  const auto widths = linear_grid(options.width_first, options.width_last, options.width_step);
  const auto ratios = linear_grid(options.ratio_first, options.ratio_last, options.ratio_step);
  const std::size_t nr = ratios.size();
  std::vector<double> values(widths.size() * nr);
  parallel_for(values.size(), jobs, [&](std::size_t i) {
    const double w = widths[i / nr];
    values[i] = gaussian_efficiency(config, w, ratios[i % nr] * w, options);
  });

  // Row-major (width, ratio) order with strict improvement gives the tie rule.
  BaselineResult best;
  best.efficiency = -1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > best.efficiency) {
      const double w = widths[i / nr];
      best = {values[i], w, ratios[i % nr] * w};
    }
  }
  return best;
}

SweepResult sincos_sweep(const SystemConfig& config, const std::vector<double>& durations,
                         std::size_t n_intervals, int jobs) {
  config.validate();
  require_increasing(durations, "duration");
  SweepResult out;
  out.axis_name = "AT";
  out.axis_values = durations;
  out.efficiencies.resize(durations.size());
  parallel_for(durations.size(), jobs, [&](std::size_t i) {
    const ControlGrid grid =
        sample_onto_grid(sincos_envelope(config.A, durations[i]), n_intervals, config.A);
    out.efficiencies[i] = efficiency(config, grid);
  });
  return out;
}

namespace {

// One step of a warm-started duration ladder.
OptimizationReport ladder_step(const SystemConfig& config, double duration,
                               const OptimizationReport* previous,
                               const OptimalSweepOptions& options) {
  std::vector<Start> starts;
  if (options.standard_starts || previous == nullptr) {
    starts = default_starts(config.A, duration, options.n_intervals);
  }
  if (previous != nullptr) {
    starts.push_back({"warm_dilated", dilate(previous->grid, duration)});
    starts.push_back(
        {"warm_padded", pad_with_zeros(previous->grid, duration, options.n_intervals)});
  }
  return optimize(config, duration, options.n_intervals, starts, options.optimizer,
                  options.jobs);
}

void append_point(SweepResult& sweep, double axis, const OptimizationReport& report) {
  sweep.axis_values.push_back(axis);
  sweep.efficiencies.push_back(report.efficiency);
  sweep.metadata.push_back({report.start_label, std::to_string(report.iterations),
                            format_number(report.projected_gradient_norm),
                            report.converged ? "1" : "0"});
}

const std::vector<std::string> kLadderColumns = {"start", "iterations", "projected_gradient",
                                                 "converged"};

}  // namespace

OptimalSweep optimal_duration_sweep(const SystemConfig& config,
                                    const std::vector<double>& durations,
                                    const OptimalSweepOptions& options) {
  config.validate();
  require_increasing(durations, "duration");
  OptimalSweep out;
  out.sweep.axis_name = "AT";
  out.sweep.metadata_names = kLadderColumns;
  for (double duration : durations) {
    const OptimizationReport* previous = out.reports.empty() ? nullptr : &out.reports.back();
    out.reports.push_back(ladder_step(config, duration, previous, options));
    append_point(out.sweep, duration, out.reports.back());
  }
  return out;
}

SaturationResult saturation_limit(const SystemConfig& config, const SaturationOptions& saturation,
                                  const OptimalSweepOptions& options) {
  config.validate();
  if (!(saturation.step > 0.0) || !(saturation.first > 0.0) || saturation.window < 1) {
    throw ConfigError("invalid saturation ladder settings");
  }
  SaturationResult out;
  out.ladder.axis_name = "AT";
  out.ladder.metadata_names = kLadderColumns;
  const auto durations = linear_grid(saturation.first, saturation.cap, saturation.step);
  std::optional<OptimizationReport> previous;
  for (std::size_t i = 0; i < durations.size(); ++i) {
    OptimizationReport report =
        ladder_step(config, durations[i], previous ? &*previous : nullptr, options);
    append_point(out.ladder, durations[i], report);
    previous = std::move(report);
    const auto w = static_cast<std::size_t>(saturation.window);
    if (i >= w) {
      const double gain = out.ladder.efficiencies[i] - out.ladder.efficiencies[i - w];
      if (gain < saturation.gain_threshold) {
        out.saturated = true;
        break;
      }
    }
  }
  out.efficiency = out.ladder.efficiencies.back();
  out.duration = out.ladder.axis_values.back();
  out.best = std::move(*previous);
  return out;
}

namespace {

SweepResult saturation_sweep(const char* axis, const std::vector<SystemConfig>& configs,
                             const std::vector<double>& axis_values,
                             const SaturationOptions& saturation,
                             const OptimalSweepOptions& options, int jobs) {
  std::vector<SaturationResult> results(configs.size());
  parallel_for(configs.size(), jobs, [&](std::size_t i) {
    results[i] = saturation_limit(configs[i], saturation, options);
  });
  SweepResult out;
  out.axis_name = axis;
  out.axis_values = axis_values;
  out.metadata_names = {"AT_reached", "saturated", "start"};
  for (const auto& r : results) {
    out.efficiencies.push_back(r.efficiency);
    out.metadata.push_back(
        {format_number(r.duration), r.saturated ? "1" : "0", r.best.start_label});
  }
  return out;
}

}  // namespace

SweepResult r_sweep(const SystemConfig& base, const std::vector<double>& R_values,
                    const SaturationOptions& saturation, const OptimalSweepOptions& options,
                    int jobs) {
  require_increasing(R_values, "R");
  std::vector<SystemConfig> configs;
  for (double R : R_values) {
    SystemConfig c = base;
    c.R = R;
    c.validate();
    configs.push_back(c);
  }
  return saturation_sweep("R", configs, R_values, saturation, options, jobs);
}

SweepResult fano_sweep(const SystemConfig& base, const std::vector<double>& q_values,
                       const SaturationOptions& saturation, const OptimalSweepOptions& options,
                       int jobs) {
  require_increasing(q_values, "q");
  std::vector<SystemConfig> configs;
  for (double q : q_values) {
    SystemConfig c = base;
    c.q = q;
    c.validate();
    configs.push_back(c);
  }
  return saturation_sweep("q", configs, q_values, saturation, options, jobs);
}

namespace {

std::vector<double> spline_resample(const std::vector<double>& values, std::size_t factor) {
  const std::size_t n = values.size();
  std::vector<double> knots_x;
  std::vector<double> knots_y;
  for (std::size_t k = 0; k < n; k += factor) {
    knots_x.push_back(static_cast<double>(k));
    knots_y.push_back(values[k]);
  }
  if (knots_x.back() != static_cast<double>(n - 1)) {
    knots_x.push_back(static_cast<double>(n - 1));
    knots_y.push_back(values[n - 1]);
  }
  std::vector<double> out(n);
  if (knots_x.size() == 2) {
    // Natural spline through two knots is the chord.
    const double slope = (knots_y[1] - knots_y[0]) / (knots_x[1] - knots_x[0]);
    for (std::size_t k = 0; k < n; ++k) out[k] = knots_y[0] + slope * static_cast<double>(k);
    return out;
  }
  gsl_interp_accel* accel = gsl_interp_accel_alloc();
  gsl_spline* spline = gsl_spline_alloc(gsl_interp_cspline, knots_x.size());
  gsl_spline_init(spline, knots_x.data(), knots_y.data(), knots_x.size());
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = gsl_spline_eval(spline, static_cast<double>(k), accel);
  }
  gsl_spline_free(spline);
  gsl_interp_accel_free(accel);
  return out;
}

}  // namespace

ControlGrid smooth_controls(const ControlGrid& grid, std::size_t factor, double A) {
  if (factor < 2) throw ConfigError("undersampling factor must be >= 2");
  if (grid.n_intervals() < 2) throw ConfigError("smoothing needs at least two samples");
  if (grid.u1.size() != grid.u2.size()) throw ConfigError("grid control arrays differ in length");
  const double top = std::sqrt(A);
  ControlGrid out(grid.T, spline_resample(grid.u1, factor), spline_resample(grid.u2, factor));
  for (auto& v : out.u1) v = std::clamp(v, 0.0, top);
  for (auto& v : out.u2) v = std::clamp(v, 0.0, top);
  return out;
}

SweepResult robustness_scan(const SystemConfig& config, const ControlGrid& grid,
                            const std::vector<double>& alphas, std::optional<double> baseline,
                            int substeps, int jobs) {
  config.validate();
  grid.validate(config.max_control());
  for (double a : alphas) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw ConfigError("distortion alpha must be >= 0");
  }
  require_increasing(alphas, "alpha");
  SweepResult out;
  out.axis_name = "alpha";
  out.axis_values = alphas;
  out.efficiencies.resize(alphas.size());
  parallel_for(alphas.size(), jobs, [&](std::size_t i) {
    const double a = alphas[i];
    // Distorted pulses may exceed the design bound; widen it for validation.
    SystemConfig distorted = config;
    distorted.A = config.A * std::max(a, 1.0);
    ControlGrid scaled = grid;
    const double s = std::sqrt(a);
    for (auto& v : scaled.u1) v *= s;
    for (auto& v : scaled.u2) v *= s;
    out.efficiencies[i] = efficiency(distorted, scaled, substeps);
  });
  if (baseline) {
    out.metadata_names = {"gaussian_baseline"};
    for (std::size_t i = 0; i < alphas.size(); ++i) out.metadata.push_back({format_number(*baseline)});
  }
  return out;
}

}  // namespace lics
