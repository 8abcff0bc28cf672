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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lics/model.hpp"
#include "lics/optimizer.hpp"

namespace lics {

// One curve: efficiency against a strictly increasing axis, plus free-form
// per-point metadata columns.
struct SweepResult {
  std::string axis_name;
  std::vector<double> axis_values;
  std::vector<double> efficiencies;
  std::vector<std::string> metadata_names;
  std::vector<std::vector<std::string>> metadata;  // one row per point

  std::size_t size() const { return axis_values.size(); }
  std::size_t argmax() const;  // first maximum
  double max() const;
  void validate() const;
};

// Inclusive arithmetic grid; the end point is kept when it is within a
// hundredth of a step of the last value.
std::vector<double> linear_grid(double first, double last, double step);

struct BaselineOptions {
  double width_first = 0.1;
  double width_last = 20.0;
  double width_step = 0.1;
  double ratio_first = 0.0;  // tau / width
  double ratio_last = 1.5;
  double ratio_step = 0.05;
  double max_interval = 0.05;  // longest control interval on the Gaussian window
  std::size_t min_intervals = 50;
  int substeps = kDefaultSubsteps;
};

struct BaselineResult {
  double efficiency = 0.0;
  double width = 0.0;       // A T_g
  double half_delay = 0.0;  // A tau
};

// Intervals used to put a Gaussian pair of the given window on a grid.
std::size_t gaussian_intervals(double window, const BaselineOptions& options);

double gaussian_efficiency(const SystemConfig& config, double width, double half_delay,
                           const BaselineOptions& options = {});

// Exhaustive grid search over (width, tau/width). Ties go to the smaller
// width, then the smaller delay. jobs == 1 runs the serial reference loop.
BaselineResult gaussian_baseline_search(const SystemConfig& config,
                                        const BaselineOptions& options = {}, int jobs = 1);

SweepResult sincos_sweep(const SystemConfig& config, const std::vector<double>& durations,
                         std::size_t n_intervals = 200, int jobs = 1);

struct OptimalSweepOptions {
  std::size_t n_intervals = 200;
  OptimizerOptions optimizer;
  // Run the sin-cos/Gaussian/all-max/ramp set at every point. The warm
  // starts from the previous point are always included.
  bool standard_starts = true;
  int jobs = 1;  // workers across starts
};

struct OptimalSweep {
  SweepResult sweep;
  std::vector<OptimizationReport> reports;  // one per point
};

// Duration ladder; each point is warm-started from the previous optimum
// (time-dilated and zero-padded), so efficiencies are non-decreasing.
OptimalSweep optimal_duration_sweep(const SystemConfig& config,
                                    const std::vector<double>& durations,
                                    const OptimalSweepOptions& options = {});

struct SaturationOptions {
  double first = 0.1;
  double step = 0.1;
  double cap = 50.0;
  double gain_threshold = 1e-4;
  int window = 20;  // steps over which the gain is measured
};

struct SaturationResult {
  double efficiency = 0.0;
  double duration = 0.0;  // AT at which the plateau was declared or the cap hit
  bool saturated = false;
  OptimizationReport best;
  SweepResult ladder;
};

SaturationResult saturation_limit(const SystemConfig& config,
                                  const SaturationOptions& saturation = {},
                                  const OptimalSweepOptions& options = {});

// Saturation efficiency per R (or per q); independent points run on `jobs`
// workers, each chain itself is sequential.
SweepResult r_sweep(const SystemConfig& base, const std::vector<double>& R_values,
                    const SaturationOptions& saturation = {},
                    const OptimalSweepOptions& options = {}, int jobs = 1);

SweepResult fano_sweep(const SystemConfig& base, const std::vector<double>& q_values,
                       const SaturationOptions& saturation = {},
                       const OptimalSweepOptions& options = {}, int jobs = 1);

// Keeps every factor-th sample plus the last, fits a natural cubic spline
// through them at the interval midpoints and resamples onto the full grid.
ControlGrid smooth_controls(const ControlGrid& grid, std::size_t factor = 20, double A = 1.0);

// Efficiency with every ionization width scaled by alpha (controls by
// sqrt(alpha)). The optional baseline becomes a constant metadata column.
SweepResult robustness_scan(const SystemConfig& config, const ControlGrid& grid,
                            const std::vector<double>& alphas,
                            std::optional<double> baseline = std::nullopt,
                            int substeps = kDefaultSubsteps, int jobs = 1);

}  // namespace lics
