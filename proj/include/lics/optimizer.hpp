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

#include <string>
#include <vector>

#include "lics/model.hpp"
#include "lics/propagator.hpp"

namespace lics {

struct GradientOptions {
  int substeps = kDefaultSubsteps;
  bool keep_costate = false;
};

struct GradientResult {
  double efficiency = 0.0;  // x3(T)^2 + x4(T)^2 of the discrete scheme
  std::vector<double> d_u1;
  std::vector<double> d_u2;
  // Adjoint of the state at every RK4 step boundary, front() at t = 0 and
  // back() at t = T. Filled only with keep_costate.
  std::vector<StateVector> costate;
  StateVector final_state;
};

// Exact gradient of the RK4-discretized final excited population with
// respect to every control sample, by reverse sweep through the RK4 stages.
GradientResult gradient(const SystemConfig& config, const ControlGrid& grid,
                        const GradientOptions& options = {});

// Componentwise projection of an ascent direction onto the feasible cone of
// the box [0, upper].
double projected_gradient_norm(const ControlGrid& grid, const GradientResult& g, double upper);

enum class AscentMethod { ProjectedGradient, ProjectedLbfgs };

std::string_view to_string(AscentMethod method);

struct OptimizerOptions {
  AscentMethod method = AscentMethod::ProjectedLbfgs;
  int memory = 10;  // L-BFGS curvature pairs
  int max_iterations = 5000;
  double tolerance = 1e-6;   // projected-gradient infinity norm
  double armijo = 1e-4;
  double shrink = 0.5;
  double initial_step = 1.0;
  int max_backtracks = 60;
  int substeps = kDefaultSubsteps;
  // ProjectedGradient only: Barzilai-Borwein trial steps after the first
  // iteration. With false every line search starts from initial_step.
  bool spectral_steps = true;
  bool record_history = true;
};

struct Start {
  std::string label;
  ControlGrid grid;
};

// sin-cos, truncated Gaussian pair, all-max, and counterintuitive ramp.
// half_delay_ratio is tau / width of the Gaussian start.
std::vector<Start> default_starts(double A, double T, std::size_t n_intervals,
                                  double half_delay_ratio = 0.75);

// The policy on [0, grid.T] followed by zero controls up to new_T, sampled
// at the midpoints of n_intervals equal intervals.
ControlGrid pad_with_zeros(const ControlGrid& grid, double new_T, std::size_t n_intervals);

// Same policy stretched to new_T >= grid.T with every width scaled by
// grid.T / new_T. Reaches the same final state, so the same efficiency.
ControlGrid dilate(const ControlGrid& grid, double new_T);

struct StartSummary {
  std::string label;
  double initial_efficiency = 0.0;
  double efficiency = 0.0;
  int iterations = 0;
  double projected_gradient_norm = 0.0;
  bool converged = false;
};

struct OptimizationReport {
  ControlGrid grid;
  double efficiency = 0.0;
  int iterations = 0;
  double projected_gradient_norm = 0.0;
  bool converged = false;
  std::string start_label;
  std::vector<double> history;  // efficiency after each accepted iterate
  std::vector<StartSummary> starts;
};

// Projected-gradient ascent from a single initialization.
OptimizationReport optimize_from(const SystemConfig& config, const Start& start,
                                 const OptimizerOptions& options = {});

// Runs every start (OpenMP across starts when jobs > 1) and keeps the best:
// highest efficiency, then fewest iterations, then start order.
OptimizationReport optimize(const SystemConfig& config, double T, std::size_t n_intervals,
                            const std::vector<Start>& starts,
                            const OptimizerOptions& options = {}, int jobs = 1);

enum class SegmentKind { BangMax, Interior, BangMin };

std::string_view to_string(SegmentKind kind);

struct Segment {
  SegmentKind kind;
  std::size_t first = 0;  // interval indices, inclusive
  std::size_t last = 0;
  double t_start = 0.0;
  double t_end = 0.0;
};

struct ControlStructure {
  std::vector<Segment> u1;
  std::vector<Segment> u2;
};

// Labels samples within tolerance * sqrt(A) of a bound as bang, merges runs.
ControlStructure detect_structure(const ControlGrid& grid, double tolerance = 1e-3,
                                  double A = 1.0);

}  // namespace lics
