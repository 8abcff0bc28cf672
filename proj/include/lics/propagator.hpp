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

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "lics/model.hpp"

namespace lics {

// (x1, x2, x3, x4) with b_g = x1 + i x2 and b_e = x3 + i x4.
using StateVector = Eigen::Vector4d;
using Generator = Eigen::Matrix4d;

inline StateVector ground_state() { return StateVector(1.0, 0.0, 0.0, 0.0); }
inline double ground_population(const StateVector& x) { return x[0] * x[0] + x[1] * x[1]; }
inline double excited_population(const StateVector& x) { return x[2] * x[2] + x[3] * x[3]; }

// Propagation produced a NaN or infinity.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultSubsteps = 4;

// Right-hand side x' = M(u) x of the real four-state equations.
Generator generator(const SystemConfig& config, double u1, double u2);

// dM/du1 and dM/du2 at (u1, u2), including the detuning chain rule.
void generator_derivatives(const SystemConfig& config, double u1, double u2, Generator& d_u1,
                           Generator& d_u2);

struct TrajectoryPoint {
  double t = 0.0;
  StateVector x;
};

struct PropagationResult {
  double efficiency = 0.0;
  StateVector final_state;
  std::vector<TrajectoryPoint> trajectory;  // only when recording; one per RK4 step
  std::vector<double> norm_history;         // matches trajectory
};

struct PropagateOptions {
  int substeps = kDefaultSubsteps;
  bool record = false;
  StateVector initial = ground_state();
};

// Fixed-step classical RK4, `substeps` steps per control interval.
PropagationResult propagate(const SystemConfig& config, const ControlGrid& grid,
                            const PropagateOptions& options = {});

// Final state only; no allocation. Skips grid validation.
StateVector propagate_final(const SystemConfig& config, const ControlGrid& grid,
                            int substeps = kDefaultSubsteps,
                            const StateVector& initial = ground_state());

double efficiency(const SystemConfig& config, const ControlGrid& grid,
                  int substeps = kDefaultSubsteps);

// Closed-form final excited population of the sin-cos protocol for R = 0,
// delta = 0 (adiabatic-basis solution with constant mixing-angle rate).
double sincos_efficiency_analytic(double q, double AT);

struct AdiabaticAmplitudes {
  std::complex<double> a0;
  std::complex<double> a1;
};

// Rotation into the adiabatic basis by mixing angle theta.
AdiabaticAmplitudes adiabatic_transform(double theta, std::complex<double> b_g,
                                        std::complex<double> b_e);

// Zero-eigenvalue adiabatic eigenstate (cos theta, -sin theta) as a state vector.
StateVector dark_state(double theta);

}  // namespace lics
