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

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lics {

// Raised for invalid parameters, grids, and other precondition failures.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class DetuningMode { Resonant, DynamicStark };

std::string_view to_string(DetuningMode mode);
DetuningMode parse_detuning_mode(std::string_view name);

// Stark-shift coefficients per unit intensity: (pump on |g>, Stokes on |g>,
// pump on |e>, Stokes on |e>). The defaults are the hydrogen-like test
// profile used for every table and sweep.
struct StarkProfile {
  double pump_ground = 1.0;
  double stokes_ground = -1.0;
  double pump_excited = 1.0;
  double stokes_excited = 3.0;
};

struct SystemConfig {
  double q = -6.0;
  double R = 0.0;
  DetuningMode detuning_mode = DetuningMode::Resonant;
  double A = 1.0;
  StarkProfile stark;

  void validate() const;
  double max_control() const;  // sqrt(A)
};

// Piecewise-constant control envelopes u1 = sqrt(pump width on |g>),
// u2 = sqrt(Stokes width on |e>) on n equal intervals of [0, T].
struct ControlGrid {
  double T = 1.0;
  std::vector<double> u1;
  std::vector<double> u2;

  ControlGrid() = default;
  ControlGrid(double duration, std::vector<double> pump, std::vector<double> stokes);
  static ControlGrid constant(double duration, std::size_t n_intervals, double u1, double u2);

  std::size_t n_intervals() const { return u1.size(); }
  double interval_width() const { return T / static_cast<double>(u1.size()); }
  double interval_start(std::size_t k) const { return T * static_cast<double>(k) / static_cast<double>(u1.size()); }
  double interval_end(std::size_t k) const { return T * static_cast<double>(k + 1) / static_cast<double>(u1.size()); }

  // Throws ConfigError unless T > 0, n >= 1, sizes agree and every sample
  // lies in [0, max_control].
  void validate(double max_control) const;
};

struct ControlPair {
  double u1 = 0.0;
  double u2 = 0.0;
};

// A continuous control family on [0, duration].
struct Envelope {
  double duration = 0.0;
  std::function<ControlPair(double)> at;
};

struct GaussianValues {
  double pump = 0.0;
  double stokes = 0.0;
};

// Pump centred at +half_delay, Stokes at -half_delay (counterintuitive order).
GaussianValues gaussian_pair(double width, double half_delay, double t);

ControlPair sincos_controls(double A, double T, double t);

// Effective two-photon detuning with D = 0. Zero in resonant mode.
double effective_detuning(const SystemConfig& config, double u1, double u2);

// d(delta)/d(u1^2) and d(delta)/d(u2^2); both zero in resonant mode.
std::pair<double, double> detuning_coefficients(const SystemConfig& config);

Envelope sincos_envelope(double A, double T);

// Gaussian pair on the window [-(tau + 4 width), tau + 4 width], shifted so
// the window starts at t = 0. Controls are sqrt(A f).
Envelope gaussian_envelope(double A, double width, double half_delay);
double gaussian_window(double width, double half_delay);

// Midpoint sampling; values are clamped to [0, sqrt(A)].
ControlGrid sample_onto_grid(const Envelope& envelope, std::size_t n_intervals, double A = 1.0);

}  // namespace lics
