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

#include "lics/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lics {

std::string_view to_string(DetuningMode mode) {
  return mode == DetuningMode::Resonant ? "resonant" : "dynamic_stark";
}

DetuningMode parse_detuning_mode(std::string_view name) {
  if (name == "resonant") return DetuningMode::Resonant;
  if (name == "dynamic_stark") return DetuningMode::DynamicStark;
  throw ConfigError("unknown detuning mode '" + std::string(name) +
                    "' (expected 'resonant' or 'dynamic_stark')");
}

void SystemConfig::validate() const {
  if (!std::isfinite(q)) throw ConfigError("q must be finite");
  if (!(R >= 0.0) || !std::isfinite(R)) throw ConfigError("R must be a finite value >= 0");
  if (!(A > 0.0) || !std::isfinite(A)) throw ConfigError("A must be a finite value > 0");
}

double SystemConfig::max_control() const { return std::sqrt(A); }

ControlGrid::ControlGrid(double duration, std::vector<double> pump, std::vector<double> stokes)
    : T(duration), u1(std::move(pump)), u2(std::move(stokes)) {}

ControlGrid ControlGrid::constant(double duration, std::size_t n_intervals, double u1,
                                  double u2) {
  return {duration, std::vector<double>(n_intervals, u1), std::vector<double>(n_intervals, u2)};
}

void ControlGrid::validate(double max_control) const {
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("grid duration T must be > 0");
  if (u1.empty()) throw ConfigError("grid needs at least one interval");
  if (u1.size() != u2.size()) throw ConfigError("grid control arrays differ in length");
  // Samples produced by scaling can overshoot sqrt(A) by an ulp or two.
  const double upper = max_control * (1.0 + 1e-12);
  for (std::size_t k = 0; k < u1.size(); ++k) {
    if (!(u1[k] >= 0.0 && u1[k] <= upper) || !(u2[k] >= 0.0 && u2[k] <= upper)) {
      throw ConfigError("control sample " + std::to_string(k) + " outside [0, sqrt(A)]");
    }
  }
}

GaussianValues gaussian_pair(double width, double half_delay, double t) {
  if (!(width > 0.0)) throw ConfigError("Gaussian width must be > 0");
  const double zp = (t - half_delay) / width;
  const double zs = (t + half_delay) / width;
  return {std::exp(-zp * zp), std::exp(-zs * zs)};
}

ControlPair sincos_controls(double A, double T, double t) {
  if (!(T > 0.0)) throw ConfigError("sin-cos duration must be > 0");
  if (t < 0.0 || t > T) throw ConfigError("sin-cos time outside [0, T]");
  const double theta = std::numbers::pi * t / (2.0 * T);
  const double scale = std::sqrt(A);
  return {scale * std::sin(theta), scale * std::cos(theta)};
}

std::pair<double, double> detuning_coefficients(const SystemConfig& config) {
  if (config.detuning_mode == DetuningMode::Resonant) return {0.0, 0.0};
  // delta = Sigma_e - Sigma_g - (q/2)(Gamma^p_g - Gamma^s_e) with
  // Sigma^b_a = S^b_a * I_b and u1^2 = Gamma^p_g, u2^2 = Gamma^s_e.
  const auto& s = config.stark;
  const double pump = s.pump_excited - s.pump_ground - 0.5 * config.q;
  const double stokes = s.stokes_excited - s.stokes_ground + 0.5 * config.q;
  return {pump, stokes};
}

double effective_detuning(const SystemConfig& config, double u1, double u2) {
  const auto [pump, stokes] = detuning_coefficients(config);
  return pump * u1 * u1 + stokes * u2 * u2;
}

Envelope sincos_envelope(double A, double T) {
  if (!(T > 0.0)) throw ConfigError("sin-cos duration must be > 0");
  return {T, [A, T](double t) { return sincos_controls(A, T, std::clamp(t, 0.0, T)); }};
}

double gaussian_window(double width, double half_delay) {
  return 2.0 * (half_delay + 4.0 * width);
}

Envelope gaussian_envelope(double A, double width, double half_delay) {
  if (!(width > 0.0)) throw ConfigError("Gaussian width must be > 0");
  if (half_delay < 0.0) throw ConfigError("Gaussian half-delay must be >= 0");
  const double duration = gaussian_window(width, half_delay);
  const double centre = 0.5 * duration;
  const double scale = std::sqrt(A);
  return {duration, [=](double t) {
            const auto f = gaussian_pair(width, half_delay, t - centre);
            return ControlPair{scale * std::sqrt(f.pump), scale * std::sqrt(f.stokes)};
          }};
}

ControlGrid sample_onto_grid(const Envelope& envelope, std::size_t n_intervals, double A) {
  if (n_intervals < 1) throw ConfigError("n_intervals must be >= 1");
  if (!(envelope.duration > 0.0)) throw ConfigError("envelope duration must be > 0");
  const double top = std::sqrt(A);
  const double h = envelope.duration / static_cast<double>(n_intervals);
  ControlGrid grid;
  grid.T = envelope.duration;
  grid.u1.resize(n_intervals);
  grid.u2.resize(n_intervals);
  for (std::size_t k = 0; k < n_intervals; ++k) {
    const auto c = envelope.at((static_cast<double>(k) + 0.5) * h);
    grid.u1[k] = std::clamp(c.u1, 0.0, top);
    grid.u2[k] = std::clamp(c.u2, 0.0, top);
  }
  return grid;
}

}  // namespace lics
