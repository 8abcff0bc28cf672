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

#include "lics/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lics {

namespace {

// M is linear in (u1^2, u1 u2, u2^2, delta) for fixed q and R.
Generator assemble(double q, double R, double a, double b, double c, double d) {
  const double ha = 0.5 * a;
  const double hb = 0.5 * b;
  const double loss = 0.5 * (R * a + c);
  const double shift = d - 0.5 * q * c;
  Generator m;
  m << -ha, -q * ha, -hb, -q * hb,
       q * ha, -ha, q * hb, -hb,
       -hb, -q * hb, -loss, shift,
       q * hb, -hb, -shift, -loss;
  return m;
}

inline StateVector rk4_step(const Generator& m, const StateVector& x, double h) {
  const StateVector k1 = m * x;
  const StateVector k2 = m * (x + 0.5 * h * k1);
  const StateVector k3 = m * (x + 0.5 * h * k2);
  const StateVector k4 = m * (x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

[[noreturn]] void non_finite(std::size_t interval, double t) {
  throw NumericalError("non-finite state in interval " + std::to_string(interval) +
                       " at t = " + std::to_string(t));
}

std::complex<double> sinhc(std::complex<double> z) {
  if (std::abs(z) < 1e-4) return 1.0 + z * z / 6.0;
  return std::sinh(z) / z;
}

}  // namespace

Generator generator(const SystemConfig& config, double u1, double u2) {
  return assemble(config.q, config.R, u1 * u1, u1 * u2, u2 * u2,
                  effective_detuning(config, u1, u2));
}

void generator_derivatives(const SystemConfig& config, double u1, double u2, Generator& d_u1,
                           Generator& d_u2) {
  const auto [pump, stokes] = detuning_coefficients(config);
  d_u1 = assemble(config.q, config.R, 2.0 * u1, u2, 0.0, 2.0 * pump * u1);
  d_u2 = assemble(config.q, config.R, 0.0, u1, 2.0 * u2, 2.0 * stokes * u2);
}

PropagationResult propagate(const SystemConfig& config, const ControlGrid& grid,
                            const PropagateOptions& options) {
  config.validate();
  grid.validate(config.max_control());
  if (options.substeps < 1) throw ConfigError("substeps must be >= 1");

  const std::size_t n = grid.n_intervals();
  const double h = grid.interval_width() / options.substeps;
  PropagationResult result;
  StateVector x = options.initial;
  if (options.record) {
    const std::size_t steps = n * static_cast<std::size_t>(options.substeps) + 1;
    result.trajectory.reserve(steps);
    result.norm_history.reserve(steps);
    result.trajectory.push_back({0.0, x});
    result.norm_history.push_back(x.squaredNorm());
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Generator m = generator(config, grid.u1[k], grid.u2[k]);
    const double t0 = grid.interval_start(k);
    for (int s = 0; s < options.substeps; ++s) {
      x = rk4_step(m, x, h);
      if (!x.allFinite()) non_finite(k, t0 + (s + 1) * h);
      if (options.record) {
        result.trajectory.push_back({t0 + (s + 1) * h, x});
        result.norm_history.push_back(x.squaredNorm());
      }
    }
  }
  result.final_state = x;
  result.efficiency = std::clamp(excited_population(x), 0.0, 1.0);
  return result;
}

StateVector propagate_final(const SystemConfig& config, const ControlGrid& grid, int substeps,
                            const StateVector& initial) {
  const std::size_t n = grid.n_intervals();
  const double h = grid.interval_width() / substeps;
  StateVector x = initial;
  for (std::size_t k = 0; k < n; ++k) {
    const Generator m = generator(config, grid.u1[k], grid.u2[k]);
    for (int s = 0; s < substeps; ++s) x = rk4_step(m, x, h);
    if (!x.allFinite()) non_finite(k, grid.interval_end(k));
  }
  return x;
}

double efficiency(const SystemConfig& config, const ControlGrid& grid, int substeps) {
  return std::clamp(excited_population(propagate_final(config, grid, substeps)), 0.0, 1.0);
}

double sincos_efficiency_analytic(double q, double AT) {
  if (!(AT > 0.0)) throw ConfigError("AT must be > 0");
  using cd = std::complex<double>;
  const cd eta(0.5, -0.5 * q);
  const double rate = std::numbers::pi / AT;
  // Principal branch; the result is even in kappa so the branch does not matter.
  const cd kappa = 0.5 * std::sqrt(eta * eta - rate * rate);
  const cd z = kappa * AT;
  const cd amplitude = std::exp(-0.5 * eta * AT) * (std::cosh(z) + 0.5 * eta * AT * sinhc(z));
  return std::clamp(std::norm(amplitude), 0.0, 1.0);
}

AdiabaticAmplitudes adiabatic_transform(double theta, std::complex<double> b_g,
                                        std::complex<double> b_e) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * b_g - s * b_e, s * b_g + c * b_e};
}

StateVector dark_state(double theta) {
  return StateVector(std::cos(theta), 0.0, -std::sin(theta), 0.0);
}

}  // namespace lics
