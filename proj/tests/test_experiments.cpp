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

#include <doctest.h>

#include <cmath>
#include <random>

#include "lics/experiments.hpp"
#include "lics/propagator.hpp"
#include "oracles.hpp"

using namespace lics;
using doctest::Approx;

namespace {

SystemConfig make(double R, DetuningMode mode, double q = -6.0) {
  SystemConfig c;
  c.R = R;
  c.detuning_mode = mode;
  c.q = q;
  return c;
}

BaselineOptions coarse_baseline() {
  BaselineOptions o;
  o.width_first = 0.5;
  o.width_last = 4.0;
  o.width_step = 0.5;
  o.ratio_step = 0.25;
  return o;
}

}  // namespace

TEST_CASE("linear grid arithmetic") {
  const auto r = linear_grid(0.0, 1.0, 0.05);
  REQUIRE(r.size() == 21);
  CHECK(r.front() == 0.0);
  CHECK(r.back() == Approx(1.0));
  CHECK(linear_grid(0.1, 20.0, 0.1).size() == 200);
  CHECK(linear_grid(-6.0, -6.0, 0.5).size() == 1);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(linear_grid(1.0, 0.0, 0.1), ConfigError);
}

TEST_CASE("sweep result validation") {
  SweepResult s;
  s.axis_name = "x";
  s.axis_values = {1.0, 2.0, 3.0};
  s.efficiencies = {0.2, 0.5, 0.5};
  CHECK_NOTHROW(s.validate());
  CHECK(s.argmax() == 1);
  CHECK(s.max() == 0.5);
  s.axis_values = {1.0, 1.0, 3.0};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.axis_values = {1.0, 2.0, 3.0};
  s.efficiencies = {0.2, 1.5, 0.5};
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("gaussian baseline values") {
  const auto a = gaussian_baseline_search(make(1.0 / 16, DetuningMode::Resonant));
  CHECK(a.efficiency == Approx(0.84).epsilon(0.01 / 0.84));
  const auto b = gaussian_baseline_search(make(1.0, DetuningMode::DynamicStark));
  CHECK(b.efficiency == Approx(0.40).epsilon(0.01 / 0.40));
  CHECK(b.efficiency == Approx(gaussian_efficiency(make(1.0, DetuningMode::DynamicStark), b.width,
                                                   b.half_delay))
                            .epsilon(1e-14));
}

TEST_CASE("gaussian baseline is deterministic and parallel-safe") {
  const SystemConfig c = make(0.25, DetuningMode::DynamicStark);
  const auto first = gaussian_baseline_search(c, coarse_baseline(), 1);
  const auto again = gaussian_baseline_search(c, coarse_baseline(), 1);
  const auto parallel = gaussian_baseline_search(c, coarse_baseline(), 4);
  CHECK(first.efficiency == again.efficiency);
  CHECK(first.width == again.width);
  CHECK(first.half_delay == again.half_delay);
  CHECK(first.efficiency == parallel.efficiency);
  CHECK(first.width == parallel.width);
  CHECK(first.half_delay == parallel.half_delay);
}

TEST_CASE("gaussian baseline equals a brute-force scan") {
  const SystemConfig c = make(0.25, DetuningMode::Resonant);
  const auto o = coarse_baseline();
  BaselineResult best;
  best.efficiency = -1.0;
  for (double w : linear_grid(o.width_first, o.width_last, o.width_step)) {
    for (double ratio : linear_grid(o.ratio_first, o.ratio_last, o.ratio_step)) {
      const double e = gaussian_efficiency(c, w, ratio * w, o);
      // Strict improvement keeps the first (smallest width, then delay) on ties.
      if (e > best.efficiency) best = {e, w, ratio * w};
    }
  }
  const auto r = gaussian_baseline_search(c, o);
  CHECK(r.efficiency == best.efficiency);
  CHECK(r.width == best.width);
  CHECK(r.half_delay == best.half_delay);
}

TEST_CASE("sin-cos sweeps") {
  const auto durations = linear_grid(0.05, 5.0, 0.01);
  const auto a = sincos_sweep(make(0.25, DetuningMode::Resonant), durations);
  CHECK(a.max() == Approx(0.6945).epsilon(0.003 / 0.6945));
  CHECK(a.axis_values[a.argmax()] == Approx(1.9).epsilon(0.1 / 1.9));
  const auto b = sincos_sweep(make(1.0 / 16, DetuningMode::DynamicStark), durations);
  CHECK(b.max() == Approx(0.4975).epsilon(0.003 / 0.4975));
  CHECK(b.axis_values[b.argmax()] == Approx(1.3).epsilon(0.1 / 1.3));
  const auto c = sincos_sweep(make(0.0, DetuningMode::Resonant), linear_grid(0.5, 20.0, 0.5));
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c.efficiencies[i] > c.efficiencies[i - 1]);
  CHECK_NOTHROW(c.validate());
  const auto p = sincos_sweep(make(0.25, DetuningMode::Resonant), durations, 200, 4);
  CHECK(p.efficiencies == a.efficiencies);
  CHECK_THROWS_AS(sincos_sweep(SystemConfig{}, {1.0, 0.5}), ConfigError);
}

TEST_CASE("optimal duration ladder is non-decreasing and saturates for R=1") {
  const SystemConfig c = make(1.0, DetuningMode::Resonant);
  const auto ladder = optimal_duration_sweep(c, linear_grid(0.1, 3.0, 0.1));
  const auto& s = ladder.sweep;
  CHECK_NOTHROW(s.validate());
  // Non-decreasing up to the rounding of the dilated warm start.
  for (std::size_t i = 1; i < s.size(); ++i) {
    CHECK(s.efficiencies[i] >= s.efficiencies[i - 1] - 1e-12);
  }
  CHECK(s.efficiencies.back() >= 0.5691 - 0.005);
  REQUIRE(s.metadata_names.size() == 4);
  CHECK(s.metadata_names[0] == "start");
  CHECK(ladder.reports.size() == s.size());
}

TEST_CASE("a vanishing duration transfers almost nothing") {
  // |b_e'| <= |1 - iq| / 2 for admissible controls, so |b_e(T)|^2 <= (1 + q^2) T^2 / 4.
  const auto ladder = optimal_duration_sweep(make(0.0, DetuningMode::DynamicStark), {0.01});
  CHECK(ladder.sweep.efficiencies[0] <= (1.0 + 36.0) * 1e-4 / 4.0);
}

TEST_CASE("saturation: dynamic Stark, R=1") {
  const auto s = saturation_limit(make(1.0, DetuningMode::DynamicStark));
  CHECK(s.saturated);
  CHECK(s.efficiency >= 0.4207 - 0.005);
  CHECK(s.duration < 50.0);
  CHECK(s.best.efficiency == s.efficiency);
  for (std::size_t i = 1; i < s.ladder.size(); ++i) {
    CHECK(s.ladder.efficiencies[i] >= s.ladder.efficiencies[i - 1] - 1e-12);
  }
}

TEST_CASE("saturation: hitting the cap while rising is reported") {
  SaturationOptions o;
  o.cap = 3.0;
  const auto s = saturation_limit(make(0.0, DetuningMode::Resonant), o);
  CHECK_FALSE(s.saturated);
  CHECK(s.duration == Approx(3.0));
  o.window = 0;
  CHECK_THROWS_AS(saturation_limit(SystemConfig{}, o), ConfigError);
}

TEST_CASE("R sweep is non-increasing and a q sweep point matches a direct run") {
  const auto r = r_sweep(make(0.0, DetuningMode::Resonant), {1.0, 1.5, 2.0});
  CHECK_NOTHROW(r.validate());
  CHECK(r.axis_name == "R");
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r.efficiencies[i] <= r.efficiencies[i - 1]);
  REQUIRE(r.metadata_names.size() == 3);
  CHECK(r.metadata[0][1] == "1");
  const auto q = fano_sweep(make(1.0, DetuningMode::Resonant), {-6.0});
  CHECK(q.efficiencies[0] == r.efficiencies[0]);
  CHECK_THROWS_AS(r_sweep(SystemConfig{}, {-0.5}), ConfigError);
}

TEST_CASE("spline smoothing reproduces constant and linear data") {
  const auto constant = ControlGrid::constant(2.0, 200, 0.4, 0.9);
  const auto s = smooth_controls(constant);
  for (std::size_t k = 0; k < 200; ++k) {
    CHECK(s.u1[k] == Approx(0.4).epsilon(1e-14));
    CHECK(s.u2[k] == Approx(0.9).epsilon(1e-14));
  }
  std::vector<double> up(200), down(200);
  for (std::size_t k = 0; k < 200; ++k) {
    up[k] = 0.9 * static_cast<double>(k) / 199.0;
    down[k] = 1.0 - up[k];
  }
  for (std::size_t factor : {2u, 7u, 20u, 150u}) {
    const auto lin = smooth_controls(ControlGrid(3.0, up, down), factor);
    for (std::size_t k = 0; k < 200; ++k) {
      CHECK(std::abs(lin.u1[k] - up[k]) < 1e-10);
      CHECK(std::abs(lin.u2[k] - down[k]) < 1e-10);
    }
  }
  CHECK_THROWS_AS(smooth_controls(constant, 1), ConfigError);
  CHECK_THROWS_AS(smooth_controls(ControlGrid::constant(1.0, 1, 0.5, 0.5)), ConfigError);
}

TEST_CASE("smoothing keeps the knots and the box") {
  std::mt19937_64 rng(17);
  const auto g = oracle::random_grid(rng, 1.0, 95);
  const auto s = smooth_controls(g, 20);
  for (std::size_t k = 0; k < 95; k += 20) CHECK(s.u1[k] == Approx(g.u1[k]).epsilon(1e-12));
  CHECK(s.u1.back() == Approx(g.u1.back()).epsilon(1e-12));
  CHECK_NOTHROW(s.validate(1.0));
}

TEST_CASE("smoothing an optimum costs a little efficiency") {
  const SystemConfig c = make(1.0 / 16, DetuningMode::DynamicStark);
  const auto r = optimize(c, 0.9, 200, default_starts(1.0, 0.9, 200));
  const double smoothed = efficiency(c, smooth_controls(r.grid, 20));
  CHECK(smoothed <= r.efficiency);
  CHECK(smoothed >= r.efficiency - 0.01);
}

TEST_CASE("robustness scan") {
  const SystemConfig c = make(0.25, DetuningMode::Resonant);
  const auto r = optimize(c, 3.0, 200, default_starts(1.0, 3.0, 200));
  const auto scan = robustness_scan(c, r.grid, {0.0, 0.9, 0.95, 1.0, 1.05, 1.1}, 0.71);
  CHECK(scan.efficiencies[0] == 0.0);
  CHECK(scan.efficiencies[3] == r.efficiency);
  for (std::size_t i = 1; i < scan.size(); ++i) CHECK(scan.efficiencies[i] > 0.71);
  REQUIRE(scan.metadata_names.size() == 1);
  CHECK(scan.metadata_names[0] == "gaussian_baseline");
  CHECK(scan.metadata[2][0] == "0.71");
  CHECK_THROWS_AS(robustness_scan(c, r.grid, {-0.1}), ConfigError);
  const auto parallel = robustness_scan(c, r.grid, {0.0, 0.9, 0.95, 1.0, 1.05, 1.1}, 0.71,
                                        kDefaultSubsteps, 3);
  CHECK(parallel.efficiencies == scan.efficiencies);
}

TEST_CASE("distortion equals time dilation of the pulse") {
  std::mt19937_64 rng(31);
  for (auto mode : {DetuningMode::Resonant, DetuningMode::DynamicStark}) {
    const SystemConfig c = make(0.5, mode);
    const auto g = oracle::random_grid(rng, 2.0, 100);
    const std::vector<double> alphas = {0.25, 0.8, 1.3, 2.0};
    const auto scan = robustness_scan(c, g, alphas);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      ControlGrid stretched = g;
      stretched.T = g.T * alphas[i];
      CHECK(std::abs(scan.efficiencies[i] - efficiency(c, stretched)) < 1e-8);
    }
  }
}
