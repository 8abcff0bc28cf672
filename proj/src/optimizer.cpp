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

#include "lics/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include <Eigen/Dense>

#include "lics/parallel.hpp"

namespace lics {

namespace {

struct Stages {
  StateVector k1, k2, k3, y2, y3, y4;
};

inline StateVector rk4_forward(const Generator& m, const StateVector& x, double h, Stages& st) {
  st.k1 = m * x;
  st.y2 = x + 0.5 * h * st.k1;
  st.k2 = m * st.y2;
  st.y3 = x + 0.5 * h * st.k2;
  st.k3 = m * st.y3;
  st.y4 = x + h * st.k3;
  const StateVector k4 = m * st.y4;
  return x + (h / 6.0) * (st.k1 + 2.0 * st.k2 + 2.0 * st.k3 + k4);
}

// Transpose of one RK4 step: given the adjoint of the output, returns the
// adjoint of the input and accumulates the adjoint of M.
inline StateVector rk4_reverse(const Generator& m, const StateVector& x, double h,
                               const StateVector& out_bar, Generator& m_bar) {
  Stages st;
  rk4_forward(m, x, h, st);
  const Generator mt = m.transpose();

  StateVector x_bar = out_bar;
  const StateVector k4_bar = (h / 6.0) * out_bar;
  StateVector k3_bar = (h / 3.0) * out_bar;
  StateVector k2_bar = (h / 3.0) * out_bar;
  StateVector k1_bar = (h / 6.0) * out_bar;

  m_bar.noalias() += k4_bar * st.y4.transpose();
  StateVector y_bar = mt * k4_bar;
  x_bar += y_bar;
  k3_bar += h * y_bar;

  m_bar.noalias() += k3_bar * st.y3.transpose();
  y_bar = mt * k3_bar;
  x_bar += y_bar;
  k2_bar += 0.5 * h * y_bar;

  m_bar.noalias() += k2_bar * st.y2.transpose();
  y_bar = mt * k2_bar;
  x_bar += y_bar;
  k1_bar += 0.5 * h * y_bar;

  m_bar.noalias() += k1_bar * x.transpose();
  x_bar += mt * k1_bar;
  return x_bar;
}

std::vector<double> ramp(std::size_t n, bool rising) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    v[k] = rising ? std::min(1.0, 2.0 * s) : std::min(1.0, 2.0 * (1.0 - s));
  }
  return v;
}

}  // namespace

GradientResult gradient(const SystemConfig& config, const ControlGrid& grid,
                        const GradientOptions& options) {
  config.validate();
  grid.validate(config.max_control());
  if (options.substeps < 1) throw ConfigError("substeps must be >= 1");

  const std::size_t n = grid.n_intervals();
  const auto s_count = static_cast<std::size_t>(options.substeps);
  const double h = grid.interval_width() / options.substeps;

  std::vector<StateVector> states(n * s_count + 1);
  std::vector<Generator> generators(n);
  states[0] = ground_state();
  Stages st;
  for (std::size_t k = 0; k < n; ++k) {
    generators[k] = generator(config, grid.u1[k], grid.u2[k]);
    for (std::size_t s = 0; s < s_count; ++s) {
      const std::size_t i = k * s_count + s;
      states[i + 1] = rk4_forward(generators[k], states[i], h, st);
    }
    if (!states[(k + 1) * s_count].allFinite()) {
      throw NumericalError("non-finite state in interval " + std::to_string(k));
    }
  }

  GradientResult result;
  const StateVector& xf = states.back();
  result.final_state = xf;
  result.efficiency = excited_population(xf);
  result.d_u1.assign(n, 0.0);
  result.d_u2.assign(n, 0.0);
  if (options.keep_costate) result.costate.resize(states.size());

  // Terminal adjoint of J = x3^2 + x4^2.
  StateVector lambda(0.0, 0.0, 2.0 * xf[2], 2.0 * xf[3]);
  if (options.keep_costate) result.costate.back() = lambda;

  Generator d_u1;
  Generator d_u2;
  for (std::size_t k = n; k-- > 0;) {
    Generator m_bar = Generator::Zero();
    for (std::size_t s = s_count; s-- > 0;) {
      const std::size_t i = k * s_count + s;
      lambda = rk4_reverse(generators[k], states[i], h, lambda, m_bar);
      if (options.keep_costate) result.costate[i] = lambda;
    }
    generator_derivatives(config, grid.u1[k], grid.u2[k], d_u1, d_u2);
    result.d_u1[k] = m_bar.cwiseProduct(d_u1).sum();
    result.d_u2[k] = m_bar.cwiseProduct(d_u2).sum();
  }
  return result;
}

double projected_gradient_norm(const ControlGrid& grid, const GradientResult& g, double upper) {
  const auto component = [upper](double u, double d) {
    if (u <= 0.0) return std::max(d, 0.0);
    if (u >= upper) return std::min(d, 0.0);
    return d;
  };
  double norm = 0.0;
  for (std::size_t k = 0; k < grid.n_intervals(); ++k) {
    norm = std::max(norm, std::abs(component(grid.u1[k], g.d_u1[k])));
    norm = std::max(norm, std::abs(component(grid.u2[k], g.d_u2[k])));
  }
  return norm;
}

std::vector<Start> default_starts(double A, double T, std::size_t n_intervals,
                                  double half_delay_ratio) {
  if (!(T > 0.0)) throw ConfigError("duration must be > 0");
  if (n_intervals < 1) throw ConfigError("n_intervals must be >= 1");
  const double top = std::sqrt(A);
  std::vector<Start> starts;
  starts.push_back({"sincos", sample_onto_grid(sincos_envelope(A, T), n_intervals, A)});

  // Gaussian pair truncated at two widths so the pulses fill [0, T].
  const double width = T / (2.0 * (half_delay_ratio + 2.0));
  const double tau = half_delay_ratio * width;
  Envelope gaussian{T, [=](double t) {
                      const auto f = gaussian_pair(width, tau, t - 0.5 * T);
                      return ControlPair{top * std::sqrt(f.pump), top * std::sqrt(f.stokes)};
                    }};
  starts.push_back({"gaussian", sample_onto_grid(gaussian, n_intervals, A)});

  starts.push_back({"all_max", ControlGrid::constant(T, n_intervals, top, top)});

  ControlGrid r(T, ramp(n_intervals, true), ramp(n_intervals, false));
  for (auto& v : r.u1) v *= top;
  for (auto& v : r.u2) v *= top;
  starts.push_back({"ramp", std::move(r)});
  return starts;
}

ControlGrid pad_with_zeros(const ControlGrid& grid, double new_T, std::size_t n_intervals) {
  if (!(new_T >= grid.T)) throw ConfigError("padding cannot shorten a grid");
  if (n_intervals < 1) throw ConfigError("n_intervals must be >= 1");
  ControlGrid out = ControlGrid::constant(new_T, n_intervals, 0.0, 0.0);
  const double h = new_T / static_cast<double>(n_intervals);
  for (std::size_t k = 0; k < n_intervals; ++k) {
    const double t = (static_cast<double>(k) + 0.5) * h;
    if (t >= grid.T) break;
    const auto j = std::min(grid.n_intervals() - 1,
                            static_cast<std::size_t>(t / grid.interval_width()));
    out.u1[k] = grid.u1[j];
    out.u2[k] = grid.u2[j];
  }
  return out;
}

ControlGrid dilate(const ControlGrid& grid, double new_T) {
  if (!(new_T >= grid.T)) throw ConfigError("dilation cannot shorten a grid");
  const double scale = std::sqrt(grid.T / new_T);
  ControlGrid out = grid;
  out.T = new_T;
  for (auto& v : out.u1) v *= scale;
  for (auto& v : out.u2) v *= scale;
  return out;
}

namespace {

using Flat = Eigen::VectorXd;

Flat flatten(const std::vector<double>& a, const std::vector<double>& b) {
  Flat v(static_cast<Eigen::Index>(a.size() + b.size()));
  std::copy(a.begin(), a.end(), v.data());
  std::copy(b.begin(), b.end(), v.data() + a.size());
  return v;
}

void unflatten(const Flat& v, ControlGrid& grid) {
  const std::size_t n = grid.n_intervals();
  std::copy(v.data(), v.data() + n, grid.u1.begin());
  std::copy(v.data() + n, v.data() + 2 * n, grid.u2.begin());
}

// Free variables are those not held at a bound by an outward-pointing
// gradient. Bound proximity uses a band that shrinks with stationarity.
Flat free_mask(const Flat& u, const Flat& g, double top, double band) {
  Flat mask(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const bool at_lower = u[i] <= band && g[i] < 0.0;
    const bool at_upper = u[i] >= top - band && g[i] > 0.0;
    mask[i] = (at_lower || at_upper) ? 0.0 : 1.0;
  }
  return mask;
}

struct CurvaturePair {
  Flat s;
  Flat y;  // change in the gradient of -J
};

// Two-loop recursion on the free subspace; returns an ascent direction.
Flat lbfgs_direction(const std::deque<CurvaturePair>& memory, const Flat& g, const Flat& mask,
                     double fallback_scale) {
  Flat q = g.cwiseProduct(mask);
  std::vector<double> alpha(memory.size());
  std::vector<double> rho(memory.size());
  for (std::size_t j = memory.size(); j-- > 0;) {
    const Flat ys = memory[j].y.cwiseProduct(mask);
    const double sy = memory[j].s.cwiseProduct(mask).dot(ys);
    rho[j] = sy > 0.0 ? 1.0 / sy : 0.0;
    alpha[j] = rho[j] * memory[j].s.cwiseProduct(mask).dot(q);
    q -= alpha[j] * ys;
  }
  double gamma = fallback_scale;
  if (!memory.empty()) {
    const Flat ys = memory.back().y.cwiseProduct(mask);
    const double sy = memory.back().s.cwiseProduct(mask).dot(ys);
    const double yy = ys.squaredNorm();
    if (sy > 0.0 && yy > 0.0) gamma = sy / yy;
  }
  Flat r = gamma * q;
  for (std::size_t j = 0; j < memory.size(); ++j) {
    const double beta = rho[j] * memory[j].y.cwiseProduct(mask).dot(r);
    r += (alpha[j] - beta) * memory[j].s.cwiseProduct(mask);
  }
  // Bound-held variables take a plain gradient step; projection pins them.
  return r + fallback_scale * g.cwiseProduct(Flat::Ones(g.size()) - mask);
}

}  // namespace

std::string_view to_string(AscentMethod method) {
  return method == AscentMethod::ProjectedLbfgs ? "projected_lbfgs" : "projected_gradient";
}

OptimizationReport optimize_from(const SystemConfig& config, const Start& start,
                                 const OptimizerOptions& options) {
  if (options.max_iterations < 1) throw ConfigError("iteration budget must be >= 1");
  config.validate();
  const double top = config.max_control();
  ControlGrid grid = start.grid;
  for (auto& v : grid.u1) v = std::clamp(v, 0.0, top);
  for (auto& v : grid.u2) v = std::clamp(v, 0.0, top);
  grid.validate(top);

  const GradientOptions gopt{options.substeps, false};
  GradientResult gr = gradient(config, grid, gopt);
  double value = gr.efficiency;
  Flat u = flatten(grid.u1, grid.u2);
  Flat g = flatten(gr.d_u1, gr.d_u2);
  double pg_norm = projected_gradient_norm(grid, gr, top);

  OptimizationReport report;
  report.start_label = start.label;
  StartSummary summary{start.label, value, value, 0, 0.0, false};
  if (options.record_history) report.history.push_back(value);

  const auto project = [top](Flat v) { return v.cwiseMax(0.0).cwiseMin(top); };
  ControlGrid trial_grid = grid;
  std::deque<CurvaturePair> memory;
  double step_scale = options.initial_step;
  int iteration = 0;

  while (iteration < options.max_iterations && pg_norm >= options.tolerance) {
    Flat direction;
    double step = 1.0;
    if (options.method == AscentMethod::ProjectedLbfgs) {
      const double band = std::min(1e-3 * top, pg_norm);
      direction = lbfgs_direction(memory, g, free_mask(u, g, top, band), step_scale);
      if (!(g.dot(direction) > 0.0)) {
        memory.clear();
        direction = step_scale * g;
      }
    } else {
      direction = g;
      step = step_scale;
    }

    // Armijo backtracking along the projection arc.
    bool accepted = false;
    bool tried_gradient = options.method == AscentMethod::ProjectedGradient;
    Flat trial;
    double trial_value = value;
    for (int bt = 0;; ++bt) {
      if (bt > options.max_backtracks) {
        if (tried_gradient) break;
        // The quasi-Newton direction failed; retry once along the gradient.
        tried_gradient = true;
        memory.clear();
        direction = g;
        step = options.initial_step;
        bt = 0;
      }
      trial = project(u + step * direction);
      const double predicted = g.dot(trial - u);
      if (predicted > 0.0) {
        unflatten(trial, trial_grid);
        trial_value = excited_population(propagate_final(config, trial_grid, options.substeps));
        if (trial_value >= value + options.armijo * predicted) {
          accepted = true;
          break;
        }
      }
      step *= options.shrink;
    }
    if (!accepted) break;

    ++iteration;
    GradientResult gr_new = gradient(config, trial_grid, gopt);
    Flat g_new = flatten(gr_new.d_u1, gr_new.d_u2);
    const Flat s = trial - u;
    const Flat y = g - g_new;
    const double sy = s.dot(y);
    if (options.method == AscentMethod::ProjectedLbfgs) {
      if (sy > 1e-12 * s.norm() * y.norm()) {
        memory.push_back({s, y});
        if (memory.size() > static_cast<std::size_t>(options.memory)) memory.pop_front();
      }
    } else if (options.spectral_steps) {
      // Barzilai-Borwein step for the minimization of -J.
      step_scale = sy > 0.0 ? std::clamp(s.squaredNorm() / sy, 1e-8, 1e8)
                            : std::min(step * 4.0, 1e8);
    } else {
      step_scale = options.initial_step;
    }

    u = std::move(trial);
    g = std::move(g_new);
    std::swap(grid, trial_grid);
    value = gr_new.efficiency;
    pg_norm = projected_gradient_norm(grid, gr_new, top);
    if (options.record_history) report.history.push_back(value);
  }

  report.grid = std::move(grid);
  report.efficiency = std::clamp(value, 0.0, 1.0);
  report.iterations = iteration;
  report.projected_gradient_norm = pg_norm;
  report.converged = pg_norm < options.tolerance;
  summary.efficiency = report.efficiency;
  summary.iterations = iteration;
  summary.projected_gradient_norm = pg_norm;
  summary.converged = report.converged;
  report.starts.push_back(summary);
  return report;
}

OptimizationReport optimize(const SystemConfig& config, double T, std::size_t n_intervals,
                            const std::vector<Start>& starts, const OptimizerOptions& options,
                            int jobs) {
  if (!(T > 0.0)) throw ConfigError("duration must be > 0");
  if (starts.empty()) throw ConfigError("optimize needs at least one start");
  if (options.max_iterations < 1) throw ConfigError("iteration budget must be >= 1");
  for (const auto& s : starts) {
    if (s.grid.n_intervals() != n_intervals || std::abs(s.grid.T - T) > 1e-12 * T) {
      throw ConfigError("start '" + s.label + "' does not match the requested grid");
    }
  }

  std::vector<OptimizationReport> runs(starts.size());
  parallel_for(starts.size(), jobs,
               [&](std::size_t i) { runs[i] = optimize_from(config, starts[i], options); });

  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    const auto& a = runs[i];
    const auto& b = runs[best];
    if (a.efficiency > b.efficiency ||
        (a.efficiency == b.efficiency && a.iterations < b.iterations)) {
      best = i;
    }
  }
  std::vector<StartSummary> summaries;
  for (const auto& r : runs) summaries.push_back(r.starts.front());
  OptimizationReport report = std::move(runs[best]);
  report.starts = std::move(summaries);
  return report;
}

std::string_view to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::BangMax:
      return "bang_max";
    case SegmentKind::Interior:
      return "interior";
    case SegmentKind::BangMin:
      return "bang_min";
  }
  return "unknown";
}

ControlStructure detect_structure(const ControlGrid& grid, double tolerance, double A) {
  const double top = std::sqrt(A);
  const double band = tolerance * top;
  const auto label = [&](double v) {
    if (v >= top - band) return SegmentKind::BangMax;
    if (v <= band) return SegmentKind::BangMin;
    return SegmentKind::Interior;
  };
  const auto segments = [&](const std::vector<double>& u) {
    std::vector<Segment> out;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const SegmentKind kind = label(u[k]);
      if (out.empty() || out.back().kind != kind) {
        out.push_back({kind, k, k, grid.interval_start(k), grid.interval_end(k)});
      } else {
        out.back().last = k;
        out.back().t_end = grid.interval_end(k);
      }
    }
    return out;
  };
  return {segments(grid.u1), segments(grid.u2)};
}

}  // namespace lics
