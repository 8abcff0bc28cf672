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

#include "lics/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lics {

using nlohmann::json;

std::string format_number(double value) {
  char buffer[64];
  const auto res = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, res.ptr);
}

void write_grid_csv(std::ostream& out, const ControlGrid& grid) {
  out << "t_start,t_end,u1,u2\n";
  for (std::size_t k = 0; k < grid.n_intervals(); ++k) {
    out << format_number(grid.interval_start(k)) << ',' << format_number(grid.interval_end(k))
        << ',' << format_number(grid.u1[k]) << ',' << format_number(grid.u2[k]) << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& text, std::size_t line) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ConfigError("line " + std::to_string(line) + ": not a number: '" + text + "'");
  }
  return value;
}

}  // namespace

ControlGrid read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("control CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t_start,t_end,u1,u2") {
    throw ConfigError("line 1: expected header 't_start,t_end,u1,u2'");
  }
  ControlGrid grid;
  grid.u1.clear();
  grid.u2.clear();
  std::vector<double> ends;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split(line);
    if (fields.size() != 4) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 4 fields");
    }
    const double start = parse_number(fields[0], line_no);
    const double end = parse_number(fields[1], line_no);
    const double expected_start = ends.empty() ? 0.0 : ends.back();
    if (std::abs(start - expected_start) > 1e-9 * std::max(1.0, end) || !(end > start)) {
      throw ConfigError("line " + std::to_string(line_no) + ": intervals must be contiguous from 0");
    }
    ends.push_back(end);
    grid.u1.push_back(parse_number(fields[2], line_no));
    grid.u2.push_back(parse_number(fields[3], line_no));
  }
  if (ends.empty()) throw ConfigError("control CSV has no rows");
  grid.T = ends.back();
  const double h = grid.interval_width();
  for (std::size_t k = 0; k < ends.size(); ++k) {
    if (std::abs(ends[k] - h * static_cast<double>(k + 1)) > 1e-6 * grid.T) {
      throw ConfigError("control CSV intervals are not uniform");
    }
  }
  return grid;
}

json grid_to_json(const ControlGrid& grid) {
  return json{{"T", grid.T}, {"n_intervals", grid.n_intervals()}, {"u1", grid.u1},
              {"u2", grid.u2}};
}

ControlGrid grid_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("control JSON must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "T" && key != "n_intervals" && key != "u1" && key != "u2") {
      throw ConfigError("unknown key '" + key + "' in control JSON");
    }
  }
  try {
    ControlGrid grid(doc.at("T").get<double>(), doc.at("u1").get<std::vector<double>>(),
                     doc.at("u2").get<std::vector<double>>());
    if (doc.at("n_intervals").get<std::size_t>() != grid.n_intervals()) {
      throw ConfigError("n_intervals does not match the control arrays");
    }
    return grid;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("control JSON: ") + e.what());
  }
}

void write_trajectory_csv(std::ostream& out, const PropagationResult& result) {
  out << "t,x1,x2,x3,x4,norm2,pop_g,pop_e\n";
  for (std::size_t i = 0; i < result.trajectory.size(); ++i) {
    const auto& p = result.trajectory[i];
    out << format_number(p.t);
    for (int j = 0; j < 4; ++j) out << ',' << format_number(p.x[j]);
    out << ',' << format_number(result.norm_history[i]) << ','
        << format_number(ground_population(p.x)) << ',' << format_number(excited_population(p.x))
        << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << sweep.axis_name << ",efficiency";
  for (const auto& name : sweep.metadata_names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    out << format_number(sweep.axis_values[i]) << ',' << format_number(sweep.efficiencies[i]);
    if (!sweep.metadata.empty()) {
      for (const auto& field : sweep.metadata[i]) out << ',' << field;
    }
    out << '\n';
  }
}

json system_to_json(const SystemConfig& config) {
  return json{{"q", config.q},
              {"R", config.R},
              {"detuning_mode", std::string(to_string(config.detuning_mode))},
              {"A", config.A},
              {"stark_profile",
               {config.stark.pump_ground, config.stark.stokes_ground, config.stark.pump_excited,
                config.stark.stokes_excited}}};
}

SystemConfig system_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("'system' must be an object");
  SystemConfig config;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "q") {
        config.q = value.get<double>();
      } else if (key == "R") {
        config.R = value.get<double>();
      } else if (key == "A") {
        config.A = value.get<double>();
      } else if (key == "detuning_mode") {
        config.detuning_mode = parse_detuning_mode(value.get<std::string>());
      } else if (key == "stark_profile") {
        const auto v = value.get<std::vector<double>>();
        if (v.size() != 4) throw ConfigError("stark_profile needs four coefficients");
        config.stark = {v[0], v[1], v[2], v[3]};
      } else {
        throw ConfigError("unknown key '" + key + "' in 'system'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("'system': ") + e.what());
  }
  config.validate();
  return config;
}

json report_to_json(const OptimizationReport& report) {
  json starts = json::array();
  for (const auto& s : report.starts) {
    starts.push_back({{"label", s.label},
                      {"initial_efficiency", s.initial_efficiency},
                      {"efficiency", s.efficiency},
                      {"iterations", s.iterations},
                      {"projected_gradient_norm", s.projected_gradient_norm},
                      {"converged", s.converged}});
  }
  return json{{"efficiency", report.efficiency},
              {"iterations", report.iterations},
              {"projected_gradient_norm", report.projected_gradient_norm},
              {"converged", report.converged},
              {"start_label", report.start_label},
              {"history", report.history},
              {"starts", starts},
              {"controls", grid_to_json(report.grid)}};
}

ControlGrid load_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pulse file '" + path + "'");
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    try {
      return grid_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
  return read_grid_csv(in);
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace lics
