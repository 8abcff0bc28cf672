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

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "lics/experiments.hpp"
#include "lics/model.hpp"
#include "lics/optimizer.hpp"
#include "lics/propagator.hpp"

namespace lics {

inline constexpr const char* kToolVersion = "1.0.0";

// Shortest decimal string that round-trips to the same double.
std::string format_number(double value);

// Control grid CSV: header "t_start,t_end,u1,u2", one row per interval.
void write_grid_csv(std::ostream& out, const ControlGrid& grid);
ControlGrid read_grid_csv(std::istream& in);

nlohmann::json grid_to_json(const ControlGrid& grid);
ControlGrid grid_from_json(const nlohmann::json& doc);

// Header "t,x1,x2,x3,x4,norm2,pop_g,pop_e"; needs a recorded trajectory.
void write_trajectory_csv(std::ostream& out, const PropagationResult& result);

// Header "<axis>,efficiency,<metadata...>".
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

nlohmann::json system_to_json(const SystemConfig& config);
SystemConfig system_from_json(const nlohmann::json& doc);  // strict keys

nlohmann::json report_to_json(const OptimizationReport& report);

ControlGrid load_grid_file(const std::string& path);  // .csv or .json by extension
void save_text(const std::string& path, const std::string& text);

}  // namespace lics
