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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lics/experiments.hpp"
#include "lics/model.hpp"
#include "lics/optimizer.hpp"

namespace lics::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kNumericalError = 2 };

struct GridSpec {
  double first = 0.0;
  double last = 0.0;
  double step = 0.0;
  std::vector<double> values;  // wins when non-empty

  std::vector<double> resolve() const;
};

struct ProtocolSpec {
  std::string kind = "sincos";  // gaussian | sincos | optimal | file
  double duration = 1.0;        // AT for sincos and optimal
  double width = 1.0;           // A T_g for gaussian
  double half_delay = 0.5;      // A tau for gaussian
  std::string file;
};

// Everything a run needs; parsed strictly from one JSON document.
struct RunConfig {
  SystemConfig system;
  ProtocolSpec protocol;
  std::size_t n_intervals = 200;
  int substeps = kDefaultSubsteps;
  OptimizerOptions optimizer;
  BaselineOptions baseline;
  SaturationOptions saturation;
  std::optional<GridSpec> sweep;
  std::optional<GridSpec> alpha;
  std::size_t smoothing_factor = 20;
  std::string output = "out";
  unsigned seed = 0;

  nlohmann::json to_json() const;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

// Entry point behind the `lics` executable. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lics::cli
