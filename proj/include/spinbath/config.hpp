// Copyright 2026 The spinbath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINBATH_CONFIG_HPP
#define SPINBATH_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinbath/experiments.hpp"

namespace spinbath {

enum class ScenarioKind { fig1, fig2b, fig3, custom };

std::string_view to_string(ScenarioKind kind);

/// A user-defined run: explicit or sampled couplings plus one protocol.
struct CustomRun {
  std::string protocol = "drt";  // drt | adrt | interacting
  int n = 0;
  double omega_larmor = 1.0;
  double range_ratio = 1e-2;
  std::optional<std::vector<double>> gx;
  std::optional<std::vector<double>> gz;
  std::optional<std::vector<double>> j;
  std::optional<double> tau_res;
  std::optional<double> tau_disp;
  int cycles = 200;
  double jitter = 0.0;
  double reset_fidelity = 1.0;

  /// True when couplings are drawn from the seed rather than given.
  bool sampled() const { return !gx; }
};

/// Parsed scenario file. Example:
///
///   scenario = "fig2b"
///   seed = 1
///   output = "fig2b.csv"
///   [bath]
///   n = 8
///   range_ratio = 0.01
///   [schedule]
///   cycles = 2000
///   jitter = 0.2
struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::fig1;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  Fig1Options fig1;
  Fig2bOptions fig2b;
  Fig3Options fig3;
  CustomRun custom;

  bool randomized() const;
};

/// Throws ConfigurationError on syntax errors, unknown keys, wrong types or
/// out-of-range values.
ScenarioConfig parse_config(std::string_view text, std::string_view source = "<string>");
ScenarioConfig load_config(const std::string& path);

/// Runs the configured scenario. Throws ConfigurationError if a randomized
/// scenario has no seed.
Table run_scenario(const ScenarioConfig& config);

/// Full per-cycle record of a custom run as a table.
Table custom_table(const CustomRun& run, std::uint64_t seed);

}  // namespace spinbath

#endif  // SPINBATH_CONFIG_HPP
