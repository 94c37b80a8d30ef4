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

// Command-line front end. Talks to the simulator only through the C API.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinbath/spinbath.h"

namespace {

enum ExitCode { kOk = 0, kValidationFailed = 1, kConfigError = 2, kIntegrityError = 3 };

int exit_code_for(sb_status st) {
  switch (st) {
    case SB_OK:
      return kOk;
    case SB_ERR_VALIDATION:
      return kValidationFailed;
    case SB_ERR_INTEGRITY:
    case SB_ERR_CONTRACT:
    case SB_ERR_INTERNAL:
      return kIntegrityError;
    default:
      return kConfigError;
  }
}

int report(sb_status st) {
  if (st != SB_OK) std::fprintf(stderr, "spinbath: %s: %s\n", sb_status_name(st), sb_last_error());
  return exit_code_for(st);
}

// Builds a table through `make`, writes it and releases it.
template <typename Make>
int emit(Make&& make, const std::optional<std::string>& path) {
  sb_table* table = nullptr;
  sb_status st = make(&table);
  if (st == SB_OK) st = sb_table_write(table, path ? path->c_str() : nullptr);
  sb_table_free(table);
  return report(st);
}

int run_config(const std::string& config_path, const std::optional<std::uint64_t>& seed,
               const std::optional<std::string>& out_dir) {
  sb_config* cfg = nullptr;
  sb_status st = sb_config_load(config_path.c_str(), &cfg);
  if (st != SB_OK) return report(st);
  if (seed) sb_config_set_seed(cfg, *seed);

  std::optional<std::string> path;
  if (out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*out_dir, ec);
    if (ec) {
      sb_config_free(cfg);
      std::fprintf(stderr, "spinbath: cannot create %s: %s\n", out_dir->c_str(), ec.message().c_str());
      return kConfigError;
    }
    const char* named = sb_config_output(cfg);
    const std::string file = named ? std::filesystem::path(named).filename().string()
                                   : std::string(sb_config_scenario(cfg)) + ".csv";
    path = (std::filesystem::path(*out_dir) / file).string();
  } else if (const char* named = sb_config_output(cfg)) {
    path = named;
  }

  const int code = emit([cfg](sb_table** t) { return sb_config_run(cfg, t); }, path);
  sb_config_free(cfg);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-bath cooling simulator"};
  app.set_version_flag("--version", std::string(sb_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::string> run_out;
  auto* run = app.add_subcommand("run", "Run the scenario described by a TOML config file");
  run->add_option("--config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", run_seed, "Override the seed in the config file");
  run->add_option("--out", run_out, "Directory for the CSV output");

  int nmax_exact = 8;
  int nmax_formula = 40;
  std::optional<std::string> fig1_out;
  auto* fig1 = app.add_subcommand("fig1", "Purity bottleneck: closed form and simulated DRT");
  fig1->add_option("--nmax-exact", nmax_exact, "Largest n simulated")->check(CLI::Range(0, 10));
  fig1->add_option("--nmax-formula", nmax_formula, "Largest n from the closed form")->check(CLI::Range(1, 62));
  fig1->add_option("--out", fig1_out, "CSV file (default: standard output)");

  std::uint64_t fig2b_seed = 1;
  int fig2b_cycles = 2000;
  std::optional<std::string> fig2b_out;
  auto* fig2b = app.add_subcommand("fig2b", "DRT vs ADRT purity for one sampled bath of 8 spins");
  fig2b->add_option("--seed", fig2b_seed, "Coupling and jitter seed");
  fig2b->add_option("--cycles", fig2b_cycles, "Cycle count M")->check(CLI::PositiveNumber);
  fig2b->add_option("--out", fig2b_out, "CSV file (default: standard output)");

  std::vector<double> alphas{0.1, 1.0, 10.0};
  int fig3_cycles = 1000;
  std::optional<std::string> fig3_out;
  auto* fig3 = app.add_subcommand("fig3", "Interacting bath of 6 spins for several chain strengths");
  fig3->add_option("--alphas", alphas, "Comma-separated chain scale factors")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  fig3->add_option("--cycles", fig3_cycles, "Cycle count")->check(CLI::PositiveNumber);
  fig3->add_option("--out", fig3_out, "CSV file (default: standard output)");

  auto* validate = app.add_subcommand("validate", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*run) return run_config(config_path, run_seed, run_out);
  if (*fig1) return emit([&](sb_table** t) { return sb_scenario_fig1(nmax_exact, nmax_formula, t); }, fig1_out);
  if (*fig2b) return emit([&](sb_table** t) { return sb_scenario_fig2b(fig2b_seed, fig2b_cycles, t); }, fig2b_out);
  if (*fig3) {
    return emit([&](sb_table** t) { return sb_scenario_fig3(alphas.data(), alphas.size(), fig3_cycles, t); },
                fig3_out);
  }
  if (*validate) {
    char* text = nullptr;
    const sb_status st = sb_validate(&text);
    if (text) std::fputs(text, stdout);
    sb_string_free(text);
    if (st == SB_OK) std::puts("all checks passed");
    return report(st);
  }
  return kConfigError;
}
