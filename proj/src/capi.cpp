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

#include "spinbath/spinbath.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <memory>
#include <new>
#include <string>

#include "spinbath/bath_spec.hpp"
#include "spinbath/config.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/experiments.hpp"
#include "spinbath/protocols.hpp"
#include "spinbath/spin_algebra.hpp"
#include "spinbath/validation.hpp"

struct sb_bath {
  spinbath::BathSpec spec;
};

struct sb_record {
  spinbath::RunRecord rec;
};

struct sb_table {
  spinbath::Table table;
};

struct sb_config {
  spinbath::ScenarioConfig config;
  std::string scenario;
};

namespace {

thread_local std::string last_error;

sb_status fail(sb_status status, const char* message) {
  last_error = message;
  return status;
}

// Runs body and turns any exception into a status code.
template <typename Body>
sb_status guarded(Body&& body) {
  try {
    body();
    return SB_OK;
  } catch (const spinbath::ArgumentError& e) {
    return fail(SB_ERR_ARGUMENT, e.what());
  } catch (const spinbath::DegenerateCouplingError& e) {
    return fail(SB_ERR_DEGENERATE, e.what());
  } catch (const spinbath::ResourceError& e) {
    return fail(SB_ERR_RESOURCE, e.what());
  } catch (const spinbath::ConfigurationError& e) {
    return fail(SB_ERR_CONFIG, e.what());
  } catch (const spinbath::IntegrityError& e) {
    return fail(SB_ERR_INTEGRITY, e.what());
  } catch (const spinbath::ContractViolation& e) {
    return fail(SB_ERR_CONTRACT, e.what());
  } catch (const spinbath::IoError& e) {
    return fail(SB_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SB_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(SB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SB_ERR_INTERNAL, "unknown exception");
  }
}

spinbath::ProtocolSchedule schedule_for(const char* protocol, const spinbath::BathSpec& spec,
                                        const sb_run_params& p) {
  const double tau_res = p.tau_res > 0.0 ? p.tau_res : spinbath::default_tau_res(spec);
  if (std::strcmp(protocol, "drt") == 0) return spinbath::make_drt(spec, tau_res, p.cycles);
  if (std::strcmp(protocol, "adrt") == 0) {
    const double tau_disp = p.tau_disp > 0.0 ? p.tau_disp : spinbath::default_tau_disp(spec);
    return spinbath::make_adrt(spec, tau_res, tau_disp, p.cycles, p.jitter, p.seed);
  }
  return spinbath::make_interacting(spec, tau_res, p.cycles);
}

sb_status run_protocol(const char* protocol, const sb_bath* bath, const sb_run_params* params, sb_record** out) {
  if (!bath || !out) return fail(SB_ERR_NULL, "null argument");
  *out = nullptr;
  sb_run_params p;
  sb_run_params_init(&p);
  if (params) p = *params;
  return guarded([&] {
    spinbath::RunOptions opt;
    opt.reset_fidelity = p.reset_fidelity;
    auto rec = std::make_unique<sb_record>();
    rec->rec = spinbath::run(schedule_for(protocol, bath->spec, p), bath->spec, opt);
    *out = rec.release();
  });
}

sb_status make_table(sb_table** out, const std::function<spinbath::Table()>& build) {
  if (!out) return fail(SB_ERR_NULL, "null output pointer");
  *out = nullptr;
  return guarded([&] { *out = new sb_table{build()}; });
}

}  // namespace

extern "C" {

const char* sb_version(void) {
  static const std::string v = spinbath::library_version();
  return v.c_str();
}

const char* sb_status_name(sb_status status) {
  switch (status) {
    case SB_OK:
      return "ok";
    case SB_ERR_ARGUMENT:
      return "argument error";
    case SB_ERR_DEGENERATE:
      return "degenerate coupling";
    case SB_ERR_RESOURCE:
      return "resource limit";
    case SB_ERR_CONFIG:
      return "configuration error";
    case SB_ERR_INTEGRITY:
      return "integrity error";
    case SB_ERR_CONTRACT:
      return "contract violation";
    case SB_ERR_IO:
      return "i/o error";
    case SB_ERR_VALIDATION:
      return "validation failure";
    case SB_ERR_NULL:
      return "null argument";
    case SB_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* sb_last_error(void) { return last_error.c_str(); }

sb_status sb_bath_create(int n, double omega_larmor, const double* gx, const double* gz, const double* j,
                         sb_bath** out) {
  if (!out || !gx || !gz) return fail(SB_ERR_NULL, "null argument");
  *out = nullptr;
  if (n < 1 || n > 20) return fail(SB_ERR_ARGUMENT, "n must lie in [1, 20]");
  return guarded([&] {
    auto b = std::make_unique<sb_bath>();
    b->spec.n = n;
    b->spec.omega_larmor = omega_larmor;
    b->spec.gx.assign(gx, gx + n);
    b->spec.gz.assign(gz, gz + n);
    if (j) b->spec.j = std::vector<double>(j, j + (n - 1));
    b->spec.validate();
    *out = b.release();
  });
}

sb_status sb_bath_sample(int n, double omega_larmor, double range_ratio, uint64_t seed, sb_bath** out) {
  if (!out) return fail(SB_ERR_NULL, "null output pointer");
  *out = nullptr;
  return guarded([&] { *out = new sb_bath{spinbath::sample_couplings(n, omega_larmor, range_ratio, seed)}; });
}

int sb_bath_size(const sb_bath* bath) { return bath ? bath->spec.n : 0; }

sb_status sb_bath_couplings(const sb_bath* bath, double* gx, double* gz) {
  if (!bath) return fail(SB_ERR_NULL, "null bath");
  if (gx) std::copy(bath->spec.gx.begin(), bath->spec.gx.end(), gx);
  if (gz) std::copy(bath->spec.gz.begin(), bath->spec.gz.end(), gz);
  return SB_OK;
}

void sb_bath_free(sb_bath* bath) { delete bath; }

sb_status sb_closed_form_purity(int n, double* out) {
  if (!out) return fail(SB_ERR_NULL, "null output pointer");
  return guarded([&] { *out = spinbath::closed_form_purity(n); });
}

sb_status sb_dicke_multiplicity(int n, int two_i, uint64_t* out) {
  if (!out) return fail(SB_ERR_NULL, "null output pointer");
  return guarded([&] { *out = spinbath::dicke_multiplicity(n, two_i); });
}

void sb_run_params_init(sb_run_params* params) {
  if (!params) return;
  params->cycles = 100;
  params->tau_res = 0.0;
  params->tau_disp = 0.0;
  params->jitter = 0.0;
  params->seed = 0;
  params->reset_fidelity = 1.0;
}

sb_status sb_run_drt(const sb_bath* bath, const sb_run_params* params, sb_record** out) {
  return run_protocol("drt", bath, params, out);
}

sb_status sb_run_adrt(const sb_bath* bath, const sb_run_params* params, sb_record** out) {
  return run_protocol("adrt", bath, params, out);
}

sb_status sb_run_interacting(const sb_bath* bath, const sb_run_params* params, sb_record** out) {
  return run_protocol("interacting", bath, params, out);
}

size_t sb_record_rows(const sb_record* record) { return record ? record->rec.rows.size() : 0; }

sb_status sb_record_row(const sb_record* record, size_t row, int* cycle, double* elapsed, double* purity,
                        double* polarization) {
  if (!record) return fail(SB_ERR_NULL, "null record");
  if (row >= record->rec.rows.size()) return fail(SB_ERR_ARGUMENT, "row index out of range");
  const spinbath::RunRow& r = record->rec.rows[row];
  if (cycle) *cycle = r.cycle;
  if (elapsed) *elapsed = r.elapsed;
  if (purity) *purity = r.purity;
  if (polarization) *polarization = r.polarization;
  return SB_OK;
}

int sb_record_valid(const sb_record* record) { return record && record->rec.valid ? 1 : 0; }

void sb_record_free(sb_record* record) { delete record; }

sb_status sb_scenario_fig1(int n_max_exact, int n_max_formula, sb_table** out) {
  return make_table(out, [&] {
    spinbath::Fig1Options o;
    o.n_max_exact = n_max_exact;
    o.n_max_formula = n_max_formula;
    return spinbath::scenario_fig1(o);
  });
}

sb_status sb_scenario_fig2b(uint64_t seed, int cycles, sb_table** out) {
  return make_table(out, [&] {
    spinbath::Fig2bOptions o;
    o.seed = seed;
    o.cycles = cycles;
    return spinbath::scenario_fig2b(o);
  });
}

sb_status sb_scenario_fig3(const double* alphas, size_t count, int cycles, sb_table** out) {
  if (count > 0 && !alphas) return fail(SB_ERR_NULL, "null alphas");
  return make_table(out, [&] {
    spinbath::Fig3Options o;
    if (count > 0) o.alphas.assign(alphas, alphas + count);
    o.cycles = cycles;
    return spinbath::scenario_fig3(o);
  });
}

size_t sb_table_rows(const sb_table* table) { return table ? table->table.rows.size() : 0; }

size_t sb_table_columns(const sb_table* table) { return table ? table->table.columns.size() : 0; }

const char* sb_table_column_name(const sb_table* table, size_t column) {
  if (!table || column >= table->table.columns.size()) return nullptr;
  return table->table.columns[column].c_str();
}

sb_status sb_table_value(const sb_table* table, size_t row, size_t column, double* value, int* present) {
  if (!table || !value) return fail(SB_ERR_NULL, "null argument");
  if (row >= table->table.rows.size() || column >= table->table.columns.size())
    return fail(SB_ERR_ARGUMENT, "cell index out of range");
  const auto& cell = table->table.rows[row][column];
  *value = cell.value_or(0.0);
  if (present) *present = cell ? 1 : 0;
  return SB_OK;
}

const char* sb_table_scenario(const sb_table* table) { return table ? table->table.scenario.c_str() : nullptr; }

sb_status sb_table_write(const sb_table* table, const char* path) {
  if (!table) return fail(SB_ERR_NULL, "null table");
  return guarded([&] {
    if (path) {
      spinbath::write_csv_file(path, table->table);
    } else {
      spinbath::write_csv(std::cout, table->table);
      std::cout.flush();
      if (!std::cout) throw spinbath::IoError("failed writing standard output");
    }
  });
}

void sb_table_free(sb_table* table) { delete table; }

sb_status sb_config_load(const char* path, sb_config** out) {
  if (!path || !out) return fail(SB_ERR_NULL, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<sb_config>();
    c->config = spinbath::load_config(path);
    c->scenario = std::string(spinbath::to_string(c->config.scenario));
    *out = c.release();
  });
}

sb_status sb_config_set_seed(sb_config* config, uint64_t seed) {
  if (!config) return fail(SB_ERR_NULL, "null config");
  config->config.seed = seed;
  return SB_OK;
}

const char* sb_config_scenario(const sb_config* config) { return config ? config->scenario.c_str() : nullptr; }

const char* sb_config_output(const sb_config* config) {
  if (!config || !config->config.output) return nullptr;
  return config->config.output->c_str();
}

sb_status sb_config_run(const sb_config* config, sb_table** out) {
  if (!config) return fail(SB_ERR_NULL, "null config");
  return make_table(out, [&] { return spinbath::run_scenario(config->config); });
}

void sb_config_free(sb_config* config) { delete config; }

sb_status sb_validate(char** report) {
  if (!report) return fail(SB_ERR_NULL, "null output pointer");
  *report = nullptr;
  bool ok = false;
  const sb_status st = guarded([&] {
    const spinbath::ValidationReport r = spinbath::validate();
    const std::string text = r.to_text();
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *report = buf;
    ok = r.passed();
  });
  if (st != SB_OK) return st;
  return ok ? SB_OK : fail(SB_ERR_VALIDATION, "one or more invariant checks failed");
}

void sb_string_free(char* s) { std::free(s); }

}  // extern "C"
