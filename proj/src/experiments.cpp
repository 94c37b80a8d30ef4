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

#include "spinbath/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "spinbath/errors.hpp"
#include "spinbath/random.hpp"
#include "spinbath/spin_algebra.hpp"

namespace spinbath {

namespace {

constexpr int kFig3Spins = 6;
constexpr double kFig3Chain[kFig3Spins - 1] = {0.8, 1.0, 1.2, 1.3, 2.1};
constexpr int kMaxExactFig1 = 10;

std::vector<double> purities(const RunRecord& rec, int cycles) {
  std::vector<double> out;
  out.reserve(cycles + 1);
  for (const RunRow& row : rec.rows) out.push_back(row.purity);
  return out;
}

void require_valid(const RunRecord& rec, const std::string& what) {
  if (!rec.valid) throw IntegrityError(what + ": " + rec.error);
}

std::string alpha_label(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

}  // namespace

BathSpec sample_couplings(int n, double omega_larmor, double range_ratio, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("sample_couplings needs n >= 1");
  if (!(range_ratio > 0.0 && range_ratio <= 1.0)) throw ArgumentError("range_ratio must lie in (0, 1]");
  if (!(omega_larmor > 0.0) || !std::isfinite(omega_larmor)) throw ArgumentError("omega_larmor must be positive");
  SeededRng rng(seed);
  BathSpec spec;
  spec.n = n;
  spec.omega_larmor = omega_larmor;
  for (int k = 0; k < n; ++k) {
    const double magnitude = range_ratio * omega_larmor * rng.uniform_open_closed();
    const double theta = std::numbers::pi * rng.uniform();
    spec.gx.push_back(magnitude * std::sin(theta));
    spec.gz.push_back(magnitude * std::cos(theta));
  }
  spec.validate();
  return spec;
}

std::size_t Table::column_index(std::string_view column) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == column) return i;
  }
  throw ArgumentError("no column named " + std::string(column));
}

std::optional<double> Table::cell(std::size_t row, std::string_view column) const {
  if (row >= rows.size()) throw ArgumentError("row index out of range");
  return rows[row][column_index(column)];
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_csv(std::ostream& out, const Table& table) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a64(table.config)));
  out << "# schema: " << kCsvSchema << '\n';
  out << "# scenario: " << table.scenario << '\n';
  out << "# seed: " << table.seed << '\n';
  out << "# config_hash: fnv1a64:" << hash << '\n';
  out << "# config: " << table.config << '\n';
  out << "# version: " << library_version() << '\n';
  for (const auto& [key, value] : table.extra_meta) out << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (row[i]) out << format_number(*row[i]);
    }
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const Table& table) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  write_csv(f, table);
  f.flush();
  if (!f) throw IoError("failed writing " + path);
}

Table scenario_fig1(const Fig1Options& options) {
  if (options.n_max_exact < 0 || options.n_max_formula < 1)
    throw ArgumentError("fig1 ranges must be positive");
  if (options.n_max_exact > kMaxExactFig1)
    throw ResourceError("fig1: n_max_exact " + std::to_string(options.n_max_exact) + " exceeds cap " +
                        std::to_string(kMaxExactFig1));
  if (options.n_max_formula > 62) throw ResourceError("fig1: n_max_formula exceeds cap 62");
  if (options.max_cycles < 1) throw ArgumentError("fig1: max_cycles must be positive");

  std::ostringstream cfg;
  cfg << "fig1 n_max_exact=" << options.n_max_exact << " n_max_formula=" << options.n_max_formula
      << " max_cycles=" << options.max_cycles;
  Table t;
  t.scenario = "fig1";
  t.config = cfg.str();
  t.columns = {"n", "purity_closed_form", "purity_simulated"};

  std::vector<int> exact_ns;
  for (int n = 1; n <= options.n_max_exact; ++n) exact_ns.push_back(n);
  const auto simulated = parallel_map(exact_ns, [&](int n) {
    const BathSpec spec = make_uniform_spec(n, 1e-2);
    RunOptions opt;
    opt.stop_on_convergence = true;
    opt.convergence_tol = 1e-12;
    opt.max_manifold_spins = 0;
    const RunRecord rec = run(make_drt(spec, default_tau_res(spec), options.max_cycles), spec, opt);
    require_valid(rec, "fig1 n=" + std::to_string(n));
    return rec.rows.back().purity;
  });

  const int n_last = std::max(options.n_max_exact, options.n_max_formula);
  for (int n = 1; n <= n_last; ++n) {
    std::vector<std::optional<double>> row{static_cast<double>(n), closed_form_purity(n), std::nullopt};
    if (n <= options.n_max_exact) row[2] = simulated[n - 1];
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table scenario_fig2b(const Fig2bOptions& options) {
  if (options.cycles < 0) throw ArgumentError("fig2b: cycles must be non-negative");
  const BathSpec spec = sample_couplings(options.n, options.omega_larmor, options.range_ratio, options.seed);
  const double tau_res = default_tau_res(spec);
  const double tau_disp = default_tau_disp(spec);

  std::ostringstream cfg;
  cfg.precision(12);
  cfg << "fig2b n=" << options.n << " seed=" << options.seed << " cycles=" << options.cycles
      << " jitter=" << options.jitter << " range_ratio=" << options.range_ratio
      << " omega_larmor=" << options.omega_larmor;
  Table t;
  t.scenario = "fig2b";
  t.seed = options.seed;
  t.config = cfg.str();
  t.extra_meta.emplace_back("bath", spec.describe());
  t.extra_meta.emplace_back("tau_res", format_number(tau_res));
  t.extra_meta.emplace_back("tau_disp", format_number(tau_disp));
  t.columns = {"cycle", "purity_drt", "purity_adrt", "polarization_drt", "polarization_adrt"};

  RunOptions opt;
  opt.max_manifold_spins = 0;
  const std::vector<ProtocolSchedule> schedules{
      make_drt(spec, tau_res, options.cycles),
      make_adrt(spec, tau_res, tau_disp, options.cycles, options.jitter, options.seed)};
  const auto records = parallel_map(schedules, [&](const ProtocolSchedule& s) { return run(s, spec, opt); });
  require_valid(records[0], "fig2b drt");
  require_valid(records[1], "fig2b adrt");

  for (int c = 0; c <= options.cycles; ++c) {
    const RunRow& d = records[0].rows[c];
    const RunRow& a = records[1].rows[c];
    t.rows.push_back({static_cast<double>(c), d.purity, a.purity, d.polarization, a.polarization});
  }
  return t;
}

BathSpec fig3_spec(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ArgumentError("alpha must be non-negative");
  BathSpec spec = make_uniform_spec(kFig3Spins, 1.0);
  if (alpha > 0.0) {
    std::vector<double> j;
    for (double v : kFig3Chain) j.push_back(alpha * v);
    spec.j = std::move(j);
  }
  return spec;
}

Table scenario_fig3(const Fig3Options& options) {
  if (options.alphas.empty()) throw ArgumentError("fig3 needs at least one alpha");
  if (options.cycles < 0) throw ArgumentError("fig3: cycles must be non-negative");
  for (double a : options.alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ArgumentError("fig3 alphas must be positive");
  }

  std::ostringstream cfg;
  cfg.precision(12);
  cfg << "fig3 cycles=" << options.cycles << " alphas=";
  for (std::size_t i = 0; i < options.alphas.size(); ++i) cfg << (i ? "," : "") << options.alphas[i];
  Table t;
  t.scenario = "fig3";
  t.config = cfg.str();
  const double tau = default_tau_res(fig3_spec(0.0));
  t.extra_meta.emplace_back("tau_res", format_number(tau));
  t.columns.push_back("cycle");
  for (double a : options.alphas) t.columns.push_back("purity_alpha_" + alpha_label(a));
  t.columns.push_back("purity_drt_only");

  // alpha = 0 stands for the DRT-only run without the chain.
  std::vector<double> jobs = options.alphas;
  jobs.push_back(0.0);
  RunOptions opt;
  opt.max_manifold_spins = 0;
  const auto curves = parallel_map(jobs, [&](double alpha) {
    const BathSpec spec = fig3_spec(alpha);
    const ProtocolSchedule s =
        alpha > 0.0 ? make_interacting(spec, tau, options.cycles) : make_drt(spec, tau, options.cycles);
    const RunRecord rec = run(s, spec, opt);
    require_valid(rec, "fig3 alpha=" + alpha_label(alpha));
    return purities(rec, options.cycles);
  });

  for (int c = 0; c <= options.cycles; ++c) {
    std::vector<std::optional<double>> row{static_cast<double>(c)};
    for (const auto& curve : curves) row.push_back(curve[c]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<EnsembleEntry> adrt_drt_ensemble(const std::vector<int>& ns, const std::vector<std::uint64_t>& seeds,
                                             int cycles, double jitter, double range_ratio) {
  std::vector<EnsembleEntry> jobs;
  for (int n : ns) {
    for (std::uint64_t seed : seeds) jobs.push_back({n, seed, 0.0, 0.0});
  }
  RunOptions opt;
  opt.max_manifold_spins = 0;
  return parallel_map(jobs, [&](EnsembleEntry e) {
    const BathSpec spec = sample_couplings(e.n, 1.0, range_ratio, e.seed);
    const double tau_res = default_tau_res(spec);
    const RunRecord drt = run(make_drt(spec, tau_res, cycles), spec, opt);
    const RunRecord adrt = run(make_adrt(spec, tau_res, default_tau_disp(spec), cycles, jitter, e.seed), spec, opt);
    require_valid(drt, "ensemble drt");
    require_valid(adrt, "ensemble adrt");
    e.purity_drt = drt.rows.back().purity;
    e.purity_adrt = adrt.rows.back().purity;
    return e;
  });
}

}  // namespace spinbath
