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

#ifndef SPINBATH_EXPERIMENTS_HPP
#define SPINBATH_EXPERIMENTS_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "spinbath/bath_spec.hpp"
#include "spinbath/protocols.hpp"

namespace spinbath {

inline constexpr std::string_view kCsvSchema = "spinbath-csv/1";

/// Per spin: |g| uniform in (0, range_ratio * omega_L], then the angle theta
/// uniform in [0, pi); gx = |g| sin(theta), gz = |g| cos(theta).
BathSpec sample_couplings(int n, double omega_larmor, double range_ratio, std::uint64_t seed);

/// A scenario result. Empty cells are std::nullopt.
struct Table {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string config;  // canonical parameter string, hashed into the header
  std::vector<std::pair<std::string, std::string>> extra_meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;

  std::optional<double> cell(std::size_t row, std::string_view column) const;
  std::size_t column_index(std::string_view column) const;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);
/// 12 significant digits.
std::string format_number(double value);

void write_csv(std::ostream& out, const Table& table);
/// Throws IoError if the file cannot be written.
void write_csv_file(const std::string& path, const Table& table);

struct Fig1Options {
  int n_max_exact = 8;
  int n_max_formula = 40;
  int max_cycles = 5000;
};

/// Columns: n, purity_closed_form, purity_simulated (empty above n_max_exact).
Table scenario_fig1(const Fig1Options& options = {});

struct Fig2bOptions {
  int n = 8;
  std::uint64_t seed = 1;
  int cycles = 2000;
  double jitter = 0.2;
  double range_ratio = 1e-2;
  double omega_larmor = 1.0;
};

/// Columns: cycle, purity_drt, purity_adrt, polarization_drt,
/// polarization_adrt.
Table scenario_fig2b(const Fig2bOptions& options = {});

struct Fig3Options {
  std::vector<double> alphas{0.1, 1.0, 10.0};
  int cycles = 1000;
};

/// n = 6, g = (1, ..., 1), J = alpha (0.8, 1.0, 1.2, 1.3, 2.1). Columns:
/// cycle, one purity_alpha_<a> per alpha, purity_drt_only.
Table scenario_fig3(const Fig3Options& options = {});

/// Bath used by scenario_fig3 for one alpha (alpha = 0 drops the chain).
BathSpec fig3_spec(double alpha);

struct EnsembleEntry {
  int n = 0;
  std::uint64_t seed = 0;
  double purity_drt = 0.0;
  double purity_adrt = 0.0;
};

/// Final DRT and ADRT purities over sampled baths, one entry per (n, seed).
std::vector<EnsembleEntry> adrt_drt_ensemble(const std::vector<int>& ns, const std::vector<std::uint64_t>& seeds,
                                             int cycles, double jitter, double range_ratio = 1e-2);

/// Applies fn to every item on up to hardware_concurrency threads. Results
/// keep the input order; the first exception thrown is rethrown.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& items, Fn fn) -> std::vector<decltype(fn(items.front()))> {
  using Out = decltype(fn(items.front()));
  std::vector<std::optional<Out>> slots(items.size());
  std::exception_ptr failure;
  std::mutex mu;
  std::size_t next = 0;
  auto worker = [&]() {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= items.size() || failure) return;
        i = next++;
      }
      try {
        slots[i].emplace(fn(items[i]));
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(items.size(), std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<Out> out;
  out.reserve(items.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace spinbath

#endif  // SPINBATH_EXPERIMENTS_HPP
