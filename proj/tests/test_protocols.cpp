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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/protocols.hpp"

using namespace spinbath;

namespace {

BathSpec spec3() {
  BathSpec s;
  s.n = 3;
  s.gx = {0.7, -0.25, 1.1};
  s.gz = {0.3, 0.9, -0.5};
  s.j = std::vector<double>{0.4, -1.3};
  return s;
}

double gnorm(const std::vector<double>& g) {
  double s = 0.0;
  for (double v : g) s += v * v;
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE("protocols") {
  TEST_CASE("schedules must start with a reset and contain evolution") {
    ProtocolSchedule s;
    s.cycles = 1;
    s.cycle = {EvolveSegment{HamiltonianKind::flip_flop, 1.0, false}, ResetSegment{}};
    CHECK_THROWS_AS(s.validate(), ConfigurationError);
    s.cycle = {ResetSegment{}};
    CHECK_THROWS_AS(s.validate(), ConfigurationError);
    s.cycle = {ResetSegment{}, EvolveSegment{HamiltonianKind::flip_flop, -1.0, false}};
    CHECK_THROWS_AS(s.validate(), ArgumentError);
    s.cycle = {ResetSegment{}, EvolveSegment{HamiltonianKind::time_dependent_rwa, 1.0, false}};
    CHECK_THROWS_AS(s.validate(), ConfigurationError);
    s.cycle = {ResetSegment{}, EvolveSegment{HamiltonianKind::flip_flop, 1.0, false}};
    s.jitter = 1.0;
    CHECK_THROWS_AS(s.validate(), ArgumentError);
    s.jitter = 0.0;
    CHECK_NOTHROW(s.validate());
  }

  TEST_CASE("builders check their inputs") {
    const BathSpec s = spec3();
    CHECK_THROWS_AS(make_drt(s, 0.0, 10), ArgumentError);
    CHECK_THROWS_AS(make_adrt(s, 1.0, 1.0, 10, 1.5), ArgumentError);
    BathSpec no_chain = s;
    no_chain.j.reset();
    CHECK_THROWS_AS(make_interacting(no_chain, 1.0, 10), ConfigurationError);
    BathSpec flat = s;
    flat.gz.assign(3, 0.0);
    CHECK_THROWS_AS(default_tau_disp(flat), DegenerateCouplingError);
    CHECK(default_tau_res(s) == doctest::Approx(std::numbers::pi / (2.0 * gnorm(s.gx))));
    CHECK(default_tau_disp(s) == doctest::Approx(2.0 * std::numbers::pi / gnorm(s.gz)));
  }

  TEST_CASE("DRT follows the dense oracle cycle by cycle") {
    const BathSpec s = spec3();
    const double tau = 0.83;
    const RunRecord rec = run(make_drt(s, tau, 30), s);
    REQUIRE(rec.valid);
    REQUIRE(rec.rows.size() == 31);
    const oracle::Mat u = oracle::expm_hermitian(oracle::flip_flop(s.gx), tau);
    oracle::Mat rho = oracle::Mat::Identity(8, 8) / 8.0;
    for (int c = 0; c <= 30; ++c) {
      CHECK(rec.rows[c].purity == doctest::Approx(oracle::purity(rho)).epsilon(1e-10));
      rho = oracle::cycle(rho, u);
    }
    CHECK(rec.rows[30].elapsed == doctest::Approx(30 * tau));
    CHECK(rec.rows[30].probe_reset_count == 30);
  }

  TEST_CASE("ADRT follows the dense oracle") {
    const BathSpec s = spec3();
    const double tr = 0.6, td = 2.2;
    const RunRecord rec = run(make_adrt(s, tr, td, 20), s);
    const oracle::Mat ud = oracle::expm_hermitian(oracle::dispersive(s.gz), td);
    const oracle::Mat ur = oracle::expm_hermitian(oracle::flip_flop(s.gx), tr);
    oracle::Mat rho = oracle::Mat::Identity(8, 8) / 8.0;
    for (int c = 0; c < 20; ++c) rho = oracle::cycle(oracle::cycle(rho, ud), ur);
    CHECK(rec.rows.back().purity == doctest::Approx(oracle::purity(rho)).epsilon(1e-10));
    CHECK(rec.rows.back().probe_reset_count == 40);
  }

  TEST_CASE("interacting protocol follows the dense oracle") {
    const BathSpec s = spec3();
    const RunRecord rec = run(make_interacting(s, 0.7, 15), s);
    const oracle::Mat u = oracle::expm_hermitian(oracle::flip_flop(s.gx) + oracle::chain(*s.j, 3), 0.7);
    oracle::Mat rho = oracle::Mat::Identity(8, 8) / 8.0;
    for (int c = 0; c < 15; ++c) rho = oracle::cycle(rho, u);
    CHECK(rec.rows.back().purity == doctest::Approx(oracle::purity(rho)).epsilon(1e-10));
  }

  TEST_CASE("imperfect reset follows the dense oracle") {
    const BathSpec s = spec3();
    RunOptions opt;
    opt.reset_fidelity = 0.9;
    const RunRecord rec = run(make_drt(s, 0.9, 10), s, opt);
    const oracle::Mat u = oracle::expm_hermitian(oracle::flip_flop(s.gx), 0.9);
    oracle::Mat probe = oracle::Mat::Zero(2, 2);
    probe(0, 0) = 0.1;
    probe(1, 1) = 0.9;
    oracle::Mat rho = oracle::Mat::Identity(8, 8) / 8.0;
    for (int c = 0; c < 10; ++c) rho = oracle::trace_probe(u * oracle::kron(probe, rho) * u.adjoint());
    CHECK(rec.rows.back().purity == doctest::Approx(oracle::purity(rho)).epsilon(1e-10));
  }

  TEST_CASE("a coherent initial state takes the dense path and agrees with the oracle") {
    const BathSpec s = spec3();
    std::mt19937_64 rng(9);
    const oracle::Mat rho0 = oracle::random_state(3, rng);
    RunOptions opt;
    opt.initial = DensityMatrix(rho0, Space::bath_only);
    const RunRecord rec = run(make_drt(s, 0.5, 12), s, opt);
    const oracle::Mat u = oracle::expm_hermitian(oracle::flip_flop(s.gx), 0.5);
    oracle::Mat rho = rho0;
    for (int c = 0; c < 12; ++c) rho = oracle::cycle(rho, u);
    CHECK(rec.rows.back().purity == doctest::Approx(oracle::purity(rho)).epsilon(1e-10));
    // Polarization is unaffected by the local rotation behind sign canonicalization.
    double pol = 0.0;
    for (int i = 0; i < 8; ++i) pol += rho(i, i).real() * (std::popcount(static_cast<unsigned>(~i & 7)) - 1.5);
    CHECK(rec.rows.back().polarization == doctest::Approx(pol / 1.5).epsilon(1e-10));
  }

  TEST_CASE("equal-coupling DRT converges to the closed form") {
    const double expected[] = {1.0, 0.625, 0.375, 54.0 / 256.0};
    for (int n = 1; n <= 4; ++n) {
      const BathSpec s = make_uniform_spec(n, 0.2);
      const RunRecord rec = run(make_drt(s, default_tau_res(s), 300), s);
      CHECK(rec.rows.back().purity == doctest::Approx(expected[n - 1]).epsilon(1e-9));
      CHECK(rec.rows.back().purity == doctest::Approx(oracle::drt_stationary_purity(n, 0.2, 300)).epsilon(1e-9));
    }
  }

  TEST_CASE("equal-coupling DRT conserves manifold populations") {
    const BathSpec s = make_uniform_spec(5, 1.0);
    const RunRecord rec = run(make_drt(s, 0.77, 100), s);
    for (const RunRow& row : rec.rows) {
      for (std::size_t i = 0; i < row.manifold_populations.size(); ++i)
        CHECK(std::abs(row.manifold_populations[i] - rec.rows[0].manifold_populations[i]) < 1e-10);
    }
    CHECK(rec.meta.two_i == std::vector<int>{5, 3, 1});
  }

  TEST_CASE("ADRT equals DRT when all gx and all gz are equal") {
    BathSpec s;
    s.n = 5;
    s.gx.assign(5, 0.4);
    s.gz.assign(5, -0.9);
    const double tr = default_tau_res(s);
    const RunRecord d = run(make_drt(s, tr, 60), s);
    const RunRecord a = run(make_adrt(s, tr, default_tau_disp(s), 60, 0.3, 4), s);
    for (std::size_t i = 0; i < d.rows.size(); ++i) CHECK(std::abs(d.rows[i].purity - a.rows[i].purity) < 1e-6);
  }

  TEST_CASE("jittered runs are deterministic in the seed") {
    const BathSpec s = spec3();
    const RunRecord a = run(make_adrt(s, 0.6, 2.0, 25, 0.3, 77), s);
    const RunRecord b = run(make_adrt(s, 0.6, 2.0, 25, 0.3, 77), s);
    const RunRecord c = run(make_adrt(s, 0.6, 2.0, 25, 0.3, 78), s);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].purity == b.rows[i].purity);
      CHECK(a.rows[i].elapsed == b.rows[i].elapsed);
    }
    CHECK(a.rows.back().elapsed != c.rows.back().elapsed);
    // Dispersive durations stay inside tau_disp (1 +/- jitter).
    CHECK(a.rows.back().elapsed >= 25 * (0.6 + 2.0 * 0.7));
    CHECK(a.rows.back().elapsed <= 25 * (0.6 + 2.0 * 1.3));
  }

  TEST_CASE("every row is physical") {
    const BathSpec s = spec3();
    const RunRecord rec = run(make_adrt(s, 0.6, 2.0, 50, 0.2, 3), s);
    for (const RunRow& row : rec.rows) {
      CHECK(row.purity >= 1.0 / 8.0 - 1e-12);
      CHECK(row.purity <= 1.0 + 1e-12);
      CHECK(std::abs(row.polarization) <= 1.0 + 1e-12);
    }
    CHECK(rec.rows[0].purity == doctest::Approx(0.125));
  }

  TEST_CASE("convergence stop") {
    const BathSpec s = make_uniform_spec(3, 1.0);
    RunOptions opt;
    opt.stop_on_convergence = true;
    opt.convergence_tol = 1e-12;
    const RunRecord rec = run(make_drt(s, default_tau_res(s), 10000), s, opt);
    CHECK(rec.converged);
    CHECK(rec.rows.size() < 10001);
    CHECK(rec.rows.back().purity == doctest::Approx(0.375).epsilon(1e-10));
  }

  TEST_CASE("initial state must fit the spec") {
    RunOptions opt;
    opt.initial = DensityMatrix::maximally_mixed_bath(2);
    const BathSpec s = spec3();
    CHECK_THROWS_AS(run(make_drt(s, 1.0, 2), s, opt), ArgumentError);
  }

  TEST_CASE("metadata describes the run") {
    const BathSpec s = spec3();
    const RunRecord rec = run(make_adrt(s, 0.5, 1.5, 2, 0.1, 9), s);
    CHECK(rec.meta.seed == 9);
    CHECK(rec.meta.schedule.find("adrt") != std::string::npos);
    CHECK(rec.meta.spec.find("n=3") != std::string::npos);
    CHECK_FALSE(rec.meta.version.empty());
  }
}
