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

#include <vector>

#include "oracle.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/spin_algebra.hpp"

using namespace spinbath;

TEST_SUITE("spin_algebra") {
  TEST_CASE("single-site operators match Kronecker products") {
    const int total = 3;
    for (int site = 1; site <= total; ++site) {
      CHECK((single_spin_operator(SpinOp::s_plus, site, total) - oracle::on_site(oracle::raising(), site, total))
                .norm() == doctest::Approx(0.0));
      CHECK((single_spin_operator(SpinOp::s_minus, site, total) - oracle::on_site(oracle::lowering(), site, total))
                .norm() == doctest::Approx(0.0));
      CHECK((single_spin_operator(SpinOp::sz, site, total) - oracle::on_site(oracle::half_z(), site, total)).norm() ==
            doctest::Approx(0.0));
      CHECK((single_spin_operator(SpinOp::sz, site, total, Convention::pauli) -
             2.0 * oracle::on_site(oracle::half_z(), site, total))
                .norm() == doctest::Approx(0.0));
    }
  }

  TEST_CASE("spin-half commutation [Sx, Sy] = i Sz") {
    const OperatorMatrix sx = single_spin_operator(SpinOp::sx, 2, 2);
    const OperatorMatrix sy = single_spin_operator(SpinOp::sy, 2, 2);
    const OperatorMatrix sz = single_spin_operator(SpinOp::sz, 2, 2);
    CHECK((sx * sy - sy * sx - Complex(0.0, 1.0) * sz).norm() < 1e-14);
  }

  TEST_CASE("operator size is capped") {
    CHECK_THROWS_AS(single_spin_operator(SpinOp::sz, 1, 21), ArgumentError);
    CHECK_THROWS_AS(single_spin_operator(SpinOp::sz, 0, 3), ArgumentError);
    CHECK_THROWS_AS(single_spin_operator(SpinOp::sz, 4, 3), ArgumentError);
  }

  TEST_CASE("total spin squared matches the Kronecker construction") {
    for (int n = 1; n <= 4; ++n) CHECK((total_spin_squared(n) - oracle::total_spin_squared(n)).norm() < 1e-12);
  }

  TEST_CASE("multiplicities match the numerical spectrum of I^2") {
    for (int n = 1; n <= 8; ++n) {
      const auto spectrum = oracle::spin_squared_spectrum(n);
      std::vector<int> labels;
      for (const auto& [two_i, count] : spectrum) {
        CAPTURE(n);
        CAPTURE(two_i);
        CHECK(static_cast<int>(dicke_multiplicity(n, two_i)) * (two_i + 1) == count);
        labels.insert(labels.begin(), two_i);
      }
      CHECK(allowed_two_i(n) == labels);
    }
  }

  TEST_CASE("multiplicities count every state up to n = 62") {
    for (int n = 1; n <= 62; ++n) {
      unsigned __int128 sum = 0;
      for (int two_i : allowed_two_i(n)) sum += static_cast<unsigned __int128>(dicke_multiplicity(n, two_i)) * (two_i + 1);
      CHECK(sum == (static_cast<unsigned __int128>(1) << n));
    }
  }

  TEST_CASE("impossible total spin is rejected") {
    CHECK_THROWS_AS(dicke_multiplicity(4, 1), ArgumentError);
    CHECK_THROWS_AS(dicke_multiplicity(4, 6), ArgumentError);
    CHECK_THROWS_AS(dicke_multiplicity(63, 1), ArgumentError);
  }

  TEST_CASE("closed-form purity small cases") {
    CHECK(closed_form_purity(1) == 1.0);
    CHECK(closed_form_purity(2) == 0.625);
    CHECK(closed_form_purity(4) == 54.0 / 256.0);
    CHECK(closed_form_purity(6) == 260.0 / 4096.0);
    CHECK(closed_form_purity(8) == 1190.0 / 65536.0);
  }

  TEST_CASE("closed-form purity agrees with the spectrum and Pascal oracles") {
    for (int n = 1; n <= 8; ++n) CHECK(closed_form_purity(n) == doctest::Approx(oracle::pumped_purity_from_spectrum(n)).epsilon(1e-12));
    for (int n = 1; n <= 60; ++n) {
      CAPTURE(n);
      CHECK(closed_form_purity(n) == doctest::Approx(static_cast<double>(oracle::pumped_purity_pascal(n))).epsilon(1e-12));
    }
    CHECK_THROWS_AS(closed_form_purity(0), ArgumentError);
    CHECK_THROWS_AS(closed_form_purity(63), ArgumentError);
  }

  TEST_CASE("Dicke basis diagonalizes I^2 and I^z") {
    for (int n = 1; n <= 5; ++n) {
      const DickeDecomposition dd(n);
      const Eigen::MatrixXd full = dd.full_basis();
      REQUIRE(full.rows() == (1 << n));
      REQUIRE(full.cols() == (1 << n));
      CHECK((full.transpose() * full - Eigen::MatrixXd::Identity(1 << n, 1 << n)).norm() < 1e-12);
      const oracle::Mat i2 = oracle::total_spin_squared(n);
      oracle::Mat iz = oracle::Mat::Zero(1 << n, 1 << n);
      for (int k = 1; k <= n; ++k) iz += oracle::on_site(oracle::half_z(), k, n);
      std::uint64_t copies = 0;
      int last_two_i = n + 1;
      for (const DickeBlock& b : dd.blocks()) {
        CHECK(b.two_i <= last_two_i);
        last_two_i = b.two_i;
        ++copies;
        const double ii = 0.25 * b.two_i * (b.two_i + 2);
        for (int c = 0; c <= b.two_i; ++c) {
          const Eigen::VectorXcd v = b.basis.col(c).cast<Complex>();
          const double m = -0.5 * b.two_i + c;
          CHECK((i2 * v - ii * v).norm() < 1e-12);
          CHECK((iz * v - m * v).norm() < 1e-12);
        }
      }
      std::uint64_t expected = 0;
      for (int two_i : allowed_two_i(n)) {
        expected += dicke_multiplicity(n, two_i);
        CHECK(dd.multiplicity(two_i) == dicke_multiplicity(n, two_i));
      }
      CHECK(copies == expected);
    }
  }

  TEST_CASE("Dicke decomposition respects its size cap") {
    CHECK_THROWS_AS(DickeDecomposition(5, 4), ResourceError);
    CHECK_THROWS_AS(DickeDecomposition(0), ArgumentError);
  }

  TEST_CASE("collective operators are normalized") {
    const std::vector<double> gx{3.0, 4.0};
    const CollectiveOperator c = collective_lowering(gx);
    CHECK(c.norm == doctest::Approx(5.0));
    const OperatorMatrix expected =
        (3.0 * single_spin_operator(SpinOp::s_minus, 1, 2) + 4.0 * single_spin_operator(SpinOp::s_minus, 2, 2)) / 5.0;
    CHECK((c.op - expected).norm() < 1e-14);
    const std::vector<double> zeros{0.0, 0.0};
    CHECK_THROWS_AS(collective_lowering(zeros), DegenerateCouplingError);
    CHECK_THROWS_AS(collective_dephasing(zeros), DegenerateCouplingError);
  }

  TEST_CASE("basis helpers") {
    CHECK(dim_of(5) == 32);
    CHECK(is_up(0, 1, 3));
    CHECK_FALSE(is_up(4, 1, 3));  // site 1 is the most significant bit
    CHECK(count_up(0, 4) == 4);
    CHECK(count_up(15, 4) == 0);
  }
}
