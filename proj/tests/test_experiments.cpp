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
#include <sstream>
#include <stdexcept>

#include "oracle.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/experiments.hpp"
#include "spinbath/spin_algebra.hpp"

using namespace spinbath;

namespace {

std::string csv(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("coupling sampling is seeded and bounded") {
    const BathSpec a = sample_couplings(6, 2.0, 1e-2, 42);
    const BathSpec b = sample_couplings(6, 2.0, 1e-2, 42);
    const BathSpec c = sample_couplings(6, 2.0, 1e-2, 43);
    CHECK(a.gx == b.gx);
    CHECK(a.gz == b.gz);
    CHECK(a.gx != c.gx);
    for (int k = 0; k < 6; ++k) {
      const double m = std::hypot(a.gx[k], a.gz[k]);
      CHECK(m > 0.0);
      CHECK(m <= 2e-2 * (1.0 + 1e-15));
      CHECK(a.gx[k] >= 0.0);  // angle in [0, pi)
    }
    CHECK(a.weak_coupling());
    CHECK_THROWS_AS(sample_couplings(3, 1.0, 0.0, 1), ArgumentError);
    CHECK_THROWS_AS(sample_couplings(3, 1.0, 1.5, 1), ArgumentError);
    CHECK_THROWS_AS(sample_couplings(0, 1.0, 0.5, 1), ArgumentError);
  }

  TEST_CASE("sampled magnitudes and angles are uniform") {
    const BathSpec s = sample_couplings(10000, 1.0, 1.0, 7);
    double mag = 0.0, angle = 0.0;
    for (int k = 0; k < s.n; ++k) {
      mag += std::hypot(s.gx[k], s.gz[k]);
      angle += std::atan2(s.gx[k], s.gz[k]) / std::numbers::pi;
    }
    CHECK(mag / s.n == doctest::Approx(0.5).epsilon(0.04));
    CHECK(angle / s.n == doctest::Approx(0.5).epsilon(0.04));
  }

  TEST_CASE("fig1 table compares simulation with the closed form") {
    const Table t = scenario_fig1({5, 12, 5000});
    REQUIRE(t.rows.size() == 12);
    CHECK(t.columns == std::vector<std::string>{"n", "purity_closed_form", "purity_simulated"});
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const int n = static_cast<int>(*t.cell(r, "n"));
      CHECK(n == static_cast<int>(r) + 1);
      CHECK(*t.cell(r, "purity_closed_form") ==
            doctest::Approx(static_cast<double>(oracle::pumped_purity_pascal(n))).epsilon(1e-12));
      if (n <= 5) {
        REQUIRE(t.cell(r, "purity_simulated").has_value());
        CHECK(std::abs(*t.cell(r, "purity_simulated") - *t.cell(r, "purity_closed_form")) < 1e-8);
      } else {
        CHECK_FALSE(t.cell(r, "purity_simulated").has_value());
      }
    }
    CHECK_THROWS_AS(scenario_fig1({11, 40, 10}), ResourceError);
    CHECK_THROWS_AS(scenario_fig1({4, 63, 10}), ResourceError);
  }

  TEST_CASE("fig2b is reproducible and starts from the mixed state") {
    Fig2bOptions o;
    o.n = 4;
    o.cycles = 30;
    o.seed = 5;
    const Table a = scenario_fig2b(o);
    const Table b = scenario_fig2b(o);
    CHECK(csv(a) == csv(b));
    REQUIRE(a.rows.size() == 31);
    CHECK(*a.cell(0, "purity_drt") == doctest::Approx(1.0 / 16.0));
    CHECK(*a.cell(0, "purity_adrt") == doctest::Approx(1.0 / 16.0));
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
      for (const char* col : {"purity_drt", "purity_adrt"}) {
        CHECK(*a.cell(r, col) >= 1.0 / 16.0 - 1e-12);
        CHECK(*a.cell(r, col) <= 1.0 + 1e-12);
      }
    }
    o.seed = 6;
    CHECK(csv(scenario_fig2b(o)) != csv(a));
  }

  TEST_CASE("fig3 has one column per alpha plus the DRT-only curve") {
    Fig3Options o;
    o.alphas = {0.5, 2.0};
    o.cycles = 10;
    const Table t = scenario_fig3(o);
    CHECK(t.columns == std::vector<std::string>{"cycle", "purity_alpha_0.5", "purity_alpha_2", "purity_drt_only"});
    REQUIRE(t.rows.size() == 11);
    CHECK(*t.cell(0, "purity_alpha_2") == doctest::Approx(1.0 / 64.0));
    CHECK(csv(t) == csv(scenario_fig3(o)));
    o.alphas = {0.0};
    CHECK_THROWS_AS(scenario_fig3(o), ArgumentError);
    CHECK(fig3_spec(2.0).j->at(4) == doctest::Approx(4.2));
    CHECK_FALSE(fig3_spec(0.0).j.has_value());
  }

  TEST_CASE("CSV layout") {
    Table t;
    t.scenario = "demo";
    t.seed = 3;
    t.config = "demo x=1";
    t.extra_meta.emplace_back("note", "hello");
    t.columns = {"a", "b"};
    t.rows = {{1.0, std::nullopt}, {1.0 / 3.0, 2e-20}};
    const std::string text = csv(t);
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 10);
    CHECK(lines[0] == "# schema: spinbath-csv/1");
    CHECK(lines[1] == "# scenario: demo");
    CHECK(lines[2] == "# seed: 3");
    CHECK(lines[3] == "# config_hash: fnv1a64:" + [] {
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64("demo x=1")));
            return std::string(buf);
          }());
    CHECK(lines[4] == "# config: demo x=1");
    CHECK(lines[5].rfind("# version: ", 0) == 0);
    CHECK(lines[6] == "# note: hello");
    CHECK(lines[7] == "a,b");
    CHECK(lines[8] == "1,");
    CHECK(lines[9] == "0.333333333333,2e-20");
  }

  TEST_CASE("FNV-1a reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  }

  TEST_CASE("writing to an unwritable path fails cleanly") {
    CHECK_THROWS_AS(write_csv_file("/nonexistent-dir/x.csv", Table{}), IoError);
  }

  TEST_CASE("table lookups are checked") {
    Table t;
    t.columns = {"a"};
    t.rows = {{1.0}};
    CHECK_THROWS_AS(t.cell(0, "b"), ArgumentError);
    CHECK_THROWS_AS(t.cell(1, "a"), ArgumentError);
  }

  TEST_CASE("parallel_map keeps input order and rethrows") {
    std::vector<int> xs;
    for (int i = 0; i < 50; ++i) xs.push_back(i);
    const auto squares = parallel_map(xs, [](int x) { return x * x; });
    for (int i = 0; i < 50; ++i) CHECK(squares[i] == i * i);
    CHECK_THROWS_AS(parallel_map(xs,
                                 [](int x) {
                                   if (x == 17) throw std::runtime_error("boom");
                                   return x;
                                 }),
                    std::runtime_error);
    CHECK(parallel_map(std::vector<int>{}, [](int x) { return x; }).empty());
  }

  TEST_CASE("ensemble entries are labelled and reproducible") {
    const auto a = adrt_drt_ensemble({3}, {1, 2}, 20, 0.2);
    const auto b = adrt_drt_ensemble({3}, {1, 2}, 20, 0.2);
    REQUIRE(a.size() == 2);
    CHECK(a[1].seed == 2);
    CHECK(a[1].n == 3);
    CHECK(a[0].purity_adrt == b[0].purity_adrt);
    CHECK(a[0].purity_drt == b[0].purity_drt);
  }
}
