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

#include "spinbath/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <toml.hpp>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

class Reader {
 public:
  Reader(const toml::table& table, std::string where) : table_(table), where_(std::move(where)) {}

  void allow(std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, node] : table_) {
      bool known = false;
      for (std::string_view k : keys) known = known || key.str() == k;
      if (!known) fail(std::string(key.str()), "unknown key");
    }
  }

  bool has(std::string_view key) const { return table_.contains(key); }

  const toml::table* sub(std::string_view key) const {
    const toml::node* node = table_.get(key);
    if (!node) return nullptr;
    if (!node->is_table()) fail(std::string(key), "expected a table");
    return node->as_table();
  }

  std::optional<double> number(std::string_view key) const {
    const toml::node* node = table_.get(key);
    if (!node) return std::nullopt;
    if (auto v = node->value<double>(); v && (node->is_floating_point() || node->is_integer())) return *v;
    fail(std::string(key), "expected a number");
  }

  std::optional<std::int64_t> integer(std::string_view key) const {
    const toml::node* node = table_.get(key);
    if (!node) return std::nullopt;
    if (!node->is_integer()) fail(std::string(key), "expected an integer");
    return *node->value<std::int64_t>();
  }

  std::optional<std::string> string(std::string_view key) const {
    const toml::node* node = table_.get(key);
    if (!node) return std::nullopt;
    if (!node->is_string()) fail(std::string(key), "expected a string");
    return *node->value<std::string>();
  }

  std::optional<std::vector<double>> numbers(std::string_view key) const {
    const toml::node* node = table_.get(key);
    if (!node) return std::nullopt;
    const toml::array* arr = node->as_array();
    if (!arr) fail(std::string(key), "expected an array of numbers");
    std::vector<double> out;
    for (const toml::node& el : *arr) {
      if (!el.is_floating_point() && !el.is_integer()) fail(std::string(key), "expected an array of numbers");
      out.push_back(*el.value<double>());
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ConfigurationError(where_ + key + ": " + message);
  }

  int positive_int(std::string_view key, int fallback) const {
    const auto v = integer(key);
    if (!v) return fallback;
    if (*v < 1 || *v > 1'000'000'000) fail(std::string(key), "must be a positive integer");
    return static_cast<int>(*v);
  }

  double positive(std::string_view key, double fallback) const {
    const auto v = number(key);
    if (!v) return fallback;
    if (!(*v > 0.0) || !std::isfinite(*v)) fail(std::string(key), "must be positive");
    return *v;
  }

 private:
  const toml::table& table_;
  std::string where_;
};

ScenarioKind parse_kind(const std::string& s, const Reader& root) {
  if (s == "fig1") return ScenarioKind::fig1;
  if (s == "fig2b") return ScenarioKind::fig2b;
  if (s == "fig3") return ScenarioKind::fig3;
  if (s == "custom") return ScenarioKind::custom;
  root.fail("scenario", "must be one of fig1, fig2b, fig3, custom");
}

BathSpec custom_spec(const CustomRun& run, std::uint64_t seed) {
  BathSpec spec;
  if (run.sampled()) {
    spec = sample_couplings(run.n, run.omega_larmor, run.range_ratio, seed);
  } else {
    spec.n = run.n;
    spec.omega_larmor = run.omega_larmor;
    spec.gx = *run.gx;
    spec.gz = run.gz ? *run.gz : std::vector<double>(run.gx->size(), 0.0);
  }
  spec.j = run.j;
  try {
    spec.validate();
  } catch (const ArgumentError& e) {
    throw ConfigurationError(std::string("bath: ") + e.what());
  }
  return spec;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::fig1:
      return "fig1";
    case ScenarioKind::fig2b:
      return "fig2b";
    case ScenarioKind::fig3:
      return "fig3";
    case ScenarioKind::custom:
      return "custom";
  }
  return "unknown";
}

bool ScenarioConfig::randomized() const {
  return scenario == ScenarioKind::fig2b || (scenario == ScenarioKind::custom && custom.sampled()) ||
         (scenario == ScenarioKind::custom && custom.jitter > 0.0);
}

ScenarioConfig parse_config(std::string_view text, std::string_view source) {
  toml::table doc;
  try {
    doc = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
    throw ConfigurationError(os.str());
  }

  ScenarioConfig cfg;
  const Reader root(doc, "");
  root.allow({"scenario", "seed", "output", "bath", "schedule", "fig1", "fig3"});
  const auto kind = root.string("scenario");
  if (!kind) root.fail("scenario", "missing");
  cfg.scenario = parse_kind(*kind, root);
  if (const auto seed = root.integer("seed")) {
    if (*seed < 0) root.fail("seed", "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(*seed);
  }
  cfg.output = root.string("output");

  const toml::table empty;
  const toml::table* bath_t = root.sub("bath");
  const toml::table* sched_t = root.sub("schedule");
  const toml::table* fig1_t = root.sub("fig1");
  const toml::table* fig3_t = root.sub("fig3");
  const Reader bath(bath_t ? *bath_t : empty, "bath.");
  const Reader sched(sched_t ? *sched_t : empty, "schedule.");
  const Reader fig1(fig1_t ? *fig1_t : empty, "fig1.");
  const Reader fig3(fig3_t ? *fig3_t : empty, "fig3.");

  auto forbid = [&](const toml::table* t, const char* name) {
    if (t) root.fail(name, std::string("not used by scenario ") + std::string(to_string(cfg.scenario)));
  };

  switch (cfg.scenario) {
    case ScenarioKind::fig1: {
      forbid(bath_t, "bath");
      forbid(sched_t, "schedule");
      forbid(fig3_t, "fig3");
      fig1.allow({"n_max_exact", "n_max_formula"});
      if (const auto v = fig1.integer("n_max_exact")) {
        if (*v < 0 || *v > 10) fig1.fail("n_max_exact", "must lie in [0, 10]");
        cfg.fig1.n_max_exact = static_cast<int>(*v);
      }
      cfg.fig1.n_max_formula = fig1.positive_int("n_max_formula", cfg.fig1.n_max_formula);
      if (cfg.fig1.n_max_formula > 62) fig1.fail("n_max_formula", "must be at most 62");
      break;
    }
    case ScenarioKind::fig2b: {
      forbid(fig1_t, "fig1");
      forbid(fig3_t, "fig3");
      bath.allow({"n", "omega_larmor", "range_ratio"});
      sched.allow({"cycles", "jitter"});
      cfg.fig2b.n = bath.positive_int("n", cfg.fig2b.n);
      cfg.fig2b.omega_larmor = bath.positive("omega_larmor", cfg.fig2b.omega_larmor);
      cfg.fig2b.range_ratio = bath.positive("range_ratio", cfg.fig2b.range_ratio);
      if (cfg.fig2b.range_ratio > 1.0) bath.fail("range_ratio", "must lie in (0, 1]");
      cfg.fig2b.cycles = sched.positive_int("cycles", cfg.fig2b.cycles);
      if (const auto v = sched.number("jitter")) {
        if (!(*v >= 0.0 && *v < 1.0)) sched.fail("jitter", "must lie in [0, 1)");
        cfg.fig2b.jitter = *v;
      }
      break;
    }
    case ScenarioKind::fig3: {
      forbid(bath_t, "bath");
      forbid(fig1_t, "fig1");
      sched.allow({"cycles"});
      fig3.allow({"alphas"});
      cfg.fig3.cycles = sched.positive_int("cycles", cfg.fig3.cycles);
      if (auto a = fig3.numbers("alphas")) {
        if (a->empty()) fig3.fail("alphas", "must not be empty");
        for (double v : *a) {
          if (!(v > 0.0) || !std::isfinite(v)) fig3.fail("alphas", "entries must be positive");
        }
        cfg.fig3.alphas = std::move(*a);
      }
      break;
    }
    case ScenarioKind::custom: {
      forbid(fig1_t, "fig1");
      forbid(fig3_t, "fig3");
      if (!bath_t) root.fail("bath", "missing");
      bath.allow({"n", "omega_larmor", "range_ratio", "gx", "gz", "j"});
      sched.allow({"protocol", "cycles", "jitter", "tau_res", "tau_disp", "reset_fidelity"});
      CustomRun& c = cfg.custom;
      c.gx = bath.numbers("gx");
      c.gz = bath.numbers("gz");
      c.j = bath.numbers("j");
      if (c.gz && !c.gx) bath.fail("gz", "given without gx");
      if (c.gx) {
        c.n = static_cast<int>(c.gx->size());
        if (bath.has("n") && bath.positive_int("n", 0) != c.n) bath.fail("n", "does not match length of gx");
        if (bath.has("range_ratio")) bath.fail("range_ratio", "only applies to sampled couplings");
      } else {
        if (!bath.has("n")) bath.fail("n", "missing (or give gx)");
        c.n = bath.positive_int("n", 0);
      }
      c.omega_larmor = bath.positive("omega_larmor", c.omega_larmor);
      c.range_ratio = bath.positive("range_ratio", c.range_ratio);
      if (c.range_ratio > 1.0) bath.fail("range_ratio", "must lie in (0, 1]");

      if (auto p = sched.string("protocol")) {
        if (*p != "drt" && *p != "adrt" && *p != "interacting")
          sched.fail("protocol", "must be one of drt, adrt, interacting");
        c.protocol = *p;
      }
      if (c.protocol == "interacting" && !c.j) bath.fail("j", "required by the interacting protocol");
      c.cycles = sched.positive_int("cycles", c.cycles);
      if (sched.has("tau_res")) c.tau_res = sched.positive("tau_res", 0.0);
      if (sched.has("tau_disp")) c.tau_disp = sched.positive("tau_disp", 0.0);
      if (const auto v = sched.number("jitter")) {
        if (!(*v >= 0.0 && *v < 1.0)) sched.fail("jitter", "must lie in [0, 1)");
        if (*v > 0.0 && c.protocol != "adrt") sched.fail("jitter", "only applies to the adrt protocol");
        c.jitter = *v;
      }
      if (const auto v = sched.number("reset_fidelity")) {
        if (!(*v >= 0.0 && *v <= 1.0)) sched.fail("reset_fidelity", "must lie in [0, 1]");
        c.reset_fidelity = *v;
      }
      break;
    }
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigurationError("cannot read config file " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str(), path);
}

Table custom_table(const CustomRun& c, std::uint64_t seed) {
  const BathSpec spec = custom_spec(c, seed);
  ProtocolSchedule schedule;
  try {
    const double tau_res = c.tau_res ? *c.tau_res : default_tau_res(spec);
    if (c.protocol == "drt") {
      schedule = make_drt(spec, tau_res, c.cycles);
    } else if (c.protocol == "adrt") {
      const double tau_disp = c.tau_disp ? *c.tau_disp : default_tau_disp(spec);
      schedule = make_adrt(spec, tau_res, tau_disp, c.cycles, c.jitter, seed);
    } else {
      schedule = make_interacting(spec, tau_res, c.cycles);
    }
  } catch (const DegenerateCouplingError& e) {
    throw ConfigurationError(std::string("schedule: ") + e.what());
  }
  RunOptions opt;
  opt.reset_fidelity = c.reset_fidelity;
  const RunRecord rec = run(schedule, spec, opt);

  Table t;
  t.scenario = "custom";
  t.seed = seed;
  t.config = "custom " + spec.describe() + " | " + schedule.describe() +
             " | reset_fidelity=" + format_number(c.reset_fidelity);
  t.extra_meta.emplace_back("bath", spec.describe());
  t.extra_meta.emplace_back("schedule", schedule.describe());
  t.columns = {"cycle", "elapsed", "purity", "polarization", "probe_resets"};
  for (int two_i : rec.meta.two_i) t.columns.push_back("population_2I_" + std::to_string(two_i));
  for (const RunRow& row : rec.rows) {
    std::vector<std::optional<double>> r{static_cast<double>(row.cycle), row.elapsed, row.purity,
                                         row.polarization, static_cast<double>(row.probe_reset_count)};
    for (double p : row.manifold_populations) r.push_back(p);
    t.rows.push_back(std::move(r));
  }
  if (!rec.valid) throw IntegrityError(rec.error);
  return t;
}

Table run_scenario(const ScenarioConfig& cfg) {
  if (cfg.randomized() && !cfg.seed)
    throw ConfigurationError(std::string("scenario ") + std::string(to_string(cfg.scenario)) +
                             " is randomized and needs an explicit seed");
  switch (cfg.scenario) {
    case ScenarioKind::fig1:
      return scenario_fig1(cfg.fig1);
    case ScenarioKind::fig2b: {
      Fig2bOptions o = cfg.fig2b;
      o.seed = *cfg.seed;
      return scenario_fig2b(o);
    }
    case ScenarioKind::fig3:
      return scenario_fig3(cfg.fig3);
    case ScenarioKind::custom:
      return custom_table(cfg.custom, cfg.seed.value_or(0));
  }
  throw ConfigurationError("unknown scenario");
}

}  // namespace spinbath
