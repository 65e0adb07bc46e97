// Copyright 2026 The nlsrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "selftest.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>

#include "corpus.hpp"
#include "diagnostics.hpp"
#include "dispatch.hpp"
#include "groundstate.hpp"
#include "io.hpp"
#include "lp.hpp"

namespace nlsrad {

namespace {

using json = nlohmann::json;

class Suite {
 public:
  explicit Suite(std::string name) : name_(std::move(name)) {}

  // value <= bound
  void below(const std::string& what, double value, double bound) {
    add(what, value, bound, std::isfinite(value) && value <= bound);
  }
  void that(const std::string& what, bool ok) { add(what, ok ? 1.0 : 0.0, 1.0, ok); }

  json finish(double seconds) const {
    return {{"name", name_}, {"checks", checks_}, {"failures", failures_}, {"seconds", seconds}};
  }
  void error(const std::string& what) {
    checks_.push_back({{"name", "exception"}, {"detail", what}, {"passed", false}});
    ++failures_;
  }
  int failures() const { return failures_; }

 private:
  void add(const std::string& what, double value, double bound, bool ok) {
    checks_.push_back({{"name", what}, {"value", value}, {"bound", bound}, {"passed", ok}});
    failures_ += !ok;
  }
  std::string name_;
  json checks_ = json::array();
  int failures_ = 0;
};

double rel_diff(const RadialField& a, const RadialField& b) {
  return std::sqrt(mass(a - b) / mass(b));
}

RadialField gaussian(const GridPtr& g, double a = 1.0) {
  return RadialField::from_function(g, [a](double r) { return cplx(std::exp(-a * r * r), 0.0); });
}

void core_suite(Suite& s) {
  const GridPtr g = make_radial_grid(4, 20.0, 256);
  s.below("transform orthogonality defect", g->orthogonality_defect(), 1e-12);
  const RadialField f = gaussian(g);
  s.below("forward/inverse round trip", rel_diff(transform_inverse(transform_forward(f)), f), 1e-13);
  const double exact = std::pow(std::numbers::pi / 2.0, 2);  // int exp(-2|x|^2) over R^4
  s.below("Gaussian mass quadrature", std::abs(mass(f) / exact - 1.0), 1e-10);
  s.below("Plancherel", std::abs(mass(transform_forward(f)) / mass(f) - 1.0), 1e-12);
}

void groundstate_suite(Suite& s) {
  const GroundState q = solve_ground_state(make_radial_grid(4, 20.0, 512), 1e-9);
  const GroundStateCertificate c = certify(q, 1e-8);
  s.below("residual", c.residual, 1e-8);
  s.below("Pohozaev kinetic ratio - 2/3", std::abs(c.kinetic_ratio - 2.0 / 3.0), 1e-4);
  s.below("|E(Q)| / ||grad Q||^2", c.energy_ratio, 1e-4);
  s.below("|gn_ratio - 1|", std::abs(c.gn_ratio - 1.0), 1e-3);
  s.below("shooting mass agreement", c.shooting_mass_rel_diff, 1e-4);
  s.that("positive and decreasing", c.positive_decreasing);
}

void evolution_suite(Suite& s) {
  const GridPtr g = make_radial_grid(4, 20.0, 256);
  // e^{it Lap} e^{-|x|^2} = (1 + 4it)^{-d/2} e^{-|x|^2 / (1 + 4it)}
  const double t = 0.05;
  const RadialField exact = RadialField::from_function(g, [t](double r) {
    const cplx z(1.0, 4.0 * t);
    return std::pow(z, -2.0) * std::exp(-r * r / z);
  });
  s.below("free Gaussian vs closed form", rel_diff(free_propagate(gaussian(g), t), exact), 1e-10);

  const GroundState q = solve_ground_state(g, 1e-10);
  const RadialField one = step(q.profile, 1e-3, -1);
  s.below("one Strang step from Q", std::sqrt(mass(one - make_sw(q, 1e-3))), 1e-6);

  SimulationConfig c;
  c.dt = 1e-3;
  c.duration = 0.1;
  const Trajectory run = evolve(c, make_sw(q, 0.0));
  s.below("SW mass drift", run.relative_mass_drift(), 1e-10);
  const double e1 = std::sqrt(mass(run.state(run.size() - 1) - make_sw(q, 0.1)));
  c.dt = 5e-4;
  const Trajectory fine = evolve(c, make_sw(q, 0.0));
  const double e2 = std::sqrt(mass(fine.state(fine.size() - 1) - make_sw(q, 0.1)));
  s.below("Strang order |log2(e(dt)/e(dt/2)) - 2|", std::abs(std::log2(e1 / e2) - 2.0), 0.1);
}

void lp_suite(Suite& s, std::uint64_t seed) {
  const GridPtr g = make_radial_grid(4, 8.0, 512);
  double partition = 0.0, fattened = 0.0, completeness = 0.0;
  CorpusOptions opts;
  opts.count = 5;
  opts.seed = seed;
  for (const RadialField& f : smooth_corpus(g, opts)) {
    RadialField sum = project_low(f, g->min_scale());
    for (DyadicScale n = g->min_scale().twice(); n <= g->max_scale(); n = n.twice())
      sum += project_band(f, n);
    sum += project_high(f, g->max_scale());
    partition = std::max(partition, rel_diff(sum, f));
    for (DyadicScale n = g->min_scale(); n <= g->max_scale(); n = n.twice()) {
      const RadialField pn = project_band(f, n);
      fattened = std::max(fattened, std::sqrt(mass(project_band(project_fat(f, n), n) - pn) / mass(f)));
    }
    const RadialField both = in_out(f, WaveDirection::kOutgoing) + in_out(f, WaveDirection::kIncoming);
    completeness = std::max(completeness, rel_diff(both, f));
  }
  s.below("partition of unity", partition, 1e-8);
  s.below("P_N P~_N = P_N", fattened, 1e-10);
  s.below("P+ + P- completeness", completeness, 1e-3);
  const RadialField f = gaussian(g);
  const DyadicScale two = DyadicScale::from_value(2.0);
  s.below("Bernstein (2,2) ratio - 1", std::abs(bernstein_ratio(f, two, 2.0, 2.0) - 1.0), 1e-12);
}

void diagnostics_suite(Suite& s) {
  const GridPtr g = make_radial_grid(4, 10.0, 1024);
  std::vector<DyadicScale> ns;
  for (int e = 1; e <= 6; ++e) ns.push_back(DyadicScale::from_exponent(e));
  const RadialField planted = planted_frequency_field(g, ns, -1.2, 1.0);
  const DecayFitReport rep = frequency_decay_fit(snapshot_trajectory(planted), 1.0, ns);
  s.below("planted slope -1.2 recovered", std::abs(rep.slope + 1.2), 0.05);
  s.that("planted slope flagged failing", !rep.passed);
  const GridPtr h = make_radial_grid(4, 20.0, 256);
  const double exact = std::pow(std::numbers::pi / 2.0, 2);
  s.below("untruncated virial of a Gaussian",
          std::abs(truncated_virial(gaussian(h), INFINITY) / exact - 1.0), 1e-10);
  s.that("V_R <= (25R/24)^2 M", truncated_virial(gaussian(h), 1.0) <= std::pow(25.0 / 24.0, 2) * mass(gaussian(h)));
}

void recurrence_suite(Suite& s, const SelftestOptions& opts) {
  const DispatchResult suite = run_lemma({{"mode", "suite"}, {"draws", opts.lemma_draws}, {"seed", opts.seed}});
  s.below("random admissible disagreements",
          opts.lemma_draws - suite.json["agreements"].get<int>(), 0.0);
  RecurrenceParams p;  // (1.25, 0.2, 1, 1, 1e-3, 10)
  const ControlReport rep = verify_recursive_control(saturating_sequence(p, DyadicScale::from_exponent(24)), p);
  s.that("beta' = 1e-3 reported inapplicable", rep.status == LemmaStatus::kInapplicable);
  p.a = 1.0;
  p.beta = 0.5 * admissibility(p).threshold;
  ASequence power;
  for (int e = 0; e <= 30; ++e) {
    power.scales.push_back(DyadicScale::from_exponent(e));
    power.values.push_back(std::pow(std::ldexp(1.0, e), -1.25));
  }
  s.that("A_N = N^-s passes", verify_recursive_control(power, p).status == LemmaStatus::kPass);
}

void io_suite(Suite& s) {
  namespace fs = std::filesystem;
  const GridPtr g = make_radial_grid(4, 12.0, 64);
  const RadialField f = RadialField::from_function(g, [](double r) { return cplx(std::exp(-r), std::sin(r)); });
  const fs::path dir = fs::temp_directory_path() / ("nlsrad_selftest_" + hex_hash(fnv1a(std::to_string(
                           std::chrono::steady_clock::now().time_since_epoch().count()))));
  write_snapshot(dir / "f.bin", f, 0.5, 7);
  const Snapshot back = read_snapshot(dir / "f.bin");
  s.that("binary snapshot bit-exact",
         std::memcmp(back.field.samples().data(), f.samples().data(), f.size() * sizeof(cplx)) == 0 &&
             back.time == 0.5 && back.config_hash == 7);
  s.that("FNV-1a reference", fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  std::error_code ec;
  fs::remove_all(dir, ec);
}

}  // namespace

json run_selftest(const SelftestOptions& opts) {
  struct Entry {
    const char* name;
    std::function<void(Suite&)> run;
  };
  const std::vector<Entry> entries = {
      {"core", core_suite},
      {"groundstate", groundstate_suite},
      {"evolution", evolution_suite},
      {"lp", [&](Suite& s) { lp_suite(s, opts.seed); }},
      {"diagnostics", diagnostics_suite},
      {"recurrence", [&](Suite& s) { recurrence_suite(s, opts); }},
      {"io", io_suite},
  };
  json suites = json::array();
  int failures = 0;
  for (const Entry& e : entries) {
    Suite s(e.name);
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(s);
    } catch (const std::exception& ex) {
      s.error(ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += s.failures();
    suites.push_back(s.finish(secs));
  }
  return {{"suites", suites}, {"failures", failures}, {"passed", failures == 0},
          {"seed", opts.seed}};
}

}  // namespace nlsrad
