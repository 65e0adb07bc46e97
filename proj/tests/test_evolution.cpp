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

#include <cmath>

#include "doctest.h"
#include "evolution.hpp"
#include "groundstate.hpp"

using namespace nlsrad;

namespace {

const GroundState& q4() {
  static const GroundState q = solve_ground_state(make_radial_grid(4, 20.0, 512), 1e-9);
  return q;
}

double l2_diff(const RadialField& a, const RadialField& b) { return std::sqrt(mass(a - b)); }

SimulationConfig run_config(int mu, double dt, double start, double duration, std::size_t cadence) {
  SimulationConfig c;
  c.mu = mu;
  c.dt = dt;
  c.start_time = start;
  c.duration = duration;
  c.cadence = cadence;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  SimulationConfig c = run_config(-1, 1e-3, 0.0, 1.0, 10);
  CHECK_NOTHROW(c.validate());
  CHECK(c.step_count() == 1000);
  c.dt = -1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = run_config(-1, 3e-3, 0.0, 1.0, 10);
  CHECK_THROWS_AS(c.validate(), Error);
  c = run_config(2, 1e-3, 0.0, 1.0, 10);
  CHECK_THROWS_AS(c.validate(), Error);
  c = run_config(-1, 1e-3, 0.0, 1.0, 7);
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK(parse_stepper("lie") == Stepper::kLie);
  CHECK_THROWS_AS(parse_stepper("rk4"), Error);
}

TEST_CASE("free propagation of a Gaussian matches the closed form") {
  const GridPtr g = make_radial_grid(4, 20.0, 512);
  const RadialField u0 =
      RadialField::from_function(g, [](double r) { return cplx(std::exp(-r * r), 0.0); });
  for (double t : {0.1, 0.5, 1.0}) {
    const cplx a = 1.0 + cplx(0.0, 4.0 * t);
    const RadialField exact = RadialField::from_function(
        g, [a](double r) { return std::pow(a, -2.0) * std::exp(-r * r / a); });
    CHECK(l2_diff(free_propagate(u0, t), exact) / std::sqrt(mass(exact)) < 1e-6);
    CHECK(mass(free_propagate(u0, t)) == doctest::Approx(mass(u0)).epsilon(1e-12));
  }
  CHECK(l2_diff(free_propagate(u0, 0.0), u0) < 1e-13);
  // Group property.
  const RadialField a = free_propagate(free_propagate(u0, 0.3), 0.2);
  CHECK(l2_diff(a, free_propagate(u0, 0.5)) < 1e-12);
}

TEST_CASE("solitary wave is stationary up to phase") {
  const GroundState& q = q4();
  const Trajectory traj = evolve(run_config(-1, 1e-3, 0.0, 1.0, 50), make_sw(q, 0.0));
  REQUIRE(!traj.guard());
  REQUIRE(traj.size() == 21);
  const double err = l2_diff(traj.state(traj.size() - 1), make_sw(q, 1.0)) / std::sqrt(q.mass);
  MESSAGE("SW final relative L2 error " << err);
  CHECK(err < 1e-4);
  CHECK(traj.relative_mass_drift() < 1e-8);
  CHECK(traj.relative_energy_drift() < 1e-5);
}

TEST_CASE("one step from Q rotates the phase") {
  const GroundState& q = q4();
  CHECK(l2_diff(step(make_sw(q, 0.0), 1e-3, -1), make_sw(q, 1e-3)) < 1e-6);
  const RadialField z = RadialField::zeros(q.profile.grid());
  CHECK(mass(step(z, 1e-3, 1)) == 0.0);
}

TEST_CASE("small data: no guard trip and mass conserved") {
  const GridPtr g = make_radial_grid(4, 20.0, 512);
  const RadialField u0 = RadialField::from_function(
      g, [](double r) { return cplx(0.5 * std::exp(-r * r / 2.0), 0.0); });
  const Trajectory traj = evolve(run_config(-1, 1e-3, 0.0, 2.0, 100), u0);
  CHECK(!traj.guard());
  CHECK(std::abs(std::sqrt(mass(traj.state(traj.size() - 1))) - std::sqrt(mass(u0))) <
        1e-8 * std::sqrt(mass(u0)));
}

TEST_CASE("time reversibility") {
  const GridPtr g = make_radial_grid(4, 20.0, 512);
  const RadialField u0 = RadialField::from_function(
      g, [](double r) { return cplx(0.5 * std::exp(-r * r / 2.0), 0.0); });
  RadialField u = u0;
  for (int i = 0; i < 200; ++i) u = step(u, 1e-3, -1);
  for (int i = 0; i < 200; ++i) u = step(u, -1e-3, -1);
  CHECK(l2_diff(u, u0) < 1e-6);
}

TEST_CASE("scaling covariance") {
  const GridPtr g = make_radial_grid(4, 20.0, 512);
  const RadialField u0 = RadialField::from_function(
      g, [](double r) { return cplx(2.0 * std::exp(-r * r / 2.0), 0.0); });
  const double lambda = 2.0, t = 0.2;
  const auto final_state = [](const Trajectory& tr) { return tr.state(tr.size() - 1); };
  const RadialField a =
      rescale(final_state(evolve(run_config(-1, 1e-4, 0.0, t, 2000), u0)), lambda);
  const RadialField b =
      final_state(evolve(run_config(-1, 1e-4 / (lambda * lambda), 0.0, t / (lambda * lambda), 2000),
                         rescale(u0, lambda)));
  MESSAGE("scaling covariance error " << l2_diff(a, b));
  CHECK(l2_diff(a, b) < 1e-4);
}

TEST_CASE("Strang local error is third order") {
  const GridPtr g = make_radial_grid(4, 20.0, 512);
  const RadialField u0 = RadialField::from_function(
      g, [](double r) { return cplx(2.0 * std::exp(-r * r / 2.0), 0.0); });
  double errs[2];
  for (int k = 0; k < 2; ++k) {
    const double dt = 0.02 / (1 << k);
    RadialField ref = u0;
    for (int i = 0; i < 64; ++i) ref = step(ref, dt / 64, -1);
    errs[k] = l2_diff(step(u0, dt, -1), ref);
  }
  MESSAGE("local error ratio " << errs[0] / errs[1]);
  CHECK(errs[0] / errs[1] == doctest::Approx(8.0).epsilon(0.15));
}

TEST_CASE("Lie splitting is first order globally") {
  const GridPtr g = make_radial_grid(4, 20.0, 512);
  const RadialField u0 = RadialField::from_function(
      g, [](double r) { return cplx(2.0 * std::exp(-r * r / 2.0), 0.0); });
  const auto run = [&](Stepper s, double dt) {
    SimulationConfig c = run_config(-1, dt, 0.0, 0.1, 1);
    c.stepper = s;
    c.cadence = c.step_count();
    const Trajectory t = evolve(c, u0);
    return t.state(t.size() - 1);
  };
  const RadialField ref = run(Stepper::kStrang, 1e-4);
  const double e1 = l2_diff(run(Stepper::kLie, 1e-2), ref);
  const double e2 = l2_diff(run(Stepper::kLie, 5e-3), ref);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("linear run has no nonlinear drift and zero Duhamel residual") {
  const GridPtr g = make_radial_grid(4, 20.0, 512);
  const RadialField u0 = RadialField::from_function(
      g, [](double r) { return cplx(std::exp(-r * r), 0.0); });
  const Trajectory traj = evolve(run_config(0, 1e-2, 0.0, 0.5, 5), u0);
  CHECK(traj.relative_mass_drift() < 1e-12);
  CHECK(duhamel_residual(traj, 0.0, 0.5) < 1e-12);
  const cplx a = 1.0 + cplx(0.0, 2.0);
  const RadialField exact = RadialField::from_function(
      g, [a](double r) { return std::pow(a, -2.0) * std::exp(-r * r / a); });
  CHECK(l2_diff(traj.state(traj.size() - 1), exact) < 1e-10);
}

TEST_CASE("Duhamel residual shrinks under dt halving on SW") {
  const GroundState& q = q4();
  double res[2];
  for (int k = 0; k < 2; ++k) {
    const double dt = 2e-3 / (1 << k);
    const Trajectory traj =
        evolve(run_config(-1, dt, 0.0, 0.2, 1), make_sw(q, 0.0));
    res[k] = duhamel_residual(traj, 0.0, 0.2);
  }
  MESSAGE("Duhamel residuals " << res[0] << " " << res[1]);
  CHECK(res[0] / res[1] >= 3.0);
  const Trajectory traj = evolve(run_config(-1, 1e-3, 0.0, 0.1, 10), make_sw(q, 0.0));
  CHECK_THROWS_AS(duhamel_residual(traj, 0.0, 0.01), Error);
}

TEST_CASE("pseudo-conformal solution is reproduced before blowup") {
  const GroundState& q = q4();
  const Trajectory traj = evolve(run_config(-1, 1e-4, -1.0, 0.5, 500), make_pc(q, -1.0));
  REQUIRE(!traj.guard());
  const RadialField& last = traj.state(traj.size() - 1);
  const RadialField exact = make_pc(q, -0.5);
  const double err = l2_diff(last, exact) / std::sqrt(q.mass);
  MESSAGE("Pc relative error at t=-0.5: " << err);
  CHECK(err < 1e-2);
  CHECK(traj.relative_mass_drift() < 1e-6);
  const double ratio = std::sqrt(kinetic_norm_sq(make_pc(q, -0.25)) / kinetic_norm_sq(last));
  MESSAGE("gradient ratio " << ratio);
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("guards stop runs that lose resolution") {
  const GridPtr g = make_radial_grid(4, 20.0, 512);
  // Mass concentrated near the top of the spectrum.
  const RadialField u0 = apply_multiplier(
      RadialField::from_function(g, [](double r) { return cplx(std::exp(-r * r / 8.0), 0.0); }),
      [&](double rho) { return cplx(rho > 0.6 * g->rho_max() ? 1.0 : 0.0, 0.0); });
  CHECK_THROWS_AS(step(u0, 1e-3, -1), Error);
}

TEST_CASE("trajectory bookkeeping") {
  const GridPtr g = make_radial_grid(4, 20.0, 512);
  Trajectory t(run_config(-1, 1e-3, 0.0, 1.0, 10));
  t.append(0.0, RadialField::zeros(g));
  CHECK_THROWS_AS(t.append(0.0, RadialField::zeros(g)), Error);
  CHECK_THROWS_AS(t.append(1.0, RadialField::zeros(make_radial_grid(4, 10.0, 512))), Error);
  t.append(0.5, RadialField::zeros(g));
  CHECK(t.index_of(0.5) == 1);
  CHECK_THROWS_AS(t.index_of(0.25), Error);
}
