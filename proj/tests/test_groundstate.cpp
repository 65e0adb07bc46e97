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
#include "groundstate.hpp"

using namespace nlsrad;

namespace {

const GroundState& q4() {
  static const GroundState q = solve_ground_state(make_radial_grid(4, 20.0, 512), 1e-9);
  return q;
}

// Composite Simpson rule on [0, b].
template <typename F>
double simpson(F f, double b, int n = 20000) {
  const double h = b / n;
  double acc = f(0.0) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("ground state at d=4 satisfies the Pohozaev identities") {
  const GroundState& q = q4();
  CHECK(q.residual < 1e-9);
  CHECK(q.kinetic / q.power_norm == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(q.mass / q.power_norm == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  CHECK(std::abs(energy(q.profile, -1)) < 1e-8 * q.kinetic);
  CHECK(gn_ratio(q.profile, q) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("ground state profile is positive and decreasing") {
  const GroundState& q = q4();
  const auto r = q.profile.grid()->nodes();
  double prev = INFINITY;
  for (std::size_t j = 0; j < r.size() && r[j] < 15.0; ++j) {
    CHECK(q.profile[j].real() > 0.0);
    CHECK(q.profile[j].real() < prev);
    CHECK(std::abs(q.profile[j].imag()) < 1e-14);
    prev = q.profile[j].real();
  }
}

TEST_CASE("mass from grid quadrature agrees with off-grid Simpson integration") {
  const GroundState& q = q4();
  const double area = q.profile.grid()->sphere_area();
  const double oracle = simpson(
      [&](double r) {
        const double v = std::abs(interpolate(q.profile, std::vector<double>{r})[0]);
        return area * r * r * r * v * v;
      },
      19.0, 4000);
  CHECK(q.mass == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("shooting agrees with Petviashvili") {
  const GroundState& q = q4();
  const ShootingResult s = shoot_ground_state(4);
  CHECK(std::abs(s.mass - q.mass) / q.mass < 1e-6);
  const double q0 = interpolate(q.profile, std::vector<double>{0.0})[0].real();
  CHECK(s.center_value == doctest::Approx(q0).epsilon(1e-6));
}

TEST_CASE("certificate passes at d=4 and d=2") {
  const GroundStateCertificate c = certify(q4(), 1e-8);
  CHECK(c.passed);
  CHECK(c.positive_decreasing);
  const GroundState q2 = solve_ground_state(make_radial_grid(2, 20.0, 512), 1e-9);
  const GroundStateCertificate c2 = certify(q2, 1e-8);
  CHECK(c2.passed);
  CHECK(c2.kinetic_ratio == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("Gagliardo-Nirenberg quotient stays below one for other profiles") {
  const GroundState& q = q4();
  for (double a : {0.3, 1.0, 3.0}) {
    const RadialField g = RadialField::from_function(
        q.profile.grid(), [a](double r) { return cplx(std::exp(-a * r * r), 0.0); });
    CHECK(gn_ratio(g, q) < 1.0);
  }
  // Scale and amplitude invariance of the quotient at the maximizer.
  CHECK(gn_ratio(rescale(q.profile, 1.3), q) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(gn_ratio(cplx(2.0, 0.0) * q.profile, q) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("solitary wave and pseudo-conformal constructors") {
  const GroundState& q = q4();
  const RadialField sw = make_sw(q, 1.0);
  CHECK(mass(sw) == doctest::Approx(q.mass).epsilon(1e-12));
  CHECK(std::abs(sw[3] - std::exp(cplx(0.0, 1.0)) * q.profile[3]) < 1e-14);

  const RadialField pc = make_pc(q, -1.0);
  CHECK(mass(pc) == doctest::Approx(q.mass).epsilon(1e-8));
  // |Pc(-1)| = Q.
  for (std::size_t j = 0; j < 200; j += 17) {
    CHECK(std::abs(pc[j]) == doctest::Approx(q.profile[j].real()).epsilon(1e-10));
  }
  // ||grad Pc(t)||^2 = ||grad Q||^2 / t^2 + ||x Q||^2 / 4.
  const auto r = q.profile.grid()->nodes();
  const auto w = q.profile.grid()->weights();
  double xq = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) xq += w[j] * r[j] * r[j] * std::norm(q.profile[j]);
  for (double t : {-1.0, -0.5}) {
    const RadialField p = make_pc(q, t);
    CHECK(kinetic_norm_sq(p) == doctest::Approx(q.kinetic / (t * t) + xq / 4.0).epsilon(1e-6));
  }
  CHECK_THROWS_AS(make_pc(q, 0.0), Error);
}

TEST_CASE("solver rejects bad tolerance") {
  CHECK_THROWS_AS(solve_ground_state(make_radial_grid(4, 20.0, 512), -1.0), Error);
}
