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

#include "groundstate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "evolution.hpp"

namespace nlsrad {

namespace {

double power_exponent(int d) { return 1.0 + 4.0 / d; }

// <a, b> with spectral weights, real part.
double spectral_dot(const RadialGrid& g, std::span<const cplx> a, std::span<const cplx> b) {
  const auto w = g.spectral_weights();
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += w[k] * (std::conj(a[k]) * b[k]).real();
  return acc;
}

std::vector<cplx> positive_power(std::span<const cplx> q, double p) {
  std::vector<cplx> v(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) v[j] = std::pow(std::abs(q[j]), p);
  return v;
}

void check_positive_profile(const RadialField& q) {
  double peak = 0.0, low = 0.0;
  for (const cplx& z : q.samples()) {
    peak = std::max(peak, z.real());
    low = std::min(low, z.real());
  }
  require(peak > 0.0 && low >= -1e-10 * peak, ErrorCode::kCertification,
          "ground state: iteration converged to a sign-changing profile");
}

}  // namespace

double standard_stabilizer(int dimension) {
  const double p = power_exponent(dimension);
  return p / (p - 1.0);
}

double elliptic_residual(const RadialField& q) {
  const RadialGrid& g = *q.grid();
  const double p = power_exponent(g.dimension());
  const SpectralField qh = transform_forward(q);
  std::vector<cplx> pw(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) pw[j] = std::pow(std::abs(q[j]), p - 1.0) * q[j];
  std::vector<cplx> nh(q.size());
  g.forward(pw, nh);
  const auto rho = g.frequencies();
  std::vector<cplx> res(q.size());
  for (std::size_t k = 0; k < res.size(); ++k) res[k] = nh[k] - (1.0 + rho[k] * rho[k]) * qh[k];
  const double qm = mass(q);
  require(qm > 0.0, ErrorCode::kInvalidArgument, "elliptic_residual: zero field");
  return std::sqrt(mass(SpectralField(q.grid(), std::move(res))) / qm);
}

GroundState ground_state_from_profile(RadialField profile) {
  GroundState gs{std::move(profile)};
  const int d = gs.profile.grid()->dimension();
  gs.dimension = d;
  gs.mass = mass(gs.profile);
  gs.kinetic = kinetic_norm_sq(gs.profile);
  const double q = 2.0 + 4.0 / d;
  gs.power_norm = std::pow(lebesgue_norm(gs.profile, q), q);
  gs.residual = elliptic_residual(gs.profile);
  return gs;
}

GroundState solve_ground_state(const GridPtr& grid, double tol, const PetviashviliOptions& opts) {
  require(tol > 0.0, ErrorCode::kInvalidArgument, "solve_ground_state: tol must be > 0");
  require(opts.seed_amplitude != 0.0 && opts.seed_width > 0.0, ErrorCode::kInvalidArgument,
          "solve_ground_state: degenerate seed");
  const RadialGrid& g = *grid;
  const double p = power_exponent(g.dimension());
  const double gamma = opts.stabilizer > 0.0 ? opts.stabilizer : standard_stabilizer(g.dimension());
  const auto rho = g.frequencies();
  const std::size_t n = g.size();

  const double a = opts.seed_amplitude, s2 = 2.0 * opts.seed_width * opts.seed_width;
  RadialField seed = RadialField::from_function(grid, [&](double r) { return cplx(a * std::exp(-r * r / s2), 0.0); });
  require(transform_forward(seed).size() == n && is_resolved(seed), ErrorCode::kUnderResolved,
          "solve_ground_state: grid cannot resolve the Gaussian seed");

  std::vector<cplx> q(seed.samples().begin(), seed.samples().end());
  std::vector<cplx> qh(n), nh(n);
  int it = 0;
  double residual = INFINITY;
  for (; it < opts.max_iterations; ++it) {
    for (cplx& z : q) z = std::abs(z);
    g.forward(q, qh);
    g.forward(positive_power(q, p), nh);
    std::vector<cplx> lq(n);
    for (std::size_t k = 0; k < n; ++k) lq[k] = (1.0 + rho[k] * rho[k]) * qh[k];
    const double num = spectral_dot(g, qh, lq);
    const double den = spectral_dot(g, qh, nh);
    require(den > 0.0, ErrorCode::kNoConvergence, "solve_ground_state: iteration collapsed to zero");
    // Residual of the current iterate, before the update.
    std::vector<cplx> res(n);
    for (std::size_t k = 0; k < n; ++k) res[k] = nh[k] - lq[k];
    residual = std::sqrt(spectral_dot(g, res, res) / spectral_dot(g, qh, qh));
    if (residual < 0.1 * tol) break;
    const double factor = std::pow(num / den, gamma);
    for (std::size_t k = 0; k < n; ++k) qh[k] = factor * nh[k] / (1.0 + rho[k] * rho[k]);
    g.inverse(qh, q);
    for (cplx& z : q) z = cplx(z.real(), 0.0);
  }
  RadialField profile(grid, q);
  check_positive_profile(profile);
  GroundState gs = ground_state_from_profile(std::move(profile));
  gs.iterations = it;
  require(gs.residual < tol, ErrorCode::kNoConvergence,
          "solve_ground_state: residual " + std::to_string(gs.residual) + " above tolerance after " +
              std::to_string(it) + " iterations");
  return gs;
}

ShootingResult shoot_ground_state(int dimension) {
  require(dimension >= 2, ErrorCode::kInvalidArgument, "shoot_ground_state: need d >= 2");
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 3>;  // Q, Q', accumulated mass
  const double d = dimension;
  const double p = power_exponent(dimension);
  const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);

  auto rhs = [&](const State& y, State& dy, double r) {
    const double q = y[0];
    dy[0] = y[1];
    dy[1] = -(d - 1.0) / r * y[1] + q - std::pow(std::abs(q), p - 1.0) * q;
    dy[2] = area * q * q * std::pow(r, d - 1.0);
  };

  enum class Outcome { kOvershoot, kUndershoot, kUnresolved };
  struct Run {
    Outcome outcome;
    double radius;
    double mass;
  };
  auto run = [&](double a) -> Run {
    const double r0 = 1e-4;
    const double c = (a - std::pow(a, p)) / (2.0 * d);
    State y{a + c * r0 * r0, 2.0 * c * r0, area * a * a * std::pow(r0, d) / d};
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-14, 1e-13);
    double r = r0, h = 1e-3;
    while (r < 60.0) {
      State prev = y;
      const double r_prev = r;
      if (stepper.try_step(rhs, y, r, h) != odeint::success) continue;
      if (y[0] < 0.0) return {Outcome::kOvershoot, r, prev[2]};
      if (y[1] > 0.0) return {Outcome::kUndershoot, r_prev, prev[2]};
      h = std::min(h, 0.05);
    }
    return {Outcome::kUnresolved, r, y[2]};
  };

  double lo = 1.0 + 1e-9, hi = 2.0;
  while (run(hi).outcome != Outcome::kOvershoot) {
    hi *= 2.0;
    require(hi < 1e6, ErrorCode::kNoConvergence, "shoot_ground_state: no overshooting bracket");
  }
  require(run(lo).outcome == Outcome::kUndershoot, ErrorCode::kNoConvergence,
          "shoot_ground_state: no undershooting bracket");
  ShootingResult out;
  for (; out.bisections < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi;
       ++out.bisections) {
    const double mid = 0.5 * (lo + hi);
    const Run rr = run(mid);
    if (rr.outcome == Outcome::kOvershoot) hi = mid; else lo = mid;
  }
  const Run a = run(lo), b = run(hi);
  out.center_value = 0.5 * (lo + hi);
  out.mass = 0.5 * (a.mass + b.mass);
  out.matching_radius = std::min(a.radius, b.radius);
  return out;
}

GroundStateCertificate certify(const GroundState& q, double tol) {
  GroundStateCertificate c;
  const int d = q.dimension;
  c.tolerance = tol;
  c.residual = q.residual;
  c.kinetic_ratio = q.kinetic / q.power_norm;
  c.mass_ratio = q.mass / q.power_norm;
  c.energy_ratio = std::abs(energy(q.profile, -1)) / q.kinetic;
  c.gn_ratio = gn_ratio(q.profile, q);
  const ShootingResult shot = shoot_ground_state(d);
  c.shooting_mass = shot.mass;
  c.shooting_mass_rel_diff = std::abs(shot.mass - q.mass) / q.mass;
  c.shooting_center_value = shot.center_value;
  const auto zero = std::array<double, 1>{0.0};
  c.center_value = interpolate(q.profile, zero)[0].real();

  const auto v = q.profile.samples();
  const double peak = v.front().real();
  bool ok = true;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].real() < -1e-10 * peak) ok = false;
    if (j > 0 && v[j].real() > v[j - 1].real() + 1e-10 * peak) ok = false;
  }
  c.positive_decreasing = ok;

  c.passed = c.residual < tol && std::abs(c.kinetic_ratio - d / (d + 2.0)) < 1e-4 &&
             std::abs(c.mass_ratio - 2.0 / (d + 2.0)) < 1e-4 && c.energy_ratio < 1e-4 &&
             std::abs(c.gn_ratio - 1.0) < 1e-3 && c.shooting_mass_rel_diff < 1e-4 &&
             c.positive_decreasing;
  return c;
}

double gn_ratio(const RadialField& f, const GroundState& q) {
  const int d = f.grid()->dimension();
  require(d == q.dimension, ErrorCode::kInvalidArgument, "gn_ratio: dimension mismatch");
  const double m = mass(f);
  require(m > 0.0, ErrorCode::kInvalidArgument, "gn_ratio: zero field");
  require_resolved(f, "gn_ratio");
  const double qexp = 2.0 * (d + 2.0) / d;
  const double num = std::pow(lebesgue_norm(f, qexp), qexp);
  const double den = (d + 2.0) / d * std::pow(m / q.mass, 2.0 / d) * kinetic_norm_sq(f);
  return num / den;
}

RadialField make_sw(const GroundState& q, double t) {
  return std::polar(1.0, t) * q.profile;
}

RadialField make_pc(const GroundState& q, double t) {
  require(t != 0.0 && std::isfinite(t), ErrorCode::kInvalidArgument, "make_pc: need t != 0");
  const GridPtr& grid = q.profile.grid();
  const auto r = grid->nodes();
  std::vector<double> pts(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) pts[j] = r[j] / std::abs(t);
  std::vector<cplx> v = interpolate(q.profile, pts);
  const double amp = std::pow(std::abs(t), -0.5 * grid->dimension());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] *= amp * std::polar(1.0, (r[j] * r[j] - 4.0) / (4.0 * t));
  }
  RadialField pc(grid, std::move(v));
  require(is_resolved(pc), ErrorCode::kUnderResolved,
          "make_pc: |t| = " + std::to_string(std::abs(t)) + " exceeds grid resolution");
  return pc;
}

}  // namespace nlsrad
