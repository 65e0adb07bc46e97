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

#include "evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nlsrad {

namespace {

struct StepStats {
  double tail_fraction = 0.0;
  double gradient_sq = 0.0;
};

void nonlinear_phase(std::vector<cplx>& u, double tau, int mu, double power) {
  if (mu == 0 || tau == 0.0) return;
  for (cplx& z : u) z *= std::polar(1.0, -mu * std::pow(std::abs(z), power) * tau);
}

StepStats linear_phase(const RadialGrid& g, std::vector<cplx>& u, std::vector<cplx>& buf,
                       double dt) {
  g.forward(u, buf);
  const auto rho = g.frequencies();
  const auto w = g.spectral_weights();
  const double cut = 0.5 * g.rho_max();
  double total = 0.0, tail = 0.0, grad = 0.0;
  for (std::size_t k = 0; k < buf.size(); ++k) {
    const double m = w[k] * std::norm(buf[k]);
    total += m;
    if (rho[k] > cut) tail += m;
    grad += rho[k] * rho[k] * m;
    buf[k] *= std::polar(1.0, -rho[k] * rho[k] * dt);
  }
  g.inverse(buf, u);
  return {total > 0.0 ? tail / total : 0.0, grad};
}

StepStats split_step(const RadialGrid& g, std::vector<cplx>& u, std::vector<cplx>& buf,
                     double dt, int mu, Stepper stepper) {
  const double power = 4.0 / g.dimension();
  StepStats stats;
  switch (stepper) {
    case Stepper::kStrang:
      nonlinear_phase(u, 0.5 * dt, mu, power);
      stats = linear_phase(g, u, buf, dt);
      nonlinear_phase(u, 0.5 * dt, mu, power);
      break;
    case Stepper::kLie:
      stats = linear_phase(g, u, buf, dt);
      nonlinear_phase(u, dt, mu, power);
      break;
  }
  return stats;
}

double energy_unchecked(const RadialField& u, int mu, double gradient_sq) {
  if (mu == 0) return 0.5 * gradient_sq;
  const int d = u.grid()->dimension();
  const double p = 2.0 * (d + 2.0) / d;
  return 0.5 * gradient_sq + mu * d / (2.0 * (d + 2.0)) * std::pow(lebesgue_norm(u, p), p);
}

ConservationSample sample(double t, const RadialField& u, int mu) {
  ConservationSample s;
  s.time = t;
  s.mass = mass(u);
  const double grad_sq = kinetic_norm_sq(u);
  s.gradient_norm = std::sqrt(grad_sq);
  s.energy = energy_unchecked(u, mu, grad_sq);
  s.tail_fraction = spectral_tail_fraction(u, 0.5 * u.grid()->rho_max());
  return s;
}

}  // namespace

const char* stepper_name(Stepper s) {
  switch (s) {
    case Stepper::kStrang: return "strang";
    case Stepper::kLie: return "lie";
  }
  return "unknown";
}

Stepper parse_stepper(const std::string& name) {
  if (name == "strang") return Stepper::kStrang;
  if (name == "lie") return Stepper::kLie;
  fail(ErrorCode::kInvalidArgument, "unknown stepper '" + name + "'");
}

std::size_t SimulationConfig::step_count() const {
  return static_cast<std::size_t>(std::llround(duration / dt));
}

void SimulationConfig::validate() const {
  require(mu >= -1 && mu <= 1, ErrorCode::kInvalidArgument, "config: mu must be -1, 0 or +1");
  require(std::isfinite(dt) && dt > 0.0, ErrorCode::kInvalidArgument, "config: dt must be > 0");
  require(std::isfinite(duration) && duration > 0.0, ErrorCode::kInvalidArgument,
          "config: duration T must be > 0");
  require(std::isfinite(start_time), ErrorCode::kInvalidArgument, "config: bad start time");
  require(cadence >= 1, ErrorCode::kInvalidArgument, "config: cadence must be >= 1");
  const std::size_t steps = step_count();
  require(steps >= 1 && std::abs(static_cast<double>(steps) * dt - duration) <= 1e-9 * duration,
          ErrorCode::kInvalidArgument, "config: T is not an integer multiple of dt");
  require(steps % cadence == 0, ErrorCode::kInvalidArgument,
          "config: cadence " + std::to_string(cadence) + " does not divide step count " +
              std::to_string(steps));
  require(blowup_factor > 1.0, ErrorCode::kInvalidArgument, "config: blowup factor must be > 1");
  require(tail_guard > 0.0 && tail_guard < 1.0, ErrorCode::kInvalidArgument,
          "config: tail guard must lie in (0, 1)");
}

const GridPtr& Trajectory::grid() const {
  require(!states_.empty(), ErrorCode::kInsufficientData, "trajectory is empty");
  return states_.front().grid();
}

void Trajectory::append(double t, RadialField u) {
  require(times_.empty() || t > times_.back(), ErrorCode::kInvalidArgument,
          "trajectory times must be strictly increasing");
  if (!states_.empty()) require_same_grid(states_.front(), u, "Trajectory::append");
  times_.push_back(t);
  states_.push_back(std::move(u));
}

std::size_t Trajectory::index_of(double t) const {
  const double scale = std::max(1.0, std::abs(t));
  const auto it = std::lower_bound(times_.begin(), times_.end(), t - 1e-9 * scale);
  require(it != times_.end() && std::abs(*it - t) <= 1e-9 * scale, ErrorCode::kInsufficientData,
          "no snapshot at t = " + std::to_string(t));
  return static_cast<std::size_t>(it - times_.begin());
}

double Trajectory::relative_mass_drift() const {
  if (log_.empty()) return 0.0;
  const double m0 = log_.front().mass;
  double drift = 0.0;
  for (const auto& s : log_) drift = std::max(drift, std::abs(s.mass - m0));
  return m0 > 0.0 ? drift / m0 : drift;
}

double Trajectory::relative_energy_drift() const {
  if (log_.empty()) return 0.0;
  const double e0 = log_.front().energy;
  const double kin0 = 0.5 * log_.front().gradient_norm * log_.front().gradient_norm;
  const double scale = std::max(std::abs(e0), kin0);
  double drift = 0.0;
  for (const auto& s : log_) drift = std::max(drift, std::abs(s.energy - e0));
  return scale > 0.0 ? drift / scale : drift;
}

RadialField free_propagate(const RadialField& f, double t) {
  if (t == 0.0) return f;
  return apply_multiplier(f, [t](double rho) { return std::polar(1.0, -rho * rho * t); });
}

RadialField step(const RadialField& u, double dt, int mu, Stepper stepper, double tail_guard) {
  require(mu >= -1 && mu <= 1, ErrorCode::kInvalidArgument, "step: mu must be -1, 0 or +1");
  const RadialGrid& g = *u.grid();
  std::vector<cplx> v(u.samples().begin(), u.samples().end());
  std::vector<cplx> buf(v.size());
  const StepStats stats = split_step(g, v, buf, dt, mu, stepper);
  require(stats.tail_fraction <= tail_guard, ErrorCode::kResolutionLoss,
          "step: spectral tail fraction " + std::to_string(stats.tail_fraction) +
              " exceeds guard; reduce dt or enlarge the grid");
  return RadialField(u.grid(), std::move(v));
}

Trajectory evolve(const SimulationConfig& cfg, const RadialField& u0) {
  cfg.validate();
  require_resolved(u0, "evolve");
  Trajectory traj(cfg);
  const RadialGrid& g = *u0.grid();
  traj.append(cfg.start_time, u0);
  traj.append_log(sample(cfg.start_time, u0, cfg.mu));
  const double grad0 = traj.log().front().gradient_norm;

  std::vector<cplx> v(u0.samples().begin(), u0.samples().end());
  std::vector<cplx> buf(v.size());
  const std::size_t steps = cfg.step_count();
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t = cfg.start_time + static_cast<double>(i) * cfg.dt;
    const StepStats stats = split_step(g, v, buf, cfg.dt, cfg.mu, cfg.stepper);
    if (stats.tail_fraction > cfg.tail_guard) {
      traj.set_guard({ErrorCode::kResolutionLoss, t,
                      "spectral tail fraction " + std::to_string(stats.tail_fraction) +
                          " exceeded guard " + std::to_string(cfg.tail_guard)});
      break;
    }
    if (grad0 > 0.0 && std::sqrt(stats.gradient_sq) > cfg.blowup_factor * grad0) {
      traj.set_guard({ErrorCode::kBlowupGuard, t,
                      "gradient norm grew by more than " + std::to_string(cfg.blowup_factor) +
                          "x"});
      break;
    }
    if (i % cfg.cadence == 0) {
      RadialField u(u0.grid(), v);
      traj.append_log(sample(t, u, cfg.mu));
      traj.append(t, std::move(u));
    }
  }
  return traj;
}

double duhamel_residual(const Trajectory& traj, double t0, double t1) {
  require(t0 < t1, ErrorCode::kInvalidArgument, "duhamel_residual: need t0 < t1");
  const std::size_t i0 = traj.index_of(t0);
  const std::size_t i1 = traj.index_of(t1);
  require(i1 >= i0 + 2, ErrorCode::kInsufficientData,
          "duhamel_residual: need at least three snapshots in [t0, t1]");
  const int mu = traj.config().mu;
  const GridPtr& grid = traj.grid();
  const auto rho = grid->frequencies();
  const auto times = traj.times();
  const double ta = times[i0], tb = times[i1];

  const SpectralField a = transform_forward(traj.state(i0));
  const SpectralField b = transform_forward(traj.state(i1));
  std::vector<cplx> acc(grid->size());
  for (std::size_t k = 0; k < acc.size(); ++k) {
    acc[k] = b[k] - std::polar(1.0, -rho[k] * rho[k] * (tb - ta)) * a[k];
  }
  if (mu != 0) {
    for (std::size_t i = i0; i <= i1; ++i) {
      double weight = 0.0;
      if (i > i0) weight += 0.5 * (times[i] - times[i - 1]);
      if (i < i1) weight += 0.5 * (times[i + 1] - times[i]);
      const SpectralField fh = transform_forward(nonlinearity(traj.state(i)));
      for (std::size_t k = 0; k < acc.size(); ++k) {
        acc[k] += cplx(0.0, weight * mu) *
                  std::polar(1.0, -rho[k] * rho[k] * (tb - times[i])) * fh[k];
      }
    }
  }
  return std::sqrt(mass(SpectralField(grid, std::move(acc))));
}

}  // namespace nlsrad
