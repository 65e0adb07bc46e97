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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "field.hpp"

namespace nlsrad {

enum class Stepper {
  kStrang,  // N(dt/2) L(dt) N(dt/2), second order
  kLie,     // L(dt) N(dt), first order; kept for convergence comparisons
};

const char* stepper_name(Stepper s);
Stepper parse_stepper(const std::string& name);

// Parameters of one run of i u_t + Lap u = mu |u|^{4/d} u. mu = 0 forces the
// linear flow (F = 0).
struct SimulationConfig {
  int mu = -1;
  double dt = 1e-3;
  double start_time = 0.0;
  double duration = 1.0;
  std::size_t cadence = 10;
  Stepper stepper = Stepper::kStrang;
  // Abort when ||grad u|| exceeds blowup_factor times its initial value.
  double blowup_factor = 1e3;
  // Abort when the mass fraction above rho_max / 2 exceeds this.
  double tail_guard = 1e-4;

  std::size_t step_count() const;
  void validate() const;
};

struct ConservationSample {
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double gradient_norm = 0.0;
  double tail_fraction = 0.0;
};

struct GuardEvent {
  ErrorCode code = ErrorCode::kBlowupGuard;
  double time = 0.0;
  std::string detail;
};

// Time-stamped snapshots of one run; append-only while the run is active.
class Trajectory {
 public:
  explicit Trajectory(SimulationConfig config) : config_(config) {}

  const SimulationConfig& config() const { return config_; }
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  std::span<const double> times() const { return times_; }
  const RadialField& state(std::size_t i) const { return states_.at(i); }
  const std::vector<RadialField>& states() const { return states_; }
  const std::vector<ConservationSample>& log() const { return log_; }
  const std::optional<GuardEvent>& guard() const { return guard_; }
  const GridPtr& grid() const;

  // Times must be strictly increasing and all states on one grid.
  void append(double t, RadialField u);
  void append_log(const ConservationSample& s) { log_.push_back(s); }
  void set_guard(GuardEvent e) { guard_ = std::move(e); }

  // Index of the snapshot at time t (within 1e-9 relative), or throws.
  std::size_t index_of(double t) const;

  double relative_mass_drift() const;
  double relative_energy_drift() const;

 private:
  SimulationConfig config_;
  std::vector<double> times_;
  std::vector<RadialField> states_;
  std::vector<ConservationSample> log_;
  std::optional<GuardEvent> guard_;
};

// e^{it Lap} f as the exact multiplier e^{-i t rho^2}.
RadialField free_propagate(const RadialField& f, double t);

// One split step. Throws kResolutionLoss if the spectral tail above
// rho_max / 2 exceeds tail_guard during the step.
RadialField step(const RadialField& u, double dt, int mu, Stepper stepper = Stepper::kStrang,
                 double tail_guard = 1e-4);

// Runs the configured flow from u0. Guard trips stop the run; the partial
// trajectory is returned with guard() populated.
Trajectory evolve(const SimulationConfig& cfg, const RadialField& u0);

// || u(t1) - e^{i(t1-t0)Lap} u(t0) + i int_{t0}^{t1} e^{i(t1-t)Lap} F(u(t)) dt ||_2
// with the time integral taken by the composite trapezoid rule over the
// stored snapshots in [t0, t1].
double duhamel_residual(const Trajectory& traj, double t0, double t1);

}  // namespace nlsrad
