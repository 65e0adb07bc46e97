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

#include <span>
#include <string>
#include <vector>

#include "evolution.hpp"
#include "lp.hpp"
#include "report.hpp"

namespace nlsrad {

// V_R = int phi_{<=R} |x|^2 |f|^2; radius = +inf gives the untruncated moment.
double truncated_virial(const RadialField& f, double radius);

// Five-point centered second difference of t -> V_R(u(t)) at a stored
// snapshot; needs two uniformly spaced neighbours on each side.
double virial_acceleration(const Trajectory& traj, double radius, double t);

// Exact second derivative of the untruncated virial:
// 16 E(u) = 8 ||grad u||^2 + 8 mu d/(d+2) ||u||_{2(d+2)/d}^{2(d+2)/d}.
double virial_identity(const RadialField& f, int mu);

// Smallest node radius C with int_{|x| >= C} |grad f|^2 <= eta.
double kinetic_localization_radius(const RadialField& f, double eta);

struct ConcentrationReport {
  double eta = 0.0;
  double time = 0.0;
  double spatial_radius = 0.0;    // C_x: mass beyond it <= eta
  double frequency_radius = 0.0;  // C_xi: spectral mass beyond it <= eta
  double spatial_tail = 0.0;
  double frequency_tail = 0.0;
  nlohmann::json to_json() const;
};

ConcentrationReport concentration_radii(const RadialField& f, double eta, double time = 0.0);

// Band norms below this fraction of the largest snapshot L^2 norm are
// treated as round-off.
inline constexpr double kNoiseFloor = 1e-12;

struct DecaySample {
  double time = 0.0;
  double key = 0.0;
  double value = 0.0;
};

struct DecayFitReport {
  BandNormTable table;               // sup over snapshots, per key
  std::vector<DecaySample> samples;  // every (t, key) evaluation
  // Least-squares slope of log2(value) against log2(key), fitted over the
  // rows above the noise floor.
  double slope = 0.0;
  double slope_stderr = 0.0;
  double residual = 0.0;  // rms of the log2 fit residuals
  double key_min = 0.0;
  double key_max = 0.0;
  std::size_t points_used = 0;
  bool noise_floor = false;  // fewer than two usable rows: decay unresolvable
  double threshold = 0.0;
  bool strict = false;  // pass iff slope + stderr < threshold, else slope <= threshold + stderr
  bool passed = false;
  std::string verdict;

  // Header "quantity,t,<key_name>,value", one row per (t, key).
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

DecayFitReport fit_decay(BandNormTable table, double floor, double threshold, bool strict = false);

// sup over snapshots of ||phi_{>shell_cut} P_N u(t)||_2 per N, fitted against
// the bar slope <= -(1 + (d-1)/d). Needs at least four scales.
DecayFitReport frequency_decay_fit(const Trajectory& traj, double shell_cut,
                                   std::span<const DyadicScale> scales);

// sup over snapshots and N in [n0, n1] of ||phi_{>R} P_N u(t)||_2 per R;
// passes when the fitted power is negative (some delta > 0).
DecayFitReport spatial_decay_scan(const Trajectory& traj, DyadicScale n0, DyadicScale n1,
                                  std::span<const double> radii);

// Synthetic fields with planted decay, used as fit oracles.
// Sum over N of N^exponent-scaled packets, each inside the plateau of P_N and
// normalized so that ||phi_{>shell_cut} P_N f||_2 = N^exponent.
RadialField planted_frequency_field(const GridPtr& grid, std::span<const DyadicScale> scales,
                                    double exponent, double shell_cut);
// Band-N packets at radii 2 R_k with weights chosen so that
// ||phi_{>R_k} P_N f||_2 = R_k^exponent for the given increasing radii.
RadialField planted_spatial_field(const GridPtr& grid, DyadicScale n, std::span<const double> radii,
                                  double exponent);

// Single-snapshot trajectory wrapper for diagnostics on a fixed field.
Trajectory snapshot_trajectory(const RadialField& f, double t = 0.0);

}  // namespace nlsrad
