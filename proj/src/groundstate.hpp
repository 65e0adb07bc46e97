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

#include "field.hpp"

namespace nlsrad {

// Positive radial solution of Lap Q - Q + Q^{1+4/d} = 0.
struct GroundState {
  RadialField profile;
  int dimension = 0;
  double mass = 0.0;       // M(Q)
  double kinetic = 0.0;    // ||grad Q||_2^2
  double power_norm = 0.0; // ||Q||_{2+4/d}^{2+4/d}
  double residual = 0.0;   // ||Lap Q - Q + Q^{1+4/d}||_2 / ||Q||_2
  int iterations = 0;
};

struct PetviashviliOptions {
  // Stabilizing exponent; <= 0 selects the standard p / (p - 1), p = 1 + 4/d.
  double stabilizer = 0.0;
  int max_iterations = 2000;
  // Seed: seed_amplitude * exp(-r^2 / (2 seed_width^2)).
  double seed_amplitude = 1.0;
  double seed_width = 1.0;
};

double standard_stabilizer(int dimension);

// Relative residual of the elliptic equation, derivatives taken spectrally.
double elliptic_residual(const RadialField& q);

// Petviashvili iteration Q <- M^gamma (1 - Lap)^{-1} |Q|^{1+4/d}, with the
// modulus taken each sweep so the fixed point is the positive root.
// Throws kNoConvergence, or kCertification for a sign-changing limit.
GroundState solve_ground_state(const GridPtr& grid, double tol,
                               const PetviashviliOptions& opts = {});

// Rebuilds the derived quantities for a stored profile.
GroundState ground_state_from_profile(RadialField profile);

// Independent route: outward integration of the radial ODE with Q(0)
// bisected between overshoot (sign change) and undershoot (Q' > 0).
struct ShootingResult {
  double center_value = 0.0;
  double mass = 0.0;
  double matching_radius = 0.0;
  int bisections = 0;
};
ShootingResult shoot_ground_state(int dimension);

struct GroundStateCertificate {
  double residual = 0.0;
  double tolerance = 0.0;
  double kinetic_ratio = 0.0;       // ||grad Q||^2 / ||Q||^{p+1}_{p+1}, expect d/(d+2)
  double mass_ratio = 0.0;          // M(Q) / ||Q||^{p+1}_{p+1}, expect 2/(d+2)
  double energy_ratio = 0.0;        // |E(Q)| / ||grad Q||^2
  double gn_ratio = 0.0;            // expect 1
  double shooting_mass = 0.0;
  double shooting_mass_rel_diff = 0.0;
  double center_value = 0.0;
  double shooting_center_value = 0.0;
  bool positive_decreasing = false;
  bool passed = false;
};

// Thresholds: residual < tol, Pohozaev ratios within 1e-4, |E| < 1e-4 ||grad Q||^2,
// |J(Q) - 1| < 1e-3, shooting mass within 1e-4 relative.
GroundStateCertificate certify(const GroundState& q, double tol);

// Sharp Gagliardo-Nirenberg quotient
// J(f) = ||f||_q^q / ((d+2)/d (M(f)/M(Q))^{2/d} ||grad f||^2), q = 2(d+2)/d.
double gn_ratio(const RadialField& f, const GroundState& q);

// Solitary wave e^{it} Q.
RadialField make_sw(const GroundState& q, double t);

// Pseudo-conformal solution |t|^{-d/2} e^{i(|x|^2-4)/(4t)} Q(x/t); t != 0.
RadialField make_pc(const GroundState& q, double t);

}  // namespace nlsrad
