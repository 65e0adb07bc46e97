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

#include "cutoff.hpp"
#include "field.hpp"
#include "report.hpp"

namespace nlsrad {

// Littlewood-Paley symbols built from CutoffProfile::phi:
//   P_{<=N}: phi(rho/N)            P_{>N}: 1 - phi(rho/N)
//   P_N:     phi(rho/N) - phi(2 rho/N)
//   P~_N = P_{N/2} + P_N + P_{2N}: phi(rho/(2N)) - phi(4 rho/N)
//   P_{>=N} = P_{>N/2}:            1 - phi(2 rho/N)
double low_symbol(DyadicScale n, double rho);
double high_symbol(DyadicScale n, double rho);
double band_symbol(DyadicScale n, double rho);
double fat_symbol(DyadicScale n, double rho);
double at_least_symbol(DyadicScale n, double rho);

// Throws kInvalidArgument unless min_scale <= N <= max_scale.
void require_scale(const RadialGrid& g, DyadicScale n, const char* where);

RadialField project_band(const RadialField& f, DyadicScale n);
RadialField project_low(const RadialField& f, DyadicScale n);
RadialField project_high(const RadialField& f, DyadicScale n);
RadialField project_fat(const RadialField& f, DyadicScale n);
RadialField project_at_least(const RadialField& f, DyadicScale n);

// ||P_N f||_q / (N^{d/p - d/q} ||P_N f||_p), p <= q.
double bernstein_ratio(const RadialField& f, DyadicScale n, double p, double q);
// ||grad P_N f||_2 / (N ||P_N f||_2).
double gradient_bernstein_ratio(const RadialField& f, DyadicScale n);

// ||phi_{>R} (grad) P_{<=N} phi_{<=R/2} f||_2; requires N R >= 4.
double mismatch_real(const RadialField& f, double radius, DyadicScale n, bool with_gradient);

// ||P_N phi_{<=R} P_M f||_2; requires max(N, M) >= 4 min(N, M).
double mismatch_freq(const RadialField& f, DyadicScale n, DyadicScale m, double radius);

// sup_j r_j^{(d-1)/2} |P_N f(r_j)| / (N^{1/2} ||P_N f||_2).
double radial_sobolev_ratio(const RadialField& f, DyadicScale n);

enum class WaveDirection { kOutgoing = 1, kIncoming = -1 };

// [P^{+-} f](r) = f(r)/2 +- (i/pi) PV int_0^inf r^{2-d} f(s) s^{d-1} / (r^2 - s^2) ds.
// The singularity is removed by subtracting f(r) times a smooth even profile
// that vanishes at the box edge; the profile's PV integral is done separately
// and the regularized integrand takes its Taylor limit on the diagonal.
RadialField in_out(const RadialField& f, WaveDirection dir);

// ||phi_{>1/N} P^{+-} P_{>=N} f||_2 / ||f||_2.
double in_out_high_ratio(const RadialField& f, DyadicScale n, WaveDirection dir);

// t -> ||e^{it Lap} P_N f||_inf t^{d/2} for t in [N^{-2}, 10].
BandNormTable dispersive_decay(const RadialField& f, DyadicScale n, std::span<const double> times);

// ||grad|^s F(u)||_{2(d+2)/(d+4)} / (||grad|^s u||_{2(d+2)/d} ||u||_{2(d+2)/d}^{4/d}),
// F(u) = |u|^{4/d} u, 0 < s < 1 + 4/d.
double fractional_chain_ratio(const RadialField& u, double s);

}  // namespace nlsrad
