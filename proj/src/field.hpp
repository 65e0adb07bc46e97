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

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "grid.hpp"

namespace nlsrad {

// Complex radial profile u(r_j) sampled at the grid nodes.
class RadialField {
 public:
  RadialField(GridPtr grid, std::vector<cplx> samples);

  static RadialField zeros(GridPtr grid);
  static RadialField from_function(GridPtr grid, const std::function<cplx(double)>& f);

  const GridPtr& grid() const { return grid_; }
  std::span<const cplx> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const cplx& operator[](std::size_t j) const { return samples_[j]; }

  RadialField& operator+=(const RadialField& other);
  RadialField& operator-=(const RadialField& other);
  RadialField& operator*=(cplx c);

 private:
  GridPtr grid_;
  std::vector<cplx> samples_;
};

RadialField operator+(RadialField a, const RadialField& b);
RadialField operator-(RadialField a, const RadialField& b);
RadialField operator*(cplx c, RadialField a);

// Radial-frequency coefficients u^(rho_k).
class SpectralField {
 public:
  SpectralField(GridPtr grid, std::vector<cplx> coeffs);

  const GridPtr& grid() const { return grid_; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  const cplx& operator[](std::size_t k) const { return coeffs_[k]; }

 private:
  GridPtr grid_;
  std::vector<cplx> coeffs_;
};

// Fraction of mass allowed above rho_max / 2 for a field to count as resolved.
inline constexpr double kResolvedTailFraction = 1e-6;

SpectralField transform_forward(const RadialField& f);
RadialField transform_inverse(const SpectralField& f);

// Spectral multiplier m(rho) applied to f.
RadialField apply_multiplier(const RadialField& f, const std::function<cplx(double)>& symbol);
// Pointwise multiplication by g(r).
RadialField multiply_pointwise(const RadialField& f, const std::function<cplx(double)>& g);

double mass(const RadialField& f);
double mass(const SpectralField& f);

// E = 1/2 ||grad f||^2 + mu d/(2(d+2)) ||f||_{2(d+2)/d}^{2(d+2)/d}; mu = -1
// focusing, +1 defocusing, 0 linear. Throws kUnderResolved for tail-heavy f.
double energy(const RadialField& f, int mu);

// ||grad f||_2^2 from the spectral side.
double kinetic_norm_sq(const RadialField& f);

// p in [1, inf]; p = inf gives the max over grid nodes.
double lebesgue_norm(const RadialField& f, double p);
// ||rho^s f^||_2 for s in [-2, 3].
double sobolev_norm(const RadialField& f, double s);

// Fraction of the mass carried by frequencies rho > cutoff.
double spectral_tail_fraction(const RadialField& f, double cutoff);
bool is_resolved(const RadialField& f);
void require_resolved(const RadialField& f, const char* where);

// Pointwise d/dr f at the grid nodes (spectral).
std::vector<cplx> radial_derivative(const RadialField& f);

// Spectral interpolation of f at arbitrary radii.
std::vector<cplx> interpolate(const RadialField& f, std::span<const double> radii);

// lambda^{d/2} f(lambda x), resampled on the same grid.
RadialField rescale(const RadialField& f, double lambda);

void require_same_grid(const RadialField& a, const RadialField& b, const char* where);

// |u|^{4/d} u, the mass-critical power (without the sign mu).
RadialField nonlinearity(const RadialField& f);

}  // namespace nlsrad
