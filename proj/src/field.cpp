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

#include "field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nlsrad {

namespace {

void require_finite(std::span<const cplx> v, const char* what) {
  for (const cplx& z : v) {
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), ErrorCode::kInvalidArgument,
            std::string(what) + ": non-finite sample");
  }
}

}  // namespace

RadialField::RadialField(GridPtr grid, std::vector<cplx> samples)
    : grid_(std::move(grid)), samples_(std::move(samples)) {
  require(grid_ != nullptr, ErrorCode::kInvalidArgument, "RadialField: null grid");
  require(samples_.size() == grid_->size(), ErrorCode::kGridMismatch,
          "RadialField: sample count does not match grid");
  require_finite(samples_, "RadialField");
}

RadialField RadialField::zeros(GridPtr grid) {
  const std::size_t n = grid->size();
  return RadialField(std::move(grid), std::vector<cplx>(n));
}

RadialField RadialField::from_function(GridPtr grid, const std::function<cplx(double)>& f) {
  std::vector<cplx> v(grid->size());
  const auto r = grid->nodes();
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(r[j]);
  return RadialField(std::move(grid), std::move(v));
}

void require_same_grid(const RadialField& a, const RadialField& b, const char* where) {
  require(same_grid(*a.grid(), *b.grid()), ErrorCode::kGridMismatch,
          std::string(where) + ": fields live on different grids");
}

RadialField& RadialField::operator+=(const RadialField& other) {
  require_same_grid(*this, other, "operator+=");
  for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] += other.samples_[j];
  return *this;
}

RadialField& RadialField::operator-=(const RadialField& other) {
  require_same_grid(*this, other, "operator-=");
  for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] -= other.samples_[j];
  return *this;
}

RadialField& RadialField::operator*=(cplx c) {
  for (cplx& z : samples_) z *= c;
  return *this;
}

RadialField operator+(RadialField a, const RadialField& b) { return a += b; }
RadialField operator-(RadialField a, const RadialField& b) { return a -= b; }
RadialField operator*(cplx c, RadialField a) { return a *= c; }

SpectralField::SpectralField(GridPtr grid, std::vector<cplx> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  require(grid_ != nullptr, ErrorCode::kInvalidArgument, "SpectralField: null grid");
  require(coeffs_.size() == grid_->size(), ErrorCode::kGridMismatch,
          "SpectralField: coefficient count does not match grid");
  require_finite(coeffs_, "SpectralField");
}

SpectralField transform_forward(const RadialField& f) {
  std::vector<cplx> c(f.size());
  f.grid()->forward(f.samples(), c);
  return SpectralField(f.grid(), std::move(c));
}

RadialField transform_inverse(const SpectralField& f) {
  std::vector<cplx> u(f.size());
  f.grid()->inverse(f.coeffs(), u);
  return RadialField(f.grid(), std::move(u));
}

RadialField apply_multiplier(const RadialField& f, const std::function<cplx(double)>& symbol) {
  const SpectralField fh = transform_forward(f);
  std::vector<cplx> c(fh.coeffs().begin(), fh.coeffs().end());
  const auto rho = f.grid()->frequencies();
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= symbol(rho[k]);
  return transform_inverse(SpectralField(f.grid(), std::move(c)));
}

RadialField multiply_pointwise(const RadialField& f, const std::function<cplx(double)>& g) {
  std::vector<cplx> v(f.samples().begin(), f.samples().end());
  const auto r = f.grid()->nodes();
  for (std::size_t j = 0; j < v.size(); ++j) v[j] *= g(r[j]);
  return RadialField(f.grid(), std::move(v));
}

double mass(const RadialField& f) {
  const auto w = f.grid()->weights();
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += w[j] * std::norm(f[j]);
  return acc;
}

double mass(const SpectralField& f) {
  const auto w = f.grid()->spectral_weights();
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) acc += w[k] * std::norm(f[k]);
  return acc;
}

double kinetic_norm_sq(const RadialField& f) {
  const SpectralField fh = transform_forward(f);
  const auto w = f.grid()->spectral_weights();
  const auto rho = f.grid()->frequencies();
  double acc = 0.0;
  for (std::size_t k = 0; k < fh.size(); ++k) acc += w[k] * rho[k] * rho[k] * std::norm(fh[k]);
  return acc;
}

double lebesgue_norm(const RadialField& f, double p) {
  require(p >= 1.0, ErrorCode::kInvalidArgument, "lebesgue_norm: need p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx& z : f.samples()) m = std::max(m, std::abs(z));
    return m;
  }
  const auto w = f.grid()->weights();
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += w[j] * std::pow(std::abs(f[j]), p);
  return std::pow(acc, 1.0 / p);
}

double sobolev_norm(const RadialField& f, double s) {
  require(s >= -2.0 && s <= 3.0, ErrorCode::kInvalidArgument,
          "sobolev_norm: regularity outside [-2, 3]");
  const SpectralField fh = transform_forward(f);
  const auto w = f.grid()->spectral_weights();
  const auto rho = f.grid()->frequencies();
  double acc = 0.0;
  for (std::size_t k = 0; k < fh.size(); ++k) {
    acc += w[k] * std::pow(rho[k], 2.0 * s) * std::norm(fh[k]);
  }
  return std::sqrt(acc);
}

double energy(const RadialField& f, int mu) {
  require(mu >= -1 && mu <= 1, ErrorCode::kInvalidArgument, "energy: mu must be -1, 0 or +1");
  require_resolved(f, "energy");
  const double kinetic = 0.5 * kinetic_norm_sq(f);
  if (mu == 0) return kinetic;
  const int d = f.grid()->dimension();
  const double p = 2.0 * (d + 2.0) / d;
  const double lp = lebesgue_norm(f, p);
  return kinetic + mu * d / (2.0 * (d + 2.0)) * std::pow(lp, p);
}

double spectral_tail_fraction(const RadialField& f, double cutoff) {
  const SpectralField fh = transform_forward(f);
  const auto w = f.grid()->spectral_weights();
  const auto rho = f.grid()->frequencies();
  double total = 0.0, tail = 0.0;
  for (std::size_t k = 0; k < fh.size(); ++k) {
    const double m = w[k] * std::norm(fh[k]);
    total += m;
    if (rho[k] > cutoff) tail += m;
  }
  return total > 0.0 ? tail / total : 0.0;
}

bool is_resolved(const RadialField& f) {
  return spectral_tail_fraction(f, 0.5 * f.grid()->rho_max()) < kResolvedTailFraction;
}

void require_resolved(const RadialField& f, const char* where) {
  const double tail = spectral_tail_fraction(f, 0.5 * f.grid()->rho_max());
  require(tail < kResolvedTailFraction, ErrorCode::kUnderResolved,
          std::string(where) + ": field under-resolved (mass fraction " + std::to_string(tail) +
              " above rho_max/2)");
}

std::vector<cplx> radial_derivative(const RadialField& f) {
  const SpectralField fh = transform_forward(f);
  return f.grid()->radial_derivative(fh.coeffs());
}

std::vector<cplx> interpolate(const RadialField& f, std::span<const double> radii) {
  const SpectralField fh = transform_forward(f);
  return f.grid()->synthesize(fh.coeffs(), radii);
}

RadialField rescale(const RadialField& f, double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, ErrorCode::kInvalidArgument,
          "rescale: lambda must be positive");
  const auto r = f.grid()->nodes();
  std::vector<double> pts(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) pts[j] = lambda * r[j];
  std::vector<cplx> v = interpolate(f, pts);
  const double amp = std::pow(lambda, 0.5 * f.grid()->dimension());
  for (cplx& z : v) z *= amp;
  return RadialField(f.grid(), std::move(v));
}

RadialField nonlinearity(const RadialField& f) {
  const double power = 4.0 / f.grid()->dimension();
  std::vector<cplx> v(f.samples().begin(), f.samples().end());
  for (cplx& z : v) z *= std::pow(std::abs(z), power);
  return RadialField(f.grid(), std::move(v));
}

}  // namespace nlsrad
