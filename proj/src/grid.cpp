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

#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "bessel.hpp"
#include "error.hpp"

namespace nlsrad {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

template <typename T>
std::uint64_t fnv_mix(std::uint64_t h, const T& v) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  for (unsigned char b : bytes) {
    h ^= b;
    h *= kFnvPrime;
  }
  return h;
}

// J_nu(rho r) / r^nu, finite at r = 0.
double scaled_bessel(double order, double rho, double r) {
  const double x = rho * r;
  if (x < 1e-6) {
    return std::pow(0.5 * rho, order) / std::tgamma(order + 1.0) *
           (1.0 - x * x / (4.0 * (order + 1.0)));
  }
  return bessel_j(order, x) / std::pow(r, order);
}

}  // namespace

RadialGrid::RadialGrid(int dimension, double r_max, std::size_t n)
    : dim_(dimension), order_(0.5 * dimension - 1.0), r_max_(r_max) {
  require(dimension >= 2, ErrorCode::kInvalidArgument,
          "dimension out of range: d = " + std::to_string(dimension) + " (need d >= 2)");
  require(std::isfinite(r_max) && r_max > 0.0, ErrorCode::kInvalidArgument,
          "r_max must be positive and finite");
  require(n >= 16, ErrorCode::kInvalidArgument,
          "resolution too low: n = " + std::to_string(n) + " (need n >= 16)");

  sphere_area_ = 2.0 * std::pow(std::numbers::pi, 0.5 * dim_) / std::tgamma(0.5 * dim_);

  const std::vector<double> zeros = bessel_zeros(order_, n + 1);
  const double s = zeros[n];
  const double v = s / r_max_;

  nodes_.resize(n);
  freqs_.resize(n);
  weights_.resize(n);
  spec_weights_.resize(n);
  jnext_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double z = zeros[k];
    jnext_[k] = std::abs(bessel_j(order_ + 1.0, z));
    nodes_[k] = z / v;
    freqs_[k] = z / r_max_;
    const double j2 = jnext_[k] * jnext_[k];
    weights_[k] = sphere_area_ * 2.0 * std::pow(nodes_[k], 2.0 * order_) / (v * v * j2);
    spec_weights_[k] =
        sphere_area_ * 2.0 * std::pow(freqs_[k], 2.0 * order_) / (r_max_ * r_max_ * j2);
  }
  sqrt_w_.resize(n);
  sqrt_spec_w_.resize(n);
  std::transform(weights_.begin(), weights_.end(), sqrt_w_.begin(),
                 [](double w) { return std::sqrt(w); });
  std::transform(spec_weights_.begin(), spec_weights_.end(), sqrt_spec_w_.begin(),
                 [](double w) { return std::sqrt(w); });

  const Eigen::Index dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd c(dim, dim);
  for (Eigen::Index m = 0; m < dim; ++m) {
    for (Eigen::Index k = m; k < dim; ++k) {
      const double val = 2.0 * bessel_j(order_, zeros[m] * zeros[k] / s) /
                         (s * jnext_[m] * jnext_[k]);
      c(m, k) = val;
      c(k, m) = val;
    }
  }
  // One Newton-Schulz step toward the orthogonal polar factor; C is symmetric,
  // so the result stays symmetric and T^2 = I up to round-off.
  const Eigen::MatrixXd c2 = c * c;
  transform_ = 0.5 * c * (3.0 * Eigen::MatrixXd::Identity(dim, dim) - c2);

  max_scale_ = DyadicScale::from_exponent(static_cast<int>(std::floor(std::log2(rho_max() / 4.0))));
  min_scale_ = DyadicScale::from_exponent(static_cast<int>(std::ceil(std::log2(4.0 * freqs_.front()))));
  require(min_scale_ <= max_scale_, ErrorCode::kInvalidArgument,
          "resolution too low: grid exposes no dyadic band (n = " + std::to_string(n) + ")");

  std::uint64_t h = kFnvOffset;
  h = fnv_mix(h, dim_);
  h = fnv_mix(h, static_cast<std::uint64_t>(n));
  h = fnv_mix(h, r_max_);
  hash_ = h;
}

void RadialGrid::apply(const Eigen::MatrixXd& m, std::span<const double> in_scale,
                       std::span<const double> out_scale, std::span<const cplx> in,
                       std::span<cplx> out) const {
  const std::size_t n = size();
  require(in.size() == n && out.size() == n, ErrorCode::kGridMismatch,
          "transform: sample count does not match grid");
  Eigen::MatrixX2d x(static_cast<Eigen::Index>(n), 2);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    x(jj, 0) = in_scale[j] * in[j].real();
    x(jj, 1) = in_scale[j] * in[j].imag();
  }
  const Eigen::MatrixX2d y = m * x;
  for (std::size_t k = 0; k < n; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    out[k] = cplx(y(kk, 0), y(kk, 1)) / out_scale[k];
  }
}

void RadialGrid::forward(std::span<const cplx> samples, std::span<cplx> coeffs) const {
  apply(transform_, sqrt_w_, sqrt_spec_w_, samples, coeffs);
}

void RadialGrid::inverse(std::span<const cplx> coeffs, std::span<cplx> samples) const {
  apply(transform_, sqrt_spec_w_, sqrt_w_, coeffs, samples);
}

std::vector<cplx> RadialGrid::synthesize(std::span<const cplx> coeffs,
                                         std::span<const double> radii) const {
  const std::size_t n = size();
  require(coeffs.size() == n, ErrorCode::kGridMismatch,
          "synthesize: coefficient count does not match grid");
  // Fourier-Bessel coefficients of r^nu u(r).
  std::vector<cplx> a(n);
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = 2.0 * std::pow(freqs_[k], order_) * coeffs[k] /
           (r_max_ * r_max_ * jnext_[k] * jnext_[k]);
  }
  std::vector<cplx> out(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (!(r < r_max_)) continue;
    cplx acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += a[k] * scaled_bessel(order_, freqs_[k], r);
    out[i] = acc;
  }
  return out;
}

const Eigen::MatrixXd& RadialGrid::derivative_matrix() const {
  std::call_once(deriv_once_, [this] {
    const std::size_t n = size();
    const auto dim = static_cast<Eigen::Index>(n);
    deriv_.resize(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
      const double rn = std::pow(nodes_[i], order_);
      for (std::size_t k = 0; k < n; ++k) {
        const double rho = freqs_[k];
        deriv_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
            -2.0 * std::pow(rho, order_ + 1.0) * bessel_j(order_ + 1.0, rho * nodes_[i]) /
            (rn * r_max_ * r_max_ * jnext_[k] * jnext_[k]);
      }
    }
  });
  return deriv_;
}

std::vector<cplx> RadialGrid::radial_derivative(std::span<const cplx> coeffs) const {
  const std::size_t n = size();
  require(coeffs.size() == n, ErrorCode::kGridMismatch,
          "radial_derivative: coefficient count does not match grid");
  const Eigen::MatrixXd& d = derivative_matrix();
  Eigen::MatrixX2d x(static_cast<Eigen::Index>(n), 2);
  for (std::size_t k = 0; k < n; ++k) {
    x(static_cast<Eigen::Index>(k), 0) = coeffs[k].real();
    x(static_cast<Eigen::Index>(k), 1) = coeffs[k].imag();
  }
  const Eigen::MatrixX2d y = d * x;
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = cplx(y(static_cast<Eigen::Index>(i), 0), y(static_cast<Eigen::Index>(i), 1));
  }
  return out;
}

double RadialGrid::orthogonality_defect() const {
  const auto dim = static_cast<Eigen::Index>(size());
  return (transform_ * transform_ - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

GridPtr make_radial_grid(int dimension, double r_max, std::size_t n) {
  return std::make_shared<const RadialGrid>(dimension, r_max, n);
}

bool same_grid(const RadialGrid& a, const RadialGrid& b) {
  return &a == &b || (a.dimension() == b.dimension() && a.size() == b.size() &&
                      a.r_max() == b.r_max());
}

}  // namespace nlsrad
