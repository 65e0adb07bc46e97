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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dyadic.hpp"

namespace nlsrad {

using cplx = std::complex<double>;

// Radial quadrature grid in R^d together with the order-(d/2-1) discrete
// Hankel transform that realizes the d-dimensional radial Fourier transform
// (unitary normalization, (2 pi)^{-d/2}).
//
// Nodes sit at r_j = j_{nu,j} R / j_{nu,n+1} and rho_k = j_{nu,k} / R, where
// j_{nu,k} are the zeros of J_nu. In the weighted coordinates
// x_j = sqrt(w_j) u(r_j), y_k = sqrt(W_k) u^(rho_k) the transform is a single
// real symmetric matrix; the classical quasi-discrete Hankel matrix is
// orthogonal only up to ~1e-11, so one Newton-Schulz polar step is applied
// at construction to make it orthogonal to round-off. The field is assumed to
// vanish for r >= R (Dirichlet), so the frequencies rho_k are the exact
// Laplacian eigenvalues sqrt(-lambda_k) of the discrete model.
class RadialGrid {
 public:
  RadialGrid(int dimension, double r_max, std::size_t n);

  int dimension() const { return dim_; }
  double order() const { return order_; }
  double r_max() const { return r_max_; }
  std::size_t size() const { return nodes_.size(); }

  // Surface area of the unit sphere S^{d-1}.
  double sphere_area() const { return sphere_area_; }

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> frequencies() const { return freqs_; }
  // Spatial weights, including omega_{d-1} r^{d-1}.
  std::span<const double> weights() const { return weights_; }
  std::span<const double> spectral_weights() const { return spec_weights_; }

  double rho_max() const { return freqs_.back(); }
  // Dyadic range exposed to users: N_min <= N <= rho_max / 4.
  DyadicScale min_scale() const { return min_scale_; }
  DyadicScale max_scale() const { return max_scale_; }
  bool contains(DyadicScale n) const { return n >= min_scale_ && n <= max_scale_; }

  std::uint64_t hash() const { return hash_; }

  void forward(std::span<const cplx> samples, std::span<cplx> coeffs) const;
  void inverse(std::span<const cplx> coeffs, std::span<cplx> samples) const;

  // Fourier-Bessel synthesis at arbitrary radii (zero for r >= R).
  std::vector<cplx> synthesize(std::span<const cplx> coeffs,
                               std::span<const double> radii) const;
  // d/dr of the synthesized field at the grid nodes.
  std::vector<cplx> radial_derivative(std::span<const cplx> coeffs) const;

  // Deviation of the transform matrix from orthogonality (max |T^2 - I|).
  double orthogonality_defect() const;

 private:
  void apply(const Eigen::MatrixXd& m, std::span<const double> in_scale,
             std::span<const double> out_scale, std::span<const cplx> in,
             std::span<cplx> out) const;
  const Eigen::MatrixXd& derivative_matrix() const;

  int dim_;
  double order_;
  double r_max_;
  double sphere_area_;
  std::vector<double> nodes_, freqs_, weights_, spec_weights_;
  std::vector<double> sqrt_w_, sqrt_spec_w_;
  // |J_{nu+1}(j_{nu,k})| for k = 1..n, used by synthesis.
  std::vector<double> jnext_;
  Eigen::MatrixXd transform_;
  DyadicScale min_scale_, max_scale_;
  std::uint64_t hash_ = 0;

  mutable std::once_flag deriv_once_;
  mutable Eigen::MatrixXd deriv_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Rejects d < 2, non-finite or non-positive r_max, and n < 16.
GridPtr make_radial_grid(int dimension, double r_max, std::size_t n);

bool same_grid(const RadialGrid& a, const RadialGrid& b);

}  // namespace nlsrad
