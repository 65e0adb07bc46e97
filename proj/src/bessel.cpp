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

#include "bessel.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace nlsrad {

namespace {

bool is_integer(double v) { return v == std::floor(v); }

// McMahon's large-zero expansion; adequate as a Newton seed from k = 1.
double mcmahon_guess(double order, std::size_t k) {
  const double mu = 4.0 * order * order;
  const double beta = (static_cast<double>(k) + 0.5 * order - 0.25) * std::numbers::pi;
  const double e = 8.0 * beta;
  return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
}

}  // namespace

double bessel_j(double order, double x) {
  if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
  if (is_integer(order) && order >= 0.0) {
    const int n = static_cast<int>(order);
    if (x < 0.0) return (n % 2 == 0 ? 1.0 : -1.0) * ::jn(n, -x);
    return ::jn(n, x);
  }
  return std::cyl_bessel_j(order, x);
}

std::vector<double> bessel_zeros(double order, std::size_t count) {
  require(order >= 0.0, ErrorCode::kInvalidArgument, "bessel_zeros: negative order");
  std::vector<double> zeros;
  zeros.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    double x = mcmahon_guess(order, k);
    for (int it = 0; it < 60; ++it) {
      const double f = bessel_j(order, x);
      const double df = (order / x) * f - bessel_j(order + 1.0, x);
      const double dx = f / df;
      x -= dx;
      if (std::abs(dx) < 1e-15 * x) break;
    }
    if (!zeros.empty() && !(x > zeros.back() + 1.0)) {
      fail(ErrorCode::kNoConvergence, "bessel_zeros: Newton iteration skipped a zero");
    }
    zeros.push_back(x);
  }
  return zeros;
}

}  // namespace nlsrad
