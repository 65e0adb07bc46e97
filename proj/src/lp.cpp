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

#include "lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "evolution.hpp"

namespace nlsrad {

namespace {

using Cut = CutoffProfile;

RadialField project(const RadialField& f, DyadicScale n, double (*symbol)(DyadicScale, double),
                    const char* where) {
  require_scale(*f.grid(), n, where);
  return apply_multiplier(f, [n, symbol](double rho) { return cplx(symbol(n, rho), 0.0); });
}

double l2(const RadialField& f) { return std::sqrt(mass(f)); }

void require_band(const RadialField& band, const RadialField& f, const char* where) {
  const double b = l2(band);
  require(b > 1e-13 * l2(f) && b > 0.0, ErrorCode::kVanishingBand,
          std::string(where) + ": vanishing band");
}

}  // namespace

double low_symbol(DyadicScale n, double rho) { return Cut::phi(rho / n.value()); }
double high_symbol(DyadicScale n, double rho) { return 1.0 - Cut::phi(rho / n.value()); }
double band_symbol(DyadicScale n, double rho) {
  return Cut::phi(rho / n.value()) - Cut::phi(2.0 * rho / n.value());
}
double fat_symbol(DyadicScale n, double rho) {
  return Cut::phi(rho / (2.0 * n.value())) - Cut::phi(4.0 * rho / n.value());
}
double at_least_symbol(DyadicScale n, double rho) { return 1.0 - Cut::phi(2.0 * rho / n.value()); }

void require_scale(const RadialGrid& g, DyadicScale n, const char* where) {
  require(g.contains(n), ErrorCode::kInvalidArgument,
          std::string(where) + ": N = " + std::to_string(n.value()) + " outside grid range [" +
              std::to_string(g.min_scale().value()) + ", " + std::to_string(g.max_scale().value()) +
              "]");
}

RadialField project_band(const RadialField& f, DyadicScale n) {
  return project(f, n, band_symbol, "project_band");
}
RadialField project_low(const RadialField& f, DyadicScale n) {
  return project(f, n, low_symbol, "project_low");
}
RadialField project_high(const RadialField& f, DyadicScale n) {
  return project(f, n, high_symbol, "project_high");
}
RadialField project_fat(const RadialField& f, DyadicScale n) {
  return project(f, n, fat_symbol, "project_fat");
}
RadialField project_at_least(const RadialField& f, DyadicScale n) {
  return project(f, n, at_least_symbol, "project_at_least");
}

double bernstein_ratio(const RadialField& f, DyadicScale n, double p, double q) {
  require(p >= 1.0 && p <= q, ErrorCode::kInvalidArgument, "bernstein_ratio: need 1 <= p <= q");
  const RadialField band = project_band(f, n);
  require_band(band, f, "bernstein_ratio");
  const int d = f.grid()->dimension();
  const double gap = d / p - (std::isinf(q) ? 0.0 : d / q);
  return lebesgue_norm(band, q) / (std::pow(n.value(), gap) * lebesgue_norm(band, p));
}

double gradient_bernstein_ratio(const RadialField& f, DyadicScale n) {
  const RadialField band = project_band(f, n);
  require_band(band, f, "gradient_bernstein_ratio");
  return std::sqrt(kinetic_norm_sq(band)) / (n.value() * l2(band));
}

double mismatch_real(const RadialField& f, double radius, DyadicScale n, bool with_gradient) {
  require(radius > 0.0 && n.value() * radius >= 4.0, ErrorCode::kInvalidArgument,
          "mismatch_real: need N R >= 4");
  const RadialField inner = multiply_pointwise(f, [radius](double r) { return Cut::le(0.5 * radius, r); });
  const RadialField low = project_low(inner, n);
  const auto w = f.grid()->weights();
  const auto r = f.grid()->nodes();
  double acc = 0.0;
  if (with_gradient) {
    const auto dv = radial_derivative(low);
    for (std::size_t j = 0; j < r.size(); ++j) {
      const double c = Cut::gt(radius, r[j]);
      acc += w[j] * c * c * std::norm(dv[j]);
    }
  } else {
    for (std::size_t j = 0; j < r.size(); ++j) {
      const double c = Cut::gt(radius, r[j]);
      acc += w[j] * c * c * std::norm(low[j]);
    }
  }
  return std::sqrt(acc);
}

double mismatch_freq(const RadialField& f, DyadicScale n, DyadicScale m, double radius) {
  const double big = std::max(n.value(), m.value());
  const double small = std::min(n.value(), m.value());
  require(big >= 4.0 * small, ErrorCode::kInvalidArgument,
          "mismatch_freq: band separation violated (need max(N,M) >= 4 min(N,M))");
  require(radius > 0.0, ErrorCode::kInvalidArgument, "mismatch_freq: need R > 0");
  const RadialField pm = project_band(f, m);
  const RadialField cut = multiply_pointwise(pm, [radius](double r) { return Cut::le(radius, r); });
  return l2(project_band(cut, n));
}

double radial_sobolev_ratio(const RadialField& f, DyadicScale n) {
  const RadialField band = project_band(f, n);
  require_band(band, f, "radial_sobolev_ratio");
  const int d = f.grid()->dimension();
  const auto r = f.grid()->nodes();
  const auto weighted = [d](double x, cplx v) { return std::pow(x, 0.5 * (d - 1)) * std::abs(v); };
  std::vector<double> w(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) w[j] = weighted(r[j], band[j]);
  // The node maximum undersamples the sup; refine around the largest local
  // maxima with the spectral interpolant.
  std::vector<std::size_t> peaks;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const bool left = j == 0 || w[j] >= w[j - 1];
    const bool right = j + 1 == r.size() || w[j] >= w[j + 1];
    if (left && right) peaks.push_back(j);
  }
  const std::size_t keep = std::min<std::size_t>(4, peaks.size());
  std::partial_sort(peaks.begin(), peaks.begin() + keep, peaks.end(),
                    [&w](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  double sup = peaks.empty() ? 0.0 : w[peaks.front()];
  constexpr int kRefine = 32;
  for (std::size_t p = 0; p < keep; ++p) {
    const std::size_t j = peaks[p];
    const double lo = j == 0 ? 0.5 * r[0] : r[j - 1];
    const double hi = j + 1 == r.size() ? r[j] : r[j + 1];
    std::vector<double> xs(kRefine + 1);
    for (int i = 0; i <= kRefine; ++i) xs[i] = lo + (hi - lo) * i / kRefine;
    const auto vs = interpolate(band, xs);
    for (int i = 0; i <= kRefine; ++i) sup = std::max(sup, weighted(xs[i], vs[i]));
  }
  return sup / (std::sqrt(n.value()) * l2(band));
}

namespace {

// Subtraction profile chi(s) = ((R^2 - s^2) / (R^2 - r^2))^m: even, chi(r) = 1,
// and vanishing to order m at the box edge.
constexpr int kEdgeOrder = 6;

// PV int_0^R chi(s) s^{d-1} / (r^2 - s^2) ds. With u = s^2, a = r^2 and
// nu = d/2 - 1 it equals (1/2) [int_0^{R^2} (c(u) - c(a)) / (a - u) du / (R^2 - a)^m
// + a^nu ln(a / (R^2 - a))], c(u) = (R^2 - u)^m u^nu.
double pv_profile_integral(int d, double r, double big_r) {
  const double nu = 0.5 * d - 1.0;
  const double a = r * r, top = big_r * big_r;
  const auto c = [top, nu](double u) { return std::pow(top - u, kEdgeOrder) * std::pow(u, nu); };
  const double ca = c(a);
  const double dca = -kEdgeOrder * std::pow(top - a, kEdgeOrder - 1) * std::pow(a, nu) +
                     (nu > 0.0 ? nu * std::pow(top - a, kEdgeOrder) * std::pow(a, nu - 1.0) : 0.0);
  const auto q = [&](double u) {
    const double du = a - u;
    return std::abs(du) < 1e-12 * top ? -dca : (c(u) - ca) / du;
  };
  // Fixed Gauss-Legendre in t = sqrt(u), where the integrand is a polynomial
  // for every d.
  using Rule = boost::math::quadrature::gauss<double, 30>;
  const auto qt = [&](double t) { return 2.0 * t * q(t * t); };
  const double regular = Rule::integrate(qt, 0.0, r) + Rule::integrate(qt, r, big_r);
  return 0.5 * (regular / std::pow(top - a, kEdgeOrder) + std::pow(a, nu) * std::log(a / (top - a)));
}

}  // namespace

RadialField in_out(const RadialField& f, WaveDirection dir) {
  const RadialGrid& g = *f.grid();
  const int d = g.dimension();
  const std::size_t n = g.size();
  const auto r = g.nodes();
  const auto w = g.weights();
  const double top = g.r_max() * g.r_max();
  const double inv_area = 1.0 / g.sphere_area();

  // (f(s) - f(r) chi(s)) / (r^2 - s^2) is smooth, even in s and vanishes at the
  // box edge, so the grid's own d-dimensional quadrature applies. The diagonal
  // takes the derivative in s^2.
  const auto df = radial_derivative(f);
  const double sgn = static_cast<double>(static_cast<int>(dir));
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ri2 = r[i] * r[i];
    const double span = top - ri2;
    cplx acc = w[i] * (-df[i] / (2.0 * r[i]) - f[i] * (kEdgeOrder / span));
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double rj2 = r[j] * r[j];
      const double chi = std::pow((top - rj2) / span, kEdgeOrder);
      acc += w[j] * (f[j] - f[i] * chi) / (ri2 - rj2);
    }
    acc = acc * inv_area + f[i] * pv_profile_integral(d, r[i], g.r_max());
    out[i] = 0.5 * f[i] + cplx(0.0, sgn / std::numbers::pi) * std::pow(r[i], 2 - d) * acc;
  }
  return RadialField(f.grid(), std::move(out));
}

double in_out_high_ratio(const RadialField& f, DyadicScale n, WaveDirection dir) {
  const double norm = l2(f);
  require(norm > 0.0, ErrorCode::kInvalidArgument, "in_out_high_ratio: zero field");
  const RadialField high = project_at_least(f, n);
  const RadialField pm = in_out(high, dir);
  const double inv_n = 1.0 / n.value();
  const RadialField cut = multiply_pointwise(pm, [inv_n](double r) { return Cut::gt(inv_n, r); });
  return l2(cut) / norm;
}

BandNormTable dispersive_decay(const RadialField& f, DyadicScale n, std::span<const double> times) {
  require(!times.empty(), ErrorCode::kInvalidArgument, "dispersive_decay: empty time list");
  const double t_min = 1.0 / (n.value() * n.value());
  for (double t : times) {
    require(t >= t_min * (1.0 - 1e-12) && t <= 10.0, ErrorCode::kInvalidArgument,
            "dispersive_decay: times must lie in [N^-2, 10]");
  }
  const int d = f.grid()->dimension();
  const RadialField band = project_band(f, n);
  BandNormTable table;
  table.quantity = "||e^{it Lap} P_N f||_inf t^{d/2}";
  table.key_name = "t";
  table.cutoff = "none";
  for (double t : times) {
    const RadialField ut = free_propagate(band, t);
    table.add(t, lebesgue_norm(ut, INFINITY) * std::pow(t, 0.5 * d));
  }
  return table;
}

double fractional_chain_ratio(const RadialField& u, double s) {
  const int d = u.grid()->dimension();
  require(s > 0.0 && s < 1.0 + 4.0 / d, ErrorCode::kInvalidArgument,
          "fractional_chain_ratio: need 0 < s < 1 + 4/d");
  require(mass(u) > 0.0, ErrorCode::kInvalidArgument, "fractional_chain_ratio: zero field");
  require_resolved(u, "fractional_chain_ratio");
  const double q = 2.0 * (d + 2.0) / d;
  const double q_dual = 2.0 * (d + 2.0) / (d + 4.0);
  const auto frac = [s](double rho) { return cplx(std::pow(rho, s), 0.0); };
  const RadialField fu = apply_multiplier(nonlinearity(u), frac);
  const RadialField du = apply_multiplier(u, frac);
  return lebesgue_norm(fu, q_dual) /
         (lebesgue_norm(du, q) * std::pow(lebesgue_norm(u, q), 4.0 / d));
}

}  // namespace nlsrad
