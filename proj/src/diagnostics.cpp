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

#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlsrad {

namespace {

using Cut = CutoffProfile;

double l2(const RadialField& f) { return std::sqrt(mass(f)); }

// ||phi_{>radius} f||_2 by grid quadrature.
double outer_norm(const RadialField& f, double radius) {
  const auto r = f.grid()->nodes();
  const auto w = f.grid()->weights();
  double acc = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double c = Cut::gt(radius, r[j]);
    acc += w[j] * c * c * std::norm(f[j]);
  }
  return std::sqrt(acc);
}

// Smooth bump on the unit interval.
double bump(double s) { return s <= 0.0 || s >= 1.0 ? 0.0 : std::exp(-1.0 / (s * (1.0 - s))); }

// Unit-norm band-N wave packet on a spherical shell of radius `center`; its
// spectrum sits in [0.55 N, 0.95 N], inside the plateau of P_N.
RadialField shell_packet(const GridPtr& g, DyadicScale n, double center) {
  const auto rho = g->frequencies();
  const double lo = 0.55 * n.value(), hi = 0.95 * n.value();
  const double decay = 0.5 * (g->dimension() - 1);
  std::vector<cplx> c(rho.size());
  for (std::size_t k = 0; k < rho.size(); ++k) {
    c[k] = bump((rho[k] - lo) / (hi - lo)) * std::cos(center * rho[k]) * std::pow(rho[k], -decay);
  }
  RadialField p = transform_inverse(SpectralField(g, std::move(c)));
  const double norm = l2(p);
  require(norm > 0.0, ErrorCode::kVanishingBand, "shell_packet: band not represented on grid");
  p *= cplx(1.0 / norm, 0.0);
  return p;
}

void require_snapshots(const Trajectory& traj, const char* where) {
  require(!traj.empty(), ErrorCode::kInsufficientData, std::string(where) + ": empty trajectory");
}

double max_snapshot_norm(const Trajectory& traj) {
  double m = 0.0;
  for (const RadialField& u : traj.states()) m = std::max(m, l2(u));
  return m;
}

}  // namespace

double truncated_virial(const RadialField& f, double radius) {
  require(radius > 0.0, ErrorCode::kInvalidArgument, "truncated_virial: need R > 0");
  const auto r = f.grid()->nodes();
  const auto w = f.grid()->weights();
  const bool full = std::isinf(radius);
  double acc = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double c = full ? 1.0 : Cut::le(radius, r[j]);
    acc += w[j] * c * r[j] * r[j] * std::norm(f[j]);
  }
  return acc;
}

double virial_acceleration(const Trajectory& traj, double radius, double t) {
  const std::size_t i = traj.index_of(t);
  require(i >= 2 && i + 2 < traj.size(), ErrorCode::kInsufficientData,
          "virial_acceleration: t needs two snapshots on each side");
  const auto times = traj.times();
  const double h = times[i + 1] - times[i];
  for (std::size_t k = i - 2; k < i + 2; ++k) {
    require(std::abs(times[k + 1] - times[k] - h) <= 1e-9 * h, ErrorCode::kInvalidArgument,
            "virial_acceleration: snapshots must be uniformly spaced");
  }
  double v[5];
  for (int k = 0; k < 5; ++k) v[k] = truncated_virial(traj.state(i - 2 + k), radius);
  return (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
}

double virial_identity(const RadialField& f, int mu) { return 16.0 * energy(f, mu); }

double kinetic_localization_radius(const RadialField& f, double eta) {
  require_resolved(f, "kinetic_localization_radius");
  const auto r = f.grid()->nodes();
  const auto w = f.grid()->weights();
  const auto df = radial_derivative(f);
  std::vector<double> tail(r.size() + 1, 0.0);
  for (std::size_t j = r.size(); j-- > 0;) tail[j] = tail[j + 1] + w[j] * std::norm(df[j]);
  require(eta > 0.0 && eta < tail[0], ErrorCode::kInvalidArgument,
          "kinetic_localization_radius: need 0 < eta < ||grad f||^2 (radius would be 0)");
  std::size_t j = 0;
  while (tail[j] > eta) ++j;
  return r[j];
}

nlohmann::json ConcentrationReport::to_json() const {
  return {{"eta", eta},
          {"time", time},
          {"spatial_radius", spatial_radius},
          {"frequency_radius", frequency_radius},
          {"spatial_tail", spatial_tail},
          {"frequency_tail", frequency_tail}};
}

ConcentrationReport concentration_radii(const RadialField& f, double eta, double time) {
  require_resolved(f, "concentration_radii");
  const double m = mass(f);
  require(eta > 0.0 && eta < m, ErrorCode::kInvalidArgument,
          "concentration_radii: need 0 < eta < mass(f)");
  const GridPtr& g = f.grid();
  const SpectralField fh = transform_forward(f);
  // Smallest node with the mass strictly beyond it at most eta.
  const auto radius = [eta](std::span<const double> x, std::span<const double> wt, auto value,
                            double& tail_out) {
    double tail = 0.0;
    std::size_t j = x.size() - 1;
    for (;;) {
      if (j == 0) break;
      const double next = tail + wt[j] * value(j);
      if (next > eta) break;
      tail = next;
      --j;
    }
    tail_out = tail;
    return x[j];
  };
  ConcentrationReport rep;
  rep.eta = eta;
  rep.time = time;
  rep.spatial_radius = radius(g->nodes(), g->weights(), [&f](std::size_t j) { return std::norm(f[j]); },
                              rep.spatial_tail);
  rep.frequency_radius = radius(g->frequencies(), g->spectral_weights(),
                                [&fh](std::size_t k) { return std::norm(fh[k]); }, rep.frequency_tail);
  return rep;
}

std::string DecayFitReport::to_csv() const {
  std::string out = "quantity,t," + table.key_name + ",value\n";
  for (const DecaySample& s : samples) {
    out += table.quantity + "," + format_double(s.time) + "," + format_double(s.key) + "," +
           format_double(s.value) + "\n";
  }
  return out;
}

nlohmann::json DecayFitReport::to_json() const {
  return {{"table", table.to_json()},
          {"slope", slope},
          {"slope_stderr", slope_stderr},
          {"residual", residual},
          {"key_range", {key_min, key_max}},
          {"points_used", points_used},
          {"noise_floor", noise_floor},
          {"threshold", threshold},
          {"strict", strict},
          {"passed", passed},
          {"verdict", verdict}};
}

DecayFitReport fit_decay(BandNormTable table, double floor, double threshold, bool strict) {
  DecayFitReport rep;
  rep.threshold = threshold;
  rep.strict = strict;
  std::vector<double> x, y;
  for (const BandNormRow& row : table.rows) {
    if (row.value > floor) {
      x.push_back(std::log2(row.key));
      y.push_back(std::log2(row.value));
    }
  }
  rep.table = std::move(table);
  rep.points_used = x.size();
  if (x.size() < 2) {
    rep.noise_floor = true;
    rep.passed = true;
    rep.slope = -std::numeric_limits<double>::infinity();
    rep.verdict = "superpolynomial, exponent unresolvable (band norms at noise floor)";
    return rep;
  }
  rep.key_min = std::exp2(x.front());
  rep.key_max = std::exp2(x.back());
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  rep.slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double res = y[i] - (my + rep.slope * (x[i] - mx));
    ss += res * res;
  }
  rep.residual = std::sqrt(ss / n);
  rep.slope_stderr = x.size() > 2 ? std::sqrt(ss / (n - 2.0) / sxx) : 0.0;
  rep.passed = strict ? rep.slope + rep.slope_stderr < threshold
                      : rep.slope <= threshold + rep.slope_stderr;
  rep.verdict = "slope " + format_double(rep.slope) + " +- " + format_double(rep.slope_stderr) +
                (strict ? " vs bar < " : " vs bar <= ") + format_double(threshold) +
                (rep.passed ? ": pass" : ": fail");
  return rep;
}

DecayFitReport frequency_decay_fit(const Trajectory& traj, double shell_cut,
                                   std::span<const DyadicScale> scales) {
  require_snapshots(traj, "frequency_decay_fit");
  require(scales.size() >= 4, ErrorCode::kInsufficientData,
          "frequency_decay_fit: need at least four dyadic scales");
  require(shell_cut > 0.0, ErrorCode::kInvalidArgument, "frequency_decay_fit: need shell_cut > 0");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    require_scale(*traj.grid(), scales[i], "frequency_decay_fit");
    require(i == 0 || scales[i - 1] < scales[i], ErrorCode::kInvalidArgument,
            "frequency_decay_fit: scales must increase");
  }
  const int d = traj.grid()->dimension();
  BandNormTable table;
  table.quantity = "sup_t ||phi_{>" + format_double(shell_cut) + "} P_N u(t)||_2";
  table.key_name = "N";
  table.cutoff = "phi_{>" + format_double(shell_cut) + "}";
  std::vector<DecaySample> samples;
  for (DyadicScale n : scales) {
    double sup = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const double v = outer_norm(project_band(traj.state(i), n), shell_cut);
      samples.push_back({traj.times()[i], n.value(), v});
      sup = std::max(sup, v);
    }
    table.add(n.value(), sup);
  }
  DecayFitReport rep = fit_decay(std::move(table), kNoiseFloor * max_snapshot_norm(traj),
                                 -(1.0 + (d - 1.0) / d));
  rep.samples = std::move(samples);
  return rep;
}

DecayFitReport spatial_decay_scan(const Trajectory& traj, DyadicScale n0, DyadicScale n1,
                                  std::span<const double> radii) {
  require_snapshots(traj, "spatial_decay_scan");
  require(!radii.empty(), ErrorCode::kInvalidArgument, "spatial_decay_scan: empty radius list");
  require(n0 <= n1, ErrorCode::kInvalidArgument, "spatial_decay_scan: need N0 <= N1");
  require_scale(*traj.grid(), n0, "spatial_decay_scan");
  require_scale(*traj.grid(), n1, "spatial_decay_scan");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0.0 && (i == 0 || radii[i] > radii[i - 1]), ErrorCode::kInvalidArgument,
            "spatial_decay_scan: radii must be positive and increasing");
  }
  std::vector<double> sup(radii.size(), 0.0);
  std::vector<DecaySample> samples;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::vector<double> best(radii.size(), 0.0);
    for (DyadicScale n = n0; n <= n1; n = n.twice()) {
      const RadialField band = project_band(traj.state(i), n);
      for (std::size_t k = 0; k < radii.size(); ++k) best[k] = std::max(best[k], outer_norm(band, radii[k]));
    }
    for (std::size_t k = 0; k < radii.size(); ++k) {
      samples.push_back({traj.times()[i], radii[k], best[k]});
      sup[k] = std::max(sup[k], best[k]);
    }
  }
  BandNormTable table;
  table.quantity = "sup_{t,N} ||phi_{>R} P_N u(t)||_2";
  table.key_name = "R";
  table.cutoff = "phi_{>R}, N in [" + format_double(n0.value()) + ", " + format_double(n1.value()) + "]";
  for (std::size_t k = 0; k < radii.size(); ++k) table.add(radii[k], sup[k]);
  DecayFitReport rep = fit_decay(std::move(table), kNoiseFloor * max_snapshot_norm(traj), 0.0, true);
  rep.samples = std::move(samples);
  return rep;
}

RadialField planted_frequency_field(const GridPtr& grid, std::span<const DyadicScale> scales,
                                    double exponent, double shell_cut) {
  require(!scales.empty(), ErrorCode::kInvalidArgument, "planted_frequency_field: no scales");
  RadialField f = RadialField::zeros(grid);
  const double center = 4.0 * shell_cut;
  for (DyadicScale n : scales) {
    require_scale(*grid, n, "planted_frequency_field");
    const RadialField p = shell_packet(grid, n, center);
    const double outer = outer_norm(p, shell_cut);
    f += cplx(std::pow(n.value(), exponent) / outer, 0.0) * p;
  }
  return f;
}

RadialField planted_spatial_field(const GridPtr& grid, DyadicScale n, std::span<const double> radii,
                                  double exponent) {
  require(!radii.empty(), ErrorCode::kInvalidArgument, "planted_spatial_field: no radii");
  require_scale(*grid, n, "planted_spatial_field");
  RadialField f = RadialField::zeros(grid);
  const std::size_t m = radii.size();
  for (std::size_t k = 0; k < m; ++k) {
    // Packet k sits between R_k and R_{k+1}; it alone supplies the tail
    // increment R_k^{2e} - R_{k+1}^{2e}.
    const double next = k + 1 < m ? radii[k + 1] : 2.0 * radii[k];
    const double center = 0.5 * (radii[k] * 25.0 / 24.0 + next);
    require(center + 2.0 < grid->r_max(), ErrorCode::kInvalidArgument,
            "planted_spatial_field: radii too large for the grid");
    const double hi = std::pow(radii[k], 2.0 * exponent);
    const double lo = k + 1 < m ? std::pow(radii[k + 1], 2.0 * exponent) : 0.0;
    f += cplx(std::sqrt(hi - lo), 0.0) * shell_packet(grid, n, center);
  }
  return f;
}

Trajectory snapshot_trajectory(const RadialField& f, double t) {
  Trajectory traj{SimulationConfig{}};
  traj.append(t, f);
  return traj;
}

}  // namespace nlsrad
