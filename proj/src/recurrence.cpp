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

#include "recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "lp.hpp"

namespace nlsrad {

namespace {

constexpr double kTimeTol = 1e-9;
constexpr double kRelTol = 1e-12;

// int_{t0}^{t1} of the piecewise-linear interpolant of g over the snapshots.
// Needs [t0, t1] inside the stored span and at least three snapshots in it.
double time_integral(const Trajectory& traj, double t0, double t1,
                     const std::function<double(std::size_t)>& g, const char* where) {
  require(std::isfinite(t0) && std::isfinite(t1) && t1 > t0, ErrorCode::kInvalidArgument,
          std::string(where) + ": need t0 < t1");
  const auto t = traj.times();
  require(!t.empty(), ErrorCode::kInsufficientData, std::string(where) + ": empty trajectory");
  const double tol = kTimeTol * std::max(1.0, std::abs(t1));
  require(t0 >= t.front() - tol && t1 <= t.back() + tol, ErrorCode::kInsufficientData,
          std::string(where) + ": interval not covered by the trajectory");
  std::size_t inside = 0;
  for (double ti : t) inside += (ti >= t0 - tol && ti <= t1 + tol);
  require(inside >= 3, ErrorCode::kInsufficientData,
          std::string(where) + ": sparse cadence on [" + format_double(t0) + ", " +
              format_double(t1) + "]");

  std::vector<double> cache(t.size(), std::numeric_limits<double>::quiet_NaN());
  auto value = [&](std::size_t i) {
    if (std::isnan(cache[i])) cache[i] = g(i);
    return cache[i];
  };
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double a = std::max(t[i], t0), b = std::min(t[i + 1], t1);
    if (b <= a) continue;
    const double h = t[i + 1] - t[i];
    const double ga = value(i), gb = value(i + 1);
    auto lerp = [&](double s) { return ga + (gb - ga) * (s - t[i]) / h; };
    acc += 0.5 * (b - a) * (lerp(a) + lerp(b));
  }
  return acc;
}

double strichartz_exponent(int d) {
  return d == 2 ? std::numeric_limits<double>::infinity() : 2.0 * d / (d - 2.0);
}

double strichartz_of(const Trajectory& traj, double t0, double t1,
                     const std::function<RadialField(std::size_t)>& field, const char* where) {
  const double q = strichartz_exponent(traj.grid()->dimension());
  double sup = 0.0;
  const double l2 = time_integral(
      traj, t0, t1,
      [&](std::size_t i) {
        const RadialField u = field(i);
        sup = std::max(sup, lebesgue_norm(u, 2.0));
        return std::pow(lebesgue_norm(u, q), 2.0);
      },
      where);
  return std::max(sup, std::sqrt(l2));
}

double power_of(DyadicScale n) { return n.value(); }

// Ladder indices i with N_i >= M0.
std::size_t first_index(const ASequence& seq, DyadicScale m0) {
  for (std::size_t i = 0; i < seq.scales.size(); ++i)
    if (seq.scales[i] >= m0) return i;
  return seq.scales.size();
}

double weighted_sum(const std::vector<DyadicScale>& scales, const std::vector<double>& values,
                    std::size_t index, const RecurrenceParams& p, SumRange range) {
  const double n = power_of(scales[index]);
  const double m0 = power_of(p.m0);
  const double top = (range == SumRange::kRecurrence ? 2.0 : 1.0) * p.beta * n * (1.0 + kRelTol);
  double acc = 0.0;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    const double m = power_of(scales[k]);
    const bool above = range == SumRange::kRecurrence ? m > m0 : m >= m0;
    if (above && m <= top) acc += std::pow(m / n, p.s) * values[k];
  }
  return acc;
}

double source_term(const RecurrenceParams& p, double n) {
  return p.c1 * std::pow(power_of(p.m0), p.s) * std::pow(n, -p.s);
}

double conclusion_bound(const RecurrenceParams& p, double n) {
  return 2.0 * p.c1 * std::pow(power_of(p.m0), p.s) * std::pow(n, -p.s + p.gamma);
}

bool le(double a, double b) { return a <= b + kRelTol * std::max(std::abs(a), std::abs(b)); }

const char* provenance_name(Provenance p) {
  return p == Provenance::kExtracted ? "extracted" : "synthetic";
}

const char* range_name(SumRange r) {
  return r == SumRange::kRecurrence ? "M0 < M <= 2 beta' N" : "M0 <= M <= beta' N";
}

}  // namespace

double strichartz_norm(const Trajectory& traj, double t0, double t1) {
  return strichartz_of(traj, t0, t1, [&](std::size_t i) { return traj.state(i); },
                       "strichartz_norm");
}

double dual_nonlinearity_norm(const Trajectory& traj, DyadicScale n, double window_exponent) {
  require(!traj.empty(), ErrorCode::kInsufficientData, "dual_nonlinearity_norm: empty trajectory");
  require(std::isfinite(window_exponent) && window_exponent > 0.0, ErrorCode::kInvalidArgument,
          "dual_nonlinearity_norm: window exponent must be positive");
  require_scale(*traj.grid(), n, "dual_nonlinearity_norm");
  const int d = traj.grid()->dimension();
  const double q = 2.0 * (d + 2.0) / (d + 4.0);
  const double t0 = traj.times().front();
  const double t1 = t0 + std::pow(n.value(), -window_exponent);
  const int mu = traj.config().mu;
  const double integral = time_integral(
      traj, t0, t1,
      [&](std::size_t i) {
        if (mu == 0) return 0.0;
        const RadialField f = project_at_least(nonlinearity(traj.state(i)), n);
        return std::pow(lebesgue_norm(f, q), q);
      },
      "dual_nonlinearity_norm");
  return std::pow(integral, 1.0 / q);
}

void RecurrenceParams::validate() const {
  auto ok = [](double v) { return std::isfinite(v); };
  require(ok(s) && s > 1.0, ErrorCode::kInvalidArgument, "recurrence: need s > 1");
  require(ok(gamma) && gamma > 0.0, ErrorCode::kInvalidArgument, "recurrence: need gamma > 0");
  require(s - gamma > 1.0, ErrorCode::kInvalidArgument, "recurrence: need s - gamma > 1");
  require(ok(c1) && c1 > 0.0, ErrorCode::kInvalidArgument, "recurrence: need C1 > 0");
  require(m0.exponent() >= 0, ErrorCode::kInvalidArgument, "recurrence: need M0 >= 1");
  require(ok(beta) && beta > 0.0 && beta < 1.0, ErrorCode::kInvalidArgument,
          "recurrence: need 0 < beta' < 1");
  require(ok(a) && a > 0.0, ErrorCode::kInvalidArgument, "recurrence: need A > 0");
}

nlohmann::json RecurrenceParams::to_json() const {
  return {{"s", s}, {"gamma", gamma}, {"C1", c1}, {"M0", m0.value()}, {"beta_prime", beta},
          {"A", a}};
}

double dyadic_sum_constant(double s) {
  require(std::isfinite(s) && s > 1.0, ErrorCode::kInvalidArgument,
          "dyadic_sum_constant: need s > 1");
  return 1.0 / (1.0 - std::pow(2.0, 1.0 - s));
}

Admissibility admissibility(const RecurrenceParams& p) {
  p.validate();
  const double cs = dyadic_sum_constant(p.s);
  Admissibility out;
  const double power_cap = 1.0 / (100.0 * cs * p.a);
  const double gamma_cap = 1.0 / (100.0 * cs);
  out.threshold = std::min(std::pow(power_cap, 1.0 / (p.s - 1.0)), std::pow(gamma_cap, 1.0 / p.gamma));
  out.power_margin = power_cap - std::pow(p.beta, p.s - 1.0);
  out.gamma_margin = gamma_cap - std::pow(p.beta, p.gamma);
  if (out.power_margin <= 0.0) {
    out.violated = "beta'^(s-1) < 1/(100 C(s) A)";
  } else if (out.gamma_margin <= 0.0) {
    out.violated = "beta'^gamma < 1/(100 C(s))";
  }
  out.admissible = out.violated.empty();
  return out;
}

void ASequence::validate() const {
  require(!scales.empty(), ErrorCode::kInvalidArgument, "A sequence: empty");
  require(scales.size() == values.size(), ErrorCode::kInvalidArgument,
          "A sequence: scales and values differ in length");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    require(std::isfinite(values[i]) && values[i] >= 0.0, ErrorCode::kInvalidArgument,
            "A sequence: values must be finite and nonnegative");
    if (i > 0)
      require(scales[i] == scales[i - 1].twice(), ErrorCode::kInvalidArgument,
              "A sequence: scales must form a contiguous dyadic ladder");
  }
}

nlohmann::json ASequence::to_json() const {
  nlohmann::json n = nlohmann::json::array(), v = nlohmann::json::array();
  for (std::size_t i = 0; i < scales.size(); ++i) {
    n.push_back(scales[i].value());
    v.push_back(values[i]);
  }
  return {{"N", n}, {"A_N", v}, {"provenance", provenance_name(provenance)},
          {"trivial_bound", trivial_bound}};
}

ASequence extract_A_sequence(const Trajectory& traj, const std::vector<DyadicScale>& scales,
                             double window_exponent) {
  require(!traj.empty(), ErrorCode::kInsufficientData, "extract_A_sequence: empty trajectory");
  require(!scales.empty(), ErrorCode::kInvalidArgument, "extract_A_sequence: no scales");
  require(std::isfinite(window_exponent) && window_exponent > 0.0, ErrorCode::kInvalidArgument,
          "extract_A_sequence: window exponent must be positive");
  const GridPtr& grid = traj.grid();
  for (DyadicScale n : scales) require_scale(*grid, n, "extract_A_sequence");

  // One forward transform per snapshot, shared by all scales.
  std::vector<std::vector<cplx>> spectra(traj.size());
  auto spectrum = [&](std::size_t i) -> const std::vector<cplx>& {
    if (spectra[i].empty()) {
      const SpectralField fh = transform_forward(traj.state(i));
      spectra[i].assign(fh.coeffs().begin(), fh.coeffs().end());
    }
    return spectra[i];
  };
  const auto rho = grid->frequencies();

  ASequence seq;
  seq.provenance = Provenance::kExtracted;
  const double t0 = traj.times().front();
  for (DyadicScale n : scales) {
    auto high = [&](std::size_t i) {
      std::vector<cplx> c = spectrum(i);
      for (std::size_t k = 0; k < c.size(); ++k) c[k] *= at_least_symbol(n, rho[k]);
      return transform_inverse(SpectralField(grid, std::move(c)));
    };
    seq.scales.push_back(n);
    seq.values.push_back(strichartz_of(traj, t0, t0 + std::pow(n.value(), -window_exponent), high,
                                       "extract_A_sequence"));
  }
  if (traj.times().back() >= t0 + 1.0 - kTimeTol)
    seq.trivial_bound = strichartz_norm(traj, t0, t0 + 1.0) + 1.0;
  seq.validate();
  return seq;
}

double recurrence_sum(const ASequence& seq, std::size_t index, const RecurrenceParams& p,
                      SumRange range) {
  require(index < seq.scales.size(), ErrorCode::kInvalidArgument, "recurrence_sum: bad index");
  return weighted_sum(seq.scales, seq.values, index, p, range);
}

std::string RecurrenceReport::to_csv() const {
  std::string out = "N,A_N,RHS,slack\n";
  for (const RecurrenceRow& r : rows)
    out += format_double(r.n) + "," + format_double(r.a_n) + "," + format_double(r.rhs) + "," +
           format_double(r.slack) + "\n";
  return out;
}

nlohmann::json RecurrenceReport::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const RecurrenceRow& r : rows)
    rs.push_back({{"N", r.n}, {"A_N", r.a_n}, {"RHS", r.rhs}, {"slack", r.slack}});
  return {{"params", params.to_json()}, {"sum_range", range_name(range)}, {"rows", rs},
          {"minimal_C1", minimal_c1}, {"holds", holds}};
}

RecurrenceReport check_recurrence(const ASequence& seq, const RecurrenceParams& p, SumRange range) {
  p.validate();
  seq.validate();
  require(seq.scales.front() <= p.m0, ErrorCode::kInvalidArgument,
          "check_recurrence: sequence must start at or below M0");
  RecurrenceReport rep;
  rep.params = p;
  rep.range = range;
  rep.holds = true;
  const double m0s = std::pow(power_of(p.m0), p.s);
  for (std::size_t i = first_index(seq, p.m0); i < seq.scales.size(); ++i) {
    const double n = power_of(seq.scales[i]);
    const double sum = weighted_sum(seq.scales, seq.values, i, p, range);
    RecurrenceRow row;
    row.n = n;
    row.a_n = seq.values[i];
    row.rhs = source_term(p, n) + sum;
    row.slack = row.rhs - row.a_n;
    rep.holds = rep.holds && le(row.a_n, row.rhs);
    rep.minimal_c1 = std::max(rep.minimal_c1, (row.a_n - sum) / (m0s * std::pow(n, -p.s)));
    rep.rows.push_back(row);
  }
  require(!rep.rows.empty(), ErrorCode::kInsufficientData,
          "check_recurrence: no scale N >= M0 in the sequence");
  return rep;
}

const char* lemma_status_name(LemmaStatus s) {
  switch (s) {
    case LemmaStatus::kPass: return "pass";
    case LemmaStatus::kFail: return "fail";
    case LemmaStatus::kInapplicable: return "inapplicable";
  }
  return "?";
}

std::string ControlReport::to_csv() const {
  std::string out = "N,A_N,bound,oracle_bound,ok\n";
  for (const ControlRow& r : rows)
    out += format_double(r.n) + "," + format_double(r.a_n) + "," + format_double(r.bound) + "," +
           format_double(r.oracle_bound) + "," + (r.ok ? "1" : "0") + "\n";
  return out;
}

nlohmann::json ControlReport::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const ControlRow& r : rows)
    rs.push_back({{"N", r.n}, {"A_N", r.a_n}, {"bound", r.bound},
                  {"oracle_bound", r.oracle_bound}, {"ok", r.ok}});
  return {{"params", params.to_json()},
          {"status", lemma_status_name(status)},
          {"lemma_applicable", status != LemmaStatus::kInapplicable},
          {"reason", reason},
          {"hypotheses_hold", hypotheses_hold},
          {"admissibility",
           {{"threshold", admissibility.threshold},
            {"power_margin", admissibility.power_margin},
            {"gamma_margin", admissibility.gamma_margin},
            {"admissible", admissibility.admissible},
            {"violated", admissibility.violated}}},
          {"iterations", iterations},
          {"oracle_confirms", oracle_confirms},
          {"rows", rs}};
}

ControlReport verify_recursive_control(const ASequence& seq, const RecurrenceParams& p) {
  p.validate();
  seq.validate();
  require(seq.scales.front() <= p.m0 && p.m0 <= seq.scales.back(), ErrorCode::kInvalidArgument,
          "verify_recursive_control: M0 outside the sequence's ladder");
  ControlReport rep;
  rep.params = p;
  rep.admissibility = admissibility(p);

  const std::size_t i0 = first_index(seq, p.m0);
  const std::size_t len = seq.scales.size();

  // Hypotheses on the given data.
  rep.hypotheses_hold = true;
  for (std::size_t i = i0; i < len && rep.hypotheses_hold; ++i) {
    const double n = power_of(seq.scales[i]);
    if (!le(seq.values[i], p.a)) {
      rep.hypotheses_hold = false;
      rep.reason = "trivial bound A_N <= A fails at N = " + format_double(n);
    } else if (!le(seq.values[i],
                   source_term(p, n) + weighted_sum(seq.scales, seq.values, i, p, SumRange::kLemma))) {
      rep.hypotheses_hold = false;
      rep.reason = "hypothesis A_N <= C1 M0^s N^-s + sum_{M0 <= M <= beta' N} (M/N)^s A_M fails at N = " + format_double(n);
    }
  }

  // Induction oracle: B_0 = A, B_{j+1} = C1 M0^s N^{-s} + sum_{M0 <= M <= beta' N} (M/N)^s B_j(M).
  // Each sum only reaches M < N, so the iteration is exact after len steps.
  std::vector<double> limit(len, 0.0), b(len, p.a), next(len, 0.0);
  double min_limit = std::numeric_limits<double>::infinity();
  for (std::size_t i = i0; i < len; ++i) {
    limit[i] = conclusion_bound(p, power_of(seq.scales[i]));
    min_limit = std::min(min_limit, limit[i]);
  }
  int j_max = 1;
  while (std::pow(p.beta, j_max) >= 1e-12 * min_limit && j_max < 100000) ++j_max;
  j_max = std::max(j_max, static_cast<int>(len) + 1);
  bool induction_ok = true;
  for (int j = 1; j <= j_max; ++j) {
    for (std::size_t i = 0; i < len; ++i)
      next[i] = i < i0 ? 0.0
                       : source_term(p, power_of(seq.scales[i])) +
                             weighted_sum(seq.scales, b, i, p, SumRange::kLemma);
    b.swap(next);
    if (rep.admissibility.admissible) {
      const double tail = std::pow(p.beta, j);
      for (std::size_t i = i0; i < len; ++i) induction_ok = induction_ok && le(b[i], limit[i] + tail);
    }
  }
  rep.iterations = j_max;

  rep.oracle_confirms = true;
  bool conclusion = true;
  for (std::size_t i = i0; i < len; ++i) {
    ControlRow row;
    row.n = power_of(seq.scales[i]);
    row.a_n = seq.values[i];
    row.bound = limit[i];
    row.oracle_bound = b[i];
    row.ok = le(row.a_n, row.bound);
    conclusion = conclusion && row.ok;
    rep.oracle_confirms = rep.oracle_confirms && le(b[i], limit[i]);
    rep.rows.push_back(row);
  }

  if (!rep.hypotheses_hold || !rep.admissibility.admissible) {
    rep.status = LemmaStatus::kInapplicable;
    if (!rep.admissibility.admissible) {
      const std::string adm = "beta' = " + format_double(p.beta) + " violates " +
                              rep.admissibility.violated + " (threshold c = " +
                              format_double(rep.admissibility.threshold) + ")";
      rep.reason = rep.reason.empty() ? adm : adm + "; " + rep.reason;
    }
  } else if (!induction_ok) {
    rep.status = LemmaStatus::kFail;
    rep.reason = "induction bound 2 C1 M0^s N^{-s+gamma} + beta'^j violated";
  } else {
    rep.status = conclusion ? LemmaStatus::kPass : LemmaStatus::kFail;
    rep.reason = conclusion ? "A_N <= 2 C1 M0^s N^{-s+gamma} for all N >= M0"
                            : "conclusion violated";
  }
  return rep;
}

std::string InductionTable::to_csv() const {
  std::string out = "j,N,bound\n";
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < scales.size(); ++i)
      out += std::to_string(j + 1) + "," + format_double(scales[i]) + "," +
             format_double(rows[j][i]) + "\n";
  return out;
}

nlohmann::json InductionTable::to_json() const {
  return {{"N", scales}, {"base_case", base_case}, {"limit", limit}, {"rows", rows}};
}

InductionTable iterate_induction(const RecurrenceParams& p, DyadicScale n_max) {
  const Admissibility adm = admissibility(p);
  require(adm.admissible, ErrorCode::kInvalidArgument,
          "iterate_induction: beta' violates " + adm.violated);
  require(n_max >= p.m0, ErrorCode::kInvalidArgument, "iterate_induction: need N_max >= M0");
  InductionTable tab;
  const double cs = dyadic_sum_constant(p.s);
  for (DyadicScale n = p.m0; n <= n_max; n = n.twice()) {
    const double v = power_of(n);
    tab.scales.push_back(v);
    tab.limit.push_back(conclusion_bound(p, v));
    tab.base_case.push_back(source_term(p, v) + cs * p.a * std::pow(p.beta, p.s));
  }
  const double min_limit = *std::min_element(tab.limit.begin(), tab.limit.end());
  for (int j = 1;; ++j) {
    const double tail = std::pow(p.beta, j);
    std::vector<double> row(tab.limit);
    for (double& x : row) x += tail;
    tab.rows.push_back(std::move(row));
    if (tail < 1e-12 * min_limit) break;
  }
  return tab;
}

ASequence saturating_sequence(const RecurrenceParams& p, DyadicScale n_max,
                              const std::vector<double>& theta) {
  p.validate();
  require(n_max >= p.m0, ErrorCode::kInvalidArgument, "saturating_sequence: need N_max >= M0");
  ASequence seq;
  for (DyadicScale n = p.m0; n <= n_max; n = n.twice()) seq.scales.push_back(n);
  require(theta.empty() || theta.size() == seq.scales.size(), ErrorCode::kInvalidArgument,
          "saturating_sequence: theta has the wrong length");
  seq.values.assign(seq.scales.size(), 0.0);
  for (std::size_t i = 0; i < seq.scales.size(); ++i) {
    const double th = theta.empty() ? 1.0 : theta[i];
    require(th >= 0.0 && th <= 1.0, ErrorCode::kInvalidArgument,
            "saturating_sequence: theta must lie in [0, 1]");
    const double rhs = source_term(p, power_of(seq.scales[i])) +
                       weighted_sum(seq.scales, seq.values, i, p, SumRange::kLemma);
    seq.values[i] = std::min(p.a, th * rhs);
  }
  return seq;
}

}  // namespace nlsrad
