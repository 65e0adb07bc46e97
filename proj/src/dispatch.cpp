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

#include "dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diagnostics.hpp"
#include "io.hpp"

namespace nlsrad {

namespace {

using json = nlohmann::json;

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  try {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
  } catch (const json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("parameter '") + key + "': " + e.what());
  }
}

double radius_param(const json& j, const char* key) {
  if (!j.contains(key)) return std::numeric_limits<double>::infinity();
  const json& v = j.at(key);
  if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  return get_or<double>(j, key, 0.0);
}

std::vector<DyadicScale> scales_param(const json& j, const char* key,
                                      std::vector<DyadicScale> fallback) {
  if (!j.contains(key)) return fallback;
  std::vector<DyadicScale> out;
  for (double n : get_or<std::vector<double>>(j, key, {})) out.push_back(DyadicScale::from_value(n));
  return out;
}

std::vector<DyadicScale> ladder(DyadicScale lo, DyadicScale hi) {
  std::vector<DyadicScale> out;
  for (DyadicScale n = lo; n <= hi; n = n.twice()) out.push_back(n);
  return out;
}

DispatchResult conservation(const Trajectory& traj, const json& p) {
  const double mass_tol = get_or(p, "mass_tol", 1e-8);
  const double energy_tol = get_or(p, "energy_tol", 1e-5);
  const double md = traj.relative_mass_drift();
  const double ed = traj.relative_energy_drift();
  DispatchResult r;
  r.json = {{"mass_drift", md},         {"energy_drift", ed}, {"mass_tol", mass_tol},
            {"energy_tol", energy_tol}, {"passed", md < mass_tol && ed < energy_tol}};
  std::string csv = "t,mass,energy,gradient_norm,tail_fraction\n";
  for (const ConservationSample& s : traj.log())
    csv += format_double(s.time) + "," + format_double(s.mass) + "," + format_double(s.energy) +
           "," + format_double(s.gradient_norm) + "," + format_double(s.tail_fraction) + "\n";
  r.csv = csv;
  return r;
}

DispatchResult virial(const Trajectory& traj, const json& p) {
  const double radius = radius_param(p, "radius");
  const double tol = get_or(p, "tolerance", 0.05);
  DispatchResult r;
  // V_R <= (25R/24)^2 M on every snapshot
  bool bounded = true;
  std::string csv = "t,V_R,bound\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double v = truncated_virial(traj.state(i), radius);
    const double bound = std::isinf(radius) ? std::numeric_limits<double>::infinity()
                                            : std::pow(25.0 * radius / 24.0, 2) * mass(traj.state(i));
    bounded = bounded && v <= bound * (1.0 + 1e-12);
    csv += format_double(traj.times()[i]) + "," + format_double(v) + "," + format_double(bound) + "\n";
  }
  r.csv = csv;
  r.json = {{"radius", std::isinf(radius) ? json("inf") : json(radius)}, {"bound_holds", bounded}};
  bool passed = bounded;
  if (traj.size() >= 5) {
    const std::size_t mid = traj.size() / 2;
    const double t = get_or(p, "time", traj.times()[mid]);
    const double accel = virial_acceleration(traj, radius, t);
    const int mu = traj.config().mu;
    const double identity = virial_identity(traj.state(traj.index_of(t)), mu);
    r.json["time"] = t;
    r.json["acceleration"] = accel;
    r.json["identity_16E"] = identity;
    if (std::isinf(radius)) {
      // 16 E vanishes at the ground state; 8 ||grad u||^2 sets the scale there.
      const double scale = std::max(std::abs(identity), 8.0 * kinetic_norm_sq(traj.state(traj.index_of(t))));
      const double rel = std::abs(accel - identity) / std::max(scale, 1e-300);
      r.json["relative_error"] = rel;
      r.json["tolerance"] = tol;
      passed = passed && rel <= tol;
    }
  }
  r.json["passed"] = passed;
  return r;
}

DispatchResult decay_report(const DecayFitReport& rep) {
  DispatchResult r;
  r.json = rep.to_json();
  r.csv = rep.to_csv();
  return r;
}

DispatchResult frequency_decay(const Trajectory& traj, const json& p) {
  const GridPtr& g = traj.grid();
  const double cut = get_or(p, "shell_cut", 1.0);
  const auto scales = scales_param(p, "scales", ladder(g->min_scale(), g->max_scale()));
  return decay_report(frequency_decay_fit(traj, cut, scales));
}

DispatchResult spatial_decay(const Trajectory& traj, const json& p) {
  const GridPtr& g = traj.grid();
  const DyadicScale n0 = DyadicScale::from_value(get_or(p, "n0", g->min_scale().value()));
  const DyadicScale n1 = DyadicScale::from_value(get_or(p, "n1", g->max_scale().value()));
  std::vector<double> radii = get_or<std::vector<double>>(p, "radii", {});
  if (radii.empty())
    for (double r = 1.0; r <= g->r_max() / 2.0; r *= 2.0) radii.push_back(r);
  return decay_report(spatial_decay_scan(traj, n0, n1, radii));
}

std::size_t node_index(const RadialGrid& g, double r) {
  const auto x = g.nodes();
  return static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), r) - x.begin());
}

DispatchResult kinetic_localization(const Trajectory& traj, const json& p) {
  const double eta = p.contains("eta") ? get_or(p, "eta", 0.0)
                                       : get_or(p, "eta_fraction", 1e-2) * kinetic_norm_sq(traj.state(0));
  const auto cells = get_or<long>(p, "cells", 1);
  DispatchResult r;
  std::string csv = "t,radius,node\n";
  long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
  long first = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double c = kinetic_localization_radius(traj.state(i), eta);
    const long idx = static_cast<long>(node_index(*traj.grid(), c));
    if (i == 0) first = idx;
    lo = std::min(lo, idx);
    hi = std::max(hi, idx);
    csv += format_double(traj.times()[i]) + "," + format_double(c) + "," + std::to_string(idx) + "\n";
  }
  const long spread = std::max(first - lo, hi - first);
  r.csv = csv;
  r.json = {{"eta", eta},
            {"snapshots", traj.size()},
            {"max_cell_deviation", spread},
            {"allowed_cells", cells},
            {"passed", spread <= cells}};
  return r;
}

DispatchResult concentration(const Trajectory& traj, const json& p) {
  const double eta = p.contains("eta") ? get_or(p, "eta", 0.0)
                                       : get_or(p, "eta_fraction", 1e-2) * mass(traj.state(0));
  DispatchResult r;
  json rows = json::array();
  std::string csv = "t,spatial_radius,frequency_radius\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const ConcentrationReport c = concentration_radii(traj.state(i), eta, traj.times()[i]);
    rows.push_back(c.to_json());
    csv += format_double(c.time) + "," + format_double(c.spatial_radius) + "," +
           format_double(c.frequency_radius) + "\n";
  }
  r.csv = csv;
  r.json = {{"eta", eta}, {"snapshots", rows}, {"passed", true}};
  return r;
}

DispatchResult duhamel(const Trajectory& traj, const json& p) {
  const auto t = traj.times();
  const double t0 = get_or(p, "t0", t.front());
  const double t1 = get_or(p, "t1", t.back());
  const double res = duhamel_residual(traj, t0, t1);
  const double scale = lebesgue_norm(traj.state(traj.index_of(t1)), 2.0);
  DispatchResult r;
  r.json = {{"t0", t0}, {"t1", t1}, {"residual", res},
            {"relative_residual", scale > 0.0 ? res / scale : 0.0}, {"passed", std::isfinite(res)}};
  if (p.contains("tolerance")) r.json["passed"] = res < get_or(p, "tolerance", 0.0);
  return r;
}

DispatchResult strichartz(const Trajectory& traj, const json& p) {
  const auto t = traj.times();
  const double t0 = get_or(p, "t0", t.front());
  const double t1 = get_or(p, "t1", t.back());
  DispatchResult r;
  r.json = {{"t0", t0}, {"t1", t1}, {"norm", strichartz_norm(traj, t0, t1)}, {"passed", true}};
  return r;
}

DispatchResult a_sequence(const Trajectory& traj, const json& p) {
  const GridPtr& g = traj.grid();
  const auto scales = scales_param(p, "scales", ladder(g->min_scale(), g->max_scale()));
  const ASequence seq = extract_A_sequence(traj, scales, get_or(p, "window_exponent", 0.5));
  DispatchResult r;
  r.json = {{"sequence", seq.to_json()}, {"passed", true}};
  std::string csv = "N,A_N\n";
  for (std::size_t i = 0; i < seq.scales.size(); ++i)
    csv += format_double(seq.scales[i].value()) + "," + format_double(seq.values[i]) + "\n";
  r.csv = csv;
  if (p.contains("params")) {
    const RecurrenceReport rec = check_recurrence(seq, recurrence_params_from_json(p.at("params")));
    r.json["recurrence"] = rec.to_json();
    r.csv = rec.to_csv();
  }
  return r;
}

ASequence sequence_from_json(const json& j, const RecurrenceParams& p) {
  const std::string kind = get_or<std::string>(j, "kind", "saturating");
  const DyadicScale n_max = DyadicScale::from_value(get_or(j, "n_max", 1048576.0));
  if (kind == "saturating") return saturating_sequence(p, n_max, get_or<std::vector<double>>(j, "theta", {}));
  if (kind == "power" || kind == "constant") {
    ASequence seq;
    const double e = get_or(j, "exponent", p.s);
    const double c = get_or(j, "value", p.a);
    for (DyadicScale n = DyadicScale::from_exponent(0); n <= n_max; n = n.twice()) {
      seq.scales.push_back(n);
      seq.values.push_back(kind == "power" ? std::pow(n.value(), -e) : c);
    }
    return seq;
  }
  if (kind == "values") {
    ASequence seq;
    for (double n : get_or<std::vector<double>>(j, "N", {})) seq.scales.push_back(DyadicScale::from_value(n));
    seq.values = get_or<std::vector<double>>(j, "A_N", {});
    seq.validate();
    return seq;
  }
  if (kind == "trajectory") {
    const Trajectory traj = read_trajectory(get_or<std::string>(j, "path", ""));
    const GridPtr& g = traj.grid();
    const auto scales = scales_param(j, "scales", ladder(g->min_scale(), g->max_scale()));
    return extract_A_sequence(traj, scales, get_or(j, "window_exponent", 0.5));
  }
  fail(ErrorCode::kInvalidArgument, "unknown sequence kind '" + kind + "'");
}

}  // namespace

RecurrenceParams recurrence_params_from_json(const json& j) {
  RecurrenceParams p;
  p.s = get_or(j, "s", p.s);
  p.gamma = get_or(j, "gamma", p.gamma);
  p.c1 = get_or(j, "C1", p.c1);
  p.m0 = DyadicScale::from_value(get_or(j, "M0", p.m0.value()));
  p.a = get_or(j, "A", p.a);
  p.beta = get_or(j, "beta_prime", p.beta);
  if (j.contains("beta_fraction")) {
    RecurrenceParams probe = p;
    probe.beta = 0.5;
    p.beta = get_or(j, "beta_fraction", 0.5) * admissibility(probe).threshold;
  }
  p.validate();
  return p;
}

bool conclusion_holds(const ASequence& seq, const RecurrenceParams& p) {
  for (std::size_t i = 0; i < seq.scales.size(); ++i) {
    const double n = seq.scales[i].value();
    if (n < p.m0.value()) continue;
    const double bound = 2.0 * p.c1 * std::pow(p.m0.value(), p.s) * std::pow(n, p.gamma - p.s);
    if (seq.values[i] > bound * (1.0 + 1e-12)) return false;
  }
  return true;
}

LemmaInstance random_lemma_instance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  LemmaInstance inst;
  RecurrenceParams& p = inst.params;
  p.s = 1.05 + 2.0 * uni(rng);
  p.gamma = (0.05 + 0.9 * uni(rng)) * (p.s - 1.0);
  p.a = std::exp(std::log(100.0) * uni(rng));
  p.c1 = 0.1 + 10.0 * uni(rng);
  p.m0 = DyadicScale::from_exponent(static_cast<int>(3.0 * uni(rng)));
  p.beta = 0.5;
  p.beta = (0.01 + 0.98 * uni(rng)) * admissibility(p).threshold;
  // long enough for the lemma sums to be nonempty over 20 octaves
  const int top = p.m0.exponent() + 20 + static_cast<int>(std::ceil(-std::log2(p.beta)));
  std::vector<double> theta(static_cast<std::size_t>(top - p.m0.exponent() + 1));
  for (double& t : theta) t = uni(rng) < 0.3 ? 1.0 : uni(rng);
  inst.sequence = saturating_sequence(p, DyadicScale::from_exponent(top), theta);
  return inst;
}

DispatchResult run_diagnostic(const Trajectory& traj, const std::string& name, const json& params) {
  require(!traj.empty(), ErrorCode::kInsufficientData, "diagnose: empty trajectory");
  DispatchResult r;
  if (name == "conservation") r = conservation(traj, params);
  else if (name == "virial") r = virial(traj, params);
  else if (name == "frequency_decay") r = frequency_decay(traj, params);
  else if (name == "spatial_decay") r = spatial_decay(traj, params);
  else if (name == "kinetic_localization") r = kinetic_localization(traj, params);
  else if (name == "concentration") r = concentration(traj, params);
  else if (name == "duhamel") r = duhamel(traj, params);
  else if (name == "strichartz") r = strichartz(traj, params);
  else if (name == "a_sequence") r = a_sequence(traj, params);
  else fail(ErrorCode::kInvalidArgument, "unknown diagnostic '" + name + "'");
  r.json["diagnostic"] = name;
  return r;
}

DispatchResult run_lemma(const json& request) {
  const std::string mode = get_or<std::string>(request, "mode", "verify");
  DispatchResult r;
  if (mode == "suite") {
    const auto draws = get_or<int>(request, "draws", 100);
    const auto seed = get_or<std::uint64_t>(request, "seed", 20260101);
    require(draws > 0, ErrorCode::kInvalidArgument, "lemma suite: draws must be positive");
    std::mt19937_64 rng(seed);
    int agree = 0, pass = 0;
    std::string csv = "draw,s,gamma,C1,M0,beta_prime,A,status,brute_force\n";
    for (int k = 0; k < draws; ++k) {
      const LemmaInstance inst = random_lemma_instance(rng);
      const ControlReport rep = verify_recursive_control(inst.sequence, inst.params);
      const bool bf = conclusion_holds(inst.sequence, inst.params);
      const bool same = rep.status == (bf ? LemmaStatus::kPass : LemmaStatus::kFail);
      agree += same;
      pass += rep.status == LemmaStatus::kPass;
      const RecurrenceParams& p = inst.params;
      csv += std::to_string(k) + "," + format_double(p.s) + "," + format_double(p.gamma) + "," +
             format_double(p.c1) + "," + format_double(p.m0.value()) + "," + format_double(p.beta) +
             "," + format_double(p.a) + "," + lemma_status_name(rep.status) + "," +
             (bf ? "holds" : "violated") + "\n";
    }
    r.csv = csv;
    r.json = {{"mode", mode}, {"draws", draws}, {"seed", seed}, {"agreements", agree},
              {"passes", pass}, {"passed", agree == draws}};
    return r;
  }

  const RecurrenceParams p = recurrence_params_from_json(get_or(request, "params", json::object()));
  if (mode == "induction") {
    const DyadicScale n_max = DyadicScale::from_value(get_or(request, "n_max", 1024.0));
    const InductionTable tab = iterate_induction(p, n_max);
    r.json = tab.to_json();
    r.json["params"] = p.to_json();
    r.json["passed"] = true;
    r.csv = tab.to_csv();
  } else if (mode == "check") {
    const ASequence seq = sequence_from_json(get_or(request, "sequence", json::object()), p);
    const std::string range = get_or<std::string>(request, "range", "recurrence");
    require(range == "recurrence" || range == "lemma", ErrorCode::kInvalidArgument,
            "lemma check: range must be 'recurrence' or 'lemma'");
    const RecurrenceReport rep =
        check_recurrence(seq, p, range == "lemma" ? SumRange::kLemma : SumRange::kRecurrence);
    r.json = rep.to_json();
    r.json["sequence"] = seq.to_json();
    r.json["passed"] = rep.holds;
    r.csv = rep.to_csv();
  } else if (mode == "verify") {
    const ASequence seq = sequence_from_json(get_or(request, "sequence", json::object()), p);
    const ControlReport rep = verify_recursive_control(seq, p);
    r.json = rep.to_json();
    r.json["sequence"] = seq.to_json();
    r.json["brute_force_conclusion"] = conclusion_holds(seq, p);
    r.json["passed"] = rep.status != LemmaStatus::kFail;
    r.csv = rep.to_csv();
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown lemma mode '" + mode + "'");
  }
  r.json["mode"] = mode;
  return r;
}

}  // namespace nlsrad
