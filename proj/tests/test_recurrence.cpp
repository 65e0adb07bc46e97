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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "groundstate.hpp"
#include "recurrence.hpp"

using namespace nlsrad;

namespace {

RecurrenceParams params(double s, double gamma, double c1, int m0_exp, double beta, double a) {
  RecurrenceParams p;
  p.s = s;
  p.gamma = gamma;
  p.c1 = c1;
  p.m0 = DyadicScale::from_exponent(m0_exp);
  p.beta = beta;
  p.a = a;
  return p;
}

// Ladder 2^lo .. 2^hi with values f(N).
template <class F>
ASequence ladder(int lo, int hi, F f) {
  ASequence seq;
  for (int e = lo; e <= hi; ++e) {
    seq.scales.push_back(DyadicScale::from_exponent(e));
    seq.values.push_back(f(std::ldexp(1.0, e)));
  }
  return seq;
}

// Direct check of A_N <= 2 C1 M0^s N^{-s+gamma} for N >= M0.
bool brute_force_conclusion(const ASequence& seq, const RecurrenceParams& p) {
  const double m0 = p.m0.value();
  for (std::size_t i = 0; i < seq.scales.size(); ++i) {
    const double n = seq.scales[i].value();
    if (n < m0) continue;
    const double bound = 2.0 * p.c1 * std::pow(m0, p.s) * std::pow(n, p.gamma - p.s);
    if (seq.values[i] > bound * (1.0 + 1e-12)) return false;
  }
  return true;
}

// Hypotheses checked by exponent arithmetic: M = 2^m enters the lemma sum when
// m0 <= m <= n + log2(beta').
bool brute_force_hypotheses(const ASequence& seq, const RecurrenceParams& p) {
  const int m0 = p.m0.exponent();
  const double lb = std::log2(p.beta);
  for (std::size_t i = 0; i < seq.scales.size(); ++i) {
    const int n = seq.scales[i].exponent();
    if (n < m0) continue;
    if (seq.values[i] > p.a * (1.0 + 1e-12)) return false;
    double rhs = p.c1 * std::pow(2.0, p.s * (m0 - n));
    for (std::size_t k = 0; k < seq.scales.size(); ++k) {
      const int m = seq.scales[k].exponent();
      if (m >= m0 && m <= n + lb + 1e-9) rhs += std::pow(2.0, p.s * (m - n)) * seq.values[k];
    }
    if (seq.values[i] > rhs * (1.0 + 1e-12)) return false;
  }
  return true;
}

const GroundState& q4() {
  static const GroundState q = solve_ground_state(make_radial_grid(4, 20.0, 512), 1e-9);
  return q;
}

Trajectory sw_run(const GroundState& q, double duration, std::size_t cadence) {
  SimulationConfig c;
  c.dt = 1e-3;
  c.duration = duration;
  c.cadence = cadence;
  return evolve(c, make_sw(q, 0.0));
}

std::vector<DyadicScale> scales(int lo, int hi) {
  std::vector<DyadicScale> s;
  for (int e = lo; e <= hi; ++e) s.push_back(DyadicScale::from_exponent(e));
  return s;
}

}  // namespace

TEST_CASE("dyadic sum constant and admissibility threshold") {
  for (double s : {1.1, 1.25, 2.0, 3.5}) {
    double sum = 0.0;
    for (int k = 0; k < 4000; ++k) sum += std::pow(2.0, -k * (s - 1.0));
    CHECK(dyadic_sum_constant(s) == doctest::Approx(sum).epsilon(1e-10));
  }
  CHECK_THROWS(dyadic_sum_constant(1.0));

  const double cs = 1.0 / (1.0 - std::pow(2.0, -0.25));
  const double c = std::min(std::pow(1.0 / (100.0 * cs * 10.0), 4.0), std::pow(1.0 / (100.0 * cs), 5.0));
  RecurrenceParams p = params(1.25, 0.2, 1.0, 0, 1e-3, 10.0);
  Admissibility adm = admissibility(p);
  CHECK(adm.threshold == doctest::Approx(c).epsilon(1e-12));
  CHECK_FALSE(adm.admissible);
  CHECK(adm.violated.find("s-1") != std::string::npos);

  p.beta = 0.99 * c;
  CHECK(admissibility(p).admissible);
  p.beta = 1.01 * c;
  CHECK_FALSE(admissibility(p).admissible);

  // gamma constraint binds when A is small
  p = params(3.0, 0.5, 1.0, 0, 0.0, 1e-6);
  const double cg = std::pow(1.0 / (100.0 * 4.0 / 3.0), 2.0);
  p.beta = 1.01 * cg;
  adm = admissibility(p);
  CHECK_FALSE(adm.admissible);
  CHECK(adm.violated.find("gamma") != std::string::npos);
  CHECK(adm.gamma_margin < 0.0);
  CHECK(adm.power_margin > 0.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS(params(1.0, 0.2, 1, 0, 1e-3, 1).validate());
  CHECK_THROWS(params(1.25, 0.3, 1, 0, 1e-3, 1).validate());
  CHECK_THROWS(params(1.25, 0.2, 0, 0, 1e-3, 1).validate());
  CHECK_THROWS(params(1.25, 0.2, 1, -1, 1e-3, 1).validate());
  CHECK_THROWS(params(1.25, 0.2, 1, 0, 1.0, 1).validate());
  CHECK_THROWS(params(1.25, 0.2, 1, 0, 1e-3, 0).validate());
  CHECK_NOTHROW(params(1.25, 0.2, 1, 0, 1e-3, 1).validate());

  ASequence gap;
  gap.scales = {DyadicScale::from_exponent(0), DyadicScale::from_exponent(2)};
  gap.values = {1.0, 0.5};
  CHECK_THROWS(gap.validate());
  ASequence neg = ladder(0, 3, [](double) { return -1.0; });
  CHECK_THROWS(neg.validate());
}

TEST_CASE("termwise power sequences pass") {
  // A_N = N^{-s}: the hypothesis holds with C1 = 1 termwise, and A = 1 bounds it.
  RecurrenceParams p = params(1.25, 0.2, 1.0, 0, 0.0, 1.0);
  p.beta = 0.5 * admissibility(params(1.25, 0.2, 1.0, 0, 0.5, 1.0)).threshold;
  const ASequence seq = ladder(0, 40, [](double n) { return std::pow(n, -1.25); });
  const ControlReport rep = verify_recursive_control(seq, p);
  CHECK(rep.status == LemmaStatus::kPass);
  CHECK(rep.hypotheses_hold);
  CHECK(rep.oracle_confirms);
  CHECK(brute_force_conclusion(seq, p));
  for (const ControlRow& r : rep.rows) CHECK(r.ok);

  const RecurrenceReport rec = check_recurrence(seq, p);
  CHECK(rec.holds);
  CHECK(rec.minimal_c1 == doctest::Approx(1.0).epsilon(1e-12));

  const ASequence zero = ladder(0, 20, [](double) { return 0.0; });
  const ControlReport z = verify_recursive_control(zero, p);
  CHECK(z.status == LemmaStatus::kPass);
  CHECK(check_recurrence(zero, p).minimal_c1 == 0.0);
}

TEST_CASE("inadmissible beta' is reported as inapplicable") {
  const RecurrenceParams p = params(1.25, 0.2, 1.0, 0, 1e-3, 10.0);
  const ASequence seq = saturating_sequence(p, DyadicScale::from_exponent(30));
  CHECK(brute_force_hypotheses(seq, p));
  const ControlReport rep = verify_recursive_control(seq, p);
  CHECK(rep.status == LemmaStatus::kInapplicable);
  CHECK(rep.hypotheses_hold);
  CHECK(rep.reason.find("s-1") != std::string::npos);
  // On this finite ladder the induction still closes.
  CHECK(rep.oracle_confirms);
  CHECK(brute_force_conclusion(seq, p));
  CHECK(rep.to_json()["lemma_applicable"] == false);
  CHECK_THROWS_AS(iterate_induction(p, DyadicScale::from_exponent(10)), Error);
}

TEST_CASE("constant sequence with beta' too large names the constraint") {
  const RecurrenceParams p = params(1.25, 0.2, 1.0, 0, 0.25, 3.0);
  const ASequence seq = ladder(0, 16, [](double) { return 3.0; });
  const ControlReport rep = verify_recursive_control(seq, p);
  CHECK(rep.status == LemmaStatus::kInapplicable);
  CHECK_FALSE(rep.admissibility.admissible);
  CHECK(rep.admissibility.power_margin < 0.0);
  CHECK(rep.reason.find("beta'^(s-1) < 1/(100 C(s) A)") != std::string::npos);
}

TEST_CASE("planted counterexamples never pass") {
  RecurrenceParams p = params(2.0, 0.5, 1.0, 0, 0.0, 5.0);
  p.beta = 0.5 * admissibility(params(2.0, 0.5, 1.0, 0, 0.5, 5.0)).threshold;

  // breaks the conclusion at N = 2^6 and therefore the hypothesis
  ASequence bad = saturating_sequence(p, DyadicScale::from_exponent(20));
  bad.values[6] = 3.0 * std::pow(2.0, 6 * (p.gamma - p.s));
  CHECK_FALSE(brute_force_conclusion(bad, p));
  ControlReport rep = verify_recursive_control(bad, p);
  CHECK(rep.status == LemmaStatus::kInapplicable);
  CHECK(rep.reason.find("hypothesis A_N") != std::string::npos);

  // breaks the trivial bound only
  ASequence big = saturating_sequence(p, DyadicScale::from_exponent(20));
  RecurrenceParams tight = p;
  tight.a = 0.5 * big.values[0];
  tight.beta = 0.5 * admissibility(tight).threshold;
  rep = verify_recursive_control(big, tight);
  CHECK(rep.status == LemmaStatus::kInapplicable);
  CHECK(rep.reason.find("trivial") != std::string::npos);
}

TEST_CASE("randomized admissible instances agree with brute force") {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int passes = 0;
  for (int draw = 0; draw < 100; ++draw) {
    const double s = 1.05 + 2.0 * uni(rng);
    const double gamma = (0.05 + 0.9 * uni(rng)) * (s - 1.0);
    const double a = std::exp(std::log(100.0) * uni(rng));
    const double c1 = 0.1 + 10.0 * uni(rng);
    const int m0 = static_cast<int>(3 * uni(rng));
    RecurrenceParams p = params(s, gamma, c1, m0, 0.5, a);
    p.beta = (0.01 + 0.98 * uni(rng)) * admissibility(p).threshold;
    const int top = m0 + 20 + static_cast<int>(std::ceil(-std::log2(p.beta)));
    std::vector<double> theta(top - m0 + 1);
    for (double& t : theta) t = uni(rng) < 0.3 ? 1.0 : uni(rng);
    const ASequence seq = saturating_sequence(p, DyadicScale::from_exponent(top), theta);

    REQUIRE(brute_force_hypotheses(seq, p));
    const ControlReport rep = verify_recursive_control(seq, p);
    const bool expected = brute_force_conclusion(seq, p);
    CHECK(rep.status == (expected ? LemmaStatus::kPass : LemmaStatus::kFail));
    passes += rep.status == LemmaStatus::kPass;
  }
  CHECK(passes == 100);
}

TEST_CASE("induction oracle matches an independent recursion") {
  RecurrenceParams p = params(3.0, 1.5, 2.0, 1, 0.5, 3.0);
  p.beta = 0.9 * admissibility(p).threshold;
  const ASequence seq = saturating_sequence(p, DyadicScale::from_exponent(30));
  const ControlReport rep = verify_recursive_control(seq, p);
  REQUIRE(rep.status == LemmaStatus::kPass);

  // B(N) = C1 M0^s N^{-s} + sum_{M0 <= M <= beta' N} (M/N)^s B(M), solved upward.
  std::vector<double> b;
  const double lb = std::log2(p.beta);
  for (int n = 1; n <= 30; ++n) {
    double v = p.c1 * std::pow(2.0, p.s * (1 - n));
    for (int m = 1; m < n; ++m)
      if (m <= n + lb + 1e-9) v += std::pow(2.0, p.s * (m - n)) * b[m - 1];
    b.push_back(v);
  }
  REQUIRE(rep.rows.size() == b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(rep.rows[i].oracle_bound == doctest::Approx(b[i]).epsilon(1e-12));
    CHECK(rep.rows[i].a_n <= rep.rows[i].oracle_bound * (1.0 + 1e-12));
  }
}

TEST_CASE("induction table") {
  RecurrenceParams p = params(2.0, 0.5, 1.0, 0, 0.5, 2.0);
  p.beta = 0.5 * admissibility(p).threshold;
  const InductionTable tab = iterate_induction(p, DyadicScale::from_exponent(12));
  REQUIRE(tab.scales.size() == 13);
  REQUIRE(tab.rows.size() >= 2);
  const double cs = dyadic_sum_constant(p.s);
  for (std::size_t i = 0; i < tab.scales.size(); ++i) {
    const double n = tab.scales[i];
    const double limit = 2.0 * std::pow(n, p.gamma - p.s);
    CHECK(tab.limit[i] == doctest::Approx(limit).epsilon(1e-14));
    // first row: the base case bound from the trivial bound plugged into the hypothesis
    CHECK(tab.rows[0][i] == doctest::Approx(limit + p.beta).epsilon(1e-14));
    const double plugged = std::pow(n, -p.s) + cs * p.a * std::pow(p.beta, p.s);
    CHECK(tab.base_case[i] == doctest::Approx(plugged).epsilon(1e-14));
    CHECK(plugged <= tab.rows[0][i]);
    for (std::size_t j = 1; j < tab.rows.size(); ++j) CHECK(tab.rows[j][i] < tab.rows[j - 1][i]);
  }
  const double tail = std::pow(p.beta, static_cast<double>(tab.rows.size()));
  CHECK(tail < 1e-12 * tab.limit.back());
  CHECK(tab.to_csv().rfind("j,N,bound\n", 0) == 0);
  CHECK_THROWS(iterate_induction(p, DyadicScale::from_exponent(-1)));
}

TEST_CASE("check_recurrence sums and boundary") {
  // beta' = 1/8: 2 beta' N = N/4 is itself on the ladder and must be included.
  const RecurrenceParams p = params(1.5, 0.25, 1.0, 1, 0.125, 10.0);
  const ASequence seq = ladder(0, 12, [](double n) { return 1.0 / (1.0 + n); });
  const RecurrenceReport rep = check_recurrence(seq, p);
  REQUIRE(rep.rows.size() == 12);
  for (const RecurrenceRow& r : rep.rows) {
    const int n = static_cast<int>(std::lround(std::log2(r.n)));
    double sum = 0.0;
    for (int m = 2; m <= n - 2; ++m) sum += std::pow(2.0, p.s * (m - n)) / (1.0 + std::ldexp(1.0, m));
    CHECK(r.rhs == doctest::Approx(std::pow(2.0, p.s * (1 - n)) + sum).epsilon(1e-13));
    CHECK(r.slack == doctest::Approx(r.rhs - r.a_n).epsilon(1e-13));
  }
  for (double scale : {1.0 - 1e-14, 1.0 + 1e-14}) {
    RecurrenceParams q = p;
    q.beta *= scale;
    const RecurrenceReport nudged = check_recurrence(seq, q);
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
      CHECK(nudged.rows[i].rhs == doctest::Approx(rep.rows[i].rhs).epsilon(1e-12));
  }

  RecurrenceParams exact = p;
  exact.c1 = rep.minimal_c1;
  CHECK(check_recurrence(seq, exact).holds);
  exact.c1 = 0.99 * rep.minimal_c1;
  CHECK_FALSE(check_recurrence(seq, exact).holds);

  // lemma range differs: M0 included, top at beta' N
  const double lemma = recurrence_sum(seq, 6, p, SumRange::kLemma);
  double want = 0.0;
  for (int m = 1; m <= 3; ++m) want += std::pow(2.0, p.s * (m - 6)) / (1.0 + std::ldexp(1.0, m));
  CHECK(lemma == doctest::Approx(want).epsilon(1e-13));

  CHECK(rep.to_csv().rfind("N,A_N,RHS,slack\n", 0) == 0);

  // halving beta' raises the minimal C1 by at most the removed terms
  RecurrenceParams half = p;
  half.beta = 0.5 * p.beta;
  const RecurrenceReport h = check_recurrence(seq, half);
  double removed = 0.0;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    // removed terms in units of M0^s N^{-s}
    const double drop =
        (rep.rows[i].rhs - h.rows[i].rhs) / (std::pow(2.0, p.s) * std::pow(rep.rows[i].n, -p.s));
    CHECK(h.rows[i].rhs <= rep.rows[i].rhs);
    removed = std::max(removed, drop);
  }
  CHECK(h.minimal_c1 >= rep.minimal_c1);
  CHECK(h.minimal_c1 <= rep.minimal_c1 + removed * (1.0 + 1e-12));
  const ASequence late = ladder(3, 12, [](double n) { return 1.0 / n; });
  CHECK_THROWS(check_recurrence(late, p));
  CHECK(rep.to_json()["rows"].size() == 12);
}

TEST_CASE("Strichartz norm of the standing wave") {
  const GroundState& q = q4();
  const Trajectory t = sw_run(q, 1.0, 20);
  const double l2 = lebesgue_norm(q.profile, 2.0), l4 = lebesgue_norm(q.profile, 4.0);
  CHECK(strichartz_norm(t, 0.0, 1.0) == doctest::Approx(std::max(l2, l4)).epsilon(1e-6));
  // a sub-interval not aligned with snapshots
  CHECK(strichartz_norm(t, 0.13, 0.71) ==
        doctest::Approx(std::max(l2, l4 * std::sqrt(0.58))).epsilon(1e-6));
  const ASequence seq = extract_A_sequence(t, scales(0, 4));
  CHECK(seq.trivial_bound == doctest::Approx(std::max(l2, l4) + 1.0).epsilon(1e-6));
  for (double v : seq.values) CHECK(v <= seq.trivial_bound);
  CHECK_THROWS_AS(strichartz_norm(t, 0.0, 0.03), Error);  // two snapshots
  CHECK_THROWS_AS(strichartz_norm(t, 0.5, 1.5), Error);
  CHECK_THROWS_AS(strichartz_norm(t, 0.5, 0.5), Error);
}

TEST_CASE("zero trajectory gives zero norms") {
  const GridPtr g = make_radial_grid(4, 20.0, 512);
  SimulationConfig c;
  c.duration = 1.0;
  c.cadence = 10;
  const Trajectory t = evolve(c, RadialField::zeros(g));
  CHECK(strichartz_norm(t, 0.0, 1.0) == 0.0);
  CHECK(dual_nonlinearity_norm(t, DyadicScale::from_exponent(2)) == 0.0);
  const ASequence seq = extract_A_sequence(t, scales(0, 3));
  for (double v : seq.values) CHECK(v == 0.0);
  CHECK(seq.trivial_bound == 1.0);
}

TEST_CASE("A_N along the standing wave") {
  const Trajectory t = sw_run(q4(), 0.5, 5);
  const ASequence seq = extract_A_sequence(t, scales(2, 4));
  CHECK(seq.provenance == Provenance::kExtracted);
  CHECK(seq.trivial_bound == 0.0);  // run shorter than one unit
  for (std::size_t i = 1; i < seq.values.size(); ++i) CHECK(seq.values[i] < seq.values[i - 1]);
  CHECK(seq.values.back() > 0.0);

  double prev = INFINITY;
  for (DyadicScale n : scales(2, 4)) {
    const double v = dual_nonlinearity_norm(t, n);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(extract_A_sequence(t, scales(0, 2)), Error);  // window 1 > run length
  CHECK_THROWS_AS(extract_A_sequence(t, scales(4, 6)), Error);  // beyond the grid
}

TEST_CASE("A_N is stable under grid refinement") {
  const GroundState q1 = solve_ground_state(make_radial_grid(4, 20.0, 512), 1e-9);
  const GroundState q2 = solve_ground_state(make_radial_grid(4, 20.0, 1024), 1e-9);
  const ASequence a1 = extract_A_sequence(sw_run(q1, 0.5, 5), scales(2, 4));
  const ASequence a2 = extract_A_sequence(sw_run(q2, 0.5, 5), scales(2, 4));
  for (std::size_t i = 0; i < a1.values.size(); ++i)
    CHECK(a2.values[i] == doctest::Approx(a1.values[i]).epsilon(1e-3));
  const RecurrenceParams p = params(1.25, 0.2, 1.0, 2, 0.25, 100.0);
  const double c1 = check_recurrence(a1, p).minimal_c1, c2 = check_recurrence(a2, p).minimal_c1;
  CHECK(std::abs(c2 / c1 - 1.0) < 0.3);
}

TEST_CASE("linear run has no nonlinear forcing") {
  const GridPtr g = make_radial_grid(4, 20.0, 512);
  SimulationConfig c;
  c.mu = 0;
  c.duration = 0.5;
  c.cadence = 5;
  const Trajectory t = evolve(c, RadialField::from_function(g, [](double r) {
    return cplx(std::exp(-r * r), 0.0);
  }));
  CHECK(dual_nonlinearity_norm(t, DyadicScale::from_exponent(2)) == 0.0);
  const ASequence seq = extract_A_sequence(t, scales(2, 3));
  const auto j = seq.to_json();
  CHECK(j["provenance"] == "extracted");
  CHECK(j["A_N"].size() == 2);
}
