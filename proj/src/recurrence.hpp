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

#include <string>
#include <vector>

#include "evolution.hpp"
#include "report.hpp"

namespace nlsrad {

// S(I) = L^inf_t L^2_x  intersect  L^2_t L^{2d/(d-2)}_x on [t0, t1]; returns the max
// of the two discrete norms (max over snapshots, trapezoid in t with the
// endpoints interpolated). Needs at least three snapshots in the interval.
double strichartz_norm(const Trajectory& traj, double t0, double t1);

// ||P_{>=N} F(u)||_{L^q_{t,x}}, q = 2(d+2)/(d+4), F(u) = mu |u|^{4/d} u, on the
// window [t_start, t_start + N^{-window_exponent}].
double dual_nonlinearity_norm(const Trajectory& traj, DyadicScale n, double window_exponent = 0.5);

struct RecurrenceParams {
  double s = 1.25;
  double gamma = 0.2;
  double c1 = 1.0;
  DyadicScale m0 = DyadicScale::from_exponent(0);
  double beta = 1e-3;  // beta'
  double a = 10.0;     // trivial bound A

  // Throws kInvalidArgument unless s > 1, gamma > 0, s - gamma > 1, C1 > 0,
  // M0 >= 1, 0 < beta' < 1 and A > 0.
  void validate() const;
  nlohmann::json to_json() const;
};

// C(s) = 1 / (1 - 2^{1-s}), the dyadic-sum bound sum_{k>=0} 2^{-k(s-1)}.
double dyadic_sum_constant(double s);

struct Admissibility {
  double threshold = 0.0;  // c(s, gamma, A)
  double power_margin = 0.0;  // 1/(100 C(s) A) - beta'^{s-1}
  double gamma_margin = 0.0;  // 1/(100 C(s)) - beta'^gamma
  bool admissible = false;
  std::string violated;  // empty, or the violated constraint
};

Admissibility admissibility(const RecurrenceParams& p);

enum class Provenance { kExtracted, kSynthetic };

// A_N on a contiguous dyadic ladder.
struct ASequence {
  std::vector<DyadicScale> scales;
  std::vector<double> values;
  Provenance provenance = Provenance::kSynthetic;
  double trivial_bound = 0.0;  // A = ||u||_{S([0,1])} + 1 when extracted, else 0

  void validate() const;  // contiguous ladder, finite nonnegative values
  nlohmann::json to_json() const;
};

// A_N = ||P_{>=N} u||_{S([t_start, t_start + N^{-window_exponent}])}.
ASequence extract_A_sequence(const Trajectory& traj, const std::vector<DyadicScale>& scales,
                             double window_exponent = 0.5);

// Index ranges of the dyadic sums: the recurrence relation for A_N,
// M0 < M <= 2 beta' N, and the recursive-control hypothesis, M0 <= M <= beta' N.
enum class SumRange { kRecurrence, kLemma };

// sum_{M in range} (M/N)^s A_M over the sequence's ladder; the right end is inclusive.
double recurrence_sum(const ASequence& seq, std::size_t index, const RecurrenceParams& p,
                      SumRange range);

struct RecurrenceRow {
  double n = 0.0;
  double a_n = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

struct RecurrenceReport {
  RecurrenceParams params;
  SumRange range = SumRange::kRecurrence;
  std::vector<RecurrenceRow> rows;
  double minimal_c1 = 0.0;  // smallest C1 making every row hold
  bool holds = false;       // with params.c1

  std::string to_csv() const;  // header "N,A_N,RHS,slack"
  nlohmann::json to_json() const;
};

RecurrenceReport check_recurrence(const ASequence& seq, const RecurrenceParams& p,
                                  SumRange range = SumRange::kRecurrence);

enum class LemmaStatus { kPass, kFail, kInapplicable };
const char* lemma_status_name(LemmaStatus s);

struct ControlRow {
  double n = 0.0;
  double a_n = 0.0;
  double bound = 0.0;         // 2 C1 M0^s N^{-s+gamma}
  double oracle_bound = 0.0;  // converged induction bound for this ladder
  bool ok = false;
};

struct ControlReport {
  RecurrenceParams params;
  LemmaStatus status = LemmaStatus::kInapplicable;
  std::string reason;
  Admissibility admissibility;
  bool hypotheses_hold = false;
  std::vector<ControlRow> rows;
  int iterations = 0;
  // Whether the induction oracle bounds every sequence obeying the hypotheses
  // on this ladder by the conclusion; reported even when the lemma does not apply.
  bool oracle_confirms = false;

  std::string to_csv() const;  // header "N,A_N,bound,oracle_bound,ok"
  nlohmann::json to_json() const;
};

// Recursive-control check. The recurrence hypothesis with params.c1 and the trivial bound with
// params.a are tested first, then admissibility of beta'; failing either gives
// kInapplicable with the reason. Otherwise the induction
// B_1 = C1 M0^s N^{-s} + sum (M/N)^s A, B_{j+1} = C1 M0^s N^{-s} + sum (M/N)^s B_j
// is run until beta'^j < 1e-12 min bound, A_N <= B_j is asserted, and the
// conclusion A_N <= 2 C1 M0^s N^{-s+gamma} is checked per N.
ControlReport verify_recursive_control(const ASequence& seq, const RecurrenceParams& p);

struct InductionTable {
  std::vector<double> scales;
  std::vector<double> base_case;  // C1 M0^s N^{-s} + C(s) A beta'^s
  std::vector<double> limit;      // 2 C1 M0^s N^{-s+gamma}
  std::vector<std::vector<double>> rows;  // rows[j-1][i] = limit[i] + beta'^j

  std::string to_csv() const;  // header "j,N,bound"
  nlohmann::json to_json() const;
};

// Bound table j -> 2 C1 M0^s N^{-s+gamma} + beta'^j for M0 <= N <= n_max, until
// beta'^j < 1e-12 min limit. Throws kInvalidArgument for inadmissible params.
InductionTable iterate_induction(const RecurrenceParams& p, DyadicScale n_max);

// Sequence meeting the recurrence hypothesis and the trivial bound by construction:
// A_N = min(A, theta_N (C1 M0^s N^{-s} + sum_{M0 <= M <= beta' N} (M/N)^s A_M)),
// built upward in N; theta = 1 saturates the recurrence.
ASequence saturating_sequence(const RecurrenceParams& p, DyadicScale n_max,
                              const std::vector<double>& theta = {});

}  // namespace nlsrad
