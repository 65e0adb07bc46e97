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

#include <cstdint>
#include <random>
#include <string>

#include "evolution.hpp"
#include "recurrence.hpp"
#include "report.hpp"

namespace nlsrad {

// Report produced by a named diagnostic or lemma request. json always carries
// "passed"; csv is empty when the request has no tabular output.
struct DispatchResult {
  nlohmann::json json;
  std::string csv;
};

// Diagnostics by name on a stored trajectory: conservation, virial,
// frequency_decay, spatial_decay, kinetic_localization, concentration,
// duhamel, strichartz, a_sequence. Unknown names throw kInvalidArgument.
DispatchResult run_diagnostic(const Trajectory& traj, const std::string& name,
                              const nlohmann::json& params);

// Lemma requests: {"mode": verify|check|induction|suite, "params": {...},
// "sequence": {...}}; see the README for the fields.
DispatchResult run_lemma(const nlohmann::json& request);

RecurrenceParams recurrence_params_from_json(const nlohmann::json& j);

// One random admissible parameter set and a sequence meeting the hypotheses.
struct LemmaInstance {
  RecurrenceParams params;
  ASequence sequence;
};
LemmaInstance random_lemma_instance(std::mt19937_64& rng);

// Direct check of A_N <= 2 C1 M0^s N^{-s+gamma} for N >= M0.
bool conclusion_holds(const ASequence& seq, const RecurrenceParams& p);

}  // namespace nlsrad
