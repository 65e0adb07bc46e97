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

#include "report.hpp"

namespace nlsrad {

struct SelftestOptions {
  std::uint64_t seed = 20260101;
  int lemma_draws = 100;
};

// Invariant checks of every module on small grids. The result holds
// {"suites": [{"name", "checks": [{"name", "value", "bound", "passed"}]}],
// "failures", "passed"}; an exception inside a suite counts as one failure.
nlohmann::json run_selftest(const SelftestOptions& opts = {});

}  // namespace nlsrad
