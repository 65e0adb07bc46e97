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
#include <vector>

#include "field.hpp"

namespace nlsrad {

// Seeded random smooth radial fields: sums of complex-weighted Gaussian
// bumps and shells. Widths are stratified log-uniform over [min_width, max_width]; shells
// sit at least six widths from the origin so every term is smooth there.
struct CorpusOptions {
  std::size_t count = 50;
  std::uint64_t seed = 20260101;
  int terms = 4;
  double min_width = 0.05;
  double max_width = 1.0;
  double max_center = 3.0;
};

std::vector<RadialField> smooth_corpus(const GridPtr& grid, const CorpusOptions& opts = {});

}  // namespace nlsrad
